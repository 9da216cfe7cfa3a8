//! Closed-form potentials: an expression tree over `z`, `w` with rational
//! powers, symbolic derivatives and principal-branch complex evaluation.
//!
//! Text form is a prefix notation:
//!
//! ```text
//! expr     = atom | "(" form ")" ;
//! atom     = "z" | "w" | "x" | "y" | number ;
//! form     = "sum" expr { expr }
//!          | "prod" expr { expr }
//!          | "pow" expr rational
//!          | "aff" number number number      (* a z + b w + c *)
//!          | "const" number ;
//! number   = Gaussian rational such as 3, -1/2, 2i, 1/2-3i ;
//! rational = integer [ "/" integer ] ;
//! ```
//!
//! `x` and `y` abbreviate `z + w` and `z - w`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{GaussRat, Var};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(GaussRat),
    Z,
    W,
    /// `a z + b w + c`.
    Aff([GaussRat; 3]),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    /// Principal branch for non-integer exponents.
    Pow(Box<Expr>, Rational64),
}

pub type PotentialExpression = Expr;

impl Expr {
    pub fn int(n: i64) -> Self {
        Expr::Const(GaussRat::from_int(n))
    }

    pub fn aff(a: i64, b: i64, c: i64) -> Self {
        Expr::Aff([GaussRat::from_int(a), GaussRat::from_int(b), GaussRat::from_int(c)])
    }

    fn as_const(&self) -> Option<&GaussRat> {
        match self {
            Expr::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn sum(items: Vec<Expr>) -> Self {
        let mut acc = GaussRat::zero();
        let mut out = Vec::new();
        for e in items {
            match e {
                Expr::Const(c) => acc += &c,
                Expr::Sum(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        if !acc.is_zero() {
            out.push(Expr::Const(acc));
        }
        match out.len() {
            0 => Expr::Const(GaussRat::zero()),
            1 => out.pop().expect("one item"),
            _ => Expr::Sum(out),
        }
    }

    pub fn prod(items: Vec<Expr>) -> Self {
        let mut acc = GaussRat::one();
        let mut out = Vec::new();
        for e in items {
            match e {
                Expr::Const(c) => acc *= &c,
                Expr::Prod(inner) => {
                    for f in inner {
                        match f {
                            Expr::Const(c) => acc *= &c,
                            g => out.push(g),
                        }
                    }
                }
                other => out.push(other),
            }
        }
        if acc.is_zero() {
            return Expr::Const(acc);
        }
        if !acc.is_one() || out.is_empty() {
            out.insert(0, Expr::Const(acc));
        }
        match out.len() {
            1 => out.pop().expect("one item"),
            _ => Expr::Prod(out),
        }
    }

    pub fn pow(base: Expr, q: Rational64) -> Self {
        if q.is_zero() {
            return Expr::int(1);
        }
        if q.is_one() {
            return base;
        }
        if let Expr::Const(c) = &base {
            if q.is_integer() {
                if let Some(v) = c.powi(q.to_integer() as i32) {
                    return Expr::Const(v);
                }
            }
        }
        if let Expr::Pow(inner, p) = &base {
            // only integer outer exponents keep the branch
            if q.is_integer() {
                return Expr::pow((**inner).clone(), p * q);
            }
        }
        Expr::Pow(Box::new(base), q)
    }

    pub fn scale(self, c: GaussRat) -> Self {
        Expr::prod(vec![Expr::Const(c), self])
    }

    pub fn diff(&self, v: Var) -> Expr {
        match self {
            Expr::Const(_) => Expr::int(0),
            Expr::Z => Expr::int(if v == Var::Z { 1 } else { 0 }),
            Expr::W => Expr::int(if v == Var::W { 1 } else { 0 }),
            Expr::Aff([a, b, _]) => Expr::Const(if v == Var::Z { a.clone() } else { b.clone() }),
            Expr::Sum(items) => Expr::sum(items.iter().map(|e| e.diff(v)).collect()),
            Expr::Prod(items) => {
                let mut terms = Vec::new();
                for (i, f) in items.iter().enumerate() {
                    let df = f.diff(v);
                    if df.as_const().is_some_and(GaussRat::is_zero) {
                        continue;
                    }
                    let mut fs: Vec<Expr> = items.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
                    fs.push(df);
                    terms.push(Expr::prod(fs));
                }
                Expr::sum(terms)
            }
            Expr::Pow(f, q) => {
                let df = f.diff(v);
                if df.as_const().is_some_and(GaussRat::is_zero) {
                    return Expr::int(0);
                }
                let qc = GaussRat::ratio(*q.numer(), *q.denom());
                Expr::prod(vec![Expr::Const(qc), Expr::pow((**f).clone(), q - Rational64::one()), df])
            }
        }
    }

    /// Value at `(z, w)`; fails on a zero base with negative exponent.
    pub fn eval(&self, z: Complex64, w: Complex64) -> Result<Complex64, Error> {
        Ok(match self {
            Expr::Const(c) => c.to_c64(),
            Expr::Z => z,
            Expr::W => w,
            Expr::Aff([a, b, c]) => a.to_c64() * z + b.to_c64() * w + c.to_c64(),
            Expr::Sum(items) => {
                let mut s = Complex64::new(0.0, 0.0);
                for e in items {
                    s += e.eval(z, w)?;
                }
                s
            }
            Expr::Prod(items) => {
                let mut s = Complex64::new(1.0, 0.0);
                for e in items {
                    s *= e.eval(z, w)?;
                }
                s
            }
            Expr::Pow(f, q) => {
                let b = f.eval(z, w)?;
                if b.norm() == 0.0 {
                    if q.is_positive() {
                        return Ok(Complex64::new(0.0, 0.0));
                    }
                    return Err(Error::SingularSample);
                }
                if q.is_integer() {
                    b.powi(q.to_integer() as i32)
                } else {
                    (b.ln() * q.to_f64().unwrap_or(0.0)).exp()
                }
            }
        })
    }

    /// Bases raised to negative or fractional powers, where the value is
    /// singular or branched.
    pub fn singular_bases(&self) -> Vec<Expr> {
        let mut out = Vec::new();
        self.collect_singular(&mut out);
        out
    }

    fn collect_singular(&self, out: &mut Vec<Expr>) {
        match self {
            Expr::Sum(items) | Expr::Prod(items) => items.iter().for_each(|e| e.collect_singular(out)),
            Expr::Pow(f, q) => {
                if !(q.is_integer() && q.is_positive()) {
                    out.push((**f).clone());
                }
                f.collect_singular(out);
            }
            _ => {}
        }
    }
}

fn fmt_q(q: &Rational64) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Z => f.write_str("z"),
            Expr::W => f.write_str("w"),
            Expr::Aff([a, b, c]) if c.is_zero() && *a == GaussRat::one() && *b == GaussRat::one() => f.write_str("x"),
            Expr::Aff([a, b, c]) if c.is_zero() && *a == GaussRat::one() && *b == -GaussRat::one() => f.write_str("y"),
            Expr::Aff([a, b, c]) => write!(f, "(aff {a} {b} {c})"),
            Expr::Sum(items) | Expr::Prod(items) => {
                f.write_str(if matches!(self, Expr::Sum(_)) { "(sum" } else { "(prod" })?;
                for e in items {
                    write!(f, " {e}")?;
                }
                f.write_str(")")
            }
            Expr::Pow(b, q) => write!(f, "(pow {b} {})", fmt_q(q)),
        }
    }
}

fn tokenize(s: &str) -> Vec<String> {
    s.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

struct Parser {
    toks: Vec<String>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Result<String, Error> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&str> {
        self.toks.get(self.pos).map(String::as_str)
    }

    fn number(&mut self) -> Result<GaussRat, Error> {
        self.next()?.parse()
    }

    fn rational(&mut self) -> Result<Rational64, Error> {
        let t = self.next()?;
        let bad = || Error::Parse(format!("invalid exponent `{t}`"));
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.parse::<i64>().map_err(|_| bad())?, d.parse::<i64>().map_err(|_| bad())?),
            None => (t.parse::<i64>().map_err(|_| bad())?, 1),
        };
        if d == 0 {
            return Err(bad());
        }
        Ok(Rational64::new(n, d))
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let t = self.next()?;
        match t.as_str() {
            "z" => Ok(Expr::Z),
            "w" => Ok(Expr::W),
            "x" => Ok(Expr::aff(1, 1, 0)),
            "y" => Ok(Expr::aff(1, -1, 0)),
            "(" => {
                let op = self.next()?;
                let e = match op.as_str() {
                    "sum" | "prod" => {
                        let mut items = Vec::new();
                        while self.peek().is_some_and(|p| p != ")") {
                            items.push(self.expr()?);
                        }
                        if items.is_empty() {
                            return Err(Error::Parse(format!("empty ({op})")));
                        }
                        if op == "sum" {
                            Expr::sum(items)
                        } else {
                            Expr::prod(items)
                        }
                    }
                    "pow" => {
                        let b = self.expr()?;
                        Expr::pow(b, self.rational()?)
                    }
                    "aff" => Expr::Aff([self.number()?, self.number()?, self.number()?]),
                    "const" => Expr::Const(self.number()?),
                    other => return Err(Error::Parse(format!("unknown form `{other}`"))),
                };
                match self.next()?.as_str() {
                    ")" => Ok(e),
                    other => Err(Error::Parse(format!("expected `)`, found `{other}`"))),
                }
            }
            ")" => Err(Error::Parse("unexpected `)`".into())),
            _ => Ok(Expr::Const(t.parse()?)),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut p = Parser { toks: tokenize(s), pos: 0 };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse("trailing tokens after expression".into()));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parse_print_round_trip() {
        for s in ["(prod z w)", "(pow (aff 1 1 0) -2)", "(sum (pow z 1/2) (prod 3/2 w))", "(pow (prod z w) -1/2)"] {
            let e: Expr = s.parse().unwrap();
            let back: Expr = e.to_string().parse().unwrap();
            assert_eq!(e, back);
        }
        assert!("(pow z)".parse::<Expr>().is_err());
        assert!("(frob z)".parse::<Expr>().is_err());
        assert!("(pow z 1/0)".parse::<Expr>().is_err());
        assert!("z w".parse::<Expr>().is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let e: Expr = "(prod (pow (sum (pow z 1/2) (pow w 1/2)) -2) (pow (prod z w) -1/2))".parse().unwrap();
        let (z, w) = (c(1.3, 0.2), c(0.7, -0.4));
        let h = 1e-6;
        for v in [Var::Z, Var::W] {
            let d = e.diff(v).eval(z, w).unwrap();
            let (dz, dw) = if v == Var::Z { (c(h, 0.0), c(0.0, 0.0)) } else { (c(0.0, 0.0), c(h, 0.0)) };
            let fd = (e.eval(z + dz, w + dw).unwrap() - e.eval(z - dz, w - dw).unwrap()) / (2.0 * h);
            assert!((d - fd).norm() < 1e-7 * (1.0 + d.norm()), "{v:?}");
        }
    }

    #[test]
    fn principal_branch_and_singularities() {
        let e: Expr = "(pow z 1/2)".parse().unwrap();
        assert!((e.eval(c(-4.0, 0.0), c(0.0, 0.0)).unwrap() - c(0.0, 2.0)).norm() < 1e-12);
        let inv: Expr = "(pow x -2)".parse().unwrap();
        assert_eq!(inv.eval(c(1.0, 0.0), c(-1.0, 0.0)), Err(Error::SingularSample));
        assert_eq!(inv.singular_bases(), vec![Expr::aff(1, 1, 0)]);
    }
}
