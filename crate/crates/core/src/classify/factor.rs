//! Splitting the cubic `D` into linear forms.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::exact::{content_in, BiPoly, GaussRat, UniPoly, Var};
use crate::Error;

/// Isometry orbit of a linear form `a z + b w + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orbit {
    ZOnly,
    Mixed,
    WOnly,
    Constant,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coeffs {
    Exact([GaussRat; 3]),
    /// Float coefficients with an absolute error bound.
    Approx { value: [Complex64; 3], error: f64 },
}

/// A projective line `a z + b w + c = 0`, normalized so that `a = 1`
/// (or `b = 1` for forms without `z`).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    pub orbit: Orbit,
    pub coeffs: Coeffs,
}

impl LinearForm {
    pub fn exact(a: GaussRat, b: GaussRat, c: GaussRat) -> Self {
        let orbit = match (a.is_zero(), b.is_zero()) {
            (false, true) => Orbit::ZOnly,
            (false, false) => Orbit::Mixed,
            (true, false) => Orbit::WOnly,
            (true, true) => Orbit::Constant,
        };
        Self { orbit, coeffs: Coeffs::Exact([a, b, c]) }
    }

    fn approx(orbit: Orbit, value: [Complex64; 3], error: f64) -> Self {
        Self { orbit, coeffs: Coeffs::Approx { value, error } }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coeffs, Coeffs::Exact(_))
    }

    pub fn exact_coeffs(&self) -> Option<&[GaussRat; 3]> {
        match &self.coeffs {
            Coeffs::Exact(c) => Some(c),
            Coeffs::Approx { .. } => None,
        }
    }

    pub fn to_c64(&self) -> [Complex64; 3] {
        match &self.coeffs {
            Coeffs::Exact(c) => [c[0].to_c64(), c[1].to_c64(), c[2].to_c64()],
            Coeffs::Approx { value, .. } => *value,
        }
    }

    pub fn error(&self) -> f64 {
        match &self.coeffs {
            Coeffs::Exact(_) => 0.0,
            Coeffs::Approx { error, .. } => *error,
        }
    }

    pub fn to_poly(&self) -> Option<BiPoly> {
        self.exact_coeffs()
            .map(|[a, b, c]| BiPoly::linear(a.clone(), b.clone(), c.clone()))
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        let [a, b, c] = self.to_c64();
        a * z + b * w + c
    }

    /// Root in the form's own variable (z-only or w-only forms).
    pub fn root(&self) -> Option<Root> {
        let k = match self.orbit {
            Orbit::ZOnly => 0,
            Orbit::WOnly => 1,
            _ => return None,
        };
        Some(match &self.coeffs {
            Coeffs::Exact(c) => Root::Exact(-&(&c[2] / &c[k])),
            Coeffs::Approx { value, .. } => Root::Approx(-value[2] / value[k]),
        })
    }

    fn sort_key(&self) -> (Orbit, bool, Vec<(f64, f64)>) {
        let cs = self.to_c64().iter().map(|c| (c.re, c.im)).collect();
        (self.orbit, !self.is_exact(), cs)
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        let (a, b) = (self.sort_key(), other.sort_key());
        a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then_with(|| {
            for (x, y) in a.2.iter().zip(&b.2) {
                let o = x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coeffs {
            Coeffs::Exact([a, b, c]) => write!(f, "{}", BiPoly::linear(a.clone(), b.clone(), c.clone())),
            Coeffs::Approx { value: [a, b, c], .. } => {
                let t = |x: &Complex64| {
                    if x.im == 0.0 {
                        format!("{:.12}", x.re)
                    } else {
                        format!("({:.12}{:+.12}i)", x.re, x.im)
                    }
                };
                let mut parts = Vec::new();
                if a.norm() != 0.0 {
                    parts.push(format!("{}*z", t(a)));
                }
                if b.norm() != 0.0 {
                    parts.push(format!("{}*w", t(b)));
                }
                if c.norm() != 0.0 || parts.is_empty() {
                    parts.push(t(c));
                }
                write!(f, "{} ~", parts.join(" + "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Root {
    Exact(GaussRat),
    Approx(Complex64),
}

impl Root {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            Root::Exact(g) => g.to_c64(),
            Root::Approx(c) => *c,
        }
    }
}

/// `D = scalar · Π form^mult`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineArrangement {
    pub factors: Vec<(LinearForm, u32)>,
    pub scalar: GaussRat,
}

impl LineArrangement {
    pub fn is_exact(&self) -> bool {
        self.factors.iter().all(|(f, _)| f.is_exact())
    }

    /// Exact product, when every factor is exact.
    pub fn product(&self) -> Option<BiPoly> {
        let mut p = BiPoly::constant(self.scalar.clone());
        for (f, m) in &self.factors {
            p = &p * &f.to_poly()?.pow(*m);
        }
        Some(p)
    }

    /// Largest coefficient deviation between the float product and `d`.
    pub fn residual(&self, d: &BiPoly) -> f64 {
        let mut p = BiPoly::<Complex64>::constant(self.scalar.to_c64());
        for (f, m) in &self.factors {
            let [a, b, c] = f.to_c64();
            let lf = BiPoly::<Complex64>::linear(a, b, c);
            p = &p * &lf.pow(*m);
        }
        (&p - &d.to_complex()).max_abs_coeff()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }

    /// Multiplicity pattern in one orbit, e.g. "11", "2" or "0".
    pub fn pattern(&self, orbit: Orbit) -> String {
        let mut ms: Vec<u32> = self
            .factors
            .iter()
            .filter(|(f, _)| f.orbit == orbit)
            .map(|(_, m)| *m)
            .collect();
        if ms.is_empty() {
            return "0".into();
        }
        ms.sort_unstable_by(|a, b| b.cmp(a));
        ms.iter().map(|m| m.to_string()).collect()
    }

    pub fn forms(&self, orbit: Orbit) -> impl Iterator<Item = &(LinearForm, u32)> {
        self.factors.iter().filter(move |(f, _)| f.orbit == orbit)
    }
}

fn uni_c64(u: &UniPoly) -> Vec<Complex64> {
    u.coeffs().iter().map(GaussRat::to_c64).collect()
}

/// Linear factors of a univariate polynomial of degree at most two in `v`,
/// as normalized forms with multiplicities.
fn split_univariate(u: &UniPoly, v: Var) -> Result<Vec<(LinearForm, u32)>, Error> {
    let (one, zero) = (GaussRat::one(), GaussRat::zero());
    let form = |root: &GaussRat| match v {
        Var::Z => LinearForm::exact(one.clone(), zero.clone(), -root),
        Var::W => LinearForm::exact(zero.clone(), one.clone(), -root),
    };
    let orbit = if v == Var::Z { Orbit::ZOnly } else { Orbit::WOnly };
    let m = u.monic();
    match m.degree() {
        None | Some(0) => Ok(vec![]),
        Some(1) => Ok(vec![(form(&-&m.coeff(0)), 1)]),
        Some(2) => {
            // x² + p x + q
            let (p, q) = (m.coeff(1), m.coeff(0));
            let disc = &(&p * &p) - &(&GaussRat::from_int(4) * &q);
            let half = GaussRat::ratio(1, 2);
            if disc.is_zero() {
                return Ok(vec![(form(&-&(&p * &half)), 2)]);
            }
            if let Some(s) = disc.sqrt() {
                let r1 = &(&-&p + &s) * &half;
                let r2 = &(&-&p - &s) * &half;
                return Ok(vec![(form(&r1), 1), (form(&r2), 1)]);
            }
            let c = uni_c64(&m);
            let s = (c[1] * c[1] - 4.0 * c[0]).sqrt();
            let roots = [(-c[1] + s) / 2.0, (-c[1] - s) / 2.0];
            let err = 8.0 * f64::EPSILON * (1.0 + c[1].norm() + c[0].norm().sqrt());
            Ok(roots
                .iter()
                .map(|r| {
                    let value = match v {
                        Var::Z => [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), -r],
                        Var::W => [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), -r],
                    };
                    (LinearForm::approx(orbit, value, err), 1)
                })
                .collect())
        }
        Some(_) => Err(Error::NotReducible),
    }
}

/// Split a primitive quadric without univariate factors into two mixed lines.
fn split_mixed_quadric(q: &BiPoly) -> Result<Vec<(LinearForm, u32)>, Error> {
    // q = α z² + (β w + δ) z + (γ w² + ε w + φ)
    let al = q.coeff(2, 0);
    if al.is_zero() || q.coeff(0, 2).is_zero() {
        return Err(Error::NotReducible);
    }
    let q = q.scale(&al.inv().expect("nonzero"));
    let (be, de) = (q.coeff(1, 1), q.coeff(1, 0));
    let (ga, ep, ph) = (q.coeff(0, 2), q.coeff(0, 1), q.coeff(0, 0));
    let four = GaussRat::from_int(4);
    // discriminant in z: p w² + s w + r
    let p = &(&be * &be) - &(&four * &ga);
    let s = &(&GaussRat::from_int(2) * &(&be * &de)) - &(&four * &ep);
    let r = &(&de * &de) - &(&four * &ph);
    if &s * &s != &four * &(&p * &r) {
        return Err(Error::NotReducible);
    }
    let half = GaussRat::ratio(1, 2);
    let one = GaussRat::one();
    if p.is_zero() && r.is_zero() {
        // Δ ≡ 0: a double line z + (β/2) w + δ/2
        return Ok(vec![(LinearForm::exact(one, &be * &half, &de * &half), 2)]);
    }
    // sqrt Δ = σ w + τ with σ² = p, τ² = r, 2στ = s
    let exact = match (p.sqrt(), r.sqrt()) {
        (Some(sg), Some(ta)) => {
            let ta = if &(&GaussRat::from_int(2) * &sg) * &ta == s { ta } else { -ta };
            Some((sg, ta))
        }
        _ => None,
    };
    if let Some((sg, ta)) = exact {
        // z = (−(β w + δ) ± (σ w + τ))/2, so forms z + ((β ∓ σ) w + (δ ∓ τ))/2
        let f1 = LinearForm::exact(one.clone(), &(&be - &sg) * &half, &(&de - &ta) * &half);
        let f2 = LinearForm::exact(one, &(&be + &sg) * &half, &(&de + &ta) * &half);
        return Ok(vec![(f1, 1), (f2, 1)]);
    }
    let (pc, rc, sc) = (p.to_c64(), r.to_c64(), s.to_c64());
    let sg = pc.sqrt();
    let mut ta = rc.sqrt();
    if (2.0 * sg * ta - sc).norm() > (2.0 * sg * ta + sc).norm() {
        ta = -ta;
    }
    let (bc, dc) = (be.to_c64(), de.to_c64());
    let one = Complex64::new(1.0, 0.0);
    let scale = 1.0 + pc.norm() + rc.norm() + bc.norm() + dc.norm();
    let err = 16.0 * f64::EPSILON * scale;
    let f1 = [one, (bc - sg) / 2.0, (dc - ta) / 2.0];
    let f2 = [one, (bc + sg) / 2.0, (dc + ta) / 2.0];
    Ok(vec![
        (LinearForm::approx(Orbit::Mixed, f1, err), 1),
        (LinearForm::approx(Orbit::Mixed, f2, err), 1),
    ])
}

/// Factor `D` into linear forms: univariate content first, then the mixed
/// remainder via its discriminant.
pub fn factor_cubic(d: &BiPoly) -> Result<LineArrangement, Error> {
    if d.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let cz = content_in(d, Var::W)?;
    let d1 = d.div_exact_uni(&cz, Var::Z).ok_or(Error::NotReducible)?;
    let cw = content_in(&d1, Var::Z)?;
    let d2 = d1.div_exact_uni(&cw, Var::W).ok_or(Error::NotReducible)?;

    let mut factors = split_univariate(&cz, Var::Z)?;
    factors.extend(split_univariate(&cw, Var::W)?);
    match d2.total_degree() {
        Some(0) => {}
        Some(1) => {
            let a = d2.coeff(1, 0);
            let inv = a.inv().ok_or(Error::NotReducible)?;
            factors.push((
                LinearForm::exact(GaussRat::one(), &d2.coeff(0, 1) * &inv, &d2.coeff(0, 0) * &inv),
                1,
            ));
        }
        Some(2) => factors.extend(split_mixed_quadric(&d2)?),
        _ => return Err(Error::NotReducible),
    }

    // the scalar is the coefficient of the leading monomial of the product
    let (mut ez, mut ew) = (0u32, 0u32);
    for (f, m) in &factors {
        match f.orbit {
            Orbit::WOnly => ew += m,
            _ => ez += m,
        }
    }
    let scalar = d.coeff(ez, ew);
    if scalar.is_zero() {
        return Err(Error::NotReducible);
    }
    factors.sort_by(|a, b| a.0.cmp_key(&b.0));
    let arr = LineArrangement { factors, scalar };
    let ok = match arr.product() {
        Some(p) => p == *d,
        None => arr.residual(d) <= 1e-10 * (1.0 + d.max_abs_coeff()),
    };
    if !ok {
        return Err(Error::NotReducible);
    }
    Ok(arr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn poly(ts: &[((u32, u32), i64)]) -> BiPoly {
        BiPoly::from_terms(ts.iter().map(|&(k, v)| (k, q(v))))
    }

    #[test]
    fn e16_splits_into_three_orbits() {
        let d = poly(&[((2, 1), 1), ((1, 2), 1)]);
        let a = factor_cubic(&d).unwrap();
        assert_eq!(a.product().unwrap(), d);
        let orbits: Vec<_> = a.factors.iter().map(|(f, m)| (f.orbit, *m)).collect();
        assert_eq!(orbits, vec![(Orbit::ZOnly, 1), (Orbit::Mixed, 1), (Orbit::WOnly, 1)]);
        assert_eq!(a.factors[1].0.to_poly().unwrap(), poly(&[((1, 0), 1), ((0, 1), 1)]));
    }

    #[test]
    fn perfect_square() {
        let a = factor_cubic(&poly(&[((2, 0), 1)])).unwrap();
        assert_eq!(a.factors.len(), 1);
        assert_eq!(a.factors[0].1, 2);
        assert_eq!(a.pattern(Orbit::ZOnly), "2");
    }

    #[test]
    fn gaussian_split() {
        let d = poly(&[((2, 0), 2), ((0, 2), 2)]);
        let a = factor_cubic(&d).unwrap();
        assert_eq!(a.scalar, q(2));
        assert!(a.is_exact());
        let forms: Vec<_> = a.factors.iter().map(|(f, _)| f.to_poly().unwrap()).collect();
        let zi = BiPoly::linear(q(1), GaussRat::i(), q(0));
        let zmi = BiPoly::linear(q(1), -GaussRat::i(), q(0));
        assert!(forms.contains(&zi) && forms.contains(&zmi));
        assert_eq!(a.product().unwrap(), d);
    }

    #[test]
    fn irrational_split_is_certified() {
        // z² − 2 has roots ±√2
        let d = poly(&[((2, 0), 1), ((0, 0), -2)]);
        let a = factor_cubic(&d).unwrap();
        assert!(!a.is_exact());
        assert!(a.residual(&d) < 1e-12);
        assert_eq!(a.pattern(Orbit::ZOnly), "11");
        // (z + w)² − 2 = (z + w − √2)(z + w + √2)
        let d = poly(&[((2, 0), 1), ((1, 1), 2), ((0, 2), 1), ((0, 0), -2)]);
        let a = factor_cubic(&d).unwrap();
        assert!(a.residual(&d) < 1e-12);
        assert_eq!(a.pattern(Orbit::Mixed), "11");
    }

    #[test]
    fn rejects_irreducible() {
        assert_eq!(factor_cubic(&poly(&[((2, 1), 1), ((1, 0), 1)])), Err(Error::NotReducible));
        assert_eq!(factor_cubic(&poly(&[((1, 1), 1), ((0, 0), 1)])), Err(Error::NotReducible));
        assert_eq!(factor_cubic(&BiPoly::zero()), Err(Error::ZeroPolynomial));
    }
}
