use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::{GaussRat, Scalar, UniPoly};

/// One of the two null coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z,
    W,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::Z => Var::W,
            Var::W => Var::Z,
        }
    }
}

/// Sparse polynomial `Σ c_ij z^i w^j`. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct BiPoly<S: Scalar = GaussRat> {
    terms: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> Default for BiPoly<S> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> BiPoly<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn z() -> Self {
        Self::monomial(S::one(), 1, 0)
    }

    pub fn w() -> Self {
        Self::monomial(S::one(), 0, 1)
    }

    pub fn monomial(c: S, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// `a·z + b·w + c`.
    pub fn linear(a: S, b: S, c: S) -> Self {
        Self::from_terms([((1, 0), a), ((0, 1), b), ((0, 0), c)])
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), S)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((i, j)) {
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> S {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn deg(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| if v == Var::Z { i } else { j })
            .max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.deg(v).unwrap_or(0) > 0
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(&k, v)| (k, v.clone() * c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative.
    pub fn diff(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            match v {
                Var::Z if i > 0 => out.add_term(i - 1, j, c.clone() * S::from_i64(i as i64)),
                Var::W if j > 0 => out.add_term(i, j - 1, c.clone() * S::from_i64(j as i64)),
                _ => {}
            }
        }
        out
    }

    /// `∂_z^{nz} ∂_w^{nw}`.
    pub fn diff_n(&self, nz: u32, nw: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..nz {
            p = p.diff(Var::Z);
        }
        for _ in 0..nw {
            p = p.diff(Var::W);
        }
        p
    }

    pub fn eval(&self, z0: &S, w0: &S) -> S {
        // Horner in w inside Horner in z.
        let dz = self.deg(Var::Z).unwrap_or(0);
        let mut acc = S::zero();
        for i in (0..=dz).rev() {
            let dw = self
                .terms
                .range((i, 0)..=(i, u32::MAX))
                .map(|(&(_, j), _)| j)
                .max();
            let mut inner = S::zero();
            if let Some(dw) = dw {
                for j in (0..=dw).rev() {
                    inner = inner * w0.clone() + self.coeff(i, j);
                }
            }
            acc = acc * z0.clone() + inner;
        }
        acc
    }

    /// Numerical evaluation at a complex point.
    pub fn eval_complex(&self, z0: Complex64, w0: Complex64) -> Complex64 {
        let dz = self.deg(Var::Z).unwrap_or(0);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in (0..=dz).rev() {
            let row: Vec<_> = self.terms.range((i, 0)..=(i, u32::MAX)).collect();
            let mut inner = Complex64::new(0.0, 0.0);
            if let Some(dw) = row.iter().map(|(&(_, j), _)| j).max() {
                let mut k = row.len();
                for j in (0..=dw).rev() {
                    inner *= w0;
                    if k > 0 && row[k - 1].0 .1 == j {
                        inner += row[k - 1].1.to_c64();
                        k -= 1;
                    }
                }
            }
            acc = acc * z0 + inner;
        }
        acc
    }

    /// Substitution `p(αz + β, γw + δ)`.
    pub fn compose_affine(&self, z_map: (&S, &S), w_map: (&S, &S)) -> Self {
        let zs = Self::from_terms([((1, 0), z_map.0.clone()), ((0, 0), z_map.1.clone())]);
        let ws = Self::from_terms([((0, 1), w_map.0.clone()), ((0, 0), w_map.1.clone())]);
        let dz = self.deg(Var::Z).unwrap_or(0);
        let dw = self.deg(Var::W).unwrap_or(0);
        let zp: Vec<_> = (0..=dz).map(|e| zs.pow(e)).collect();
        let wp: Vec<_> = (0..=dw).map(|e| ws.pow(e)).collect();
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let t = (&zp[i as usize] * &wp[j as usize]).scale(c);
            out = &out + &t;
        }
        out
    }

    /// Exchange the roles of `z` and `w`.
    pub fn swap_vars(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BiPoly<T> {
        BiPoly::from_terms(self.terms.iter().map(|(&k, v)| (k, f(v))))
    }

    pub fn to_complex(&self) -> BiPoly<Complex64> {
        self.map(|c| c.to_c64())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.to_c64().norm()).fold(0.0, f64::max)
    }

    /// View as a polynomial in `v`: entry `k` is the coefficient of `v^k`,
    /// a polynomial in the other variable.
    pub fn coeffs_in(&self, v: Var) -> Vec<UniPoly<S>> {
        let d = self.deg(v).unwrap_or(0) as usize;
        let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); d + 1];
        for (&(i, j), c) in &self.terms {
            let (k, e) = if v == Var::Z { (i, j) } else { (j, i) };
            rows[k as usize].push((e as usize, c.clone()));
        }
        rows.into_iter()
            .map(|r| {
                let n = r.iter().map(|(e, _)| *e + 1).max().unwrap_or(0);
                let mut v = vec![S::zero(); n];
                for (e, c) in r {
                    v[e] = c;
                }
                UniPoly::new(v)
            })
            .collect()
    }

    /// `Some(u)` when `self` depends on `v` alone (or is constant).
    pub fn as_univariate(&self, v: Var) -> Option<UniPoly<S>> {
        if self.depends_on(v.other()) {
            return None;
        }
        let mut cs = self.coeffs_in(v);
        Some(UniPoly::new(cs.iter_mut().map(|c| c.coeff(0)).collect()))
    }

    /// Exact division by a univariate polynomial in `v`. `None` if not exact.
    pub fn div_exact_uni(&self, d: &UniPoly<S>, v: Var) -> Option<Self> {
        let rows = self.coeffs_in(v.other());
        let mut out = Self::zero();
        for (k, r) in rows.iter().enumerate() {
            let (q, rem) = r.div_rem(d)?;
            if !rem.is_zero() {
                return None;
            }
            out = &out + &q.to_bipoly(v).mul_var_pow(v.other(), k as u32);
        }
        Some(out)
    }

    pub fn mul_var_pow(&self, v: Var, e: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| {
            let k = if v == Var::Z { (i + e, j) } else { (i, j + e) };
            (k, c.clone())
        }))
    }
}

impl BiPoly<GaussRat> {
    /// Serializes as the sparse `{"i,j": coeff}` map.
    pub fn to_sparse_map(&self) -> BTreeMap<String, GaussRat> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| (format!("{i},{j}"), c.clone()))
            .collect()
    }
}

impl Serialize for BiPoly<GaussRat> {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (&(i, j), c) in &self.terms {
            m.serialize_entry(&format!("{i},{j}"), c)?;
        }
        m.end()
    }
}

impl<S: Scalar> Add for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn add(self, o: &BiPoly<S>) -> BiPoly<S> {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn sub(self, o: &BiPoly<S>) -> BiPoly<S> {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl<S: Scalar> Mul for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn mul(self, o: &BiPoly<S>) -> BiPoly<S> {
        if self.terms.is_empty() || o.terms.is_empty() {
            return BiPoly::zero();
        }
        // accumulate on a dense grid, then drop the zeros
        let (dz, dw) = (
            self.deg(Var::Z).unwrap_or(0) + o.deg(Var::Z).unwrap_or(0) + 1,
            self.deg(Var::W).unwrap_or(0) + o.deg(Var::W).unwrap_or(0) + 1,
        );
        let mut grid: Vec<Option<S>> = vec![None; (dz * dw) as usize];
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                let k = ((i1 + i2) * dw + j1 + j2) as usize;
                let t = c1.clone() * c2.clone();
                grid[k] = Some(match grid[k].take() {
                    Some(acc) => acc + t,
                    None => t,
                });
            }
        }
        let terms = grid
            .into_iter()
            .enumerate()
            .filter_map(|(k, c)| {
                let c = c?;
                (!c.is_zero()).then(|| ((k as u32 / dw, k as u32 % dw), c))
            })
            .collect();
        BiPoly { terms }
    }
}

impl<S: Scalar> Neg for &BiPoly<S> {
    type Output = BiPoly<S>;
    fn neg(self) -> BiPoly<S> {
        BiPoly::from_terms(self.terms.iter().map(|(&k, c)| (k, -c.clone())))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<S: Scalar> $tr for BiPoly<S> {
            type Output = BiPoly<S>;
            fn $m(self, o: BiPoly<S>) -> BiPoly<S> { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<S: Scalar + fmt::Display> fmt::Display for BiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest total degree first
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let ct = c.to_string();
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let mut parts = Vec::new();
                    match i {
                        0 => {}
                        1 => parts.push("z".to_string()),
                        _ => parts.push(format!("z^{i}")),
                    }
                    match j {
                        0 => {}
                        1 => parts.push("w".to_string()),
                        _ => parts.push(format!("w^{j}")),
                    }
                    parts.join("*")
                }
            };
            let (neg, body) = match ct.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, ct.clone()),
            };
            let needs_paren = body.contains(['+', '-']);
            let coeff_txt = if needs_paren { format!("({body})") } else { body.clone() };
            let term = if mono.is_empty() {
                coeff_txt
            } else if body == "1" {
                mono
            } else {
                format!("{coeff_txt}*{mono}")
            };
            match (n, neg) {
                (0, true) => write!(f, "-{term}")?,
                (0, false) => write!(f, "{term}")?,
                (_, true) => write!(f, " - {term}")?,
                (_, false) => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for BiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
