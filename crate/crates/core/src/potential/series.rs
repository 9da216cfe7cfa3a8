//! Power-series solution of the prolongation system around a base point.
//!
//! Writing `V = Σ v_pq u^p v^q` with `u = z − z0`, `v = w − w0`, the two
//! equations
//!
//! ```text
//! D V_zz = 3/2 (−D_z V_z + A_z V_w)
//! D V_ww = 3/2 ( B_w V_z − D_w V_w)
//! ```
//!
//! fix every coefficient from `v_00, v_10, v_01, v_11`. Coefficients with
//! `p, q ≥ 2` are reached by both equations; on the variety the two values
//! agree.

use num_complex::Complex64;
use serde::Serialize;

use crate::exact::{BiPoly, GaussRat, Scalar};
use crate::pluecker::TernaryTriple;
use crate::Error;

fn idx(p: u32, q: u32) -> usize {
    let d = (p + q) as usize;
    d * (d + 1) / 2 + q as usize
}

/// Truncated double power series in `(z − z0, w − w0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<S: Scalar = GaussRat> {
    pub base: (S, S),
    pub order: u32,
    coeffs: Vec<S>,
}

impl<S: Scalar> Series<S> {
    pub fn coeff(&self, p: u32, q: u32) -> &S {
        &self.coeffs[idx(p, q)]
    }

    /// `((p, q), v_pq)` by increasing total degree.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &S)> {
        (0..=self.order).flat_map(move |d| (0..=d).map(move |q| ((d - q, q), &self.coeffs[idx(d - q, q)])))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    pub fn eval_c64(&self, z: Complex64, w: Complex64) -> Complex64 {
        let (u, v) = (z - self.base.0.to_c64(), w - self.base.1.to_c64());
        self.terms().map(|((p, q), c)| c.to_c64() * u.powu(p) * v.powu(q)).sum()
    }

    pub fn to_c64(&self) -> Series<Complex64> {
        Series {
            base: (self.base.0.to_c64(), self.base.1.to_c64()),
            order: self.order,
            coeffs: self.coeffs.iter().map(S::to_c64).collect(),
        }
    }
}

/// A coefficient fixed by both equations, with both values.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleCheck<S: Scalar = GaussRat> {
    pub p: u32,
    pub q: u32,
    pub from_z: S,
    pub from_w: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSolution<S: Scalar = GaussRat> {
    pub series: Series<S>,
    pub checks: Vec<DoubleCheck<S>>,
}

impl<S: Scalar> SeriesSolution<S> {
    /// Doubly-determined coefficients whose two values differ exactly.
    pub fn conflicts(&self) -> Vec<(u32, u32)> {
        self.checks.iter().filter(|c| c.from_z != c.from_w).map(|c| (c.p, c.q)).collect()
    }

    /// Largest `|from_z − from_w|` relative to the coefficient size.
    pub fn max_discrepancy(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| {
                let (a, b) = (c.from_z.to_c64(), c.from_w.to_c64());
                (a - b).norm() / (1.0 + a.norm().max(b.norm()))
            })
            .fold(0.0, f64::max)
    }
}

/// Dense coefficient grid of a shifted polynomial.
struct Grid<S> {
    n: usize,
    c: Vec<S>,
}

impl<S: Scalar> Grid<S> {
    fn new(p: &BiPoly<S>) -> Self {
        let n = 4;
        let mut c = vec![S::zero(); n * n];
        for (&(i, j), v) in p.terms() {
            c[i as usize * n + j as usize] = v.clone();
        }
        Grid { n, c }
    }

    fn nonzero(&self) -> Vec<(u32, u32, S)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let v = &self.c[i * self.n + j];
                if !v.is_zero() {
                    out.push((i as u32, j as u32, v.clone()));
                }
            }
        }
        out
    }
}

fn shifted<S: Scalar>(p: &BiPoly, base: &(S, S)) -> BiPoly<S> {
    let one = S::one();
    p.map(S::from_gauss).compose_affine((&one, &base.0), (&one, &base.1))
}

fn int<S: Scalar>(n: i64) -> S {
    S::from_i64(n)
}

/// Solve the prolongation recursion to total degree `order` from the seeds
/// `(V, V_z, V_w, V_zw)` at `base`.
pub fn solve_series<S: Scalar>(t: &TernaryTriple, base: (S, S), seeds: [S; 4], order: u32) -> Result<SeriesSolution<S>, Error> {
    if t.d.is_zero() {
        return Err(Error::DegeneratePoint);
    }
    let d = shifted(&t.d, &base);
    let d00 = d.coeff(0, 0);
    if d00.is_zero() {
        return Err(Error::SingularBase);
    }
    use crate::exact::Var;
    let dg = Grid::new(&d).nonzero();
    let du = Grid::new(&d.diff(Var::Z)).nonzero();
    let dv = Grid::new(&d.diff(Var::W)).nonzero();
    let ag = Grid::new(&shifted(&t.a, &base)).nonzero();
    let bg = Grid::new(&shifted(&t.b, &base)).nonzero();
    let half3 = int::<S>(3) / int::<S>(2);

    let n = idx(0, order.max(1)) + 1;
    let mut v: Vec<S> = vec![S::zero(); n];
    let [s0, s1, s2, s3] = seeds;
    v[idx(0, 0)] = s0;
    if order >= 1 {
        v[idx(1, 0)] = s1;
        v[idx(0, 1)] = s2;
    }
    if order >= 2 {
        v[idx(1, 1)] = s3;
    }
    let get = |v: &Vec<S>, p: i64, q: i64| -> Option<S> { (p >= 0 && q >= 0).then(|| v[idx(p as u32, q as u32)].clone()) };

    // Equation in u at Taylor index (m, n): solve for v_{m+2, n}.
    let from_z = |v: &Vec<S>, m: i64, nn: i64| -> S {
        let mut rhs = S::zero();
        for (i, j, c) in &du {
            let (p, q) = (m + 1 - *i as i64, nn - *j as i64);
            if let Some(x) = get(v, p, q) {
                rhs = rhs - c.clone() * int::<S>(p) * x;
            }
        }
        for (i, j, c) in &ag {
            let (p, q) = (m - *i as i64, nn + 1 - *j as i64);
            if let Some(x) = get(v, p, q) {
                rhs = rhs + c.clone() * int::<S>(q) * x;
            }
        }
        let mut acc = half3.clone() * rhs;
        for (i, j, c) in &dg {
            if *i == 0 && *j == 0 {
                continue;
            }
            let (p, q) = (m + 2 - *i as i64, nn - *j as i64);
            if let Some(x) = get(v, p, q) {
                acc = acc - c.clone() * int::<S>(p * (p - 1)) * x;
            }
        }
        acc / (d00.clone() * int::<S>((m + 2) * (m + 1)))
    };
    let from_w = |v: &Vec<S>, m: i64, nn: i64| -> S {
        let mut rhs = S::zero();
        for (i, j, c) in &bg {
            let (p, q) = (m + 1 - *i as i64, nn - *j as i64);
            if let Some(x) = get(v, p, q) {
                rhs = rhs + c.clone() * int::<S>(p) * x;
            }
        }
        for (i, j, c) in &dv {
            let (p, q) = (m - *i as i64, nn + 1 - *j as i64);
            if let Some(x) = get(v, p, q) {
                rhs = rhs - c.clone() * int::<S>(q) * x;
            }
        }
        let mut acc = half3.clone() * rhs;
        for (i, j, c) in &dg {
            if *i == 0 && *j == 0 {
                continue;
            }
            let (p, q) = (m - *i as i64, nn + 2 - *j as i64);
            if let Some(x) = get(v, p, q) {
                acc = acc - c.clone() * int::<S>(q * (q - 1)) * x;
            }
        }
        acc / (d00.clone() * int::<S>((nn + 2) * (nn + 1)))
    };

    let mut checks = Vec::new();
    for deg in 2..=order {
        for q in 0..=deg {
            let p = deg - q;
            let (pi, qi) = (p as i64, q as i64);
            let a = (p >= 2).then(|| from_z(&v, pi - 2, qi));
            let b = (q >= 2).then(|| from_w(&v, pi, qi - 2));
            let val = match (a, b) {
                (Some(a), Some(b)) => {
                    checks.push(DoubleCheck { p, q, from_z: a.clone(), from_w: b });
                    a
                }
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => continue, // the seed v_11
            };
            v[idx(p, q)] = val;
        }
    }
    v.truncate(idx(0, order) + 1);
    Ok(SeriesSolution { series: Series { base, order, coeffs: v }, checks })
}

/// The four basis solutions with unit seeds, as one fibre.
#[derive(Clone, Debug)]
pub struct FibreBasis<S: Scalar = GaussRat> {
    pub base: (S, S),
    pub order: u32,
    pub solutions: [SeriesSolution<S>; 4],
}

impl<S: Scalar> FibreBasis<S> {
    pub fn series(&self, k: usize) -> &Series<S> {
        &self.solutions[k].series
    }

    /// Every doubly-determined coefficient of every basis series agrees exactly.
    pub fn consistent(&self) -> bool {
        self.solutions.iter().all(|s| s.conflicts().is_empty())
    }

    pub fn max_discrepancy(&self) -> f64 {
        self.solutions.iter().map(SeriesSolution::max_discrepancy).fold(0.0, f64::max)
    }

    /// Rank of the 4 × (number of coefficients) matrix of the basis.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<S>> = self.solutions.iter().map(|s| s.series.terms().map(|(_, c)| c.clone()).collect()).collect();
        rank(rows)
    }

    /// Linear combination `Σ c_k e_k`, i.e. the series with seeds `c`.
    pub fn combine(&self, c: &[S; 4]) -> Series<S> {
        let mut out = self.solutions[0].series.clone();
        for (k, slot) in out.coeffs.iter_mut().enumerate() {
            let mut acc = S::zero();
            for (ck, s) in c.iter().zip(&self.solutions) {
                acc = acc + ck.clone() * s.series.coeffs[k].clone();
            }
            *slot = acc;
        }
        out
    }
}

pub fn solve_fibre_series<S: Scalar>(t: &TernaryTriple, base: (S, S), order: u32) -> Result<FibreBasis<S>, Error> {
    let unit = |k: usize| std::array::from_fn(|i| if i == k { S::one() } else { S::zero() });
    let solutions = [
        solve_series(t, base.clone(), unit(0), order)?,
        solve_series(t, base.clone(), unit(1), order)?,
        solve_series(t, base.clone(), unit(2), order)?,
        solve_series(t, base.clone(), unit(3), order)?,
    ];
    Ok(FibreBasis { base, order, solutions })
}

/// Row rank by Gaussian elimination; a pivot counts when it is nonzero in
/// the field (exactly, for exact scalars).
pub fn rank<S: Scalar>(mut rows: Vec<Vec<S>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).max_by(|&a, &b| rows[a][c].to_c64().norm().total_cmp(&rows[b][c].to_c64().norm())) else {
            break;
        };
        if rows[piv][c].is_zero() {
            continue;
        }
        rows.swap(r, piv);
        let pv = rows[r][c].clone();
        for i in r + 1..rows.len() {
            let f = rows[i][c].clone() / pv.clone();
            if f.is_zero() {
                continue;
            }
            for k in c..cols {
                let t = rows[i][k].clone() - f.clone() * rows[r][k].clone();
                rows[i][k] = t;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Taylor coefficients `v_pq` of a holomorphic function at `base` by the
/// trapezoidal Cauchy integral over a torus of radius `radius` with `m`
/// nodes per circle.
pub fn cauchy_taylor(
    f: impl Fn(Complex64, Complex64) -> Result<Complex64, Error>,
    base: (Complex64, Complex64),
    order: u32,
    radius: f64,
    m: usize,
) -> Result<Series<Complex64>, Error> {
    let roots: Vec<Complex64> = (0..m).map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64)).collect();
    let mut vals = vec![Complex64::new(0.0, 0.0); m * m];
    for (k, rk) in roots.iter().enumerate() {
        for (l, rl) in roots.iter().enumerate() {
            vals[k * m + l] = f(base.0 + radius * rk, base.1 + radius * rl)?;
        }
    }
    let n = idx(0, order) + 1;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for d in 0..=order {
        for q in 0..=d {
            let p = d - q;
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..m {
                let ek = roots[(k * p as usize) % m].conj();
                for l in 0..m {
                    s += vals[k * m + l] * ek * roots[(l * q as usize) % m].conj();
                }
            }
            coeffs[idx(p, q)] = s / (m * m) as f64 / radius.powi(d as i32);
        }
    }
    Ok(Series { base, order, coeffs })
}

/// Outcome of matching a closed form against the series solver.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesMatch {
    pub order: u32,
    /// Largest coefficient difference, each scaled by `radius^(p+q)` and
    /// divided by the largest scaled coefficient.
    pub max_rel_diff: f64,
}

/// Compare the Cauchy Taylor coefficients of `f` at `base` with the series
/// solution seeded from the same low-order coefficients.
pub fn series_match(
    t: &TernaryTriple,
    f: impl Fn(Complex64, Complex64) -> Result<Complex64, Error>,
    base: (Complex64, Complex64),
    order: u32,
    radius: f64,
) -> Result<SeriesMatch, Error> {
    let taylor = cauchy_taylor(f, base, order, radius, 48)?;
    let seeds = [*taylor.coeff(0, 0), *taylor.coeff(1, 0), *taylor.coeff(0, 1), *taylor.coeff(1, 1)];
    let sol = solve_series(t, base, seeds, order)?;
    let mut scale: f64 = 0.0;
    let mut diff: f64 = 0.0;
    for ((p, q), c) in taylor.terms() {
        let r = radius.powi((p + q) as i32);
        scale = scale.max(c.norm() * r);
        diff = diff.max((c - sol.series.coeff(p, q)).norm() * r);
    }
    Ok(SeriesMatch { order, max_rel_diff: if scale > 0.0 { diff / scale } else { diff } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pluecker::PlueckerPoint;

    fn q(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn e1() -> TernaryTriple {
        PlueckerPoint::from_ints(&[((2, 0), 1), ((0, 2), -1)]).extract()
    }

    #[test]
    fn e1_reproduces_zw() {
        let sol = solve_series(&e1(), (q(1), q(2)), [q(2), q(2), q(1), q(1)], 8).unwrap();
        assert!(sol.conflicts().is_empty());
        for ((p, qq), c) in sol.series.terms() {
            let expect = match (p, qq) {
                (0, 0) => q(2),
                (1, 0) => q(2),
                (0, 1) => q(1),
                (1, 1) => q(1),
                _ => q(0),
            };
            assert_eq!(*c, expect, "v_{p}{qq}");
        }
    }

    #[test]
    fn constant_d_reproduces_w2_plus_z() {
        let p = PlueckerPoint::from_entries([((0, 0), GaussRat::ratio(3, 4)), ((0, 3), q(1))]);
        let sol = solve_series(&p.extract(), (q(0), q(0)), [q(0), q(1), q(0), q(0)], 6).unwrap();
        for ((a, b), c) in sol.series.terms() {
            let expect = match (a, b) {
                (1, 0) | (0, 2) => q(1),
                _ => q(0),
            };
            assert_eq!(*c, expect, "v_{a}{b}");
        }
    }

    #[test]
    fn zero_seeds_and_singular_base() {
        let sol = solve_series(&e1(), (q(1), q(2)), [q(0), q(0), q(0), q(0)], 6).unwrap();
        assert!(sol.series.is_zero());
        assert_eq!(solve_series(&e1(), (q(1), q(1)), [q(1), q(0), q(0), q(0)], 6).unwrap_err(), Error::SingularBase);
    }

    #[test]
    fn fibre_rank_and_cauchy_agree() {
        let fb = solve_fibre_series(&e1(), (q(1), q(2)), 8).unwrap();
        assert_eq!(fb.rank(), 4);
        assert!(fb.consistent());
        let m = series_match(
            &e1(),
            |z, w| Ok((z + w).powi(-2)),
            (Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)),
            6,
            0.5,
        )
        .unwrap();
        assert!(m.max_rel_diff < 1e-9, "{}", m.max_rel_diff);
        let bad = series_match(&e1(), |z, _w| Ok(z * z), (Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)), 6, 0.5).unwrap();
        assert!(bad.max_rel_diff > 1e-3);
    }
}
