//! Potentials in the fibre over a point: the coefficient matrix `C`, the
//! prolongation and Bertrand–Darboux residuals, companion potentials by path
//! integration, and the Poisson-bracket check of the integrals.

pub mod expr;
pub mod series;

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exact::{BiPoly, Var};
use crate::killing::{KillingTensorField, SpecialConformalKillingTensor};
use crate::pluecker::TernaryTriple;
use crate::Error;

pub use expr::{Expr, PotentialExpression};
pub use series::{cauchy_taylor, series_match, solve_fibre_series, solve_series, FibreBasis, Series, SeriesMatch, SeriesSolution};

type C = Complex64;

/// `num / den` with polynomial numerator and denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn {
    pub num: BiPoly,
    pub den: BiPoly,
}

impl RationalFn {
    /// Equal as functions: `n1 d2 = n2 d1`.
    pub fn same_as(&self, other: &RationalFn) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn eval(&self, z: C, w: C) -> Result<C, Error> {
        let d = self.den.eval_complex(z, w);
        if d.norm() == 0.0 {
            return Err(Error::SingularSample);
        }
        Ok(self.num.eval_complex(z, w) / d)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Coefficient matrix of the prolongation system, over the common
/// denominator `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    pub c11: RationalFn,
    pub c12: RationalFn,
    pub c21: RationalFn,
    pub c22: RationalFn,
}

impl CMatrix {
    pub fn entries(&self) -> [&RationalFn; 4] {
        [&self.c11, &self.c12, &self.c21, &self.c22]
    }

    pub fn same_as(&self, other: &CMatrix) -> bool {
        self.entries().iter().zip(other.entries()).all(|(a, b)| a.same_as(b))
    }
}

/// `C = (1/D) [[−D_z, A_z], [B_w, −D_w]]`.
pub fn c_matrix(t: &TernaryTriple) -> Result<CMatrix, Error> {
    if t.d.is_zero() {
        return Err(Error::DegeneratePoint);
    }
    let r = |num: BiPoly| RationalFn { num, den: t.d.clone() };
    Ok(CMatrix {
        c11: r(-&t.d.diff(Var::Z)),
        c12: r(t.a.clone()),
        c21: r(t.b.clone()),
        c22: r(-&t.d.diff(Var::W)),
    })
}

/// The same matrix written directly in terms of two tensors' `L` and `λ`.
pub fn c_matrix_from_pair(t1: &SpecialConformalKillingTensor, t2: &SpecialConformalKillingTensor) -> Result<CMatrix, Error> {
    let (f1, f2) = (t1.to_field(), t2.to_field());
    let den = &(&f1.l_zz * &f2.l_ww) - &(&f1.l_ww * &f2.l_zz);
    if den.is_zero() {
        return Err(Error::DegeneratePoint);
    }
    let r = |num: BiPoly| RationalFn { num, den: den.clone() };
    Ok(CMatrix {
        c11: r(&(&f1.lambda_w * &f2.l_zz) - &(&f1.l_zz * &f2.lambda_w)),
        c12: r(&(&f1.l_zz * &f2.lambda_z) - &(&f1.lambda_z * &f2.l_zz)),
        c21: r(&(&f1.lambda_w * &f2.l_ww) - &(&f1.l_ww * &f2.lambda_w)),
        c22: r(&(&f1.l_ww * &f2.lambda_z) - &(&f1.lambda_z * &f2.l_ww)),
    })
}

/// Axis-aligned sampling box: `Re z`, `Re w` in their ranges and both
/// imaginary parts in `im`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub re_z: (f64, f64),
    pub re_w: (f64, f64),
    pub im: (f64, f64),
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox { re_z: (1.0, 2.0), re_w: (1.0, 2.0), im: (-0.5, 0.5) }
    }
}

impl SampleBox {
    pub fn center(&self) -> (C, C) {
        let m = |r: (f64, f64)| 0.5 * (r.0 + r.1);
        (C::new(m(self.re_z), m(self.im)), C::new(m(self.re_w), m(self.im)))
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> (C, C) {
        let mut u = |r: (f64, f64)| rng.gen_range(r.0..=r.1);
        let z = C::new(u(self.re_z), u(self.im));
        let w = C::new(u(self.re_w), u(self.im));
        (z, w)
    }

    pub fn samples<R: Rng>(&self, n: usize, rng: &mut R) -> Vec<(C, C)> {
        (0..n).map(|_| self.sample(rng)).collect()
    }
}

/// `V` with the derivatives the residuals need, differentiated once.
#[derive(Clone, Debug)]
pub struct Jet {
    parts: [Expr; 6],
}

/// Values `V, V_z, V_w, V_zz, V_zw, V_ww` at a point.
#[derive(Clone, Copy, Debug)]
pub struct JetValue {
    pub v: C,
    pub z: C,
    pub w: C,
    pub zz: C,
    pub zw: C,
    pub ww: C,
}

impl Jet {
    pub fn new(v: &Expr) -> Self {
        let vz = v.diff(Var::Z);
        let vw = v.diff(Var::W);
        let parts = [v.clone(), vz.diff(Var::Z), vz.diff(Var::W), vw.diff(Var::W), vz, vw];
        Jet { parts }
    }

    pub fn eval(&self, z: C, w: C) -> Result<JetValue, Error> {
        let e = |k: usize| self.parts[k].eval(z, w);
        Ok(JetValue { v: e(0)?, zz: e(1)?, zw: e(2)?, ww: e(3)?, z: e(4)?, w: e(5)? })
    }
}

fn d_is_singular(d: &BiPoly, z: C, w: C) -> bool {
    let scale = d.max_abs_coeff() * (1.0 + z.norm() + w.norm()).powi(3);
    d.eval_complex(z, w).norm() <= 1e-12 * scale
}

/// Max over samples of the two prolongation residuals
/// `|V_zz − 3/2 (C11 V_z + C12 V_w)|`, `|V_ww − 3/2 (C21 V_z + C22 V_w)|`.
pub fn prolongation_residual(t: &TernaryTriple, v: &Expr, samples: &[(C, C)]) -> Result<f64, Error> {
    if t.d.is_zero() {
        return Err(Error::DegeneratePoint);
    }
    let jet = Jet::new(v);
    let (dz, dw) = (t.d.diff(Var::Z), t.d.diff(Var::W));
    let mut worst: f64 = 0.0;
    for &(z, w) in samples {
        if d_is_singular(&t.d, z, w) {
            return Err(Error::SingularSample);
        }
        let j = jet.eval(z, w)?;
        let d = t.d.eval_complex(z, w);
        let (a, b) = (t.a.eval_complex(z, w), t.b.eval_complex(z, w));
        let (ez, ew) = (dz.eval_complex(z, w), dw.eval_complex(z, w));
        let r1 = j.zz - 1.5 * (-ez * j.z + a * j.w) / d;
        let r2 = j.ww - 1.5 * (b * j.z - ew * j.w) / d;
        worst = worst.max(r1.norm()).max(r2.norm());
    }
    Ok(worst)
}

/// Max over samples of `|L_ww V_zz − L_zz V_ww − 3/2 (λ_z V_w − λ_w V_z)|`.
pub fn bd_residual(t: &SpecialConformalKillingTensor, v: &Expr, samples: &[(C, C)]) -> Result<f64, Error> {
    let f = t.to_field();
    let jet = Jet::new(v);
    let mut worst: f64 = 0.0;
    for &(z, w) in samples {
        let j = jet.eval(z, w)?;
        let e = |p: &BiPoly| p.eval_complex(z, w);
        let r = e(&f.l_ww) * j.zz - e(&f.l_zz) * j.ww - 1.5 * (e(&f.lambda_z) * j.w - e(&f.lambda_w) * j.z);
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// The 1-form `K dV` and its exterior derivative, evaluated pointwise.
struct KdV {
    k: KillingTensorField,
    kd: [BiPoly; 4],
    jet: Jet,
}

impl KdV {
    fn new(t: &SpecialConformalKillingTensor, v: &Expr) -> Self {
        let k = t.to_killing();
        let kd = [k.k_ww.diff(Var::Z), k.k_zw.diff(Var::Z), k.k_zw.diff(Var::W), k.k_zz.diff(Var::W)];
        KdV { k, kd, jet: Jet::new(v) }
    }

    /// `((K dV)_z, (K dV)_w)` with the index raised by `g^{zw} = 1`.
    fn form(&self, z: C, w: C) -> Result<(C, C), Error> {
        let j = self.jet.eval(z, w)?;
        let e = |p: &BiPoly| p.eval_complex(z, w);
        let (kzz, kzw, kww) = (e(&self.k.k_zz), e(&self.k.k_zw), e(&self.k.k_ww));
        Ok((kzw * j.z + kzz * j.w, kww * j.z + kzw * j.w))
    }

    /// `∂_z (K dV)_w − ∂_w (K dV)_z`.
    fn curl(&self, z: C, w: C) -> Result<C, Error> {
        let j = self.jet.eval(z, w)?;
        let e = |p: &BiPoly| p.eval_complex(z, w);
        let (kzz, kzw, kww) = (e(&self.k.k_zz), e(&self.k.k_zw), e(&self.k.k_ww));
        let [kww_z, kzw_z, kzw_w, kzz_w] = self.kd.each_ref().map(|p| p.eval_complex(z, w));
        let dz_w = kww_z * j.z + kww * j.zz + kzw_z * j.w + kzw * j.zw;
        let dw_z = kzw_w * j.z + kzw * j.zw + kzz_w * j.w + kzz * j.ww;
        Ok(dz_w - dw_z)
    }
}

/// Nodes and weights of `n`-point Gauss–Legendre quadrature on `[0, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((0.5 * (1.0 - x), 1.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

const GL_NODES: usize = 10;
const MAX_PANELS: usize = 1 << 12;

fn segment_integral(form: &KdV, a: (C, C), b: (C, C), tol: f64, gl: &[(f64, f64)]) -> Result<C, Error> {
    let (dz, dw) = (b.0 - a.0, b.1 - a.1);
    let panel_sum = |n: usize| -> Result<C, Error> {
        let mut s = C::new(0.0, 0.0);
        for k in 0..n {
            for &(x, wt) in gl {
                let u = (k as f64 + x) / n as f64;
                let (z, w) = (a.0 + dz * u, a.1 + dw * u);
                let (fz, fw) = form.form(z, w).map_err(|_| Error::PathThroughSingularity(format!("({z}, {w})")))?;
                s += (fz * dz + fw * dw) * (wt / n as f64);
            }
        }
        Ok(s)
    };
    let mut n = 1;
    let mut prev = panel_sum(n)?;
    loop {
        n *= 2;
        let next = panel_sum(n)?;
        if (next - prev).norm() <= tol * (1.0 + next.norm()) || n >= MAX_PANELS {
            return Ok(next);
        }
        prev = next;
    }
}

/// Sampled companion potential along a polyline.
#[derive(Clone, Debug, Serialize)]
pub struct CompanionPotential {
    /// `V^(α)` at each path vertex, normalized to 0 at the first.
    pub values: Vec<C>,
    /// Max `|∂_z (K dV)_w − ∂_w (K dV)_z|` over quadrature nodes on the path.
    pub closedness: f64,
}

/// Integrate `K dV` along `path` by composite Gauss–Legendre with panel
/// doubling, recording the closedness residual along the way.
pub fn recover_companion_potential(
    t: &SpecialConformalKillingTensor,
    v: &Expr,
    path: &[(C, C)],
    tol: f64,
) -> Result<CompanionPotential, Error> {
    let form = KdV::new(t, v);
    let gl = gauss_legendre(GL_NODES);
    let mut values = vec![C::new(0.0, 0.0)];
    let mut closedness: f64 = 0.0;
    for seg in path.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        for &(x, _) in &gl {
            let p = (a.0 + (b.0 - a.0) * x, a.1 + (b.1 - a.1) * x);
            let c = form.curl(p.0, p.1).map_err(|_| Error::PathThroughSingularity(format!("({}, {})", p.0, p.1)))?;
            closedness = closedness.max(c.norm());
        }
        let last = *values.last().expect("nonempty");
        values.push(last + segment_integral(&form, a, b, tol, &gl)?);
    }
    Ok(CompanionPotential { values, closedness })
}

/// Gradient of the companion potential at `x`, where `V^(α)(y)` is the
/// integral of `K dV` along the straight segment from `start` to `y`, by
/// Cauchy differentiation on circles of radius `radius`. The segments sweep
/// a 2-dimensional region, so the result equals `K dV` only when the form is
/// closed there.
pub fn companion_gradient(
    t: &SpecialConformalKillingTensor,
    v: &Expr,
    start: (C, C),
    x: (C, C),
    radius: f64,
    tol: f64,
) -> Result<(C, C), Error> {
    let form = KdV::new(t, v);
    let gl = gauss_legendre(GL_NODES);
    let m = 16;
    let mut gz = C::new(0.0, 0.0);
    let mut gw = C::new(0.0, 0.0);
    for k in 0..m {
        let e = C::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64);
        let h = e * radius;
        gz += segment_integral(&form, start, (x.0 + h, x.1), tol, &gl)? / h;
        gw += segment_integral(&form, start, (x.0, x.1 + h), tol, &gl)? / h;
    }
    Ok((gz / m as f64, gw / m as f64))
}

/// `K dV` at a point.
pub fn kdv(t: &SpecialConformalKillingTensor, v: &Expr, z: C, w: C) -> Result<(C, C), Error> {
    KdV::new(t, v).form(z, w)
}

/// A phase-space point `(z, w, p_z, p_w)`.
pub type PhasePoint = [C; 4];

pub fn random_phase_points<R: Rng>(bx: &SampleBox, n: usize, rng: &mut R) -> Vec<PhasePoint> {
    (0..n)
        .map(|_| {
            let (z, w) = bx.sample(rng);
            let mut p = || C::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            [z, w, p(), p()]
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PoissonReport {
    /// `{K^(α) p p, 2 p_z p_w} = 0` identically, for α = 1, 2.
    pub cubic_exact: [bool; 2],
    /// Max over samples of `|{F^(α), H}|`, for α = 1, 2.
    pub max_bracket: [f64; 2],
    pub samples: usize,
}

impl PoissonReport {
    pub fn max(&self) -> f64 {
        self.max_bracket[0].max(self.max_bracket[1])
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.cubic_exact.iter().all(|&b| b) && self.max() < tol
    }
}

/// `{F^(α), H}` with `F^(α) = K^(α)(p, p) + V^(α)` and `H = 2 p_z p_w + V`.
/// The cubic part is checked symbolically; the linear part uses `V^(α)` from
/// [`companion_gradient`], integrated from `start`.
pub fn poisson_verify(
    t1: &SpecialConformalKillingTensor,
    t2: &SpecialConformalKillingTensor,
    v: &Expr,
    phase: &[PhasePoint],
    start: (C, C),
) -> Result<PoissonReport, Error> {
    let jet = Jet::new(v);
    let mut cubic_exact = [false; 2];
    let mut max_bracket = [0.0f64; 2];
    for (a, t) in [t1, t2].into_iter().enumerate() {
        let k = t.to_killing();
        cubic_exact[a] = k.is_killing();
        for &[z, w, pz, pw] in phase {
            let j = jet.eval(z, w)?;
            let e = |p: &BiPoly| p.eval_complex(z, w);
            let (kzz, kzw, kww) = (e(&k.k_zz), e(&k.k_zw), e(&k.k_ww));
            let (gz, gw) = companion_gradient(t, v, start, (z, w), 0.05, 1e-14)?;
            let lin = pz * (gw - kww * j.z - kzw * j.w) * 2.0 + pw * (gz - kzw * j.z - kzz * j.w) * 2.0;
            max_bracket[a] = max_bracket[a].max(lin.norm());
        }
    }
    Ok(PoissonReport { cubic_exact, max_bracket, samples: phase.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::rng;
    use crate::exact::GaussRat;
    use crate::pluecker::{wedge, PlueckerPoint};

    fn e(s: &str) -> Expr {
        s.parse().unwrap()
    }

    fn sckt(v: [i64; 5]) -> SpecialConformalKillingTensor {
        SpecialConformalKillingTensor::from_ints(v)
    }

    fn e1() -> TernaryTriple {
        PlueckerPoint::from_ints(&[((2, 0), 1), ((0, 2), -1)]).extract()
    }

    fn samples() -> Vec<(C, C)> {
        SampleBox::default().samples(20, &mut rng(3))
    }

    #[test]
    fn c_matrix_examples() {
        let c = c_matrix(&e1()).unwrap();
        assert_eq!(c.c11.to_string(), "(-2*z)/(z^2 - w^2)");
        assert_eq!(c.c12.to_string(), "(2*w)/(z^2 - w^2)");
        assert_eq!(c.c21.to_string(), "(-2*z)/(z^2 - w^2)");
        assert_eq!(c.c22.to_string(), "(2*w)/(z^2 - w^2)");
        let k = PlueckerPoint::from_entries([((0, 0), GaussRat::one()), ((0, 3), GaussRat::ratio(4, 3))]);
        let c = c_matrix(&k.extract()).unwrap();
        assert!(c.c11.num.is_zero() && c.c12.num.is_zero() && c.c22.num.is_zero());
        assert_eq!(c.c21.to_string(), "(4/3)/(1)");
        let e16 = PlueckerPoint::from_ints(&[((2, 1), 1), ((1, 2), 1)]).extract();
        assert_eq!(c_matrix(&e16).unwrap().c12.to_string(), "(w^2)/(z^2*w + z*w^2)");
        assert_eq!(c_matrix(&TernaryTriple::new(BiPoly::zero(), BiPoly::zero(), BiPoly::zero())), Err(Error::DegeneratePoint));
    }

    #[test]
    fn c_matrix_agrees_with_tensor_form() {
        let mut r = rng(11);
        for _ in 0..20 {
            let (t1, t2) = (crate::enumerate::random_tensor(&mut r), crate::enumerate::random_tensor(&mut r));
            let Ok(p) = wedge(&t1, &t2) else { continue };
            let (Ok(a), Ok(b)) = (c_matrix(&p.extract()), c_matrix_from_pair(&t1, &t2)) else { continue };
            assert!(a.same_as(&b));
        }
    }

    #[test]
    fn prolongation_examples() {
        let s = samples();
        assert_eq!(prolongation_residual(&e1(), &e("(prod z w)"), &s).unwrap(), 0.0);
        assert!(prolongation_residual(&e1(), &e("(pow x -2)"), &s).unwrap() < 1e-9);
        let e16 = PlueckerPoint::from_ints(&[((2, 1), 1), ((1, 2), 1)]).extract();
        assert!(prolongation_residual(&e16, &e("(pow (prod z w) -1/2)"), &s).unwrap() < 1e-9);
        assert!(prolongation_residual(&e1(), &e("(prod z z)"), &s).unwrap() > 0.1);
        let on_line = [(C::new(1.0, 0.0), C::new(1.0, 0.0))];
        assert_eq!(prolongation_residual(&e1(), &e("w"), &on_line), Err(Error::SingularSample));
    }

    #[test]
    fn bd_examples() {
        let s = samples();
        assert_eq!(bd_residual(&sckt([1, 0, 0, 0, 1]), &e("(prod z w)"), &s).unwrap(), 0.0);
        assert_eq!(bd_residual(&sckt([0, 0, 1, 0, 0]), &e("(prod z w)"), &s).unwrap(), 0.0);
        assert!(bd_residual(&sckt([0, 0, 1, 0, 0]), &e("(prod z z)"), &s).unwrap() > 1.0);
    }

    #[test]
    fn gauss_legendre_is_exact_on_polynomials() {
        let gl = gauss_legendre(GL_NODES);
        let s: f64 = gl.iter().map(|&(x, w)| w * x.powi(19)).sum();
        assert!((s - 1.0 / 20.0).abs() < 1e-14);
    }

    #[test]
    fn companion_potential_of_e1() {
        let t = sckt([0, 0, 1, 0, 0]);
        let v = e("(prod z w)");
        let path = [(C::new(1.0, 0.0), C::new(1.0, 0.0)), (C::new(2.0, 0.3), C::new(1.5, -0.2)), (C::new(1.2, 0.4), C::new(1.9, 0.1))];
        let cp = recover_companion_potential(&t, &v, &path, 1e-13).unwrap();
        assert!(cp.closedness < 1e-9);
        let x = (C::new(1.5, 0.1), C::new(1.4, -0.1));
        let g = companion_gradient(&t, &v, path[0], x, 0.05, 1e-14).unwrap();
        let k = kdv(&t, &v, x.0, x.1).unwrap();
        assert!((g.0 - k.0).norm() < 1e-8 && (g.1 - k.1).norm() < 1e-8);
        let c = recover_companion_potential(&t, &e("7"), &path, 1e-13).unwrap();
        assert!(c.values.iter().all(|v| v.norm() == 0.0));
        let bad = recover_companion_potential(&t, &e("(prod z z)"), &path, 1e-13).unwrap();
        assert!(bad.closedness > 1.0);
    }

    #[test]
    fn poisson_e1() {
        let (t1, t2) = (sckt([1, 0, 0, 0, 1]), sckt([0, 0, 1, 0, 0]));
        let bx = SampleBox::default();
        let phase = random_phase_points(&bx, 10, &mut rng(5));
        let start = bx.center();
        let r = poisson_verify(&t1, &t2, &e("(prod z w)"), &phase, start).unwrap();
        assert!(r.passes(1e-8), "{r:?}");
        let free = poisson_verify(&t1, &t2, &e("0"), &phase, start).unwrap();
        assert_eq!(free.max(), 0.0);
        let bad = poisson_verify(&t1, &t2, &e("(prod z z)"), &phase, start).unwrap();
        assert!(bad.max() > 1e-2);
    }
}
