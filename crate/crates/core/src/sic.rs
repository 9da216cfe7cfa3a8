//! Algebraic superintegrability conditions on a triple `(D, A_z, B_w)` and the
//! lift that recovers `a30`, `a03` from `D`.

use num_complex::Complex64;
use serde::Serialize;

use crate::exact::{BiPoly, GaussRat, Var};
use crate::pluecker::{Derivs, PlueckerPoint, TernaryTriple};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SicReport {
    pub pluecker_residuals: [BiPoly; 5],
    pub cubic_residuals: [BiPoly; 2],
    pub quartic_residual: BiPoly,
    pub ab3_residuals: [BiPoly; 2],
    pub d3_residual: BiPoly,
    pub on_variety: bool,
    pub degenerate: bool,
}

impl SicReport {
    /// Residuals that are not identically zero, by name.
    pub fn failures(&self) -> Vec<(&'static str, &BiPoly)> {
        let mut out = Vec::new();
        let names = ["pluecker0", "pluecker1", "pluecker2", "pluecker3", "pluecker4"];
        for (n, r) in names.iter().zip(&self.pluecker_residuals) {
            out.push((*n, r));
        }
        out.push(("cubic0", &self.cubic_residuals[0]));
        out.push(("cubic1", &self.cubic_residuals[1]));
        out.push(("quartic", &self.quartic_residual));
        out.push(("ab3_a", &self.ab3_residuals[0]));
        out.push(("ab3_b", &self.ab3_residuals[1]));
        out.push(("d3", &self.d3_residual));
        out.retain(|(_, r)| !r.is_zero());
        out
    }
}

fn c(n: i64) -> GaussRat {
    GaussRat::from_int(n)
}

/// Exact residuals of all conditions on the triple.
pub fn sic_residuals(t: &TernaryTriple) -> SicReport {
    let d = Derivs::new(&t.d);
    let (a, b) = (&t.a, &t.b);
    let ab = a * b;

    let cubic0 = &(&(&(a * &(&d.d * &d.ww)).scale(&c(3)) - &(&ab * &d.z).scale(&c(2)))
        - &(a * &(&d.w * &d.w)).scale(&c(2)))
        + &(&(&d.d * &d.w) * &d.zz);
    let cubic1 = &(&(&(b * &(&d.d * &d.zz)).scale(&c(3)) - &(&ab * &d.w).scale(&c(2)))
        - &(b * &(&d.z * &d.z)).scale(&c(2)))
        + &(&(&d.d * &d.z) * &d.ww);
    let quartic = &(&(&(&(&(&d.d * &d.d) * &(&d.zz * &d.ww)).scale(&c(2))
        - &(b * &(&(&d.d * &d.z) * &d.zz)))
        - &(a * &(&(&d.d * &d.w) * &d.ww)))
        - &(&ab * &(&d.z * &d.w)))
        + &(&ab * &ab);

    SicReport {
        pluecker_residuals: t.local_pluecker_residuals(),
        cubic_residuals: [cubic0, cubic1],
        quartic_residual: quartic,
        ab3_residuals: ab3_residuals(t),
        d3_residual: derive_d3_chain(&t.d)[0].clone(),
        on_variety: false,
        degenerate: false,
    }
    .finish(t)
}

impl SicReport {
    fn finish(mut self, t: &TernaryTriple) -> Self {
        self.on_variety = self.pluecker_residuals.iter().all(BiPoly::is_zero)
            && self.ab3_residuals.iter().all(BiPoly::is_zero);
        let nonzero_const = |p: &BiPoly| !p.is_zero() && p.is_constant();
        self.degenerate = t.d.is_zero()
            && ((nonzero_const(&t.a) && t.b.is_zero()) || (nonzero_const(&t.b) && t.a.is_zero()));
        self
    }
}

/// The two conditions that express `A_z` and `B_w` through `D`.
pub fn ab3_residuals(t: &TernaryTriple) -> [BiPoly; 2] {
    let d = Derivs::new(&t.d);
    let half3 = GaussRat::ratio(3, 2);
    let a_rhs = &(&(&(&(&d.d * &d.w) * &d.zz).scale(&c(2)) - &(&(&d.d * &d.d) * &d.zzw).scale(&half3))
        - &(&d.w * &(&d.z * &d.z)))
        + &(&(&d.d * &d.z) * &d.zw);
    let b_rhs = &(&(&(&(&d.d * &d.z) * &d.ww).scale(&c(2)) - &(&(&d.d * &d.d) * &d.wwz).scale(&half3))
        - &(&d.z * &(&d.w * &d.w)))
        + &(&(&d.d * &d.w) * &d.zw);
    [
        &(&t.a * &(&d.w * &d.w)) - &a_rhs,
        &(&t.b * &(&d.z * &d.z)) - &b_rhs,
    ]
}

/// Residuals of the condition on `D` alone and of its three differential
/// consequences (`z`, `w` and mixed). They are not literal derivatives of one
/// another; each holds modulo the previous ones on the variety.
pub fn derive_d3_chain(dp: &BiPoly) -> [BiPoly; 4] {
    let d = Derivs::new(dp);
    let two = c(2);
    let d3 = &(&(&(&d.z * &d.z) * &d.ww) + &(&(&d.w * &d.w) * &d.zz)) + &(&(&d.z * &d.w) * &d.zw);
    let d3 = &d3
        - &(&d.d
            * &(&(&(&(&d.zz * &d.ww).scale(&two) + &(&d.z * &d.wwz)) + &(&d.w * &d.zzw))
                + &(&d.zw * &d.zw)));
    let d3z = &(&(&d.w * &d.zz) * &d.zw) - &(&d.d * &(&(&d.zz * &d.wwz) + &(&d.zw * &d.zzw)));
    let d3w = &(&(&d.z * &d.ww) * &d.zw) - &(&d.d * &(&(&d.ww * &d.zzw) + &(&d.zw * &d.wwz)));
    let d3zw = &(&(&d.zz * &d.zw) * &d.ww) - &(&(&d.d * &d.zzw) * &d.wwz).scale(&two);
    [d3, d3z, d3w, d3zw]
}

/// Numerical values of the two cubic integrability conditions and the
/// quartic consequence at a sample point, built from the C-matrix.
pub fn ic_residuals(t: &TernaryTriple, z0: Complex64, w0: Complex64) -> Result<[Complex64; 3], Error> {
    let ev = |p: &BiPoly| p.eval_complex(z0, w0);
    let dv = ev(&t.d);
    if dv.norm() <= f64::EPSILON * (1.0 + t.d.max_abs_coeff()) {
        return Err(Error::SingularSample);
    }
    let dz = ev(&t.d.diff(Var::Z));
    let dw = ev(&t.d.diff(Var::W));
    let a = ev(&t.a);
    let b = ev(&t.b);
    let aw = ev(&t.a.diff(Var::W));
    let bz = ev(&t.b.diff(Var::Z));
    let c11 = -dz / dv;
    let c12 = a / dv;
    let c21 = b / dv;
    let c22 = -dw / dv;
    let c122 = (aw * dv - a * dw) / (dv * dv);
    let c211 = (bz * dv - b * dz) / (dv * dv);
    let e1 = 3.0 * c21 * c122 - c11 * c211 - c22 * c12 * c21 - c21 * c11 * c11;
    let e2 = 3.0 * c12 * c211 - c22 * c122 - c11 * c21 * c12 - c12 * c22 * c22;
    let e3 = 2.0 * c122 * c211 - c11 * c21 * c122 - c22 * c12 * c211 + c12 * c12 * c21 * c21
        - c11 * c22 * c12 * c21;
    Ok([e1, e2, e3])
}

/// Which constant slot a free lift leaves open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LiftSlot {
    A30,
    A03,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Lift {
    /// Both constants are determined.
    Unique { a30: GaussRat, a03: GaussRat },
    /// One slot is free; the other is fixed to `other`.
    Free { slot: LiftSlot, other: GaussRat },
    /// `D` is constant: any `(a30, a03)` with `a30·a03 = 0`.
    BothFree,
    /// The defined formulas disagree, or the lifted point is off the variety.
    Inconsistent,
}

/// One way of reading off `a30` from the coefficients of `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftFormula {
    pub name: &'static str,
    pub value: Option<GaussRat>,
}

/// Small Gaussian-rational sample points, in a fixed order.
pub(crate) fn probe_points() -> Vec<(GaussRat, GaussRat)> {
    let vals: Vec<GaussRat> = [0, 1, -1, 2, -2, 3, -3]
        .iter()
        .map(|&n| GaussRat::from_int(n))
        .chain([GaussRat::i(), -GaussRat::i()])
        .collect();
    let mut out = Vec::new();
    for z in &vals {
        for w in &vals {
            out.push((z.clone(), w.clone()));
        }
    }
    out
}

/// `A_z(w0)` read off at a point where `D_w ≠ 0`.
fn a_from_a3(d: &Derivs, z0: &GaussRat, w0: &GaussRat) -> Option<GaussRat> {
    let e = |p: &BiPoly| p.eval(z0, w0);
    let (dv, dz, dw) = (e(&d.d), e(&d.z), e(&d.w));
    if dw.is_zero() {
        return None;
    }
    let rhs = &(&(&(&c(2) * &(&dv * &dw)) * &e(&d.zz)) - &(&GaussRat::ratio(3, 2) * &(&(&dv * &dv) * &e(&d.zzw))))
        - &(&dw * &(&dz * &dz));
    let rhs = &rhs + &(&(&dv * &dz) * &e(&d.zw));
    Some(&rhs / &(&dw * &dw))
}

fn a30_from_a_value(dp: &BiPoly, w0: &GaussRat, a_val: &GaussRat) -> GaussRat {
    // A_z(w) = a21 w² + 2 a20 w + a30
    let a21 = dp.coeff(2, 1);
    let a20 = dp.coeff(2, 0);
    &(a_val - &(&a21 * &(w0 * w0))) - &(&c(2) * &(&a20 * w0))
}

/// Every formula for `a30` that applies to `D`, with `None` where the
/// denominator vanishes.
pub fn a30_formulas(dp: &BiPoly) -> Vec<LiftFormula> {
    let a = |i, j| dp.coeff(i, j);
    let quot = |n: GaussRat, d: GaussRat| if d.is_zero() { None } else { Some(&n / &d) };
    let d = Derivs::new(dp);
    let generic = probe_points().into_iter().find_map(|(z0, w0)| {
        if d.d.eval(&z0, &w0).is_zero() {
            return None;
        }
        a_from_a3(&d, &z0, &w0).map(|v| a30_from_a_value(dp, &w0, &v))
    });
    let origin = a_from_a3(&d, &GaussRat::zero(), &GaussRat::zero())
        .map(|v| a30_from_a_value(dp, &GaussRat::zero(), &v));
    vec![
        LiftFormula {
            name: "(a20 a11 - a21 a10)/a12",
            value: quot(&(&a(2, 0) * &a(1, 1)) - &(&a(2, 1) * &a(1, 0)), a(1, 2)),
        },
        LiftFormula {
            name: "(a20 a01 - a21 a00)/a02",
            value: quot(&(&a(2, 0) * &a(0, 1)) - &(&a(2, 1) * &a(0, 0)), a(0, 2)),
        },
        LiftFormula { name: "a20^2/a21", value: quot(&a(2, 0) * &a(2, 0), a(2, 1)) },
        LiftFormula { name: "A-condition at the origin", value: origin },
        LiftFormula { name: "A-condition at a generic point", value: generic },
    ]
}

/// Formulas for `a03`, obtained from those for `a30` by conjugation.
pub fn a03_formulas(dp: &BiPoly) -> Vec<LiftFormula> {
    a30_formulas(&dp.swap_vars())
}

fn agreed(fs: &[LiftFormula]) -> Result<Option<GaussRat>, ()> {
    let mut vals = fs.iter().filter_map(|f| f.value.as_ref());
    match vals.next() {
        None => Ok(None),
        Some(first) => {
            if vals.all(|v| v == first) {
                Ok(Some(first.clone()))
            } else {
                Err(())
            }
        }
    }
}

/// Recover `(a30, a03)` from `D`.
pub fn lift(dp: &BiPoly) -> Result<Lift, Error> {
    if !derive_d3_chain(dp)[0].is_zero() {
        return Err(Error::NotReducible);
    }
    if dp.is_constant() {
        return Ok(Lift::BothFree);
    }
    let (Ok(a30), Ok(a03)) = (agreed(&a30_formulas(dp)), agreed(&a03_formulas(dp))) else {
        return Ok(Lift::Inconsistent);
    };
    let zero = GaussRat::zero();
    let candidate = |a30: &GaussRat, a03: &GaussRat| {
        let mut p = point_from_d(dp);
        p.set(3, 0, a30.clone());
        p.set(0, 3, a03.clone());
        sic_residuals(&p.extract()).on_variety
    };
    let out = match (a30, a03) {
        (Some(x), Some(y)) => Lift::Unique { a30: x, a03: y },
        // D depends on z alone: the a30 slot is free
        (None, Some(y)) => Lift::Free { slot: LiftSlot::A30, other: y },
        (Some(x), None) => Lift::Free { slot: LiftSlot::A03, other: x },
        (None, None) => return Ok(Lift::BothFree),
    };
    let ok = match &out {
        Lift::Unique { a30, a03 } => candidate(a30, a03),
        Lift::Free { slot: LiftSlot::A30, other } => candidate(&zero, other) && candidate(&c(1), other),
        Lift::Free { slot: LiftSlot::A03, other } => candidate(other, &zero) && candidate(other, &c(1)),
        _ => true,
    };
    Ok(if ok { out } else { Lift::Inconsistent })
}

/// The Plücker point with `D`'s coefficients and zero constant slots.
pub fn point_from_d(dp: &BiPoly) -> PlueckerPoint {
    PlueckerPoint::from_entries(
        crate::pluecker::COORD_ORDER
            .iter()
            .filter(|&&(i, j)| i <= 2 && j <= 2)
            .map(|&(i, j)| ((i, j), dp.coeff(i, j))),
    )
}

/// Full point for `D` when the lift is determined (free slots set to zero).
pub fn lifted_point(dp: &BiPoly) -> Result<PlueckerPoint, Error> {
    let mut p = point_from_d(dp);
    match lift(dp)? {
        Lift::Unique { a30, a03 } => {
            p.set(3, 0, a30);
            p.set(0, 3, a03);
        }
        Lift::Free { slot: LiftSlot::A30, other } => p.set(0, 3, other),
        Lift::Free { slot: LiftSlot::A03, other } => p.set(3, 0, other),
        Lift::BothFree => {}
        Lift::Inconsistent => return Err(Error::NotOnVariety),
    }
    Ok(p)
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

    fn e16() -> TernaryTriple {
        TernaryTriple::new(poly(&[((2, 1), 1), ((1, 2), 1)]), poly(&[((0, 2), 1)]), poly(&[((2, 0), 1)]))
    }

    fn all_zero(ps: &[BiPoly]) -> bool {
        ps.iter().all(BiPoly::is_zero)
    }

    #[test]
    fn residual_examples() {
        let r = sic_residuals(&e16());
        assert!(r.on_variety && !r.degenerate);
        assert!(r.failures().is_empty());

        let off = TernaryTriple::new(poly(&[((1, 0), 1), ((0, 1), 1)]), BiPoly::one(), BiPoly::one());
        let r = sic_residuals(&off);
        assert!(!r.on_variety);
        assert_eq!(r.ab3_residuals[0], BiPoly::constant(q(2)));
        let fixed = TernaryTriple::new(off.d.clone(), BiPoly::constant(q(-1)), BiPoly::constant(q(-1)));
        assert!(sic_residuals(&fixed).on_variety);

        let deg = TernaryTriple::new(BiPoly::zero(), BiPoly::one(), BiPoly::zero());
        let r = sic_residuals(&deg);
        assert!(r.on_variety && r.degenerate && r.failures().is_empty());
    }

    #[test]
    fn ic_examples() {
        let e1 = PlueckerPoint::from_ints(&[((2, 0), 1), ((0, 2), -1)]).extract();
        let one = Complex64::new(1.0, 0.0);
        for r in ic_residuals(&e1, one, Complex64::new(2.0, 0.0)).unwrap() {
            assert!(r.norm() < 1e-12);
        }
        for r in ic_residuals(&e16(), one, one).unwrap() {
            assert!(r.norm() < 1e-12);
        }
        let off = TernaryTriple::new(poly(&[((1, 0), 1), ((0, 1), 1)]), BiPoly::one(), BiPoly::one());
        let r = ic_residuals(&off, one, one).unwrap();
        assert!(r[0].norm() > 0.1);
        assert_eq!(ic_residuals(&e1, one, one), Err(Error::SingularSample));
    }

    #[test]
    fn d3_chain_examples() {
        assert!(all_zero(&derive_d3_chain(&e16().d)));
        assert!(all_zero(&derive_d3_chain(&BiPoly::zero())));
        let bad = poly(&[((2, 1), 1), ((1, 0), 1)]);
        assert!(!derive_d3_chain(&bad)[0].is_zero());
        assert_eq!(lift(&bad), Err(Error::NotReducible));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift(&e16().d).unwrap(), Lift::Unique { a30: q(0), a03: q(0) });
        let e1 = poly(&[((2, 0), 1), ((0, 2), -1)]);
        assert_eq!(lift(&e1).unwrap(), Lift::Unique { a30: q(0), a03: q(0) });
        let zz1 = poly(&[((2, 0), 1), ((1, 0), 1)]);
        assert_eq!(lift(&zz1).unwrap(), Lift::Free { slot: LiftSlot::A30, other: q(0) });
        assert_eq!(lift(&BiPoly::one()).unwrap(), Lift::BothFree);
        let e2 = poly(&[((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(lift(&e2).unwrap(), Lift::Unique { a30: q(-1), a03: q(-1) });
    }
}
