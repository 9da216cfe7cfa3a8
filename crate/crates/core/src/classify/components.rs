//! Membership in the six irreducible components of the variety.

use serde::{Deserialize, Serialize};

use super::{factor_cubic, is_ancestor_or_equal, ClassLabel, Orbit};
use crate::exact::GaussRat;
use crate::pluecker::PlueckerPoint;
use crate::sic::sic_residuals;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Component {
    #[serde(rename = "V_(1,1,1)")]
    V111,
    #[serde(rename = "V_(11,0,1)")]
    V1101,
    #[serde(rename = "V_(11,0,0)")]
    V1100,
    #[serde(rename = "V_(0,11,0)")]
    V0110,
    #[serde(rename = "V_(1,0,11)")]
    V1011,
    #[serde(rename = "V_(0,0,11)")]
    V0011,
}

impl Component {
    pub fn name(&self) -> &'static str {
        match self {
            Component::V111 => "V_(1,1,1)",
            Component::V1101 => "V_(11,0,1)",
            Component::V1100 => "V_(11,0,0)",
            Component::V0110 => "V_(0,11,0)",
            Component::V1011 => "V_(1,0,11)",
            Component::V0011 => "V_(0,0,11)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub components: Vec<Component>,
    /// `D` satisfies the defining conditions of the (0,11,0) cubics.
    pub d_in_0110: bool,
    /// `D` lies in the singular locus `D_(2,0,0) ∪ D_(0,0,2)` of those cubics.
    pub singular_in_0110: bool,
    /// Left side of the (1,1,1) collinearity determinant, squared and
    /// expressed in the `a_ij`; zero on that component.
    pub collinearity_aux: GaussRat,
}

type A<'a> = &'a dyn Fn(u32, u32) -> GaussRat;

fn mul(a: &GaussRat, b: &GaussRat) -> GaussRat {
    a * b
}

fn in_1100(a: A) -> bool {
    [(2, 1), (1, 1), (0, 1), (1, 2), (0, 2), (0, 3)].iter().all(|&(i, j)| a(i, j).is_zero())
}

fn in_1101(a: A) -> bool {
    let zero = [(1, 2), (0, 2), (0, 3)].iter().all(|&(i, j)| a(i, j).is_zero());
    // rank [(a21, a11, a01), (a20, a10, a00)] <= 1
    let r1 = [a(2, 1), a(1, 1), a(0, 1)];
    let r2 = [a(2, 0), a(1, 0), a(0, 0)];
    let rank1 = (0..3).all(|i| (0..3).all(|j| mul(&r1[i], &r2[j]) == mul(&r1[j], &r2[i])));
    let a30 = a(3, 0);
    let rel = mul(&a30, &a(2, 1)) == mul(&a(2, 0), &a(2, 0))
        && mul(&a30, &a(1, 1)) == mul(&a(1, 0), &a(2, 0))
        && mul(&a30, &a(0, 1)) == mul(&a(0, 0), &a(2, 0));
    zero && rank1 && rel
}

/// The (0,11,0) conditions on `D` alone: `a21 = a12 = a11 = 0` and the
/// 3×3 determinant in the remaining coefficients vanishes.
fn d_in_0110(a: A) -> bool {
    if !(a(2, 1).is_zero() && a(1, 2).is_zero() && a(1, 1).is_zero()) {
        return false;
    }
    let four = GaussRat::from_int(4);
    let (a02, a01, a00, a10, a20) = (a(0, 2), a(0, 1), a(0, 0), a(1, 0), a(2, 0));
    // det [[a02, a01, 0], [a01, 4 a00, a10], [0, a10, a20]]
    let m = &(&four * &a00) * &a20;
    let det = &(&a02 * &(&m - &(&a10 * &a10))) - &(&a01 * &(&a01 * &a20));
    det.is_zero()
}

fn singular_0110(a: A) -> bool {
    let four = GaussRat::from_int(4);
    let (a02, a01, a00, a10, a20) = (a(0, 2), a(0, 1), a(0, 0), a(1, 0), a(2, 0));
    [
        mul(&a02, &a20),
        mul(&a01, &a20),
        mul(&a02, &a10),
        &(&four * &mul(&a00, &a20)) - &mul(&a10, &a10),
        &(&four * &mul(&a02, &a00)) - &mul(&a01, &a01),
    ]
    .iter()
    .all(GaussRat::is_zero)
}

fn in_0110(a: A) -> bool {
    if !d_in_0110(a) {
        return false;
    }
    let four = GaussRat::from_int(4);
    let (a30, a03) = (a(3, 0), a(0, 3));
    mul(&a30, &a(0, 2)) == mul(&a(2, 0), &a(0, 1))
        && mul(&a30, &a(0, 1)) == &(&four * &mul(&a(0, 0), &a(2, 0))) - &mul(&a(1, 0), &a(1, 0))
        && mul(&a03, &a(2, 0)) == mul(&a(0, 2), &a(1, 0))
        && mul(&a03, &a(1, 0)) == &(&four * &mul(&a(0, 0), &a(0, 2))) - &mul(&a(0, 1), &a(0, 1))
}

fn collinearity_aux(a: A) -> GaussRat {
    // a11² + 8 a20 a02 − 4 (a01 a21 + a10 a12)
    let t = &mul(&a(1, 1), &a(1, 1)) + &(&GaussRat::from_int(8) * &mul(&a(2, 0), &a(0, 2)));
    &t - &(&GaussRat::from_int(4) * &(&mul(&a(0, 1), &a(2, 1)) + &mul(&a(1, 0), &a(1, 2))))
}

/// `D` is a product of a z-only, a mixed and a w-only factor (or a
/// degeneration thereof) whose lines satisfy the collinearity determinant.
fn d_in_111(p: &PlueckerPoint) -> bool {
    let d = p.extract().d;
    if d.is_zero() {
        return false;
    }
    let Ok(arr) = factor_cubic(&d) else {
        return false;
    };
    let label = ClassLabel::from_arrangement(&arr);
    let top: ClassLabel = "(1,1,1)".parse().expect("static");
    if label != top {
        return is_ancestor_or_equal(&top, &label);
    }
    let pick = |o: Orbit| arr.forms(o).next().map(|(f, _)| f.clone());
    let (Some(fz), Some(fm), Some(fw)) = (pick(Orbit::ZOnly), pick(Orbit::Mixed), pick(Orbit::WOnly)) else {
        return false;
    };
    match (fz.exact_coeffs(), fm.exact_coeffs(), fw.exact_coeffs()) {
        (Some([a1, _, c1]), Some([a2, b2, c2]), Some([_, b3, c3])) => {
            // det [[a1, 0, c1], [a2, b2, c2], [0, b3, c3]]
            let det = &(a1 * &(&(b2 * c3) - &(c2 * b3))) + &(c1 * &(a2 * b3));
            det.is_zero()
        }
        _ => {
            let [a1, _, c1] = fz.to_c64();
            let [a2, b2, c2] = fm.to_c64();
            let [_, b3, c3] = fw.to_c64();
            let det = a1 * (b2 * c3 - c2 * b3) + c1 * a2 * b3;
            det.norm() <= 1e-10 * (1.0 + a1.norm() + c1.norm()) * (1.0 + b2.norm() + c2.norm()) * (1.0 + c3.norm())
        }
    }
}

fn in_111(p: &PlueckerPoint) -> bool {
    let a = |i, j| p.get(i, j).clone();
    d_in_111(p)
        && mul(&a(3, 0), &a(2, 1)) == mul(&a(2, 0), &a(2, 0))
        && mul(&a(0, 3), &a(1, 2)) == mul(&a(0, 2), &a(0, 2))
}

/// Components containing an on-variety point.
pub fn component_of(p: &PlueckerPoint) -> Result<ComponentReport, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let sic = sic_residuals(&p.extract());
    if !sic.on_variety {
        return Err(Error::NotOnVariety);
    }
    let q = p.conjugate();
    let a = |i, j| p.get(i, j).clone();
    let ac = |i, j| q.get(i, j).clone();
    let mut components = Vec::new();
    if sic.degenerate {
        // each degenerate point is the centre of one central projection
        components.push(if p.get(3, 0).is_zero() { Component::V0011 } else { Component::V1100 });
    } else if in_111(p) {
        components.push(Component::V111);
    }
    if !sic.degenerate {
        let checks = [
            (in_1101(&a), Component::V1101),
            (in_1100(&a), Component::V1100),
            (in_0110(&a), Component::V0110),
            (in_1101(&ac), Component::V1011),
            (in_1100(&ac), Component::V0011),
        ];
        components.extend(checks.iter().filter(|(ok, _)| *ok).map(|(_, c)| *c));
    }
    Ok(ComponentReport {
        components,
        d_in_0110: d_in_0110(&a),
        singular_in_0110: d_in_0110(&a) && singular_0110(&a),
        collinearity_aux: collinearity_aux(&a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(e: &[((u32, u32), i64)]) -> PlueckerPoint {
        PlueckerPoint::from_ints(e)
    }

    #[test]
    fn e16_is_on_v111() {
        let r = component_of(&pt(&[((2, 1), 1), ((1, 2), 1)])).unwrap();
        assert_eq!(r.components, vec![Component::V111]);
    }

    #[test]
    fn e8_lies_in_an_intersection() {
        let r = component_of(&pt(&[((2, 0), 1)])).unwrap();
        assert!(r.components.contains(&Component::V1100));
        assert!(r.components.contains(&Component::V0110));
        assert!(r.singular_in_0110);
        let e1 = component_of(&pt(&[((2, 0), 1), ((0, 2), -1)])).unwrap();
        assert_eq!(e1.components, vec![Component::V0110]);
        assert!(!e1.singular_in_0110);
    }

    #[test]
    fn degenerate_points() {
        let r = component_of(&pt(&[((3, 0), 1)])).unwrap();
        assert_eq!(r.components, vec![Component::V1100]);
        let r = component_of(&pt(&[((0, 3), 5)])).unwrap();
        assert_eq!(r.components, vec![Component::V0011]);
        assert_eq!(component_of(&pt(&[((3, 0), 1), ((0, 3), 1)])), Err(Error::NotOnVariety));
    }
}
