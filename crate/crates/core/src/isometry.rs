//! Shifts and shears of the plane acting on Plücker points, and the
//! reduction of on-variety points to the normal-form table.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::classify::{class_of, e_label, factor_cubic, ClassLabel, LineArrangement, Orbit};
use crate::exact::{BiPoly, GaussRat, Scalar};
use crate::pluecker::{PlueckerPoint, COORD_ORDER};
use crate::sic::sic_residuals;
use crate::tables::normal_form_row;
use crate::Error;

/// The isometry pulling points back along `(z, w) ↦ (λz + c, w/λ + d)`,
/// i.e. a shear followed by a shift.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarIsometry<S: Scalar = GaussRat> {
    pub c: S,
    pub d: S,
    pub lambda: S,
}

impl<S: Scalar> PlanarIsometry<S> {
    pub fn identity() -> Self {
        Self { c: S::zero(), d: S::zero(), lambda: S::one() }
    }

    pub fn shift(c: S, d: S) -> Self {
        Self { c, d, lambda: S::one() }
    }

    /// Panics if `lambda` is zero.
    pub fn shear(lambda: S) -> Self {
        assert!(!lambda.is_zero(), "shear by zero");
        Self { c: S::zero(), d: S::zero(), lambda }
    }

    pub fn new(c: S, d: S, lambda: S) -> Self {
        assert!(!lambda.is_zero(), "shear by zero");
        Self { c, d, lambda }
    }

    /// `self ∘ h`: acting by the result equals acting by `h`, then `self`.
    pub fn compose(&self, h: &Self) -> Self {
        Self {
            c: h.lambda.clone() * self.c.clone() + h.c.clone(),
            d: self.d.clone() / h.lambda.clone() + h.d.clone(),
            lambda: self.lambda.clone() * h.lambda.clone(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            c: -(self.c.clone() / self.lambda.clone()),
            d: -(self.lambda.clone() * self.d.clone()),
            lambda: S::one() / self.lambda.clone(),
        }
    }

    /// The isometry that acts on conjugated points as `self` acts on points.
    pub fn conjugate(&self) -> Self {
        Self { c: self.d.clone(), d: self.c.clone(), lambda: S::one() / self.lambda.clone() }
    }

    pub fn to_c64(&self) -> PlanarIsometry<Complex64> {
        PlanarIsometry { c: self.c.to_c64(), d: self.d.to_c64(), lambda: self.lambda.to_c64() }
    }

    /// Act on the ten coordinates, in canonical order.
    pub fn act_coords(&self, a: &[S; 10]) -> [S; 10] {
        let get = |i: u32, j: u32| a[COORD_ORDER.iter().position(|&c| c == (i, j)).expect("coord")].clone();
        let two = S::from_i64(2);
        let d = BiPoly::from_terms(COORD_ORDER.iter().filter(|&&(i, j)| i <= 2 && j <= 2).map(|&(i, j)| ((i, j), get(i, j))));
        let az = BiPoly::from_terms([((0, 2), get(2, 1)), ((0, 1), two.clone() * get(2, 0)), ((0, 0), get(3, 0))]);
        let bw = BiPoly::from_terms([((2, 0), get(1, 2)), ((1, 0), two * get(0, 2)), ((0, 0), get(0, 3))]);
        let inv = S::one() / self.lambda.clone();
        let l3 = self.lambda.clone() * self.lambda.clone() * self.lambda.clone();
        let zmap = (&self.lambda, &self.c);
        let wmap = (&inv, &self.d);
        let d2 = d.compose_affine(zmap, wmap);
        let a2 = az.compose_affine(zmap, wmap).scale(&l3);
        let b2 = bw.compose_affine(zmap, wmap).scale(&(S::one() / l3));
        std::array::from_fn(|k| match COORD_ORDER[k] {
            (3, 0) => a2.coeff(0, 0),
            (0, 3) => b2.coeff(0, 0),
            (i, j) => d2.coeff(i, j),
        })
    }
}

impl PlanarIsometry<GaussRat> {
    pub fn act(&self, p: &PlueckerPoint) -> PlueckerPoint {
        PlueckerPoint::from_coords(self.act_coords(p.coords()))
    }
}

impl Serialize for PlanarIsometry<GaussRat> {
    fn serialize<T: Serializer>(&self, s: T) -> Result<T::Ok, T::Error> {
        let mut st = s.serialize_struct("PlanarIsometry", 3)?;
        st.serialize_field("c", &self.c)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("lambda", &self.lambda)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct IsoRepr {
    c: GaussRat,
    d: GaussRat,
    lambda: GaussRat,
}

impl<'de> Deserialize<'de> for PlanarIsometry<GaussRat> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = IsoRepr::deserialize(d)?;
        if r.lambda.is_zero() {
            return Err(serde::de::Error::custom("lambda must be nonzero"));
        }
        Ok(Self { c: r.c, d: r.d, lambda: r.lambda })
    }
}

impl Serialize for PlanarIsometry<Complex64> {
    fn serialize<T: Serializer>(&self, s: T) -> Result<T::Ok, T::Error> {
        let pair = |x: &Complex64| [x.re, x.im];
        let mut st = s.serialize_struct("PlanarIsometry", 3)?;
        st.serialize_field("c", &pair(&self.c))?;
        st.serialize_field("d", &pair(&self.d))?;
        st.serialize_field("lambda", &pair(&self.lambda))?;
        st.end()
    }
}

#[derive(Deserialize)]
struct IsoReprC64 {
    c: [f64; 2],
    d: [f64; 2],
    lambda: [f64; 2],
}

impl<'de> Deserialize<'de> for PlanarIsometry<Complex64> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = IsoReprC64::deserialize(d)?;
        let c = |x: [f64; 2]| Complex64::new(x[0], x[1]);
        Ok(Self { c: c(r.c), d: c(r.d), lambda: c(r.lambda) })
    }
}

pub fn act(iso: &PlanarIsometry, p: &PlueckerPoint) -> PlueckerPoint {
    iso.act(p)
}

/// The reducing isometry, exact when every root it needs is Gaussian rational.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ReducingIsometry {
    Exact { iso: PlanarIsometry },
    /// Float isometry; `residual` is the largest deviation of the image from
    /// the normal form after projective rescaling.
    Approx { iso: PlanarIsometry<Complex64>, residual: f64 },
}

impl ReducingIsometry {
    pub fn is_exact(&self) -> bool {
        matches!(self, ReducingIsometry::Exact { .. })
    }

    pub fn to_c64(&self) -> PlanarIsometry<Complex64> {
        match self {
            ReducingIsometry::Exact { iso } => iso.to_c64(),
            ReducingIsometry::Approx { iso, .. } => iso.clone(),
        }
    }

    fn conjugate(&self) -> Self {
        match self {
            ReducingIsometry::Exact { iso } => ReducingIsometry::Exact { iso: iso.conjugate() },
            ReducingIsometry::Approx { iso, residual } => {
                ReducingIsometry::Approx { iso: iso.conjugate(), residual: *residual }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalForm {
    pub class: ClassLabel,
    pub e_label: Option<&'static str>,
    /// The table row reached, up to projective scale.
    pub point: PlueckerPoint,
    pub isometry: ReducingIsometry,
    /// Set when the row differs from the printed table.
    pub table_note: Option<String>,
}

/// Conversion of factor coefficients into the working field.
trait Field: Scalar {
    fn form(f: &crate::classify::LinearForm) -> Option<[Self; 3]>;
}

impl Field for GaussRat {
    fn form(f: &crate::classify::LinearForm) -> Option<[Self; 3]> {
        f.exact_coeffs().cloned()
    }
}

impl Field for Complex64 {
    fn form(f: &crate::classify::LinearForm) -> Option<[Self; 3]> {
        Some(f.to_c64())
    }
}

/// Root of the `k`-th factor in `orbit` (counted with repetition removed).
fn root<S: Field>(arr: &LineArrangement, orbit: Orbit, k: usize) -> Option<S> {
    let (f, _) = arr.forms(orbit).nth(k)?;
    let [a, b, c] = S::form(f)?;
    let lead = if orbit == Orbit::WOnly { b } else { a };
    Some(-(c / lead))
}

/// Shift and shear parameters `(c, d, λ)` for a z-side class, or `None`
/// when a needed root does not exist in `S`. Per class, with `r_k` the roots
/// of the z-only factors and `q` the root of the w-only factor:
///
/// - (1,1,1): `c = r, d = q`; the mixed factor becomes `z + m w`, then `λ² = m`.
/// - (11,0,1): `c = r1, d = q, λ = r1 − r2`.
/// - (2,0,1): `c = r, d = q`.
/// - (0,11,0): `c = −a10/(2a20), d = −a01/(2a02), λ⁴ = −a02/a20`.
/// - (11,0,0): `c = r1, d = −a30/(2a20), λ = r1 − r2`.
/// - (2,0,0): `c = r, d = −a30/(2a20)`.
/// - (1,0,1): `c = r, d = q`.
/// - (0,1,0): `c = −a00/a10, λ² = a01/a10`.
/// - (1,0,0): `c = −a00/a10`, and `λ² = a10/a30` when `a30 ≠ 0`.
/// - (0,0,0): `λ³ = a00/a30`, or `λ³ = a03/a00` when `a30 = 0 ≠ a03`.
fn recipe<S: Field>(a: &[S; 10], class: &str, arr: Option<&LineArrangement>) -> Option<(S, S, S)> {
    let get = |i: u32, j: u32| a[COORD_ORDER.iter().position(|&c| c == (i, j)).expect("coord")].clone();
    let two = S::from_i64(2);
    let (zero, one) = (S::zero(), S::one());
    let zroot = |k| root::<S>(arr?, Orbit::ZOnly, k);
    let wroot = |k| root::<S>(arr?, Orbit::WOnly, k);
    Some(match class {
        "(1,1,1)" => {
            let (f, _) = arr?.forms(Orbit::Mixed).next()?;
            let [ma, mb, _] = S::form(f)?;
            (zroot(0)?, wroot(0)?, (mb / ma).sqrt_opt()?)
        }
        "(11,0,1)" => {
            let (r1, r2) = (zroot(0)?, zroot(1)?);
            (r1.clone(), wroot(0)?, r1 - r2)
        }
        "(2,0,1)" | "(1,0,1)" => (zroot(0)?, wroot(0)?, one),
        "(0,11,0)" => {
            let (a20, a02) = (get(2, 0), get(0, 2));
            let c = -(get(1, 0) / (two.clone() * a20.clone()));
            let d = -(get(0, 1) / (two * a02.clone()));
            let l2 = (-(a02 / a20)).sqrt_opt()?;
            let lambda = l2.sqrt_opt().or_else(|| (-l2).sqrt_opt())?;
            (c, d, lambda)
        }
        "(11,0,0)" => {
            let (r1, r2) = (zroot(0)?, zroot(1)?);
            let d = -(get(3, 0) / (two * get(2, 0)));
            (r1.clone(), d, r1 - r2)
        }
        "(2,0,0)" => (zroot(0)?, -(get(3, 0) / (two * get(2, 0))), one),
        "(0,1,0)" => {
            let a10 = get(1, 0);
            (-(get(0, 0) / a10.clone()), zero, (get(0, 1) / a10).sqrt_opt()?)
        }
        "(1,0,0)" => {
            let (a10, a30) = (get(1, 0), get(3, 0));
            let c = -(get(0, 0) / a10.clone());
            let lambda = if a30.is_zero() { one } else { (a10 / a30).sqrt_opt()? };
            (c, zero, lambda)
        }
        "(0,0,0)" => {
            let (a00, a30, a03) = (get(0, 0), get(3, 0), get(0, 3));
            let lambda = if !a30.is_zero() {
                (a00 / a30).cbrt_opt()?
            } else if !a03.is_zero() {
                (a03 / a00).cbrt_opt()?
            } else {
                one
            };
            (zero.clone(), zero, lambda)
        }
        _ => return None,
    })
}

/// Largest deviation between `image` and `target` after rescaling `image`
/// to agree with `target` in its first nonzero coordinate.
fn proj_residual(image: &[Complex64; 10], target: &PlueckerPoint) -> f64 {
    let t: Vec<Complex64> = target.coords().iter().map(GaussRat::to_c64).collect();
    let Some(k) = t.iter().position(|x| x.norm() != 0.0) else {
        return f64::INFINITY;
    };
    if image[k].norm() == 0.0 {
        return f64::INFINITY;
    }
    let s = t[k] / image[k];
    image.iter().zip(&t).map(|(x, y)| (x * s - y).norm()).fold(0.0, f64::max)
}

/// Reduce an on-variety point to its normal form. When the reducing shear
/// needs an irrational root the class and label are still exact and the
/// isometry is returned in floating point.
pub fn normal_form(p: &PlueckerPoint) -> Result<NormalForm, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let t = p.extract();
    let sic = sic_residuals(&t);
    if !sic.on_variety {
        return Err(Error::NotOnVariety);
    }
    if sic.degenerate {
        return Ok(NormalForm {
            class: ClassLabel::Degenerate,
            e_label: None,
            point: p.clone(),
            isometry: ReducingIsometry::Exact { iso: PlanarIsometry::identity() },
            table_note: None,
        });
    }
    let class = class_of(&t)?;
    if class.is_w_side() {
        let nf = normal_form(&p.conjugate())?;
        return Ok(NormalForm {
            class: nf.class.conjugate(),
            e_label: nf.e_label,
            point: nf.point.conjugate(),
            isometry: nf.isometry.conjugate(),
            table_note: nf.table_note,
        });
    }
    let label = e_label(&class, p).ok_or_else(|| Error::UnknownLabel(class.to_string()))?;
    let row = normal_form_row(&class, label, !p.get(3, 0).is_zero())
        .ok_or_else(|| Error::UnknownLabel(class.to_string()))?;
    let target = row.point();
    let arr = if t.d.is_constant() { None } else { Some(factor_cubic(&t.d)?) };
    let cls = class.to_string();
    let table_note = row
        .corrected
        .map(|_| format!("printed A_z, B_w of {label} are off the variety; normal form uses the corrected row"));

    if let Some((c, d, lambda)) = recipe::<GaussRat>(p.coords(), &cls, arr.as_ref()) {
        let iso = PlanarIsometry::new(c, d, lambda);
        if iso.act(p).proj_eq(&target) {
            return Ok(NormalForm { class, e_label: Some(label), point: target, isometry: ReducingIsometry::Exact { iso }, table_note });
        }
    }
    let pc: [Complex64; 10] = std::array::from_fn(|k| p.coords()[k].to_c64());
    let (c, d, lambda) = recipe::<Complex64>(&pc, &cls, arr.as_ref()).ok_or(Error::NotOnVariety)?;
    let iso = PlanarIsometry { c, d, lambda };
    let residual = proj_residual(&iso.act_coords(&pc), &target);
    Ok(NormalForm { class, e_label: Some(label), point: target, isometry: ReducingIsometry::Approx { iso, residual }, table_note })
}

/// As [`normal_form`], but fails with `IrrationalOrbit` instead of returning
/// a float isometry.
pub fn normal_form_exact(p: &PlueckerPoint) -> Result<(PlanarIsometry, NormalForm), Error> {
    let nf = normal_form(p)?;
    match &nf.isometry {
        ReducingIsometry::Exact { iso } => Ok((iso.clone(), nf)),
        ReducingIsometry::Approx { .. } => Err(Error::IrrationalOrbit),
    }
}
