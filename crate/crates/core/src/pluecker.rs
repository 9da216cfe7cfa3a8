//! Plücker coordinates of a 2-plane of tensors and the polynomial triple
//! `(D, A_z, B_w)` they encode.

use std::fmt;

use serde::de::Deserializer;
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::exact::{BiPoly, GaussRat, Var};
use crate::killing::SpecialConformalKillingTensor;
use crate::Error;

/// Exponent pairs of the ten coordinates in canonical order.
pub const COORD_ORDER: [(u32, u32); 10] = [
    (3, 0),
    (2, 0),
    (1, 0),
    (0, 0),
    (2, 1),
    (1, 1),
    (0, 1),
    (1, 2),
    (0, 2),
    (0, 3),
];

pub fn coord_name(i: u32, j: u32) -> String {
    format!("a{i}{j}")
}

fn slot(i: u32, j: u32) -> usize {
    COORD_ORDER
        .iter()
        .position(|&p| p == (i, j))
        .unwrap_or_else(|| panic!("no Plücker coordinate a{i}{j}"))
}

/// Ten homogeneous coordinates `a_ij`, stored in canonical order.
#[derive(Clone, PartialEq)]
pub struct PlueckerPoint {
    coords: [GaussRat; 10],
}

impl PlueckerPoint {
    pub fn zero() -> Self {
        Self { coords: std::array::from_fn(|_| GaussRat::zero()) }
    }

    pub fn from_coords(coords: [GaussRat; 10]) -> Self {
        Self { coords }
    }

    /// Build from `(i, j, value)` entries; unlisted coordinates are zero.
    pub fn from_entries<I: IntoIterator<Item = ((u32, u32), GaussRat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), v) in it {
            p.set(i, j, v);
        }
        p
    }

    pub fn from_ints(entries: &[((u32, u32), i64)]) -> Self {
        Self::from_entries(entries.iter().map(|&(k, v)| (k, GaussRat::from_int(v))))
    }

    pub fn coords(&self) -> &[GaussRat; 10] {
        &self.coords
    }

    pub fn get(&self, i: u32, j: u32) -> &GaussRat {
        &self.coords[slot(i, j)]
    }

    pub fn set(&mut self, i: u32, j: u32, v: GaussRat) {
        self.coords[slot(i, j)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GaussRat::is_zero)
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        Self { coords: std::array::from_fn(|k| &self.coords[k] * s) }
    }

    /// Representative with the first nonzero coordinate equal to 1.
    /// Projectively equal point with Gaussian-integer coordinates.
    pub fn integral(&self) -> Self {
        let l = self
            .coords
            .iter()
            .fold(num_bigint::BigInt::from(1), |l, c| num_integer::Integer::lcm(&l, &c.denominator()));
        self.scale(&GaussRat::real(l.into()))
    }

    pub fn canonical(&self) -> Result<Self, Error> {
        let lead = self.coords.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroPoint)?;
        let inv = lead.inv().expect("nonzero");
        Ok(self.scale(&inv))
    }

    /// Projective equality.
    pub fn proj_eq(&self, other: &Self) -> bool {
        match (self.canonical(), other.canonical()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// `a_ij ↦ a_ji`: exchanges `z ↔ w` and `A ↔ B`.
    pub fn conjugate(&self) -> Self {
        Self::from_entries(COORD_ORDER.iter().map(|&(i, j)| ((j, i), self.get(i, j).clone())))
    }

    pub fn pfaffians(&self) -> [GaussRat; 5] {
        pfaffians(self)
    }

    pub fn extract(&self) -> TernaryTriple {
        extract(self)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings(v: &[String]) -> Result<Self, Error> {
        if v.len() != 10 {
            return Err(Error::Parse(format!("expected 10 coordinates, got {}", v.len())));
        }
        let mut coords = Vec::with_capacity(10);
        for s in v {
            coords.push(s.parse::<GaussRat>()?);
        }
        Ok(Self { coords: coords.try_into().expect("length checked") })
    }
}

impl fmt::Debug for PlueckerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = COORD_ORDER
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(i, j), c)| format!("{}={c}", coord_name(i, j)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for PlueckerPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(10))?;
        for c in &self.coords {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for PlueckerPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<GaussRat> = Vec::deserialize(d)?;
        let n = v.len();
        let coords: [GaussRat; 10] = v
            .try_into()
            .map_err(|_| serde::de::Error::custom(format!("expected 10 coordinates, got {n}")))?;
        Ok(Self { coords })
    }
}

/// Wedge of two tensors; `DependentPair` when every coordinate vanishes.
pub fn wedge(
    t1: &SpecialConformalKillingTensor,
    t2: &SpecialConformalKillingTensor,
) -> Result<PlueckerPoint, Error> {
    let p = wedge_raw(t1, t2);
    if p.is_zero() {
        Err(Error::DependentPair)
    } else {
        Ok(p)
    }
}

/// The ten antisymmetrized products, zero point allowed.
pub fn wedge_raw(t1: &SpecialConformalKillingTensor, t2: &SpecialConformalKillingTensor) -> PlueckerPoint {
    let x = |a: &GaussRat, b: &GaussRat, c: &GaussRat, d: &GaussRat| &(a * b) - &(c * d);
    let two = GaussRat::from_int(2);
    let four = GaussRat::from_int(4);
    let (s, t) = (t1, t2);
    PlueckerPoint::from_entries([
        ((3, 0), &two * &x(&s.a_zz, &t.b_z, &s.b_z, &t.a_zz)),
        ((2, 0), x(&s.a_zz, &t.c, &s.c, &t.a_zz)),
        ((1, 0), &two * &x(&s.a_zz, &t.b_w, &s.b_w, &t.a_zz)),
        ((0, 0), x(&s.a_zz, &t.a_ww, &s.a_ww, &t.a_zz)),
        ((2, 1), &two * &x(&s.b_z, &t.c, &s.c, &t.b_z)),
        ((1, 1), &four * &x(&s.b_z, &t.b_w, &s.b_w, &t.b_z)),
        ((0, 1), &two * &x(&s.b_z, &t.a_ww, &s.a_ww, &t.b_z)),
        ((1, 2), &two * &x(&s.c, &t.b_w, &s.b_w, &t.c)),
        ((0, 2), x(&s.c, &t.a_ww, &s.a_ww, &t.c)),
        ((0, 3), &two * &x(&s.b_w, &t.a_ww, &s.a_ww, &t.b_w)),
    ])
}

/// The five Plücker Pfaffians; all vanish iff the point is a decomposable wedge.
pub fn pfaffians(p: &PlueckerPoint) -> [GaussRat; 5] {
    let a = |i, j| p.get(i, j);
    let t = |x: &GaussRat, y: &GaussRat, u: &GaussRat, v: &GaussRat, r: &GaussRat, s: &GaussRat| {
        &(&(x * y) - &(u * v)) + &(r * s)
    };
    [
        t(a(0, 3), a(2, 1), a(0, 2), a(1, 1), a(0, 1), a(1, 2)),
        t(a(0, 3), a(2, 0), a(0, 2), a(1, 0), a(0, 0), a(1, 2)),
        t(a(0, 3), a(3, 0), a(0, 1), a(1, 0), a(0, 0), a(1, 1)),
        t(a(0, 2), a(3, 0), a(0, 1), a(2, 0), a(0, 0), a(2, 1)),
        t(a(1, 2), a(3, 0), a(1, 1), a(2, 0), a(1, 0), a(2, 1)),
    ]
}

/// `D(z, w)` together with `A_z(w)` and `B_w(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryTriple {
    pub d: BiPoly,
    pub a: BiPoly,
    pub b: BiPoly,
}

pub fn extract(p: &PlueckerPoint) -> TernaryTriple {
    let d = BiPoly::from_terms(
        COORD_ORDER
            .iter()
            .filter(|&&(i, j)| i <= 2 && j <= 2)
            .map(|&(i, j)| ((i, j), p.get(i, j).clone())),
    );
    let two = GaussRat::from_int(2);
    let a = BiPoly::from_terms([
        ((0, 2), p.get(2, 1).clone()),
        ((0, 1), &two * p.get(2, 0)),
        ((0, 0), p.get(3, 0).clone()),
    ]);
    let b = BiPoly::from_terms([
        ((2, 0), p.get(1, 2).clone()),
        ((1, 0), &two * p.get(0, 2)),
        ((0, 0), p.get(0, 3).clone()),
    ]);
    TernaryTriple { d, a, b }
}

impl TernaryTriple {
    pub fn new(d: BiPoly, a: BiPoly, b: BiPoly) -> Self {
        Self { d, a, b }
    }

    /// Plücker point encoded by the triple; fails when `D`, `A_z`, `B_w` have
    /// the wrong shape or disagree on the shared coordinates.
    pub fn to_point(&self) -> Result<PlueckerPoint, Error> {
        let shape_err = |m: &str| Err(Error::Parse(format!("triple shape: {m}")));
        if self.d.deg(Var::Z).unwrap_or(0) > 2
            || self.d.deg(Var::W).unwrap_or(0) > 2
            || !self.d.coeff(2, 2).is_zero()
        {
            return shape_err("D needs deg_z, deg_w <= 2 and no z^2 w^2 term");
        }
        if self.a.depends_on(Var::Z) || self.a.deg(Var::W).unwrap_or(0) > 2 {
            return shape_err("A_z must be a quadratic in w");
        }
        if self.b.depends_on(Var::W) || self.b.deg(Var::Z).unwrap_or(0) > 2 {
            return shape_err("B_w must be a quadratic in z");
        }
        let half = GaussRat::ratio(1, 2);
        let mut p = PlueckerPoint::from_entries(
            COORD_ORDER
                .iter()
                .filter(|&&(i, j)| i <= 2 && j <= 2)
                .map(|&(i, j)| ((i, j), self.d.coeff(i, j))),
        );
        p.set(3, 0, self.a.coeff(0, 0));
        p.set(0, 3, self.b.coeff(0, 0));
        let consistent = self.a.coeff(0, 2) == self.d.coeff(2, 1)
            && &self.a.coeff(0, 1) * &half == self.d.coeff(2, 0)
            && self.b.coeff(2, 0) == self.d.coeff(1, 2)
            && &self.b.coeff(1, 0) * &half == self.d.coeff(0, 2);
        if !consistent {
            return shape_err("A_z, B_w disagree with the coefficients of D");
        }
        Ok(p)
    }

    pub fn swap(&self) -> Self {
        Self { d: self.d.swap_vars(), a: self.b.swap_vars(), b: self.a.swap_vars() }
    }

    /// The five local forms of the Plücker relations; all vanish identically
    /// iff the coefficient Pfaffians do.
    pub fn local_pluecker_residuals(&self) -> [BiPoly; 5] {
        let d = Derivs::new(&self.d);
        let (a, b) = (&self.a, &self.b);
        [
            &(a * b) - &(&(&d.z * &d.w) - &(&d.d * &d.zw)),
            &(a * &d.ww) - &(&(&d.w * &d.zz) - &(&d.d * &d.zzw)),
            &(a * &d.wwz) - &(&(&d.zz * &d.zw) - &(&d.z * &d.zzw)),
            &(b * &d.zz) - &(&(&d.z * &d.ww) - &(&d.d * &d.wwz)),
            &(b * &d.zzw) - &(&(&d.zw * &d.ww) - &(&d.w * &d.wwz)),
        ]
    }
}

/// `D` and the partial derivatives that appear in the conditions.
pub(crate) struct Derivs {
    pub d: BiPoly,
    pub z: BiPoly,
    pub w: BiPoly,
    pub zz: BiPoly,
    pub zw: BiPoly,
    pub ww: BiPoly,
    pub zzw: BiPoly,
    pub wwz: BiPoly,
}

impl Derivs {
    pub fn new(d: &BiPoly) -> Self {
        let z = d.diff(Var::Z);
        let w = d.diff(Var::W);
        let zz = z.diff(Var::Z);
        let zw = z.diff(Var::W);
        let ww = w.diff(Var::W);
        let zzw = zz.diff(Var::W);
        let wwz = ww.diff(Var::Z);
        Self { d: d.clone(), z, w, zz, zw, ww, zzw, wwz }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type T = SpecialConformalKillingTensor;

    fn q(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    #[test]
    fn wedge_examples() {
        let t = T::from_ints([1, 2, 3, 4, 5]);
        assert_eq!(wedge(&t, &t), Err(Error::DependentPair));

        let p = wedge(&T::from_ints([1, 0, 0, 0, 1]), &T::from_ints([0, 0, 1, 0, 0])).unwrap();
        assert_eq!(p, PlueckerPoint::from_ints(&[((2, 0), 1), ((0, 2), -1)]));

        let p = wedge(&T::from_ints([0, 0, 1, 0, 0]), &T::from_ints([0, 1, 0, 0, 0])).unwrap();
        assert_eq!(p, PlueckerPoint::from_ints(&[((2, 1), -2)]));
        assert_eq!(p.canonical().unwrap(), PlueckerPoint::from_ints(&[((2, 1), 1)]));
    }

    #[test]
    fn pfaffian_examples() {
        let p = PlueckerPoint::from_ints(&[((3, 0), 1), ((0, 3), 1)]);
        assert_eq!(p.pfaffians()[2], q(1));
        let p = PlueckerPoint::from_ints(&[((3, 0), 1)]);
        assert!(p.pfaffians().iter().all(GaussRat::is_zero));
    }

    #[test]
    fn extract_examples() {
        let e1 = PlueckerPoint::from_ints(&[((2, 0), 1), ((0, 2), -1)]).extract();
        assert_eq!(e1.d, &BiPoly::monomial(q(1), 2, 0) - &BiPoly::monomial(q(1), 0, 2));
        assert_eq!(e1.a, BiPoly::monomial(q(2), 0, 1));
        assert_eq!(e1.b, BiPoly::monomial(q(-2), 1, 0));

        let deg = PlueckerPoint::from_ints(&[((3, 0), 1)]).extract();
        assert!(deg.d.is_zero() && deg.b.is_zero());
        assert_eq!(deg.a, BiPoly::one());

        let e3 = PlueckerPoint::from_ints(&[((0, 0), 1)]).extract();
        assert_eq!(e3.d, BiPoly::one());
        assert!(e3.a.is_zero() && e3.b.is_zero());
        assert_eq!(e3.to_point().unwrap(), PlueckerPoint::from_ints(&[((0, 0), 1)]));
    }

    #[test]
    fn local_residual_examples() {
        let zw = BiPoly::linear(q(1), q(1), q(0));
        let t = TernaryTriple::new(zw, BiPoly::one(), BiPoly::one());
        assert!(t.local_pluecker_residuals()[0].is_zero());
        let t = TernaryTriple::new(BiPoly::one(), BiPoly::one(), BiPoly::one());
        assert_eq!(t.local_pluecker_residuals()[0], BiPoly::one());
    }

    #[test]
    fn json_round_trip() {
        let p = PlueckerPoint::from_entries([((2, 0), GaussRat::ratio(1, 3)), ((0, 2), GaussRat::complex((1, 2), (-1, 1)))]);
        let s = serde_json::to_string(&p).unwrap();
        let back: PlueckerPoint = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
