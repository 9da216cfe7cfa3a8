//! Line-triple classes, relative invariants and variety components.

mod components;
mod factor;
mod invariants;
mod lattice;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use components::{component_of, Component, ComponentReport};
pub use factor::{factor_cubic, Coeffs, LineArrangement, LinearForm, Orbit, Root};
pub use invariants::{invariant_pattern, InvariantPattern, RelationCheck, RowPattern};
pub use lattice::{ancestors, degenerations, is_ancestor_or_equal};

use crate::exact::GaussRat;
use crate::pluecker::{PlueckerPoint, TernaryTriple};
use crate::sic::sic_residuals;
use crate::Error;

/// Multiplicity class of a line arrangement, or the degenerate tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    Lines { z: String, mixed: String, w: String },
    Degenerate,
}

/// The fifteen classes that occur on the variety, z-side first.
pub const TABLE_CLASSES: [&str; 15] = [
    "(1,1,1)", "(11,0,1)", "(1,0,11)", "(2,0,1)", "(1,0,2)", "(0,11,0)", "(11,0,0)", "(0,0,11)",
    "(2,0,0)", "(0,0,2)", "(1,0,1)", "(0,1,0)", "(1,0,0)", "(0,0,1)", "(0,0,0)",
];

impl ClassLabel {
    pub fn new(z: &str, mixed: &str, w: &str) -> Self {
        ClassLabel::Lines { z: z.into(), mixed: mixed.into(), w: w.into() }
    }

    pub fn from_arrangement(a: &LineArrangement) -> Self {
        ClassLabel::Lines {
            z: a.pattern(Orbit::ZOnly),
            mixed: a.pattern(Orbit::Mixed),
            w: a.pattern(Orbit::WOnly),
        }
    }

    /// Exchange the z-only and w-only entries.
    pub fn conjugate(&self) -> Self {
        match self {
            ClassLabel::Lines { z, mixed, w } => ClassLabel::Lines { z: w.clone(), mixed: mixed.clone(), w: z.clone() },
            ClassLabel::Degenerate => ClassLabel::Degenerate,
        }
    }

    pub fn is_table_class(&self) -> bool {
        TABLE_CLASSES.contains(&self.to_string().as_str())
    }

    /// True for labels whose normal form lives on the w side, i.e. whose
    /// conjugate is listed first in the table.
    pub fn is_w_side(&self) -> bool {
        match self {
            ClassLabel::Lines { z, w, .. } => {
                let weight = |s: &str| s.chars().filter_map(|c| c.to_digit(10)).sum::<u32>();
                let (a, b) = (weight(z), weight(w));
                b > a || (a == b && w.len() > z.len())
            }
            ClassLabel::Degenerate => false,
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Lines { z, mixed, w } => write!(f, "({z},{mixed},{w})"),
            ClassLabel::Degenerate => f.write_str("V_∅"),
        }
    }
}

impl FromStr for ClassLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "V_∅" || t.eq_ignore_ascii_case("degenerate") || t == "V_0" {
            return Ok(ClassLabel::Degenerate);
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::UnknownLabel(s.into()))?;
        let parts: Vec<&str> = inner.split(',').collect();
        let valid = |p: &str| ["0", "1", "11", "2"].contains(&p);
        if parts.len() != 3 || !parts.iter().all(|p| valid(p)) {
            return Err(Error::UnknownLabel(s.into()));
        }
        Ok(ClassLabel::new(parts[0], parts[1], parts[2]))
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ClassLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Multiplicity class of an on-variety triple.
pub fn class_of(t: &TernaryTriple) -> Result<ClassLabel, Error> {
    let r = sic_residuals(t);
    if !r.on_variety {
        return Err(Error::NotOnVariety);
    }
    if r.degenerate {
        return Ok(ClassLabel::Degenerate);
    }
    if t.d.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let arr = factor_cubic(&t.d)?;
    Ok(ClassLabel::from_arrangement(&arr))
}

/// Label from the list of known systems; the constant slots decide between
/// the rows that share a class.
pub fn e_label(label: &ClassLabel, p: &PlueckerPoint) -> Option<&'static str> {
    let a30 = !p.get(3, 0).is_zero();
    let a03 = !p.get(0, 3).is_zero();
    let s = label.to_string();
    Some(match s.as_str() {
        "(1,1,1)" => "E16",
        "(11,0,1)" | "(1,0,11)" => "E19",
        "(2,0,1)" | "(1,0,2)" => "E17",
        "(0,11,0)" => "E1",
        "(11,0,0)" | "(0,0,11)" => "E7",
        "(2,0,0)" | "(0,0,2)" => "E8",
        "(1,0,1)" => "E20",
        "(0,1,0)" => "E2",
        "(1,0,0)" => {
            if a30 {
                "E9"
            } else {
                "E11"
            }
        }
        "(0,0,1)" => {
            if a03 {
                "E9"
            } else {
                "E11"
            }
        }
        "(0,0,0)" => {
            if a30 || a03 {
                "E10"
            } else {
                "E3"
            }
        }
        _ => return None,
    })
}

/// Which involution-fixed real form a point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealForm {
    Euclidean,
    Minkowski,
}

/// Euclidean: `a_ij` is the complex conjugate of `a_ji` for all pairs.
/// Minkowski: all `a_ij` are real. Both are tested on the given coordinates,
/// not up to projective rescaling.
pub fn real_form(p: &PlueckerPoint, which: RealForm) -> bool {
    match which {
        RealForm::Minkowski => p.coords().iter().all(GaussRat::is_real),
        RealForm::Euclidean => crate::pluecker::COORD_ORDER
            .iter()
            .all(|&(i, j)| *p.get(i, j) == p.get(j, i).conj()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::BiPoly;

    fn pt(e: &[((u32, u32), i64)]) -> PlueckerPoint {
        PlueckerPoint::from_ints(e)
    }

    #[test]
    fn label_round_trip() {
        for s in TABLE_CLASSES {
            let l: ClassLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
            assert_eq!(l.conjugate().conjugate(), l);
        }
        assert!("(3,0,0)".parse::<ClassLabel>().is_err());
        assert_eq!("V_∅".parse::<ClassLabel>().unwrap(), ClassLabel::Degenerate);
        let w_side: Vec<_> = TABLE_CLASSES
            .iter()
            .filter(|s| s.parse::<ClassLabel>().unwrap().is_w_side())
            .collect();
        assert_eq!(w_side, vec![&"(1,0,11)", &"(1,0,2)", &"(0,0,11)", &"(0,0,2)", &"(0,0,1)"]);
    }

    #[test]
    fn class_examples() {
        let e1 = pt(&[((2, 0), 1), ((0, 2), -1)]);
        assert_eq!(class_of(&e1.extract()).unwrap().to_string(), "(0,11,0)");
        let e20 = pt(&[((1, 1), 1)]);
        let l = class_of(&e20.extract()).unwrap();
        assert_eq!(l.to_string(), "(1,0,1)");
        assert_eq!(e_label(&l, &e20), Some("E20"));
        let deg = pt(&[((3, 0), 1)]);
        assert_eq!(class_of(&deg.extract()).unwrap(), ClassLabel::Degenerate);
        let off = pt(&[((1, 0), 1), ((0, 1), 1), ((3, 0), 1), ((0, 3), 1)]);
        assert_eq!(class_of(&off.extract()), Err(Error::NotOnVariety));
        let e16 = TernaryTriple::new(
            BiPoly::from_terms([((2, 1), GaussRat::one()), ((1, 2), GaussRat::one())]),
            BiPoly::monomial(GaussRat::one(), 0, 2),
            BiPoly::monomial(GaussRat::one(), 2, 0),
        );
        assert_eq!(class_of(&e16).unwrap().to_string(), "(1,1,1)");
    }

    #[test]
    fn conjugation_and_real_forms() {
        let e17 = pt(&[((2, 1), 1)]);
        let c = e17.conjugate();
        assert_eq!(c, pt(&[((1, 2), 1)]));
        assert_eq!(class_of(&c.extract()).unwrap().to_string(), "(1,0,2)");
        assert_eq!(c.conjugate(), e17);

        let e1 = pt(&[((2, 0), 1), ((0, 2), -1)]);
        assert!(real_form(&e1, RealForm::Minkowski));
        assert!(!real_form(&e1, RealForm::Euclidean));
        let e16 = pt(&[((2, 1), 1), ((1, 2), 1)]);
        assert!(real_form(&e16, RealForm::Euclidean));
        let rot = e16.scale(&GaussRat::i());
        assert!(!real_form(&rot, RealForm::Euclidean));
        assert!(!real_form(&rot, RealForm::Minkowski));
        let half = PlueckerPoint::from_entries([((2, 0), GaussRat::i()), ((0, 2), -GaussRat::i())]);
        assert!(real_form(&half, RealForm::Euclidean));
    }
}
