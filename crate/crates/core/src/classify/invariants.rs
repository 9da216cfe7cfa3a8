//! Vanishing patterns of the `a_ij`, which are relative invariants under
//! shifts and shears.

use serde::{Deserialize, Serialize};

use super::ClassLabel;
use crate::exact::GaussRat;
use crate::pluecker::{coord_name, PlueckerPoint, COORD_ORDER};

type Coord = (u32, u32);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

/// How a point compares with one class row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowPattern {
    pub class: ClassLabel,
    pub required_vanishing: Vec<String>,
    pub relations: Vec<RelationCheck>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantPattern {
    pub vanishing: Vec<String>,
    pub rows: Vec<RowPattern>,
}

impl InvariantPattern {
    pub fn consistent_classes(&self) -> Vec<ClassLabel> {
        self.rows.iter().filter(|r| r.consistent).map(|r| r.class.clone()).collect()
    }
}

struct Row {
    class: &'static str,
    vanishing: fn(Coord) -> bool,
    relations: &'static [Relation],
}

/// `lhs = rhs` as sums of `coefficient · a_ij · a_kl`.
struct Relation {
    text: &'static str,
    lhs: &'static [(i64, Coord, Coord)],
    rhs: &'static [(i64, Coord, Coord)],
}

const ROWS: [Row; 10] = [
    Row { class: "(1,1,1)", vanishing: |_| false, relations: &[] },
    Row { class: "(11,0,1)", vanishing: |c| matches!(c, (1, 2) | (0, 2) | (0, 3)), relations: &[] },
    Row {
        class: "(2,0,1)",
        vanishing: |c| matches!(c, (1, 2) | (0, 2) | (0, 3)),
        relations: &[
            Relation { text: "a11^2 = 4 a21 a01", lhs: &[(1, (1, 1), (1, 1))], rhs: &[(4, (2, 1), (0, 1))] },
            Relation { text: "a10^2 = 4 a20 a00", lhs: &[(1, (1, 0), (1, 0))], rhs: &[(4, (2, 0), (0, 0))] },
        ],
    },
    Row { class: "(0,11,0)", vanishing: |c| matches!(c, (1, 2) | (2, 1) | (1, 1)), relations: &[] },
    Row { class: "(11,0,0)", vanishing: |(_, j)| j != 0, relations: &[] },
    Row {
        class: "(2,0,0)",
        vanishing: |(_, j)| j != 0,
        relations: &[Relation { text: "4 a20 a00 = a10^2", lhs: &[(4, (2, 0), (0, 0))], rhs: &[(1, (1, 0), (1, 0))] }],
    },
    Row { class: "(1,0,1)", vanishing: |(i, j)| !(i <= 1 && j <= 1), relations: &[] },
    Row { class: "(0,1,0)", vanishing: |c| matches!(c, (2, 0) | (2, 1) | (1, 1) | (1, 2) | (0, 2)), relations: &[] },
    // a30 is the free constant of A_z here
    Row { class: "(1,0,0)", vanishing: |(i, j)| !(i <= 1 && j == 0) && (i, j) != (3, 0), relations: &[] },
    Row { class: "(0,0,0)", vanishing: |c| !matches!(c, (0, 0) | (3, 0) | (0, 3)), relations: &[] },
];

fn eval_side(p: &PlueckerPoint, terms: &[(i64, Coord, Coord)], conj: bool) -> GaussRat {
    let sw = |(i, j): Coord| if conj { (j, i) } else { (i, j) };
    terms.iter().fold(GaussRat::zero(), |acc, &(k, a, b)| {
        let (a, b) = (sw(a), sw(b));
        &acc + &(&GaussRat::from_int(k) * &(p.get(a.0, a.1) * p.get(b.0, b.1)))
    })
}

fn conj_text(t: &str) -> String {
    // swap the two digits of every a_ij
    let mut out = String::new();
    let cs: Vec<char> = t.chars().collect();
    let mut k = 0;
    while k < cs.len() {
        if cs[k] == 'a' && k + 2 < cs.len() && cs[k + 1].is_ascii_digit() && cs[k + 2].is_ascii_digit() {
            out.push('a');
            out.push(cs[k + 2]);
            out.push(cs[k + 1]);
            k += 3;
        } else {
            out.push(cs[k]);
            k += 1;
        }
    }
    out
}

/// Vanishing coordinates of `p` and, per class row and its conjugate,
/// whether the required vanishing set and relations hold.
pub fn invariant_pattern(p: &PlueckerPoint) -> InvariantPattern {
    let vanishing: Vec<String> = COORD_ORDER
        .iter()
        .filter(|&&(i, j)| p.get(i, j).is_zero())
        .map(|&(i, j)| coord_name(i, j))
        .collect();
    let mut rows = Vec::new();
    for row in &ROWS {
        let base: ClassLabel = row.class.parse().expect("static label");
        let variants = if base.conjugate() == base { vec![false] } else { vec![false, true] };
        for conj in variants {
            let class = if conj { base.conjugate() } else { base.clone() };
            let req: Vec<Coord> = COORD_ORDER
                .iter()
                .copied()
                .filter(|&c| (row.vanishing)(c))
                .map(|(i, j)| if conj { (j, i) } else { (i, j) })
                .collect();
            let relations: Vec<RelationCheck> = row
                .relations
                .iter()
                .map(|r| RelationCheck {
                    relation: if conj { conj_text(r.text) } else { r.text.to_string() },
                    holds: eval_side(p, r.lhs, conj) == eval_side(p, r.rhs, conj),
                })
                .collect();
            let consistent = req.iter().all(|&(i, j)| p.get(i, j).is_zero()) && relations.iter().all(|r| r.holds);
            rows.push(RowPattern {
                class,
                required_vanishing: req.iter().map(|&(i, j)| coord_name(i, j)).collect(),
                relations,
                consistent,
            });
        }
    }
    InvariantPattern { vanishing, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row<'a>(p: &'a InvariantPattern, s: &str) -> &'a RowPattern {
        p.rows.iter().find(|r| r.class.to_string() == s).unwrap()
    }

    #[test]
    fn e17_pattern() {
        let p = invariant_pattern(&PlueckerPoint::from_ints(&[((2, 1), 1)]));
        for c in ["a12", "a02", "a03"] {
            assert!(p.vanishing.contains(&c.to_string()));
        }
        let r = row(&p, "(2,0,1)");
        assert!(r.consistent);
        assert!(r.relations.iter().all(|x| x.holds));
        assert_eq!(row(&p, "(1,0,2)").relations[0].relation, "a11^2 = 4 a12 a10");
    }

    #[test]
    fn e1_and_generic() {
        let p = invariant_pattern(&PlueckerPoint::from_ints(&[((2, 0), 1), ((0, 2), -1)]));
        assert!(row(&p, "(0,11,0)").consistent);
        let all: Vec<(u32, u32)> = COORD_ORDER.to_vec();
        let generic = PlueckerPoint::from_ints(&all.iter().map(|&c| (c, 1)).collect::<Vec<_>>());
        let p = invariant_pattern(&generic);
        assert!(p.vanishing.is_empty());
        assert_eq!(p.consistent_classes(), vec!["(1,1,1)".parse().unwrap()]);
    }

    #[test]
    fn relation_for_double_line() {
        // D = (z + 1)² w
        let p = PlueckerPoint::from_ints(&[((2, 1), 1), ((1, 1), 2), ((0, 1), 1), ((0, 3), 0)]);
        assert!(row(&invariant_pattern(&p), "(2,0,1)").consistent);
        // the same with a broken square
        let p = PlueckerPoint::from_ints(&[((2, 1), 1), ((1, 1), 2), ((0, 1), 2)]);
        assert!(!row(&invariant_pattern(&p), "(2,0,1)").consistent);
    }
}
