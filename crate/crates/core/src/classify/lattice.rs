//! Inclusion lattice of the classes of cubics `D`.

use super::ClassLabel;

/// Classes lying in the closure of a z-side class (excluding itself).
const CLOSURES: [(&str, &[&str]); 10] = [
    (
        "(1,1,1)",
        &[
            "(2,0,1)", "(1,0,2)", "(0,1,0)", "(11,0,0)", "(0,0,11)", "(2,0,0)", "(0,0,2)", "(1,0,0)",
            "(0,0,1)", "(0,0,0)",
        ],
    ),
    ("(11,0,1)", &["(2,0,1)", "(11,0,0)", "(1,0,1)", "(2,0,0)", "(1,0,0)", "(0,0,1)", "(0,0,0)"]),
    (
        "(0,11,0)",
        &["(0,1,0)", "(11,0,0)", "(0,0,11)", "(2,0,0)", "(0,0,2)", "(1,0,0)", "(0,0,1)", "(0,0,0)"],
    ),
    ("(2,0,1)", &["(2,0,0)", "(0,0,1)", "(0,0,0)"]),
    ("(11,0,0)", &["(2,0,0)", "(1,0,0)", "(0,0,0)"]),
    ("(2,0,0)", &["(0,0,0)"]),
    ("(1,0,1)", &["(1,0,0)", "(0,0,1)", "(0,0,0)"]),
    ("(0,1,0)", &["(1,0,0)", "(0,0,1)", "(0,0,0)"]),
    ("(1,0,0)", &["(0,0,0)"]),
    ("(0,0,0)", &[]),
];

fn parse(s: &str) -> ClassLabel {
    s.parse().expect("static label")
}

/// Classes strictly below `label` in the inclusion order.
pub fn degenerations(label: &ClassLabel) -> Vec<ClassLabel> {
    for (top, below) in CLOSURES {
        let t = parse(top);
        if &t == label {
            return below.iter().map(|s| parse(s)).collect();
        }
        if &t.conjugate() == label {
            return below.iter().map(|s| parse(s).conjugate()).collect();
        }
    }
    Vec::new()
}

/// Classes strictly above `label`.
pub fn ancestors(label: &ClassLabel) -> Vec<ClassLabel> {
    let mut out: Vec<ClassLabel> = super::TABLE_CLASSES
        .iter()
        .map(|s| parse(s))
        .filter(|c| degenerations(c).contains(label))
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn is_ancestor_or_equal(upper: &ClassLabel, lower: &ClassLabel) -> bool {
    upper == lower || degenerations(upper).contains(lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_is_transitive_and_conjugation_symmetric() {
        for s in super::super::TABLE_CLASSES {
            let c = parse(s);
            for d in degenerations(&c) {
                for e in degenerations(&d) {
                    assert!(degenerations(&c).contains(&e), "{c} > {d} > {e}");
                }
                assert!(degenerations(&c.conjugate()).contains(&d.conjugate()));
            }
        }
    }

    #[test]
    fn examples() {
        let anc = ancestors(&parse("(2,0,0)"));
        assert!(anc.contains(&parse("(11,0,0)")));
        assert!(anc.contains(&parse("(0,11,0)")));
        assert!(anc.contains(&parse("(1,1,1)")));
        assert!(!anc.contains(&parse("(1,0,1)")));
        assert!(is_ancestor_or_equal(&parse("(1,0,11)"), &parse("(1,0,2)")));
    }
}
