use proptest::prelude::*;

use superint::classify::ClassLabel;
use superint::enumerate::{enumerate, perturb, rng};
use superint::potential::{prolongation_residual, solve_fibre_series, Expr};
use superint::tables::{POTENTIALS, TABLE_BOX};
use superint::GaussRat;

const CLASSES: [&str; 7] = ["(1,1,1)", "(0,1,0)", "(11,0,1)", "(0,11,0)", "(11,0,0)", "(1,0,11)", "(0,0,11)"];

fn small() -> impl Strategy<Value = i64> {
    -5i64..=5
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fibre_is_linear(row in 0usize..12, c in proptest::array::uniform3(small()), seed in 0u64..1000) {
        let r = &POTENTIALS[row];
        let t = r.point().extract();
        let [v1, v2, v3] = r.expressions();
        let combo = Expr::sum(vec![
            v1.scale(GaussRat::from_int(c[0])),
            v2.scale(GaussRat::from_int(c[1])),
            v3.scale(GaussRat::from_int(c[2])),
            Expr::int(7),
        ]);
        let samples = TABLE_BOX.samples(8, &mut rng(seed));
        let res = prolongation_residual(&t, &combo, &samples).unwrap();
        prop_assert!(res < 1e-9, "{} residual {res:e}", r.class);
    }

    #[test]
    fn on_variety_fibres_are_consistent(k in 0usize..7, seed in 0u64..1000, z in 1i64..5, w in 5i64..9) {
        let class: ClassLabel = CLASSES[k].parse().unwrap();
        let p = enumerate(&class, 1, seed).unwrap().remove(0);
        let t = p.extract();
        let (z, w) = (GaussRat::from_int(z), GaussRat::from_int(w));
        prop_assume!(!t.d.eval(&z, &w).is_zero());
        let fb = solve_fibre_series(&t, (z, w), 5).unwrap();
        prop_assert!(fb.consistent());
        prop_assert_eq!(fb.rank(), 4);
    }

    #[test]
    fn perturbed_fibres_conflict(k in 0usize..7, seed in 0u64..1000) {
        let class: ClassLabel = CLASSES[k].parse().unwrap();
        let p = enumerate(&class, 1, seed).unwrap().remove(0);
        let t = perturb(&p, &mut rng(seed + 1)).extract();
        let base = (GaussRat::from_int(2), GaussRat::from_int(7));
        prop_assume!(!t.d.eval(&base.0, &base.1).is_zero());
        let fb = solve_fibre_series(&t, base, 4).unwrap();
        prop_assert!(!fb.consistent());
    }
}
