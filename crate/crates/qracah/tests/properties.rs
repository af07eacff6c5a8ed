use proptest::prelude::*;

use qracah::cli::suites::gram_residual;
use qracah::params::{ParamSet, RoleQuad};
use qracah::weights::{dominance_leq, enumerate_alcove, total_compare, Weight};
use qracah::System;

fn weight(n: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(0u32..6, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Weight::new(v).unwrap()
    })
}

fn params() -> impl Strategy<Value = ParamSet> {
    (1usize..=2, 1u32..=3, 0.1f64..0.45, 0.45f64..0.8, 0.3f64..0.45, 0.05f64..0.25, -0.2f64..0.2).prop_map(
        |(n, big_n, g, a, b, c, d)| ParamSet::truncated_trig(g, RoleQuad::new(a, b, c, d), n, big_n).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dominance_refines_the_total_order(a in weight(3), b in weight(3)) {
        if a.size() == b.size() && dominance_leq(&a, &b).unwrap() {
            prop_assert_ne!(total_compare(&a, &b), std::cmp::Ordering::Greater);
        }
    }

    #[test]
    fn alcove_is_sorted_and_closed(n in 1usize..=3, big_n in 0u32..=4) {
        let all = enumerate_alcove(n, big_n);
        for pair in all.windows(2) {
            prop_assert_eq!(total_compare(&pair[0], &pair[1]), std::cmp::Ordering::Less);
        }
        prop_assert!(all.iter().all(|w| w.in_alcove(big_n)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn duality_is_an_involution(p in params()) {
        let back = p.dual().dual();
        for (x, y) in p.slots().iter().zip(back.slots()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
        prop_assert!(p.truncation_residual() < 1e-12);
        prop_assert!(p.dual().truncation_residual() < 1e-12);
    }

    #[test]
    fn family_is_orthogonal_and_dual(p in params()) {
        let sys = System::build(&p).unwrap();
        prop_assert!(gram_residual(&sys.family, &sys.table.delta).unwrap() < 1e-9);
        prop_assert!(sys.origin_residual() < 1e-9);
        let top = sys.big_p.values.iter().flatten().map(|x| x.norm()).fold(1.0, f64::max);
        prop_assert!(sys.duality_residual() < 1e-9 * top);
        let dual_sum: num_complex::Complex64 = sys.table.delta_hat.iter().sum();
        prop_assert!((dual_sum - sys.table.one_one).norm() < 1e-11 * sys.table.one_one.norm());
    }
}
