use num_bigint::BigInt;
use proptest::prelude::*;

use scroll_ulrich::chow::canonical_class;
use scroll_ulrich::riemann_roch::{chi_end, Hrr};
use scroll_ulrich::scroll::{coh_scroll_line, coh_scroll_line_leray, serre_check};
use scroll_ulrich::tower::{build_tower, moduli_dim, Constituent};
use scroll_ulrich::ulrich::{is_ulrich_line, ulrich_dual, UlrichStatus};
use scroll_ulrich::{DivisorClass, ScrollParams, TowerSpec};

fn params() -> impl Strategy<Value = ScrollParams> {
    (0i64..=3)
        .prop_flat_map(|e| (Just(e), 3 * e + 2..=3 * e + 16))
        .prop_flat_map(|(e, b)| (Just(e), Just(b), b - e + 1..2 * b - 4 * e))
        .prop_map(|(e, b, k)| ScrollParams::new(e, b, k).unwrap())
}

fn class() -> impl Strategy<Value = DivisorClass> {
    (-7i64..=7, -12i64..=12, -12i64..=12).prop_map(|(x, a, b)| DivisorClass::new(x, a, b))
}

fn tower() -> impl Strategy<Value = TowerSpec> {
    (1i64..=8, prop::collection::vec(0usize..4, 1..=8)).prop_map(|(t, idx)| {
        let p = ScrollParams::sporadic(t).unwrap();
        TowerSpec::new(&p, idx.into_iter().map(|i| Constituent::ALL[i]).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cohomology_is_consistent_with_chi(p in params(), d in class()) {
        let c = coh_scroll_line(&p, d);
        prop_assert!(c.is_consistent());
        prop_assert_eq!(c.chi, Hrr::new(&p).chi_line(d));
    }

    #[test]
    fn routes_overlap_below_minus_one(p in params(), d in class()) {
        prop_assume!(d.x <= -2);
        let a = coh_scroll_line(&p, d);
        let b = coh_scroll_line_leray(&p, d);
        for i in 0..4 {
            prop_assert!(a.dims[i].lo <= b.dims[i].hi && b.dims[i].lo <= a.dims[i].hi);
        }
        prop_assert!(serre_check(&p, d));
    }

    #[test]
    fn serre_flips_chi(p in params(), d in class()) {
        let h = Hrr::new(&p);
        prop_assert_eq!(h.chi_line(d), -h.chi_line(canonical_class(&p) - d));
    }

    #[test]
    fn ulrich_dual_preserves_verdict(t in 1i64..=6, d in class()) {
        let p = ScrollParams::sporadic(t).unwrap();
        let v = is_ulrich_line(&p, d).status;
        let w = is_ulrich_line(&p, ulrich_dual(&p, d)).status;
        prop_assert_eq!(v == UlrichStatus::Ulrich, w == UlrichStatus::Ulrich);
        prop_assert_eq!(ulrich_dual(&p, ulrich_dual(&p, d)), d);
    }

    #[test]
    fn tower_invariants(g in tower()) {
        let p = *g.params();
        let c = build_tower(&g);
        prop_assert_eq!(c.rank, g.rank());
        prop_assert_eq!(c.slope.clone(), BigInt::from(p.ulrich_slope()).into());
        let chi = chi_end(&g).unwrap();
        prop_assert_eq!(moduli_dim(&g).unwrap(), BigInt::from(1) - chi);
    }

    #[test]
    fn chi_end_ignores_order(g in tower()) {
        let mut cs = g.constituents().to_vec();
        cs.reverse();
        let h = TowerSpec::new(g.params(), cs).unwrap();
        prop_assert_eq!(chi_end(&g).unwrap(), chi_end(&h).unwrap());
    }
}
