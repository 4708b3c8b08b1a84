//! Property tests: randomized laws that complement the exhaustive
//! sweeps in the unit tests and the acceptance gate.

use opdcat::simplex::{factor_inert_active, SimplexMap};
use proptest::prelude::*;

/// A random monotone map `[m] → [n]` with degrees at most `cap`.
fn monotone_map(cap: usize) -> impl Strategy<Value = SimplexMap> {
    (0..=cap, 0..=cap).prop_flat_map(|(m, n)| {
        proptest::collection::vec(0..=n, m + 1).prop_map(move |mut values| {
            values.sort_unstable();
            SimplexMap::new(m, n, values).expect("sorted values are monotone")
        })
    })
}

/// A random composable triple `[a] → [b] → [c] → [d]`.
fn composable_triple(cap: usize) -> impl Strategy<Value = (SimplexMap, SimplexMap, SimplexMap)> {
    (0..=cap, 0..=cap, 0..=cap, 0..=cap).prop_flat_map(|(a, b, c, d)| {
        (
            proptest::collection::vec(0..=b, a + 1),
            proptest::collection::vec(0..=c, b + 1),
            proptest::collection::vec(0..=d, c + 1),
        )
            .prop_map(move |(mut u, mut v, mut w)| {
                u.sort_unstable();
                v.sort_unstable();
                w.sort_unstable();
                (
                    SimplexMap::new(a, b, u).unwrap(),
                    SimplexMap::new(b, c, v).unwrap(),
                    SimplexMap::new(c, d, w).unwrap(),
                )
            })
    })
}

proptest! {
    #[test]
    fn factorization_composes_back(g in monotone_map(6)) {
        let f = factor_inert_active(&g);
        prop_assert!(f.inert.is_inert());
        prop_assert!(f.active.is_active());
        prop_assert_eq!(f.active.compose(&f.inert).unwrap(), g);
    }

    #[test]
    fn composition_is_associative((f, g, h) in composable_triple(5)) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identities_are_neutral(g in monotone_map(6)) {
        let src_id = SimplexMap::identity(g.src_degree());
        let tgt_id = SimplexMap::identity(g.tgt_degree());
        prop_assert_eq!(src_id.compose(&g).unwrap(), g.clone());
        prop_assert_eq!(g.compose(&tgt_id).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn seeded_categories_are_valid_for_any_seed(seed in any::<u64>()) {
        for (name, c) in opdcat::corpus::seeded_enriched(seed) {
            let report = opdcat::enrich::check_enriched(&c);
            prop_assert!(report.is_valid(), "{}: {:?}", name, report.violations);
        }
    }

    #[test]
    fn seeded_graphs_build_free_categories_for_any_seed(seed in any::<u64>()) {
        let pairs = opdcat::corpus::seeded_graph_pairs(seed);
        prop_assert!(pairs.len() >= 10);
        for (name, g, target) in &pairs {
            prop_assert!(g.base == target.base, "{}: bases differ", name);
            let (free, _) = opdcat::enrich::free_enriched(g).unwrap();
            let report = opdcat::enrich::check_enriched(&free);
            prop_assert!(report.is_valid(), "{}: {:?}", name, report.violations);
        }
    }
}
