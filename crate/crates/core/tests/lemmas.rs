mod common;

use distinguish::codes::{brute_force_min, brute_force_min_with, BruteForceOptions, ProblemKind};
use distinguish::interval_model::{random_model, RandomStyle};
use distinguish::IntModel;
use proptest::prelude::*;

fn style() -> impl Strategy<Value = RandomStyle> {
    prop_oneof![
        Just(RandomStyle::UniformEndpoints),
        Just(RandomStyle::UnitLength),
        (1usize..4).prop_map(|window| RandomStyle::LongThin { window }),
    ]
}

fn model(max_n: usize) -> impl Strategy<Value = IntModel> {
    (1..=max_n, any::<u64>(), style()).prop_map(|(n, seed, s)| random_model(n, seed, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distances_through_paths(m in model(30)) {
        prop_assert!(common::distance_through_paths(&m).is_ok());
    }

    #[test]
    fn paths_do_not_diverge(m in model(30)) {
        prop_assert!(common::paths_do_not_diverge(&m).is_ok());
    }

    #[test]
    fn separation_propagates(m in model(30)) {
        prop_assert!(common::separation_propagates(&m).is_ok());
    }

    #[test]
    fn power_bags_are_local(m in model(30)) {
        prop_assert!(common::power_bags_are_local(&m).is_ok());
    }

    #[test]
    fn decomposition_contract(m in model(40)) {
        prop_assert!(common::decomposition_contract(&m).is_ok());
        prop_assert!(common::decomposition_contract(&m.power_model(4).unwrap()).is_ok());
    }

    #[test]
    fn power_model_matches_graph_power(m in model(25), d in 2u32..6) {
        let p = m.power_model(d).unwrap();
        prop_assert_eq!(p.build_graph(), m.build_graph().power(d));
        prop_assert_eq!(p.order_left(), m.order_left());
        prop_assert_eq!(p.order_right(), m.order_right());
    }

    #[test]
    fn distance2_resolving_equals_resolving(m in model(12)) {
        let g = m.build_graph();
        let opts = BruteForceOptions { distance2: true, ..Default::default() };
        let local = brute_force_min_with(&g, ProblemKind::Md, g.n(), opts).size();
        prop_assert_eq!(local, brute_force_min(&g, ProblemKind::Md, g.n()).size());
    }
}
