use distinguish::codes::{
    brute_force_min, brute_force_min_with, first_violation, is_valid, BruteForceOptions, ProblemKind,
};
use distinguish::{Graph, VertexSet};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let pairs = (0..n).flat_map(|v| (0..v).map(move |u| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(p, _)| p))
        })
}

fn graph_and_set(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(any::<bool>(), n)).prop_map(|(g, bits)| {
            let s = VertexSet::new(g.n(), bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)).unwrap();
            (g, s)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn supersets_of_solutions_are_solutions((g, s) in graph_and_set(10), extra in 0usize..10) {
        let bigger = VertexSet::new(g.n(), s.iter().chain(std::iter::once(extra % g.n()))).unwrap();
        for kind in ProblemKind::ALL {
            if is_valid(&g, kind, &s) {
                prop_assert!(is_valid(&g, kind, &bigger), "{}", kind);
            }
        }
    }

    #[test]
    fn stronger_codes_imply_weaker_ones((g, s) in graph_and_set(10)) {
        let ld = is_valid(&g, ProblemKind::Ld, &s);
        if is_valid(&g, ProblemKind::Id, &s) || is_valid(&g, ProblemKind::Old, &s) {
            prop_assert!(ld);
        }
        if ld {
            prop_assert!(is_valid(&g, ProblemKind::Md, &s));
        }
    }

    #[test]
    fn violations_agree_with_predicates((g, s) in graph_and_set(10)) {
        for kind in ProblemKind::ALL {
            prop_assert_eq!(first_violation(&g, kind, &s).is_none(), is_valid(&g, kind, &s));
        }
    }

    #[test]
    fn optima_are_ordered(g in graph(8)) {
        let opt = |k| brute_force_min(&g, k, g.n()).size();
        let (md, ld) = (opt(ProblemKind::Md), opt(ProblemKind::Ld).unwrap());
        prop_assert!(md.unwrap() <= ld);
        if let Some(id) = opt(ProblemKind::Id) {
            prop_assert!(ld <= id);
        }
        if let Some(old) = opt(ProblemKind::Old) {
            prop_assert!(ld <= old);
        }
    }

    #[test]
    fn brute_force_is_valid_minimal_and_thread_independent(g in graph(9)) {
        for kind in ProblemKind::ALL {
            let one = brute_force_min(&g, kind, g.n());
            let many = brute_force_min_with(&g, kind, g.n(), BruteForceOptions { threads: 4, ..Default::default() });
            prop_assert_eq!(&one, &many);
            if let Some(s) = one.set() {
                prop_assert!(is_valid(&g, kind, s));
                if !s.is_empty() {
                    let smaller = brute_force_min(&g, kind, s.len() - 1);
                    prop_assert!(smaller.set().is_none());
                }
            }
        }
    }

    #[test]
    fn text_formats_round_trip((g, s) in graph_and_set(12)) {
        prop_assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g.clone());
        prop_assert_eq!(VertexSet::from_text(&s.to_text(), g.n()).unwrap(), s);
    }
}
