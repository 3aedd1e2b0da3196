//! Property tests over seeded random instances.

use layerspan::classes;
use layerspan::drawing::{self, compress_levels, induced_embedding, validate, EmbeddingCheck};
use layerspan::embedding::{self, check_upward_embedding, faces};
use layerspan::exact::{min_span_exact, ExactError, Mode, SearchBudget};
use layerspan::flow;
use layerspan::generators::random;
use layerspan::io::{parse_graph, GraphFile};
use layerspan::kernel::{self, KernelError};
use layerspan::trees;
use layerspan::Dag;
use proptest::prelude::*;

fn exact_free(g: &Dag) -> Option<i64> {
    match min_span_exact(g, Mode::Free, &SearchBudget::default()) {
        Ok(s) => Some(s.span),
        Err(ExactError::Infeasible) => None,
        Err(e) => panic!("{e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn face_walks_cover_every_edge_side(seed in any::<u64>(), n in 3usize..14) {
        let mut rng = random::seeded(seed);
        let (g, ue) = random::random_upward_plane(n, false, &mut rng);
        let fs = faces(&g, &ue.base).unwrap();
        let total: usize = fs.faces.iter().map(|f| f.darts.len()).sum();
        prop_assert_eq!(total, 2 * g.m());
        prop_assert!(check_upward_embedding(&g, &ue).is_valid());
    }

    #[test]
    fn st_faces_split_into_two_paths(seed in any::<u64>(), n in 3usize..14) {
        let mut rng = random::seeded(seed);
        let (g, emb) = random::random_plane_st(n, n / 2, &mut rng);
        let fs = faces(&g, &emb).unwrap();
        for f in &fs.faces {
            prop_assert_eq!(f.source_switches(g.edges()), 1);
            // forward darts form one directed path and backward darts the
            // other; each is contiguous in the cyclic walk
            let fwd: Vec<bool> = f.darts.iter().map(|&d| d % 2 == 0).collect();
            let changes = (0..fwd.len()).filter(|&i| fwd[i] != fwd[(i + 1) % fwd.len()]).count();
            prop_assert_eq!(changes, 2);
        }
    }

    #[test]
    fn flow_levelings_balance_every_face(seed in any::<u64>(), n in 3usize..12, k in 1i64..5) {
        let mut rng = random::seeded(seed);
        let (g, emb) = random::random_plane_st(n, n / 2, &mut rng);
        if let Some(d) = flow::solve_st_plane(&g, &emb, &vec![k; g.m()]).unwrap() {
            let rep = validate(&g, &d, Some(EmbeddingCheck::planar(&emb))).unwrap();
            prop_assert!(rep.is_valid(), "{:?}", rep.violations);
            prop_assert!(rep.span <= k);
            let span = |e: usize| d.level[g.edge(e).1] - d.level[g.edge(e).0];
            for f in &faces(&g, &emb).unwrap().faces {
                let left: i64 = f.darts.iter().filter(|&&x| x % 2 == 0).map(|&x| span(x / 2)).sum();
                let right: i64 = f.darts.iter().filter(|&&x| x % 2 == 1).map(|&x| span(x / 2)).sum();
                prop_assert_eq!(left, right);
            }
            prop_assert!(check_upward_embedding(&g, &induced_embedding(&g, &d)).is_valid());
        }
    }

    #[test]
    fn drawings_survive_json_and_compression(seed in any::<u64>(), n in 2usize..40) {
        let mut rng = random::seeded(seed);
        let g = random::random_tree(n, &mut rng);
        let d = trees::draw_greedy(&g).unwrap();
        let rep = validate(&g, &d, None).unwrap();
        prop_assert!(rep.is_valid());
        prop_assert!(check_upward_embedding(&g, &induced_embedding(&g, &d)).is_valid());
        let back = drawing::from_json(&g, &drawing::to_json(&g, &d)).unwrap();
        prop_assert_eq!(validate(&g, &back, None).unwrap(), rep.clone());
        let c = compress_levels(&g, &d);
        let crep = validate(&g, &c, None).unwrap();
        prop_assert!(crep.is_valid());
        prop_assert!(crep.span <= rep.span);
        prop_assert_eq!(compress_levels(&g, &c), c);
    }

    #[test]
    fn graph_files_round_trip(seed in any::<u64>(), n in 2usize..12) {
        let mut rng = random::seeded(seed);
        let (g, ue) = random::random_upward_plane(n, false, &mut rng);
        let text = GraphFile::upward(g.clone(), ue.clone()).to_json();
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back.dag, &g);
        prop_assert!(embedding::same_upward(g.n(), g.edges(), &back.upward_embedding().unwrap(), &ue));
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn augmentation_strips_back(seed in any::<u64>(), n in 2usize..10, k in 1i64..4) {
        let mut rng = random::seeded(seed);
        let (g, ue) = random::random_upward_plane(n, true, &mut rng);
        let aug = classes::augment_single_source(&g, &ue, k).unwrap();
        if let Some(d) = flow::solve_st_plane(&aug.dag, &aug.embedding, &aug.sigma).unwrap() {
            let s = aug.record.strip(&d);
            let rep = validate(&g, &s, Some(EmbeddingCheck::upward(&ue))).unwrap();
            prop_assert!(rep.is_valid(), "{:?}", rep.violations);
            prop_assert!(rep.span <= k);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_witnesses_validate_and_edges_never_help(seed in any::<u64>(), n in 2usize..7) {
        let mut rng = random::seeded(seed);
        let g = random::random_dag(n, 0.4, &mut rng);
        let Ok(sol) = min_span_exact(&g, Mode::Free, &SearchBudget::default()) else {
            return Ok(());
        };
        let rep = validate(&g, &sol.drawing, None).unwrap();
        prop_assert!(rep.is_valid());
        prop_assert_eq!(rep.span, sol.span);
        // add one edge along a topological order
        let order = g.topo_order();
        let missing = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (order[i], order[j]))
            .find(|&(a, b)| !g.adjacent(a, b));
        if let Some((a, b)) = missing {
            let mut edges = g.edges().to_vec();
            edges.push((a, b));
            let h = Dag::from_edges(n, &edges).unwrap();
            match exact_free(&h) {
                Some(s) => prop_assert!(s >= sol.span),
                None => {}
            }
        }
    }

    #[test]
    fn kernel_stays_small_and_reinserts(seed in any::<u64>(), n in 3usize..14, s in 1i64..4) {
        let mut rng = random::seeded(seed);
        let g = random::random_dag(n, 0.25, &mut rng);
        let cover = kernel::greedy_cover(&g);
        if cover.len() > 4 {
            return Ok(());
        }
        match kernel::reduce(&g, &cover) {
            Ok(kern) => prop_assert!(kern.kernel.n() <= 44 * kern.k().max(1)),
            Err(KernelError::SizeBound { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        }
        match kernel::span_leq_via_vc(&g, &cover, s, &SearchBudget::default()) {
            Ok(Some(d)) => {
                let rep = validate(&g, &d, None).unwrap();
                prop_assert!(rep.is_valid(), "{:?}", rep.violations);
                prop_assert!(rep.span <= s);
            }
            Ok(None) | Err(KernelError::BudgetExceeded { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
}
