//! Tree drawers on random trees: validity and the per-instance bounds.

use layerspan::drawing::validate;
use layerspan::exact::{min_span_exact, Mode, SearchBudget};
use layerspan::generators::{self, random, Polarity};
use layerspan::trees;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn caterpillars_have_span_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let spine = rng.gen_range(1..10);
        let g = random::random_caterpillar(spine, 3, &mut rng);
        let d = trees::draw_caterpillar(&g).unwrap();
        let rep = validate(&g, &d, None).unwrap();
        assert!(rep.is_valid(), "{:?}", rep.violations);
        assert!(rep.span <= 1);
    }
}

#[test]
fn source_sink_trees_within_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..40 {
        let n = rng.gen_range(2..40);
        let g = random::random_source_sink_tree(n, &mut rng);
        let d = trees::draw_source_sink_tree(&g).unwrap();
        let rep = validate(&g, &d, None).unwrap();
        assert!(rep.is_valid(), "{:?}", rep.violations);
        assert!(rep.span <= g.max_degree() as i64 / 2 + 1);
    }
}

#[test]
fn bounded_indegree_within_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..60 {
        let n = rng.gen_range(1..=40);
        let g = random::random_tree(n, &mut rng);
        let (d, metrics) = trees::draw_bounded_indegree_with_metrics(&g).unwrap();
        let rep = validate(&g, &d, None).unwrap();
        assert!(rep.is_valid(), "{:?}", rep.violations);
        let dp = metrics.first().map_or(0, |m| m.d_plus);
        assert!(rep.span <= trees::geometric_bound(dp, g.longest_path()));
        for m in &metrics {
            assert!(m.lower_height <= trees::geometric_bound(m.d_plus, m.ell_up).max(1));
        }
    }
}

#[test]
fn greedy_decomposition_inequalities() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..100 {
        let n = rng.gen_range(1..=60);
        let g = random::random_tree(n, &mut rng);
        let root = rng.gen_range(0..n);
        let dec = trees::greedy_decompose(&g, root).unwrap();
        assert!(dec.partition_holds() && dec.chan_holds(), "{dec:?}");
    }
}

#[test]
fn greedy_drawings_within_layer_budget() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..60 {
        let n = rng.gen_range(1..=60);
        let g = random::random_tree(n, &mut rng);
        let d = trees::draw_greedy(&g).unwrap();
        let rep = validate(&g, &d, None).unwrap();
        assert!(rep.is_valid(), "{:?}", rep.violations);
        assert!(d.layers() as f64 <= trees::greedy_layer_bound(n, g.longest_path()) + 1e-9);
        assert!(rep.span < d.layers());
    }
}

#[test]
fn td_trees_meet_the_source_sink_bound() {
    // T_3: drawer reaches 2 and the oracle confirms 2 is optimal
    let t3 = generators::gen_td(3, Polarity::Source).unwrap();
    let d = trees::draw_source_sink_tree(&t3).unwrap();
    let r = validate(&t3, &d, None).unwrap();
    assert!(r.is_valid());
    assert!(r.span <= 2);
    let oracle = min_span_exact(&t3, Mode::Free, &SearchBudget::default()).unwrap();
    assert_eq!(oracle.span, 2);

    for pol in [Polarity::Source, Polarity::Sink] {
        let t4 = generators::gen_td(4, pol).unwrap();
        let r = validate(&t4, &trees::draw_source_sink_tree(&t4).unwrap(), None).unwrap();
        assert!(r.is_valid());
        assert!(r.span <= 3);
    }
}
