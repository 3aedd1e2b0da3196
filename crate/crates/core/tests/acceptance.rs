//! Acceptance checks, one line each. Runs without the libtest harness so
//! every line is printed on a normal `cargo test`; exits non-zero when any
//! check fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use layerspan::classes;
use layerspan::drawing::{validate, EmbeddingCheck};
use layerspan::exact::{min_span_exact, ExactError, Mode, SearchBudget};
use layerspan::flow;
use layerspan::generators::{self, random, Polarity, ThreePartitionInstance, WitnessKind};
use layerspan::kernel::{self, KernelError};
use layerspan::trees;
use layerspan::Dag;
use rand::seq::SliceRandom;
use rand::Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn budget(n: usize) -> SearchBudget {
    SearchBudget::default().with_max_vertices(n.max(12))
}

fn oracle(g: &Dag, mode: Mode) -> Option<i64> {
    match min_span_exact(g, mode, &budget(g.n())) {
        Ok(s) => Some(s.span),
        Err(ExactError::Infeasible) => None,
        Err(e) => panic!("oracle: {e}"),
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    ensure!(t <= limit, "took {t:.1?}, limit {limit:?}");
    Ok(format!("{t:.1?}"))
}

fn flow_matches_oracle() -> Check {
    let start = Instant::now();
    let mut rng = random::seeded(101);
    let mut pairs = 0;
    for i in 0..100 {
        let n = 3 + i % 7;
        let (g, emb) = random::random_plane_st(n, rng.gen_range(0..=n / 2 + 1), &mut rng);
        let best = oracle(&g, Mode::FixedPlanar(&emb)).ok_or(format!("instance {i}: oracle found nothing"))?;
        for k in 1..=g.n() as i64 {
            let d = flow::solve_st_plane(&g, &emb, &vec![k; g.m()]).map_err(|e| e.to_string())?;
            ensure!(d.is_some() == (k >= best), "instance {i}, k = {k}: flow {}, oracle {best}", d.is_some());
            if let Some(d) = d {
                let rep = validate(&g, &d, Some(EmbeddingCheck::planar(&emb))).unwrap();
                ensure!(rep.is_valid() && rep.span <= k, "instance {i}, k = {k}: bad witness");
            }
            pairs += 1;
        }
    }
    let t = within(start, Duration::from_secs(300))?;
    Ok(format!("100 graphs, {pairs} (graph, k) pairs agree, {t}"))
}

fn caterpillars() -> Check {
    let mut rng = random::seeded(102);
    for i in 0..30 {
        let g = random::random_caterpillar(rng.gen_range(2..12), 4, &mut rng);
        let d = trees::draw_caterpillar(&g).map_err(|e| e.to_string())?;
        let rep = validate(&g, &d, None).unwrap();
        ensure!(rep.is_valid() && rep.span == 1, "caterpillar {i}: valid {}, span {}", rep.is_valid(), rep.span);
    }
    Ok("30 caterpillars drawn with span 1".into())
}

fn td3_tight() -> Check {
    let start = Instant::now();
    let mut out = Vec::new();
    for root in [Polarity::Sink, Polarity::Source] {
        let g = generators::gen_td(3, root).map_err(|e| e.to_string())?;
        let best = oracle(&g, Mode::Free);
        ensure!(best == Some(2), "{root:?}-rooted T_3: oracle {best:?}");
        let d = trees::draw_source_sink_tree(&g).map_err(|e| e.to_string())?;
        let rep = validate(&g, &d, None).unwrap();
        ensure!(rep.is_valid() && rep.span == 2, "{root:?}-rooted T_3: drawer span {}", rep.span);
        out.push(format!("{root:?} n = {}", g.n()));
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("oracle 2 = drawer 2 ({}), {t}", out.join(", ")))
}

fn spiral_bound() -> Check {
    let start = Instant::now();
    let mut got = Vec::new();
    let mut ok = true;
    for n in [5usize, 7] {
        let (g, ue) = generators::gen_spiral_path(n).map_err(|e| e.to_string())?;
        let fixed = oracle(&g, Mode::FixedUpward(&ue)).ok_or("no drawing respects the spiral embedding")?;
        let free = oracle(&g, Mode::Free);
        ensure!(free == Some(1), "P_{n}: free span {free:?}");
        let want = n.div_ceil(2) as i64;
        ok &= fixed >= want;
        got.push(format!("P_{n}: fixed {fixed} (want >= {want}), free 1"));
    }
    within(start, Duration::from_secs(600))?;
    ensure!(ok, "{}", got.join("; "));
    Ok(got.join("; "))
}

fn td_counts() -> Check {
    let n5 = generators::gen_td(5, Polarity::Sink).map_err(|e| e.to_string())?.n();
    ensure!(n5 == 36 && generators::td_size(5) == 36, "n_5 = {n5}");
    let mut parts = vec!["n_5 = 36".to_string()];
    for d in 7..=10usize {
        let nd = generators::gen_td(d, Polarity::Sink).map_err(|e| e.to_string())?.n();
        ensure!(nd == generators::td_size(d), "d = {d}: tree has {nd}, formula {}", generators::td_size(d));
        let fact: usize = (1..=d).product();
        ensure!(1usize << d < nd && nd < fact, "d = {d}: n_d = {nd} outside (2^d, d!)");
        parts.push(format!("n_{d} = {nd}"));
    }
    Ok(parts.join(", "))
}

fn np_witnesses() -> Check {
    let start = Instant::now();
    let inst = ThreePartitionInstance::new(vec![1, 1, 1, 2, 2, 3]).map_err(|e| e.to_string())?;
    let partition = vec![vec![1, 1, 3], vec![2, 2, 1]];
    let mut parts = Vec::new();
    for kind in [WitnessKind::SingleSource, WitnessKind::Tree] {
        let (g, d) = generators::witness_drawing(kind, &inst, &partition).map_err(|e| e.to_string())?;
        let rep = validate(&g, &d, None).unwrap();
        ensure!(rep.is_valid() && rep.span == 2, "{kind:?}: valid {}, span {}", rep.is_valid(), rep.span);
        parts.push(format!("{kind:?} n = {}", g.n()));
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("span 2 ({}), {t}", parts.join(", ")))
}

fn greedy() -> Check {
    let start = Instant::now();
    let mut rng = random::seeded(107);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = rng.gen_range(1..=60);
        let g = random::random_tree(n, &mut rng);
        let dec = trees::greedy_decompose(&g, rng.gen_range(0..n)).map_err(|e| e.to_string())?;
        ensure!(dec.partition_holds() && dec.chan_holds(), "tree {i}: {dec:?}");
        let d = trees::draw_greedy(&g).map_err(|e| e.to_string())?;
        ensure!(validate(&g, &d, None).unwrap().is_valid(), "tree {i}: invalid drawing");
        let ell = g.longest_path() as i64;
        let bound = (2.0 * (n as f64).powf(trees::gamma()) - 1.0).ceil() as i64 * (ell + 1);
        ensure!(d.layers() <= bound, "tree {i}: {} layers > {bound}", d.layers());
        worst = worst.max(d.layers() as f64 / bound as f64);
    }
    let t = within(start, Duration::from_secs(120))?;
    Ok(format!("100 trees, layers/bound at most {worst:.2}, {t}"))
}

fn bounded_indegree() -> Check {
    let mut rng = random::seeded(108);
    for i in 0..100 {
        let n = rng.gen_range(1..=50);
        let g = random::random_tree(n, &mut rng);
        let (d, metrics) = trees::draw_bounded_indegree_with_metrics(&g).map_err(|e| e.to_string())?;
        let rep = validate(&g, &d, None).unwrap();
        ensure!(rep.is_valid(), "tree {i}: {:?}", rep.violations);
        let dp = metrics.first().map_or(0, |m| m.d_plus);
        let bound = trees::geometric_bound(dp, g.longest_path());
        ensure!(rep.span <= bound, "tree {i}: span {} > {bound}", rep.span);
    }
    Ok("100 trees within the geometric bound".into())
}

fn xp() -> Check {
    let start = Instant::now();
    let mut rng = random::seeded(109);
    let mut done = 0;
    while done < 50 {
        let drop = if done % 2 == 0 { 0.2 } else { 0.35 };
        let (g, ue) = random::random_upward_plane_with(3 + done % 5, false, drop, &mut rng);
        let z = g.sources().len();
        if g.n() > 8 || !(2..=3).contains(&z) {
            continue;
        }
        done += 1;
        let emb = ue.base;
        let best = oracle(&g, Mode::FixedPlanar(&emb)).ok_or(format!("graph {done}: oracle found nothing"))?;
        for k in 1..=best {
            let d = classes::solve_plane_multisource_xp(&g, &emb, k).map_err(|e| e.to_string())?;
            ensure!(d.is_some() == (k == best), "graph {done}, k = {k}: xp {}, oracle {best}", d.is_some());
            if let Some(d) = d {
                let rep = validate(&g, &d, Some(EmbeddingCheck::planar(&emb))).unwrap();
                ensure!(rep.is_valid() && rep.span <= k, "graph {done}: bad witness");
            }
        }
    }
    let t = within(start, Duration::from_secs(600))?;
    Ok(format!("50 graphs agree, {t}"))
}

/// Random DAG in which every edge touches the first `c` vertices.
fn small_cover_graph<R: Rng>(n: usize, c: usize, rng: &mut R) -> (Dag, Vec<usize>) {
    let mut edges = Vec::new();
    for a in 0..c {
        for b in a + 1..c {
            if rng.gen_bool(0.5) {
                edges.push((a, b));
            }
        }
    }
    for w in c..n {
        let mut cover: Vec<usize> = (0..c).collect();
        cover.shuffle(rng);
        for &a in &cover[..rng.gen_range(1..=c.min(2))] {
            edges.push((a, w));
        }
    }
    // orient along a random order
    let mut pos: Vec<usize> = (0..n).collect();
    pos.shuffle(rng);
    let edges: Vec<(usize, usize)> =
        edges.into_iter().map(|(a, b)| if pos[a] < pos[b] { (a, b) } else { (b, a) }).collect();
    (Dag::from_edges(n, &edges).unwrap(), (0..c).collect())
}

/// Kernel answers against the oracle for every k up to one past the optimum.
fn kernel_agrees(g: &Dag, cover: &[usize], best: Option<i64>, what: &str) -> Result<(), String> {
    match kernel::reduce(g, cover) {
        Ok(kern) => ensure!(kern.kernel.n() <= 44 * kern.k().max(1), "{what}: kernel has {} vertices", kern.kernel.n()),
        Err(KernelError::SizeBound { .. }) => {
            ensure!(best.is_none(), "{what}: size bound fired on a drawable graph");
            return Ok(());
        }
        Err(e) => return Err(format!("{what}: {e}")),
    }
    let top = best.unwrap_or(g.n() as i64);
    for k in (1..=top).rev().take(2) {
        let d = kernel::span_leq_via_vc(g, cover, k, &budget(g.n())).map_err(|e| format!("{what}: {e}"))?;
        let want = best.is_some_and(|b| k >= b);
        ensure!(d.is_some() == want, "{what}, k = {k}: kernel {}, oracle {best:?}", d.is_some());
        if let Some(d) = d {
            let rep = validate(g, &d, None).unwrap();
            ensure!(rep.is_valid() && rep.span <= k, "{what}, k = {k}: bad witness");
        }
    }
    Ok(())
}

fn kernel_soundness() -> Check {
    let start = Instant::now();
    let mut spans = Vec::new();
    for s in 1..=4 {
        let (g, poles) = generators::gen_k22s(s).map_err(|e| e.to_string())?;
        let best = oracle(&g, Mode::Free);
        ensure!(best.is_some_and(|b| b >= s as i64), "K_(2,{}): oracle {best:?}", 2 * s);
        kernel_agrees(&g, &poles, best, &format!("K_(2,{})", 2 * s))?;
        spans.push(best.unwrap().to_string());
    }
    let mut rng = random::seeded(110);
    for i in 0..50 {
        let n = rng.gen_range(4..=9);
        let c = rng.gen_range(1..=3);
        let (g, cover) = small_cover_graph(n, c, &mut rng);
        let best = oracle(&g, Mode::Free);
        kernel_agrees(&g, &cover, best, &format!("graph {i}"))?;
    }
    Ok(format!("K_(2,2s) spans {} for s = 1..4, 50 random graphs agree, {:.1?}", spans.join(", "), start.elapsed()))
}

fn augmentation() -> Check {
    let mut rng = random::seeded(111);
    let mut total = 0;
    for i in 0..50 {
        let (g, ue) = random::random_upward_plane(3 + i % 7, true, &mut rng);
        let mut found = false;
        for k in 1..=g.n() as i64 {
            let aug = classes::augment_single_source(&g, &ue, k).map_err(|e| e.to_string())?;
            let Some(d) = flow::solve_st_plane(&aug.dag, &aug.embedding, &aug.sigma).map_err(|e| e.to_string())? else {
                continue;
            };
            let back = aug.record.strip(&d);
            let rep = validate(&g, &back, Some(EmbeddingCheck::upward(&ue))).unwrap();
            ensure!(rep.is_valid() && rep.span <= k, "graph {i}, k = {k}: {:?}", rep.violations);
            total += 1;
            found = true;
        }
        ensure!(found, "graph {i}: no k admits a drawing");
    }
    Ok(format!("50 graphs, {total} stripped drawings validate"))
}

fn main() {
    let checks: [(&str, fn() -> Check); 11] = [
        ("flow equals oracle on plane st-graphs", flow_matches_oracle),
        ("caterpillars have span 1", caterpillars),
        ("T_3 source/sink tree is tight at 2", td3_tight),
        ("spiral paths need ceil(n/2) in their embedding", spiral_bound),
        ("T_d vertex counts", td_counts),
        ("3-partition witness drawings", np_witnesses),
        ("greedy decomposition and layer budget", greedy),
        ("bounded indegree span bound", bounded_indegree),
        ("XP equals oracle on multi-source plane graphs", xp),
        ("vertex-cover kernel equals oracle", kernel_soundness),
        ("augmentation strips back", augmentation),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in checks.iter().enumerate() {
        let res = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match res {
            Ok(detail) => println!("acceptance {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("acceptance {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
