//! `layerspan`: batch front end over the library.
//!
//! Exit codes: 0 yes / ok, 1 no / infeasible / invalid drawing, 2 usage or
//! input error. Reports go to stdout as JSON with sorted keys, so identical
//! inputs and `--seed` give identical bytes.
//!
//! `span --method auto` picks a solver as follows:
//! 1. one source and one sink, planar: the flow solver (on the file's
//!    rotation when it has one, else on a computed st-embedding);
//! 2. one source: the single-source solver (upward-plane with large angles,
//!    plane with a rotation, free when outerplanar);
//! 3. at most `--max-vertices` vertices: the exact search, fixed to the
//!    file's embedding when it has one;
//! 4. otherwise it refuses; XP and the kernel must be asked for by name.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use layerspan::classes::{self, SingleSourceMode};
use layerspan::drawing::{self, EmbeddingCheck, LayeredDrawing};
use layerspan::embedding;
use layerspan::exact::{self, ExactError, Mode, SearchBudget};
use layerspan::generators::{self, random, Polarity, ThreePartitionInstance, WitnessKind};
use layerspan::graph::Dag;
use layerspan::io::{parse_graph, GraphFile};
use layerspan::kernel::{self, KernelError};
use layerspan::{flow, trees};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "layerspan", version, about = "Span of upward-planar layered drawings")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    SpiralPath,
    #[value(name = "spiral-3c")]
    Spiral3c,
    Binary,
    #[value(name = "Td")]
    Td,
    EvenTree,
    Composed,
    K22s,
    RandomTree,
    RandomCaterpillar,
    RandomSt,
    RandomUpward,
    RandomDag,
}

#[derive(Clone, Copy, ValueEnum)]
enum Root {
    Source,
    Sink,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Flow,
    Xp,
    Kernel,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Caterpillar,
    SourceSink,
    BoundedIndegree,
    Greedy,
    Flow,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    SingleSource,
    Tree,
}

impl Variant {
    fn kind(self) -> WitnessKind {
        match self {
            Variant::SingleSource => WitnessKind::SingleSource,
            Variant::Tree => WitnessKind::Tree,
        }
    }
}

#[derive(Subcommand)]
enum Verb {
    /// Emit an instance of a named family as a graph file.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Vertex count (spirals, binary, random families).
        #[arg(long)]
        n: Option<usize>,
        /// Depth parameter d (Td, even-tree, composed).
        #[arg(long)]
        d: Option<usize>,
        /// Branching or span parameter ell (binary, composed); leaves per
        /// spine vertex for random-caterpillar.
        #[arg(long)]
        ell: Option<usize>,
        /// Half the number of middle vertices of K_{2,2s}.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, value_enum, default_value = "sink")]
        root: Root,
        /// Edge probability for random-dag.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Decide span <= k, or compute the minimum span with the exact method.
    Span {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        #[arg(long)]
        k: Option<i64>,
        /// Treat the graph as unembedded even if the file has a rotation.
        #[arg(long)]
        free: bool,
        /// Comma separated vertex cover for the kernel (default: greedy).
        #[arg(long)]
        cover: Option<String>,
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        /// Give up after this many seconds.
        #[arg(long)]
        time_limit: Option<u64>,
        /// Write the witness drawing here (.json and .svg).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Draw a graph with one of the constructive algorithms.
    Draw {
        graph: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Span bound for the flow algorithm (default: smallest feasible).
        #[arg(long)]
        k: Option<i64>,
        /// Write PATH.json and PATH.svg instead of printing.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Validate a drawing against its graph.
    Check {
        drawing: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Also require the embedding stored in the graph file.
        #[arg(long)]
        embedding: bool,
        /// With --embedding, accept the mirror image too.
        #[arg(long)]
        reflection: bool,
    },
    /// Report the kernel of a graph for a vertex cover.
    Kernel {
        graph: PathBuf,
        #[arg(long)]
        cover: Option<String>,
        /// Write the kernel graph here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the gadget graph of a 3-partition instance.
    Reduce3p {
        instance: PathBuf,
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Span-2 witness drawing of a gadget graph from a partition.
    Witness {
        instance: PathBuf,
        #[arg(long, value_enum)]
        variant: Variant,
        /// Groups separated by ';', numbers by ','; searched for when absent.
        #[arg(long)]
        partition: Option<String>,
        /// Also write the gadget graph here.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// `Ok(true)` is exit 0, `Ok(false)` exit 1, `Err` exit 2.
type Outcome = Result<bool, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.verb {
        Verb::Gen { family, n, d, ell, s, root, p, out } => {
            gen(family, Params { n, d, ell, s, root, p, seed: cli.seed }, out.as_deref())
        }
        Verb::Span { graph, method, k, free, cover, max_vertices, time_limit, out } => {
            let mut budget = SearchBudget::default().with_max_vertices(max_vertices);
            if let Some(t) = time_limit {
                budget = budget.with_time_limit(Duration::from_secs(t));
            }
            let mut file = read_graph(&graph)?;
            if free {
                file.embedding = None;
                file.large_angles = None;
            }
            span(&file, method, k, cover.as_deref(), &budget, out.as_deref())
        }
        Verb::Draw { graph, algo, k, out, format } => draw(&read_graph(&graph)?, algo, k, out.as_deref(), format),
        Verb::Check { drawing, graph, embedding, reflection } => {
            check(&read_graph(&graph)?, &read(&drawing)?, embedding, reflection)
        }
        Verb::Kernel { graph, cover, out } => kernel_report(&read_graph(&graph)?, cover.as_deref(), out.as_deref()),
        Verb::Reduce3p { instance, variant, out } => {
            let inst = read_instance(&instance)?;
            let (dag, map) = match variant {
                Variant::SingleSource => generators::gen_np_single_source(&inst),
                Variant::Tree => generators::gen_np_tree(&inst),
            }
            .map_err(|e| e.to_string())?;
            let gadget = serde_json::to_value(&map).map_err(|e| e.to_string())?;
            let tags = json!({ "family": "reduce3p", "variant": variant_name(variant), "gadget": gadget });
            write_text(out.as_deref(), &GraphFile::plain(dag).with_tags(tags).to_json())?;
            Ok(true)
        }
        Verb::Witness { instance, variant, partition, graph_out, out, format } => {
            let inst = read_instance(&instance)?;
            let groups = match partition {
                Some(p) => parse_partition(&p)?,
                None => match inst.solve() {
                    Some(g) => g,
                    None => {
                        println!("{}", report(json!({ "partition": null })));
                        return Ok(false);
                    }
                },
            };
            let (dag, d) = generators::witness_drawing(variant.kind(), &inst, &groups).map_err(|e| e.to_string())?;
            if let Some(path) = graph_out {
                let tags = json!({ "family": "reduce3p", "variant": variant_name(variant) });
                write_text(Some(&path), &GraphFile::plain(dag.clone()).with_tags(tags).to_json())?;
            }
            emit_drawing(&dag, &d, out.as_deref(), format)?;
            Ok(true)
        }
    }
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::SingleSource => "single-source",
        Variant::Tree => "tree",
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_graph(path: &Path) -> Result<GraphFile, String> {
    parse_graph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// Either `{"a": [...]}` or a bare array of numbers.
fn read_instance(path: &Path) -> Result<ThreePartitionInstance, String> {
    let v: Value = serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let arr = v.get("a").unwrap_or(&v);
    let a: Vec<u64> = serde_json::from_value(arr.clone()).map_err(|e| format!("{}: {e}", path.display()))?;
    ThreePartitionInstance::new(a).map_err(|e| e.to_string())
}

fn parse_partition(s: &str) -> Result<Vec<Vec<u64>>, String> {
    s.split(';')
        .map(|g| {
            g.split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|_| format!("bad number {x:?} in partition")))
                .collect()
        })
        .collect()
}

fn parse_cover(dag: &Dag, cover: Option<&str>) -> Result<Vec<usize>, String> {
    match cover {
        None => Ok(kernel::greedy_cover(dag)),
        Some(list) => list
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|id| dag.vertex(id.trim()).ok_or_else(|| format!("unknown vertex {id:?} in cover")))
            .collect(),
    }
}

fn report(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("report serializes")
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| format!("{}: {e}", p.display())),
    }
}

fn emit_drawing(dag: &Dag, d: &LayeredDrawing, out: Option<&Path>, format: Format) -> Result<(), String> {
    match out {
        Some(p) => {
            write_text(Some(&p.with_extension("json")), &drawing::to_json(dag, d))?;
            write_text(Some(&p.with_extension("svg")), &drawing::to_svg(dag, d))
        }
        None => match format {
            Format::Json => write_text(None, &drawing::to_json(dag, d)),
            Format::Svg => write_text(None, &drawing::to_svg(dag, d)),
        },
    }
}

struct Params {
    n: Option<usize>,
    d: Option<usize>,
    ell: Option<usize>,
    s: Option<usize>,
    root: Root,
    p: f64,
    seed: u64,
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, String> {
    v.ok_or_else(|| format!("this family needs --{flag}"))
}

fn gen(family: Family, p: Params, out: Option<&Path>) -> Outcome {
    let polarity = match p.root {
        Root::Source => Polarity::Source,
        Root::Sink => Polarity::Sink,
    };
    let mut rng = random::seeded(p.seed);
    let e = |e: generators::GenError| e.to_string();
    let file = match family {
        Family::SpiralPath => {
            let n = need(p.n, "n")?;
            let (g, ue) = generators::gen_spiral_path(n).map_err(e)?;
            GraphFile::upward(g, ue).with_tags(json!({ "family": "spiral-path", "n": n }))
        }
        Family::Spiral3c => {
            let n = need(p.n, "n")?;
            GraphFile::plain(generators::gen_spiral_3connected(n).map_err(e)?)
                .with_tags(json!({ "family": "spiral-3c", "n": n }))
        }
        Family::Binary => {
            let (ell, n) = (need(p.ell, "ell")?, need(p.n, "n")?);
            GraphFile::plain(generators::gen_binary_lower(ell, n).map_err(e)?)
                .with_tags(json!({ "family": "binary", "ell": ell, "n": n }))
        }
        Family::Td => {
            let d = need(p.d, "d")?;
            let root = if matches!(p.root, Root::Source) { "source" } else { "sink" };
            GraphFile::plain(generators::gen_td(d, polarity).map_err(e)?)
                .with_tags(json!({ "family": "Td", "d": d, "root": root }))
        }
        Family::EvenTree => {
            let d = need(p.d, "d")?;
            let t = generators::gen_even_lower_tree(d).map_err(e)?;
            let copies: Vec<Vec<&str>> = t.copies.iter().map(|c| c.iter().map(|&v| t.dag.id(v)).collect()).collect();
            let tags = json!({ "family": "even-tree", "d": d, "copies": copies });
            GraphFile::plain(t.dag.clone()).with_tags(tags)
        }
        Family::Composed => {
            let (d, ell) = (need(p.d, "d")?, need(p.ell, "ell")?);
            GraphFile::plain(generators::gen_composed_tree(d, ell).map_err(e)?)
                .with_tags(json!({ "family": "composed", "d": d, "ell": ell }))
        }
        Family::K22s => {
            let s = need(p.s, "s")?;
            let (g, [u, v]) = generators::gen_k22s(s).map_err(e)?;
            let tags = json!({ "family": "k22s", "s": s, "poles": [g.id(u), g.id(v)] });
            GraphFile::plain(g).with_tags(tags)
        }
        Family::RandomTree => {
            let n = need(p.n, "n")?;
            GraphFile::plain(random::random_tree(n, &mut rng))
                .with_tags(json!({ "family": "random-tree", "n": n, "seed": p.seed }))
        }
        Family::RandomCaterpillar => {
            let n = need(p.n, "n")?;
            let leaves = p.ell.unwrap_or(3);
            GraphFile::plain(random::random_caterpillar(n, leaves, &mut rng))
                .with_tags(json!({ "family": "random-caterpillar", "n": n, "ell": leaves, "seed": p.seed }))
        }
        Family::RandomSt => {
            let n = need(p.n, "n")?;
            if n < 3 {
                return Err("random-st needs --n >= 3".into());
            }
            let (g, emb) = random::random_plane_st(n, n / 2, &mut rng);
            GraphFile::planar(g, emb).with_tags(json!({ "family": "random-st", "n": n, "seed": p.seed }))
        }
        Family::RandomUpward => {
            let n = need(p.n, "n")?;
            if n < 2 {
                return Err("random-upward needs --n >= 2".into());
            }
            let (g, ue) = random::random_upward_plane(n, false, &mut rng);
            GraphFile::upward(g, ue).with_tags(json!({ "family": "random-upward", "n": n, "seed": p.seed }))
        }
        Family::RandomDag => {
            let n = need(p.n, "n")?;
            if !(0.0..=1.0).contains(&p.p) {
                return Err("--p must lie in [0, 1]".into());
            }
            GraphFile::plain(random::random_dag(n, p.p, &mut rng))
                .with_tags(json!({ "family": "random-dag", "n": n, "p": p.p, "seed": p.seed }))
        }
    };
    write_text(out, &file.to_json())?;
    Ok(true)
}

/// Answer of one solver: `None` when span <= k is infeasible.
struct Answer {
    method: &'static str,
    drawing: Option<LayeredDrawing>,
}

fn need_k(k: Option<i64>, method: &str) -> Result<i64, String> {
    k.ok_or_else(|| format!("--method {method} needs --k"))
}

fn span(
    file: &GraphFile,
    method: Method,
    k: Option<i64>,
    cover: Option<&str>,
    budget: &SearchBudget,
    out: Option<&Path>,
) -> Outcome {
    let dag = &file.dag;
    if method == Method::Exact && k.is_none() {
        let sol = run_exact(file, budget)?;
        let min = sol.as_ref().map(|s| s.span);
        println!("{}", report(json!({ "method": "exact", "min_span": min, "feasible": min.is_some() })));
        if let (Some(s), Some(p)) = (&sol, out) {
            emit_drawing(dag, &s.drawing, Some(p), Format::Json)?;
        }
        return Ok(sol.is_some());
    }
    let ans = match method {
        Method::Exact => {
            let k = need_k(k, "exact")?;
            let sol = run_exact(file, budget)?;
            Answer { method: "exact", drawing: sol.filter(|s| s.span <= k).map(|s| s.drawing) }
        }
        Method::Flow => Answer { method: "flow", drawing: run_flow(file, need_k(k, "flow")?)? },
        Method::Xp => {
            let k = need_k(k, "xp")?;
            let emb = file.embedding.as_ref().ok_or("--method xp needs a graph file with a rotation")?;
            let d = classes::solve_plane_multisource_xp(dag, emb, k).map_err(|e| e.to_string())?;
            Answer { method: "xp", drawing: d }
        }
        Method::Kernel => {
            let k = need_k(k, "kernel")?;
            let cover = parse_cover(dag, cover)?;
            let d = match kernel::span_leq_via_vc(dag, &cover, k, budget) {
                Ok(d) => d,
                Err(KernelError::SizeBound { .. }) => None,
                Err(e) => return Err(e.to_string()),
            };
            Answer { method: "kernel", drawing: d }
        }
        Method::Auto => auto(file, need_k(k, "auto")?, budget)?,
    };
    let feasible = ans.drawing.is_some();
    let span = ans.drawing.as_ref().map(|d| drawing::span_of(dag, d).expect("solver drawings are upward"));
    println!("{}", report(json!({ "method": ans.method, "k": k, "feasible": feasible, "span": span })));
    if let (Some(d), Some(p)) = (&ans.drawing, out) {
        emit_drawing(dag, d, Some(p), Format::Json)?;
    }
    Ok(feasible)
}

/// Minimum span under the file's embedding; `None` when no drawing
/// respects it.
fn run_exact(file: &GraphFile, budget: &SearchBudget) -> Result<Option<exact::ExactSolution>, String> {
    let ue = file.upward_embedding();
    let mode = match (&ue, &file.embedding) {
        (Some(ue), _) => Mode::FixedUpward(ue),
        (None, Some(e)) => Mode::FixedPlanar(e),
        (None, None) => Mode::Free,
    };
    match exact::min_span_exact(&file.dag, mode, budget) {
        Ok(s) => Ok(Some(s)),
        Err(ExactError::Infeasible) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn run_flow(file: &GraphFile, k: i64) -> Result<Option<LayeredDrawing>, String> {
    let dag = &file.dag;
    match &file.embedding {
        Some(emb) => flow::solve_st_plane(dag, emb, &vec![k; dag.m()]).map_err(|e| e.to_string()),
        None => classes::solve_st_planar(dag, k).map_err(|e| e.to_string()),
    }
}

fn auto(file: &GraphFile, k: i64, budget: &SearchBudget) -> Result<Answer, String> {
    let dag = &file.dag;
    let st_shaped = dag.sources().len() == 1 && dag.sinks().len() == 1;
    let st_ok = match &file.embedding {
        Some(emb) => flow::check_plane_st(dag, emb).is_ok(),
        None => st_shaped && classes::st_embedding(dag).is_ok(),
    };
    if st_ok {
        return Ok(Answer { method: "flow", drawing: run_flow(file, k)? });
    }
    if dag.sources().len() == 1 && dag.is_connected() {
        let ue = file.upward_embedding();
        let mode = match (&ue, &file.embedding) {
            (Some(ue), _) => Some(SingleSourceMode::UpwardPlane(ue)),
            (None, Some(e)) => Some(SingleSourceMode::Plane(e)),
            (None, None) if embedding::outerplanar_embedding(dag).is_some() => Some(SingleSourceMode::FreeOuterplanar),
            _ => None,
        };
        if let Some(mode) = mode {
            let d = classes::solve_single_source(dag, k, mode).map_err(|e| e.to_string())?;
            return Ok(Answer { method: "single-source", drawing: d });
        }
    }
    if dag.n() <= budget.max_vertices {
        let d = run_exact(file, budget)?.filter(|s| s.span <= k).map(|s| s.drawing);
        return Ok(Answer { method: "exact", drawing: d });
    }
    Err(format!("no automatic method for {} vertices; ask for --method xp or --method kernel", dag.n()))
}

fn draw(file: &GraphFile, algo: Algo, k: Option<i64>, out: Option<&Path>, format: Format) -> Outcome {
    let dag = &file.dag;
    let tree = |r: Result<LayeredDrawing, trees::TreeError>| r.map(Some).map_err(|e| e.to_string());
    let d = match algo {
        Algo::Caterpillar => tree(trees::draw_caterpillar(dag))?,
        Algo::SourceSink => tree(trees::draw_source_sink_tree(dag))?,
        Algo::BoundedIndegree => tree(trees::draw_bounded_indegree(dag))?,
        Algo::Greedy => tree(trees::draw_greedy(dag))?,
        Algo::Flow => match k {
            Some(k) => run_flow(file, k)?,
            None => {
                // smallest feasible k; n - 1 always suffices for an st-graph
                let mut found = None;
                for k in 1..dag.n().max(2) as i64 {
                    if let Some(d) = run_flow(file, k)? {
                        found = Some(d);
                        break;
                    }
                }
                found
            }
        },
    };
    match d {
        Some(d) => {
            emit_drawing(dag, &d, out, format)?;
            Ok(true)
        }
        None => {
            eprintln!("no drawing within the requested span");
            Ok(false)
        }
    }
}

fn check(file: &GraphFile, text: &str, with_embedding: bool, reflection: bool) -> Outcome {
    let dag = &file.dag;
    let d = drawing::from_json(dag, text).map_err(|e| e.to_string())?;
    let ue = file.upward_embedding();
    let check = if with_embedding {
        let c = match (&ue, &file.embedding) {
            (Some(ue), _) => EmbeddingCheck::upward(ue),
            (None, Some(e)) => EmbeddingCheck::planar(e),
            (None, None) => return Err("--embedding needs a graph file with a rotation".into()),
        };
        Some(if reflection { c.with_reflection() } else { c })
    } else {
        None
    };
    let r = drawing::validate(dag, &d, check).map_err(|e| e.to_string())?;
    let violations: Vec<String> = r.violations.iter().map(ToString::to_string).collect();
    println!(
        "{}",
        report(json!({
            "valid": r.is_valid(),
            "span": r.span,
            "upward": r.upward_ok,
            "planar": r.planar_ok,
            "embedding": r.embedding_ok,
            "violations": violations,
        }))
    );
    Ok(r.is_valid())
}

fn kernel_report(file: &GraphFile, cover: Option<&str>, out: Option<&Path>) -> Outcome {
    let dag = &file.dag;
    let cover = parse_cover(dag, cover)?;
    let kern = match kernel::reduce(dag, &cover) {
        Ok(k) => k,
        Err(e @ KernelError::SizeBound { .. }) => {
            println!("{}", report(json!({ "planar_possible": false, "reason": e.to_string() })));
            return Ok(false);
        }
        Err(e) => return Err(e.to_string()),
    };
    let cover_ids: Vec<&str> = kern.cover.iter().map(|&v| dag.id(v)).collect();
    let constraints: Vec<Value> = kern
        .constraints
        .iter()
        .map(|c| {
            json!({
                "pair": [dag.id(c.pair.0), dag.id(c.pair.1)],
                "upper": c.upper,
                "required": c.required,
                "removed": c.removed.len(),
            })
        })
        .collect();
    println!(
        "{}",
        report(json!({
            "planar_possible": true,
            "cover": cover_ids,
            "k": kern.k(),
            "n": dag.n(),
            "kernel_vertices": kern.kernel.n(),
            "kernel_edges": kern.kernel.m(),
            "copies": kern.copies.len(),
            "isolated": kern.isolated.len(),
            "constraints": constraints,
        }))
    );
    if let Some(p) = out {
        write_text(Some(p), &GraphFile::plain(kern.kernel.clone()).to_json())?;
    }
    Ok(true)
}
