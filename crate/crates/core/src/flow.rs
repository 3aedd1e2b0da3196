//! Plane st-graphs: dual circulation network, feasibility, levels and an
//! embedding-preserving drawing.

use std::collections::VecDeque;

use thiserror::Error;

use crate::drawing::{q, LayeredDrawing, Q};
use crate::embedding::{self, CornerKind, EmbeddingError, FaceSet, PlanarEmbedding};
use crate::graph::Dag;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("not an st-graph: {0}")]
    NotStGraph(String),
    #[error("source or sink is not on the outer face")]
    StNotOnOuterFace,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("span bound must be at least 1 for every edge")]
    BadSigma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub lower: i64,
    pub upper: i64,
}

/// Nodes are internal faces plus `s_star` and `t_star`; arc `e` is the dual
/// of graph edge `e` and the last arc returns from `t_star` to `s_star`.
#[derive(Debug, Clone)]
pub struct DualFlowNetwork {
    pub num_nodes: usize,
    pub s_star: usize,
    pub t_star: usize,
    pub arcs: Vec<Arc>,
    /// Node of each face (outer face maps to `None`).
    pub face_node: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circulation {
    pub flow: Vec<i64>,
}

/// Source, sink and faces of a validated plane st-graph.
#[derive(Debug, Clone)]
pub struct StInfo {
    pub s: usize,
    pub t: usize,
    pub faces: FaceSet,
}

pub fn check_plane_st(dag: &Dag, emb: &PlanarEmbedding) -> Result<StInfo, FlowError> {
    let sources = dag.sources();
    let sinks = dag.sinks();
    if sources.len() != 1 || sinks.len() != 1 {
        return Err(FlowError::NotStGraph(format!("{} sources, {} sinks", sources.len(), sinks.len())));
    }
    if dag.m() == 0 {
        return Err(FlowError::NotStGraph("no edges".into()));
    }
    let faces = embedding::faces(dag, emb)?;
    if !embedding::is_bimodal(dag.edges(), &emb.rotation) {
        return Err(FlowError::NotStGraph("rotation is not bimodal".into()));
    }
    let (s, t) = (sources[0], sinks[0]);
    let outer = &faces.faces[faces.outer];
    if !outer.corners.iter().any(|c| c.vertex == s) || !outer.corners.iter().any(|c| c.vertex == t) {
        return Err(FlowError::StNotOnOuterFace);
    }
    for (i, f) in faces.faces.iter().enumerate() {
        let src = f.corners.iter().filter(|c| c.kind(dag.edges()) == CornerKind::SourceSwitch).count();
        let snk = f.corners.iter().filter(|c| c.kind(dag.edges()) == CornerKind::SinkSwitch).count();
        if src != 1 || snk != 1 {
            return Err(FlowError::NotStGraph(format!("face {i} has {src} source and {snk} sink switches")));
        }
    }
    Ok(StInfo { s, t, faces })
}

pub fn build_dual_network(dag: &Dag, emb: &PlanarEmbedding, sigma: &[i64]) -> Result<DualFlowNetwork, FlowError> {
    let info = check_plane_st(dag, emb)?;
    if sigma.len() != dag.m() || sigma.iter().any(|&s| s < 1) {
        return Err(FlowError::BadSigma);
    }
    let fs = &info.faces;
    let mut face_node = vec![None; fs.faces.len()];
    let mut next = 0;
    for (i, slot) in face_node.iter_mut().enumerate() {
        if i != fs.outer {
            *slot = Some(next);
            next += 1;
        }
    }
    let (s_star, t_star) = (next, next + 1);
    let mut arcs = Vec::with_capacity(dag.m() + 1);
    for e in 0..dag.m() {
        let left = face_node[fs.dart_face[2 * e]].unwrap_or(s_star);
        let right = face_node[fs.dart_face[2 * e + 1]].unwrap_or(t_star);
        arcs.push(Arc { from: left, to: right, lower: 1, upper: sigma[e] });
    }
    let big = dag.m() as i64 * sigma.iter().copied().max().unwrap_or(1);
    arcs.push(Arc { from: t_star, to: s_star, lower: 1, upper: big });
    Ok(DualFlowNetwork { num_nodes: next + 2, s_star, t_star, arcs, face_node })
}

struct Residual {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual { adj: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add(&mut self, a: usize, b: usize, c: i64) -> usize {
        let id = self.to.len();
        self.adj[a].push(id);
        self.to.push(b);
        self.cap.push(c);
        self.adj[b].push(id + 1);
        self.to.push(a);
        self.cap.push(0);
        id
    }

    /// Edmonds–Karp.
    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let mut prev = vec![usize::MAX; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                for &id in &self.adj[v] {
                    let w = self.to[id];
                    if self.cap[id] > 0 && !seen[w] {
                        seen[w] = true;
                        prev[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut bottleneck = i64::MAX;
            let mut v = t;
            while v != s {
                let id = prev[v];
                bottleneck = bottleneck.min(self.cap[id]);
                v = self.to[id ^ 1];
            }
            let mut v = t;
            while v != s {
                let id = prev[v];
                self.cap[id] -= bottleneck;
                self.cap[id ^ 1] += bottleneck;
                v = self.to[id ^ 1];
            }
            total += bottleneck;
        }
    }
}

/// Circulation within bounds on an arbitrary network, via lower-bound
/// elimination and max-flow.
pub fn feasible_circulation_raw(num_nodes: usize, arcs: &[Arc]) -> Option<Circulation> {
    if arcs.iter().any(|a| a.lower > a.upper) {
        return None;
    }
    let (ss, tt) = (num_nodes, num_nodes + 1);
    let mut r = Residual::new(num_nodes + 2);
    let mut excess = vec![0i64; num_nodes];
    let ids: Vec<usize> = arcs
        .iter()
        .map(|a| {
            excess[a.to] += a.lower;
            excess[a.from] -= a.lower;
            r.add(a.from, a.to, a.upper - a.lower)
        })
        .collect();
    let mut need = 0;
    for (v, &x) in excess.iter().enumerate() {
        if x > 0 {
            r.add(ss, v, x);
            need += x;
        } else if x < 0 {
            r.add(v, tt, -x);
        }
    }
    if r.max_flow(ss, tt) != need {
        return None;
    }
    let flow = arcs.iter().zip(&ids).map(|(a, &id)| a.lower + r.cap[id ^ 1]).collect();
    Some(Circulation { flow })
}

pub fn feasible_circulation(net: &DualFlowNetwork) -> Option<Circulation> {
    feasible_circulation_raw(net.num_nodes, &net.arcs)
}

/// Levels with y(s) = 0 and span(e) = X(e*). Panics if the circulation is
/// inconsistent, which conservation rules out.
pub fn levels_from_flow(dag: &Dag, s: usize, circ: &Circulation) -> Vec<i64> {
    let mut y = vec![i64::MIN; dag.n()];
    y[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for e in dag.incident(v) {
            let (t, h) = dag.edge(e);
            let (w, val) = if t == v { (h, y[v] + circ.flow[e]) } else { (t, y[v] - circ.flow[e]) };
            if y[w] == i64::MIN {
                y[w] = val;
                queue.push_back(w);
            } else {
                assert_eq!(y[w], val, "path sums disagree at vertex {w}");
            }
        }
    }
    y
}

/// Forward darts of a face from its source switch to its sink switch.
fn forward_run(edges: &[(usize, usize)], f: &embedding::Face) -> Vec<usize> {
    let k = f.darts.len();
    let start = f.corners.iter().position(|c| c.kind(edges) == CornerKind::SourceSwitch).unwrap();
    let mut run = Vec::new();
    for j in 1..=k {
        let d = f.darts[(start + j) % k];
        if d % 2 == 1 {
            break;
        }
        run.push(d / 2);
    }
    run
}

/// Embedding-preserving drawing of a plane st-graph for the given levels:
/// draw the left outer boundary, then add the right path of each internal
/// face in dual topological order, always to the right of what exists.
pub fn drawing_from_levels(dag: &Dag, emb: &PlanarEmbedding, y: &[i64]) -> Result<LayeredDrawing, FlowError> {
    let info = check_plane_st(dag, emb)?;
    let fs = &info.faces;
    let edges = dag.edges();
    let base = *y.iter().min().unwrap();
    let y: Vec<i64> = y.iter().map(|&l| l - base).collect();
    let height = *y.iter().max().unwrap() as usize + 1;
    let mut right_x: Vec<Option<Q>> = vec![None; height];
    let mut x: Vec<Option<Q>> = vec![None; dag.n()];
    let mut wires: Vec<Vec<Q>> = vec![Vec::new(); dag.m()];
    let place = |level: i64, right_x: &mut Vec<Option<Q>>| -> Q {
        let slot = &mut right_x[level as usize];
        let v = slot.map_or(q(0), |m| m + q(1));
        *slot = Some(v);
        v
    };
    let draw_path = |path: &[usize], x: &mut Vec<Option<Q>>, right_x: &mut Vec<Option<Q>>, wires: &mut Vec<Vec<Q>>| {
        for &e in path {
            let (t, h) = edges[e];
            if x[t].is_none() {
                x[t] = Some(place(y[t], right_x));
            }
            let mut w = vec![x[t].unwrap()];
            for l in y[t] + 1..y[h] {
                w.push(place(l, right_x));
            }
            if x[h].is_none() {
                x[h] = Some(place(y[h], right_x));
            }
            w.push(x[h].unwrap());
            wires[e] = w;
        }
    };
    let p0 = forward_run(edges, &fs.faces[fs.outer]);
    draw_path(&p0, &mut x, &mut right_x, &mut wires);
    // dual order among internal faces
    let nf = fs.faces.len();
    let mut indeg = vec![0usize; nf];
    let mut succ = vec![Vec::new(); nf];
    for e in 0..dag.m() {
        let (l, r) = (fs.dart_face[2 * e], fs.dart_face[2 * e + 1]);
        if l != fs.outer && r != fs.outer {
            succ[l].push(r);
            indeg[r] += 1;
        }
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..nf).filter(|&f| f != fs.outer && indeg[f] == 0).collect();
    while let Some(f) = ready.pop_first() {
        let path = forward_run(edges, &fs.faces[f]);
        draw_path(&path, &mut x, &mut right_x, &mut wires);
        for &g in &succ[f] {
            indeg[g] -= 1;
            if indeg[g] == 0 {
                ready.insert(g);
            }
        }
    }
    let mut d = LayeredDrawing {
        level: y,
        x: x.into_iter().map(|v| v.expect("every vertex lies on a face path")).collect(),
        wires,
    };
    d.normalize_x(dag);
    Ok(d)
}

/// Decide whether an embedding-preserving drawing with span(e) ≤ σ(e)
/// exists, and build one.
pub fn solve_st_plane(dag: &Dag, emb: &PlanarEmbedding, sigma: &[i64]) -> Result<Option<LayeredDrawing>, FlowError> {
    let net = build_dual_network(dag, emb, sigma)?;
    let Some(circ) = feasible_circulation(&net) else {
        return Ok(None);
    };
    let s = dag.sources()[0];
    let y = levels_from_flow(dag, s, &circ);
    drawing_from_levels(dag, emb, &y).map(Some)
}
