//! Instance generators: lower-bound families, hardness reductions and
//! random samples.

pub mod hardness;
pub mod random;

use thiserror::Error;

use crate::embedding::{PlanarEmbedding, UpwardEmbedding};
use crate::graph::Dag;

pub use hardness::{
    gen_np_single_source, gen_np_tree, witness_drawing, GadgetMap, ThreePartitionInstance, WitnessKind,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("need at least {min} vertices, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("invalid 3-partition instance: {0}")]
    InvalidInstance(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

/// Incremental graph construction with a role string per vertex and edge.
#[derive(Debug, Default)]
pub(crate) struct Builder {
    ids: Vec<String>,
    roles: Vec<String>,
    edges: Vec<(usize, usize)>,
    edge_roles: Vec<String>,
}

impl Builder {
    pub(crate) fn vertex(&mut self, id: impl Into<String>, role: &str) -> usize {
        self.ids.push(id.into());
        self.roles.push(role.to_string());
        self.ids.len() - 1
    }

    pub(crate) fn edge(&mut self, t: usize, h: usize, role: &str) {
        self.edges.push((t, h));
        self.edge_roles.push(role.to_string());
    }

    /// Path of `len` new vertices hanging from `from`; `up` directs edges
    /// away from `from`. Returns the path including `from`.
    pub(crate) fn path(&mut self, from: usize, len: usize, up: bool, prefix: &str, role: &str) -> Vec<usize> {
        let mut p = vec![from];
        for k in 1..=len {
            let v = self.vertex(format!("{prefix}.{k}"), role);
            let last = *p.last().unwrap();
            if up {
                self.edge(last, v, role);
            } else {
                self.edge(v, last, role);
            }
            p.push(v);
        }
        p
    }

    pub(crate) fn n(&self) -> usize {
        self.ids.len()
    }

    /// The DAG plus vertex and edge roles, edge roles in DAG edge order.
    pub(crate) fn finish(self) -> (Dag, Vec<String>, Vec<String>) {
        let dag = Dag::from_indices(self.ids, self.edges.clone()).expect("generator builds a simple DAG");
        let mut edge_roles = vec![String::new(); dag.m()];
        for (&(t, h), role) in self.edges.iter().zip(self.edge_roles) {
            edge_roles[dag.find_edge(t, h).unwrap()] = role;
        }
        (dag, self.roles, edge_roles)
    }
}

fn alternating_edges(len: usize) -> Vec<(usize, usize)> {
    // vertex i (0-based) is a source when i is even
    (0..len.saturating_sub(1)).map(|i| if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) }).collect()
}

/// Alternating path v1..vn (odd vertices are sources) with the upward
/// embedding that puts every large angle on the same side.
pub fn gen_spiral_path(n: usize) -> Result<(Dag, UpwardEmbedding), GenError> {
    if n < 2 {
        return Err(GenError::TooSmall { n, min: 2 });
    }
    let ids: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let dag = Dag::from_indices(ids, alternating_edges(n)).expect("path");
    let edge_between = |a: usize, b: usize| dag.find_edge(a, b).or_else(|| dag.find_edge(b, a)).unwrap();
    let mut rotation = Vec::with_capacity(n);
    let mut large = Vec::with_capacity(n);
    for v in 0..n {
        let mut rot = Vec::new();
        if v > 0 {
            rot.push(edge_between(v - 1, v));
        }
        if v + 1 < n {
            rot.push(edge_between(v, v + 1));
        }
        // corner 1 runs from the next edge to the previous one
        large.push((v, if rot.len() == 2 { 1 } else { 0 }));
        rotation.push(rot);
    }
    let ue = UpwardEmbedding { base: PlanarEmbedding { rotation, outer_dart: 0 }, large_angles: large };
    Ok((dag, ue))
}

/// Three alternating paths u, v, w joined by rungs u_i-v_i-w_i (upward for
/// odd i, downward for even i) and two closing edges.
pub fn gen_spiral_3connected(n: usize) -> Result<Dag, GenError> {
    if n < 2 {
        return Err(GenError::TooSmall { n, min: 2 });
    }
    let mut ids = Vec::with_capacity(3 * n);
    for p in ["u", "v", "w"] {
        ids.extend((1..=n).map(|i| format!("{p}{i}")));
    }
    let (u, v, w) = (0, n, 2 * n);
    let mut edges = Vec::new();
    for base in [u, v, w] {
        edges.extend(alternating_edges(n).into_iter().map(|(a, b)| (base + a, base + b)));
    }
    for i in 0..n {
        if i % 2 == 0 {
            edges.push((u + i, v + i));
            edges.push((v + i, w + i));
        } else {
            edges.push((w + i, v + i));
            edges.push((v + i, u + i));
        }
    }
    edges.push((u, w));
    let last = n - 1;
    if n % 2 == 1 {
        edges.push((u + last, w + last));
    } else {
        edges.push((w + last, u + last));
    }
    Ok(Dag::from_indices(ids, edges).expect("spiral graph is acyclic"))
}

/// Three directed paths of length `ell` whose middle vertices u_m, v_m,
/// w_m (m = ⌈ℓ/2⌉) point to a common sink r, padded to `n` vertices by
/// an alternating path hanging from u_0.
pub fn gen_binary_lower(ell: usize, n: usize) -> Result<Dag, GenError> {
    if ell < 2 {
        return Err(GenError::BadParameter(format!("ell = {ell}: the path u_0..u_m,r has length m+1 > ell")));
    }
    let n0 = 3 * ell + 4;
    if n < n0 {
        return Err(GenError::TooSmall { n, min: n0 });
    }
    let m = ell.div_ceil(2);
    let mut b = Builder::default();
    let r = b.vertex("r", "root");
    let mut starts = Vec::new();
    for p in ["u", "v", "w"] {
        let p0 = b.vertex(format!("{p}0"), p);
        let path = b.path(p0, ell, true, p, p);
        b.edge(path[m], r, "spoke");
        starts.push(p0);
    }
    // padding: u0 -> x1 <- x2 -> x3 ...
    let mut last = starts[0];
    let mut k = 0;
    while b.n() < n {
        k += 1;
        let x = b.vertex(format!("x{k}"), "pad");
        if k % 2 == 1 {
            b.edge(last, x, "pad");
        } else {
            b.edge(x, last, "pad");
        }
        last = x;
    }
    Ok(b.finish().0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Source,
    Sink,
}

impl Polarity {
    fn flip(self) -> Polarity {
        match self {
            Polarity::Source => Polarity::Sink,
            Polarity::Sink => Polarity::Source,
        }
    }
}

/// Vertex count of T'_d.
pub fn td_size(d: usize) -> usize {
    match d {
        0 => 1,
        1 => 2,
        2 => 3,
        _ if d % 2 == 1 => d * td_size(d - 2) + 1,
        _ => d * td_size(d - 3) + 1,
    }
}

fn td_child(d: usize) -> Option<usize> {
    match d {
        0..=2 => None,
        _ if d % 2 == 1 => Some(d - 2),
        _ => Some(d - 3),
    }
}

/// Adds a T'_d rooted at a new vertex and returns the root plus all new
/// vertices. A `parent` edge is oriented by `pol`.
fn add_td(b: &mut Builder, d: usize, pol: Polarity, id: &str, out: &mut Vec<usize>) -> usize {
    let root = b.vertex(id.to_string(), "td");
    out.push(root);
    for i in 0..d {
        let cid = format!("{id}.{i}");
        let child = match td_child(d) {
            Some(cd) => add_td(b, cd, pol.flip(), &cid, out),
            None => {
                let c = b.vertex(cid, "td");
                out.push(c);
                c
            }
        };
        match pol {
            Polarity::Source => b.edge(root, child, "td"),
            Polarity::Sink => b.edge(child, root, "td"),
        }
    }
    root
}

/// T_d: the tree T'_d with every vertex a source or a sink.
pub fn gen_td(d: usize, root: Polarity) -> Result<Dag, GenError> {
    if d < 1 {
        return Err(GenError::BadParameter("d must be at least 1".into()));
    }
    let mut b = Builder::default();
    add_td(&mut b, d, root, "r", &mut Vec::new());
    Ok(b.finish().0)
}

/// A tree together with vertex sets of designated copies of T_d; each
/// copy is rooted at its first vertex.
#[derive(Debug, Clone)]
pub struct TreeWithCopies {
    pub dag: Dag,
    pub copies: Vec<Vec<usize>>,
}

/// Central sink r of degree d rooting a T_d; three neighbors of r carry two
/// more sinks, each rooting a further T_d that reuses the neighbor's branch.
pub fn gen_even_lower_tree(d: usize) -> Result<TreeWithCopies, GenError> {
    if d <= 2 || d % 2 == 1 {
        return Err(GenError::BadParameter(format!("d = {d} must be even and > 2")));
    }
    let cd = d - 3;
    let mut b = Builder::default();
    let r = b.vertex("r", "td");
    let mut main = vec![r];
    let mut branches = Vec::new();
    for i in 0..d {
        let mut verts = Vec::new();
        let v = add_td(&mut b, cd, Polarity::Source, &format!("r.{i}"), &mut verts);
        b.edge(v, r, "td");
        main.extend(&verts);
        branches.push((v, verts));
    }
    let mut copies = vec![main];
    for (i, (v, verts)) in branches.iter().take(3).enumerate() {
        for j in 0..2 {
            let id = format!("r.{i}.x{j}");
            let u = b.vertex(id.clone(), "td");
            b.edge(*v, u, "td");
            let mut copy = vec![u];
            copy.extend(verts);
            for k in 0..d - 1 {
                let mut fresh = Vec::new();
                let c = add_td(&mut b, cd, Polarity::Source, &format!("{id}.{k}"), &mut fresh);
                b.edge(c, u, "td");
                copy.extend(fresh);
            }
            copies.push(copy);
        }
    }
    Ok(TreeWithCopies { dag: b.finish().0, copies })
}

/// T_{(d-1)^ℓ} with every vertex that has children replaced by a perfect
/// (d-1)-ary tree of height ℓ whose leaves absorb those children.
pub fn gen_composed_tree(d: usize, ell: usize) -> Result<Dag, GenError> {
    if d <= 2 || ell == 0 {
        return Err(GenError::BadParameter(format!("need d > 2 and ell >= 1, got d = {d}, ell = {ell}")));
    }
    let arity = d - 1;
    let big = arity
        .checked_pow(ell as u32)
        .filter(|&k| td_size(k) <= 1 << 20)
        .ok_or_else(|| GenError::BadParameter("tree too large".into()))?;
    // rooted T'_big: children lists, polarity per vertex
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut pol = vec![Polarity::Source];
    let mut degree_left = vec![big];
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        let k = degree_left[v];
        let cd = match k {
            0..=2 => None,
            _ if k % 2 == 1 => Some(k - 2),
            _ => Some(k - 3),
        };
        for _ in 0..k {
            let c = children.len();
            children.push(Vec::new());
            pol.push(pol[v].flip());
            degree_left.push(cd.unwrap_or(0));
            children[v].push(c);
            stack.push(c);
        }
    }
    let mut b = Builder::default();
    for v in 0..children.len() {
        b.vertex(format!("t{v}"), "base");
    }
    for v in 0..children.len() {
        if children[v].is_empty() {
            continue;
        }
        let mut level = vec![v];
        for h in 1..=ell {
            let mut next = Vec::new();
            for (pi, &p) in level.iter().enumerate() {
                for c in 0..arity {
                    let slot = pi * arity + c;
                    let x = if h == ell && slot < children[v].len() {
                        children[v][slot]
                    } else {
                        b.vertex(format!("t{v}.h{h}.{slot}"), "inner")
                    };
                    match pol[v] {
                        Polarity::Source => b.edge(p, x, "inner"),
                        Polarity::Sink => b.edge(x, p, "inner"),
                    }
                    next.push(x);
                }
            }
            level = next;
        }
    }
    Ok(b.finish().0)
}

/// K_{2,2s} with both high-degree vertices u, v pointing to every other
/// vertex. Returns the graph and the vertex cover {u, v}.
pub fn gen_k22s(s: usize) -> Result<(Dag, [usize; 2]), GenError> {
    if s < 1 {
        return Err(GenError::BadParameter("s must be at least 1".into()));
    }
    let mut ids = vec!["u".to_string(), "v".to_string()];
    ids.extend((1..=2 * s).map(|i| format!("x{i}")));
    let mut edges = Vec::new();
    for i in 0..2 * s {
        edges.push((0, 2 + i));
        edges.push((1, 2 + i));
    }
    Ok((Dag::from_indices(ids, edges).expect("bipartite"), [0, 1]))
}
