//! Constructive drawings of directed trees: caterpillars with span 1,
//! source/sink trees, the left-anchored recursion bounded by indegree and
//! path length, and the greedy-path decomposition.

use thiserror::Error;

use crate::drawing::{q, LayeredDrawing, Q};
use crate::graph::{caterpillar_spine, Dag};

/// log2 of the golden ratio.
pub fn gamma() -> f64 {
    ((1.0 + 5f64.sqrt()) / 2.0).log2()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("underlying graph is not a tree")]
    NotATree,
    #[error("underlying graph is not a caterpillar")]
    NotCaterpillar,
    #[error("longest directed path has length {0}, expected at most 1")]
    LongDirectedPath(usize),
}

fn require_tree(dag: &Dag) -> Result<(), TreeError> {
    if dag.is_tree() {
        Ok(())
    } else {
        Err(TreeError::NotATree)
    }
}

/// The tree hanging from a chosen root.
struct Rooted {
    /// Children with the connecting edge, in canonical order (size, index).
    children: Vec<Vec<(usize, usize)>>,
    size: Vec<usize>,
}

impl Rooted {
    fn new(dag: &Dag, root: usize) -> Rooted {
        let n = dag.n();
        let mut parent = vec![usize::MAX; n];
        let mut order = vec![root];
        parent[root] = root;
        let mut children: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for e in dag.incident(v) {
                let w = dag.opposite(e, v);
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    children[v].push((w, e));
                    order.push(w);
                }
            }
        }
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if v != root {
                size[parent[v]] += size[v];
            }
        }
        for ch in &mut children {
            ch.sort_by_key(|&(w, _)| (size[w], w));
        }
        Rooted { children, size }
    }

    fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            i += 1;
            out.extend(self.children[u].iter().map(|&(w, _)| w));
        }
        out
    }
}

/// Positions under construction, shared by all recursive calls.
struct Canvas {
    level: Vec<i64>,
    x: Vec<Q>,
    wires: Vec<Vec<Q>>,
}

#[derive(Default)]
struct Patch {
    verts: Vec<usize>,
    edges: Vec<usize>,
}

impl Patch {
    fn absorb(&mut self, other: Patch) {
        self.verts.extend(other.verts);
        self.edges.extend(other.edges);
    }
}

struct BBox {
    lo: i64,
    hi: i64,
    left: Q,
    right: Q,
}

impl Canvas {
    fn new(dag: &Dag) -> Canvas {
        Canvas { level: vec![0; dag.n()], x: vec![q(0); dag.n()], wires: vec![Vec::new(); dag.m()] }
    }

    fn shift(&mut self, p: &Patch, dy: i64, dx: Q) {
        for &v in &p.verts {
            self.level[v] += dy;
            self.x[v] += dx;
        }
        for &e in &p.edges {
            for w in &mut self.wires[e] {
                *w += dx;
            }
        }
    }

    fn bbox(&self, p: &Patch) -> BBox {
        let mut b = BBox { lo: i64::MAX, hi: i64::MIN, left: self.x[p.verts[0]], right: self.x[p.verts[0]] };
        for &v in &p.verts {
            b.lo = b.lo.min(self.level[v]);
            b.hi = b.hi.max(self.level[v]);
            b.left = b.left.min(self.x[v]);
            b.right = b.right.max(self.x[v]);
        }
        for &e in &p.edges {
            for &w in &self.wires[e] {
                b.left = b.left.min(w);
                b.right = b.right.max(w);
            }
        }
        b
    }

    /// Set the wire of `e` from a function of the level.
    fn route(&mut self, dag: &Dag, e: usize, at: impl Fn(i64) -> Q) {
        let (t, h) = dag.edge(e);
        self.wires[e] = (self.level[t] + 1..self.level[h]).map(at).collect();
    }

    /// Close every wire with its endpoints.
    fn finish(self, dag: &Dag) -> LayeredDrawing {
        let wires = dag
            .edges()
            .iter()
            .zip(self.wires)
            .map(|(&(t, h), inner)| {
                let mut w = vec![self.x[t]];
                w.extend(inner);
                w.push(self.x[h]);
                w
            })
            .collect();
        LayeredDrawing { level: self.level, x: self.x, wires }
    }
}

/// Span-1 drawing of a caterpillar: the spine zigzags between consecutive
/// levels and each leaf sits one level above or below its spine vertex.
pub fn draw_caterpillar(dag: &Dag) -> Result<LayeredDrawing, TreeError> {
    require_tree(dag)?;
    let spine = caterpillar_spine(dag).ok_or(TreeError::NotCaterpillar)?;
    let mut cv = Canvas::new(dag);
    let mut on_spine = vec![false; dag.n()];
    for &v in &spine {
        on_spine[v] = true;
    }
    for (i, &v) in spine.iter().enumerate() {
        if i > 0 {
            let u = spine[i - 1];
            cv.level[v] = cv.level[u] + if dag.find_edge(u, v).is_some() { 1 } else { -1 };
        }
        cv.x[v] = q(2 * i as i64);
    }
    for (i, &v) in spine.iter().enumerate() {
        let leaves: Vec<usize> = dag.incident(v).into_iter().filter(|&e| !on_spine[dag.opposite(e, v)]).collect();
        let cnt = leaves.len() as i64;
        for (j, &e) in leaves.iter().enumerate() {
            let w = dag.opposite(e, v);
            cv.level[w] = cv.level[v] + if dag.edge(e).0 == v { 1 } else { -1 };
            cv.x[w] = q(2 * i as i64 - 1) + Q::new(2 * (j as i64 + 1), cnt + 1);
        }
    }
    Ok(cv.finish(dag))
}

/// Drawing of a tree whose vertices are all sources or sinks with span at
/// most ⌊d/2⌋ + 1.
pub fn draw_source_sink_tree(dag: &Dag) -> Result<LayeredDrawing, TreeError> {
    require_tree(dag)?;
    let ell = dag.longest_path();
    if ell > 1 {
        return Err(TreeError::LongDirectedPath(ell));
    }
    if dag.n() == 1 {
        return Ok(LayeredDrawing::straight(dag, vec![0], vec![q(0)]));
    }
    let root = (0..dag.n()).find(|&v| dag.degree(v) == 1).unwrap();
    if dag.is_source(root) {
        return Ok(source_sink_rooted(dag, root));
    }
    // sink root: draw the reversal and flip it upside down
    let (rev, map) = dag.reversed();
    let d = source_sink_rooted(&rev, root);
    Ok(LayeredDrawing {
        level: d.level.iter().map(|&y| -y).collect(),
        x: d.x.clone(),
        wires: (0..dag.m()).map(|e| d.wires[map[e]].iter().rev().copied().collect()).collect(),
    })
}

fn source_sink_rooted(dag: &Dag, root: usize) -> LayeredDrawing {
    let rt = Rooted::new(dag, root);
    // a single edge (d = 1) still needs two layers above its source
    let bound = (dag.max_degree() as i64 / 2 + 1).max(2);
    let mut cv = Canvas::new(dag);
    ss_patch(dag, &rt, root, &mut cv, bound);
    cv.finish(dag)
}

/// Top-accessible drawing of the subtree of source `s`, with `s` at the
/// origin and nothing else on the vertical line above it.
fn ss_patch(dag: &Dag, rt: &Rooted, s: usize, cv: &mut Canvas, bound: i64) -> Patch {
    let mut patch = Patch { verts: vec![s], edges: vec![] };
    cv.level[s] = 0;
    cv.x[s] = q(0);
    let kids = &rt.children[s];
    let m = kids.len() / 2;
    // both lists bottom to top; the right one is the mirror of the left
    let left: Vec<(usize, usize)> = kids[..m].to_vec();
    let right: Vec<(usize, usize)> = kids[m..].iter().rev().copied().collect();
    for (side, list) in [(-1i64, left), (1i64, right)] {
        let cnt = list.len();
        let mut cursor = q(0);
        let mut wire_col = vec![q(0); cnt];
        for j in (1..cnt).rev() {
            cursor += q(1);
            wire_col[j] = cursor;
        }
        for (j, &(si, e)) in list.iter().enumerate() {
            let lvl = j as i64 + 1;
            cursor += q(1);
            cv.level[si] = lvl;
            cv.x[si] = cursor * q(side);
            patch.verts.push(si);
            for &(t, te) in &rt.children[si] {
                let sub = ss_patch(dag, rt, t, cv, bound);
                let b = cv.bbox(&sub);
                let dx = if side > 0 { cursor + q(1) - b.left } else { -(cursor + q(1)) - b.right };
                cv.shift(&sub, lvl - 1 - b.hi, dx);
                cursor = if side > 0 { b.right + dx } else { -(b.left + dx) };
                let xt = cv.x[t];
                cv.route(dag, te, |_| xt);
                patch.absorb(sub);
                patch.edges.push(te);
            }
            let col = wire_col[j] * q(side);
            cv.route(dag, e, |_| col);
            patch.edges.push(e);
        }
    }
    let upper = patch.verts.iter().map(|&v| cv.level[v]).max().unwrap() + 1;
    assert!(upper <= bound, "upper height {upper} exceeds {bound}");
    patch
}

/// Heights recorded for one subtree of the left-anchored recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecursionMetrics {
    pub root: usize,
    pub upper_height: i64,
    pub lower_height: i64,
    /// Largest number of in-edges from children at any vertex of the tree.
    pub d_plus: usize,
    /// Longest directed path ending at the subtree root inside the subtree.
    pub ell_up: usize,
}

/// Σ_{j=0..l} d^j
pub fn geometric_bound(d: usize, l: usize) -> i64 {
    (0..=l as u32).map(|j| (d as i64).pow(j)).sum()
}

fn d_plus(dag: &Dag, rt: &Rooted) -> usize {
    (0..dag.n()).map(|v| rt.children[v].iter().filter(|&&(_, e)| dag.edge(e).1 == v).count()).max().unwrap_or(0)
}

/// Left-anchored drawing with every edge span at most Σ_{j=0..ℓ} d₊^j.
pub fn draw_bounded_indegree(dag: &Dag) -> Result<LayeredDrawing, TreeError> {
    draw_bounded_indegree_with_metrics(dag).map(|(d, _)| d)
}

pub fn draw_bounded_indegree_with_metrics(dag: &Dag) -> Result<(LayeredDrawing, Vec<RecursionMetrics>), TreeError> {
    require_tree(dag)?;
    // root at the vertex giving the smallest d₊, preferring leaves
    let root = (0..dag.n()).min_by_key(|&v| (d_plus(dag, &Rooted::new(dag, v)), dag.degree(v) > 1, v)).unwrap();
    let rt = Rooted::new(dag, root);
    let dp = d_plus(dag, &rt);
    let mut cv = Canvas::new(dag);
    let mut metrics = Vec::new();
    bi_patch(dag, &rt, root, &mut cv, dp, &mut metrics);
    let d = cv.finish(dag);
    let bound = geometric_bound(dp, dag.longest_path());
    for e in 0..dag.m() {
        let (t, h) = dag.edge(e);
        assert!(d.level[h] - d.level[t] <= bound, "edge {e} exceeds {bound}");
    }
    Ok((d, metrics))
}

/// Returns the patch with `s` at the origin and nothing else at x ≤ 0.
/// Also reports ℓ↑ of the subtree.
fn bi_patch(
    dag: &Dag,
    rt: &Rooted,
    s: usize,
    cv: &mut Canvas,
    dp: usize,
    metrics: &mut Vec<RecursionMetrics>,
) -> (Patch, usize) {
    let mut patch = Patch { verts: vec![s], edges: vec![] };
    cv.level[s] = 0;
    cv.x[s] = q(0);
    let (outs, ins): (Vec<(usize, usize)>, Vec<(usize, usize)>) =
        rt.children[s].iter().partition(|&&(_, e)| dag.edge(e).0 == s);
    let mut cursor = q(0);
    for &(c, e) in &outs {
        let (sub, _) = bi_patch(dag, rt, c, cv, dp, metrics);
        let b = cv.bbox(&sub);
        let col = cursor + q(1);
        let dx = col + q(1) - b.left;
        cv.shift(&sub, 1 - b.lo, dx);
        cursor = b.right + dx;
        cv.route(dag, e, |_| col);
        assert_eq!(cv.level[c], 1 - b.lo, "out-edge span equals the child's lower height");
        patch.absorb(sub);
        patch.edges.push(e);
    }
    let mut in_col = vec![q(0); ins.len()];
    for j in (1..ins.len()).rev() {
        cursor += q(1);
        in_col[j] = cursor;
    }
    let mut prev_bottom = 0i64;
    let mut ell_up = 0usize;
    for (j, &(c, e)) in ins.iter().enumerate() {
        let (sub, ell_c) = bi_patch(dag, rt, c, cv, dp, metrics);
        ell_up = ell_up.max(ell_c + 1);
        let b = cv.bbox(&sub);
        let target = if j == 0 { -1 } else { prev_bottom - 1 };
        let dx = cursor + q(1) - b.left;
        cv.shift(&sub, target, dx);
        cursor = b.right + dx;
        prev_bottom = b.lo + target;
        let col = in_col[j];
        cv.route(dag, e, |_| col);
        patch.absorb(sub);
        patch.edges.push(e);
    }
    let b = cv.bbox(&patch);
    let lower = 1 - b.lo;
    if dp == 0 {
        assert_eq!(lower, 1);
    } else {
        assert!(lower <= geometric_bound(dp, ell_up), "lower height {lower} too large");
    }
    for &(_, e) in &ins {
        let (t, _) = dag.edge(e);
        assert!(-cv.level[t] < lower, "in-edge span below the lower height");
    }
    metrics.push(RecursionMetrics { root: s, upper_height: b.hi + 1, lower_height: lower, d_plus: dp, ell_up });
    (patch, ell_up)
}

/// A greedy root-to-leaf path and the subtrees hanging off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyDecomposition {
    pub path: Vec<usize>,
    /// (attach vertex on the path, root of the subtree, subtree size)
    pub up_subtrees: Vec<(usize, usize, usize)>,
    pub down_subtrees: Vec<(usize, usize, usize)>,
    pub alpha: usize,
    pub beta: usize,
    pub n: usize,
}

impl GreedyDecomposition {
    /// Either α ≤ n/2 and β ≤ (n-α)/2, or the same with α and β swapped.
    pub fn partition_holds(&self) -> bool {
        let (a, b, n) = (self.alpha, self.beta, self.n);
        (2 * a <= n && 2 * b <= n - a) || (2 * b <= n && 2 * a <= n - b)
    }

    /// α^γ + β^γ ≤ n^γ
    pub fn chan_holds(&self) -> bool {
        let g = gamma();
        let p = |v: usize| if v == 0 { 0.0 } else { (v as f64).powf(g) };
        p(self.alpha) + p(self.beta) <= p(self.n) * (1.0 + 1e-9)
    }
}

/// Greedy path from `root`: each step enters a largest child subtree,
/// ties broken by smaller vertex index.
pub fn greedy_decompose(dag: &Dag, root: usize) -> Result<GreedyDecomposition, TreeError> {
    require_tree(dag)?;
    let rt = Rooted::new(dag, root);
    let dec = decompose_at(dag, &rt, root);
    assert!(dec.partition_holds(), "partition inequalities fail: {dec:?}");
    assert!(dec.chan_holds(), "α^γ + β^γ > n^γ: {dec:?}");
    Ok(dec)
}

fn decompose_at(dag: &Dag, rt: &Rooted, root: usize) -> GreedyDecomposition {
    let mut path = vec![root];
    let mut v = root;
    while let Some(&(w, _)) = rt.children[v].iter().max_by_key(|&&(w, _)| (rt.size[w], std::cmp::Reverse(w))) {
        path.push(w);
        v = w;
    }
    let mut up = Vec::new();
    let mut down = Vec::new();
    for (i, &u) in path.iter().enumerate() {
        let next = path.get(i + 1).copied();
        for &(w, e) in &rt.children[u] {
            if Some(w) == next {
                continue;
            }
            let item = (u, w, rt.size[w]);
            if dag.edge(e).0 == u {
                up.push(item);
            } else {
                down.push(item);
            }
        }
    }
    let alpha = up.iter().map(|t| t.2).max().unwrap_or(0);
    let beta = down.iter().map(|t| t.2).max().unwrap_or(0);
    GreedyDecomposition { path, up_subtrees: up, down_subtrees: down, alpha, beta, n: rt.size[root] }
}

/// Layer budget (2n^γ - 1)(ℓ + 1).
pub fn greedy_layer_bound(n: usize, ell: usize) -> f64 {
    (2.0 * (n as f64).powf(gamma()) - 1.0) * (ell as f64 + 1.0)
}

/// Left-anchored drawing on at most (2n^γ - 1)(ℓ + 1) layers, rooted at
/// vertex 0.
pub fn draw_greedy(dag: &Dag) -> Result<LayeredDrawing, TreeError> {
    require_tree(dag)?;
    let rt = Rooted::new(dag, 0);
    let mut cv = Canvas::new(dag);
    greedy_patch(dag, &rt, 0, &mut cv);
    let d = cv.finish(dag);
    let layers = d.layers();
    assert!(
        layers as f64 <= greedy_layer_bound(dag.n(), dag.longest_path()) + 1e-9,
        "{layers} layers exceed the budget"
    );
    Ok(d)
}

fn greedy_patch(dag: &Dag, rt: &Rooted, root: usize, cv: &mut Canvas) -> Patch {
    let dec = decompose_at(dag, rt, root);
    let path = &dec.path;
    let mut patch = Patch { verts: path.clone(), edges: vec![] };
    if path.len() == 1 {
        cv.level[root] = 0;
        cv.x[root] = q(0);
        return patch;
    }
    let members = rt.subtree(root);
    let ell_s = dag.induced(&members).longest_path();
    let draw_all = |list: &[(usize, usize, usize)], cv: &mut Canvas| -> Vec<(Patch, BBox)> {
        list.iter()
            .map(|&(_, w, _)| {
                let p = greedy_patch(dag, rt, w, cv);
                let b = cv.bbox(&p);
                (p, b)
            })
            .collect()
    };
    let ups = draw_all(&dec.up_subtrees, cv);
    let downs = draw_all(&dec.down_subtrees, cv);
    let h_down = downs.iter().map(|(_, b)| b.hi - b.lo + 1).max().unwrap_or(0);

    // the path zigzags: local sources on the bottom middle layer, local
    // sinks on the top one, run interiors in between
    let p = path.len();
    let forward: Vec<bool> = (0..p - 1).map(|i| dag.find_edge(path[i], path[i + 1]).is_some()).collect();
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..p - 1 {
        if forward[i] != forward[i - 1] {
            runs.push((start, i));
            start = i;
        }
    }
    runs.push((start, p - 1));
    let l_pi = runs.iter().map(|&(a, b)| b - a).max().unwrap() as i64;
    let mid_bottom = h_down;
    let mid_top = mid_bottom + l_pi;
    for &(a, b) in &runs {
        let fwd = forward[a];
        let len = (b - a) as i64;
        for (off, i) in (a..=b).enumerate() {
            let off = off as i64;
            // distance from the run's own source
            let from_src = if fwd { off } else { len - off };
            cv.level[path[i]] = if from_src == len { mid_top } else { mid_bottom + from_src };
        }
    }
    let xs: Vec<Q> = (0..p).map(|i| q(4 * i as i64)).collect();
    for (i, &u) in path.iter().enumerate() {
        cv.x[u] = xs[i];
    }
    for i in 0..p - 1 {
        let e = if forward[i] {
            dag.find_edge(path[i], path[i + 1]).unwrap()
        } else {
            dag.find_edge(path[i + 1], path[i]).unwrap()
        };
        let xw = xs[i] + q(2);
        cv.route(dag, e, |_| xw);
        patch.edges.push(e);
    }
    let index_of = |u: usize| path.iter().position(|&w| w == u).unwrap();
    let eps = |list: &[(usize, usize, usize)], k: usize| -> Q {
        let u = list[k].0;
        let same: Vec<usize> = (0..list.len()).filter(|&j| list[j].0 == u).collect();
        let pos = same.iter().position(|&j| j == k).unwrap() as i64;
        Q::new(pos + 1, same.len() as i64 + 1)
    };

    let up_base = mid_top + 1;
    let mut cursor = q(0);
    for (k, (sub, b)) in ups.into_iter().enumerate() {
        let (u, w, _) = dec.up_subtrees[k];
        let col = cursor + q(1);
        let dx = col + q(1) - b.left;
        cv.shift(&sub, up_base - b.lo, dx);
        cursor = b.right + dx;
        let e = dag.find_edge(u, w).unwrap();
        let xu = xs[index_of(u)] + eps(&dec.up_subtrees, k);
        cv.route(dag, e, |y| if y <= mid_top { xu } else { col });
        patch.absorb(sub);
        patch.edges.push(e);
    }
    let down_top = mid_bottom - 1;
    let mut cursor = q(0);
    for (k, (sub, b)) in downs.into_iter().enumerate() {
        let (u, w, _) = dec.down_subtrees[k];
        let col = cursor + q(1);
        let dx = col + q(1) - b.left;
        cv.shift(&sub, down_top - b.hi, dx);
        cursor = b.right + dx;
        let e = dag.find_edge(w, u).unwrap();
        let xu = xs[index_of(u)] + eps(&dec.down_subtrees, k);
        cv.route(dag, e, |y| if y >= mid_bottom { xu } else { col });
        patch.absorb(sub);
        patch.edges.push(e);
    }
    let b = cv.bbox(&patch);
    let layers = (b.hi - b.lo + 1) as f64;
    assert!(layers <= greedy_layer_bound(dec.n, ell_s) + 1e-9, "subtree at {root}: {layers} layers over budget");
    // re-anchor so the root sits at level 0, x 0
    let (dy, dx) = (-cv.level[root], -cv.x[root]);
    cv.shift(&patch, dy, dx);
    patch
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{span_of, validate};

    fn alternating_path(n: usize) -> Dag {
        let e: Vec<(usize, usize)> = (0..n - 1).map(|i| if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) }).collect();
        Dag::from_edges(n, &e).unwrap()
    }

    fn check(dag: &Dag, d: &LayeredDrawing) -> i64 {
        let rep = validate(dag, d, None).unwrap();
        assert!(rep.is_valid(), "{:?}", rep.violations);
        rep.span
    }

    #[test]
    fn caterpillar_span_one() {
        let p = alternating_path(11);
        assert_eq!(check(&p, &draw_caterpillar(&p).unwrap()), 1);
        let e = Dag::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(check(&e, &draw_caterpillar(&e).unwrap()), 1);
        // spine 0-1-2 with leaves in both directions
        let c = Dag::from_edges(7, &[(0, 1), (2, 1), (1, 3), (4, 1), (2, 5), (6, 2)]).unwrap();
        assert_eq!(check(&c, &draw_caterpillar(&c).unwrap()), 1);
        let not = Dag::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert_eq!(draw_caterpillar(&not), Err(TreeError::NotCaterpillar));
    }

    #[test]
    fn source_sink_star_and_path() {
        let star = Dag::from_edges(10, &(1..10).map(|i| (0, i)).collect::<Vec<_>>()).unwrap();
        assert!(check(&star, &draw_source_sink_tree(&star).unwrap()) <= 5);
        let p = alternating_path(8);
        assert!(check(&p, &draw_source_sink_tree(&p).unwrap()) <= 2);
        let long = Dag::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(draw_source_sink_tree(&long), Err(TreeError::LongDirectedPath(2)));
    }

    #[test]
    fn bounded_indegree_out_tree_has_unit_heights() {
        let g = Dag::from_edges(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)]).unwrap();
        let (d, metrics) = draw_bounded_indegree_with_metrics(&g).unwrap();
        assert_eq!(check(&g, &d), 1);
        assert!(metrics.iter().all(|m| m.lower_height == 1 && m.d_plus == 0));
    }

    #[test]
    fn bounded_indegree_in_path() {
        // 0 → 1 → 2 is an in-path into the root 2, plus an out-leaf 3
        let g = Dag::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let (d, metrics) = draw_bounded_indegree_with_metrics(&g).unwrap();
        check(&g, &d);
        for m in metrics {
            assert!(m.lower_height <= geometric_bound(m.d_plus, m.ell_up));
        }
    }

    #[test]
    fn greedy_star_and_binary_in_tree() {
        let star = Dag::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let dec = greedy_decompose(&star, 0).unwrap();
        assert_eq!(dec.path.len(), 2);
        assert!(dec.alpha.max(dec.beta) * 2 <= 5);
        let bin = Dag::from_edges(7, &[(1, 0), (2, 0), (3, 1), (4, 1), (5, 2), (6, 2)]).unwrap();
        let dec = greedy_decompose(&bin, 0).unwrap();
        assert!(dec.alpha <= 3 && dec.beta <= 3);
        check(&bin, &draw_greedy(&bin).unwrap());
    }

    #[test]
    fn greedy_path_layers() {
        let p = alternating_path(11);
        let d = draw_greedy(&p).unwrap();
        check(&p, &d);
        assert!((d.layers() as f64) <= greedy_layer_bound(11, 1));
        let one = Dag::from_edges(1, &[]).unwrap();
        let d = draw_greedy(&one).unwrap();
        assert_eq!(d.layers(), 1);
        assert_eq!(span_of(&one, &d).unwrap(), 0);
    }
}
