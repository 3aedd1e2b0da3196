//! Directed acyclic graphs with a canonical edge order, plus structural queries.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("cycle detected involving vertex {0}")]
    CycleDetected(String),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(String, String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
}

/// A simple DAG. Vertices are opaque string ids mapped to dense indices in
/// insertion order; edges are sorted by `(tail, head)` index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

/// Build a DAG from string ids and `(tail, head)` pairs.
pub fn build_dag<I, S, E, A, B>(vertex_ids: I, edge_pairs: E) -> Result<Dag, GraphError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
    E: IntoIterator<Item = (A, B)>,
    A: AsRef<str>,
    B: AsRef<str>,
{
    let ids: Vec<String> = vertex_ids.into_iter().map(Into::into).collect();
    let mut index = HashMap::new();
    for (i, id) in ids.iter().enumerate() {
        if index.insert(id.clone(), i).is_some() {
            return Err(GraphError::DuplicateVertex(id.clone()));
        }
    }
    let mut pairs = Vec::new();
    for (a, b) in edge_pairs {
        let t = *index.get(a.as_ref()).ok_or_else(|| GraphError::UnknownVertex(a.as_ref().to_string()))?;
        let h = *index.get(b.as_ref()).ok_or_else(|| GraphError::UnknownVertex(b.as_ref().to_string()))?;
        pairs.push((t, h));
    }
    Dag::from_indices(ids, pairs)
}

impl Dag {
    /// Build from ids and index pairs, validating simplicity and acyclicity.
    pub fn from_indices(ids: Vec<String>, mut edges: Vec<(usize, usize)>) -> Result<Dag, GraphError> {
        let n = ids.len();
        let mut index = HashMap::new();
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(id.clone()));
            }
        }
        let mut seen = HashSet::new();
        for &(t, h) in &edges {
            if t >= n {
                return Err(GraphError::UnknownVertex(format!("#{t}")));
            }
            if h >= n {
                return Err(GraphError::UnknownVertex(format!("#{h}")));
            }
            if t == h {
                return Err(GraphError::SelfLoop(ids[t].clone()));
            }
            let key = (t.min(h), t.max(h));
            if !seen.insert(key) {
                return Err(GraphError::ParallelEdge(ids[t].clone(), ids[h].clone()));
            }
        }
        edges.sort_unstable();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (e, &(t, h)) in edges.iter().enumerate() {
            out[t].push(e);
            inc[h].push(e);
        }
        let dag = Dag { ids, index, edges, out, inc };
        dag.check_acyclic()?;
        Ok(dag)
    }

    /// Convenience constructor with ids `"0"`, `"1"`, ...
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Dag, GraphError> {
        Dag::from_indices((0..n).map(|i| i.to_string()).collect(), edges.to_vec())
    }

    fn check_acyclic(&self) -> Result<(), GraphError> {
        if self.topo_order_raw().len() == self.n() {
            return Ok(());
        }
        let order = self.topo_order_raw();
        let done: HashSet<usize> = order.into_iter().collect();
        let start = (0..self.n()).find(|v| !done.contains(v)).unwrap_or(0);
        // walk backwards through unfinished vertices until one repeats
        let mut seen = HashSet::new();
        let mut v = start;
        while seen.insert(v) {
            let next = self.inc[v].iter().map(|&e| self.edges[e].0).find(|u| !done.contains(u));
            match next {
                Some(u) => v = u,
                None => break,
            }
        }
        Err(GraphError::CycleDetected(self.ids[v].clone()))
    }

    fn topo_order_raw(&self) -> Vec<usize> {
        let mut indeg: Vec<usize> = self.inc.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..self.n()).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n());
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &e in &self.out[v] {
                let h = self.edges[e].1;
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    queue.push_back(h);
                }
            }
        }
        order
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    /// All incident edge indices of `v` (outgoing first).
    pub fn incident(&self, v: usize) -> Vec<usize> {
        let mut all = self.out[v].clone();
        all.extend_from_slice(&self.inc[v]);
        all
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out[v].len() + self.inc[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.inc[v].is_empty()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out[v].is_empty()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_source(v)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_sink(v)).collect()
    }

    /// Other endpoint of edge `e` seen from `v`.
    pub fn opposite(&self, e: usize, v: usize) -> usize {
        let (t, h) = self.edges[e];
        if t == v {
            h
        } else {
            t
        }
    }

    pub fn find_edge(&self, tail: usize, head: usize) -> Option<usize> {
        self.out[tail].iter().copied().find(|&e| self.edges[e].1 == head)
    }

    /// True when an edge joins `a` and `b` in either direction.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.find_edge(a, b).is_some() || self.find_edge(b, a).is_some()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.incident(v).into_iter().map(|e| self.opposite(e, v)).collect()
    }

    pub fn topo_order(&self) -> Vec<usize> {
        self.topo_order_raw()
    }

    /// Number of edges on a longest directed path.
    pub fn longest_path(&self) -> usize {
        let mut dist = vec![0usize; self.n()];
        for v in self.topo_order_raw() {
            for &e in &self.out[v] {
                let h = self.edges[e].1;
                dist[h] = dist[h].max(dist[v] + 1);
            }
        }
        dist.into_iter().max().unwrap_or(0)
    }

    /// Length of the longest directed path ending at each vertex.
    pub fn longest_path_into(&self) -> Vec<usize> {
        let mut dist = vec![0usize; self.n()];
        for v in self.topo_order_raw() {
            for &e in &self.out[v] {
                let h = self.edges[e].1;
                dist[h] = dist[h].max(dist[v] + 1);
            }
        }
        dist
    }

    pub fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            for &e in &self.out[v] {
                stack.push(self.edges[e].1);
            }
        }
        false
    }

    /// Connected components of the underlying undirected graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut result = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = result.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            result.push(members);
        }
        result
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// True when the underlying graph is a tree.
    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m() + 1 == self.n() && self.is_connected()
    }

    /// Copy with extra edges. Returns the new DAG, the new index of each old
    /// edge, and the new index of each extra edge.
    pub fn with_extra_edges(&self, extra: &[(usize, usize)]) -> Result<(Dag, Vec<usize>, Vec<usize>), GraphError> {
        let mut all = self.edges.clone();
        all.extend_from_slice(extra);
        let dag = Dag::from_indices(self.ids.clone(), all)?;
        let old = self.edges.iter().map(|&(t, h)| dag.find_edge(t, h).unwrap()).collect();
        let new = extra.iter().map(|&(t, h)| dag.find_edge(t, h).unwrap()).collect();
        Ok((dag, old, new))
    }

    /// Copy with extra vertices (appended) and extra edges over the enlarged
    /// index space. Returns the DAG, the old-edge map and the extra-edge map.
    pub fn extended(
        &self,
        new_ids: &[String],
        extra: &[(usize, usize)],
    ) -> Result<(Dag, Vec<usize>, Vec<usize>), GraphError> {
        let mut ids = self.ids.clone();
        ids.extend(new_ids.iter().cloned());
        let mut all = self.edges.clone();
        all.extend_from_slice(extra);
        let dag = Dag::from_indices(ids, all)?;
        let old = self.edges.iter().map(|&(t, h)| dag.find_edge(t, h).unwrap()).collect();
        let new = extra.iter().map(|&(t, h)| dag.find_edge(t, h).unwrap()).collect();
        Ok((dag, old, new))
    }

    /// Same vertices with every edge reversed, plus the index map old -> new.
    pub fn reversed(&self) -> (Dag, Vec<usize>) {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(t, h)| (h, t)).collect();
        let dag = Dag::from_indices(self.ids.clone(), edges).expect("reversal keeps a DAG");
        let map = self.edges.iter().map(|&(t, h)| dag.find_edge(h, t).unwrap()).collect();
        (dag, map)
    }

    /// Subgraph induced by an edge subset; vertices are those incident to the
    /// edges, in increasing index order. Returns the subgraph and the
    /// vertex map sub -> original.
    pub fn edge_subgraph(&self, edge_set: &[usize]) -> (Dag, Vec<usize>) {
        let mut verts: Vec<usize> = edge_set.iter().flat_map(|&e| [self.edges[e].0, self.edges[e].1]).collect();
        verts.sort_unstable();
        verts.dedup();
        let local: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let ids = verts.iter().map(|&v| self.ids[v].clone()).collect();
        let edges = edge_set.iter().map(|&e| (local[&self.edges[e].0], local[&self.edges[e].1])).collect();
        (Dag::from_indices(ids, edges).expect("subgraph of a DAG"), verts)
    }

    /// Subgraph induced by a vertex subset (kept in the given order).
    pub fn induced(&self, verts: &[usize]) -> Dag {
        let local: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let ids = verts.iter().map(|&v| self.ids[v].clone()).collect();
        let edges = self.edges.iter().filter_map(|&(t, h)| Some((*local.get(&t)?, *local.get(&h)?))).collect();
        Dag::from_indices(ids, edges).expect("induced subgraph of a DAG")
    }

    /// Biconnected components and cut vertices of the underlying graph.
    pub fn block_cut_tree(&self) -> BlockCutTree {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut is_cut = vec![false; n];
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // frames: (vertex, parent edge, incident list, next position)
            let mut stack: Vec<(usize, Option<usize>, Vec<usize>, usize)> = vec![(root, None, self.incident(root), 0)];
            while let Some(frame) = stack.last_mut() {
                let (v, pe) = (frame.0, frame.1);
                if frame.3 < frame.2.len() {
                    let e = frame.2[frame.3];
                    frame.3 += 1;
                    if Some(e) == pe {
                        continue;
                    }
                    let w = self.opposite(e, v);
                    if disc[w] == usize::MAX {
                        edge_stack.push(e);
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, Some(e), self.incident(w), 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(e);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(pe), Some(parent)) = (pe, stack.last()) {
                        let p = parent.0;
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            if p != root {
                                is_cut[p] = true;
                            }
                            let mut block = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                block.push(e);
                                if e == pe {
                                    break;
                                }
                            }
                            block.sort_unstable();
                            blocks.push(block);
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        blocks.sort();
        let block_vertices = blocks
            .iter()
            .map(|b| {
                let mut vs: Vec<usize> = b.iter().flat_map(|&e| [self.edges[e].0, self.edges[e].1]).collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            })
            .collect();
        BlockCutTree { blocks, block_vertices, cut_vertices: (0..n).filter(|&v| is_cut[v]).collect() }
    }
}

/// Blocks as edge-index lists (sorted), their vertex sets, and cut vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    pub blocks: Vec<Vec<usize>>,
    pub block_vertices: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub degree: usize,
    pub longest_path: usize,
    pub block_cut_tree: BlockCutTree,
    pub is_caterpillar: bool,
    /// Outerplanar embedding witness when the graph is outerplanar.
    pub outerplanar: Option<crate::embedding::PlanarEmbedding>,
}

impl StructureReport {
    pub fn is_outerplanar(&self) -> bool {
        self.outerplanar.is_some()
    }
}

pub fn structure_queries(dag: &Dag) -> StructureReport {
    StructureReport {
        sources: dag.sources(),
        sinks: dag.sinks(),
        degree: dag.max_degree(),
        longest_path: dag.longest_path(),
        block_cut_tree: dag.block_cut_tree(),
        is_caterpillar: caterpillar_spine(dag).is_some(),
        outerplanar: if dag.is_connected() { crate::embedding::outerplanar_embedding(dag) } else { None },
    }
}

/// Spine of a caterpillar: a path containing every vertex of degree ≥ 2,
/// listed end to end. `None` if the graph is not a caterpillar.
pub fn caterpillar_spine(dag: &Dag) -> Option<Vec<usize>> {
    if !dag.is_tree() {
        return None;
    }
    if dag.n() <= 2 {
        return Some((0..dag.n()).collect());
    }
    let inner: Vec<usize> = (0..dag.n()).filter(|&v| dag.degree(v) >= 2).collect();
    let is_inner: HashSet<usize> = inner.iter().copied().collect();
    let inner_deg = |v: usize| dag.neighbors(v).into_iter().filter(|w| is_inner.contains(w)).count();
    if inner.iter().any(|&v| inner_deg(v) > 2) {
        return None;
    }
    let start = inner.iter().copied().find(|&v| inner_deg(v) <= 1)?;
    let mut spine = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = dag.neighbors(cur).into_iter().find(|&w| w != prev && is_inner.contains(&w));
        match next {
            Some(w) => {
                spine.push(w);
                prev = cur;
                cur = w;
            }
            None => break,
        }
    }
    (spine.len() == inner.len()).then_some(spine)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating_path(n: usize) -> Dag {
        let ids: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 1..n {
            // v_i is a source when i is odd
            if i % 2 == 1 {
                edges.push((i - 1, i));
            } else {
                edges.push((i, i - 1));
            }
        }
        Dag::from_indices(ids, edges).unwrap()
    }

    #[test]
    fn chain_has_one_source_and_sink() {
        let g = build_dag(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.sources(), vec![0]);
        assert_eq!(g.sinks(), vec![2]);
        assert_eq!(g.longest_path(), 2);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = build_dag(["a", "b"], [("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, GraphError::ParallelEdge(..)));
        let err = build_dag(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")]).unwrap_err();
        assert!(matches!(err, GraphError::CycleDetected(_)));
    }

    #[test]
    fn self_loop_is_rejected() {
        let err = build_dag(["a"], [("a", "a")]).unwrap_err();
        assert_eq!(err, GraphError::SelfLoop("a".into()));
    }

    #[test]
    fn alternating_path_counts() {
        let p = alternating_path(11);
        assert_eq!(p.sources().len(), 6);
        assert_eq!(p.sinks().len(), 5);
        assert_eq!(p.longest_path(), 1);
        assert!(caterpillar_spine(&p).is_some());
    }

    #[test]
    fn edges_are_canonical() {
        let g = build_dag(["a", "b", "c"], [("b", "c"), ("a", "c"), ("a", "b")]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn blocks_of_two_triangles_sharing_a_vertex() {
        let g = Dag::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let bc = g.block_cut_tree();
        assert_eq!(bc.blocks.len(), 2);
        assert_eq!(bc.cut_vertices, vec![2]);
    }

    #[test]
    fn star_is_caterpillar_and_spider_is_not() {
        let star = Dag::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(caterpillar_spine(&star).is_some());
        let spider = Dag::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert!(caterpillar_spine(&spider).is_none());
    }
}
