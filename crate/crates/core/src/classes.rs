//! Polynomial solvers for restricted classes: planar st-graphs, single-source
//! graphs (fixed upward embedding, fixed planar embedding, free outerplanar)
//! and plane DAGs with few sources.

use std::collections::HashSet;

use thiserror::Error;

use crate::drawing::{q, LayeredDrawing};
use crate::embedding::{self, CornerKind, EmbeddingError, FaceSet, PlanarEmbedding, UpwardEmbedding};
use crate::flow::{self, FlowError};
use crate::graph::Dag;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("graph has {0} sources, expected exactly one")]
    MultipleSources(usize),
    #[error("not an st-graph: {0}")]
    NotStGraph(String),
    #[error("graph is not planar")]
    NotPlanar,
    #[error("graph is not outerplanar")]
    NotOuterplanar,
    #[error("embedding admits no upward-planar assignment")]
    NotUpwardPlanar,
    #[error("invalid upward embedding: {0}")]
    InvalidUpwardEmbedding(String),
    #[error("span bound must be at least 1")]
    BadBound,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

fn check_bound(k: i64) -> Result<(), ClassError> {
    if k < 1 {
        Err(ClassError::BadBound)
    } else {
        Ok(())
    }
}

fn single_vertex(dag: &Dag) -> Option<LayeredDrawing> {
    (dag.n() == 1).then(|| LayeredDrawing::straight(dag, vec![0], vec![q(0)]))
}

fn fresh_id(dag: &Dag, base: &str) -> String {
    let mut id = base.to_string();
    let mut i = 0;
    while dag.vertex(&id).is_some() {
        i += 1;
        id = format!("{base}{i}");
    }
    id
}

/// A planar embedding of an st-graph with s and t on the outer face.
pub fn st_embedding(dag: &Dag) -> Result<PlanarEmbedding, ClassError> {
    let (sources, sinks) = (dag.sources(), dag.sinks());
    if sources.len() != 1 || sinks.len() != 1 {
        return Err(ClassError::NotStGraph(format!("{} sources and {} sinks", sources.len(), sinks.len())));
    }
    let (s, t) = (sources[0], sinks[0]);
    if let Some(e) = dag.find_edge(s, t) {
        let rot = embedding::planar_rotation(dag.n(), dag.edges()).ok_or(ClassError::NotPlanar)?;
        return Ok(PlanarEmbedding { rotation: rot, outer_dart: 2 * e });
    }
    // route a helper edge s→t, take a face next to it as outer, drop it
    let (ext, old, new) = dag.with_extra_edges(&[(s, t)]).expect("s→t keeps an st-graph acyclic");
    let h = new[0];
    let rot = embedding::planar_rotation(ext.n(), ext.edges()).ok_or(ClassError::NotPlanar)?;
    let fs = embedding::compute_faces(ext.n(), ext.edges(), &rot, 2 * h)?;
    let walk = &fs.faces[fs.dart_face[2 * h]].darts;
    let i = walk.iter().position(|&d| d == 2 * h).unwrap();
    let next = walk[(i + 1) % walk.len()];
    let mut inv = vec![usize::MAX; ext.m()];
    for (e, &x) in old.iter().enumerate() {
        inv[x] = e;
    }
    Ok(PlanarEmbedding {
        rotation: rot.iter().map(|r| r.iter().filter(|&&e| e != h).map(|&e| inv[e]).collect()).collect(),
        outer_dart: 2 * inv[next / 2] + next % 2,
    })
}

/// Minimum-span question for a planar st-graph with free embedding: some
/// embedding with s and t on the outer face is fixed, then the dual
/// circulation decides span ≤ k.
pub fn solve_st_planar(dag: &Dag, k: i64) -> Result<Option<LayeredDrawing>, ClassError> {
    check_bound(k)?;
    if let Some(d) = single_vertex(dag) {
        return Ok(Some(d));
    }
    let emb = st_embedding(dag)?;
    Ok(flow::solve_st_plane(dag, &emb, &vec![k; dag.m()])?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// Edge into the top vertex of an internal face.
    FaceSink { face: usize },
    /// Edge into the added super-sink.
    SuperSink,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddedEdge {
    pub edge: usize,
    pub sigma: i64,
    pub origin: EdgeOrigin,
}

/// What the augmentation added, enough to strip a drawing back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationRecord {
    pub original_vertices: usize,
    pub added_vertices: Vec<usize>,
    pub added_edges: Vec<AddedEdge>,
    /// Index in the augmented graph of each original edge.
    pub edge_map: Vec<usize>,
}

impl AugmentationRecord {
    /// Drawing of the original graph inside a drawing of the augmented one.
    pub fn strip(&self, d: &LayeredDrawing) -> LayeredDrawing {
        let verts: Vec<usize> = (0..self.original_vertices).collect();
        d.restrict(&verts, &self.edge_map)
    }
}

#[derive(Debug, Clone)]
pub struct Augmented {
    pub dag: Dag,
    pub embedding: PlanarEmbedding,
    pub sigma: Vec<i64>,
    pub record: AugmentationRecord,
}

/// Plane st-graph containing a single-source upward-plane graph, with span
/// bound `k` on the old edges and n-1 on the new ones.
pub fn augment_single_source(dag: &Dag, ue: &UpwardEmbedding, k: i64) -> Result<Augmented, ClassError> {
    check_bound(k)?;
    augment_with_sigma(dag, ue, &vec![k; dag.m()])
}

/// Same as [`augment_single_source`] with a per-edge bound on old edges.
pub fn augment_with_sigma(dag: &Dag, ue: &UpwardEmbedding, sigma: &[i64]) -> Result<Augmented, ClassError> {
    let sources = dag.sources();
    if sources.len() != 1 {
        return Err(ClassError::MultipleSources(sources.len()));
    }
    let s = sources[0];
    if let Some(v) = embedding::check_upward_embedding(dag, ue).first() {
        return Err(ClassError::InvalidUpwardEmbedding(v.to_string()));
    }
    let n = dag.n();
    let edges = dag.edges();
    let t = n;
    let bound = (n as i64 - 1).max(1);
    let mut raw = edges.to_vec();
    let mut origins = Vec::new();
    let mut rot = ue.base.rotation.clone();
    let outer_dart;
    if dag.m() == 0 {
        raw.push((s, t));
        origins.push(EdgeOrigin::SuperSink);
        rot = vec![vec![0], vec![0]];
        outer_dart = 0;
    } else {
        let orig = &ue.base.rotation;
        let fs = embedding::faces(dag, &ue.base)?;
        let large: HashSet<(usize, usize)> = ue.large_angles.iter().copied().collect();
        // (vertex, edge to insert after, new edge)
        let mut inserts: Vec<(usize, usize, usize)> = Vec::new();
        let mut rot_t = Vec::new();
        let mut s_out = None;
        for (fi, f) in fs.faces.iter().enumerate() {
            let len = f.corners.len();
            let sink_switch = |i: usize| f.corners[i].kind(edges) == CornerKind::SinkSwitch;
            let is_large = |i: usize| large.contains(&(f.corners[i].vertex, f.corners[i].index));
            if f.is_outer {
                let start = (0..len)
                    .find(|&i| f.corners[i].vertex == s && is_large(i))
                    .expect("source keeps its large angle in the outer face");
                s_out = Some(orig[s][f.corners[start].index]);
                for j in 1..len {
                    let i = (start + j) % len;
                    if sink_switch(i) {
                        let c = f.corners[i];
                        let e = raw.len();
                        raw.push((c.vertex, t));
                        origins.push(EdgeOrigin::SuperSink);
                        inserts.push((c.vertex, orig[c.vertex][c.index], e));
                        rot_t.push(e);
                    }
                }
            } else {
                let tops: Vec<usize> = (0..len).filter(|&i| sink_switch(i) && !is_large(i)).collect();
                debug_assert_eq!(tops.len(), 1, "internal face {fi} has one top");
                let i0 = tops[0];
                let top = f.corners[i0];
                let mut after = orig[top.vertex][top.index];
                for j in 1..len {
                    let i = (i0 + j) % len;
                    if sink_switch(i) && is_large(i) {
                        let c = f.corners[i];
                        let e = raw.len();
                        raw.push((c.vertex, top.vertex));
                        origins.push(EdgeOrigin::FaceSink { face: fi });
                        inserts.push((c.vertex, orig[c.vertex][c.index], e));
                        inserts.push((top.vertex, after, e));
                        after = e;
                    }
                }
            }
        }
        for (v, after, e) in inserts {
            let p = rot[v].iter().position(|&x| x == after).unwrap();
            rot[v].insert(p + 1, e);
        }
        rot.push(rot_t);
        outer_dart = 2 * s_out.unwrap();
    }
    let t_id = fresh_id(dag, "t*");
    let (aug, old, new) = dag.extended(&[t_id], &raw[dag.m()..]).expect("edges into sinks keep the graph acyclic");
    let emb = embedding::embed_raw(&aug, &raw, &rot, outer_dart);
    let mut sig = vec![bound; aug.m()];
    for (e, &x) in old.iter().enumerate() {
        sig[x] = sigma[e];
    }
    let added_edges = new.iter().zip(origins).map(|(&edge, origin)| AddedEdge { edge, sigma: bound, origin }).collect();
    Ok(Augmented {
        dag: aug,
        embedding: emb,
        sigma: sig,
        record: AugmentationRecord { original_vertices: n, added_vertices: vec![t], added_edges, edge_map: old },
    })
}

/// Decide span(e) ≤ σ(e) for a single-source graph with a fixed upward
/// embedding, returning a drawing that preserves it.
pub fn solve_upward_plane_sigma(
    dag: &Dag,
    ue: &UpwardEmbedding,
    sigma: &[i64],
) -> Result<Option<LayeredDrawing>, ClassError> {
    if let Some(d) = single_vertex(dag) {
        return Ok(Some(d));
    }
    let aug = augment_with_sigma(dag, ue, sigma)?;
    let d = flow::solve_st_plane(&aug.dag, &aug.embedding, &aug.sigma)?;
    Ok(d.map(|d| aug.record.strip(&d)))
}

/// All upward embeddings extending a planar embedding of a single-source
/// graph. The face receiving each vertex's large angle never depends on the
/// choice; only the corner within that face can.
pub fn upward_embeddings_single_source(dag: &Dag, emb: &PlanarEmbedding) -> Result<Vec<UpwardEmbedding>, ClassError> {
    let sources = dag.sources();
    if sources.len() != 1 {
        return Err(ClassError::MultipleSources(sources.len()));
    }
    let fs = embedding::faces(dag, emb)?;
    let all = embedding::upward_assignments(dag.n(), dag.edges(), emb, None);
    let face_map = |a: &Vec<(usize, usize)>| -> Vec<(usize, usize)> {
        a.iter().map(|&(v, c)| (v, fs.corner_face[v][c])).collect()
    };
    if let Some(first) = all.first() {
        let m0 = face_map(first);
        assert!(
            all.iter().all(|a| face_map(a) == m0),
            "single-source assignment must fix the face of every large angle"
        );
    }
    Ok(all.into_iter().map(|large_angles| UpwardEmbedding { base: emb.clone(), large_angles }).collect())
}

#[derive(Debug, Clone, Copy)]
pub enum SingleSourceMode<'a> {
    UpwardPlane(&'a UpwardEmbedding),
    Plane(&'a PlanarEmbedding),
    FreeOuterplanar,
}

/// Decide span ≤ k for a single-source DAG and build a drawing.
pub fn solve_single_source(dag: &Dag, k: i64, mode: SingleSourceMode) -> Result<Option<LayeredDrawing>, ClassError> {
    check_bound(k)?;
    let sources = dag.sources();
    if sources.len() != 1 {
        return Err(ClassError::MultipleSources(sources.len()));
    }
    if let Some(d) = single_vertex(dag) {
        return Ok(Some(d));
    }
    let sigma = vec![k; dag.m()];
    match mode {
        SingleSourceMode::UpwardPlane(ue) => solve_upward_plane_sigma(dag, ue, &sigma),
        SingleSourceMode::Plane(emb) => solve_plane_sigma(dag, emb, &sigma),
        SingleSourceMode::FreeOuterplanar => {
            let emb = embedding::outerplanar_embedding(dag).ok_or(ClassError::NotOuterplanar)?;
            solve_plane_sigma(dag, &emb, &sigma)
        }
    }
}

fn solve_plane_sigma(dag: &Dag, emb: &PlanarEmbedding, sigma: &[i64]) -> Result<Option<LayeredDrawing>, ClassError> {
    let ues = upward_embeddings_single_source(dag, emb)?;
    if ues.is_empty() {
        return Err(ClassError::NotUpwardPlanar);
    }
    for ue in &ues {
        if let Some(d) = solve_upward_plane_sigma(dag, ue, sigma)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Decide span ≤ k for a single-source outerplanar DAG block by block: each
/// biconnected block is solved on its own outerplanar embedding.
pub fn outerplanar_blocks_feasible(dag: &Dag, k: i64) -> Result<bool, ClassError> {
    check_bound(k)?;
    let sources = dag.sources();
    if sources.len() != 1 {
        return Err(ClassError::MultipleSources(sources.len()));
    }
    for block in dag.block_cut_tree().blocks {
        let (sub, _) = dag.edge_subgraph(&block);
        if solve_single_source(&sub, k, SingleSourceMode::FreeOuterplanar)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Branch-and-solve state: the input plus a super-source `r = n` and the
/// edges added so far, embedded.
#[derive(Clone)]
struct XpState {
    edges: Vec<(usize, usize)>,
    rot: Vec<Vec<usize>>,
    outer_dart: usize,
    r_attached: bool,
}

impl XpState {
    fn live(&self) -> usize {
        if self.r_attached {
            self.rot.len()
        } else {
            self.rot.len() - 1
        }
    }

    fn faces(&self) -> Result<FaceSet, EmbeddingError> {
        let n = self.live();
        embedding::compute_faces(n, &self.edges, &self.rot[..n], self.outer_dart)
    }

    fn upward_possible(&self) -> bool {
        let n = self.live();
        let emb = PlanarEmbedding { rotation: self.rot[..n].to_vec(), outer_dart: self.outer_dart };
        !embedding::upward_assignments(n, &self.edges, &emb, Some(1)).is_empty()
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.iter().any(|&(t, h)| (t, h) == (a, b) || (t, h) == (b, a))
    }

    fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.rot.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            for &(t, h) in &self.edges {
                if t == v && !seen[h] {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
        false
    }
}

/// Counters from the last XP run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct XpStats {
    pub nodes: usize,
    pub leaves: usize,
}

/// Decide span ≤ k for a connected plane DAG with z sources, preserving the
/// given planar embedding. Each source gets an in-edge from a corner of one
/// of its faces (or from a new super-source r); the resulting single-source
/// instances are solved by the augmentation and circulation.
pub fn solve_plane_multisource_xp(
    dag: &Dag,
    emb: &PlanarEmbedding,
    k: i64,
) -> Result<Option<LayeredDrawing>, ClassError> {
    solve_plane_multisource_xp_stats(dag, emb, k).map(|(d, _)| d)
}

pub fn solve_plane_multisource_xp_stats(
    dag: &Dag,
    emb: &PlanarEmbedding,
    k: i64,
) -> Result<(Option<LayeredDrawing>, XpStats), ClassError> {
    check_bound(k)?;
    let mut stats = XpStats::default();
    if let Some(d) = single_vertex(dag) {
        return Ok((Some(d), stats));
    }
    embedding::faces(dag, emb)?;
    let mut rot = emb.rotation.clone();
    rot.push(Vec::new());
    let start = XpState { edges: dag.edges().to_vec(), rot, outer_dart: emb.outer_dart, r_attached: false };
    if !start.upward_possible() {
        return Ok((None, stats));
    }
    let sources = dag.sources();
    let d = xp_branch(dag, k, &sources, 0, start, &mut stats)?;
    Ok((d, stats))
}

fn xp_branch(
    dag: &Dag,
    k: i64,
    sources: &[usize],
    idx: usize,
    st: XpState,
    stats: &mut XpStats,
) -> Result<Option<LayeredDrawing>, ClassError> {
    stats.nodes += 1;
    let n = dag.n();
    let r = n;
    if idx == sources.len() {
        stats.leaves += 1;
        return xp_leaf(dag, k, &st);
    }
    let s = sources[idx];
    let fs = st.faces()?;
    for c in 0..st.rot[s].len() {
        let f = fs.corner_face[s][c];
        let face = &fs.faces[f];
        debug_assert!(face.corners.len() <= 2 * n);
        let mut children: Vec<XpState> = Vec::new();
        if !st.r_attached && f == fs.outer {
            let mut ch = st.clone();
            let e = ch.edges.len();
            ch.edges.push((r, s));
            ch.rot[r].push(e);
            embedding::insert_at_corner(&mut ch.rot, s, c, e);
            ch.r_attached = true;
            children.push(ch);
        }
        for corner in &face.corners {
            let u = corner.vertex;
            if u == s || st.adjacent(u, s) || st.reaches(s, u) {
                continue;
            }
            let mut ch = st.clone();
            let e = ch.edges.len();
            ch.edges.push((u, s));
            embedding::insert_at_corner(&mut ch.rot, u, corner.index, e);
            embedding::insert_at_corner(&mut ch.rot, s, c, e);
            if f != fs.outer {
                children.push(ch);
                continue;
            }
            // the chord splits the outer face; pick the side that stays outer
            for side in [2 * e, 2 * e + 1] {
                let mut opt = ch.clone();
                opt.outer_dart = side;
                if st.r_attached {
                    let Ok(nfs) = opt.faces() else { continue };
                    if !nfs.corner_face[r].contains(&nfs.outer) {
                        continue;
                    }
                }
                children.push(opt);
            }
        }
        for ch in children {
            if !ch.upward_possible() {
                continue;
            }
            if let Some(d) = xp_branch(dag, k, sources, idx + 1, ch, stats)? {
                return Ok(Some(d));
            }
        }
    }
    Ok(None)
}

fn xp_leaf(dag: &Dag, k: i64, st: &XpState) -> Result<Option<LayeredDrawing>, ClassError> {
    let n = dag.n();
    assert!(st.r_attached, "a DAG always keeps a source");
    let mut ids = dag.ids().to_vec();
    ids.push(fresh_id(dag, "r*"));
    let big = Dag::from_indices(ids, st.edges.clone()).expect("added edges keep the graph acyclic");
    let emb = embedding::embed_raw(&big, &st.edges, &st.rot, st.outer_dart);
    let mut sigma = vec![n as i64; big.m()];
    let edge_map: Vec<usize> = dag.edges().iter().map(|&(t, h)| big.find_edge(t, h).unwrap()).collect();
    for &e in &edge_map {
        sigma[e] = k;
    }
    let d = solve_plane_sigma(&big, &emb, &sigma)?;
    let verts: Vec<usize> = (0..n).collect();
    Ok(d.map(|d| d.restrict(&verts, &edge_map)))
}
