//! Rotation systems, face walks, corners and upward embeddings.
//!
//! Conventions used throughout the crate:
//! * dart `2e` runs tail→head of edge `e`, dart `2e+1` runs head→tail;
//! * rotations list incident edges counter-clockwise;
//! * corner `c` of `v` sits between `rot[v][c]` and `rot[v][c+1]` (cyclically);
//! * a face walk continues from dart `u→v` with the edge preceding it in the
//!   rotation of `v`, so every face lies to the left of its darts and
//!   internal faces are walked counter-clockwise. The walk enters corner `c`
//!   through `rot[c+1]` and leaves through `rot[c]`.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::Dag;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("inconsistent rotation: {0}")]
    InconsistentRotation(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("outer face reference {0} is not a dart of the graph")]
    BadOuterFace(usize),
}

pub fn dart_tail(edges: &[(usize, usize)], d: usize) -> usize {
    let (t, h) = edges[d / 2];
    if d % 2 == 0 {
        t
    } else {
        h
    }
}

pub fn dart_head(edges: &[(usize, usize)], d: usize) -> usize {
    dart_tail(edges, d ^ 1)
}

/// The dart of `e` that leaves `v`.
pub fn dart_from(edges: &[(usize, usize)], e: usize, v: usize) -> usize {
    if edges[e].0 == v {
        2 * e
    } else {
        2 * e + 1
    }
}

/// Rotation system plus a dart on the outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    pub rotation: Vec<Vec<usize>>,
    pub outer_dart: usize,
}

/// A planar embedding with one large-angle corner per source and sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpwardEmbedding {
    pub base: PlanarEmbedding,
    /// Sorted `(vertex, corner)` pairs.
    pub large_angles: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub vertex: usize,
    pub index: usize,
    /// Edge through which the walk enters the corner.
    pub in_edge: usize,
    /// Edge through which the walk leaves the corner.
    pub out_edge: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerKind {
    SourceSwitch,
    SinkSwitch,
    Flat,
}

impl Corner {
    pub fn kind(&self, edges: &[(usize, usize)]) -> CornerKind {
        let a_out = edges[self.in_edge].0 == self.vertex;
        let b_out = edges[self.out_edge].0 == self.vertex;
        match (a_out, b_out) {
            (true, true) => CornerKind::SourceSwitch,
            (false, false) => CornerKind::SinkSwitch,
            _ => CornerKind::Flat,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Darts in walk order.
    pub darts: Vec<usize>,
    /// `corners[i]` is the corner at the head of `darts[i]`.
    pub corners: Vec<Corner>,
    pub is_outer: bool,
}

impl Face {
    pub fn vertices(&self) -> Vec<usize> {
        self.corners.iter().map(|c| c.vertex).collect()
    }

    pub fn source_switches(&self, edges: &[(usize, usize)]) -> usize {
        self.corners.iter().filter(|c| c.kind(edges) == CornerKind::SourceSwitch).count()
    }
}

/// Faces of an embedded connected graph with lookup tables.
#[derive(Debug, Clone)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    pub dart_face: Vec<usize>,
    /// `corner_face[v][c]` is the face containing corner `c` of `v`.
    pub corner_face: Vec<Vec<usize>>,
    pub outer: usize,
}

/// Position of each dart's edge in the rotation of the dart's tail.
fn dart_positions(n: usize, edges: &[(usize, usize)], rot: &[Vec<usize>]) -> Result<Vec<usize>, EmbeddingError> {
    if rot.len() != n {
        return Err(EmbeddingError::InconsistentRotation(format!("{} rotation lists for {} vertices", rot.len(), n)));
    }
    let mut pos = vec![usize::MAX; 2 * edges.len()];
    for (v, list) in rot.iter().enumerate() {
        for (i, &e) in list.iter().enumerate() {
            if e >= edges.len() {
                return Err(EmbeddingError::InconsistentRotation(format!("edge {e} does not exist")));
            }
            let (t, h) = edges[e];
            let d = if t == v {
                2 * e
            } else if h == v {
                2 * e + 1
            } else {
                return Err(EmbeddingError::InconsistentRotation(format!(
                    "edge {e} listed at non-incident vertex {v}"
                )));
            };
            if pos[d] != usize::MAX {
                return Err(EmbeddingError::InconsistentRotation(format!("edge {e} repeated at vertex {v}")));
            }
            pos[d] = i;
        }
    }
    Ok(pos)
}

/// Darts of edges present in the rotation, grouped into face walks.
/// Edges absent from the rotation are skipped, so this also works on the
/// partial embeddings built during enumeration.
fn trace_walks(edges: &[(usize, usize)], rot: &[Vec<usize>], pos: &[usize]) -> (Vec<Vec<(usize, Corner)>>, Vec<usize>) {
    let mut dart_face = vec![usize::MAX; 2 * edges.len()];
    let mut walks = Vec::new();
    for start in 0..2 * edges.len() {
        if pos[start] == usize::MAX || dart_face[start] != usize::MAX {
            continue;
        }
        let id = walks.len();
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            dart_face[d] = id;
            let v = dart_head(edges, d);
            let deg = rot[v].len();
            let p = pos[d ^ 1];
            let q = (p + deg - 1) % deg;
            let e2 = rot[v][q];
            walk.push((d, Corner { vertex: v, index: q, in_edge: d / 2, out_edge: e2 }));
            d = dart_from(edges, e2, v);
            if d == start {
                break;
            }
        }
        walks.push(walk);
    }
    (walks, dart_face)
}

/// Face structure of a connected embedded graph given as raw edges.
pub fn compute_faces(
    n: usize,
    edges: &[(usize, usize)],
    rot: &[Vec<usize>],
    outer_dart: usize,
) -> Result<FaceSet, EmbeddingError> {
    let pos = dart_positions(n, edges, rot)?;
    if let Some(d) = pos.iter().position(|&p| p == usize::MAX) {
        return Err(EmbeddingError::InconsistentRotation(format!(
            "edge {} missing at vertex {}",
            d / 2,
            dart_tail(edges, d)
        )));
    }
    if edges.is_empty() {
        if n > 1 {
            return Err(EmbeddingError::Disconnected);
        }
        return Ok(FaceSet {
            faces: vec![Face { darts: vec![], corners: vec![], is_outer: true }],
            dart_face: vec![],
            corner_face: vec![Vec::new(); n],
            outer: 0,
        });
    }
    if outer_dart >= 2 * edges.len() {
        return Err(EmbeddingError::BadOuterFace(outer_dart));
    }
    let (walks, dart_face) = trace_walks(edges, rot, &pos);
    if rot.iter().any(|r| r.is_empty()) {
        return Err(EmbeddingError::Disconnected);
    }
    let outer = dart_face[outer_dart];
    let mut corner_face: Vec<Vec<usize>> = rot.iter().map(|r| vec![usize::MAX; r.len()]).collect();
    let faces: Vec<Face> = walks
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            for (_, c) in &w {
                corner_face[c.vertex][c.index] = i;
            }
            Face {
                darts: w.iter().map(|x| x.0).collect(),
                corners: w.into_iter().map(|x| x.1).collect(),
                is_outer: i == outer,
            }
        })
        .collect();
    // Euler: connectedness via V - E + F = 2
    if n + faces.len() != edges.len() + 2 {
        return Err(EmbeddingError::InconsistentRotation(format!(
            "Euler check failed: {} vertices, {} edges, {} faces",
            n,
            edges.len(),
            faces.len()
        )));
    }
    Ok(FaceSet { faces, dart_face, corner_face, outer })
}

/// Face set of an embedded DAG.
pub fn faces(dag: &Dag, emb: &PlanarEmbedding) -> Result<FaceSet, EmbeddingError> {
    compute_faces(dag.n(), dag.edges(), &emb.rotation, emb.outer_dart)
}

/// Genus-0 check: the rotation is consistent and satisfies Euler's formula.
pub fn is_planar_rotation(n: usize, edges: &[(usize, usize)], rot: &[Vec<usize>]) -> bool {
    compute_faces(n, edges, rot, 0).is_ok()
}

/// Outgoing edges consecutive at every vertex.
pub fn is_bimodal(edges: &[(usize, usize)], rot: &[Vec<usize>]) -> bool {
    rot.iter().enumerate().all(|(v, list)| {
        let k = list.len();
        let changes = (0..k).filter(|&i| (edges[list[i]].0 == v) != (edges[list[(i + 1) % k]].0 == v)).count();
        changes <= 2
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UpwardViolation {
    #[error("rotation invalid: {0}")]
    Rotation(EmbeddingError),
    #[error("vertex {vertex} is not bimodal")]
    NotBimodal { vertex: usize },
    #[error("vertex {vertex} has no corner {corner}")]
    BadCorner { vertex: usize, corner: usize },
    #[error("vertex {vertex} owns {found} large angles, expected {expected}")]
    LargeAngleCount { vertex: usize, expected: usize, found: usize },
    #[error("face {face} has {large} large angles and {source_switches} source-switch corners (outer: {is_outer})")]
    FaceBalance { face: usize, is_outer: bool, source_switches: usize, large: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpwardReport {
    pub violations: Vec<UpwardViolation>,
}

impl UpwardReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&UpwardViolation> {
        self.violations.first()
    }
}

/// Required large-angle count of a face.
fn required_large(source_switches: usize, is_outer: bool) -> Option<usize> {
    if is_outer {
        Some(source_switches + 1)
    } else {
        source_switches.checked_sub(1)
    }
}

fn is_switch_vertex(edges: &[(usize, usize)], rot: &[Vec<usize>], v: usize) -> bool {
    let list = &rot[v];
    !list.is_empty() && list.iter().all(|&e| (edges[e].0 == v) == (edges[list[0]].0 == v))
}

pub fn check_upward_raw(n: usize, edges: &[(usize, usize)], ue: &UpwardEmbedding) -> UpwardReport {
    let rot = &ue.base.rotation;
    let mut violations = Vec::new();
    let fs = match compute_faces(n, edges, rot, ue.base.outer_dart) {
        Ok(fs) => fs,
        Err(e) => return UpwardReport { violations: vec![UpwardViolation::Rotation(e)] },
    };
    for (v, list) in rot.iter().enumerate() {
        let k = list.len();
        let changes = (0..k).filter(|&i| (edges[list[i]].0 == v) != (edges[list[(i + 1) % k]].0 == v)).count();
        if changes > 2 {
            violations.push(UpwardViolation::NotBimodal { vertex: v });
        }
    }
    let mut owned = vec![0usize; n];
    let mut per_face = vec![0usize; fs.faces.len()];
    for &(v, c) in &ue.large_angles {
        if v >= n || c >= rot[v].len() {
            violations.push(UpwardViolation::BadCorner { vertex: v, corner: c });
            continue;
        }
        owned[v] += 1;
        per_face[fs.corner_face[v][c]] += 1;
    }
    for v in 0..n {
        let expected = usize::from(is_switch_vertex(edges, rot, v));
        if owned[v] != expected {
            violations.push(UpwardViolation::LargeAngleCount { vertex: v, expected, found: owned[v] });
        }
    }
    for (i, f) in fs.faces.iter().enumerate() {
        let s = f.source_switches(edges);
        if required_large(s, f.is_outer) != Some(per_face[i]) {
            violations.push(UpwardViolation::FaceBalance {
                face: i,
                is_outer: f.is_outer,
                source_switches: s,
                large: per_face[i],
            });
        }
    }
    UpwardReport { violations }
}

/// Validate an upward embedding: bimodality, one large angle per source and
/// sink (none elsewhere), and the per-face angle balance counted on corners.
pub fn check_upward_embedding(dag: &Dag, ue: &UpwardEmbedding) -> UpwardReport {
    check_upward_raw(dag.n(), dag.edges(), ue)
}

/// All large-angle assignments that turn `emb` into a valid upward
/// embedding, up to `limit` of them (`None` for all).
pub fn upward_assignments(
    n: usize,
    edges: &[(usize, usize)],
    emb: &PlanarEmbedding,
    limit: Option<usize>,
) -> Vec<Vec<(usize, usize)>> {
    let rot = &emb.rotation;
    let Ok(fs) = compute_faces(n, edges, rot, emb.outer_dart) else {
        return vec![];
    };
    if !is_bimodal(edges, rot) {
        return vec![];
    }
    let mut required = Vec::new();
    for f in &fs.faces {
        match required_large(f.source_switches(edges), f.is_outer) {
            Some(r) => required.push(r),
            None => return vec![],
        }
    }
    let switch_vertices: Vec<usize> = (0..n).filter(|&v| is_switch_vertex(edges, rot, v)).collect();
    let mut potential = vec![0usize; fs.faces.len()];
    let touched: Vec<Vec<usize>> = switch_vertices
        .iter()
        .map(|&v| {
            let mut fsv: Vec<usize> = fs.corner_face[v].clone();
            fsv.sort_unstable();
            fsv.dedup();
            fsv
        })
        .collect();
    for t in &touched {
        for &f in t {
            potential[f] += 1;
        }
    }
    struct Ctx<'a> {
        fs: &'a FaceSet,
        verts: &'a [usize],
        touched: &'a [Vec<usize>],
        required: Vec<usize>,
        count: Vec<usize>,
        potential: Vec<usize>,
        chosen: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
        limit: usize,
    }
    fn rec(cx: &mut Ctx, i: usize) {
        if cx.out.len() >= cx.limit {
            return;
        }
        if i == cx.verts.len() {
            if cx.count == cx.required {
                let mut a = cx.chosen.clone();
                a.sort_unstable();
                cx.out.push(a);
            }
            return;
        }
        let v = cx.verts[i];
        for &f in &cx.touched[i] {
            cx.potential[f] -= 1;
        }
        for c in 0..cx.fs.corner_face[v].len() {
            let f = cx.fs.corner_face[v][c];
            if cx.count[f] + 1 > cx.required[f] {
                continue;
            }
            cx.count[f] += 1;
            let ok = cx.touched[i].iter().all(|&g| cx.count[g] + cx.potential[g] >= cx.required[g]);
            if ok {
                cx.chosen.push((v, c));
                rec(cx, i + 1);
                cx.chosen.pop();
            }
            cx.count[f] -= 1;
        }
        for &f in &cx.touched[i] {
            cx.potential[f] += 1;
        }
    }
    let nf = fs.faces.len();
    // faces nobody touches must already be balanced
    if (0..nf).any(|f| potential[f] < required[f]) {
        return vec![];
    }
    let mut cx = Ctx {
        fs: &fs,
        verts: &switch_vertices,
        touched: &touched,
        required,
        count: vec![0; nf],
        potential,
        chosen: Vec::new(),
        out: Vec::new(),
        limit: limit.unwrap_or(usize::MAX),
    };
    rec(&mut cx, 0);
    cx.out
}

/// Same cyclic sequence (rotation equality).
pub fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|&x| x == a[0]) {
        None => false,
        Some(off) => (0..a.len()).all(|i| a[i] == b[(i + off) % b.len()]),
    }
}

fn corner_pair(rot: &[Vec<usize>], v: usize, c: usize) -> (usize, usize) {
    let r = &rot[v];
    (r[c], r[(c + 1) % r.len()])
}

/// Mirror image: reversed rotations, outer dart flipped, corners remapped.
pub fn mirror(ue: &UpwardEmbedding) -> UpwardEmbedding {
    let rotation: Vec<Vec<usize>> = ue.base.rotation.iter().map(|r| r.iter().rev().copied().collect()).collect();
    let mut large_angles: Vec<(usize, usize)> = ue
        .large_angles
        .iter()
        .map(|&(v, c)| {
            let d = rotation[v].len();
            (v, (2 * d - 2 - c) % d)
        })
        .collect();
    large_angles.sort_unstable();
    UpwardEmbedding { base: PlanarEmbedding { rotation, outer_dart: ue.base.outer_dart ^ 1 }, large_angles }
}

/// Equality of planar embeddings: cyclic rotations agree and the outer
/// darts lie on the same face.
pub fn same_planar(n: usize, edges: &[(usize, usize)], a: &PlanarEmbedding, b: &PlanarEmbedding) -> bool {
    if a.rotation.len() != b.rotation.len() {
        return false;
    }
    if !a.rotation.iter().zip(&b.rotation).all(|(x, y)| cyclic_eq(x, y)) {
        return false;
    }
    if edges.is_empty() {
        return true;
    }
    match compute_faces(n, edges, &a.rotation, a.outer_dart) {
        Ok(fs) => b.outer_dart < fs.dart_face.len() && fs.dart_face[b.outer_dart] == fs.outer,
        Err(_) => false,
    }
}

/// Equality of upward embeddings (large angles compared as edge pairs).
pub fn same_upward(n: usize, edges: &[(usize, usize)], a: &UpwardEmbedding, b: &UpwardEmbedding) -> bool {
    if !same_planar(n, edges, &a.base, &b.base) {
        return false;
    }
    let pairs = |u: &UpwardEmbedding| -> Option<HashSet<(usize, (usize, usize))>> {
        u.large_angles
            .iter()
            .map(|&(v, c)| {
                (v < u.base.rotation.len() && c < u.base.rotation[v].len())
                    .then(|| (v, corner_pair(&u.base.rotation, v, c)))
            })
            .collect()
    };
    match (pairs(a), pairs(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// Insert an edge occupying corner `c` of `v` (placed right after `rot[v][c]`).
pub fn insert_at_corner(rot: &mut [Vec<usize>], v: usize, c: usize, e: usize) {
    if rot[v].is_empty() {
        rot[v].push(e);
    } else {
        rot[v].insert(c + 1, e);
    }
}

/// Vertex insertion order and edge plan used by the rotation enumerator.
enum Step {
    Pendant { e: usize, old: usize, new: usize },
    Close { e: usize, a: usize, b: usize },
}

fn plan_steps(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Step>> {
    let mut adj = vec![Vec::new(); n];
    for (e, &(t, h)) in edges.iter().enumerate() {
        adj[t].push((e, h));
        adj[h].push((e, t));
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let mut order = vec![0usize];
    let mut placed = vec![false; n];
    if n == 0 {
        return Some(vec![]);
    }
    placed[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &(_, w) in &adj[v] {
            if !placed[w] {
                placed[w] = true;
                order.push(w);
            }
        }
    }
    if order.len() != n {
        return None;
    }
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut steps = Vec::new();
    for &v in order.iter().skip(1) {
        let mut back: Vec<(usize, usize)> = adj[v].iter().copied().filter(|&(_, w)| rank[w] < rank[v]).collect();
        back.sort_unstable();
        let (e, w) = back[0];
        steps.push(Step::Pendant { e, old: w, new: v });
        for &(e, w) in &back[1..] {
            steps.push(Step::Close { e, a: w, b: v });
        }
    }
    Some(steps)
}

/// Enumerate every planar rotation system of a connected graph exactly once.
/// The visitor returns `true` to stop. Returns `true` if stopped early and
/// `false` otherwise (also `false` for disconnected input, which is skipped).
pub fn for_each_planar_rotation(
    n: usize,
    edges: &[(usize, usize)],
    visit: &mut dyn FnMut(&[Vec<usize>]) -> bool,
) -> bool {
    let Some(steps) = plan_steps(n, edges) else {
        return false;
    };
    let mut rot = vec![Vec::new(); n];
    fn rec(
        edges: &[(usize, usize)],
        steps: &[Step],
        i: usize,
        rot: &mut Vec<Vec<usize>>,
        visit: &mut dyn FnMut(&[Vec<usize>]) -> bool,
    ) -> bool {
        if i == steps.len() {
            return visit(rot);
        }
        match steps[i] {
            Step::Pendant { e, old, new } => {
                let d = rot[old].len().max(1);
                for c in 0..d {
                    insert_at_corner(rot, old, c, e);
                    rot[new].push(e);
                    let stop = rec(edges, steps, i + 1, rot, visit);
                    rot[new].pop();
                    let p = rot[old].iter().position(|&x| x == e).unwrap();
                    rot[old].remove(p);
                    if stop {
                        return true;
                    }
                }
                false
            }
            Step::Close { e, a, b } => {
                let mut pos = vec![usize::MAX; 2 * edges.len()];
                for (v, list) in rot.iter().enumerate() {
                    for (k, &x) in list.iter().enumerate() {
                        pos[dart_from(edges, x, v)] = k;
                    }
                }
                let (walks, _) = trace_walks(edges, rot, &pos);
                for w in &walks {
                    let ca: Vec<usize> = w.iter().filter(|x| x.1.vertex == a).map(|x| x.1.index).collect();
                    let cb: Vec<usize> = w.iter().filter(|x| x.1.vertex == b).map(|x| x.1.index).collect();
                    for &x in &ca {
                        for &y in &cb {
                            insert_at_corner(rot, a, x, e);
                            insert_at_corner(rot, b, y, e);
                            let stop = rec(edges, steps, i + 1, rot, visit);
                            rot[a].remove(x + 1);
                            rot[b].remove(y + 1);
                            if stop {
                                return true;
                            }
                        }
                    }
                }
                false
            }
        }
    }
    rec(edges, &steps, 0, &mut rot, visit)
}

/// Some planar rotation of a connected graph, if it is planar.
pub fn planar_rotation(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut found = None;
    for_each_planar_rotation(n, edges, &mut |r| {
        found = Some(r.to_vec());
        true
    });
    found
}

/// Outerplanar embedding of a connected DAG (all vertices on the outer
/// face), or `None` if the graph is not outerplanar.
pub fn outerplanar_embedding(dag: &Dag) -> Option<PlanarEmbedding> {
    outerplanar_raw(dag.n(), dag.edges())
}

pub fn outerplanar_raw(n: usize, edges: &[(usize, usize)]) -> Option<PlanarEmbedding> {
    if n == 0 {
        return None;
    }
    if edges.is_empty() {
        return (n == 1).then(|| PlanarEmbedding { rotation: vec![vec![]], outer_dart: 0 });
    }
    let dag = Dag::from_indices((0..n).map(|i| i.to_string()).collect(), edges.to_vec()).ok()?;
    if !dag.is_connected() {
        return None;
    }
    let bc = dag.block_cut_tree();
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in &bc.blocks {
        let (sub, verts) = dag.edge_subgraph(block);
        // map local edge index back to the global one
        let global: Vec<usize> = sub.edges().iter().map(|&(t, h)| dag.find_edge(verts[t], verts[h]).unwrap()).collect();
        let mut chosen: Option<Vec<Vec<usize>>> = None;
        for_each_planar_rotation(sub.n(), sub.edges(), &mut |r| {
            let fs = compute_faces(sub.n(), sub.edges(), r, 0).expect("enumerated rotation is planar");
            for f in &fs.faces {
                let mut vs = f.vertices();
                vs.sort_unstable();
                vs.dedup();
                if vs.len() == sub.n() {
                    // linearize each rotation so the outer corner is last
                    let mut lin = vec![Vec::new(); sub.n()];
                    for c in &f.corners {
                        let rv = &r[c.vertex];
                        let k = rv.len();
                        lin[c.vertex] = (1..=k).map(|j| rv[(c.index + j) % k]).collect();
                    }
                    chosen = Some(lin);
                    return true;
                }
            }
            false
        });
        let lin = chosen?;
        for (lv, seq) in lin.into_iter().enumerate() {
            rotation[verts[lv]].extend(seq.into_iter().map(|le| global[le]));
        }
    }
    let fs = compute_faces(n, edges, &rotation, 0).ok()?;
    let outer = fs.faces.iter().find(|f| {
        let mut vs = f.vertices();
        vs.sort_unstable();
        vs.dedup();
        vs.len() == n
    })?;
    Some(PlanarEmbedding { rotation, outer_dart: outer.darts[0] })
}

/// Transfer a rotation system written over a raw edge list onto `dag`,
/// whose vertices use the same indices and whose edges are the raw ones in
/// some order.
pub fn embed_raw(
    dag: &Dag,
    raw_edges: &[(usize, usize)],
    raw_rot: &[Vec<usize>],
    raw_outer_dart: usize,
) -> PlanarEmbedding {
    let map: Vec<usize> =
        raw_edges.iter().map(|&(t, h)| dag.find_edge(t, h).expect("raw edge present in the DAG")).collect();
    PlanarEmbedding {
        rotation: raw_rot.iter().map(|r| r.iter().map(|&e| map[e]).collect()).collect(),
        outer_dart: 2 * map[raw_outer_dart / 2] + raw_outer_dart % 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Dag {
        // s=0, a=1, b=2, t=3
        Dag::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn count_rotations(n: usize, edges: &[(usize, usize)]) -> usize {
        let mut k = 0;
        for_each_planar_rotation(n, edges, &mut |_| {
            k += 1;
            false
        });
        k
    }

    #[test]
    fn diamond_has_two_faces() {
        let g = diamond();
        let rot = planar_rotation(4, g.edges()).unwrap();
        let fs = faces(&g, &PlanarEmbedding { rotation: rot, outer_dart: 0 }).unwrap();
        assert_eq!(fs.faces.len(), 2);
        let total: usize = fs.faces.iter().map(|f| f.darts.len()).sum();
        assert_eq!(total, 2 * g.m());
        assert_eq!(fs.faces.iter().filter(|f| f.is_outer).count(), 1);
    }

    #[test]
    fn single_edge_has_one_face() {
        let g = Dag::from_edges(2, &[(0, 1)]).unwrap();
        let fs = faces(&g, &PlanarEmbedding { rotation: vec![vec![0], vec![0]], outer_dart: 0 }).unwrap();
        assert_eq!(fs.faces.len(), 1);
        assert!(fs.faces[0].is_outer);
    }

    #[test]
    fn star_face_visits_center_twice() {
        let g = Dag::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let fs = faces(&g, &PlanarEmbedding { rotation: vec![vec![0, 1], vec![0], vec![1]], outer_dart: 0 }).unwrap();
        assert_eq!(fs.faces.len(), 1);
        assert_eq!(fs.faces[0].vertices().iter().filter(|&&v| v == 0).count(), 2);
    }

    #[test]
    fn inconsistent_rotation_is_reported() {
        let g = Dag::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let err = faces(&g, &PlanarEmbedding { rotation: vec![vec![0], vec![0], vec![1]], outer_dart: 0 });
        assert!(matches!(err, Err(EmbeddingError::InconsistentRotation(_))));
    }

    #[test]
    fn rotation_counts() {
        // K4: one embedding and its mirror
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert_eq!(count_rotations(4, &k4), 2);
        // trees: every rotation system is planar, product of (deg-1)!
        assert_eq!(count_rotations(4, &[(0, 1), (0, 2), (0, 3)]), 2);
        assert_eq!(count_rotations(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]), 6);
        assert_eq!(count_rotations(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]), 1);
    }

    #[test]
    fn k5_and_k33_are_not_planar() {
        let mut k5 = vec![];
        for a in 0..5 {
            for b in a + 1..5 {
                k5.push((a, b));
            }
        }
        assert!(planar_rotation(5, &k5).is_none());
        let mut k33 = vec![];
        for a in 0..3 {
            for b in 3..6 {
                k33.push((a, b));
            }
        }
        assert!(planar_rotation(6, &k33).is_none());
    }

    /// Brute-force oracle over all rotation systems.
    fn brute_planar_count(n: usize, edges: &[(usize, usize)]) -> usize {
        let mut base: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, &(t, h)) in edges.iter().enumerate() {
            base[t].push(e);
            base[h].push(e);
        }
        fn perms(list: &[usize]) -> Vec<Vec<usize>> {
            // cyclic orders: fix the first element
            if list.len() <= 2 {
                return vec![list.to_vec()];
            }
            let mut out = vec![];
            let rest = &list[1..];
            fn all(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
                if k == v.len() {
                    out.push(v.clone());
                    return;
                }
                for i in k..v.len() {
                    v.swap(k, i);
                    all(v, k + 1, out);
                    v.swap(k, i);
                }
            }
            let mut r = rest.to_vec();
            let mut tails = vec![];
            all(&mut r, 0, &mut tails);
            for t in tails {
                let mut p = vec![list[0]];
                p.extend(t);
                out.push(p);
            }
            out
        }
        let options: Vec<Vec<Vec<usize>>> = base.iter().map(|l| perms(l)).collect();
        let mut count = 0;
        let mut idx = vec![0usize; n];
        loop {
            let rot: Vec<Vec<usize>> = (0..n).map(|v| options[v][idx[v]].clone()).collect();
            if is_planar_rotation(n, edges, &rot) {
                count += 1;
            }
            let mut v = 0;
            while v < n {
                idx[v] += 1;
                if idx[v] < options[v].len() {
                    break;
                }
                idx[v] = 0;
                v += 1;
            }
            if v == n {
                return count;
            }
        }
    }

    #[test]
    fn enumerator_matches_brute_force() {
        let graphs: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (4, vec![(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]),
            (5, vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]),
            (5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)]),
            (6, vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]),
        ];
        for (n, e) in graphs {
            assert_eq!(count_rotations(n, &e), brute_planar_count(n, &e), "{e:?}");
        }
    }

    fn star_embedding() -> (Dag, PlanarEmbedding) {
        let g = Dag::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        (g, PlanarEmbedding { rotation: vec![vec![0, 1], vec![0], vec![1]], outer_dart: 0 })
    }

    #[test]
    fn star_with_two_large_angles_at_center_is_invalid() {
        let (g, base) = star_embedding();
        let ue = UpwardEmbedding { base, large_angles: vec![(0, 0), (0, 1)] };
        let r = check_upward_embedding(&g, &ue);
        assert!(!r.is_valid());
        assert!(r.violations.contains(&UpwardViolation::LargeAngleCount { vertex: 0, expected: 1, found: 2 }));
    }

    #[test]
    fn star_with_one_large_angle_per_vertex_is_valid() {
        let (g, base) = star_embedding();
        let ue = UpwardEmbedding { base, large_angles: vec![(0, 0), (1, 0), (2, 0)] };
        assert!(check_upward_embedding(&g, &ue).is_valid());
        let all = upward_assignments(3, g.edges(), &ue.base, None);
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn diamond_st_angles_are_valid() {
        let g = diamond();
        // ccw: s sees b then a going right-to-left above it
        let rotation = vec![vec![1, 0], vec![2, 0], vec![3, 1], vec![2, 3]];
        let base = PlanarEmbedding { rotation, outer_dart: 0 };
        let fs = faces(&g, &base).unwrap();
        let outer = &fs.faces[fs.outer];
        let s_corner = outer.corners.iter().find(|c| c.vertex == 0).unwrap().index;
        let t_corner = outer.corners.iter().find(|c| c.vertex == 3).unwrap().index;
        let ue = UpwardEmbedding { base, large_angles: vec![(0, s_corner), (3, t_corner)] };
        assert!(check_upward_embedding(&g, &ue).is_valid());
        let mirrored = mirror(&ue);
        assert!(check_upward_embedding(&g, &mirrored).is_valid());
        assert_eq!(upward_assignments(4, g.edges(), &ue.base, None).len(), 1);
    }

    #[test]
    fn outerplanarity() {
        let k4 = Dag::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(outerplanar_embedding(&k4).is_none());
        let k24 = Dag::from_edges(6, &[(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        assert!(outerplanar_embedding(&k24).is_none());
        let bowtie = Dag::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let emb = outerplanar_embedding(&bowtie).unwrap();
        let fs = faces(&bowtie, &emb).unwrap();
        let mut vs = fs.faces[fs.outer].vertices();
        vs.sort_unstable();
        vs.dedup();
        assert_eq!(vs.len(), 5);
    }
}
