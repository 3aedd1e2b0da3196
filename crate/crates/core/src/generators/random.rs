//! Random instances for cross-checks: trees, plane st-graphs, upward-plane
//! graphs cut out of st-drawings, and single-source outerplanar DAGs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::drawing::induced_embedding;
use crate::embedding::{self, CornerKind, PlanarEmbedding, UpwardEmbedding};
use crate::flow;
use crate::graph::Dag;

/// The generator behind every seeded sample; fixed so that a seed means the
/// same instance on every platform.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random directed tree: vertex i > 0 hangs from a random earlier vertex,
/// edge directions are fair coin flips.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Dag {
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|i| {
            let p = rng.gen_range(0..i);
            if rng.gen_bool(0.5) {
                (p, i)
            } else {
                (i, p)
            }
        })
        .collect();
    Dag::from_edges(n, &edges).unwrap()
}

/// Tree in which every vertex is a source or a sink.
pub fn random_source_sink_tree<R: Rng>(n: usize, rng: &mut R) -> Dag {
    let mut depth = vec![0usize; n];
    let mut edges = Vec::new();
    let flip = rng.gen_bool(0.5);
    for i in 1..n {
        let p = rng.gen_range(0..i);
        depth[i] = depth[p] + 1;
        if (depth[p] % 2 == 0) != flip {
            edges.push((p, i));
        } else {
            edges.push((i, p));
        }
    }
    Dag::from_edges(n, &edges).unwrap()
}

/// Caterpillar with a spine of `spine` vertices and up to `max_leaves`
/// leaves per spine vertex.
pub fn random_caterpillar<R: Rng>(spine: usize, max_leaves: usize, rng: &mut R) -> Dag {
    let mut edges = Vec::new();
    let orient = |a: usize, b: usize, rng: &mut R| if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
    for i in 1..spine {
        edges.push(orient(i - 1, i, rng));
    }
    let mut n = spine;
    for v in 0..spine {
        for _ in 0..rng.gen_range(0..=max_leaves) {
            edges.push(orient(v, n, rng));
            n += 1;
        }
    }
    Dag::from_edges(n, &edges).unwrap()
}

/// Random DAG on `n` vertices: each pair i < j becomes an edge with
/// probability `p`, then vertices are shuffled.
pub fn random_dag<R: Rng>(n: usize, p: f64, rng: &mut R) -> Dag {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((perm[i], perm[j]));
            }
        }
    }
    Dag::from_edges(n, &edges).unwrap()
}

struct RawPlane {
    edges: Vec<(usize, usize)>,
    rot: Vec<Vec<usize>>,
    outer_dart: usize,
}

impl RawPlane {
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

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.iter().any(|&(t, h)| (t, h) == (a, b) || (t, h) == (b, a))
    }

    fn subdivide(&mut self, e: usize) {
        let (u, v) = self.edges[e];
        let w = self.rot.len();
        let f = self.edges.len();
        self.edges[e] = (u, w);
        self.edges.push((w, v));
        let p = self.rot[v].iter().position(|&x| x == e).unwrap();
        self.rot[v][p] = f;
        self.rot.push(vec![e, f]);
    }

    /// Add a chord a→b inside a random internal face if a legal one is found.
    fn chord<R: Rng>(&mut self, rng: &mut R) -> bool {
        let fs = embedding::compute_faces(self.rot.len(), &self.edges, &self.rot, self.outer_dart).unwrap();
        let internal: Vec<usize> = (0..fs.faces.len()).filter(|&f| f != fs.outer).collect();
        let Some(&f) = internal.choose(rng) else {
            return false;
        };
        let face = &fs.faces[f];
        let kind = |i: usize| face.corners[i].kind(&self.edges);
        let len = face.corners.len();
        let sf = (0..len).find(|&i| kind(i) == CornerKind::SourceSwitch).unwrap();
        let tf = (0..len).find(|&i| kind(i) == CornerKind::SinkSwitch).unwrap();
        for _ in 0..8 {
            let i = rng.gen_range(0..len);
            let j = rng.gen_range(0..len);
            let (a, b) = (face.corners[i].vertex, face.corners[j].vertex);
            if i == j || i == tf || j == sf || a == b || self.adjacent(a, b) || self.reaches(b, a) {
                continue;
            }
            let e = self.edges.len();
            self.edges.push((a, b));
            let (ca, cb) = (face.corners[i].index, face.corners[j].index);
            embedding::insert_at_corner(&mut self.rot, a, ca, e);
            embedding::insert_at_corner(&mut self.rot, b, cb, e);
            return true;
        }
        false
    }

    fn into_dag(self) -> (Dag, PlanarEmbedding) {
        let n = self.rot.len();
        let dag = Dag::from_edges(n, &self.edges).unwrap();
        let emb = embedding::embed_raw(&dag, &self.edges, &self.rot, self.outer_dart);
        (dag, emb)
    }
}

/// Random plane st-graph with `n ≥ 3` vertices, grown from a triangle by
/// edge subdivisions and chords inside internal faces. Vertex 0 is s.
pub fn random_plane_st<R: Rng>(n: usize, extra_chords: usize, rng: &mut R) -> (Dag, PlanarEmbedding) {
    assert!(n >= 3);
    // s=0, a=1, t=2 with a to the left of s→t
    let mut g =
        RawPlane { edges: vec![(0, 1), (1, 2), (0, 2)], rot: vec![vec![2, 0], vec![1, 0], vec![2, 1]], outer_dart: 0 };
    let mut chords = 0;
    let mut guard = 0;
    while g.rot.len() < n || chords < extra_chords {
        guard += 1;
        if guard > 50 * (n + extra_chords) {
            break;
        }
        if g.rot.len() < n && (chords >= extra_chords || rng.gen_bool(0.5)) {
            let e = rng.gen_range(0..g.edges.len());
            g.subdivide(e);
        } else if g.chord(rng) {
            chords += 1;
        }
    }
    g.into_dag()
}

/// Drawing-induced upward embedding of a random subgraph of a random plane
/// st-graph. With `single_source` the source stays unique; otherwise edges
/// are removed freely. The result is connected.
pub fn random_upward_plane<R: Rng>(n: usize, single_source: bool, rng: &mut R) -> (Dag, UpwardEmbedding) {
    random_upward_plane_with(n, single_source, 0.35, rng)
}

/// As [`random_upward_plane`], each edge being tried for removal with
/// probability `drop`.
pub fn random_upward_plane_with<R: Rng>(
    n: usize,
    single_source: bool,
    drop: f64,
    rng: &mut R,
) -> (Dag, UpwardEmbedding) {
    let (st, emb) = random_plane_st(n + 1, n / 2, rng);
    let big = st.n() as i64;
    let d = flow::solve_st_plane(&st, &emb, &vec![big; st.m()]).unwrap().expect("span n always suffices");
    let t = st.sinks()[0];
    let drop_t = rng.gen_bool(0.5);
    let mut keep_v: Vec<bool> = (0..st.n()).map(|v| !(drop_t && v == t)).collect();
    let mut keep_e: Vec<bool> = st.edges().iter().map(|&(a, b)| keep_v[a] && keep_v[b]).collect();
    let mut order: Vec<usize> = (0..st.m()).collect();
    order.shuffle(rng);
    for e in order {
        if !keep_e[e] || !rng.gen_bool(drop) {
            continue;
        }
        keep_e[e] = false;
        let (_, h) = st.edge(e);
        let in_left = st.in_edges(h).iter().any(|&x| keep_e[x]);
        let ok = (!single_source || in_left) && connected(&st, &keep_v, &keep_e);
        if !ok {
            keep_e[e] = true;
        }
    }
    // vertices left isolated (only possible for tiny graphs) are dropped
    for v in 0..st.n() {
        if keep_v[v] && st.incident(v).iter().all(|&e| !keep_e[e]) && st.n() > 1 {
            keep_v[v] = false;
        }
    }
    let verts: Vec<usize> = (0..st.n()).filter(|&v| keep_v[v]).collect();
    let edges: Vec<usize> = (0..st.m()).filter(|&e| keep_e[e]).collect();
    let sub = st.induced(&verts);
    let local: Vec<usize> = {
        let mut m = vec![usize::MAX; st.n()];
        for (i, &v) in verts.iter().enumerate() {
            m[v] = i;
        }
        m
    };
    let sub = Dag::from_indices(
        sub.ids().to_vec(),
        edges.iter().map(|&e| (local[st.edge(e).0], local[st.edge(e).1])).collect(),
    )
    .unwrap();
    let sub_edges: Vec<usize> = sub.edges().iter().map(|&(a, b)| st.find_edge(verts[a], verts[b]).unwrap()).collect();
    let dd = d.restrict(&verts, &sub_edges);
    let ue = induced_embedding(&sub, &dd);
    (sub, ue)
}

fn connected(g: &Dag, keep_v: &[bool], keep_e: &[bool]) -> bool {
    let start = match (0..g.n()).find(|&v| keep_v[v]) {
        Some(v) => v,
        None => return true,
    };
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for e in g.incident(v) {
            if keep_e[e] {
                let w = g.opposite(e, v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    (0..g.n()).all(|v| !keep_v[v] || seen[v])
}

/// Random single-source outerplanar DAG: polygons with random non-crossing
/// chords glued at cut vertices, plus pendant edges, oriented along a BFS
/// order from a random root.
pub fn random_outerplanar_single_source<R: Rng>(n: usize, rng: &mut R) -> Dag {
    let mut und: Vec<(usize, usize)> = Vec::new();
    let mut count = 1usize;
    while count < n {
        let attach = rng.gen_range(0..count);
        let remaining = n - count;
        if remaining == 1 || rng.gen_bool(0.25) {
            und.push((attach, count));
            count += 1;
            continue;
        }
        let k = rng.gen_range(2..=remaining.min(5));
        // polygon attach, count, ..., count+k-1
        let poly: Vec<usize> = std::iter::once(attach).chain(count..count + k).collect();
        for i in 0..poly.len() {
            und.push((poly[i], poly[(i + 1) % poly.len()]));
        }
        random_chords(&poly, rng, &mut und);
        count += k;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &und {
        adj[a].push(b);
        adj[b].push(a);
    }
    let root = rng.gen_range(0..n);
    let mut rank = vec![usize::MAX; n];
    rank[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut next = 1;
    while let Some(v) = queue.pop_front() {
        let mut nb = adj[v].clone();
        nb.shuffle(rng);
        for w in nb {
            if rank[w] == usize::MAX {
                rank[w] = next;
                next += 1;
                queue.push_back(w);
            }
        }
    }
    let edges: Vec<(usize, usize)> =
        und.into_iter().map(|(a, b)| if rank[a] < rank[b] { (a, b) } else { (b, a) }).collect();
    Dag::from_edges(n, &edges).unwrap()
}

/// Non-crossing chords of a convex polygon, each triangulation chord kept
/// with probability one half.
fn random_chords<R: Rng>(poly: &[usize], rng: &mut R, out: &mut Vec<(usize, usize)>) {
    if poly.len() <= 3 {
        return;
    }
    // split at a random chord from poly[0]
    let j = rng.gen_range(2..poly.len() - 1);
    if rng.gen_bool(0.5) {
        out.push((poly[0], poly[j]));
    }
    random_chords(&poly[..=j], rng, out);
    let rest: Vec<usize> = std::iter::once(poly[0]).chain(poly[j..].iter().copied()).collect();
    random_chords(&rest, rng, out);
}
