//! Brute-force minimum span: enumerate levelings, then search left-to-right
//! orders level by level. Serves as ground truth for the other solvers.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::drawing::{q, LayeredDrawing, Q};
use crate::embedding::{self, cyclic_eq, FaceSet, PlanarEmbedding, UpwardEmbedding};
use crate::graph::Dag;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("no drawing exists in the requested mode")]
    Infeasible,
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
}

#[derive(Debug, Clone)]
pub struct SearchBudget {
    pub max_vertices: usize,
    /// Maximum number of layers; `None` means n.
    pub max_height: Option<usize>,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_vertices: 12, max_height: None, time_limit: None }
    }
}

impl SearchBudget {
    pub fn with_max_vertices(mut self, n: usize) -> Self {
        self.max_vertices = n;
        self
    }

    pub fn with_time_limit(mut self, t: Duration) -> Self {
        self.time_limit = Some(t);
        self
    }

    fn deadline(&self) -> Option<Instant> {
        self.time_limit.map(|t| Instant::now() + t)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Mode<'a> {
    Free,
    FixedPlanar(&'a PlanarEmbedding),
    FixedUpward(&'a UpwardEmbedding),
}

#[derive(Debug, Clone)]
pub struct ExactSolution {
    pub span: i64,
    pub drawing: LayeredDrawing,
}

/// Left-to-right order requirement for the edges on one side of a vertex.
#[derive(Debug, Clone)]
enum OrderReq {
    Any,
    Exact(Vec<usize>),
    Cyclic(Vec<usize>),
}

/// Rotation constraints derived from a fixed embedding.
#[derive(Debug, Clone)]
pub(crate) struct Fixed {
    out_req: Vec<OrderReq>,
    in_req: Vec<OrderReq>,
    faces: FaceSet,
    /// `rot_pos[v]` lists `(edge, position)` in the expected rotation.
    rot_pos: Vec<Vec<(usize, usize)>>,
}

impl Fixed {
    pub(crate) fn planar(dag: &Dag, emb: &PlanarEmbedding) -> Option<Fixed> {
        Fixed::build(dag, emb, None)
    }

    pub(crate) fn upward(dag: &Dag, ue: &UpwardEmbedding) -> Option<Fixed> {
        Fixed::build(dag, &ue.base, Some(&ue.large_angles))
    }

    fn build(dag: &Dag, emb: &PlanarEmbedding, large: Option<&[(usize, usize)]>) -> Option<Fixed> {
        let faces = embedding::faces(dag, emb).ok()?;
        if !embedding::is_bimodal(dag.edges(), &emb.rotation) {
            return None;
        }
        let edges = dag.edges();
        let mut out_req = Vec::with_capacity(dag.n());
        let mut in_req = Vec::with_capacity(dag.n());
        for v in 0..dag.n() {
            let rot = &emb.rotation[v];
            let k = rot.len();
            let is_out = |e: usize| edges[e].0 == v;
            let outs = rot.iter().filter(|&&e| is_out(e)).count();
            if k == 0 {
                out_req.push(OrderReq::Any);
                in_req.push(OrderReq::Any);
            } else if outs == k || outs == 0 {
                let corner = large.and_then(|l| l.iter().find(|p| p.0 == v).map(|p| p.1));
                let req = match corner {
                    // sources list rot[c], rot[c-1], ...; sinks rot[c+1], ..., rot[c]
                    Some(c) if outs == k => OrderReq::Exact((0..k).map(|i| rot[(c + k - i) % k]).collect()),
                    Some(c) => OrderReq::Exact((1..=k).map(|i| rot[(c + i) % k]).collect()),
                    None if outs == k => OrderReq::Cyclic(rot.iter().rev().copied().collect()),
                    None => OrderReq::Cyclic(rot.clone()),
                };
                if outs == k {
                    out_req.push(req);
                    in_req.push(OrderReq::Any);
                } else {
                    out_req.push(OrderReq::Any);
                    in_req.push(req);
                }
            } else {
                // rotate so the out block starts at index 0
                let start = (0..k).find(|&i| is_out(rot[i]) && !is_out(rot[(i + k - 1) % k])).unwrap();
                let lin: Vec<usize> = (0..k).map(|i| rot[(start + i) % k]).collect();
                let ccw_out: Vec<usize> = lin[..outs].to_vec();
                out_req.push(OrderReq::Exact(ccw_out.into_iter().rev().collect()));
                in_req.push(OrderReq::Exact(lin[outs..].to_vec()));
            }
        }
        let rot_pos = emb.rotation.iter().map(|r| r.iter().enumerate().map(|(i, &e)| (e, i)).collect()).collect();
        Some(Fixed { out_req, in_req, faces, rot_pos })
    }

    fn pos_of(&self, v: usize, e: usize) -> usize {
        self.rot_pos[v].iter().find(|p| p.0 == e).unwrap().1
    }
}

struct Item {
    /// Item indices on the level below.
    down: Vec<usize>,
    /// `(u, e)`: this item carries out-edge `e` of vertex `u` on the level below.
    reg: Vec<(usize, usize)>,
    vertex: Option<usize>,
}

struct Timeout;

struct Search<'a> {
    dag: &'a Dag,
    levels: Vec<Vec<Item>>,
    fixed: Option<&'a Fixed>,
    memo: HashSet<(usize, Vec<u16>)>,
    /// `cont[l][i]`: item `i` of level `l` has something above it.
    cont: Vec<Vec<bool>>,
    /// `(a, b)` per level: item `a` must be placed left of item `b`.
    before: Vec<Vec<(usize, usize)>>,
    pos: Vec<Vec<usize>>,
    /// (progress, cyclic offset) per vertex for its out-edge order.
    prog: Vec<(usize, usize)>,
    deadline: Option<Instant>,
    nodes: u64,
    y: Vec<i64>,
    edge_item: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn tick(&mut self) -> Result<(), Timeout> {
        self.nodes += 1;
        if self.nodes % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Timeout);
                }
            }
        }
        Ok(())
    }

    fn level(&mut self, l: usize) -> Result<bool, Timeout> {
        if l == self.levels.len() {
            return Ok(true);
        }
        let k = self.levels[l].len();
        let mut order = Vec::with_capacity(k);
        let mut used = vec![false; k];
        self.place(l, &mut order, &mut used, 0)
    }

    fn in_order_ok(&self, l: usize, v: usize) -> bool {
        let Some(fx) = self.fixed else { return true };
        let req = &fx.in_req[v];
        if matches!(req, OrderReq::Any) {
            return true;
        }
        // position of the item below carrying each in-edge
        let mut ins: Vec<(usize, usize)> = self.dag.in_edges(v).iter().map(|&e| (self.below_pos(l, e), e)).collect();
        ins.sort_unstable();
        let lin: Vec<usize> = ins.into_iter().map(|p| p.1).collect();
        match req {
            OrderReq::Any => true,
            OrderReq::Exact(s) => &lin == s,
            OrderReq::Cyclic(s) => cyclic_eq(&lin, s),
        }
    }

    /// Position on level `l - 1` of the item carrying edge `e`.
    fn below_pos(&self, l: usize, e: usize) -> usize {
        let t = self.dag.edge(e).0;
        let i = l - 1 - self.y[t] as usize;
        self.pos[l - 1][self.edge_item[e][i]]
    }

    fn place(&mut self, l: usize, order: &mut Vec<usize>, used: &mut [bool], m: usize) -> Result<bool, Timeout> {
        self.tick()?;
        let items = &self.levels[l];
        if order.len() == items.len() {
            if l == 1 && !self.outer_ok(order) {
                return Ok(false);
            }
            // only items continuing upward matter for the levels above
            let key = (l, order.iter().filter(|&&i| self.cont[l][i]).map(|&i| i as u16).collect::<Vec<_>>());
            if self.memo.contains(&key) {
                return Ok(false);
            }
            for (p, &i) in order.iter().enumerate() {
                self.pos[l][i] = p;
            }
            let ok = self.level(l + 1)?;
            if !ok {
                self.memo.insert(key);
            }
            return Ok(ok);
        }
        let pos_below = if l > 0 { &self.pos[l - 1] } else { &self.pos[0] };
        // every remaining connected item must still fit to the right of m
        for (i, it) in items.iter().enumerate() {
            if !used[i] && it.down.iter().any(|&b| pos_below[b] < m) {
                return Ok(false);
            }
        }
        for i in 0..items.len() {
            if used[i] || self.before[l].iter().any(|&(a, b)| b == i && !used[a]) {
                continue;
            }
            let it = &self.levels[l][i];
            let (lo, hi) =
                it.down.iter().map(|&b| self.pos[l - 1][b]).fold((usize::MAX, 0), |(a, b), p| (a.min(p), b.max(p)));
            if !it.down.is_empty() && lo < m {
                continue;
            }
            let new_m = if it.down.is_empty() { m } else { m.max(hi) };
            if !self.fixed_step(l, i) {
                continue;
            }
            used[i] = true;
            order.push(i);
            let r = self.place(l, order, used, new_m);
            order.pop();
            used[i] = false;
            self.fixed_undo(l, i);
            if r? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Apply rotation constraints for placing item `i` next on level `l`.
    fn fixed_step(&mut self, l: usize, i: usize) -> bool {
        let Some(fx) = self.fixed else { return true };
        let it = &self.levels[l][i];
        if let Some(v) = it.vertex {
            if l > 0 && !self.in_order_ok(l, v) {
                return false;
            }
        }
        let mut applied = 0;
        let mut ok = true;
        for &(u, e) in &it.reg {
            let (k, off) = self.prog[u];
            let good = match &fx.out_req[u] {
                OrderReq::Any => true,
                OrderReq::Exact(s) => s[k] == e,
                OrderReq::Cyclic(s) => {
                    if k == 0 {
                        self.prog[u].1 = s.iter().position(|&x| x == e).unwrap();
                        true
                    } else {
                        s[(off + k) % s.len()] == e
                    }
                }
            };
            if !good {
                ok = false;
                break;
            }
            self.prog[u].0 += 1;
            applied += 1;
        }
        if !ok {
            let regs: Vec<usize> = self.levels[l][i].reg.iter().take(applied).map(|p| p.0).collect();
            for u in regs {
                self.prog[u].0 -= 1;
            }
        }
        ok
    }

    fn fixed_undo(&mut self, l: usize, i: usize) {
        if self.fixed.is_none() {
            return;
        }
        let regs: Vec<usize> = self.levels[l][i].reg.iter().map(|p| p.0).collect();
        for u in regs {
            self.prog[u].0 -= 1;
        }
    }

    /// The left side of the leftmost vertex on level 0 must be the expected
    /// outer face.
    fn outer_ok(&self, order1: &[usize]) -> bool {
        let Some(fx) = self.fixed else { return true };
        let first = self.pos[0].iter().position(|&p| p == 0);
        let Some(idx0) = first else { return true };
        let Some(v0) = self.levels[0][idx0].vertex else { return true };
        let leftmost = order1.iter().flat_map(|&i| self.levels[1][i].reg.iter()).find(|p| p.0 == v0).map(|p| p.1);
        match leftmost {
            None => true,
            Some(a) => fx.faces.corner_face[v0][fx.pos_of(v0, a)] == fx.faces.outer,
        }
    }
}

/// Items per level plus, for each edge, the item index on every level it touches.
fn build_items(dag: &Dag, y: &[i64]) -> (Vec<Vec<Item>>, Vec<Vec<usize>>) {
    let h = y.iter().copied().max().unwrap_or(0) as usize;
    let mut levels: Vec<Vec<Item>> = (0..=h).map(|_| Vec::new()).collect();
    let mut vidx = vec![0usize; dag.n()];
    for v in 0..dag.n() {
        vidx[v] = levels[y[v] as usize].len();
        levels[y[v] as usize].push(Item { down: vec![], reg: vec![], vertex: Some(v) });
    }
    // edge_item[e][i] = item index on level y(tail)+i
    let mut edge_item: Vec<Vec<usize>> = Vec::with_capacity(dag.m());
    for (e, &(t, hd)) in dag.edges().iter().enumerate() {
        let (a, b) = (y[t] as usize, y[hd] as usize);
        let mut chain = vec![vidx[t]];
        for l in a + 1..b {
            chain.push(levels[l].len());
            levels[l].push(Item { down: vec![], reg: vec![], vertex: None });
        }
        chain.push(vidx[hd]);
        for (i, l) in (a + 1..=b).enumerate() {
            let below = chain[i];
            let here = chain[i + 1];
            levels[l][here].down.push(below);
            if l == a + 1 {
                levels[l][here].reg.push((t, e));
            }
        }
        edge_item.push(chain);
    }
    for lv in &mut levels {
        for it in lv {
            it.down.sort_unstable();
        }
    }
    (levels, edge_item)
}

fn edge_item_vertex(level: &[Item], v: usize) -> usize {
    level.iter().position(|it| it.vertex == Some(v)).unwrap()
}

/// Search for a drawing with exactly the given leveling (levels are
/// shifted so the minimum is 0).
pub(crate) fn realize(
    dag: &Dag,
    leveling: &[i64],
    fixed: Option<&Fixed>,
    deadline: Option<Instant>,
) -> Result<Option<LayeredDrawing>, ExactError> {
    if dag.n() == 0 {
        return Ok(Some(LayeredDrawing { level: vec![], x: vec![], wires: vec![] }));
    }
    let base = leveling.iter().copied().min().unwrap();
    let y: Vec<i64> = leveling.iter().map(|&l| l - base).collect();
    if dag.edges().iter().any(|&(t, h)| y[h] <= y[t]) {
        return Ok(None);
    }
    let (levels, edge_item) = build_items(dag, &y);
    let pos = levels.iter().map(|l| vec![0usize; l.len()]).collect();
    let mut cont: Vec<Vec<bool>> = levels.iter().map(|l| vec![false; l.len()]).collect();
    for l in 1..levels.len() {
        for it in &levels[l] {
            for &b in &it.down {
                cont[l - 1][b] = true;
            }
        }
    }
    let mut before = vec![Vec::new(); levels.len()];
    if fixed.is_none() {
        // twins on one level are interchangeable: order them by the wire
        // from their lowest common in-neighbour, or by themselves
        for class in twin_classes(dag) {
            for w in class.windows(2) {
                let (a, b) = (w[0], w[1]);
                if y[a] != y[b] {
                    continue;
                }
                let low = dag.in_edges(a).iter().map(|&e| dag.edge(e).0).min_by_key(|&p| (y[p], p));
                let (l, ia, ib) = match low {
                    Some(p) => {
                        let (ea, eb) = (dag.find_edge(p, a).unwrap(), dag.find_edge(p, b).unwrap());
                        (y[p] as usize + 1, edge_item[ea][1], edge_item[eb][1])
                    }
                    None => {
                        let l = y[a] as usize;
                        (l, edge_item_vertex(&levels[l], a), edge_item_vertex(&levels[l], b))
                    }
                };
                before[l].push((ia, ib));
            }
        }
    }
    let mut s = Search {
        dag,
        levels,
        fixed,
        memo: HashSet::new(),
        cont,
        before,
        pos,
        prog: vec![(0, 0); dag.n()],
        deadline,
        nodes: 0,
        y: y.clone(),
        edge_item: edge_item.clone(),
    };
    match s.level(0) {
        Err(Timeout) => Err(ExactError::BudgetExceeded("time limit reached".into())),
        Ok(false) => Ok(None),
        Ok(true) => {
            let x: Vec<Q> = (0..dag.n())
                .map(|v| {
                    let l = y[v] as usize;
                    let idx = s.levels[l].iter().position(|it| it.vertex == Some(v)).unwrap();
                    q(s.pos[l][idx] as i64)
                })
                .collect();
            let wires = dag
                .edges()
                .iter()
                .enumerate()
                .map(|(e, &(t, _))| {
                    edge_item[e].iter().enumerate().map(|(i, &it)| q(s.pos[y[t] as usize + i][it] as i64)).collect()
                })
                .collect();
            Ok(Some(LayeredDrawing { level: y, x, wires }))
        }
    }
}

/// Drawing with exactly this leveling, optionally preserving an embedding.
pub fn level_planar(
    dag: &Dag,
    leveling: &[i64],
    fixed: Option<Mode>,
    budget: &SearchBudget,
) -> Result<Option<LayeredDrawing>, ExactError> {
    if dag.n() > budget.max_vertices {
        return Err(ExactError::BudgetExceeded(format!("{} vertices > {}", dag.n(), budget.max_vertices)));
    }
    let fx = match fixed {
        None | Some(Mode::Free) => None,
        Some(Mode::FixedPlanar(p)) => Some(Fixed::planar(dag, p).ok_or(ExactError::Infeasible)?),
        Some(Mode::FixedUpward(u)) => Some(Fixed::upward(dag, u).ok_or(ExactError::Infeasible)?),
    };
    realize(dag, leveling, fx.as_ref(), budget.deadline())
}

/// Enumerate levelings of a connected DAG (vertex 0 at level 0) with
/// `1 <= span(e) <= max_span[e]`. Visitor returns `Ok(true)` to stop.
pub(crate) fn for_each_leveling<E>(
    dag: &Dag,
    max_span: &[i64],
    gap_free: bool,
    visit: &mut dyn FnMut(&[i64]) -> Result<bool, E>,
) -> Result<bool, E> {
    let n = dag.n();
    if n == 0 {
        return visit(&[]);
    }
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for w in dag.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    assert_eq!(order.len(), n, "leveling enumeration needs a connected graph");
    let mut y = vec![i64::MIN; n];
    y[0] = 0;
    #[allow(clippy::too_many_arguments)]
    fn rec<E>(
        dag: &Dag,
        order: &[usize],
        i: usize,
        y: &mut Vec<i64>,
        max_span: &[i64],
        gap_free: bool,
        visit: &mut dyn FnMut(&[i64]) -> Result<bool, E>,
    ) -> Result<bool, E> {
        if i == order.len() {
            if gap_free {
                let mut ls: Vec<i64> = y.clone();
                ls.sort_unstable();
                ls.dedup();
                if ls.windows(2).any(|w| w[1] - w[0] > 1) {
                    return Ok(false);
                }
            }
            let base = *y.iter().min().unwrap();
            let norm: Vec<i64> = y.iter().map(|&l| l - base).collect();
            return visit(&norm);
        }
        let v = order[i];
        let (mut lo, mut hi) = (i64::MIN, i64::MAX);
        for &e in dag.in_edges(v) {
            let u = dag.edge(e).0;
            if y[u] != i64::MIN {
                lo = lo.max(y[u] + 1);
                hi = hi.min(y[u] + max_span[e]);
            }
        }
        for &e in dag.out_edges(v) {
            let u = dag.edge(e).1;
            if y[u] != i64::MIN {
                lo = lo.max(y[u] - max_span[e]);
                hi = hi.min(y[u] - 1);
            }
        }
        if lo == i64::MIN || hi == i64::MAX {
            unreachable!("BFS order guarantees an assigned neighbour");
        }
        for l in lo..=hi {
            y[v] = l;
            if rec(dag, order, i + 1, y, max_span, gap_free, visit)? {
                y[v] = i64::MIN;
                return Ok(true);
            }
        }
        y[v] = i64::MIN;
        Ok(false)
    }
    rec(dag, &order, 1, &mut y, max_span, gap_free, visit)
}

/// Generic search used by the oracle and the kernel solver: first drawing
/// (in enumeration order) whose leveling has span ≤ `max_span[e]` per edge,
/// passes `accept`, and is realizable.
pub(crate) fn find_drawing(
    dag: &Dag,
    max_span: &[i64],
    gap_free: bool,
    accept: &dyn Fn(&[i64]) -> bool,
    fixed: Option<&Fixed>,
    deadline: Option<Instant>,
) -> Result<Option<LayeredDrawing>, ExactError> {
    let mut found = None;
    for_each_leveling(dag, max_span, gap_free, &mut |y| {
        if !accept(y) {
            return Ok(false);
        }
        if let Some(d) = realize(dag, y, fixed, deadline)? {
            found = Some(d);
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

/// Groups of at least two vertices with identical in- and out-neighbour
/// sets. Twins are interchangeable, so a search may fix their level order.
pub(crate) fn twin_classes(dag: &Dag) -> Vec<Vec<usize>> {
    let mut groups: std::collections::BTreeMap<(Vec<usize>, Vec<usize>), Vec<usize>> = Default::default();
    for v in 0..dag.n() {
        let mut ins: Vec<usize> = dag.in_edges(v).iter().map(|&e| dag.edge(e).0).collect();
        let mut outs: Vec<usize> = dag.out_edges(v).iter().map(|&e| dag.edge(e).1).collect();
        ins.sort_unstable();
        outs.sort_unstable();
        groups.entry((ins, outs)).or_default().push(v);
    }
    groups.into_values().filter(|g| g.len() > 1).collect()
}

pub(crate) fn twins_sorted(twins: &[Vec<usize>], y: &[i64]) -> bool {
    twins.iter().all(|g| g.windows(2).all(|w| y[w[0]] <= y[w[1]]))
}

/// Some upward embedding of a connected DAG, by enumerating rotation
/// systems, outer faces and large-angle assignments.
pub fn find_upward_embedding(dag: &Dag) -> Option<UpwardEmbedding> {
    if dag.m() == 0 {
        return (dag.n() == 1).then(|| UpwardEmbedding {
            base: PlanarEmbedding { rotation: vec![vec![]], outer_dart: 0 },
            large_angles: vec![],
        });
    }
    let mut result = None;
    embedding::for_each_planar_rotation(dag.n(), dag.edges(), &mut |rot| {
        if !embedding::is_bimodal(dag.edges(), rot) {
            return false;
        }
        let fs = embedding::compute_faces(dag.n(), dag.edges(), rot, 0).expect("planar rotation");
        for f in &fs.faces {
            let base = PlanarEmbedding { rotation: rot.to_vec(), outer_dart: f.darts[0] };
            if let Some(a) = embedding::upward_assignments(dag.n(), dag.edges(), &base, Some(1)).pop() {
                result = Some(UpwardEmbedding { base, large_angles: a });
                return true;
            }
        }
        false
    });
    result
}

pub(crate) fn combine_side_by_side(dag: &Dag, parts: Vec<(Vec<usize>, Dag, LayeredDrawing)>) -> LayeredDrawing {
    let mut level = vec![0; dag.n()];
    let mut x = vec![q(0); dag.n()];
    let mut wires = vec![Vec::new(); dag.m()];
    let mut offset = q(0);
    for (verts, sub, d) in parts {
        let width = d.x.iter().chain(d.wires.iter().flatten()).copied().max().unwrap_or(q(0));
        for (i, &v) in verts.iter().enumerate() {
            level[v] = d.level[i];
            x[v] = d.x[i] + offset;
        }
        for (se, &(t, h)) in sub.edges().iter().enumerate() {
            let e = dag.find_edge(verts[t], verts[h]).unwrap();
            wires[e] = d.wires[se].iter().map(|&w| w + offset).collect();
        }
        offset += width + q(1);
    }
    LayeredDrawing { level, x, wires }
}

/// Minimum span over drawings in the given mode, by iterative deepening.
pub fn min_span_exact(dag: &Dag, mode: Mode, budget: &SearchBudget) -> Result<ExactSolution, ExactError> {
    if dag.n() > budget.max_vertices {
        return Err(ExactError::BudgetExceeded(format!("{} vertices > {}", dag.n(), budget.max_vertices)));
    }
    if dag.m() == 0 {
        let d =
            LayeredDrawing { level: vec![0; dag.n()], x: (0..dag.n()).map(|i| q(i as i64)).collect(), wires: vec![] };
        return Ok(ExactSolution { span: 0, drawing: d });
    }
    let comps = dag.components();
    if comps.len() > 1 {
        if !matches!(mode, Mode::Free) {
            return Err(ExactError::Infeasible);
        }
        let mut parts = Vec::new();
        let mut span = 0;
        for c in comps {
            let sub = dag.induced(&c);
            let sol = min_span_exact(&sub, Mode::Free, budget)?;
            span = span.max(sol.span);
            parts.push((c, sub, sol.drawing));
        }
        return Ok(ExactSolution { span, drawing: combine_side_by_side(dag, parts) });
    }
    let fixed = match mode {
        Mode::Free => {
            if find_upward_embedding(dag).is_none() {
                return Err(ExactError::Infeasible);
            }
            None
        }
        Mode::FixedPlanar(p) => {
            let fx = Fixed::planar(dag, p).ok_or(ExactError::Infeasible)?;
            if embedding::upward_assignments(dag.n(), dag.edges(), p, Some(1)).is_empty() {
                return Err(ExactError::Infeasible);
            }
            Some(fx)
        }
        Mode::FixedUpward(u) => {
            if !embedding::check_upward_embedding(dag, u).is_valid() {
                return Err(ExactError::Infeasible);
            }
            Some(Fixed::upward(dag, u).ok_or(ExactError::Infeasible)?)
        }
    };
    let deadline = budget.deadline();
    let max_h = budget.max_height.unwrap_or(dag.n()).max(1) as i64;
    // with a fixed embedding twins are no longer interchangeable
    let twins = if fixed.is_none() { twin_classes(dag) } else { Vec::new() };
    for k in 1..dag.n().max(2) as i64 {
        let bounds = vec![k; dag.m()];
        let accept = |y: &[i64]| {
            let top = y.iter().copied().max().unwrap_or(0);
            top < max_h && dag.edges().iter().any(|&(t, h)| y[h] - y[t] == k) && twins_sorted(&twins, y)
        };
        if let Some(d) = find_drawing(dag, &bounds, true, &accept, fixed.as_ref(), deadline)? {
            return Ok(ExactSolution { span: k, drawing: d });
        }
    }
    Err(ExactError::Infeasible)
}

/// Free-mode optimum together with the upward embedding of the witness.
pub fn min_span_exact_all_embeddings(
    dag: &Dag,
    budget: &SearchBudget,
) -> Result<(i64, UpwardEmbedding, LayeredDrawing), ExactError> {
    let sol = min_span_exact(dag, Mode::Free, budget)?;
    let emb = crate::drawing::induced_embedding(dag, &sol.drawing);
    Ok((sol.span, emb, sol.drawing))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{validate, EmbeddingCheck};

    fn diamond() -> Dag {
        Dag::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn alternating(n: usize) -> Dag {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| if i % 2 == 1 { (i - 1, i) } else { (i, i - 1) }).collect();
        Dag::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn diamond_leveling_is_realizable() {
        let g = diamond();
        let d = level_planar(&g, &[0, 1, 1, 2], None, &SearchBudget::default()).unwrap().unwrap();
        assert!(validate(&g, &d, None).unwrap().is_valid());
    }

    #[test]
    fn k5_has_no_layered_drawing() {
        let mut e = vec![];
        for a in 0..5 {
            for b in a + 1..5 {
                e.push((a, b));
            }
        }
        let g = Dag::from_edges(5, &e).unwrap();
        assert!(level_planar(&g, &[0, 1, 2, 3, 4], None, &SearchBudget::default()).unwrap().is_none());
        assert_eq!(min_span_exact(&g, Mode::Free, &SearchBudget::default()).unwrap_err(), ExactError::Infeasible);
    }

    #[test]
    fn alternating_path_on_two_levels() {
        let g = alternating(11);
        let y: Vec<i64> = (0..11).map(|i| (i % 2) as i64).collect();
        assert!(level_planar(&g, &y, None, &SearchBudget::default()).unwrap().is_some());
        let sol = min_span_exact(&alternating(5), Mode::Free, &SearchBudget::default()).unwrap();
        assert_eq!(sol.span, 1);
    }

    #[test]
    fn single_edge_and_k24() {
        let g = Dag::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(min_span_exact_all_embeddings(&g, &SearchBudget::default()).unwrap().0, 1);
        let k24 = Dag::from_edges(6, &[(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        // With u at level 0, |y(v)| <= 1. Equal levels force four nested
        // u-w-v arches (span 4); y(v) = 1 puts every w on level 2 where v
        // reaches only the two wires of u next to it. Hence span 3.
        let (span, emb, d) = min_span_exact_all_embeddings(&k24, &SearchBudget::default()).unwrap();
        assert_eq!(span, 3);
        assert!(embedding::check_upward_embedding(&k24, &emb).is_valid());
        assert!(validate(&k24, &d, Some(EmbeddingCheck::upward(&emb))).unwrap().is_valid());
    }

    #[test]
    fn triangle_fixed_modes() {
        // s=0, a=1, t=2
        let g = Dag::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let ue = find_upward_embedding(&g).unwrap();
        let sol = min_span_exact(&g, Mode::FixedUpward(&ue), &SearchBudget::default()).unwrap();
        assert_eq!(sol.span, 2);
        let r = validate(&g, &sol.drawing, Some(EmbeddingCheck::upward(&ue))).unwrap();
        assert!(r.is_valid(), "{:?}", r);
        let sol = min_span_exact(&g, Mode::FixedPlanar(&ue.base), &SearchBudget::default()).unwrap();
        assert_eq!(sol.span, 2);
        let r = validate(&g, &sol.drawing, Some(EmbeddingCheck::planar(&ue.base))).unwrap();
        assert!(r.is_valid());
    }

    #[test]
    fn disconnected_graph_is_drawn_side_by_side() {
        let g = Dag::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let sol = min_span_exact(&g, Mode::Free, &SearchBudget::default()).unwrap();
        assert_eq!(sol.span, 1);
        assert!(validate(&g, &sol.drawing, None).unwrap().is_valid());
    }

    #[test]
    fn budget_is_enforced() {
        let g = alternating(13);
        assert!(matches!(min_span_exact(&g, Mode::Free, &SearchBudget::default()), Err(ExactError::BudgetExceeded(_))));
    }
}
