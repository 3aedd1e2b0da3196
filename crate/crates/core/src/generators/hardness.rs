//! Reductions from 3-partition to 2-span upward planarity: a biconnected
//! single-source graph and a tree, each with a witness drawing built from a
//! valid partition.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Builder, GenError};
use crate::drawing::{q, qf, LayeredDrawing, Q};
use crate::graph::Dag;

/// Multiset `a` of 3m positive integers summing to m·B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePartitionInstance {
    pub a: Vec<u64>,
    pub m: usize,
    pub b: u64,
}

impl ThreePartitionInstance {
    pub fn new(a: Vec<u64>) -> Result<Self, GenError> {
        if a.is_empty() || a.len() % 3 != 0 {
            return Err(GenError::InvalidInstance(format!("{} numbers is not a positive multiple of 3", a.len())));
        }
        if a.contains(&0) {
            return Err(GenError::InvalidInstance("numbers must be positive".into()));
        }
        let m = a.len() / 3;
        let sum: u64 = a.iter().sum();
        if sum % m as u64 != 0 {
            return Err(GenError::InvalidInstance(format!("sum {sum} is not divisible by m = {m}")));
        }
        Ok(ThreePartitionInstance { a, m, b: sum / m as u64 })
    }

    /// B/4 < a < B/2 for every a. Reported, not enforced.
    pub fn strict_bounds(&self) -> bool {
        self.a.iter().all(|&x| 4 * x > self.b && 2 * x < self.b)
    }

    /// Every number increased by one; B grows by 3 and triples stay triples.
    pub fn shifted(&self) -> Self {
        ThreePartitionInstance { a: self.a.iter().map(|x| x + 1).collect(), m: self.m, b: self.b + 3 }
    }

    /// Instance actually encoded by the reductions: shifted when B is even.
    pub fn effective(&self) -> (Self, u64) {
        if self.b % 2 == 0 {
            (self.shifted(), 1)
        } else {
            (self.clone(), 0)
        }
    }

    pub fn check_partition(&self, groups: &[Vec<u64>]) -> Result<(), GenError> {
        if groups.len() != self.m {
            return Err(GenError::InvalidPartition(format!("{} groups, need {}", groups.len(), self.m)));
        }
        for g in groups {
            let s: u64 = g.iter().sum();
            if g.len() != 3 || s != self.b {
                return Err(GenError::InvalidPartition(format!(
                    "group {g:?} has sum {s}, need three numbers summing to {}",
                    self.b
                )));
            }
        }
        let mut all: Vec<u64> = groups.iter().flatten().copied().collect();
        let mut want = self.a.clone();
        all.sort_unstable();
        want.sort_unstable();
        if all != want {
            return Err(GenError::InvalidPartition("groups do not use the numbers of the instance".into()));
        }
        Ok(())
    }

    /// Brute-force search for a 3-partition; meant for small instances.
    pub fn solve(&self) -> Option<Vec<Vec<u64>>> {
        fn rec(left: &mut Vec<u64>, b: u64, out: &mut Vec<Vec<u64>>) -> bool {
            if left.is_empty() {
                return true;
            }
            let x = left.remove(0);
            for i in 0..left.len() {
                for j in i + 1..left.len() {
                    if x + left[i] + left[j] != b {
                        continue;
                    }
                    let (y, z) = (left[i], left[j]);
                    let mut rest: Vec<u64> =
                        left.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &v)| v).collect();
                    out.push(vec![x, y, z]);
                    if rec(&mut rest, b, out) {
                        return true;
                    }
                    out.pop();
                }
            }
            left.insert(0, x);
            false
        }
        let mut left = self.a.clone();
        left.sort_unstable();
        let mut out = Vec::new();
        rec(&mut left, self.b, &mut out).then_some(out)
    }
}

/// Role of every vertex and edge of a gadget graph, plus the instance that
/// was encoded (`shift` is 1 when every number was increased by one to make
/// B odd).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetMap {
    pub vertex_role: Vec<String>,
    pub edge_role: Vec<String>,
    pub instance: ThreePartitionInstance,
    pub shift: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    SingleSource,
    Tree,
}

/// Internal vertices `count`, joined from `from` to `to`.
fn chain(b: &mut Builder, from: usize, to: usize, count: usize, prefix: &str, role: &str) -> Vec<usize> {
    let mut p = b.path(from, count, true, prefix, role);
    b.edge(*p.last().unwrap(), to, role);
    p.push(to);
    p
}

struct Gadget {
    a: u64,
    /// s' .. r_a and s'' .. r_a
    p: [Vec<usize>; 2],
    /// r_a .. u_a on both sides (equal when a <= 2)
    q: [Vec<usize>; 2],
}

struct SingleSourceParts {
    s: usize,
    side: [usize; 2],
    t: Vec<usize>,
    top: usize,
    /// per i: per side (long, short)
    flp: Vec<[(Vec<usize>, Vec<usize>); 2]>,
    plus: [Vec<usize>; 2],
    gadgets: Vec<Gadget>,
}

const SIDES: [&str; 2] = ["L", "R"];

fn build_single_source(eff: &ThreePartitionInstance) -> (Builder, SingleSourceParts) {
    let (m, bb) = (eff.m, eff.b as usize);
    let unit = bb + 1;
    let mut b = Builder::default();
    let s = b.vertex("s", "frame");
    let side = [b.vertex("s'", "frame"), b.vertex("s''", "frame")];
    b.edge(s, side[0], "frame");
    b.edge(s, side[1], "frame");
    let t: Vec<usize> = (0..=m).map(|i| b.vertex(format!("t{i}"), "frame")).collect();
    let top = b.vertex("t'", "frame");
    let mut flp = Vec::new();
    for i in 0..=m {
        let len = (m + i) * unit;
        let per_side = [0, 1].map(|k| {
            let pre = format!("F{}.{i}", SIDES[k]);
            let long = chain(&mut b, side[k], t[i], len - 1, &format!("{pre}.long"), "flp.long");
            let short = chain(&mut b, side[k], t[i], len / 2 - 1, &format!("{pre}.short"), "flp.short");
            (long, short)
        });
        flp.push(per_side);
    }
    let plus = [0, 1].map(|k| {
        let attach = flp[m][k].0[2];
        chain(&mut b, attach, top, 3 * m * unit - 1, &format!("P+{}", SIDES[k]), "plus")
    });
    let mut gadgets = Vec::new();
    for (j, &a) in eff.a.iter().enumerate() {
        let a = a as usize;
        let r = b.vertex(format!("U{j}.r"), "gadget");
        let p = [0, 1].map(|k| chain(&mut b, side[k], r, m * unit - 1, &format!("U{j}.P{}", k + 1), "gadget"));
        let q = if a == 1 {
            [vec![r], vec![r]]
        } else {
            let u = b.vertex(format!("U{j}.u"), "gadget");
            if a == 2 {
                b.edge(r, u, "gadget");
                [vec![r, u], vec![r, u]]
            } else {
                [0, 1].map(|k| chain(&mut b, r, u, a - 2, &format!("U{j}.P{}", k + 3), "gadget"))
            }
        };
        if a >= 2 {
            for k in 0..2 {
                let pred = p[k][p[k].len() - 2];
                b.edge(pred, q[k][1], "gadget.shortcut");
            }
        }
        gadgets.push(Gadget { a: a as u64, p, q });
    }
    (b, SingleSourceParts { s, side, t, top, flp, plus, gadgets })
}

/// Biconnected single-source graph that has span 2 exactly when the
/// instance is a yes-instance.
pub fn gen_np_single_source(inst: &ThreePartitionInstance) -> Result<(Dag, GadgetMap), GenError> {
    let (eff, shift) = checked_effective(inst)?;
    let (b, _) = build_single_source(&eff);
    let (dag, vertex_role, edge_role) = b.finish();
    Ok((dag, GadgetMap { vertex_role, edge_role, instance: eff, shift }))
}

fn checked_effective(inst: &ThreePartitionInstance) -> Result<(ThreePartitionInstance, u64), GenError> {
    let fresh = ThreePartitionInstance::new(inst.a.clone())?;
    if fresh != *inst {
        return Err(GenError::InvalidInstance("m or B disagree with the numbers".into()));
    }
    Ok(inst.effective())
}

/// Kinds of subtrees hanging from the central vertex of the tree reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sub {
    Bottom,
    Top,
    Number(usize),
    Separator(usize),
}

struct Branch {
    path: Vec<usize>,
    sink: usize,
    source: usize,
    /// sink and the vertices above it (number trees only)
    z: Vec<usize>,
    /// source and the vertices above it (number trees only)
    zp: Vec<usize>,
}

struct TreeParts {
    r: usize,
    branches: HashMap<SubKey, Branch>,
    yb: [usize; 2],
    yt: [usize; 2],
    plus: Vec<usize>,
}

type SubKey = (u8, usize);

fn key(s: Sub) -> SubKey {
    match s {
        Sub::Bottom => (0, 0),
        Sub::Top => (1, 0),
        Sub::Number(j) => (2, j),
        Sub::Separator(i) => (3, i),
    }
}

/// Zigzag path from r: `up1` edges up, `down` edges down, `up2` edges up.
fn zigzag(b: &mut Builder, r: usize, up1: usize, down: usize, up2: usize, prefix: &str, role: &str) -> Branch {
    let mut path = vec![r];
    for k in 1..=up1 + down + up2 {
        let v = b.vertex(format!("{prefix}.{k}"), role);
        let prev = path[k - 1];
        if k <= up1 || k > up1 + down {
            b.edge(prev, v, role);
        } else {
            b.edge(v, prev, role);
        }
        path.push(v);
    }
    Branch { sink: up1, source: up1 + down, path, z: Vec::new(), zp: Vec::new() }
}

fn build_tree(eff: &ThreePartitionInstance) -> (Builder, TreeParts) {
    let (m, bb) = (eff.m, eff.b as usize);
    let mut b = Builder::default();
    let r = b.vertex("r", "root");
    let (up1, down, up2) = (m * (bb + 1), m * bb * (bb - 1), 2 * m * bb * bb);
    let mut branches = HashMap::new();
    let bottom = zigzag(&mut b, r, up1, down, up2, "Tb", "central");
    let top = zigzag(&mut b, r, up1, down, up2, "Tt", "central");
    let yb = {
        let p = b.path(bottom.path[1], 2, false, "Yb", "stub");
        [p[2], p[1]]
    };
    let yt = {
        let p = b.path(top.path[1], 2, false, "Yt", "stub");
        [p[2], p[1]]
    };
    let plus = {
        let start = top.path[up1 + 1];
        let p1 = b.vertex("P+.0", "plus");
        b.edge(start, p1, "plus");
        b.path(p1, 3 * m * bb * bb, false, "P+", "plus")
    };
    branches.insert(key(Sub::Bottom), bottom);
    branches.insert(key(Sub::Top), top);
    for (j, &a) in eff.a.iter().enumerate() {
        let a = a as usize;
        let mut br = zigzag(&mut b, r, up1, down, up2, &format!("T{j}"), "central");
        br.z = b.path(br.path[br.sink], a - 1, true, &format!("Z{j}"), "Z");
        // Z' rises from the source: with the source on top of its block the
        // third tree of the top pocket could not reach its level
        br.zp = b.path(br.path[br.source], a * bb - 1, true, &format!("Zp{j}"), "Zp");
        branches.insert(key(Sub::Number(j)), br);
    }
    for i in 1..m {
        let h1 = (m + i) * (bb + 1) / 2;
        let h2 = bb * (bb - 1) * (2 * m - i) / 2;
        let br = zigzag(&mut b, r, h1, h2, up2, &format!("P{i}"), "separating");
        branches.insert(key(Sub::Separator(i)), br);
    }
    (b, TreeParts { r, branches, yb, yt, plus })
}

/// Tree that has span 2 exactly when the instance is a yes-instance.
/// Numbers are shifted by one first when B is even.
pub fn gen_np_tree(inst: &ThreePartitionInstance) -> Result<(Dag, GadgetMap), GenError> {
    let (eff, shift) = checked_effective(inst)?;
    let (b, _) = build_tree(&eff);
    let (dag, vertex_role, edge_role) = b.finish();
    Ok((dag, GadgetMap { vertex_role, edge_role, instance: eff, shift }))
}

/// Levels, x-coordinates and one column per multi-level edge.
struct Sketch {
    y: Vec<i64>,
    x: Vec<Q>,
    col: HashMap<(usize, usize), Q>,
}

impl Sketch {
    fn new(n: usize) -> Self {
        Sketch { y: vec![i64::MIN; n], x: vec![q(0); n], col: HashMap::new() }
    }

    fn put(&mut self, v: usize, y: i64, x: Q) {
        self.y[v] = y;
        self.x[v] = x;
    }

    /// Path whose consecutive levels are given; inner vertices and every
    /// wire go into column `x`, the ends are placed elsewhere.
    fn strand(&mut self, path: &[usize], ys: &[i64], x: Q) {
        for (k, &v) in path.iter().enumerate() {
            self.y[v] = ys[k];
            if k > 0 && k + 1 < path.len() {
                self.x[v] = x;
            }
        }
        for w in path.windows(2) {
            self.col.insert((w[0], w[1]), x);
            self.col.insert((w[1], w[0]), x);
        }
    }

    fn finish(self, dag: &Dag) -> LayeredDrawing {
        assert!(self.y.iter().all(|&y| y != i64::MIN), "every vertex gets a level");
        let wires = dag
            .edges()
            .iter()
            .map(|&(t, h)| {
                let mut w = vec![self.x[t]];
                let c = self.col.get(&(t, h)).copied().unwrap_or(self.x[t]);
                w.extend((self.y[t] + 1..self.y[h]).map(|_| c));
                w.push(self.x[h]);
                w
            })
            .collect();
        LayeredDrawing { level: self.y, x: self.x, wires }
    }
}

/// Levels `start, ..` over `edges` edges ending at `end`, long edges first.
fn ramp(start: i64, end: i64, edges: usize) -> Vec<i64> {
    let dist = (end - start).abs();
    let dir = (end - start).signum();
    let twos = dist - edges as i64;
    assert!((0..=edges as i64).contains(&twos), "levels {start} -> {end} unreachable in {edges} edges");
    (0..=edges as i64).map(|k| start + dir * if k <= twos { 2 * k } else { twos + k }).collect()
}

/// Map groups of original numbers to gadget indices of the encoded instance.
fn assign_groups(
    inst: &ThreePartitionInstance,
    eff: &ThreePartitionInstance,
    shift: u64,
    groups: &[Vec<u64>],
) -> Result<Vec<Vec<usize>>, GenError> {
    inst.check_partition(groups)?;
    let mut used = vec![false; eff.a.len()];
    let mut out = Vec::new();
    for g in groups {
        let mut ids = Vec::new();
        for &val in g {
            let j = (0..eff.a.len())
                .find(|&j| !used[j] && eff.a[j] == val + shift)
                .expect("partition uses instance numbers");
            used[j] = true;
            ids.push(j);
        }
        out.push(ids);
    }
    Ok(out)
}

/// Span-2 drawing of the gadget graph for a valid partition, with the
/// levels of the yes-direction construction.
pub fn witness_drawing(
    kind: WitnessKind,
    inst: &ThreePartitionInstance,
    partition: &[Vec<u64>],
) -> Result<(Dag, LayeredDrawing), GenError> {
    let (eff, shift) = checked_effective(inst)?;
    let groups = assign_groups(inst, &eff, shift, partition)?;
    Ok(match kind {
        WitnessKind::SingleSource => {
            let (b, parts) = build_single_source(&eff);
            let (dag, _, _) = b.finish();
            let d = single_source_sketch(&dag, &eff, &parts, &groups).finish(&dag);
            (dag, d)
        }
        WitnessKind::Tree => {
            let (b, parts) = build_tree(&eff);
            let (dag, _, _) = b.finish();
            let d = tree_sketch(&dag, &eff, &parts, &groups).finish(&dag);
            (dag, d)
        }
    })
}

/// Frame paths fan out from s' (left) and s'' (right) into columns ordered
/// by the level where they end; pocket contents sit on the centre line.
fn single_source_sketch(
    dag: &Dag,
    eff: &ThreePartitionInstance,
    parts: &SingleSourceParts,
    groups: &[Vec<usize>],
) -> Sketch {
    let (m, bb) = (eff.m as i64, eff.b as i64);
    let unit = bb + 1;
    let mut sk = Sketch::new(dag.n());
    sk.put(parts.s, -1, q(0));
    sk.put(parts.side[0], 0, q(-1));
    sk.put(parts.side[1], 0, q(1));
    for (i, &t) in parts.t.iter().enumerate() {
        sk.put(t, (m + i as i64) * unit, q(0));
    }
    let top_level = 2 + 3 * m * unit;
    sk.put(parts.top, top_level, q(0));
    // centre column and the levels of every gadget
    let mut r_level = vec![0i64; parts.gadgets.len()];
    for (i, g) in groups.iter().enumerate() {
        let mut base = (m + i as i64) * unit;
        for &j in g {
            let gad = &parts.gadgets[j];
            let yr = base + 1;
            r_level[j] = yr;
            for k in 0..2 {
                let side_x = if k == 0 { qf(-1, 2) } else { qf(1, 2) };
                for (s, &v) in gad.q[k].iter().enumerate() {
                    let at_end = s == 0 || s + 1 == gad.q[k].len();
                    sk.put(v, yr + s as i64, if at_end { q(0) } else { side_x });
                }
            }
            base += gad.a as i64;
        }
    }
    // strands per side, innermost first
    for k in 0..2 {
        let sign = if k == 0 { -1 } else { 1 };
        let mut column = 0i64;
        let mut next = || {
            column += 1;
            q(sign * column)
        };
        for i in 0..=m as usize {
            if i > 0 {
                for &j in &groups[i - 1] {
                    let gad = &parts.gadgets[j];
                    let ys = ramp(0, r_level[j], gad.p[k].len() - 1);
                    let x = next();
                    sk.strand(&gad.p[k], &ys, x);
                    if gad.a >= 2 {
                        let pred = gad.p[k][gad.p[k].len() - 2];
                        sk.col.insert((pred, gad.q[k][1]), x);
                    }
                }
            }
            let (long, short) = &parts.flp[i][k];
            let len = long.len() as i64 - 1;
            let x = next();
            sk.strand(short, &ramp(0, len, short.len() - 1), x);
            let x = next();
            sk.strand(long, &ramp(0, len, long.len() - 1), x);
        }
        let plus = &parts.plus[k];
        let x = next();
        sk.strand(plus, &ramp(2, top_level, plus.len() - 1), x);
    }
    sk
}

/// Subtrees of r occupy nested columns: ascents to the left of r, descents
/// to the right, final ascents further right; the order from the inside out
/// is bottom tree, the pockets, top tree.
fn tree_sketch(dag: &Dag, eff: &ThreePartitionInstance, parts: &TreeParts, groups: &[Vec<usize>]) -> Sketch {
    let (m, bb) = (eff.m as i64, eff.b as i64);
    let yr = -m * (bb + 1);
    let low = -2 * m * bb * (bb - 1);
    let mut order = vec![(Sub::Bottom, 0i64, low)];
    for (i, g) in groups.iter().enumerate() {
        let i1 = i as i64 + 1;
        let mut high = i1 * (bb + 1) - bb;
        let mut deep = low + (i1 - 1) * (bb * bb + 1) + 1;
        for &j in g {
            let a = eff.a[j] as i64;
            order.push((Sub::Number(j), high, deep));
            high += a;
            deep += a * bb;
        }
        if i1 < m {
            order.push((Sub::Separator(i + 1), i1 * (bb + 1), low + i1 * (bb * bb + 1)));
        }
    }
    order.push((Sub::Top, m * (bb + 1), -m * (bb * bb - 2 * bb - 1)));
    let n_sub = order.len() as i64;
    let mut sk = Sketch::new(dag.n());
    sk.put(parts.r, yr, q(0));
    for (j, &(sub, high, deep)) in order.iter().enumerate() {
        let j = j as i64;
        let br = &parts.branches[&key(sub)];
        let (up, down) = (&br.path[..=br.sink], &br.path[br.sink..=br.source]);
        let ys_up = ramp(yr, high, up.len() - 1);
        let ys_down = ramp(high, deep, down.len() - 1);
        sk.strand(up, &ys_up, q(-(j + 1)));
        sk.put(br.path[br.sink], high, q(-(j + 1)));
        sk.strand(down, &ys_down, q(j + 1));
        sk.put(br.path[br.source], deep, q(j + 1));
        let tail = &br.path[br.source..];
        for (k, &v) in tail.iter().enumerate().skip(1) {
            sk.put(v, deep + k as i64, q(2 * n_sub - j));
        }
        for (k, &v) in br.z.iter().enumerate().skip(1) {
            sk.put(v, high + k as i64, q(-(j + 1)));
        }
        for (k, &v) in br.zp.iter().enumerate().skip(1) {
            sk.put(v, deep + k as i64, q(j + 1) + qf(1, 2));
        }
        if sub == Sub::Top {
            let first_down = br.path[br.sink + 1];
            let p = &parts.plus;
            sk.put(p[0], high + 1, q(0));
            sk.col.insert((first_down, p[0]), q(n_sub));
            for (k, &v) in p.iter().enumerate().skip(1) {
                sk.put(v, high + 1 - k as i64, q(-(n_sub + 2)));
            }
        }
    }
    let vb1 = parts.branches[&key(Sub::Bottom)].path[1];
    let vt1 = parts.branches[&key(Sub::Top)].path[1];
    let (yb1, yt1) = (sk.y[vb1], sk.y[vt1]);
    sk.put(parts.yb[1], yb1 - 1, qf(1, 2));
    sk.put(parts.yb[0], yb1 - 2, qf(1, 2));
    sk.put(parts.yt[1], yt1 - 1, q(-(n_sub + 1)));
    sk.put(parts.yt[0], yt1 - 2, q(-(n_sub + 1)));
    sk
}
