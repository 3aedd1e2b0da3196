//! Layered drawings in the wire model: integer levels for vertices and one
//! rational x per crossed level for every edge.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{self, PlanarEmbedding, UpwardEmbedding};
use crate::graph::Dag;

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("edge {0} is not drawn upward")]
    NotUpward(usize),
    #[error("malformed wire for edge {edge}: {reason}")]
    MalformedWire { edge: usize, reason: String },
    #[error("drawing has {found} entries, graph needs {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("bad drawing JSON: {0}")]
    Json(String),
}

/// `level[v]`, `x[v]` per vertex; `wires[e][i]` is the x of edge `e` on
/// level `level[tail] + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredDrawing {
    pub level: Vec<i64>,
    pub x: Vec<Q>,
    pub wires: Vec<Vec<Q>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("edge {0} is not upward")]
    NotUpward(usize),
    #[error("two points share x on level {level}: {first} and {second}")]
    Collision { level: i64, first: String, second: String },
    #[error("edges {0} and {1} cross between levels {2} and {2}+1")]
    Crossing(usize, usize, i64),
    #[error("induced embedding differs from the expected one")]
    EmbeddingMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub upward_ok: bool,
    pub planar_ok: bool,
    pub embedding_ok: Option<bool>,
    pub span: i64,
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.upward_ok && self.planar_ok && self.embedding_ok != Some(false)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Expected<'a> {
    Planar(&'a PlanarEmbedding),
    Upward(&'a UpwardEmbedding),
}

/// Embedding to compare against during validation.
#[derive(Debug, Clone, Copy)]
pub struct EmbeddingCheck<'a> {
    pub expected: Expected<'a>,
    pub allow_reflection: bool,
}

impl<'a> EmbeddingCheck<'a> {
    pub fn planar(e: &'a PlanarEmbedding) -> Self {
        EmbeddingCheck { expected: Expected::Planar(e), allow_reflection: false }
    }

    pub fn upward(e: &'a UpwardEmbedding) -> Self {
        EmbeddingCheck { expected: Expected::Upward(e), allow_reflection: false }
    }

    pub fn with_reflection(mut self) -> Self {
        self.allow_reflection = true;
        self
    }
}

impl LayeredDrawing {
    /// Drawing whose wires interpolate linearly between endpoints; only
    /// suitable for span-1 edges or as a starting point.
    pub fn straight(dag: &Dag, level: Vec<i64>, x: Vec<Q>) -> LayeredDrawing {
        let wires = dag
            .edges()
            .iter()
            .map(|&(t, h)| {
                let len = level[h] - level[t];
                (0..=len.max(0)).map(|i| if len <= 0 { x[t] } else { x[t] + (x[h] - x[t]) * Q::new(i, len) }).collect()
            })
            .collect();
        LayeredDrawing { level, x, wires }
    }

    pub fn min_level(&self) -> i64 {
        self.level.iter().copied().min().unwrap_or(0)
    }

    pub fn max_level(&self) -> i64 {
        self.level.iter().copied().max().unwrap_or(0)
    }

    /// Number of layers spanned by the drawing.
    pub fn layers(&self) -> i64 {
        if self.level.is_empty() {
            0
        } else {
            self.max_level() - self.min_level() + 1
        }
    }

    /// x of edge `e` on level `y` if the wire reaches it.
    pub fn wire_at(&self, dag: &Dag, e: usize, y: i64) -> Option<Q> {
        let t = dag.edge(e).0;
        let i = y - self.level[t];
        (i >= 0).then(|| self.wires[e].get(i as usize).copied()).flatten()
    }

    /// Shift every level and x by constants.
    pub fn translate(&mut self, dy: i64, dx: Q) {
        for y in &mut self.level {
            *y += dy;
        }
        for x in &mut self.x {
            *x += dx;
        }
        for w in &mut self.wires {
            for x in w {
                *x += dx;
            }
        }
    }

    /// Restrict to a subgraph: `vertices[i]` is the old index of new vertex
    /// `i`, `edges[j]` the old index of new edge `j`.
    pub fn restrict(&self, vertices: &[usize], edges: &[usize]) -> LayeredDrawing {
        LayeredDrawing {
            level: vertices.iter().map(|&v| self.level[v]).collect(),
            x: vertices.iter().map(|&v| self.x[v]).collect(),
            wires: edges.iter().map(|&e| self.wires[e].clone()).collect(),
        }
    }

    /// Replace x coordinates by their rank among all points on each level.
    /// Keeps the left-to-right order on every level, hence validity.
    pub fn normalize_x(&mut self, dag: &Dag) {
        let mut per_level: BTreeMap<i64, Vec<(Q, usize, usize)>> = BTreeMap::new();
        // (x, kind, index); kind 0 = vertex, kind 1 = wire point (e, i) packed
        let mut slots: Vec<(usize, usize)> = Vec::new();
        for v in 0..dag.n() {
            per_level.entry(self.level[v]).or_default().push((self.x[v], 0, v));
        }
        for e in 0..dag.m() {
            let t = dag.edge(e).0;
            let len = self.wires[e].len();
            for i in 1..len.saturating_sub(1) {
                let id = slots.len();
                slots.push((e, i));
                per_level.entry(self.level[t] + i as i64).or_default().push((self.wires[e][i], 1, id));
            }
        }
        for pts in per_level.values_mut() {
            pts.sort();
            let mut rank = -1i64;
            let mut last: Option<Q> = None;
            for &mut (x, kind, idx) in pts.iter_mut() {
                if last != Some(x) {
                    rank += 1;
                    last = Some(x);
                }
                if kind == 0 {
                    self.x[idx] = q(rank);
                } else {
                    let (e, i) = slots[idx];
                    self.wires[e][i] = q(rank);
                }
            }
        }
        for e in 0..dag.m() {
            let (t, h) = dag.edge(e);
            if let Some(first) = self.wires[e].first_mut() {
                *first = self.x[t];
            }
            if let Some(last) = self.wires[e].last_mut() {
                *last = self.x[h];
            }
        }
    }
}

fn check_shape(dag: &Dag, d: &LayeredDrawing) -> Result<(), DrawingError> {
    if d.level.len() != dag.n() || d.x.len() != dag.n() {
        return Err(DrawingError::SizeMismatch { expected: dag.n(), found: d.level.len().min(d.x.len()) });
    }
    if d.wires.len() != dag.m() {
        return Err(DrawingError::SizeMismatch { expected: dag.m(), found: d.wires.len() });
    }
    for (e, &(t, h)) in dag.edges().iter().enumerate() {
        let span = d.level[h] - d.level[t];
        let w = &d.wires[e];
        if span >= 1 {
            if w.len() as i64 != span + 1 {
                return Err(DrawingError::MalformedWire {
                    edge: e,
                    reason: format!("{} points for span {}", w.len(), span),
                });
            }
            if w[0] != d.x[t] || w[w.len() - 1] != d.x[h] {
                return Err(DrawingError::MalformedWire { edge: e, reason: "endpoint does not match vertex".into() });
            }
        }
    }
    Ok(())
}

/// Maximum edge span.
pub fn span_of(dag: &Dag, d: &LayeredDrawing) -> Result<i64, DrawingError> {
    let mut best = 0;
    for (e, &(t, h)) in dag.edges().iter().enumerate() {
        let s = d.level[h] - d.level[t];
        if s < 1 {
            return Err(DrawingError::NotUpward(e));
        }
        best = best.max(s);
    }
    Ok(best)
}

/// Upward embedding read off a drawing. Upward edges are assumed.
pub fn induced_embedding(dag: &Dag, d: &LayeredDrawing) -> UpwardEmbedding {
    let mut rotation = Vec::with_capacity(dag.n());
    for v in 0..dag.n() {
        let mut outs: Vec<(Q, usize)> = dag.out_edges(v).iter().map(|&e| (d.wires[e][1], e)).collect();
        outs.sort_by(|a, b| b.cmp(a));
        let mut ins: Vec<(Q, usize)> = dag.in_edges(v).iter().map(|&e| (d.wires[e][d.wires[e].len() - 2], e)).collect();
        ins.sort();
        rotation.push(outs.into_iter().chain(ins).map(|p| p.1).collect::<Vec<_>>());
    }
    let mut large_angles = Vec::new();
    for v in 0..dag.n() {
        let deg = dag.degree(v);
        if deg > 0 && (dag.is_source(v) || dag.is_sink(v)) {
            large_angles.push((v, deg - 1));
        }
    }
    let outer_dart = (0..dag.n())
        .filter(|&v| dag.degree(v) > 0)
        .min_by(|&a, &b| (d.level[a], d.x[a]).cmp(&(d.level[b], d.x[b])))
        .map(|v| {
            // the lowest-leftmost vertex is a source; its large angle faces outward
            let rot: &Vec<usize> = &rotation[v];
            let entering = rot[0];
            embedding::dart_from(dag.edges(), entering, v) ^ 1
        })
        .unwrap_or(0);
    UpwardEmbedding { base: PlanarEmbedding { rotation, outer_dart }, large_angles }
}

fn mirror_planar(p: &PlanarEmbedding) -> PlanarEmbedding {
    PlanarEmbedding {
        rotation: p.rotation.iter().map(|r| r.iter().rev().copied().collect()).collect(),
        outer_dart: p.outer_dart ^ 1,
    }
}

/// Full validation: upwardness, crossings in the wire model, and optionally
/// embedding preservation.
pub fn validate(dag: &Dag, d: &LayeredDrawing, check: Option<EmbeddingCheck>) -> Result<ValidityReport, DrawingError> {
    check_shape(dag, d)?;
    let mut violations = Vec::new();
    for (e, &(t, h)) in dag.edges().iter().enumerate() {
        if d.level[h] <= d.level[t] {
            violations.push(Violation::NotUpward(e));
        }
    }
    let upward_ok = violations.is_empty();
    if !upward_ok {
        return Ok(ValidityReport { upward_ok, planar_ok: false, embedding_ok: None, span: 0, violations });
    }
    let span = span_of(dag, d)?;
    // points per level
    let mut points: BTreeMap<i64, Vec<(Q, String)>> = BTreeMap::new();
    for v in 0..dag.n() {
        points.entry(d.level[v]).or_default().push((d.x[v], format!("vertex {}", dag.id(v))));
    }
    for (e, &(t, _)) in dag.edges().iter().enumerate() {
        let w = &d.wires[e];
        for (i, &x) in w.iter().enumerate().take(w.len() - 1).skip(1) {
            points.entry(d.level[t] + i as i64).or_default().push((x, format!("edge {e}")));
        }
    }
    let mut planar_ok = true;
    for (&y, pts) in points.iter_mut() {
        pts.sort();
        for pair in pts.windows(2) {
            if pair[0].0 == pair[1].0 {
                planar_ok = false;
                violations.push(Violation::Collision { level: y, first: pair[0].1.clone(), second: pair[1].1.clone() });
            }
        }
    }
    // segments per strip
    let mut strips: BTreeMap<i64, Vec<(Q, Q, usize)>> = BTreeMap::new();
    for (e, &(t, _)) in dag.edges().iter().enumerate() {
        let w = &d.wires[e];
        for i in 0..w.len() - 1 {
            strips.entry(d.level[t] + i as i64).or_default().push((w[i], w[i + 1], e));
        }
    }
    for (&y, segs) in &strips {
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (a0, a1, ea) = segs[i];
                let (b0, b1, eb) = segs[j];
                if (a0 - b0) * (a1 - b1) < Q::zero() {
                    planar_ok = false;
                    violations.push(Violation::Crossing(ea.min(eb), ea.max(eb), y));
                }
            }
        }
    }
    let embedding_ok = match check {
        None => None,
        Some(c) if !planar_ok => {
            let _ = c;
            Some(false)
        }
        Some(c) => {
            let ind = induced_embedding(dag, d);
            let (n, edges) = (dag.n(), dag.edges());
            let ok = match c.expected {
                Expected::Planar(p) => {
                    embedding::same_planar(n, edges, &ind.base, p)
                        || (c.allow_reflection && embedding::same_planar(n, edges, &ind.base, &mirror_planar(p)))
                }
                Expected::Upward(u) => {
                    embedding::same_upward(n, edges, &ind, u)
                        || (c.allow_reflection && embedding::same_upward(n, edges, &ind, &embedding::mirror(u)))
                }
            };
            Some(ok)
        }
    };
    if embedding_ok == Some(false) {
        violations.push(Violation::EmbeddingMismatch);
    }
    Ok(ValidityReport { upward_ok, planar_ok, embedding_ok, span, violations })
}

/// Remove vertex-free levels strictly between the lowest and highest level.
pub fn compress_levels(dag: &Dag, d: &LayeredDrawing) -> LayeredDrawing {
    let used: BTreeSet<i64> = d.level.iter().copied().collect();
    let Some(&low) = used.iter().next() else {
        return d.clone();
    };
    let new_of: HashMap<i64, i64> = used.iter().enumerate().map(|(i, &y)| (y, low + i as i64)).collect();
    let level: Vec<i64> = d.level.iter().map(|y| new_of[y]).collect();
    let wires = dag
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(t, _))| {
            d.wires[e]
                .iter()
                .enumerate()
                .filter(|&(i, _)| used.contains(&(d.level[t] + i as i64)))
                .map(|(_, &x)| x)
                .collect()
        })
        .collect();
    LayeredDrawing { level, x: d.x.clone(), wires }
}

#[derive(Serialize, Deserialize)]
struct DrawingJson {
    levels: BTreeMap<String, i64>,
    wires: BTreeMap<String, Vec<String>>,
    x: BTreeMap<String, String>,
}

fn parse_q(s: &str) -> Result<Q, DrawingError> {
    s.trim().parse::<Q>().map_err(|_| DrawingError::Json(format!("bad rational {s:?}")))
}

pub fn to_json(dag: &Dag, d: &LayeredDrawing) -> String {
    let j = DrawingJson {
        levels: (0..dag.n()).map(|v| (dag.id(v).to_string(), d.level[v])).collect(),
        wires: (0..dag.m()).map(|e| (e.to_string(), d.wires[e].iter().map(ToString::to_string).collect())).collect(),
        x: (0..dag.n()).map(|v| (dag.id(v).to_string(), d.x[v].to_string())).collect(),
    };
    serde_json::to_string_pretty(&j).expect("drawing serializes")
}

pub fn from_json(dag: &Dag, text: &str) -> Result<LayeredDrawing, DrawingError> {
    let j: DrawingJson = serde_json::from_str(text).map_err(|e| DrawingError::Json(e.to_string()))?;
    let mut level = vec![0; dag.n()];
    let mut x = vec![Q::zero(); dag.n()];
    for v in 0..dag.n() {
        let id = dag.id(v);
        level[v] = *j.levels.get(id).ok_or_else(|| DrawingError::Json(format!("no level for {id}")))?;
        x[v] = parse_q(j.x.get(id).ok_or_else(|| DrawingError::Json(format!("no x for {id}")))?)?;
    }
    let mut wires = Vec::with_capacity(dag.m());
    for e in 0..dag.m() {
        let w = j.wires.get(&e.to_string()).ok_or_else(|| DrawingError::Json(format!("no wire for edge {e}")))?;
        wires.push(w.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(LayeredDrawing { level, x, wires })
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// SVG rendering: one guide per level, a polyline per edge, a circle per vertex.
pub fn to_svg(dag: &Dag, d: &LayeredDrawing) -> String {
    const UNIT: f64 = 40.0;
    const PAD: f64 = 20.0;
    let fx = |x: Q| x.to_f64().unwrap_or(0.0) * UNIT;
    let all_x: Vec<f64> = d.x.iter().chain(d.wires.iter().flatten()).map(|&x| fx(x)).collect();
    let min_x = all_x.iter().copied().fold(f64::INFINITY, f64::min);
    let max_x = all_x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (min_x, max_x) = if all_x.is_empty() { (0.0, 0.0) } else { (min_x, max_x) };
    let (lo, hi) = (d.min_level(), d.max_level());
    let fy = |y: i64| (hi - y) as f64 * UNIT;
    let width = max_x - min_x + 2.0 * PAD;
    let height = (hi - lo) as f64 * UNIT + 2.0 * PAD;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.2} {:.2} {:.2} {:.2}">"#,
        min_x - PAD,
        -PAD,
        width,
        height
    );
    if !d.level.is_empty() {
        for y in lo..=hi {
            let _ = writeln!(
                s,
                r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#ddd" stroke-width="1"/>"##,
                min_x - PAD,
                fy(y),
                max_x + PAD,
                fy(y)
            );
        }
    }
    for (e, &(t, _)) in dag.edges().iter().enumerate() {
        let pts: Vec<String> = d.wires[e]
            .iter()
            .enumerate()
            .map(|(i, &x)| format!("{:.2},{:.2}", fx(x), fy(d.level[t] + i as i64)))
            .collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, pts.join(" "));
    }
    for v in 0..dag.n() {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="white" stroke="black"><title>{}</title></circle>"#,
            fx(d.x[v]),
            fy(d.level[v]),
            xml_escape(dag.id(v))
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> (Dag, LayeredDrawing) {
        let g = Dag::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let d = LayeredDrawing::straight(&g, vec![0, 1, 1, 2], vec![q(1), q(0), q(2), q(1)]);
        (g, d)
    }

    #[test]
    fn diamond_span_and_validity() {
        let (g, d) = diamond();
        assert_eq!(span_of(&g, &d), Ok(1));
        let r = validate(&g, &d, None).unwrap();
        assert!(r.is_valid(), "{:?}", r.violations);
        let ind = induced_embedding(&g, &d);
        assert!(embedding::check_upward_embedding(&g, &ind).is_valid());
        let r = validate(&g, &d, Some(EmbeddingCheck::upward(&ind))).unwrap();
        assert_eq!(r.embedding_ok, Some(true));
        let m = embedding::mirror(&ind);
        let r = validate(&g, &d, Some(EmbeddingCheck::upward(&m))).unwrap();
        assert_eq!(r.embedding_ok, Some(false));
        let r = validate(&g, &d, Some(EmbeddingCheck::upward(&m).with_reflection())).unwrap();
        assert_eq!(r.embedding_ok, Some(true));
    }

    #[test]
    fn span_two() {
        let g = Dag::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let d = LayeredDrawing::straight(&g, vec![0, 1, 2], vec![q(0), q(1), q(2)]);
        assert_eq!(span_of(&g, &d), Ok(2));
    }

    #[test]
    fn inversion_is_a_crossing() {
        // a=0, b=1 on level 0, c=2, d=3 on level 1; edges a->c, b->d
        let g = Dag::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        let d = LayeredDrawing::straight(&g, vec![0, 0, 1, 1], vec![q(0), q(1), q(1), q(0)]);
        let r = validate(&g, &d, None).unwrap();
        assert!(!r.planar_ok);
    }

    #[test]
    fn wire_through_vertex_is_a_collision() {
        let g = Dag::from_edges(3, &[(0, 2)]).unwrap();
        let d = LayeredDrawing::straight(&g, vec![0, 1, 2], vec![q(0), q(0), q(0)]);
        let r = validate(&g, &d, None).unwrap();
        assert!(!r.planar_ok);
    }

    #[test]
    fn malformed_wire() {
        let g = Dag::from_edges(2, &[(0, 1)]).unwrap();
        let d = LayeredDrawing { level: vec![0, 2], x: vec![q(0), q(0)], wires: vec![vec![q(0), q(0)]] };
        assert!(matches!(validate(&g, &d, None), Err(DrawingError::MalformedWire { .. })));
    }

    #[test]
    fn compress_one_edge() {
        let g = Dag::from_edges(2, &[(0, 1)]).unwrap();
        let d = LayeredDrawing::straight(&g, vec![0, 5], vec![q(0), q(0)]);
        let c = compress_levels(&g, &d);
        assert_eq!(c.level, vec![0, 1]);
        assert_eq!(c.wires[0].len(), 2);
        assert_eq!(compress_levels(&g, &c), c);
    }

    #[test]
    fn json_round_trip() {
        let (g, mut d) = diamond();
        d.x[1] = qf(-1, 3);
        d.wires[0][1] = qf(-1, 3);
        let text = to_json(&g, &d);
        assert_eq!(from_json(&g, &text).unwrap(), d);
    }

    #[test]
    fn svg_has_one_circle_per_vertex() {
        let (g, d) = diamond();
        let svg = to_svg(&g, &d);
        assert_eq!(svg.matches("<circle").count(), 4);
        let empty = Dag::from_edges(0, &[]).unwrap();
        let svg = to_svg(&empty, &LayeredDrawing { level: vec![], x: vec![], wires: vec![] });
        assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}
