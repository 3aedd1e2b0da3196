//! Graph files: vertex ids, edges as id pairs, and optionally a rotation
//! system, the outer face, large angles and free-form tags.
//!
//! Edge indices in `rotation` and `outer_face` refer to the canonical edge
//! order (sorted by tail index, then head index, vertices in file order).
//! Output is deterministic: object keys are sorted and edges canonical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::embedding::{self, PlanarEmbedding, UpwardEmbedding};
use crate::graph::{build_dag, Dag, GraphError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("bad embedding: {0}")]
    Embedding(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct RawGraph {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotation: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outer_face: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    large_angles: Option<Vec<(String, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tags: Option<Value>,
}

/// A graph together with whatever embedding data the file carried.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub dag: Dag,
    pub embedding: Option<PlanarEmbedding>,
    /// `(vertex, corner)`; only meaningful with an embedding.
    pub large_angles: Option<Vec<(usize, usize)>>,
    pub tags: Option<Value>,
}

impl GraphFile {
    pub fn plain(dag: Dag) -> Self {
        GraphFile { dag, embedding: None, large_angles: None, tags: None }
    }

    pub fn planar(dag: Dag, emb: PlanarEmbedding) -> Self {
        GraphFile { dag, embedding: Some(emb), large_angles: None, tags: None }
    }

    pub fn upward(dag: Dag, ue: UpwardEmbedding) -> Self {
        GraphFile { dag, embedding: Some(ue.base), large_angles: Some(ue.large_angles), tags: None }
    }

    pub fn with_tags(mut self, tags: Value) -> Self {
        self.tags = Some(tags);
        self
    }

    pub fn upward_embedding(&self) -> Option<UpwardEmbedding> {
        let base = self.embedding.clone()?;
        let mut large_angles = self.large_angles.clone()?;
        large_angles.sort_unstable();
        Some(UpwardEmbedding { base, large_angles })
    }

    pub fn to_json(&self) -> String {
        let g = &self.dag;
        let edges = g.edges().iter().map(|&(t, h)| (g.id(t).to_string(), g.id(h).to_string())).collect();
        let rotation =
            self.embedding.as_ref().map(|e| (0..g.n()).map(|v| (g.id(v).to_string(), e.rotation[v].clone())).collect());
        let outer_face = self.embedding.as_ref().filter(|_| g.m() > 0).map(|e| {
            let fs = embedding::faces(g, e).expect("stored embedding is planar");
            let darts = &fs.faces[fs.outer].darts;
            let s = darts.iter().position(|&d| d == e.outer_dart).unwrap_or(0);
            (0..darts.len()).map(|i| darts[(s + i) % darts.len()] / 2).collect()
        });
        let large_angles =
            self.large_angles.as_ref().map(|l| l.iter().map(|&(v, c)| (g.id(v).to_string(), c)).collect());
        let raw =
            RawGraph { vertices: g.ids().to_vec(), edges, rotation, outer_face, large_angles, tags: self.tags.clone() };
        // through Value so that every object has sorted keys
        let v = serde_json::to_value(&raw).expect("graph serializes");
        serde_json::to_string_pretty(&v).expect("graph serializes")
    }
}

fn cyclic_match(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

pub fn parse_graph(text: &str) -> Result<GraphFile, IoError> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    let dag = build_dag(raw.vertices.iter().cloned(), raw.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))?;
    let vid = |id: &str| dag.vertex(id).ok_or_else(|| IoError::Graph(GraphError::UnknownVertex(id.to_string())));
    let embedding = match &raw.rotation {
        None => None,
        Some(rot) => {
            let mut rotation = vec![Vec::new(); dag.n()];
            for (id, list) in rot {
                let v = vid(id)?;
                if list.iter().any(|&e| e >= dag.m()) {
                    return Err(IoError::Embedding(format!("edge index out of range at {id}")));
                }
                rotation[v] = list.clone();
            }
            for v in 0..dag.n() {
                let mut mine = rotation[v].clone();
                let mut inc = dag.incident(v);
                mine.sort_unstable();
                inc.sort_unstable();
                if mine != inc {
                    return Err(IoError::Embedding(format!("rotation of {} does not list its edges", dag.id(v))));
                }
            }
            let mut emb = PlanarEmbedding { rotation, outer_dart: 0 };
            if dag.m() > 0 {
                let fs = embedding::faces(&dag, &emb).map_err(|e| IoError::Embedding(e.to_string()))?;
                if let Some(outer) = &raw.outer_face {
                    let f = fs
                        .faces
                        .iter()
                        .find(|f| cyclic_match(&f.darts.iter().map(|&d| d / 2).collect::<Vec<_>>(), outer))
                        .ok_or_else(|| IoError::Embedding("outer_face is not a face of the rotation".into()))?;
                    // start the walk where the file starts it
                    let edges: Vec<usize> = f.darts.iter().map(|&d| d / 2).collect();
                    let s = (0..edges.len())
                        .find(|&s| (0..edges.len()).all(|i| edges[(s + i) % edges.len()] == outer[i]))
                        .unwrap();
                    emb.outer_dart = f.darts[s];
                }
            }
            Some(emb)
        }
    };
    let large_angles = match &raw.large_angles {
        None => None,
        Some(l) => Some(l.iter().map(|(id, c)| Ok((vid(id)?, *c))).collect::<Result<Vec<_>, IoError>>()?),
    };
    Ok(GraphFile { dag, embedding, large_angles, tags: raw.tags })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_spiral_path;

    #[test]
    fn plain_round_trip_is_stable() {
        let g = Dag::from_edges(4, &[(2, 3), (0, 1), (0, 2)]).unwrap();
        let text = GraphFile::plain(g.clone()).to_json();
        let back = parse_graph(&text).unwrap();
        assert_eq!(back.dag, g);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn upward_round_trip() {
        let (g, ue) = gen_spiral_path(6).unwrap();
        let f = GraphFile::upward(g.clone(), ue.clone()).with_tags(serde_json::json!({"family": "spiral-path"}));
        let text = f.to_json();
        let back = parse_graph(&text).unwrap();
        assert_eq!(back.upward_embedding().unwrap(), ue);
        assert_eq!(back.tags.unwrap()["family"], "spiral-path");
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(parse_graph("{"), Err(IoError::Json(_))));
        let cyc = r#"{"vertices":["a","b"],"edges":[["a","b"],["b","a"]]}"#;
        assert!(matches!(parse_graph(cyc), Err(IoError::Graph(_))));
        let rot = r#"{"vertices":["a","b"],"edges":[["a","b"]],"rotation":{"a":[0],"b":[]}}"#;
        assert!(matches!(parse_graph(rot), Err(IoError::Embedding(_))));
    }
}
