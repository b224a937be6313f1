//! JSON and Graphviz renderings of a presentation.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::automaton::{Edge, PointedLabeledGraph, VertexLabel};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonVertex {
    pub id: usize,
    pub carries: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonEdge {
    pub from: usize,
    pub to: usize,
    pub label: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGraph {
    pub start: usize,
    pub vertices: Vec<JsonVertex>,
    pub edges: Vec<JsonEdge>,
    pub provenance: String,
}

impl From<&PointedLabeledGraph> for JsonGraph {
    fn from(g: &PointedLabeledGraph) -> Self {
        JsonGraph {
            start: g.start(),
            vertices: g
                .vertices()
                .iter()
                .enumerate()
                .map(|(id, v)| JsonVertex {
                    id,
                    carries: v.carries.clone(),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| JsonEdge {
                    from: e.from,
                    to: e.to,
                    label: e.label,
                })
                .collect(),
            provenance: g.provenance().to_string(),
        }
    }
}

impl TryFrom<JsonGraph> for PointedLabeledGraph {
    type Error = Error;

    fn try_from(j: JsonGraph) -> Result<Self> {
        let mut vertices = j.vertices;
        vertices.sort_by_key(|v| v.id);
        if vertices.iter().enumerate().any(|(i, v)| v.id != i) {
            return Err(Error::InvalidGraph("vertex ids must be 0..n".into()));
        }
        PointedLabeledGraph::new(
            vertices
                .into_iter()
                .map(|v| VertexLabel::new(v.carries))
                .collect(),
            j.edges
                .into_iter()
                .map(|e| Edge {
                    from: e.from,
                    to: e.to,
                    label: e.label,
                })
                .collect(),
            j.start,
            j.provenance,
        )
    }
}

pub fn to_json(g: &PointedLabeledGraph) -> String {
    serde_json::to_string_pretty(&JsonGraph::from(g)).expect("plain data serializes")
}

pub fn from_json(s: &str) -> Result<PointedLabeledGraph> {
    let j: JsonGraph = serde_json::from_str(s).map_err(|e| Error::InvalidGraph(e.to_string()))?;
    j.try_into()
}

/// One node per vertex labeled with its carries in ternary; the start vertex
/// is drawn as a double circle.
pub fn to_dot(g: &PointedLabeledGraph) -> String {
    let mut out = String::from("digraph presentation {\n    rankdir=LR;\n");
    let _ = writeln!(out, "    label=\"{}\";", g.provenance().replace('"', "'"));
    for (id, v) in g.vertices().iter().enumerate() {
        let shape = if id == g.start() {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "    v{id} [shape={shape}, label=\"{}\"];", v.ternary());
    }
    for e in g.edges() {
        let _ = writeln!(out, "    v{} -> v{} [label=\"{}\"];", e.from, e.to, e.label);
    }
    out.push_str("}\n");
    out
}
