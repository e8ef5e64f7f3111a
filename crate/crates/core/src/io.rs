//! JSON graph documents.
//!
//! ```json
//! {
//!   "order": 3,
//!   "edges": [
//!     [0, 1, 1],
//!     [1, 0, 1]
//!   ],
//!   "partition": {"cells": [[0, 1]], "d": [2]},
//!   "metadata": {"name": "k2", "notes": "", "labels": [1, 2, 3]}
//! }
//! ```
//!
//! Indices are 0-based. Edges are ordered pairs; an undirected edge is
//! listed in both directions. The canonical writer sorts edges and prints
//! weights with the shortest representation that parses back exactly, so
//! `write(read(write(doc)))` is byte-identical to `write(doc)`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::seidel::SeidelPartition;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDocument {
    pub cells: Vec<Vec<usize>>,
    #[serde(default)]
    pub d: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    /// display label of each vertex, by index
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub order: usize,
    pub edges: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl GraphDocument {
    pub fn from_graph(g: &WeightedDigraph) -> Self {
        Self {
            order: g.order(),
            edges: g.edges().collect(),
            partition: None,
            metadata: None,
        }
    }

    /// Builds the graph, rejecting out-of-range indices, zero weights and
    /// repeated ordered pairs.
    pub fn graph(&self) -> Result<WeightedDigraph> {
        WeightedDigraph::from_edges(self.order, self.edges.iter().copied())
    }

    pub fn seidel_partition(&self) -> Result<Option<SeidelPartition>> {
        self.partition
            .as_ref()
            .map(|p| SeidelPartition::new(self.order, p.cells.clone(), p.d.clone()))
            .transpose()
    }

    pub fn with_partition(mut self, part: &SeidelPartition) -> Self {
        self.partition = Some(PartitionDocument {
            cells: part.cells().to_vec(),
            d: part.d_cell().to_vec(),
        });
        self
    }
}

/// Parses and validates a document; the graph and partition must build.
pub fn parse_document(text: &str) -> Result<GraphDocument> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.graph()?;
    doc.seidel_partition()?;
    if let Some(labels) = doc.metadata.as_ref().and_then(|m| m.labels.as_ref()) {
        if labels.len() != doc.order {
            return Err(Error::OrderMismatch(labels.len(), doc.order));
        }
    }
    Ok(doc)
}

pub fn read_document(path: &Path) -> Result<GraphDocument> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn index_list(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(", "))
}

/// Shortest decimal that parses back to the same `f64`; integers keep no
/// fractional part.
pub fn format_weight(w: f64) -> String {
    format!("{}", w + 0.0)
}

/// Canonical text: edges sorted by `(u, v)`, one per line.
pub fn write_document(doc: &GraphDocument) -> String {
    let mut edges = doc.edges.clone();
    edges.sort_by_key(|e| (e.0, e.1));

    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = write!(out, "  \"order\": {},\n  \"edges\": [", doc.order);
    for (i, (u, v, w)) in edges.iter().enumerate() {
        let sep = if i + 1 == edges.len() { "" } else { "," };
        let _ = write!(out, "\n    [{u}, {v}, {}]{sep}", format_weight(*w));
    }
    if !edges.is_empty() {
        out.push_str("\n  ");
    }
    out.push(']');
    if let Some(p) = &doc.partition {
        let cells: Vec<String> = p.cells.iter().map(|c| index_list(c)).collect();
        let _ = write!(
            out,
            ",\n  \"partition\": {{\"cells\": [{}], \"d\": {}}}",
            cells.join(", "),
            index_list(&p.d)
        );
    }
    if let Some(m) = &doc.metadata {
        let mut fields = Vec::new();
        if let Some(name) = &m.name {
            fields.push(format!("\"name\": {}", json_string(name)));
        }
        if let Some(notes) = &m.notes {
            fields.push(format!("\"notes\": {}", json_string(notes)));
        }
        if let Some(labels) = &m.labels {
            fields.push(format!("\"labels\": {}", index_list(labels)));
        }
        let _ = write!(out, ",\n  \"metadata\": {{{}}}", fields.join(", "));
    }
    out.push_str("\n}\n");
    out
}

pub fn write_document_to(doc: &GraphDocument, path: &Path) -> Result<()> {
    std::fs::write(path, write_document(doc))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
