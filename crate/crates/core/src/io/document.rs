use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::cells::{cell_from_value, cell_to_value};
use super::{parse_error, round_significant};
use crate::engine::{Algorithm, Pyramid};
use crate::error::{Error, Result};
use crate::pyramid::{NodeId, NodeQuadruple, PyramidStructure, RowId};
use crate::symbolic::{Description, SymbolicDataTable, SymbolicObject};
use crate::validation::ValidationReport;

/// On-disk form of a finished pyramid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PyramidDocument {
    pub order: Vec<RowId>,
    pub nodes: Vec<NodeDocument>,
    pub meta: Meta,
    /// Validator findings, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeDocument {
    pub id: NodeId,
    /// Left child, 0 for terminal nodes.
    pub left: NodeId,
    /// Right child, 0 for terminal nodes.
    pub right: NodeId,
    pub f: f64,
    /// One serialized cell per variable.
    pub object: Vec<Value>,
    pub extent: Vec<RowId>,
    /// Rows matching the object to at least `meta.alpha`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extent_alpha: Option<Vec<RowId>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub algorithm: Algorithm,
    pub iterations: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "NG")]
    pub ng: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

impl PyramidDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// Builds the document for `pyramid`. With `alpha`, every node also lists
/// the rows its object matches to degree at least `alpha`.
pub fn emit_pyramid(
    pyramid: &Pyramid,
    table: &SymbolicDataTable,
    alpha: Option<f64>,
) -> Result<PyramidDocument> {
    let s = &pyramid.structure;
    let schema = table.schema();
    let mut nodes = Vec::with_capacity(s.node_count());
    for (q, (object, extent)) in s.quadruples.iter().zip(s.objects.iter().zip(&s.extents)) {
        let extent_alpha = alpha
            .map(|a| object.extent_at(table, a).map(|e| e.into_iter().collect()))
            .transpose()?;
        nodes.push(NodeDocument {
            id: q.id,
            left: q.left(),
            right: q.right(),
            f: round_significant(q.index),
            object: schema
                .variables()
                .iter()
                .zip(object.description().cells())
                .map(|(var, cell)| cell_to_value(var, cell))
                .collect(),
            extent: extent.iter().copied().collect(),
            extent_alpha,
        });
    }
    Ok(PyramidDocument {
        order: s.final_order.clone(),
        nodes,
        meta: Meta {
            algorithm: pyramid.algorithm,
            iterations: pyramid.iterations,
            n: s.row_count(),
            ng: s.node_count(),
            alpha,
        },
        validation: None,
    })
}

/// Reads a pyramid document produced for `table`.
pub fn parse_pyramid(text: &str, table: &SymbolicDataTable) -> Result<Pyramid> {
    let doc: PyramidDocument = serde_json::from_str(text).map_err(parse_error)?;
    let schema = table.schema();
    let mut quadruples = Vec::with_capacity(doc.nodes.len());
    let mut objects = Vec::with_capacity(doc.nodes.len());
    let mut extents = Vec::with_capacity(doc.nodes.len());
    for node in &doc.nodes {
        let children = match (node.left, node.right) {
            (0, 0) => None,
            (l, r) if l != 0 && r != 0 => Some((l, r)),
            (l, r) => {
                return Err(Error::Data(format!(
                    "node {}: children ({l}, {r}) are half missing",
                    node.id
                )))
            }
        };
        quadruples.push(NodeQuadruple {
            id: node.id,
            children,
            index: node.f,
        });
        if node.object.len() != schema.len() {
            return Err(Error::Data(format!(
                "node {}: object has {} cells",
                node.id,
                node.object.len()
            )));
        }
        let context = format!("node {}", node.id);
        let cells = schema
            .variables()
            .iter()
            .zip(&node.object)
            .map(|(var, v)| cell_from_value(var, v, &context))
            .collect::<Result<Vec<_>>>()?;
        objects.push(SymbolicObject::new(
            schema.clone(),
            Description::new(cells),
        )?);
        extents.push(node.extent.iter().copied().collect::<BTreeSet<_>>());
    }
    Ok(Pyramid {
        structure: PyramidStructure {
            quadruples,
            objects,
            extents,
            final_order: doc.order,
        },
        algorithm: doc.meta.algorithm,
        iterations: doc.meta.iterations,
    })
}
