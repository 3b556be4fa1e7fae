use std::collections::BTreeSet;

use super::{NodeId, RowId};
use crate::error::{Error, Result};
use crate::symbolic::SymbolicObject;

/// One output record `(p, p_I, p_D, f(p))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeQuadruple {
    pub id: NodeId,
    /// `(left, right)` children; `None` for terminal nodes.
    pub children: Option<(NodeId, NodeId)>,
    /// Generality of the node's object; 0 for terminal nodes.
    pub index: f64,
}

impl NodeQuadruple {
    pub fn terminal(id: NodeId) -> Self {
        NodeQuadruple {
            id,
            children: None,
            index: 0.0,
        }
    }

    /// Left child id, 0 for terminal nodes.
    pub fn left(&self) -> NodeId {
        self.children.map_or(0, |(l, _)| l)
    }

    /// Right child id, 0 for terminal nodes.
    pub fn right(&self) -> NodeId {
        self.children.map_or(0, |(_, r)| r)
    }

    pub fn is_terminal(&self) -> bool {
        self.children.is_none()
    }
}

/// A finished pyramid: node records, per-node objects and extents, and the
/// total order under which every node is an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PyramidStructure {
    pub quadruples: Vec<NodeQuadruple>,
    /// Object of node `p` at index `p - 1`.
    pub objects: Vec<SymbolicObject>,
    /// Extent of node `p` at index `p - 1`.
    pub extents: Vec<BTreeSet<RowId>>,
    pub final_order: Vec<RowId>,
}

impl PyramidStructure {
    pub fn row_count(&self) -> usize {
        self.final_order.len()
    }

    pub fn node_count(&self) -> usize {
        self.quadruples.len()
    }

    pub fn quadruple(&self, id: NodeId) -> Option<&NodeQuadruple> {
        id.checked_sub(1).and_then(|i| self.quadruples.get(i))
    }

    pub fn object(&self, id: NodeId) -> Option<&SymbolicObject> {
        id.checked_sub(1).and_then(|i| self.objects.get(i))
    }

    pub fn extent(&self, id: NodeId) -> Option<&BTreeSet<RowId>> {
        id.checked_sub(1).and_then(|i| self.extents.get(i))
    }

    /// The last node formed, which covers every row on success.
    pub fn root(&self) -> Option<&NodeQuadruple> {
        self.quadruples.last()
    }

    /// Member rows of every node, derived from the child links.
    pub fn member_sets(&self) -> Result<Vec<BTreeSet<RowId>>> {
        let mut sets: Vec<BTreeSet<RowId>> = Vec::with_capacity(self.quadruples.len());
        for (i, q) in self.quadruples.iter().enumerate() {
            if q.id != i + 1 {
                return Err(Error::Structure(format!(
                    "node at position {} has id {}",
                    i + 1,
                    q.id
                )));
            }
            let set = match q.children {
                None => BTreeSet::from([q.id]),
                Some((l, r)) => {
                    let child = |c: NodeId| {
                        c.checked_sub(1).and_then(|k| sets.get(k)).ok_or_else(|| {
                            Error::Structure(format!("node {} refers to unknown child {c}", q.id))
                        })
                    };
                    child(l)? | child(r)?
                }
            };
            sets.push(set);
        }
        Ok(sets)
    }

    /// Id of the node whose member set equals `members`.
    pub fn find_node(&self, members: &BTreeSet<RowId>) -> Option<NodeId> {
        self.member_sets()
            .ok()?
            .iter()
            .position(|s| s == members)
            .map(|i| i + 1)
    }
}
