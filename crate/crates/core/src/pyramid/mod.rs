//! Pyramid structures: node records, connected components carrying total
//! orders, and the order-relative relations that decide which nodes may merge.

mod construction;
pub mod relations;
mod structure;

pub use construction::{
    ClusterNode, ComponentId, ConnectedComponent, Construction, Layout, Orientation,
};
pub use relations::Span;
pub use structure::{NodeQuadruple, PyramidStructure};

/// 1-based id of a table row.
pub type RowId = usize;

/// 1-based id of a pyramid node. Ids `1..=N` are the terminal nodes.
pub type NodeId = usize;
