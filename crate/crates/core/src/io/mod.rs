//! JSON table and pyramid documents, and Graphviz DOT output.

mod cells;
mod document;
mod dot;
mod table;

pub use document::{emit_pyramid, parse_pyramid, Meta, NodeDocument, PyramidDocument};
pub use dot::emit_dot;
pub use table::{
    parse_table, table_to_json, CellDocument, RowDocument, TableDocument, VariableDocument,
};

/// Rounds `x` to 12 significant digits.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn parse_error(err: serde_json::Error) -> crate::Error {
    crate::Error::Parse {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}
