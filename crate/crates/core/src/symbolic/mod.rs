//! Symbolic data model: variables, cells, descriptions and assertion objects.

mod cell;
mod object;
mod schema;
mod table;

pub use cell::{Cell, Description, Interval};
pub use object::{contains, degree_of_generality, generalize, match_degree, SymbolicObject};
pub use schema::{Domain, Schema, VariableKind, VariableSchema};
pub use table::SymbolicDataTable;

/// Absolute tolerance for every comparison between reals.
pub const TOLERANCE: f64 = 1e-9;
