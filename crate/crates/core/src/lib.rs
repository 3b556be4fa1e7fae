//! Symbolic pyramidal clustering.
//!
//! A pyramid generalizes a binary hierarchy: clusters may overlap, but all of
//! them are intervals of a single total order on the individuals. This crate
//! builds pyramids over symbolic data tables, where each cell is an interval,
//! a set of categories or a weighted distribution over categories, and every
//! cluster carries a complete symbolic object describing it.
//!
//! Two construction algorithms are provided:
//!
//! * [`run_caps`] discovers a compatible total order while clustering.
//! * [`run_capso`] works within an order supplied up front.
//!
//! [`check_pyramid`] verifies an output independently of the engine.
//!
//! ```
//! use symbolic_pyramid::{io, run_caps, check_pyramid};
//!
//! let table = io::parse_table(r#"{
//!     "variables": [{"name": "size", "kind": "interval", "domain": [0, 10]}],
//!     "rows": [
//!         {"id": 1, "cells": [[1, 2]]},
//!         {"id": 2, "cells": [[2, 3]]},
//!         {"id": 3, "cells": [[7, 9]]}
//!     ]
//! }"#).unwrap();
//!
//! let pyramid = run_caps(&table, 10).unwrap();
//! assert!(check_pyramid(&pyramid.structure, &table).passed());
//! ```

pub mod engine;
pub mod error;
pub mod fuzz;
pub mod io;
pub mod pyramid;
pub mod symbolic;
pub mod validation;

pub use engine::{run_caps, run_capso, Algorithm, EngineState, Mode, Pyramid};
pub use error::{Error, Result};
pub use pyramid::{NodeId, NodeQuadruple, PyramidStructure, RowId};
pub use symbolic::{
    contains, degree_of_generality, generalize, Cell, Description, Domain, Interval, Schema,
    SymbolicDataTable, SymbolicObject, VariableKind, VariableSchema,
};
pub use validation::{check_pyramid, find_compatible_order, ValidationReport};
