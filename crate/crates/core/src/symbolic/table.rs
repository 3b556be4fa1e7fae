use std::sync::Arc;

use super::{Description, Schema};
use crate::error::{Error, Result};
use crate::pyramid::RowId;

/// A schema plus `N >= 1` rows. Row ids run from 1 to `N`.
#[derive(Debug, Clone)]
pub struct SymbolicDataTable {
    schema: Arc<Schema>,
    rows: Vec<Description>,
}

impl SymbolicDataTable {
    pub fn new(schema: impl Into<Arc<Schema>>, rows: Vec<Description>) -> Result<Self> {
        let schema = schema.into();
        if rows.is_empty() {
            return Err(Error::Data("table must contain at least one row".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            schema
                .check(row)
                .map_err(|e| Error::Data(format!("row {}: {}", i + 1, strip(e))))?;
        }
        Ok(SymbolicDataTable { schema, rows })
    }

    pub fn schema(&self) -> &Arc<Schema> {
        &self.schema
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Description] {
        &self.rows
    }

    /// The row with 1-based id `id`.
    pub fn row(&self, id: RowId) -> Option<&Description> {
        id.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    /// `(id, description)` pairs in id order.
    pub fn iter(&self) -> impl Iterator<Item = (RowId, &Description)> {
        self.rows.iter().enumerate().map(|(i, d)| (i + 1, d))
    }
}

fn strip(e: Error) -> String {
    match e {
        Error::Data(msg) => msg,
        other => other.to_string(),
    }
}
