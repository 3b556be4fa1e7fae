use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::cells::{cell_from_value, cell_to_value, label_of};
use super::{parse_error, round_significant};
use crate::error::{Error, Result};
use crate::symbolic::{
    Description, Domain, Schema, SymbolicDataTable, VariableKind, VariableSchema,
};

/// A cell as written in a document: `[lo, hi]`, `[label, ...]` or
/// `{label: weight, ...}` depending on the variable's kind.
pub type CellDocument = Value;

/// On-disk form of a symbolic data table.
///
/// ```json
/// {
///   "variables": [
///     {"name": "y1", "kind": "interval", "domain": [1, 6]},
///     {"name": "y2", "kind": "categorical", "domain": ["1", "2", "3"]},
///     {"name": "y3", "kind": "modal", "domain": ["1", "2"]}
///   ],
///   "rows": [
///     {"id": 1, "cells": [[1, 4], ["2"], {"1": 0.1, "2": 0.9}]}
///   ]
/// }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub variables: Vec<VariableDocument>,
    pub rows: Vec<RowDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDocument {
    pub name: String,
    pub kind: VariableKind,
    /// `[lo, hi]` for intervals, the label list otherwise.
    pub domain: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowDocument {
    pub id: usize,
    pub cells: Vec<CellDocument>,
}

impl VariableDocument {
    fn to_schema(&self) -> Result<VariableSchema> {
        let fail = |msg: &str| Error::Data(format!("variable `{}`: {msg}", self.name));
        match self.kind {
            VariableKind::Interval => match self.domain.as_slice() {
                [lo, hi] => {
                    let lo = lo
                        .as_f64()
                        .ok_or_else(|| fail("domain bounds must be numbers"))?;
                    let hi = hi
                        .as_f64()
                        .ok_or_else(|| fail("domain bounds must be numbers"))?;
                    VariableSchema::interval(&self.name, lo, hi)
                }
                _ => Err(fail("interval domain must be [lo, hi]")),
            },
            VariableKind::Categorical | VariableKind::Modal => {
                let labels = self
                    .domain
                    .iter()
                    .map(|v| {
                        label_of(v).ok_or_else(|| fail("domain labels must be strings or numbers"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if self.kind == VariableKind::Categorical {
                    VariableSchema::categorical(&self.name, labels)
                } else {
                    VariableSchema::modal(&self.name, labels)
                }
            }
        }
    }

    fn from_schema(var: &VariableSchema) -> Self {
        let domain = match &var.domain {
            Domain::Interval(iv) => vec![
                serde_json::json!(round_significant(iv.lo)),
                serde_json::json!(round_significant(iv.hi)),
            ],
            Domain::Categorical(labels) | Domain::Modal(labels) => {
                labels.iter().map(|l| Value::String(l.clone())).collect()
            }
        };
        VariableDocument {
            name: var.name.clone(),
            kind: var.kind(),
            domain,
        }
    }
}

impl TableDocument {
    pub fn into_table(self) -> Result<SymbolicDataTable> {
        let variables = self
            .variables
            .iter()
            .map(VariableDocument::to_schema)
            .collect::<Result<Vec<_>>>()?;
        let schema = Schema::new(variables)?;
        if self.rows.is_empty() {
            return Err(Error::Data("table must contain at least one row".into()));
        }

        let n = self.rows.len();
        let mut slots: Vec<Option<Description>> = vec![None; n];
        for row in &self.rows {
            if row.id == 0 || row.id > n {
                return Err(Error::Data(format!("row id {} is outside 1..={n}", row.id)));
            }
            if slots[row.id - 1].is_some() {
                return Err(Error::Data(format!("row id {} appears twice", row.id)));
            }
            if row.cells.len() != schema.len() {
                return Err(Error::Data(format!(
                    "row {}: expected {} cells, found {}",
                    row.id,
                    schema.len(),
                    row.cells.len()
                )));
            }
            let context = format!("row {}", row.id);
            let cells = schema
                .variables()
                .iter()
                .zip(&row.cells)
                .map(|(var, value)| cell_from_value(var, value, &context))
                .collect::<Result<Vec<_>>>()?;
            slots[row.id - 1] = Some(Description::new(cells));
        }
        let rows = slots
            .into_iter()
            .map(|d| d.expect("every id filled"))
            .collect();
        SymbolicDataTable::new(schema, rows)
    }

    pub fn from_table(table: &SymbolicDataTable) -> Self {
        let schema = table.schema();
        TableDocument {
            variables: schema
                .variables()
                .iter()
                .map(VariableDocument::from_schema)
                .collect(),
            rows: table
                .iter()
                .map(|(id, row)| RowDocument {
                    id,
                    cells: schema
                        .variables()
                        .iter()
                        .zip(row.cells())
                        .map(|(var, cell)| cell_to_value(var, cell))
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Parses a JSON table document.
pub fn parse_table(text: &str) -> Result<SymbolicDataTable> {
    let doc: TableDocument = serde_json::from_str(text).map_err(parse_error)?;
    doc.into_table()
}

/// Serializes a table as a pretty-printed JSON document.
pub fn table_to_json(table: &SymbolicDataTable) -> String {
    serde_json::to_string_pretty(&TableDocument::from_table(table)).expect("table serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Cell;

    const SMALL: &str = r#"{
        "variables": [
            {"name": "y1", "kind": "interval", "domain": [1, 6]},
            {"name": "y2", "kind": "categorical", "domain": [1, 2, 3]},
            {"name": "y3", "kind": "modal", "domain": [1, 2]}
        ],
        "rows": [
            {"id": 2, "cells": [[1, 5], 3, {"2": 0.9}]},
            {"id": 1, "cells": [[1, 4], ["2"], {"1": 0.1, "2": 0.9}]}
        ]
    }"#;

    #[test]
    fn parses_rows_by_id() {
        let table = parse_table(SMALL).unwrap();
        assert_eq!(table.len(), 2);
        let y2 = &table.schema().variables()[1];
        assert_eq!(
            table.row(2).unwrap().cells()[1],
            y2.category_cell(["3"]).unwrap()
        );
        assert_eq!(
            table.row(2).unwrap().cells()[2],
            Cell::Modal(vec![0.0, 0.9])
        );
    }

    #[test]
    fn empty_rows_are_rejected() {
        let text =
            r#"{"variables": [{"name": "y", "kind": "interval", "domain": [0, 1]}], "rows": []}"#;
        let err = parse_table(text).unwrap_err();
        assert!(
            err.to_string()
                .contains("table must contain at least one row"),
            "{err}"
        );
    }

    #[test]
    fn weight_out_of_range_names_row_variable_and_label() {
        let text = SMALL.replace("\"2\": 0.9}]}", "\"2\": 1.5}]}");
        let err = parse_table(&text).unwrap_err().to_string();
        assert!(
            err.contains("row 2") && err.contains("`y3`") && err.contains("`2`"),
            "{err}"
        );
    }

    #[test]
    fn reversed_interval_is_rejected() {
        let text = SMALL.replace("[1, 5]", "[5, 1]");
        assert!(matches!(parse_table(&text), Err(Error::Data(_))));
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let err = parse_table("{\n  \"variables\": [,\n}").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 17)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn kind_domain_mismatch() {
        let text = r#"{"variables": [{"name": "y", "kind": "interval", "domain": ["a", "b"]}],
                       "rows": [{"id": 1, "cells": [[0, 1]]}]}"#;
        assert!(matches!(parse_table(text), Err(Error::Data(_))));
    }

    #[test]
    fn json_round_trip() {
        let table = parse_table(SMALL).unwrap();
        let again = parse_table(&table_to_json(&table)).unwrap();
        assert_eq!(table.rows(), again.rows());
        assert_eq!(table.schema(), again.schema());
    }
}
