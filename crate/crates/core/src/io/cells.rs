//! Schema-guided conversion between cells and JSON values.

use serde_json::{Map, Number, Value};

use super::round_significant;
use crate::error::{Error, Result};
use crate::symbolic::{Cell, Domain, Interval, VariableSchema};

/// Label text of a JSON string or number.
pub(crate) fn label_of(value: &Value) -> Option<String> {
    match value {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn number(x: f64) -> Value {
    Number::from_f64(round_significant(x)).map_or(Value::Null, Value::Number)
}

pub(crate) fn cell_to_value(var: &VariableSchema, cell: &Cell) -> Value {
    match cell {
        Cell::Interval(iv) => Value::Array(vec![number(iv.lo), number(iv.hi)]),
        Cell::Categories(set) => Value::Array(
            set.iter()
                .map(|&i| Value::String(var.labels()[i].clone()))
                .collect(),
        ),
        Cell::Modal(weights) => Value::Object(
            var.labels()
                .iter()
                .zip(weights)
                .map(|(l, &w)| (l.clone(), number(w)))
                .collect::<Map<_, _>>(),
        ),
    }
}

/// Reads one cell. `context` names the row or node for error messages.
///
/// A bare scalar is accepted as a point interval or a singleton category set.
pub(crate) fn cell_from_value(var: &VariableSchema, value: &Value, context: &str) -> Result<Cell> {
    let fail = |msg: String| Error::Data(format!("{context}, variable `{}`: {msg}", var.name));
    let cell = match &var.domain {
        Domain::Interval(_) => match value {
            Value::Number(n) => Cell::Interval(Interval::point(n.as_f64().unwrap_or(f64::NAN))),
            Value::Array(items) if items.len() == 2 => {
                let end = |v: &Value| {
                    v.as_f64()
                        .ok_or_else(|| fail(format!("interval end {v} is not a number")))
                };
                Cell::Interval(Interval::new(end(&items[0])?, end(&items[1])?))
            }
            other => return Err(fail(format!("expected [lo, hi], found {other}"))),
        },
        Domain::Categorical(_) => {
            let items: Vec<&Value> = match value {
                Value::Array(items) => items.iter().collect(),
                scalar => vec![scalar],
            };
            let mut set = std::collections::BTreeSet::new();
            for item in items {
                let label = label_of(item)
                    .ok_or_else(|| fail(format!("category {item} is not a label")))?;
                let idx = var
                    .label_index(&label)
                    .ok_or_else(|| fail(format!("label `{label}` is not in the domain")))?;
                set.insert(idx);
            }
            Cell::Categories(set)
        }
        Domain::Modal(labels) => {
            let Value::Object(map) = value else {
                return Err(fail(format!("expected {{label: weight}}, found {value}")));
            };
            let mut weights = vec![0.0; labels.len()];
            for (label, w) in map {
                let idx = var
                    .label_index(label)
                    .ok_or_else(|| fail(format!("label `{label}` is not in the domain")))?;
                let w = w
                    .as_f64()
                    .ok_or_else(|| fail(format!("weight of label `{label}` is not a number")))?;
                if !(0.0..=1.0).contains(&w) {
                    return Err(fail(format!(
                        "weight {w} of label `{label}` is outside [0, 1]"
                    )));
                }
                weights[idx] = w;
            }
            Cell::Modal(weights)
        }
    };
    var.check_cell(&cell).map_err(|e| {
        Error::Data(format!(
            "{context}: {}",
            e.to_string().trim_start_matches("data error: ")
        ))
    })?;
    Ok(cell)
}
