use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Cell, Description, Domain, Schema, SymbolicDataTable, TOLERANCE};
use crate::error::{Error, Result};
use crate::pyramid::RowId;

/// Least general description covering every input.
///
/// Intervals take their convex hull, category sets their union and modal
/// cells the per-category maximum weight.
pub fn generalize<'a, I>(schema: &Schema, descriptions: I) -> Result<Description>
where
    I: IntoIterator<Item = &'a Description>,
{
    let mut iter = descriptions.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::Usage("generalize needs at least one description".into()))?;
    schema.check(first)?;
    let mut acc = first.clone();
    for d in iter {
        schema.check(d)?;
        acc = join(&acc, d);
    }
    Ok(acc)
}

/// Binary generalization of two conforming descriptions.
pub(crate) fn join(a: &Description, b: &Description) -> Description {
    a.cells()
        .iter()
        .zip(b.cells())
        .map(|pair| match pair {
            (Cell::Interval(x), Cell::Interval(y)) => Cell::Interval(x.hull(y)),
            (Cell::Categories(x), Cell::Categories(y)) => Cell::Categories(x | y),
            (Cell::Modal(x), Cell::Modal(y)) => {
                Cell::Modal(x.iter().zip(y).map(|(p, q)| p.max(*q)).collect())
            }
            _ => unreachable!("cells of conforming descriptions share kinds"),
        })
        .collect::<Vec<_>>()
        .into()
}

/// True iff `inner` lies inside `outer` on every variable.
pub fn contains(schema: &Schema, outer: &Description, inner: &Description) -> Result<bool> {
    schema.check(outer)?;
    schema.check(inner)?;
    Ok(contains_unchecked(outer, inner))
}

pub(crate) fn contains_unchecked(outer: &Description, inner: &Description) -> bool {
    outer
        .cells()
        .iter()
        .zip(inner.cells())
        .all(|pair| match pair {
            (Cell::Interval(o), Cell::Interval(i)) => o.contains(i),
            (Cell::Categories(o), Cell::Categories(i)) => i.is_subset(o),
            (Cell::Modal(o), Cell::Modal(i)) => {
                i.iter().zip(o).all(|(wi, wo)| *wi <= wo + TOLERANCE)
            }
            _ => false,
        })
}

/// Product over variables of the share of the domain each cell covers.
pub fn degree_of_generality(schema: &Schema, description: &Description) -> Result<f64> {
    schema.check(description)?;
    Ok(generality_unchecked(schema, description))
}

pub(crate) fn generality_unchecked(schema: &Schema, description: &Description) -> f64 {
    schema
        .variables()
        .iter()
        .zip(description.cells())
        .map(|(var, cell)| match (&var.domain, cell) {
            (Domain::Interval(dom), Cell::Interval(iv)) => iv.length() / dom.length(),
            (Domain::Categorical(labels), Cell::Categories(set)) => {
                set.len() as f64 / labels.len() as f64
            }
            (Domain::Modal(labels), Cell::Modal(weights)) => {
                weights.iter().sum::<f64>() / labels.len() as f64
            }
            _ => unreachable!("description conforms to schema"),
        })
        .product()
}

/// Degree in `[0, 1]` to which `w` satisfies the assertion `s`.
///
/// Interval and categorical variables score 0 or 1. A modal variable scores 1
/// when every weight of `w` is covered, otherwise the covered share of `w`'s
/// mass. The overall degree is the minimum across variables.
pub fn match_degree(schema: &Schema, s: &Description, w: &Description) -> Result<f64> {
    schema.check(s)?;
    schema.check(w)?;
    Ok(match_unchecked(s, w))
}

fn match_unchecked(s: &Description, w: &Description) -> f64 {
    s.cells()
        .iter()
        .zip(w.cells())
        .map(|pair| match pair {
            (Cell::Interval(o), Cell::Interval(i)) => indicator(o.contains(i)),
            (Cell::Categories(o), Cell::Categories(i)) => indicator(i.is_subset(o)),
            (Cell::Modal(o), Cell::Modal(i)) => {
                if i.iter().zip(o).all(|(wi, wo)| *wi <= wo + TOLERANCE) {
                    return 1.0;
                }
                let mass: f64 = i.iter().sum();
                if mass <= 0.0 {
                    return 1.0;
                }
                let covered: f64 = i.iter().zip(o).map(|(wi, wo)| wi.min(*wo)).sum();
                (covered / mass).clamp(0.0, 1.0)
            }
            _ => 0.0,
        })
        .fold(1.0, f64::min)
}

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// An assertion object: "each variable of the individual lies inside the
/// corresponding cell of `description`".
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicObject {
    schema: Arc<Schema>,
    description: Description,
}

impl SymbolicObject {
    pub fn new(schema: Arc<Schema>, description: Description) -> Result<Self> {
        schema.check(&description)?;
        Ok(SymbolicObject {
            schema,
            description,
        })
    }

    pub(crate) fn new_unchecked(schema: Arc<Schema>, description: Description) -> Self {
        SymbolicObject {
            schema,
            description,
        }
    }

    /// The object describing exactly one row of `table`.
    pub fn from_row(table: &SymbolicDataTable, id: RowId) -> Result<Self> {
        let row = table
            .row(id)
            .ok_or_else(|| Error::Usage(format!("row {id} does not exist")))?;
        Ok(SymbolicObject::new_unchecked(
            table.schema().clone(),
            row.clone(),
        ))
    }

    /// The generalization of the given rows of `table`.
    pub fn covering(
        table: &SymbolicDataTable,
        ids: impl IntoIterator<Item = RowId>,
    ) -> Result<Self> {
        let rows = ids
            .into_iter()
            .map(|id| {
                table
                    .row(id)
                    .ok_or_else(|| Error::Usage(format!("row {id} does not exist")))
            })
            .collect::<Result<Vec<_>>>()?;
        let description = generalize(table.schema(), rows)?;
        Ok(SymbolicObject::new_unchecked(
            table.schema().clone(),
            description,
        ))
    }

    pub fn schema(&self) -> &Arc<Schema> {
        &self.schema
    }

    pub fn description(&self) -> &Description {
        &self.description
    }

    /// Union of two objects over the same schema.
    pub fn union(&self, other: &SymbolicObject) -> Result<SymbolicObject> {
        self.same_schema(&other.schema)?;
        Ok(SymbolicObject::new_unchecked(
            self.schema.clone(),
            join(&self.description, &other.description),
        ))
    }

    pub fn contains(&self, w: &Description) -> Result<bool> {
        self.schema.check(w)?;
        Ok(contains_unchecked(&self.description, w))
    }

    pub fn match_degree(&self, w: &Description) -> Result<f64> {
        self.schema.check(w)?;
        Ok(match_unchecked(&self.description, w))
    }

    pub fn generality(&self) -> f64 {
        generality_unchecked(&self.schema, &self.description)
    }

    /// Rows satisfying the assertion.
    pub fn extent(&self, table: &SymbolicDataTable) -> Result<BTreeSet<RowId>> {
        self.same_schema(table.schema())?;
        Ok(table
            .iter()
            .filter(|(_, row)| contains_unchecked(&self.description, row))
            .map(|(id, _)| id)
            .collect())
    }

    /// Rows whose match degree reaches `alpha`.
    pub fn extent_at(&self, table: &SymbolicDataTable, alpha: f64) -> Result<BTreeSet<RowId>> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Usage(format!("alpha {alpha} is outside [0, 1]")));
        }
        self.same_schema(table.schema())?;
        Ok(table
            .iter()
            .filter(|(_, row)| match_unchecked(&self.description, row) >= alpha)
            .map(|(id, _)| id)
            .collect())
    }

    /// True iff the object equals the generalization of its own extent.
    pub fn is_complete(&self, table: &SymbolicDataTable) -> Result<bool> {
        let extent = self.extent(table)?;
        if extent.is_empty() {
            return Ok(false);
        }
        let rows = extent.iter().filter_map(|&id| table.row(id));
        let closure = generalize(&self.schema, rows)?;
        Ok(closure.approx_eq(&self.description))
    }

    fn same_schema(&self, other: &Arc<Schema>) -> Result<()> {
        if Arc::ptr_eq(&self.schema, other) || *self.schema == **other {
            Ok(())
        } else {
            Err(Error::Data(
                "symbolic object and table have different schemas".into(),
            ))
        }
    }
}
