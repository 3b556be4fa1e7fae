use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Cell, Description, Interval};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariableKind {
    Interval,
    Categorical,
    Modal,
}

impl fmt::Display for VariableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariableKind::Interval => "interval",
            VariableKind::Categorical => "categorical",
            VariableKind::Modal => "modal",
        })
    }
}

/// Description space of one variable.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// A closed real interval of nonzero length.
    Interval(Interval),
    /// A finite ordered list of category labels.
    Categorical(Vec<String>),
    /// Category labels over which a weight distribution is given.
    Modal(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariableSchema {
    pub name: String,
    pub domain: Domain,
}

impl VariableSchema {
    pub fn interval(name: impl Into<String>, lo: f64, hi: f64) -> Result<Self> {
        let name = name.into();
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Data(format!(
                "variable `{name}`: interval domain [{lo}, {hi}] must satisfy lo < hi"
            )));
        }
        Ok(VariableSchema {
            name,
            domain: Domain::Interval(Interval { lo, hi }),
        })
    }

    pub fn categorical<S: Into<String>>(
        name: impl Into<String>,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let name = name.into();
        let labels = check_labels(&name, labels)?;
        Ok(VariableSchema {
            name,
            domain: Domain::Categorical(labels),
        })
    }

    pub fn modal<S: Into<String>>(
        name: impl Into<String>,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let name = name.into();
        let labels = check_labels(&name, labels)?;
        Ok(VariableSchema {
            name,
            domain: Domain::Modal(labels),
        })
    }

    pub fn kind(&self) -> VariableKind {
        match self.domain {
            Domain::Interval(_) => VariableKind::Interval,
            Domain::Categorical(_) => VariableKind::Categorical,
            Domain::Modal(_) => VariableKind::Modal,
        }
    }

    /// Labels of a categorical or modal domain; empty for intervals.
    pub fn labels(&self) -> &[String] {
        match &self.domain {
            Domain::Interval(_) => &[],
            Domain::Categorical(labels) | Domain::Modal(labels) => labels,
        }
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels().iter().position(|l| l == label)
    }

    /// Builds an interval cell, checking it lies inside the domain.
    pub fn interval_cell(&self, lo: f64, hi: f64) -> Result<Cell> {
        let cell = Cell::Interval(Interval { lo, hi });
        self.check_cell(&cell)?;
        Ok(cell)
    }

    /// Builds a category-set cell from labels.
    pub fn category_cell<S: AsRef<str>>(
        &self,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Cell> {
        if self.kind() != VariableKind::Categorical {
            return Err(Error::Data(format!(
                "variable `{}` is not categorical",
                self.name
            )));
        }
        let set = labels
            .into_iter()
            .map(|l| self.resolve_label(l.as_ref()))
            .collect::<Result<_>>()?;
        let cell = Cell::Categories(set);
        self.check_cell(&cell)?;
        Ok(cell)
    }

    /// Builds a modal cell from `(label, weight)` pairs; absent labels weigh 0.
    pub fn modal_cell<S: AsRef<str>>(
        &self,
        weights: impl IntoIterator<Item = (S, f64)>,
    ) -> Result<Cell> {
        if self.kind() != VariableKind::Modal {
            return Err(Error::Data(format!(
                "variable `{}` is not modal",
                self.name
            )));
        }
        let mut dense = vec![0.0; self.labels().len()];
        for (label, w) in weights {
            dense[self.resolve_label(label.as_ref())?] = w;
        }
        let cell = Cell::Modal(dense);
        self.check_cell(&cell)?;
        Ok(cell)
    }

    fn resolve_label(&self, label: &str) -> Result<usize> {
        self.label_index(label).ok_or_else(|| {
            Error::Data(format!(
                "variable `{}`: label `{label}` is not in the domain",
                self.name
            ))
        })
    }

    /// Checks a cell against this variable's kind and domain.
    pub fn check_cell(&self, cell: &Cell) -> Result<()> {
        let fail = |msg: String| Err(Error::Data(format!("variable `{}`: {msg}", self.name)));
        match (&self.domain, cell) {
            (Domain::Interval(dom), Cell::Interval(iv)) => {
                if !(iv.lo.is_finite() && iv.hi.is_finite()) {
                    return fail(format!("interval {iv} has non-finite ends"));
                }
                if iv.lo > iv.hi {
                    return fail(format!("interval {iv} is reversed"));
                }
                if iv.lo < dom.lo || iv.hi > dom.hi {
                    return fail(format!("interval {iv} leaves the domain {dom}"));
                }
                Ok(())
            }
            (Domain::Categorical(labels), Cell::Categories(set)) => {
                if set.is_empty() {
                    return fail("category set is empty".into());
                }
                if set.iter().any(|&i| i >= labels.len()) {
                    return fail("category index outside the domain".into());
                }
                Ok(())
            }
            (Domain::Modal(labels), Cell::Modal(weights)) => {
                if weights.len() != labels.len() {
                    return fail(format!(
                        "modal cell has {} weights, domain has {} labels",
                        weights.len(),
                        labels.len()
                    ));
                }
                for (label, &w) in labels.iter().zip(weights) {
                    if !(0.0..=1.0).contains(&w) {
                        return fail(format!("weight {w} of label `{label}` is outside [0, 1]"));
                    }
                }
                Ok(())
            }
            _ => fail(format!(
                "expected a {} cell, found a {} cell",
                self.kind(),
                cell.kind()
            )),
        }
    }
}

fn check_labels<S: Into<String>>(
    name: &str,
    labels: impl IntoIterator<Item = S>,
) -> Result<Vec<String>> {
    let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
    if labels.is_empty() {
        return Err(Error::Data(format!(
            "variable `{name}`: domain must list at least one label"
        )));
    }
    let mut seen = HashSet::new();
    for l in &labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::Data(format!(
                "variable `{name}`: duplicate label `{l}`"
            )));
        }
    }
    Ok(labels)
}

/// The ordered list of variables shared by a table and its objects.
#[derive(Debug, Clone, PartialEq)]
pub struct Schema {
    variables: Vec<VariableSchema>,
}

impl Schema {
    pub fn new(variables: Vec<VariableSchema>) -> Result<Self> {
        if variables.is_empty() {
            return Err(Error::Data(
                "schema must declare at least one variable".into(),
            ));
        }
        Ok(Schema { variables })
    }

    pub fn variables(&self) -> &[VariableSchema] {
        &self.variables
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    /// Checks that a description has one well-formed cell per variable.
    pub fn check(&self, description: &Description) -> Result<()> {
        if description.cells().len() != self.variables.len() {
            return Err(Error::Data(format!(
                "description has {} cells, schema has {} variables",
                description.cells().len(),
                self.variables.len()
            )));
        }
        for (var, cell) in self.variables.iter().zip(description.cells()) {
            var.check_cell(cell)?;
        }
        Ok(())
    }
}
