use std::collections::BTreeSet;
use std::fmt;

use super::{VariableKind, TOLERANCE};

/// A closed real interval `[lo, hi]`. Point intervals are allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    /// Smallest interval covering both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn contains(&self, inner: &Interval) -> bool {
        self.lo <= inner.lo + TOLERANCE && inner.hi <= self.hi + TOLERANCE
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// One variable's value in a description.
///
/// Categories are stored as indices into the variable's label list and modal
/// weights as a dense vector aligned with it.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Interval(Interval),
    Categories(BTreeSet<usize>),
    Modal(Vec<f64>),
}

impl Cell {
    pub fn kind(&self) -> VariableKind {
        match self {
            Cell::Interval(_) => VariableKind::Interval,
            Cell::Categories(_) => VariableKind::Categorical,
            Cell::Modal(_) => VariableKind::Modal,
        }
    }

    /// Equality up to the real tolerance.
    pub fn approx_eq(&self, other: &Cell) -> bool {
        match (self, other) {
            (Cell::Interval(a), Cell::Interval(b)) => {
                (a.lo - b.lo).abs() <= TOLERANCE && (a.hi - b.hi).abs() <= TOLERANCE
            }
            (Cell::Categories(a), Cell::Categories(b)) => a == b,
            (Cell::Modal(a), Cell::Modal(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= TOLERANCE)
            }
            _ => false,
        }
    }
}

/// A vector of cells, one per variable, in schema order.
#[derive(Debug, Clone, PartialEq)]
pub struct Description {
    cells: Vec<Cell>,
}

impl Description {
    pub fn new(cells: Vec<Cell>) -> Self {
        Description { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<Cell> {
        self.cells
    }

    pub fn approx_eq(&self, other: &Description) -> bool {
        self.cells.len() == other.cells.len()
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(a, b)| a.approx_eq(b))
    }
}

impl From<Vec<Cell>> for Description {
    fn from(cells: Vec<Cell>) -> Self {
        Description { cells }
    }
}
