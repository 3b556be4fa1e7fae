//! Random symbolic tables for property tests and stress runs.
//!
//! Interval cells are sorted uniform pairs inside the domain, categorical
//! cells non-empty uniform subsets and modal cells independent uniform
//! weights. Use a seeded generator to make failures reproducible.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::symbolic::{Cell, Description, Interval, Schema, SymbolicDataTable, VariableSchema};

/// Domain used for random interval variables.
pub const INTERVAL_DOMAIN: (f64, f64) = (0.0, 10.0);

/// A random schema of `variables` variables with kinds drawn uniformly.
pub fn random_schema<R: Rng + ?Sized>(rng: &mut R, variables: usize) -> Schema {
    let vars = (0..variables.max(1))
        .map(|j| {
            let name = format!("y{}", j + 1);
            let labels = |rng: &mut R| {
                (1..=rng.gen_range(2..=5))
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
            };
            match rng.gen_range(0..3) {
                0 => VariableSchema::interval(name, INTERVAL_DOMAIN.0, INTERVAL_DOMAIN.1),
                1 => VariableSchema::categorical(name, labels(rng)),
                _ => VariableSchema::modal(name, labels(rng)),
            }
            .expect("generated variable is valid")
        })
        .collect();
    Schema::new(vars).expect("at least one variable")
}

/// A random cell for `var`.
pub fn random_cell<R: Rng + ?Sized>(rng: &mut R, var: &VariableSchema) -> Cell {
    use crate::symbolic::Domain;
    match &var.domain {
        Domain::Interval(dom) => {
            let a = rng.gen_range(dom.lo..=dom.hi);
            let b = rng.gen_range(dom.lo..=dom.hi);
            Cell::Interval(Interval::new(a.min(b), a.max(b)))
        }
        Domain::Categorical(labels) => {
            let set: BTreeSet<usize> = loop {
                let s: BTreeSet<usize> = (0..labels.len()).filter(|_| rng.gen_bool(0.5)).collect();
                if !s.is_empty() {
                    break s;
                }
            };
            Cell::Categories(set)
        }
        Domain::Modal(labels) => Cell::Modal(
            (0..labels.len())
                .map(|_| rng.gen_range(0.0..=1.0))
                .collect(),
        ),
    }
}

/// A random table of `rows` rows over a random schema of `variables`
/// variables.
pub fn random_table<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    variables: usize,
) -> SymbolicDataTable {
    let schema = random_schema(rng, variables);
    random_rows(rng, schema, rows)
}

/// `rows` random rows over `schema`.
pub fn random_rows<R: Rng + ?Sized>(rng: &mut R, schema: Schema, rows: usize) -> SymbolicDataTable {
    let rows = (0..rows.max(1))
        .map(|_| {
            Description::new(
                schema
                    .variables()
                    .iter()
                    .map(|v| random_cell(rng, v))
                    .collect(),
            )
        })
        .collect();
    SymbolicDataTable::new(schema, rows).expect("generated rows conform")
}

/// A uniformly random permutation of `1..=n`.
pub fn random_order<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    order
}
