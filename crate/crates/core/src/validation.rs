//! Brute-force checks that an emitted structure is a symbolic pyramid.
//!
//! Nothing here looks at engine state: member sets are rebuilt from the
//! child links and every property is checked by direct enumeration.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pyramid::{NodeId, PyramidStructure, RowId};
use crate::symbolic::SymbolicDataTable;

/// Largest row count [`find_compatible_order`] will enumerate.
pub const MAX_BRUTE_FORCE_ROWS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// The full row set is a node.
    pub axiom1_omega_present: bool,
    /// Every singleton is a node.
    pub axiom2_singletons: bool,
    /// Pairwise intersections are empty or nodes.
    pub axiom3_intersection_closed: bool,
    /// Every node is an interval of the final order.
    pub axiom4_order_compatible: bool,
    /// Every node's object is complete and its recorded extent is exact.
    pub completeness_ok: bool,
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.axiom1_omega_present
            && self.axiom2_singletons
            && self.axiom3_intersection_closed
            && self.axiom4_order_compatible
            && self.completeness_ok
            && self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "FAILED" };
        writeln!(
            f,
            "omega present:        {}",
            mark(self.axiom1_omega_present)
        )?;
        writeln!(f, "singletons present:   {}", mark(self.axiom2_singletons))?;
        writeln!(
            f,
            "intersection closed:  {}",
            mark(self.axiom3_intersection_closed)
        )?;
        writeln!(
            f,
            "order compatible:     {}",
            mark(self.axiom4_order_compatible)
        )?;
        writeln!(f, "objects complete:     {}", mark(self.completeness_ok))?;
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Checks the pyramid axioms and object completeness for `pyramid` over
/// `table`.
pub fn check_pyramid(pyramid: &PyramidStructure, table: &SymbolicDataTable) -> ValidationReport {
    let mut violations = Vec::new();
    let n = table.len();
    let sets = member_sets(pyramid, &mut violations);
    let family: BTreeSet<&BTreeSet<RowId>> = sets.iter().collect();

    let omega: BTreeSet<RowId> = (1..=n).collect();
    let axiom1 = family.contains(&omega);
    if !axiom1 {
        violations.push("no node covers every row".into());
    }

    let mut axiom2 = true;
    for row in 1..=n {
        if !family.contains(&BTreeSet::from([row])) {
            axiom2 = false;
            violations.push(format!("singleton {{{row}}} is missing"));
        }
    }

    let mut axiom3 = true;
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            let meet: BTreeSet<RowId> = a & b;
            if !meet.is_empty() && !family.contains(&meet) {
                axiom3 = false;
                violations.push(format!(
                    "nodes {} and {} intersect in {meet:?}, which is not a node",
                    i + 1,
                    j + 1
                ));
            }
        }
    }

    let mut axiom4 = is_permutation(&pyramid.final_order, n);
    if !axiom4 {
        violations.push(format!(
            "final order {:?} is not a permutation of 1..={n}",
            pyramid.final_order
        ));
    } else {
        for (i, set) in sets.iter().enumerate() {
            if !is_interval(set, &pyramid.final_order) {
                axiom4 = false;
                violations.push(format!(
                    "node {} = {set:?} is not an interval of the final order",
                    i + 1
                ));
            }
        }
    }

    let completeness = check_objects(pyramid, table, &mut violations);

    ValidationReport {
        axiom1_omega_present: axiom1,
        axiom2_singletons: axiom2,
        axiom3_intersection_closed: axiom3,
        axiom4_order_compatible: axiom4,
        completeness_ok: completeness,
        violations,
    }
}

fn member_sets(pyramid: &PyramidStructure, violations: &mut Vec<String>) -> Vec<BTreeSet<RowId>> {
    let n = pyramid.row_count();
    let mut sets: Vec<BTreeSet<RowId>> = Vec::new();
    for (i, q) in pyramid.quadruples.iter().enumerate() {
        let id = i + 1;
        if q.id != id {
            violations.push(format!("record {id} carries id {}", q.id));
        }
        let set = match q.children {
            None => {
                if id > n {
                    violations.push(format!("node {id} has no children but is not a row"));
                }
                BTreeSet::from([id])
            }
            Some((l, r)) => {
                if id <= n {
                    violations.push(format!("terminal node {id} has children"));
                }
                if l == r || l >= id || r >= id || l == 0 || r == 0 {
                    violations.push(format!("node {id} has invalid children ({l}, {r})"));
                    BTreeSet::new()
                } else {
                    &sets[l - 1] | &sets[r - 1]
                }
            }
        };
        sets.push(set);
    }
    sets
}

fn check_objects(
    pyramid: &PyramidStructure,
    table: &SymbolicDataTable,
    violations: &mut Vec<String>,
) -> bool {
    let mut ok = true;
    if pyramid.objects.len() != pyramid.quadruples.len()
        || pyramid.extents.len() != pyramid.quadruples.len()
    {
        violations.push("objects or extents do not match the node count".into());
        return false;
    }
    for (i, (object, recorded)) in pyramid.objects.iter().zip(&pyramid.extents).enumerate() {
        let id: NodeId = i + 1;
        match (object.is_complete(table), object.extent(table)) {
            (Ok(complete), Ok(extent)) => {
                if !complete {
                    ok = false;
                    violations.push(format!("object of node {id} is not complete"));
                }
                if &extent != recorded {
                    ok = false;
                    violations.push(format!(
                        "node {id} records extent {recorded:?} but its object covers {extent:?}"
                    ));
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                ok = false;
                violations.push(format!("object of node {id}: {e}"));
            }
        }
    }
    ok
}

fn is_permutation(order: &[RowId], n: usize) -> bool {
    order.len() == n && order.iter().copied().collect::<BTreeSet<_>>() == (1..=n).collect()
}

fn is_interval(set: &BTreeSet<RowId>, order: &[RowId]) -> bool {
    let positions: Vec<usize> = order
        .iter()
        .enumerate()
        .filter(|(_, r)| set.contains(r))
        .map(|(p, _)| p)
        .collect();
    positions.len() == set.len()
        && positions
            .first()
            .zip(positions.last())
            .is_none_or(|(a, b)| b - a + 1 == positions.len())
}

/// Some order of `1..=n` under which every set of `family` is an interval,
/// found by enumerating all permutations.
pub fn find_compatible_order(family: &[BTreeSet<RowId>], n: usize) -> Result<Option<Vec<RowId>>> {
    if n > MAX_BRUTE_FORCE_ROWS {
        return Err(Error::Usage(format!(
            "brute-force order search is limited to {MAX_BRUTE_FORCE_ROWS} rows, got {n}"
        )));
    }
    Ok((1..=n)
        .permutations(n)
        .find(|order| family.iter().all(|set| is_interval(set, order))))
}
