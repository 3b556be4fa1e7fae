//! The CAPS and CAPSO construction algorithms.
//!
//! Both run the same state machine. Each iteration removes active nodes that
//! can no longer be aggregated (elimination), picks the aggregable pair whose
//! union has the smallest generality and whose union is complete and adds no
//! foreign rows (formation), then records the new node and updates components
//! and active nodes (update). CAPS starts from one component per row and
//! discovers the order; CAPSO starts from a single ordered component.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pyramid::{Construction, NodeId, NodeQuadruple, Orientation, PyramidStructure, RowId};
use crate::symbolic::{SymbolicDataTable, SymbolicObject, TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Caps,
    Capso,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Caps => "caps",
            Algorithm::Capso => "capso",
        })
    }
}

/// How the initial components are laid out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    /// One component per row; the order is discovered.
    Caps,
    /// A single component ordered as given.
    Capso(Vec<RowId>),
}

/// A successful run.
#[derive(Debug, Clone, PartialEq)]
pub struct Pyramid {
    pub structure: PyramidStructure,
    pub algorithm: Algorithm,
    /// Number of merges performed.
    pub iterations: usize,
}

/// Builds a symbolic pyramid, discovering a compatible order.
pub fn run_caps(table: &SymbolicDataTable, max_iterations: usize) -> Result<Pyramid> {
    EngineState::initialize(table, max_iterations, Mode::Caps)?.run()
}

/// Builds a symbolic pyramid whose nodes are intervals of `order`.
pub fn run_capso(
    table: &SymbolicDataTable,
    order: &[RowId],
    max_iterations: usize,
) -> Result<Pyramid> {
    EngineState::initialize(table, max_iterations, Mode::Capso(order.to_vec()))?.run()
}

/// Iteration budget large enough for any table of `n` rows.
pub fn default_max_iterations(n: usize) -> usize {
    n * n.saturating_sub(1) / 2 + n
}

/// A node still eligible for merging.
#[derive(Debug, Clone)]
pub struct ActiveNode {
    /// Position among the current active nodes.
    pub alpha: usize,
    /// Global node id.
    pub beta: NodeId,
    pub object: SymbolicObject,
    /// Number of times the node has been aggregated.
    pub ell: u8,
    /// Sorted member rows.
    pub members: Vec<RowId>,
}

/// An accepted candidate, ready for the update phase.
#[derive(Debug, Clone)]
pub struct Merge {
    pub orientation: Orientation,
    pub object: SymbolicObject,
    pub extent: BTreeSet<RowId>,
    pub index: f64,
}

#[derive(Debug, Clone)]
struct Square<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Clone> Square<T> {
    fn filled(n: usize, value: T) -> Self {
        Square {
            n,
            data: vec![value; n * n],
        }
    }

    fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.n + j] = value.clone();
        self.data[j * self.n + i] = value;
    }
}

fn pair_key(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    (a.min(b), a.max(b))
}

/// Full state of one construction run.
#[derive(Debug, Clone)]
pub struct EngineState<'t> {
    table: &'t SymbolicDataTable,
    algorithm: Algorithm,
    iteration: usize,
    max_iterations: usize,
    construction: Construction,
    active: Vec<ActiveNode>,
    dissimilarity: Square<f64>,
    aggregability: Square<Option<Orientation>>,
    quadruples: Vec<NodeQuadruple>,
    objects: Vec<SymbolicObject>,
    extents: Vec<BTreeSet<RowId>>,
    unions: HashMap<(NodeId, NodeId), (SymbolicObject, f64)>,
    rejected: BTreeSet<(NodeId, NodeId)>,
}

impl<'t> EngineState<'t> {
    /// Terminal nodes, initial components, active nodes and dissimilarities.
    pub fn initialize(
        table: &'t SymbolicDataTable,
        max_iterations: usize,
        mode: Mode,
    ) -> Result<Self> {
        if max_iterations == 0 {
            return Err(Error::Usage(
                "the iteration budget must be at least 1".into(),
            ));
        }
        let n = table.len();
        let (construction, algorithm) = match mode {
            Mode::Caps => (Construction::singletons(n), Algorithm::Caps),
            Mode::Capso(order) => (Construction::with_order(&order)?, Algorithm::Capso),
        };
        if construction.row_count() != n {
            return Err(Error::Usage(format!(
                "order has {} entries, table has {n} rows",
                construction.row_count()
            )));
        }

        let mut objects = Vec::with_capacity(n);
        let mut extents = Vec::with_capacity(n);
        let mut active = Vec::with_capacity(n);
        for id in 1..=n {
            let object = SymbolicObject::from_row(table, id)?;
            extents.push(object.extent(table)?);
            active.push(ActiveNode {
                alpha: id - 1,
                beta: id,
                object: object.clone(),
                ell: 0,
                members: vec![id],
            });
            objects.push(object);
        }

        let mut state = EngineState {
            table,
            algorithm,
            iteration: 1,
            max_iterations,
            construction,
            active,
            dissimilarity: Square::filled(0, 0.0),
            aggregability: Square::filled(0, None),
            quadruples: (1..=n).map(NodeQuadruple::terminal).collect(),
            objects,
            extents,
            unions: HashMap::new(),
            rejected: BTreeSet::new(),
        };
        state.refresh_dissimilarity()?;
        Ok(state)
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    /// Iteration counter `h`, starting at 1.
    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// Total number of nodes formed so far (`NG`).
    pub fn node_count(&self) -> usize {
        self.quadruples.len()
    }

    /// Number of connected components (`NC`).
    pub fn component_count(&self) -> usize {
        self.construction.component_count()
    }

    /// Number of active nodes (`NP`).
    pub fn active_count(&self) -> usize {
        self.active.len()
    }

    pub fn active(&self) -> &[ActiveNode] {
        &self.active
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn quadruples(&self) -> &[NodeQuadruple] {
        &self.quadruples
    }

    pub fn extent(&self, node: NodeId) -> Option<&BTreeSet<RowId>> {
        node.checked_sub(1).and_then(|i| self.extents.get(i))
    }

    /// Generality of the union of active nodes at positions `i` and `j`.
    pub fn dissimilarity(&self, i: usize, j: usize) -> f64 {
        *self.dissimilarity.get(i, j)
    }

    /// Whether active nodes at positions `i` and `j` may currently merge.
    pub fn aggregability(&self, i: usize, j: usize) -> bool {
        self.aggregability.get(i, j).is_some()
    }

    /// True once a node covering every row exists.
    pub fn is_finished(&self) -> bool {
        let n = self.table.len();
        n == 1
            || self
                .construction
                .nodes()
                .last()
                .is_some_and(|node| node.members.len() == n)
    }

    /// Whether an active node can still take part in a merge: it has an
    /// aggregable partner, is interior to no node and was aggregated at most
    /// once.
    pub fn is_active(&self, node: NodeId) -> Result<bool> {
        let Some(entry) = self.active.iter().find(|a| a.beta == node) else {
            return Ok(false);
        };
        let layout = self.construction.layout()?;
        Ok(entry.ell <= 1
            && !layout.is_interior_to_any(node)
            && self
                .active
                .iter()
                .any(|other| other.beta != node && layout.orient(node, other.beta).is_some()))
    }

    /// Recomputes aggregability and drops active nodes that cannot merge with
    /// anyone. Returns the ids of the dropped nodes.
    pub fn elimination_phase(&mut self) -> Result<Vec<NodeId>> {
        let layout = self.construction.layout()?;
        let np = self.active.len();
        let mut b = Square::filled(np, None);
        for i in 0..np {
            for j in i + 1..np {
                b.set(
                    i,
                    j,
                    layout.orient(self.active[i].beta, self.active[j].beta),
                );
            }
        }
        drop(layout);

        let keep: Vec<usize> = (0..np)
            .filter(|&i| (0..np).any(|j| b.get(i, j).is_some()))
            .collect();
        let removed = (0..np)
            .filter(|i| !keep.contains(i))
            .map(|i| self.active[i].beta)
            .collect();

        let mut d = Square::filled(keep.len(), 0.0);
        let mut kept_b = Square::filled(keep.len(), None);
        for (a, &i) in keep.iter().enumerate() {
            for (c, &j) in keep.iter().enumerate().skip(a + 1) {
                d.set(a, c, *self.dissimilarity.get(i, j));
                kept_b.set(a, c, *b.get(i, j));
            }
        }
        self.active = keep.iter().map(|&i| self.active[i].clone()).collect();
        self.reindex();
        self.dissimilarity = d;
        self.aggregability = kept_b;
        Ok(removed)
    }

    /// Selects the aggregable pair of least dissimilarity whose union is
    /// complete and whose extent is exactly the union of the two extents.
    /// Rejected pairs are zeroed and selection repeats.
    pub fn formation_phase(&mut self) -> Result<Merge> {
        loop {
            let (i, j) = self.select_pair()?;
            let (a, b) = (self.active[i].beta, self.active[j].beta);
            let orientation = (*self.aggregability.get(i, j)).expect("selected pair is aggregable");
            let (object, index) = self.union_of(a, b)?;
            let extent = object.extent(self.table)?;
            let additive = extent == &self.extents[a - 1] | &self.extents[b - 1];
            if additive && object.is_complete(self.table)? {
                return Ok(Merge {
                    orientation,
                    object,
                    extent,
                    index,
                });
            }
            self.rejected.insert(pair_key(a, b));
            self.aggregability.set(i, j, None);
        }
    }

    fn select_pair(&self) -> Result<(usize, usize)> {
        let np = self.active.len();
        let mut candidates = Vec::new();
        for i in 0..np {
            for j in i + 1..np {
                let key = pair_key(self.active[i].beta, self.active[j].beta);
                if self.aggregability.get(i, j).is_some() && !self.rejected.contains(&key) {
                    candidates.push((key, i, j, *self.dissimilarity.get(i, j)));
                }
            }
        }
        let best = candidates.iter().map(|c| c.3).fold(f64::INFINITY, f64::min);
        candidates
            .into_iter()
            .filter(|c| c.3 <= best + TOLERANCE)
            .min_by_key(|c| c.0)
            .map(|(_, i, j, _)| (i, j))
            .ok_or(Error::NoAggregablePair {
                iteration: self.iteration,
            })
    }

    /// Records the accepted node, merges components if needed and retires
    /// parents that have now been aggregated twice.
    pub fn update_phase(&mut self, merge: Merge) -> Result<NodeId> {
        self.iteration += 1;
        let (left, right) = merge.orientation.pair();
        let id = self.construction.merge(merge.orientation)?;
        if id != self.quadruples.len() + 1 {
            return Err(Error::Structure(format!("new node received id {id}")));
        }
        self.quadruples.push(NodeQuadruple {
            id,
            children: Some((left, right)),
            index: merge.index,
        });
        self.objects.push(merge.object.clone());
        self.extents.push(merge.extent);

        for parent in &mut self.active {
            if parent.beta == left || parent.beta == right {
                parent.ell += 1;
            }
        }
        self.active.retain(|a| a.ell < 2);
        self.active.push(ActiveNode {
            alpha: 0,
            beta: id,
            object: merge.object,
            ell: 0,
            members: self.construction.node(id)?.members.clone(),
        });
        self.reindex();
        self.refresh_dissimilarity()?;
        self.construction.check_invariants()?;
        Ok(id)
    }

    /// Runs phases until the root node is formed or the run fails.
    pub fn run(mut self) -> Result<Pyramid> {
        loop {
            if self.is_finished() {
                return self.into_pyramid();
            }
            self.elimination_phase()?;
            let merge = self.formation_phase()?;
            self.update_phase(merge)?;
            if !self.is_finished() && self.iteration > self.max_iterations {
                return Err(Error::IterationLimit {
                    limit: self.max_iterations,
                });
            }
        }
    }

    /// Packages a finished state.
    pub fn into_pyramid(self) -> Result<Pyramid> {
        if !self.is_finished() {
            return Err(Error::Structure("the pyramid has no root yet".into()));
        }
        let mut components = self.construction.components();
        let final_order = match (components.next(), components.next()) {
            (Some(c), None) => c.sequence().to_vec(),
            _ => return Err(Error::Structure("more than one component remains".into())),
        };
        Ok(Pyramid {
            iterations: self.quadruples.len() - self.table.len(),
            algorithm: self.algorithm,
            structure: PyramidStructure {
                quadruples: self.quadruples,
                objects: self.objects,
                extents: self.extents,
                final_order,
            },
        })
    }

    fn reindex(&mut self) {
        for (alpha, node) in self.active.iter_mut().enumerate() {
            node.alpha = alpha;
        }
    }

    /// Union object and its generality for a pair of nodes, cached by id.
    fn union_of(&mut self, a: NodeId, b: NodeId) -> Result<(SymbolicObject, f64)> {
        let key = pair_key(a, b);
        if let Some(hit) = self.unions.get(&key) {
            return Ok(hit.clone());
        }
        let object = self.objects[a - 1].union(&self.objects[b - 1])?;
        let g = object.generality();
        self.unions.insert(key, (object.clone(), g));
        Ok((object, g))
    }

    fn refresh_dissimilarity(&mut self) -> Result<()> {
        let np = self.active.len();
        let mut d = Square::filled(np, 0.0);
        for i in 0..np {
            for j in i + 1..np {
                let (_, g) = self.union_of(self.active[i].beta, self.active[j].beta)?;
                d.set(i, j, g);
            }
        }
        self.dissimilarity = d;
        self.aggregability = Square::filled(np, None);
        Ok(())
    }
}
