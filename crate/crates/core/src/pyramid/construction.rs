use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::relations::{self, Span};
use super::{NodeId, RowId};
use crate::error::{Error, Result};

pub type ComponentId = usize;

/// A block of rows already arranged in a total order, together with the
/// nodes built over it.
#[derive(Debug, Clone)]
pub struct ConnectedComponent {
    id: ComponentId,
    sequence: Vec<RowId>,
    nodes: BTreeSet<NodeId>,
    positions: HashMap<RowId, usize>,
}

impl ConnectedComponent {
    fn new(id: ComponentId, sequence: Vec<RowId>, nodes: BTreeSet<NodeId>) -> Self {
        let positions = sequence.iter().enumerate().map(|(p, &r)| (r, p)).collect();
        ConnectedComponent {
            id,
            sequence,
            nodes,
            positions,
        }
    }

    pub fn id(&self) -> ComponentId {
        self.id
    }

    /// Rows in component order.
    pub fn sequence(&self) -> &[RowId] {
        &self.sequence
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn position(&self, row: RowId) -> Option<usize> {
        self.positions.get(&row).copied()
    }

    /// Span of a member set, or an error if it is not an interval of the
    /// sequence.
    pub fn span_of(&self, members: &[RowId]) -> Result<Span> {
        let mut first = usize::MAX;
        let mut last = 0;
        for &row in members {
            let p = self.position(row).ok_or_else(|| {
                Error::Structure(format!("row {row} is not in component {}", self.id))
            })?;
            first = first.min(p);
            last = last.max(p);
        }
        if members.is_empty() || last - first + 1 != members.len() {
            return Err(Error::Structure(format!(
                "members {members:?} are not contiguous in component {}",
                self.id
            )));
        }
        Ok(Span::new(first, last))
    }
}

/// A node of the pyramid under construction: its id and its member rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterNode {
    pub id: NodeId,
    /// Sorted row ids.
    pub members: Vec<RowId>,
}

/// Which side each node of an accepted pair sits on, and how the pair was
/// found aggregable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Same component; `left` lies to the left of `right`.
    Within { left: NodeId, right: NodeId },
    /// Different components, each node touching an end of its own.
    Across { first: NodeId, second: NodeId },
}

impl Orientation {
    /// `(left child, right child)` of the node this merge forms.
    pub fn pair(&self) -> (NodeId, NodeId) {
        match *self {
            Orientation::Within { left, right } => (left, right),
            Orientation::Across { first, second } => (first, second),
        }
    }
}

/// The family of nodes built so far, partitioned into connected components.
#[derive(Debug, Clone)]
pub struct Construction {
    nodes: Vec<ClusterNode>,
    components: BTreeMap<ComponentId, ConnectedComponent>,
    row_component: Vec<ComponentId>,
    next_component: ComponentId,
}

impl Construction {
    /// `n` terminal nodes, each alone in its own component.
    pub fn singletons(n: usize) -> Self {
        let nodes = (1..=n)
            .map(|id| ClusterNode {
                id,
                members: vec![id],
            })
            .collect();
        let components = (1..=n)
            .map(|id| {
                (
                    id,
                    ConnectedComponent::new(id, vec![id], BTreeSet::from([id])),
                )
            })
            .collect();
        Construction {
            nodes,
            components,
            row_component: (1..=n).collect(),
            next_component: n + 1,
        }
    }

    /// `n` terminal nodes in a single component ordered by `order`.
    pub fn with_order(order: &[RowId]) -> Result<Self> {
        let n = order.len();
        check_permutation(order, n)?;
        let nodes = (1..=n)
            .map(|id| ClusterNode {
                id,
                members: vec![id],
            })
            .collect();
        let component = ConnectedComponent::new(1, order.to_vec(), (1..=n).collect());
        Ok(Construction {
            nodes,
            components: BTreeMap::from([(1, component)]),
            row_component: vec![1; n],
            next_component: 2,
        })
    }

    pub fn row_count(&self) -> usize {
        self.row_component.len()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[ClusterNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> Result<&ClusterNode> {
        id.checked_sub(1)
            .and_then(|i| self.nodes.get(i))
            .ok_or_else(|| Error::Usage(format!("node {id} does not exist")))
    }

    pub fn components(&self) -> impl Iterator<Item = &ConnectedComponent> {
        self.components.values()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, node: NodeId) -> Result<&ConnectedComponent> {
        let first = self.node(node)?.members[0];
        Ok(&self.components[&self.row_component[first - 1]])
    }

    pub fn span(&self, node: NodeId) -> Result<Span> {
        self.component_of(node)?.span_of(&self.node(node)?.members)
    }

    /// Snapshot of spans and maximal nodes, for evaluating many relations.
    pub fn layout(&self) -> Result<Layout<'_>> {
        Layout::new(self)
    }

    pub fn is_interior(&self, g1: NodeId, g2: NodeId) -> Result<bool> {
        let (a, b) = self.same_component_spans(g1, g2)?;
        Ok(relations::is_interior(a, b))
    }

    pub fn is_left_of(&self, g1: NodeId, g2: NodeId) -> Result<bool> {
        let (a, b) = self.same_component_spans(g1, g2)?;
        Ok(relations::is_left_of(a, b))
    }

    pub fn is_strictly_left_of(&self, g1: NodeId, g2: NodeId) -> Result<bool> {
        let (a, b) = self.same_component_spans(g1, g2)?;
        Ok(relations::is_strictly_left_of(a, b))
    }

    /// `g2` is strictly to the right of `g1`.
    pub fn is_strictly_right_of(&self, g2: NodeId, g1: NodeId) -> Result<bool> {
        let (b, a) = self.same_component_spans(g2, g1)?;
        Ok(relations::is_strictly_right_of(b, a))
    }

    fn same_component_spans(&self, g1: NodeId, g2: NodeId) -> Result<(Span, Span)> {
        let c1 = self.component_of(g1)?.id;
        let c2 = self.component_of(g2)?.id;
        if c1 != c2 {
            return Err(Error::Usage(format!(
                "nodes {g1} and {g2} belong to different components"
            )));
        }
        Ok((self.span(g1)?, self.span(g2)?))
    }

    /// Inclusion-maximal nodes of a component, left to right.
    pub fn maximal_nodes(&self, component: ComponentId) -> Result<Vec<NodeId>> {
        Ok(self.layout()?.maximal_nodes(component).to_vec())
    }

    pub fn left_maximal_node(&self, g: NodeId) -> Result<Option<NodeId>> {
        Ok(self.layout()?.left_maximal_node(g))
    }

    pub fn next_maximal_node(&self, g: NodeId) -> Result<Option<NodeId>> {
        Ok(self.layout()?.next_maximal_node(g))
    }

    pub fn aggregable(&self, g1: NodeId, g2: NodeId) -> Result<bool> {
        Ok(self.layout()?.orient(g1, g2).is_some())
    }

    /// Adds the node `left ∪ right`, merging components when they differ.
    ///
    /// For a merge across components `left` must belong to the component that
    /// ends up first in the merged order.
    pub fn merge(&mut self, orientation: Orientation) -> Result<NodeId> {
        let (a, b) = orientation.pair();
        let ca = self.component_of(a)?.id;
        let cb = self.component_of(b)?.id;
        let mut members: Vec<RowId> = self.node(a)?.members.clone();
        members.extend(&self.node(b)?.members);
        members.sort_unstable();
        members.dedup();
        let id = self.nodes.len() + 1;

        if ca == cb {
            let comp = self.components.get_mut(&ca).expect("component exists");
            comp.span_of(&members)?;
            comp.nodes.insert(id);
        } else {
            let sequence = self.merged_sequence(a, b)?;
            let c1 = self.components.remove(&ca).expect("component exists");
            let c2 = self.components.remove(&cb).expect("component exists");
            let mut nodes = c1.nodes;
            nodes.extend(c2.nodes);
            nodes.insert(id);
            let cid = self.next_component;
            self.next_component += 1;
            for &row in &sequence {
                self.row_component[row - 1] = cid;
            }
            let comp = ConnectedComponent::new(cid, sequence, nodes);
            comp.span_of(&members)?;
            self.components.insert(cid, comp);
        }
        self.nodes.push(ClusterNode { id, members });
        Ok(id)
    }

    /// New order for the union of the components of `gi` and `gj`, oriented
    /// so that `gi ∪ gj` is contiguous.
    fn merged_sequence(&self, gi: NodeId, gj: NodeId) -> Result<Vec<RowId>> {
        let c1 = self.component_of(gi)?;
        let c2 = self.component_of(gj)?;
        let si = self.span(gi)?;
        let sj = self.span(gj)?;
        let i_at_max = si.last + 1 == c1.len();
        let i_at_min = si.first == 0;
        let j_at_max = sj.last + 1 == c2.len();
        let j_at_min = sj.first == 0;

        let (rev1, rev2) = if i_at_max && j_at_min {
            (false, false)
        } else if i_at_max && j_at_max {
            (false, true)
        } else if i_at_min && j_at_min {
            (true, false)
        } else if i_at_min && j_at_max {
            (true, true)
        } else {
            return Err(Error::Structure(format!(
                "nodes {gi} and {gj} do not touch the ends of their components"
            )));
        };
        let oriented = |seq: &[RowId], rev: bool| -> Vec<RowId> {
            if rev {
                seq.iter().rev().copied().collect()
            } else {
                seq.to_vec()
            }
        };
        let mut sequence = oriented(&c1.sequence, rev1);
        sequence.extend(oriented(&c2.sequence, rev2));
        Ok(sequence)
    }

    /// Checks that components partition the rows and every node is an
    /// interval of its component.
    pub fn check_invariants(&self) -> Result<()> {
        let mut seen = vec![false; self.row_count()];
        for comp in self.components.values() {
            for &row in &comp.sequence {
                if row == 0 || row > seen.len() || std::mem::replace(&mut seen[row - 1], true) {
                    return Err(Error::Structure(format!("row {row} is misplaced")));
                }
                if self.row_component[row - 1] != comp.id {
                    return Err(Error::Structure(format!("row {row} has a stale component")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Structure("components do not cover every row".into()));
        }
        for node in &self.nodes {
            let comp = self.component_of(node.id)?;
            if !comp.nodes.contains(&node.id) {
                return Err(Error::Structure(format!(
                    "node {} is not registered",
                    node.id
                )));
            }
            comp.span_of(&node.members)?;
        }
        Ok(())
    }
}

fn check_permutation(order: &[RowId], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &r in order {
        if r == 0 || r > n || std::mem::replace(&mut seen[r - 1], true) {
            return Err(Error::Usage(format!(
                "order {order:?} is not a permutation of 1..={n}"
            )));
        }
    }
    Ok(())
}

/// Spans, maximal nodes and interior flags of every node, computed once.
#[derive(Debug)]
pub struct Layout<'a> {
    construction: &'a Construction,
    spans: Vec<Span>,
    components: Vec<ComponentId>,
    maximal: BTreeMap<ComponentId, Vec<NodeId>>,
    /// Index of each maximal node in its component's left-to-right list.
    maximal_rank: HashMap<NodeId, usize>,
    interior: Vec<bool>,
}

impl<'a> Layout<'a> {
    fn new(construction: &'a Construction) -> Result<Self> {
        let mut spans = Vec::with_capacity(construction.nodes.len());
        let mut components = Vec::with_capacity(construction.nodes.len());
        for node in &construction.nodes {
            let comp = construction.component_of(node.id)?;
            spans.push(comp.span_of(&node.members)?);
            components.push(comp.id);
        }

        let mut maximal = BTreeMap::new();
        let mut maximal_rank = HashMap::new();
        for comp in construction.components.values() {
            let mut ids: Vec<NodeId> = comp.nodes.iter().copied().collect();
            ids.sort_by_key(|&id| {
                let s = spans[id - 1];
                (s.first, std::cmp::Reverse(s.last))
            });
            let mut reach: Option<usize> = None;
            let mut list = Vec::new();
            for id in ids {
                let s = spans[id - 1];
                if reach.is_none_or(|r| s.last > r) {
                    maximal_rank.insert(id, list.len());
                    list.push(id);
                    reach = Some(s.last);
                }
            }
            maximal.insert(comp.id, list);
        }

        let interior = construction
            .nodes
            .iter()
            .map(|node| {
                let s = spans[node.id - 1];
                maximal[&components[node.id - 1]]
                    .iter()
                    .any(|&m| relations::is_interior(s, spans[m - 1]))
            })
            .collect();

        Ok(Layout {
            construction,
            spans,
            components,
            maximal,
            maximal_rank,
            interior,
        })
    }

    pub fn construction(&self) -> &Construction {
        self.construction
    }

    pub fn span(&self, node: NodeId) -> Span {
        self.spans[node - 1]
    }

    pub fn component(&self, node: NodeId) -> ComponentId {
        self.components[node - 1]
    }

    pub fn maximal_nodes(&self, component: ComponentId) -> &[NodeId] {
        self.maximal
            .get(&component)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Whether some node of the family strictly encloses `node` on both sides.
    pub fn is_interior_to_any(&self, node: NodeId) -> bool {
        self.interior[node - 1]
    }

    /// The maximal node sharing `g`'s maximum (and therefore containing `g`).
    pub fn left_maximal_node(&self, g: NodeId) -> Option<NodeId> {
        let s = self.span(g);
        self.maximal_nodes(self.component(g))
            .iter()
            .copied()
            .find(|&m| {
                let ms = self.span(m);
                ms.last == s.last && relations::is_left_of(ms, s)
            })
    }

    /// The maximal node following `g`'s left maximal node, if any.
    pub fn next_maximal_node(&self, g: NodeId) -> Option<NodeId> {
        let m = self.left_maximal_node(g)?;
        let rank = self.maximal_rank[&m];
        self.maximal_nodes(self.component(g)).get(rank + 1).copied()
    }

    /// Whether the ordered pair `(g1, g2)` meets the same-component condition
    /// with `g1` on the left.
    fn within_left_right(&self, g1: NodeId, g2: NodeId) -> bool {
        let (Some(lm), Some(nm)) = (self.left_maximal_node(g1), self.next_maximal_node(g1)) else {
            return false;
        };
        let (s1, s2) = (self.span(g1), self.span(g2));
        let (sl, sn) = (self.span(lm), self.span(nm));
        // Right of the left maximal node, left of the next one.
        if !relations::is_left_of(sl, s1) || !relations::is_left_of(s2, sn) {
            return false;
        }
        match sl.intersection(&sn) {
            Some(overlap) => {
                relations::is_strictly_left_of(s1, overlap)
                    && relations::is_strictly_right_of(s2, overlap)
            }
            // Disjoint neighbours: g1 must end where the left maximal node
            // ends and g2 start where the next one starts.
            None => s1.last == sl.last && s2.first == sn.first,
        }
    }

    /// How `g1` and `g2` may be aggregated, or `None` if they may not.
    pub fn orient(&self, g1: NodeId, g2: NodeId) -> Option<Orientation> {
        if g1 == g2 || self.is_interior_to_any(g1) || self.is_interior_to_any(g2) {
            return None;
        }
        let (c1, c2) = (self.component(g1), self.component(g2));
        if c1 == c2 {
            if self.within_left_right(g1, g2) {
                Some(Orientation::Within {
                    left: g1,
                    right: g2,
                })
            } else if self.within_left_right(g2, g1) {
                Some(Orientation::Within {
                    left: g2,
                    right: g1,
                })
            } else {
                None
            }
        } else {
            let touches_end = |g: NodeId, c: ComponentId| {
                let s = self.span(g);
                s.first == 0 || s.last + 1 == self.construction.components[&c].len()
            };
            (touches_end(g1, c1) && touches_end(g2, c2)).then_some(Orientation::Across {
                first: g1,
                second: g2,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn within(left: NodeId, right: NodeId) -> Orientation {
        Orientation::Within { left, right }
    }

    fn across(first: NodeId, second: NodeId) -> Orientation {
        Orientation::Across { first, second }
    }

    /// Rows 1, 2, 3 ordered (1, 2, 3) with nodes {1,2} = 4 and {2,3} = 5.
    fn two_overlapping() -> Construction {
        let mut c = Construction::with_order(&[1, 2, 3]).unwrap();
        assert_eq!(c.merge(within(1, 2)).unwrap(), 4);
        assert_eq!(c.merge(within(2, 3)).unwrap(), 5);
        c
    }

    #[test]
    fn single_node_component_has_no_next_maximal() {
        let c = Construction::singletons(1);
        assert_eq!(c.left_maximal_node(1).unwrap(), Some(1));
        assert_eq!(c.next_maximal_node(1).unwrap(), None);
    }

    #[test]
    fn maximal_nodes_left_to_right() {
        let c = two_overlapping();
        assert_eq!(c.maximal_nodes(1).unwrap(), vec![4, 5]);
        assert_eq!(c.left_maximal_node(2).unwrap(), Some(4));
        assert_eq!(c.next_maximal_node(2).unwrap(), Some(5));
        // Row 1 is not right-aligned with any maximal node.
        assert_eq!(c.left_maximal_node(1).unwrap(), None);
    }

    #[test]
    fn overlapping_maximal_nodes_are_aggregable() {
        let c = two_overlapping();
        assert!(c.aggregable(4, 5).unwrap());
        assert!(c.aggregable(5, 4).unwrap());
        let layout = c.layout().unwrap();
        assert_eq!(layout.orient(5, 4), Some(within(4, 5)));
        // {2} is their overlap and cannot merge with either.
        assert!(!c.aggregable(2, 4).unwrap());
        assert!(!c.aggregable(2, 5).unwrap());
    }

    #[test]
    fn interior_nodes_are_never_aggregable() {
        let mut c = two_overlapping();
        let top = c.merge(within(4, 5)).unwrap();
        assert!(c.is_interior(2, top).unwrap());
        let layout = c.layout().unwrap();
        assert!(layout.is_interior_to_any(2));
        assert!(!layout.is_interior_to_any(4));
        for other in 1..=top {
            assert!(!c.aggregable(2, other).unwrap());
        }
    }

    #[test]
    fn singleton_components_are_aggregable() {
        let c = Construction::singletons(3);
        assert!(c.aggregable(1, 2).unwrap());
        assert_eq!(c.layout().unwrap().orient(3, 1), Some(across(3, 1)));
    }

    #[test]
    fn relations_across_components_are_usage_errors() {
        let c = Construction::singletons(2);
        assert!(matches!(c.is_left_of(1, 2), Err(Error::Usage(_))));
        assert!(matches!(c.is_interior(1, 2), Err(Error::Usage(_))));
    }

    #[test]
    fn adjacent_singletons_in_a_fixed_order() {
        let c = Construction::with_order(&[3, 1, 2]).unwrap();
        assert!(c.aggregable(3, 1).unwrap());
        assert!(c.aggregable(1, 2).unwrap());
        assert!(!c.aggregable(3, 2).unwrap());
    }

    #[test]
    fn merge_orientation_cases() {
        // Build C1 = (1, 2) and C2 = (3, 4).
        let mut c = Construction::singletons(4);
        c.merge(across(1, 2)).unwrap(); // node 5
        c.merge(across(3, 4)).unwrap(); // node 6
        let seq = |c: &Construction, node| c.component_of(node).unwrap().sequence().to_vec();
        assert_eq!(seq(&c, 5), vec![1, 2]);

        // Max end of C1 with max end of C2: second component reversed.
        let mut c2 = c.clone();
        let n = c2.merge(across(2, 4)).unwrap();
        assert_eq!(seq(&c2, n), vec![1, 2, 4, 3]);

        // Max end with min end: plain concatenation.
        let mut c1 = c.clone();
        let n = c1.merge(across(2, 3)).unwrap();
        assert_eq!(seq(&c1, n), vec![1, 2, 3, 4]);

        // Min end with min end: first reversed.
        let mut c3 = c.clone();
        let n = c3.merge(across(1, 3)).unwrap();
        assert_eq!(seq(&c3, n), vec![2, 1, 3, 4]);

        // Min end with max end: both reversed.
        let mut c4 = c.clone();
        let n = c4.merge(across(1, 4)).unwrap();
        assert_eq!(seq(&c4, n), vec![2, 1, 4, 3]);

        for c in [c1, c2, c3, c4] {
            assert_eq!(c.component_count(), 1);
            c.check_invariants().unwrap();
        }
    }

    #[test]
    fn order_must_be_a_permutation() {
        assert!(matches!(
            Construction::with_order(&[1, 1]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            Construction::with_order(&[1, 3]),
            Err(Error::Usage(_))
        ));
    }
}
