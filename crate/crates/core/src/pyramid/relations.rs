//! Relations between clusters of one connected component.
//!
//! A cluster of a component is an interval of the component's sequence, so it
//! is fully described by the positions of its first and last member.

/// Positions (0-based, inclusive) of a cluster's minimum and maximum in its
/// component sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub first: usize,
    pub last: usize,
}

impl Span {
    pub fn new(first: usize, last: usize) -> Self {
        debug_assert!(first <= last);
        Span { first, last }
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.first <= other.first && other.last <= self.last
    }

    pub fn intersection(&self, other: &Span) -> Option<Span> {
        let first = self.first.max(other.first);
        let last = self.last.min(other.last);
        (first <= last).then_some(Span { first, last })
    }
}

/// `a` is interior to `b`: both ends of `a` lie strictly inside `b`.
pub fn is_interior(a: Span, b: Span) -> bool {
    a != b && b.first < a.first && a.last < b.last
}

/// `a` is to the left of `b`.
pub fn is_left_of(a: Span, b: Span) -> bool {
    a.first <= b.first && a.last <= b.last
}

/// `a` starts strictly before `b` and they share their maximum.
pub fn is_strictly_left_of(a: Span, b: Span) -> bool {
    a.first < b.first && a.last == b.last
}

/// `b` is strictly to the right of `a`: same minimum, `b` ends later.
pub fn is_strictly_right_of(b: Span, a: Span) -> bool {
    a.first == b.first && a.last < b.last
}
