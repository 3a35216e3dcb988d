//! Relations on observables — the ⊓ ingredient of composability.
//!
//! A relation on observables says which pairs of observables belong
//! together. The synchronous and mutual-exclusion composability relations
//! are derived from one. Scenario relations range over continuous payload
//! families, so the interface is a trait with exact membership queries
//! rather than a literal pair set; [`PairRelation`] is the finite
//! presentation used on small universes.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::component::{EventSet, EventType};
use crate::stream::Observable;

/// A (possibly infinite) relation ⊓ on observables.
///
/// Implementations must answer three questions exactly:
/// membership of a pair, existence of a partner within a scope, and
/// existence of a related sub-observable pair (the reading used by
/// mutual exclusion).
pub trait ObservableRelation<E: EventType>: Send + Sync {
    /// `(left, right) ∈ ⊓`.
    fn related(&self, left: &Observable<E>, right: &Observable<E>) -> bool;

    /// Does `left` relate to any observable drawn from `scope`?
    fn has_partner_in_right(&self, left: &Observable<E>, scope: &EventSet<E>) -> bool;

    /// Does any observable drawn from `scope` relate to `right`?
    fn has_partner_in_left(&self, right: &Observable<E>, scope: &EventSet<E>) -> bool;

    /// Is some related pair `(A, B) ∈ ⊓` embedded in `(left, right)`,
    /// i.e. `A ⊆ left` and `B ⊆ right`?
    fn related_subsets(&self, left: &Observable<E>, right: &Observable<E>) -> bool;

    /// Declared symmetry: `(A, B) ∈ ⊓ ⇔ (B, A) ∈ ⊓`.
    fn is_symmetric(&self) -> bool;
}

/// Shared handle to a relation.
pub type RelationHandle<E> = Arc<dyn ObservableRelation<E>>;

/// A finitely presented relation: an explicit pair set within a scope.
///
/// When the symmetric-closure flag is set, `(A, B)` in the pair set also
/// makes `(B, A)` related (under the swapped scope).
pub struct PairRelation<E: EventType> {
    pairs: BTreeSet<(Observable<E>, Observable<E>)>,
    scope: (BTreeSet<E>, BTreeSet<E>),
    symmetric: bool,
}

/// Error building a [`PairRelation`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelationError {
    #[error("relation pair out of scope: {0}")]
    OutOfScope(String),
}

impl<E: EventType> PairRelation<E> {
    pub fn new(
        pairs: impl IntoIterator<Item = (Observable<E>, Observable<E>)>,
        scope: (BTreeSet<E>, BTreeSet<E>),
        symmetric: bool,
    ) -> Result<Self, RelationError> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        for (left, right) in &pairs {
            if !left.is_subset(&scope.0) || !right.is_subset(&scope.1) {
                return Err(RelationError::OutOfScope(format!("{left:?} ~ {right:?}")));
            }
        }
        Ok(PairRelation {
            pairs,
            scope,
            symmetric,
        })
    }

    pub fn scope(&self) -> (&BTreeSet<E>, &BTreeSet<E>) {
        (&self.scope.0, &self.scope.1)
    }

    pub fn handle(self) -> RelationHandle<E> {
        Arc::new(self)
    }
}

impl<E: EventType> ObservableRelation<E> for PairRelation<E> {
    fn related(&self, left: &Observable<E>, right: &Observable<E>) -> bool {
        self.pairs.contains(&(left.clone(), right.clone()))
            || (self.symmetric && self.pairs.contains(&(right.clone(), left.clone())))
    }

    fn has_partner_in_right(&self, left: &Observable<E>, scope: &EventSet<E>) -> bool {
        self.pairs
            .iter()
            .any(|(a, b)| a == left && scope.contains_all(b))
            || (self.symmetric
                && self
                    .pairs
                    .iter()
                    .any(|(a, b)| b == left && scope.contains_all(a)))
    }

    fn has_partner_in_left(&self, right: &Observable<E>, scope: &EventSet<E>) -> bool {
        self.pairs
            .iter()
            .any(|(a, b)| b == right && scope.contains_all(a))
            || (self.symmetric
                && self
                    .pairs
                    .iter()
                    .any(|(a, b)| a == right && scope.contains_all(b)))
    }

    fn related_subsets(&self, left: &Observable<E>, right: &Observable<E>) -> bool {
        self.pairs
            .iter()
            .any(|(a, b)| a.is_subset(left) && b.is_subset(right))
            || (self.symmetric
                && self
                    .pairs
                    .iter()
                    .any(|(a, b)| b.is_subset(left) && a.is_subset(right)))
    }

    fn is_symmetric(&self) -> bool {
        self.symmetric
    }
}

/// The smallest relation with `(O, O)` for every nonempty `O` within the
/// domain. Used by the property-satisfaction construction.
pub struct IdentityRelation<E: EventType> {
    domain: EventSet<E>,
}

impl<E: EventType> IdentityRelation<E> {
    pub fn new(domain: EventSet<E>) -> Self {
        IdentityRelation { domain }
    }

    pub fn handle(self) -> RelationHandle<E> {
        Arc::new(self)
    }
}

impl<E: EventType> ObservableRelation<E> for IdentityRelation<E> {
    fn related(&self, left: &Observable<E>, right: &Observable<E>) -> bool {
        !left.is_empty() && left == right && self.domain.contains_all(left)
    }

    fn has_partner_in_right(&self, left: &Observable<E>, scope: &EventSet<E>) -> bool {
        !left.is_empty() && self.domain.contains_all(left) && scope.contains_all(left)
    }

    fn has_partner_in_left(&self, right: &Observable<E>, scope: &EventSet<E>) -> bool {
        self.has_partner_in_right(right, scope)
    }

    fn related_subsets(&self, left: &Observable<E>, right: &Observable<E>) -> bool {
        // Some nonempty O ⊆ left ∩ right within the domain.
        left.intersection(right).any(|e| self.domain.contains(e))
    }

    fn is_symmetric(&self) -> bool {
        true
    }
}

/// Union of relations: related under any member.
pub struct UnionRelation<E: EventType> {
    parts: Vec<RelationHandle<E>>,
}

impl<E: EventType> UnionRelation<E> {
    pub fn new(parts: Vec<RelationHandle<E>>) -> Self {
        UnionRelation { parts }
    }

    pub fn handle(self) -> RelationHandle<E> {
        Arc::new(self)
    }
}

impl<E: EventType> ObservableRelation<E> for UnionRelation<E> {
    fn related(&self, left: &Observable<E>, right: &Observable<E>) -> bool {
        self.parts.iter().any(|p| p.related(left, right))
    }

    fn has_partner_in_right(&self, left: &Observable<E>, scope: &EventSet<E>) -> bool {
        self.parts
            .iter()
            .any(|p| p.has_partner_in_right(left, scope))
    }

    fn has_partner_in_left(&self, right: &Observable<E>, scope: &EventSet<E>) -> bool {
        self.parts
            .iter()
            .any(|p| p.has_partner_in_left(right, scope))
    }

    fn related_subsets(&self, left: &Observable<E>, right: &Observable<E>) -> bool {
        self.parts.iter().any(|p| p.related_subsets(left, right))
    }

    fn is_symmetric(&self) -> bool {
        self.parts.iter().all(|p| p.is_symmetric())
    }
}
