//! The composition algebra: relations on observables, composability
//! relations on observations, their lifting to streams, and the product
//! and division of components.

mod kappa;
mod lift;
mod ops;
mod relation;

pub use kappa::{kappa_excl, kappa_head_equal, kappa_intersect, kappa_sync, kappa_true, ObsKappa};
pub use lift::{lift_composition, lift_relation, ObsComposition, TesRelation};
pub use ops::{divide, product, WitnessSearch, DECOMPOSITION_BUDGET};
pub use relation::{
    IdentityRelation, ObservableRelation, PairRelation, RelationError, RelationHandle,
    UnionRelation,
};
