//! Valuation functions and the derivation calculus on ≥/⊥ relations.
//!
//! A valuation function assigns GEQ, PERP or UNDEF to every strict pair of a
//! finite ordered index set and is closed under conditions (1), (2a), (2b).
//! Relation sets are closed under derivation by [`Closure`]; consistent sets
//! extend canonically to valuation functions, and two valuation functions
//! agreeing on their common domain always [`merge`].

mod derivation;
mod valuation;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use derivation::{
    canonical_extension, derive_closure, derives, is_consistent, merge, AtomicRelation, Closure,
    Inconsistency, RelationSet,
};
pub use valuation::{
    algebra_of, induced_valuation, is_valuation, Condition, Trit, TritTable, ValuationFunction,
    Violation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("domain must be strictly increasing, got {0:?}")]
    UnorderedDomain(Vec<usize>),
    #[error("table has no value for the pair ({i}, {j})")]
    PartialTable { i: usize, j: usize },
    #[error("({i}, {j}) is not a strict pair")]
    NotStrictPair { i: usize, j: usize },
    #[error("index {0} is outside the domain")]
    IndexOutsideDomain(usize),
    #[error("not a valuation function: {0}")]
    NotAValuation(Violation),
    #[error("inconsistent relation set: {0}")]
    Inconsistent(Inconsistency),
    #[error("conditions disagree on ({i}, {j}): {left} vs {right}")]
    Disagreement {
        i: usize,
        j: usize,
        left: Trit,
        right: Trit,
    },
    #[error("family member {0} is zero")]
    ZeroMember(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
