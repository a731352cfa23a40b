//! Finitely presented Boolean algebras given by prescribed `≥`/`⊥`
//! relations among generators, with the derivation calculus, invariants,
//! a finite model checker, a generic-filter simulation, reduced products
//! and a truncated tree construction of ideal-independent families.

pub mod algebra;
pub mod calculus;
pub mod cover;
pub mod invariants;
pub mod products;
pub mod random;
pub mod sampler;
pub mod text;
pub mod theorem_b;
pub mod theory;

use thiserror::Error;

/// Any error the library reports, for callers that mix modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] text::ParseError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Calculus(#[from] calculus::CalculusError),
    #[error(transparent)]
    Invariant(#[from] invariants::InvariantError),
    #[error(transparent)]
    Theory(#[from] theory::TheoryError),
    #[error(transparent)]
    Sampler(#[from] sampler::SamplerError),
    #[error(transparent)]
    Product(#[from] products::ProductError),
    #[error(transparent)]
    TheoremB(#[from] theorem_b::TheoremBError),
}
