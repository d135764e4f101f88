//! Exact arithmetic: integers, rationals, radical towers, polynomials,
//! rational functions, Puiseux series and lattices.

pub mod field;
pub mod integer;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;
pub mod tower;

pub use field::Field;
pub use linalg::Lattice;
pub use poly::{Poly, QPoly};
pub use ratfunc::{QRatFunc, RationalFunction};
pub use rational::Rational;
pub use series::PuiseuxSeries;
pub use tower::{TowerElement, TowerField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("elements live in incompatible fields")]
    IncompatibleFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("field has an imaginary layer; no real embedding")]
    ImaginaryLayerPresent,
    #[error("tower degree bound exceeded")]
    DegreeBoundExceeded,
    #[error("negative radicand is not a negated square")]
    NegativeRadicand,
    #[error("series has zero leading term")]
    ZeroLeadingTerm,
    #[error("leading coefficient is not an n-th power in the field")]
    LeadingCoefficientNotAPower,
    #[error("generators do not span a full-rank lattice")]
    NotFullRank,
    #[error("lattice is not contained in the ambient lattice")]
    NotContained,
}
