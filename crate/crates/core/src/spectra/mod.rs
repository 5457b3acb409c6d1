//! Finite algebras of the variety, their filters, and prime spectra.

pub mod algebra;
pub mod filters;
pub mod space;

use thiserror::Error;

pub use algebra::{
    finite_chain, free_boolean, product_algebra, subalgebra_generated, two, AlgebraJson, ElemSet,
    FiniteAlgebra, Homomorphism, MAX_ELEMENTS,
};
pub use filters::{
    enumerate_filters, filter_generated, is_filter, prime_filter_check, quotient, Filter, FilterLattice,
    PrimeFilterReport, PrimeConditions,
};
pub use space::{dual_map, duality_check, spec_space, DualityReport, SpecSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("{0} elements exceed the cap {1}")]
    TooLarge(usize, usize),
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
}
