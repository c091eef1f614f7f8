//! Exact computation on finite L-algebras.
//!
//! The crate covers the full desk-scale theory: axiom checking and
//! enumeration of Cayley tables, the poset of closure operators with its
//! infima/suprema and maximal elements, exact-rational states and partitions
//! of unity, Shannon-style entropy of partitions with the information-gain
//! calculus, and entropy of dynamical systems with finite-truncation
//! estimators.
//!
//! Everything below the entropy layer is decided in exact rational
//! arithmetic; floats appear only when a logarithm is finally taken. All
//! proposition checkers are hypothesis-gated: conclusions are asserted only
//! once their side conditions have been verified on the inputs at hand, and
//! unmet hypotheses are reported as such instead of being silently assumed.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization, and the CLI live
//! in the companion `lalg` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod closure;
pub mod dynamics;
pub mod entropy;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod oracle;
pub mod partition;
pub mod report;
pub mod state;

/// Exact rational scalar used for all state values and probabilities.
pub type Rat = num_rational::Ratio<i64>;

pub use algebra::{
    check_axioms, check_axioms_lenient, check_derived_laws, is_homomorphism, AxiomReport,
    DerivedLawsReport, FiniteLAlgebra, OrderRelation, Table, Violation,
};
pub use error::{Error, GridError};
pub use report::{CheckItem, CheckKind, CheckReport, Hypothesis, Verdict};
pub use state::{
    is_faithful, minus, odot, oplus, orthogonal, validate_state, Difference, OdotResult, State,
};
