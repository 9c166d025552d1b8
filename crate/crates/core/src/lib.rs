//! Bias algebras `Z(M, C_L)` of a matroid `M` with a linear class of circuits
//! `C_L`, together with the matroid toolkit they rest on and an independent
//! exterior-algebra oracle for checking them.
//!
//! Elements of the ground set are numbered from 1. A [`Subset`] is a bitmask
//! over those ids, ordered by size and then lexicographically.

pub mod bias;
pub mod checks;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod exterior;
pub mod field;
pub mod input;
pub mod lift;
pub mod linear_class;
pub mod matroid;
pub mod oracle;
pub mod subset;

pub use bias::{BiasAlgebra, NbcBasis, QuotientElement, SequenceReport};
pub use error::{Error, Result};
pub use exterior::ExteriorElement;
pub use field::{Field, FieldSpec, Integers, PrimeField, Rationals, Ring};
pub use lift::{extended_lift, LiftMatroid};
pub use linear_class::{enumerate_linear_classes, LinearClass, Verdict};
pub use matroid::Matroid;
pub use oracle::{QuotientOracle, SubspaceBasis};
pub use subset::Subset;
