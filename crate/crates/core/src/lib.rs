//! Deciding "Most A are B" for definable subsets of the positive integers.
//!
//! Sets are written in a small DSL ([`setlang`]), compiled to an eventually
//! periodic core plus a null correction ([`canonical`]), and measured by
//! exact natural density ([`density`]). [`quantifier`] compares the density
//! reading of "most" with the two cardinality readings, and [`logic`]
//! implements the restricted sentence language with its proof rules.

pub mod canonical;
pub mod cli;
pub mod density;
pub mod logic;
pub mod quantifier;
pub mod setlang;
pub mod truth;

pub use canonical::{normalize, CanonicalSet, Normalizer, PeriodicCore};
pub use density::{empirical_density, exact_density, Density};
pub use quantifier::{Cardinality, Classifier, MostVerdict, Semantics};
pub use setlang::{parse, NullKind, SetExpr};
pub use truth::TruthValue;
