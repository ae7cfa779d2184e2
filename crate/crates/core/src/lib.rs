//! Exact boundary coefficients of effective divisor classes extending the
//! Maroni divisor on the admissible-cover compactification of the Hurwitz
//! space of degree `d`, genus `g = (d-1)k` covers of the projective line.
//!
//! The crate is organised bottom-up:
//!
//! * [`combinatorics`]: partitions, gcd profiles and admissible boundary types `(j, mu)`.
//! * [`chain`]: intersection theory on the resolved fibre chain `R_0, ..., R_m`.
//! * [`lattice`]: the twisting functionals, their rational critical points and
//!   the integer rounding that produces the coefficient corrections.
//! * [`classes`]: closed-form coefficients (standard class, both corrections,
//!   per-type minimum) and comparison formulas.
//! * [`reference`]: published reference values the computations are checked against.
//!
//! All arithmetic is exact; see [`Rational`].

pub mod chain;
pub mod classes;
pub mod combinatorics;
mod error;
pub mod lattice;
pub mod rational;
pub mod reference;

pub use chain::{ChainModel, FibralDivisor, NormalSurfaceNumbers, StandardA};
pub use classes::{ClassVariant, DivisorClassTable, Provenance, TableRow};
pub use combinatorics::{BoundaryType, GcdProfile, HurwitzParams, Partition};
pub use error::{Error, Result};
pub use lattice::{CorrectionResult, RoundedPoint};
pub use rational::Rational;
