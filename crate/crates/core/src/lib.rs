//! Computational dihedral knot theory.
//!
//! This crate computes Fox p-colourings and knot determinants from diagrams,
//! builds Seifert matrices for the standard input families, evaluates the
//! coloured untying invariant cu(K, rho) of a p-coloured knot, and reduces
//! coloured band presentations to their canonical class — a connect-sum of
//! n left-hand (p,2)-torus knots, n in 1..=p — with a machine-checkable
//! trace in which every move preserves cu.
//!
//! The core matrix type is generic over a signed integer scalar via
//! num-traits; [`IntMatrix`] is the concrete alias used by the library API.

pub mod algebra;
pub mod band;
pub mod codec;
pub mod coloring;
pub mod error;
pub mod invariant;
pub mod matrix;
pub mod modp;
pub mod seifert;

pub use error::{Error, Result};
pub use matrix::{Matrix, Scalar};

/// Concrete integer matrix used throughout the crate.
pub type IntMatrix = Matrix<i64>;
