//! Band presentations and the surgery-move reduction engine.

pub mod generator;
pub mod moves;
pub mod presentation;
pub mod tangle;
pub mod tokens;
pub mod trace;

pub use generator::random_colourable_presentation;
pub use moves::{canonicalize_counts, reduce, smn_to_torus, twist_reduce, unlink_bands};
pub use presentation::{Band, BandPair, BandPresentation};
pub use tangle::{TangleLetter, TangleWord};
pub use tokens::{SmnToken, SummandMultiset, TorusToken};
pub use trace::{ReductionTrace, TraceStep};
