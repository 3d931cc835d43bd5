//! Sweeping simple arrangements of x-monotone pseudolines with a rope.
//!
//! The crate builds the bipolar graph of a wiring diagram and its dual, runs
//! the coordinated primal-dual sweep (which never needs more than `2n - 2`
//! edges), computes the exact optimal rope-length through the duality with
//! directed cutwidth, and ships exact cutwidth solvers together with the
//! reduction from undirected to directed cutwidth.

pub mod arrangement;
pub mod constructions;
pub mod cutwidth;
pub mod error;
pub mod graph;
pub mod optimal;
pub mod sweep;

pub use arrangement::{enumerate, WiringDiagram};
pub use error::{ArrangementError, CutwidthError, OptimalError, ParseError, SweepError};
pub use graph::{ArrangementGraph, DualGraph, Rope};
pub use optimal::{optimal_rope_length, rope_flip_search, OptimalSweep};
pub use sweep::{primal_dual_sweep, SweepTrace};
