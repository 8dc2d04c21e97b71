//! Block crossing minimization for storyline visualizations.
//!
//! A storyline instance is a number of characters `k` and an ordered list of
//! meetings. A solution fixes a start order of the characters and, before each
//! meeting, a list of block crossings (exchanges of two adjacent blocks of
//! lines) such that every meeting's characters are contiguous when it happens.
//!
//! Modules:
//! - [`model`]: instances, permutations, block crossings, solutions, validation.
//! - [`fitcheck`]: incremental meeting-fit tracker used by the solvers.
//! - [`interval`]: crossing-free detection via interval hypergraph recognition.
//! - [`exact`]: optimal solvers (iterative deepening and breadth-first search).
//! - [`greedy`]: greedy heuristic for meetings of two characters.
//! - [`ihed`]: edge deletion to an interval hypergraph.
//! - [`approx`]: approximation for bounded meeting size.
//! - [`gen`]: instance generators.
//! - [`render`]: SVG and ASCII output.
//! - [`bench`]: experiment harness producing CSV tables.

pub mod approx;
pub mod bench;
pub mod error;
pub mod exact;
pub mod fitcheck;
pub mod gen;
pub mod greedy;
pub mod ihed;
pub mod interval;
pub mod io;
pub mod model;
pub mod render;

pub use error::{Error, Result};
pub use model::{
    apply_block_crossing, build_group_hypergraph, enumerate_block_crossings, normalize_instance,
    supports, validate_solution, BlockCrossing, CharId, GroupHypergraph, Meeting, Permutation,
    Solution, StorylineInstance,
};
