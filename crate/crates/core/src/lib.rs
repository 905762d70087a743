//! Conflict-free proper graph colouring toolkit.
//!
//! Four pieces:
//!
//! * [`graph`] — simple undirected graphs with a fixed vertex ordering,
//!   generators for test families and random models, and file I/O;
//! * [`colouring`] — partial colourings plus verifiers for proper,
//!   h-conflict-free, odd and square colourings;
//! * [`exact`] — backtracking computation of the corresponding chromatic
//!   values on small instances, with a brute-force enumeration oracle;
//! * [`procedure`] — a randomized m-round partial-colouring procedure with
//!   restart-based resampling, greedy completion and a guaranteed
//!   distance-2 fallback.

pub mod colouring;
pub mod exact;
pub mod graph;
pub mod procedure;
pub mod rng;
