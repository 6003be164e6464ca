//! Node-placement k-center heuristics.
//!
//! The crate provides five placement heuristics (Dragoon, 2-Approx, MacQueen,
//! Greedy and Backtrack), a brute-force oracle for small instances, an
//! evolutionary search for instances on which one heuristic beats another,
//! and the campaign runners that compare heuristics over random and evolved
//! instances.
//!
//! Geometry, objective and solvers are generic over [`Scalar`]; the aliases
//! at the crate root fix the scalar to `f64`, which is what the adversary,
//! the campaigns and the file formats use.

pub mod adversary;
pub mod bench;
mod error;
pub mod exact;
pub mod geometry;
pub mod instance;
pub mod io;
mod scalar;
pub mod seed;
pub mod solvers;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use solvers::{SolveTrace, SolverConfig, SolverKind};

/// A customer location in the plane.
pub type Point = geometry::Point<f64>;
/// A k-center problem instance with `f64` coordinates.
pub type Instance = instance::Instance<f64>;
/// A center placement with its cached objective.
pub type Solution = instance::Solution<f64>;
/// Nearest-center assignment of every customer.
pub type Assignment = instance::Assignment<f64>;

/// Single-precision variants, mostly useful for memory-bound experiments.
pub type Point32 = geometry::Point<f32>;
pub type Instance32 = instance::Instance<f32>;
pub type Solution32 = instance::Solution<f32>;
