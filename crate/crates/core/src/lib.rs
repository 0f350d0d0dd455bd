//! Group-theoretic model of the 4×4×4 Rubik's Revenge.
//!
//! The crate models the 96-facelet cube and its twelve slice generators,
//! encodes states as configurations `(σ, τ, ρ, x, y)`, decides reachability
//! with the first-law conditions, verifies group and subgroup orders with a
//! Schreier–Sims engine, and estimates solvability probabilities of randomly
//! assembled cubes.

pub mod cli;
pub mod config;
pub mod cube;
pub mod groups;
pub mod law;
pub mod perm;
pub mod sampler;

pub use config::{Configuration, Configuration3};
pub use cube::{CubeState, Generator, MoveSequence};
pub use perm::{Bsgs, Permutation};
