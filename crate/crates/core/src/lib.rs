//! Non-uniformly stable common independent sets of two matroids under weak
//! preferences.
//!
//! Elements of `E1` are judged by the super-stability rule and elements of
//! `E2` by the strong-stability rule. [`solver::solve`] decides in polynomial
//! oracle time whether a stable common independent set exists and returns one
//! with a full trace; [`stability::brute_force_stable_sets`] is the
//! exponential reference used to check it.

pub mod element;
pub mod error;
pub mod format;
pub mod generate;
pub mod instance;
pub mod intersection;
pub mod layered;
pub mod matroid;
pub mod preference;
pub mod solver;
pub mod stability;

pub use element::{Element, ElementSet, GroundSet};
pub use error::{Error, Result};
pub use instance::{Instance, Violation, ViolationKind};
pub use matroid::{MatroidSpec, MatroidView};
pub use preference::{Comparison, Side, WeakOrder};
pub use solver::{solve, Outcome, Verdict};
