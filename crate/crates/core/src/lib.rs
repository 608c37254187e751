//! Exact computer algebra for Lie antialgebras.
//!
//! The crate works with finite-dimensional (or index-windowed) ℤ₂-graded
//! commutative algebras given by structure constants over ℚ or ℚ(√d):
//! axiom verification, structure analysis and simplicity, the associated Lie
//! superalgebra and derivations, representations and modules, central
//! extensions, and a Grassmann-polynomial engine for odd and even bivectors.

pub mod scalar;
pub mod linalg;
pub mod meataxe;
pub mod algebra;
pub mod axioms;
pub mod catalog;
pub mod bridge;
pub mod extensions;
pub mod reps;
pub mod geometry;
pub mod json;
