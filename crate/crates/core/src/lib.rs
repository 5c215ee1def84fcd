//! Closed-form solutions of the two-dimensional cubic nonlinear Schrödinger
//! equation `iψ_t + cΔψ + a|ψ|²ψ = 0` and of the coupled pair
//!
//! ```text
//! iψ_t + c1Δψ + (a1|ψ|² + b1|φ|²)ψ = 0
//! iφ_t + c2Δφ + (a2|ψ|² + b2|φ|²)φ = 0
//! ```
//!
//! together with the symmetry actions that map solutions to solutions and
//! two independent numerical checks: finite-difference residuals and a
//! split-step spectral propagator.

pub mod catalog;
pub mod fd;
pub mod field;
pub mod geometry;
pub mod special;
pub mod verify;
pub mod suite;
pub mod propagator;
pub mod symmetry;
