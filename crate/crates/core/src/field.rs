//! Field values and the evaluator abstraction shared by the catalog, the
//! symmetry actions and the residual verifier.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::Physics;
use crate::geometry::Point;

/// One value per equation: a single field `ψ` or the coupled pair `(ψ, φ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Components<T> {
    Single(T),
    Coupled(T, T),
}

impl<T: Copy> Components<T> {
    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> Components<U> {
        match self {
            Components::Single(a) => Components::Single(f(a)),
            Components::Coupled(a, b) => Components::Coupled(f(a), f(b)),
        }
    }

    /// Applies `f` with the component index (0 for `ψ`, 1 for `φ`).
    pub fn map_indexed<U>(self, mut f: impl FnMut(usize, T) -> U) -> Components<U> {
        match self {
            Components::Single(a) => Components::Single(f(0, a)),
            Components::Coupled(a, b) => Components::Coupled(f(0, a), f(1, b)),
        }
    }

    pub fn first(self) -> T {
        match self {
            Components::Single(a) | Components::Coupled(a, _) => a,
        }
    }

    pub fn second(self) -> Option<T> {
        match self {
            Components::Single(_) => None,
            Components::Coupled(_, b) => Some(b),
        }
    }

    pub fn to_vec(self) -> Vec<T> {
        match self {
            Components::Single(a) => vec![a],
            Components::Coupled(a, b) => vec![a, b],
        }
    }

    /// Number of fields: 1 or 2.
    pub fn count(self) -> usize {
        match self {
            Components::Single(_) => 1,
            Components::Coupled(..) => 2,
        }
    }

    /// Exchanges the two components of a coupled value.
    pub fn swapped(self) -> Self {
        match self {
            Components::Coupled(a, b) => Components::Coupled(b, a),
            single => single,
        }
    }
}

/// `ξ·e^{iφ}` with a signed real amplitude and an unwrapped phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Polar {
    pub amplitude: f64,
    pub phase: f64,
}

impl Polar {
    pub fn to_complex(self) -> Complex64 {
        let (s, c) = self.phase.sin_cos();
        Complex64::new(self.amplitude * c, self.amplitude * s)
    }
}

/// Anything that can be evaluated as a candidate solution of the single or
/// coupled equation.
pub trait Solution: Send + Sync {
    /// The equation (coefficients) this field is meant to solve.
    fn physics(&self) -> Physics;

    /// Raw evaluation, no domain or singularity checks.
    fn value_at(&self, p: Point) -> Components<Complex64>;

    /// Amplitude/phase channels, when the field carries them.
    fn polar_at(&self, _p: Point) -> Option<Components<Polar>> {
        None
    }

    fn in_domain(&self, _p: Point) -> bool {
        true
    }

    fn singular_distance(&self, _p: Point) -> f64 {
        f64::INFINITY
    }
}

/// Wraps a closure as a [`Solution`] with no singularities.
pub struct FieldFn<F> {
    physics: Physics,
    f: F,
}

impl<F> FieldFn<F>
where
    F: Fn(Point) -> Components<Complex64> + Send + Sync,
{
    pub fn new(physics: Physics, f: F) -> Self {
        Self { physics, f }
    }
}

impl<F> Solution for FieldFn<F>
where
    F: Fn(Point) -> Components<Complex64> + Send + Sync,
{
    fn physics(&self) -> Physics {
        self.physics
    }

    fn value_at(&self, p: Point) -> Components<Complex64> {
        (self.f)(p)
    }
}
