//! Points in `(t, x, y)`, affine coordinate maps and singular loci.
//!
//! Every singular set that occurs in the catalog is a plane, a line, or a
//! one-parameter lattice of planes whose coefficients are affine in the
//! lattice parameter. All three classes are closed under pull-back by an
//! invertible affine map, so loci of transformed solutions stay exact.

use serde::{Deserialize, Serialize};

/// Maximum number of lattice planes examined on either side of the one
/// containing the query point.
const LATTICE_WINDOW: i64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(t: f64, x: f64, y: f64) -> Self {
        Self { t, x, y }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.t, self.x, self.y]
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn is_finite(self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite()
    }
}

type Vec3 = [f64; 3];
type Mat3 = [[f64; 3]; 3];

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn mat_vec(m: &Mat3, v: Vec3) -> Vec3 {
    [dot(m[0], v), dot(m[1], v), dot(m[2], v)]
}

fn mat_t_vec(m: &Mat3, v: Vec3) -> Vec3 {
    [
        m[0][0] * v[0] + m[1][0] * v[1] + m[2][0] * v[2],
        m[0][1] * v[0] + m[1][1] * v[1] + m[2][1] * v[2],
        m[0][2] * v[0] + m[1][2] * v[1] + m[2][2] * v[2],
    ]
}

/// `q = M·p + b`, with the inverse linear part stored alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    linear: Mat3,
    inverse: Mat3,
    offset: Vec3,
}

impl AffineMap {
    /// Builds a map from its linear part, explicit inverse and offset. The
    /// caller guarantees `inverse · linear = I`.
    pub fn new(linear: Mat3, inverse: Mat3, offset: Vec3) -> Self {
        Self { linear, inverse, offset }
    }

    pub fn apply(&self, p: Point) -> Point {
        let q = mat_vec(&self.linear, p.to_array());
        Point::new(q[0] + self.offset[0], q[1] + self.offset[1], q[2] + self.offset[2])
    }
}

/// A single singular surface (or curve) in `(t, x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Surface {
    /// `normal · p + offset = 0`.
    Plane { normal: Vec3, offset: f64 },
    /// Planes `(n0 + s·n1) · p + (o0 + s·o1) = 0` for `s = start + k·step`, `k ∈ ℤ`.
    PlaneLattice { n0: Vec3, n1: Vec3, o0: f64, o1: f64, start: f64, step: f64 },
    /// `{ point + s·direction }`.
    Line { point: Vec3, direction: Vec3 },
}

impl Surface {
    pub fn distance(&self, p: Point) -> f64 {
        let v = p.to_array();
        match self {
            Surface::Plane { normal, offset } => plane_distance(*normal, *offset, v),
            Surface::Line { point, direction } => {
                let r = sub(v, *point);
                norm(cross(r, *direction)) / norm(*direction)
            }
            Surface::PlaneLattice { n0, n1, o0, o1, start, step } => {
                // Along the lattice parameter the signed numerator is affine,
                // alpha + beta·s; its root brackets the nearest planes.
                let alpha = dot(*n0, v) + o0;
                let beta = dot(*n1, v) + o1;
                let centre = if beta != 0.0 {
                    let root = -alpha / beta;
                    ((root - start) / step).floor()
                } else {
                    0.0
                };
                if !centre.is_finite() {
                    return f64::INFINITY;
                }
                let centre = centre as i64;
                let mut best = f64::INFINITY;
                for k in (centre - LATTICE_WINDOW)..=(centre + LATTICE_WINDOW + 1) {
                    let s = start + k as f64 * step;
                    let n = [n0[0] + s * n1[0], n0[1] + s * n1[1], n0[2] + s * n1[2]];
                    best = best.min(plane_distance(n, o0 + s * o1, v));
                }
                best
            }
        }
    }

    /// The preimage of this surface under `map`.
    pub fn pull_back(&self, map: &AffineMap) -> Surface {
        let b = map.offset;
        match self {
            Surface::Plane { normal, offset } => Surface::Plane {
                normal: mat_t_vec(&map.linear, *normal),
                offset: dot(*normal, b) + offset,
            },
            Surface::PlaneLattice { n0, n1, o0, o1, start, step } => Surface::PlaneLattice {
                n0: mat_t_vec(&map.linear, *n0),
                n1: mat_t_vec(&map.linear, *n1),
                o0: dot(*n0, b) + o0,
                o1: dot(*n1, b) + o1,
                start: *start,
                step: *step,
            },
            Surface::Line { point, direction } => Surface::Line {
                point: mat_vec(&map.inverse, sub(*point, b)),
                direction: mat_vec(&map.inverse, *direction),
            },
        }
    }
}

fn plane_distance(normal: Vec3, offset: f64, v: Vec3) -> f64 {
    let n = norm(normal);
    if n == 0.0 {
        return f64::INFINITY;
    }
    (dot(normal, v) + offset).abs() / n
}

/// Union of singular surfaces of one solution.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SingularLocus {
    surfaces: Vec<Surface>,
}

impl SingularLocus {
    pub fn new(surfaces: Vec<Surface>) -> Self {
        Self { surfaces }
    }

    pub fn surfaces(&self) -> &[Surface] {
        &self.surfaces
    }

    pub fn push(&mut self, s: Surface) {
        self.surfaces.push(s);
    }

    /// Euclidean distance to the nearest surface; `+∞` for an empty locus.
    pub fn distance(&self, p: Point) -> f64 {
        self.surfaces.iter().map(|s| s.distance(p)).fold(f64::INFINITY, f64::min)
    }

    pub fn pull_back(&self, map: &AffineMap) -> SingularLocus {
        SingularLocus::new(self.surfaces.iter().map(|s| s.pull_back(map)).collect())
    }

    /// Plane `t = tau`.
    pub fn time_plane(tau: f64) -> Surface {
        Surface::Plane { normal: [1.0, 0.0, 0.0], offset: -tau }
    }
}
