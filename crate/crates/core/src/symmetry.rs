//! Symmetry actions on solutions: scaling/rotation/time shift/phase (`T1`),
//! Galilean boost/translation (`T2`) and, for the coupled pair, the
//! exchange of the two fields (`Swap`).
//!
//! Ops apply left to right: `[A, B]` means `B(A(base))`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{instantiate, CatalogError, Physics, SolutionInstance, SolutionSpec};
use crate::field::{Components, Polar, Solution};
use crate::geometry::{AffineMap, Point, SingularLocus};
use crate::verify::{verify, ResidualReport, SamplingConfig, VerifyError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymmetryError {
    #[error("InapplicableOp: {0}")]
    InapplicableOp(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Sign of the `(d1² + d3²)t` term in the boost phase of the second field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeTermSign {
    /// The same sign as the first field; this keeps the pair a solution.
    #[default]
    Minus,
    Plus,
}

impl TimeTermSign {
    fn is_default(&self) -> bool {
        *self == TimeTermSign::Minus
    }

    fn value(self) -> f64 {
        match self {
            TimeTermSign::Minus => -1.0,
            TimeTermSign::Plus => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum SymmetryOp {
    /// `ψ ↦ d·e^{i·d3}·ψ(d²t + d2, d(x cos d1 + y sin d1), d(−x sin d1 + y cos d1))`;
    /// for the pair the second field takes the phase `d4`.
    T1 {
        d: f64,
        #[serde(default)]
        d1: f64,
        #[serde(default)]
        d2: f64,
        #[serde(default)]
        d3: f64,
        #[serde(default)]
        d4: f64,
    },
    /// `ψ ↦ e^{i[2(d1x + d3y) − (d1² + d3²)t]/4c}·ψ(t, x − d1t + d2, y − d3t + d4)`,
    /// with `c1`, `c2` for the two fields of the pair.
    T2 {
        #[serde(default)]
        d1: f64,
        #[serde(default)]
        d2: f64,
        #[serde(default)]
        d3: f64,
        #[serde(default)]
        d4: f64,
        #[serde(default, skip_serializing_if = "TimeTermSign::is_default")]
        second_time_sign: TimeTermSign,
    },
    Swap,
}

impl SymmetryOp {
    pub fn scaling(d: f64) -> Self {
        SymmetryOp::T1 { d, d1: 0.0, d2: 0.0, d3: 0.0, d4: 0.0 }
    }

    pub fn boost(d1: f64, d2: f64, d3: f64, d4: f64) -> Self {
        SymmetryOp::T2 { d1, d2, d3, d4, second_time_sign: TimeTermSign::Minus }
    }

    fn check(&self, phys: &Physics) -> Result<(), SymmetryError> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match *self {
            SymmetryOp::T1 { d, d1, d2, d3, d4 } => {
                if !finite(&[d, d1, d2, d3, d4]) {
                    return Err(SymmetryError::InapplicableOp("T1 parameters must be finite".into()));
                }
                if d == 0.0 {
                    return Err(SymmetryError::InapplicableOp("T1 requires d ≠ 0".into()));
                }
            }
            SymmetryOp::T2 { d1, d2, d3, d4, .. } => {
                if !finite(&[d1, d2, d3, d4]) {
                    return Err(SymmetryError::InapplicableOp("T2 parameters must be finite".into()));
                }
            }
            SymmetryOp::Swap => {
                if !phys.is_coupled() {
                    return Err(SymmetryError::InapplicableOp("Swap needs a coupled solution".into()));
                }
            }
        }
        Ok(())
    }

    /// Coordinate pre-map `p ↦ q` at which the previous stage is evaluated.
    fn map(&self) -> AffineMap {
        match *self {
            SymmetryOp::T1 { d, d1, d2, .. } => {
                let (s, c) = d1.sin_cos();
                let d_sq = d * d;
                AffineMap::new(
                    [[d_sq, 0.0, 0.0], [0.0, d * c, d * s], [0.0, -d * s, d * c]],
                    [[1.0 / d_sq, 0.0, 0.0], [0.0, c / d, -s / d], [0.0, s / d, c / d]],
                    [d2, 0.0, 0.0],
                )
            }
            SymmetryOp::T2 { d1, d2, d3, d4, .. } => AffineMap::new(
                [[1.0, 0.0, 0.0], [-d1, 1.0, 0.0], [-d3, 0.0, 1.0]],
                [[1.0, 0.0, 0.0], [d1, 1.0, 0.0], [d3, 0.0, 1.0]],
                [0.0, d2, d4],
            ),
            SymmetryOp::Swap => {
                let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
                AffineMap::new(id, id, [0.0; 3])
            }
        }
    }

    /// Physics of the transformed solution.
    fn physics_after(&self, phys: Physics) -> Physics {
        match (self, phys) {
            (SymmetryOp::Swap, Physics::Coupled(k)) => Physics::Coupled(k.exchanged()),
            _ => phys,
        }
    }

    /// Multiplies the previous stage's value at the pre-mapped point by this
    /// op's prefactor at `p`; `phys` is the physics of the result.
    fn finish(&self, p: Point, phys: Physics, inner: Components<Polar>) -> Components<Polar> {
        match *self {
            SymmetryOp::T1 { d, d3, d4, .. } => inner.map_indexed(|j, v| Polar {
                amplitude: d * v.amplitude,
                phase: v.phase + if j == 0 { d3 } else { d4 },
            }),
            SymmetryOp::T2 { d1, d3, second_time_sign, .. } => {
                let cs = match phys {
                    Physics::Single(k) => [k.c, k.c],
                    Physics::Coupled(k) => [k.c1, k.c2],
                };
                let drift = (d1 * d1 + d3 * d3) * p.t;
                let lin = 2.0 * (d1 * p.x + d3 * p.y);
                inner.map_indexed(|j, v| {
                    let time = if j == 0 { -drift } else { second_time_sign.value() * drift };
                    Polar { amplitude: v.amplitude, phase: v.phase + (lin + time) / (4.0 * cs[j]) }
                })
            }
            SymmetryOp::Swap => inner.swapped(),
        }
    }

    /// Draws an op from `rng` with `d ∈ [0.5, 2]` and the remaining
    /// parameters in `[−range, range]`; angles cover a full turn.
    pub fn random_t1(rng: &mut impl rand::Rng, range: f64, time_shift: [f64; 2]) -> Self {
        SymmetryOp::T1 {
            d: rng.gen_range(0.5..=2.0),
            d1: rng.gen_range(-PI..=PI),
            d2: rng.gen_range(time_shift[0]..=time_shift[1]),
            d3: rng.gen_range(-range..=range),
            d4: rng.gen_range(-range..=range),
        }
    }

    pub fn random_t2(rng: &mut impl rand::Rng, range: f64) -> Self {
        SymmetryOp::boost(
            rng.gen_range(-range..=range),
            rng.gen_range(-range..=range),
            rng.gen_range(-range..=range),
            rng.gen_range(-range..=range),
        )
    }
}

#[derive(Debug, Clone)]
struct Stage {
    op: SymmetryOp,
    map: AffineMap,
    physics: Physics,
}

/// A catalog instance followed by an ordered list of symmetry ops.
#[derive(Debug, Clone)]
pub struct TransformedSolution {
    base: SolutionInstance,
    stages: Vec<Stage>,
    locus: SingularLocus,
}

impl From<SolutionInstance> for TransformedSolution {
    fn from(base: SolutionInstance) -> Self {
        let locus = base.locus().clone();
        Self { base, stages: Vec::new(), locus }
    }
}

impl TransformedSolution {
    pub fn base(&self) -> &SolutionInstance {
        &self.base
    }

    pub fn ops(&self) -> Vec<SymmetryOp> {
        self.stages.iter().map(|s| s.op).collect()
    }

    pub fn locus(&self) -> &SingularLocus {
        &self.locus
    }

    fn polar(&self, k: usize, p: Point) -> Components<Polar> {
        match k.checked_sub(1) {
            None => self.base.polar_at(p).expect("catalog instances carry polar channels"),
            Some(i) => {
                let stage = &self.stages[i];
                let inner = self.polar(i, stage.map.apply(p));
                stage.op.finish(p, stage.physics, inner)
            }
        }
    }

    /// Point at which the base instance is evaluated for `p`.
    pub fn base_point(&self, p: Point) -> Point {
        self.stages.iter().rev().fold(p, |q, s| s.map.apply(q))
    }
}

/// Applies `op` after every op already in `sol`.
pub fn apply(op: SymmetryOp, sol: impl Into<TransformedSolution>) -> Result<TransformedSolution, SymmetryError> {
    let mut sol = sol.into();
    let before = sol.physics();
    op.check(&before)?;
    let map = op.map();
    sol.locus = sol.locus.pull_back(&map);
    sol.stages.push(Stage { op, map, physics: op.physics_after(before) });
    Ok(sol)
}

/// Applies every op of `ops` in order.
pub fn apply_all(ops: &[SymmetryOp], sol: impl Into<TransformedSolution>) -> Result<TransformedSolution, SymmetryError> {
    ops.iter().try_fold(sol.into(), |acc, op| apply(*op, acc))
}

impl Solution for TransformedSolution {
    fn physics(&self) -> Physics {
        self.stages.last().map_or(self.base.spec().phys, |s| s.physics)
    }

    fn value_at(&self, p: Point) -> Components<Complex64> {
        self.polar(self.stages.len(), p).map(Polar::to_complex)
    }

    fn polar_at(&self, p: Point) -> Option<Components<Polar>> {
        Some(self.polar(self.stages.len(), p))
    }

    fn in_domain(&self, p: Point) -> bool {
        self.base.in_domain(self.base_point(p))
    }

    fn singular_distance(&self, p: Point) -> f64 {
        self.locus.distance(p)
    }
}

/// Runs the residual verifier on a transformed solution.
pub fn residual_certify(ts: &TransformedSolution, cfg: &SamplingConfig) -> Result<ResidualReport, VerifyError> {
    verify(ts, cfg)
}

/// Solution spec plus an optional op list, the JSON document accepted by
/// the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    #[serde(flatten)]
    pub spec: SolutionSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transforms: Vec<SymmetryOp>,
}

impl SolutionDocument {
    pub fn build(&self) -> Result<TransformedSolution, SymmetryError> {
        apply_all(&self.transforms, instantiate(&self.spec)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{FamilyId, DEFAULT_EXCLUSION};

    fn s1() -> SolutionInstance {
        instantiate(&SolutionSpec::new(FamilyId::Single(1), Physics::single(-2.0, 1.0))).unwrap()
    }

    #[test]
    fn t1_rotation_phase_on_reciprocal() {
        let (angle, phase) = (0.7, 1.1);
        let ts = apply(SymmetryOp::T1 { d: 1.0, d1: angle, d2: 0.0, d3: phase, d4: 0.0 }, s1()).unwrap();
        for p in [Point::new(0.2, 0.9, -0.4), Point::new(1.3, -2.0, 1.5)] {
            let expected = Complex64::from_polar(1.0, phase) / (p.x * angle.cos() + p.y * angle.sin());
            assert!((ts.value_at(p).first() - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn swap_rejected_on_single() {
        assert!(matches!(apply(SymmetryOp::Swap, s1()), Err(SymmetryError::InapplicableOp(_))));
        assert!(matches!(apply(SymmetryOp::scaling(0.0), s1()), Err(SymmetryError::InapplicableOp(_))));
    }

    #[test]
    fn locus_follows_the_map() {
        let ts = apply_all(&[SymmetryOp::scaling(2.0), SymmetryOp::boost(0.5, 0.3, 0.0, 0.0)], s1()).unwrap();
        // the pole x = 0 of the base sits where 2(x − 0.5t + 0.3) = 0
        let p = Point::new(0.4, 0.5 * 0.4 - 0.3, 1.0);
        assert!(ts.singular_distance(p) < 1e-15);
        assert!(ts.value_at(Point::new(0.4, 0.5 * 0.4 - 0.3 + 1e-3, 1.0)).first().norm() > 1e2);
    }

    #[test]
    fn document_round_trip() {
        let doc: SolutionDocument = serde_json::from_str(
            r#"{"family":"S7","phys":{"a":-2.0,"c":1.0},"params":{"m":0.5},
                "transforms":[{"kind":"T2","d1":0.3,"d2":0,"d3":0,"d4":0},{"kind":"T1","d":2}]}"#,
        )
        .unwrap();
        assert_eq!(doc.transforms.len(), 2);
        let back: SolutionDocument = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(back, doc);
        let ts = doc.build().unwrap();
        let p = Point::new(0.3, 0.2, 0.1);
        assert!(ts.value_at(p).first().norm() > 0.0);
        assert!(ts.base().evaluate(ts.base_point(p), DEFAULT_EXCLUSION).is_ok());
    }
}
