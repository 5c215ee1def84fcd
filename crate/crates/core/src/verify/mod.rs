//! Finite-difference certification of candidate solutions.
//!
//! A [`SamplingConfig`] describes where and how to sample; [`verify`] runs
//! the batch and returns a [`ResidualReport`].

mod export;
mod residual;
mod sampling;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use export::{params_hash, write_csv, ReportRow};
pub use residual::{steps, RealTerms, Term, FLOOR};
pub use sampling::{halton_points, SampleBox};

use crate::catalog::{CoupledCoefficients, Physics, SingleCoefficients};
use crate::fd::FdOrder;
use crate::field::{Components, Solution};
use crate::geometry::Point;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("InvalidConfig: {0}")]
    InvalidConfig(String),
    #[error("StencilNearSingularity: distance {distance:e} below exclusion {exclusion:e}")]
    StencilNearSingularity { distance: f64, exclusion: f64 },
    #[error("DomainExceeded: stencil around t = {t} leaves the time domain")]
    DomainExceeded { t: f64 },
    #[error("NoPolarChannels: the field does not expose amplitude and phase")]
    NoPolarChannels,
    #[error("AllPointsSkipped: every one of {0} sample points was excluded")]
    AllPointsSkipped(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub n_points: usize,
    #[serde(rename = "box")]
    pub bounds: SampleBox,
    pub exclusion_radius: f64,
    pub fd_order: FdOrder,
    pub h_base: f64,
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 20_260_401;

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            n_points: 200,
            bounds: SampleBox::default(),
            exclusion_radius: 0.05,
            fd_order: FdOrder::Eight,
            h_base: 1e-3,
            seed: DEFAULT_SEED,
        }
    }
}

impl SamplingConfig {
    pub fn new(
        n_points: usize,
        bounds: SampleBox,
        exclusion_radius: f64,
        fd_order: FdOrder,
        h_base: f64,
        seed: u64,
    ) -> Result<Self, VerifyError> {
        let cfg = Self { n_points, bounds, exclusion_radius, fd_order, h_base, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        let bad = |m: String| Err(VerifyError::InvalidConfig(m));
        if self.n_points == 0 {
            return bad("n_points must be positive".into());
        }
        if !(self.h_base > 0.0 && self.h_base.is_finite()) {
            return bad(format!("h_base must be positive, got {}", self.h_base));
        }
        let reach = 3.0 * self.h_base * self.fd_order.as_u32() as f64;
        if self.exclusion_radius.is_nan() || self.exclusion_radius <= reach {
            return bad(format!(
                "exclusion_radius {} must exceed 3·h_base·fd_order = {reach}",
                self.exclusion_radius
            ));
        }
        self.bounds.validate().map_err(VerifyError::InvalidConfig)
    }

    pub fn with_box(mut self, bounds: SampleBox) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn with_points(mut self, n: usize) -> Self {
        self.n_points = n;
        self
    }
}

/// Residual of the single equation for a bare field, with no locus checks.
pub fn nls_residual(
    f: impl Fn(Point) -> Complex64,
    a: f64,
    c: f64,
    p: Point,
    order: FdOrder,
    h_base: f64,
) -> Complex64 {
    residual::single_terms(f, SingleCoefficients { a, c }, p, steps(p, h_base), order).residual
}

/// Residuals of the coupled pair for a bare field pair, with no locus checks.
pub fn coupled_residual(
    f: impl Fn(Point) -> [Complex64; 2],
    k: CoupledCoefficients,
    p: Point,
    order: FdOrder,
    h_base: f64,
) -> [Complex64; 2] {
    residual::coupled_terms(f, k, p, steps(p, h_base), order).map(|t| t.residual)
}

/// Checks that the whole stencil around `p` is admissible for `sol`.
pub fn check_stencil(sol: &dyn Solution, p: Point, cfg: &SamplingConfig) -> Result<(), VerifyError> {
    let h = steps(p, cfg.h_base);
    let reach = cfg.fd_order.half_width() as f64;
    let (lo, hi) = (Point::new(p.t - reach * h[0], p.x, p.y), Point::new(p.t + reach * h[0], p.x, p.y));
    if !(sol.in_domain(p) && sol.in_domain(lo) && sol.in_domain(hi)) {
        return Err(VerifyError::DomainExceeded { t: p.t });
    }
    let distance = sol.singular_distance(p);
    let max_reach = reach * h.iter().fold(0.0_f64, |m, v| m.max(*v));
    if distance < cfg.exclusion_radius || distance <= max_reach {
        return Err(VerifyError::StencilNearSingularity { distance, exclusion: cfg.exclusion_radius });
    }
    Ok(())
}

fn terms_with(sol: &dyn Solution, p: Point, h: [f64; 3], order: FdOrder) -> Components<Term> {
    match sol.physics() {
        Physics::Single(k) => Components::Single(residual::single_terms(|q| sol.value_at(q).first(), k, p, h, order)),
        Physics::Coupled(k) => {
            let pair = |q: Point| match sol.value_at(q) {
                Components::Coupled(a, b) => [a, b],
                Components::Single(a) => [a, Complex64::new(0.0, 0.0)],
            };
            let [t0, t1] = residual::coupled_terms(pair, k, p, h, order);
            Components::Coupled(t0, t1)
        }
    }
}

/// Complex residual terms at `p` after the stencil checks.
pub fn residual_at(sol: &dyn Solution, p: Point, cfg: &SamplingConfig) -> Result<Components<Term>, VerifyError> {
    check_stencil(sol, p, cfg)?;
    Ok(terms_with(sol, p, steps(p, cfg.h_base), cfg.fd_order))
}

/// Residuals of the real amplitude/phase system at `p`.
pub fn real_system_residual(
    sol: &dyn Solution,
    p: Point,
    cfg: &SamplingConfig,
) -> Result<Components<RealTerms>, VerifyError> {
    check_stencil(sol, p, cfg)?;
    if sol.polar_at(p).is_none() {
        return Err(VerifyError::NoPolarChannels);
    }
    let polar = |q: Point| sol.polar_at(q).expect("polar channels checked at the centre");
    Ok(residual::real_terms(polar, sol.physics(), p, steps(p, cfg.h_base), cfg.fd_order))
}

fn worst(c: Components<Term>) -> f64 {
    c.to_vec().into_iter().map(Term::relative).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max_rel: f64,
    pub mean_rel: f64,
    /// Maximum relative residual of each component.
    pub component_max: Vec<f64>,
    /// Maximum relative residual of the real amplitude/phase system, when
    /// the field exposes those channels.
    pub real_max_rel: Option<f64>,
    pub n_evaluated: usize,
    pub n_skipped: usize,
    pub worst_point: Point,
    /// Richardson slope at the worst point; `None` when the residual there
    /// is already at rounding level.
    pub observed_order: Option<f64>,
    pub config: SamplingConfig,
}

impl ResidualReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_rel <= tol
    }
}

/// Relative residuals below this level are treated as rounding noise when
/// estimating the observed order.
const NOISE_FLOOR: f64 = 1e-11;

/// Samples `cfg.n_points` low-discrepancy points, skips inadmissible ones and
/// aggregates the residual statistics.
pub fn verify(sol: &dyn Solution, cfg: &SamplingConfig) -> Result<ResidualReport, VerifyError> {
    cfg.validate()?;
    let points = halton_points(&cfg.bounds, cfg.n_points, cfg.seed);
    let n_comp = sol.physics().is_coupled() as usize + 1;
    let mut component_max = vec![0.0_f64; n_comp];
    let (mut max_rel, mut sum, mut n_evaluated, mut n_skipped) = (0.0_f64, 0.0, 0usize, 0usize);
    let mut real_max: Option<f64> = None;
    let mut worst_point = None;
    for p in points {
        let terms = match residual_at(sol, p, cfg) {
            Ok(t) => t,
            Err(VerifyError::StencilNearSingularity { .. } | VerifyError::DomainExceeded { .. }) => {
                n_skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        n_evaluated += 1;
        for (j, t) in terms.to_vec().into_iter().enumerate() {
            component_max[j] = component_max[j].max(t.relative());
        }
        let r = worst(terms);
        sum += r;
        if worst_point.is_none() || r > max_rel {
            max_rel = r;
            worst_point = Some(p);
        }
        if let Ok(real) = real_system_residual(sol, p, cfg) {
            let m = real
                .to_vec()
                .into_iter()
                .map(|r| r.transport_rel.max(r.amplitude_rel))
                .fold(0.0, f64::max);
            real_max = Some(real_max.map_or(m, |v: f64| v.max(m)));
        }
    }
    let worst_point = worst_point.ok_or(VerifyError::AllPointsSkipped(cfg.n_points))?;
    Ok(ResidualReport {
        max_rel,
        mean_rel: sum / n_evaluated as f64,
        component_max,
        real_max_rel: real_max,
        n_evaluated,
        n_skipped,
        worst_point,
        observed_order: observed_order(sol, worst_point, cfg),
        config: cfg.clone(),
    })
}

/// Richardson slope `log2(|R(h)| / |R(h/2)|)` with `h` chosen so the
/// coarse stencil just fits inside the exclusion radius.
fn observed_order(sol: &dyn Solution, p: Point, cfg: &SamplingConfig) -> Option<f64> {
    let coarse = cfg.exclusion_radius / cfg.fd_order.as_u32() as f64;
    let r1 = worst(terms_with(sol, p, steps(p, coarse), cfg.fd_order));
    let r2 = worst(terms_with(sol, p, steps(p, coarse / 2.0), cfg.fd_order));
    if !(r2 > NOISE_FLOOR && r1 > r2) {
        return None;
    }
    Some((r1 / r2).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{instantiate, FamilyId, SolutionSpec};

    #[test]
    fn zero_field_has_zero_residual() {
        let r = nls_residual(|_| Complex64::new(0.0, 0.0), 1.0, 1.0, Point::new(0.3, 0.2, 0.1), FdOrder::Eight, 1e-3);
        assert_eq!(r, Complex64::new(0.0, 0.0));
        let k = CoupledCoefficients { a1: 1.0, b1: 2.0, c1: 1.0, a2: 3.0, b2: 1.0, c2: 2.0 };
        let r = coupled_residual(|_| [Complex64::new(0.0, 0.0); 2], k, Point::new(0.3, 0.2, 0.1), FdOrder::Four, 1e-3);
        assert_eq!(r, [Complex64::new(0.0, 0.0); 2]);
    }

    #[test]
    fn config_invariant() {
        let b = SampleBox::default();
        assert!(SamplingConfig::new(10, b, 0.024, FdOrder::Eight, 1e-3, 1).is_err());
        assert!(SamplingConfig::new(10, b, 0.025, FdOrder::Eight, 1e-3, 1).is_ok());
    }

    #[test]
    fn s9_default_run() {
        let spec = SolutionSpec::new(FamilyId::Single(9), Physics::single(1.0, 1.0)).param("m", 0.5);
        let inst = instantiate(&spec).unwrap();
        let cfg = SamplingConfig::default().with_box(SampleBox::new([0.1, 1.0], [-3.0, 3.0], [-1.0, 1.0]).unwrap());
        let report = verify(&inst, &cfg).unwrap();
        assert!(report.max_rel < 1e-6, "{report:?}");
        assert_eq!(report.n_evaluated, 200);
        assert!(report.real_max_rel.unwrap() < 1e-6);
    }

    #[test]
    fn s1_skips_points_near_the_pole() {
        let spec = SolutionSpec::new(FamilyId::Single(1), Physics::single(-2.0, 1.0));
        let inst = instantiate(&spec).unwrap();
        let cfg = SamplingConfig::default().with_box(SampleBox::new([0.1, 1.0], [-0.5, 0.5], [-1.0, 1.0]).unwrap());
        let report = verify(&inst, &cfg).unwrap();
        assert!(report.n_skipped > 0);
        assert!(report.max_rel < 1e-6, "{report:?}");
    }

    #[test]
    fn fully_singular_box_is_reported() {
        let spec = SolutionSpec::new(FamilyId::Single(1), Physics::single(-2.0, 1.0));
        let inst = instantiate(&spec).unwrap();
        let cfg = SamplingConfig::default().with_box(SampleBox::new([0.1, 1.0], [-0.01, 0.01], [-1.0, 1.0]).unwrap());
        assert!(matches!(verify(&inst, &cfg), Err(VerifyError::AllPointsSkipped(200))));
    }
}
