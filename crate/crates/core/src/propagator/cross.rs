use serde::Serialize;

use super::{relative_l2, split_step_evolve, FieldGrid, PropagatorError};
use crate::catalog::SolutionInstance;
use crate::field::Solution;

/// Resolution ladder for [`cross_validate`]. The box is `periods` copies of
/// the family's x-period in both directions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderConfig {
    pub t0: f64,
    pub t1: f64,
    pub periods: usize,
    pub ny: usize,
    pub nx: Vec<usize>,
    pub dt: Vec<f64>,
}

impl Default for LadderConfig {
    fn default() -> Self {
        Self { t0: 0.0, t1: 0.1, periods: 4, ny: 8, nx: vec![128, 256, 512], dt: vec![1e-3, 5e-4, 2.5e-4] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub nx: usize,
    pub dt: f64,
    pub steps: usize,
    /// Largest per-component relative L2 error against the closed form.
    pub rel_l2: f64,
    pub mass_drift: f64,
    pub y_variation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub family: String,
    pub lx: f64,
    pub t0: f64,
    pub t1: f64,
    /// Rows at the finest `dt`, one per `nx`.
    pub space: Vec<ConvergenceRow>,
    /// Rows at the finest `nx`, one per `dt`.
    pub time: Vec<ConvergenceRow>,
    /// Least-squares slope of `ln(error)` against `ln(dt)`.
    pub dt_slope: Option<f64>,
}

fn steps_for(span: f64, dt: f64) -> Result<usize, PropagatorError> {
    let n = span / dt;
    if !(dt > 0.0 && n.is_finite() && (n - n.round()).abs() < 1e-6 * n.max(1.0) && n.round() >= 1.0) {
        return Err(PropagatorError::InvalidGrid(format!("dt = {dt} does not divide the interval {span}")));
    }
    Ok(n.round() as usize)
}

/// Box length for `inst`, or `IneligibleFamily`.
pub fn box_length(inst: &SolutionInstance, periods: usize) -> Result<f64, PropagatorError> {
    let period = inst
        .propagation_period()
        .map_err(|reason| PropagatorError::IneligibleFamily { family: inst.family().to_string(), reason })?;
    Ok(period * periods.max(1) as f64)
}

/// One evolution from `t0` to `t1` compared with the closed form.
pub fn run_rung(
    inst: &SolutionInstance,
    lx: f64,
    ny: usize,
    nx: usize,
    t0: f64,
    t1: f64,
    dt: f64,
) -> Result<ConvergenceRow, PropagatorError> {
    let steps = steps_for(t1 - t0, dt)?;
    let start = FieldGrid::seed(inst, nx, ny, lx, lx, t0)?;
    let end = split_step_evolve(&start, &inst.physics(), dt, steps)?;
    let exact = FieldGrid::seed(inst, nx, ny, lx, lx, t1)?;
    let rel_l2 = end.values.iter().zip(&exact.values).map(|(u, v)| relative_l2(u, v)).fold(0.0, f64::max);
    let mass_drift = start
        .mass()
        .iter()
        .zip(end.mass())
        .map(|(m0, m1)| ((m1 - m0) / m0).abs())
        .fold(0.0, f64::max);
    Ok(ConvergenceRow { nx, dt, steps, rel_l2, mass_drift, y_variation: end.y_variation() })
}

fn slope(rows: &[ConvergenceRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        rows.iter().filter(|r| r.rel_l2 > 0.0).map(|r| (r.dt.ln(), r.rel_l2.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Space and time refinement ladders for an x-periodic bounded family.
pub fn cross_validate(inst: &SolutionInstance, cfg: &LadderConfig) -> Result<ConvergenceTable, PropagatorError> {
    let lx = box_length(inst, cfg.periods)?;
    let (Some(&nx_fine), Some(dt_fine)) =
        (cfg.nx.iter().max(), cfg.dt.iter().copied().min_by(|a, b| a.total_cmp(b)))
    else {
        return Err(PropagatorError::InvalidGrid("ladder needs at least one nx and one dt".into()));
    };
    let rung = |nx, dt| run_rung(inst, lx, cfg.ny, nx, cfg.t0, cfg.t1, dt);
    let space = cfg.nx.iter().map(|&nx| rung(nx, dt_fine)).collect::<Result<Vec<_>, _>>()?;
    let time = cfg.dt.iter().map(|&dt| rung(nx_fine, dt)).collect::<Result<Vec<_>, _>>()?;
    let dt_slope = slope(&time);
    Ok(ConvergenceTable { family: inst.family().to_string(), lx, t0: cfg.t0, t1: cfg.t1, space, time, dt_slope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{instantiate, FamilyId, Physics, SolutionSpec};

    #[test]
    fn coth_is_ineligible() {
        let inst = instantiate(&SolutionSpec::new(FamilyId::Single(5), Physics::single(-2.0, 1.0))).unwrap();
        let err = cross_validate(&inst, &LadderConfig::default()).unwrap_err();
        assert!(matches!(err, PropagatorError::IneligibleFamily { .. }), "{err}");
    }

    #[test]
    fn steps_must_divide() {
        assert_eq!(steps_for(0.1, 1e-3).unwrap(), 100);
        assert!(steps_for(0.1, 0.03).is_err());
        assert!(steps_for(0.1, -1e-3).is_err());
    }
}
