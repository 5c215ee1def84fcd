//! Periodic split-step Fourier integrator on a rectangular grid.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use thiserror::Error;

use crate::catalog::{CatalogError, Physics};
use crate::field::Solution;
use crate::geometry::Point;

mod cross;
mod export;

pub use cross::{box_length, cross_validate, run_rung, ConvergenceRow, ConvergenceTable, LadderConfig};
pub use export::{read_binary, write_binary, write_csv, MAGIC};

#[derive(Debug, Error)]
pub enum PropagatorError {
    #[error("InvalidGrid: {0}")]
    InvalidGrid(String),
    #[error("NonFiniteField: field overflowed at step {step}")]
    NonFiniteField { step: usize },
    #[error("IneligibleFamily: {family} cannot be propagated ({reason})")]
    IneligibleFamily { family: String, reason: String },
    #[error("PhysicsMismatch: grid has {grid} component(s), physics expects {physics}")]
    PhysicsMismatch { grid: usize, physics: usize },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Samples of one or two complex fields on `x_i = i·lx/nx`, `y_j = j·ly/ny`,
/// stored row-major in `j` (index `j·nx + i`).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    pub t: f64,
    pub values: Vec<Vec<Complex64>>,
}

impl FieldGrid {
    pub fn new(nx: usize, ny: usize, lx: f64, ly: f64, t: f64, values: Vec<Vec<Complex64>>) -> Result<Self, PropagatorError> {
        let g = Self { nx, ny, lx, ly, t, values };
        g.validate()?;
        Ok(g)
    }

    /// Every component equal to `f(x, y)`.
    pub fn from_fn(
        nx: usize,
        ny: usize,
        lx: f64,
        ly: f64,
        t: f64,
        components: usize,
        mut f: impl FnMut(usize, f64, f64) -> Complex64,
    ) -> Result<Self, PropagatorError> {
        let (dx, dy) = (lx / nx as f64, ly / ny as f64);
        let values = (0..components)
            .map(|k| (0..nx * ny).map(|idx| f(k, (idx % nx) as f64 * dx, (idx / nx) as f64 * dy)).collect())
            .collect();
        Self::new(nx, ny, lx, ly, t, values)
    }

    /// Samples `sol` at time `t`.
    pub fn seed(sol: &dyn Solution, nx: usize, ny: usize, lx: f64, ly: f64, t: f64) -> Result<Self, PropagatorError> {
        let n = sol.physics().components();
        let (dx, dy) = (lx / nx as f64, ly / ny as f64);
        let mut values = vec![Vec::with_capacity(nx * ny); n];
        for j in 0..ny {
            for i in 0..nx {
                let v = sol.value_at(Point::new(t, i as f64 * dx, j as f64 * dy));
                for (k, z) in v.to_vec().into_iter().enumerate() {
                    values[k].push(z);
                }
            }
        }
        Self::new(nx, ny, lx, ly, t, values)
    }

    pub fn validate(&self) -> Result<(), PropagatorError> {
        let bad = |m: String| Err(PropagatorError::InvalidGrid(m));
        if !self.nx.is_power_of_two() || !self.ny.is_power_of_two() {
            return bad(format!("nx = {} and ny = {} must be powers of two", self.nx, self.ny));
        }
        if !(self.lx > 0.0 && self.ly > 0.0 && self.lx.is_finite() && self.ly.is_finite()) {
            return bad(format!("box lengths must be positive, got {} × {}", self.lx, self.ly));
        }
        if !matches!(self.values.len(), 1 | 2) {
            return bad(format!("expected 1 or 2 components, got {}", self.values.len()));
        }
        if let Some(v) = self.values.iter().find(|v| v.len() != self.nx * self.ny) {
            return bad(format!("component has {} samples, expected {}", v.len(), self.nx * self.ny));
        }
        Ok(())
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.lx / self.nx as f64
    }

    pub fn y(&self, j: usize) -> f64 {
        j as f64 * self.ly / self.ny as f64
    }

    /// Periodic access: indices wrap.
    pub fn value(&self, component: usize, i: usize, j: usize) -> Complex64 {
        self.values[component][(j % self.ny) * self.nx + i % self.nx]
    }

    /// Discrete mass `Σ|ψ|²·dx·dy` per component.
    pub fn mass(&self) -> Vec<f64> {
        let cell = self.lx * self.ly / (self.nx * self.ny) as f64;
        self.values.iter().map(|v| v.iter().map(|z| z.norm_sqr()).sum::<f64>() * cell).collect()
    }

    /// Largest deviation of any sample from the first row of its column.
    pub fn y_variation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for v in &self.values {
            for j in 1..self.ny {
                for i in 0..self.nx {
                    worst = worst.max((v[j * self.nx + i] - v[i]).norm());
                }
            }
        }
        worst
    }
}

/// Forward and inverse 2D transforms for a fixed grid shape.
pub struct Fft2 {
    nx: usize,
    ny: usize,
    row: [Arc<dyn Fft<f64>>; 2],
    col: [Arc<dyn Fft<f64>>; 2],
    column: Vec<Complex64>,
}

impl Fft2 {
    pub fn new(nx: usize, ny: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            nx,
            ny,
            row: [planner.plan_fft_forward(nx), planner.plan_fft_inverse(nx)],
            col: [planner.plan_fft_forward(ny), planner.plan_fft_inverse(ny)],
            column: vec![Complex64::default(); ny],
        }
    }

    fn run(&mut self, data: &mut [Complex64], dir: usize) {
        self.row[dir].process(data);
        if self.ny > 1 {
            for i in 0..self.nx {
                for j in 0..self.ny {
                    self.column[j] = data[j * self.nx + i];
                }
                self.col[dir].process(&mut self.column);
                for j in 0..self.ny {
                    data[j * self.nx + i] = self.column[j];
                }
            }
        }
    }

    /// Unnormalized forward transform.
    pub fn forward(&mut self, data: &mut [Complex64]) {
        self.run(data, 0);
    }

    /// Inverse transform including the `1/(nx·ny)` factor.
    pub fn inverse(&mut self, data: &mut [Complex64]) {
        self.run(data, 1);
        let s = 1.0 / (self.nx * self.ny) as f64;
        data.iter_mut().for_each(|z| *z *= s);
    }
}

fn wavenumbers(n: usize, l: f64) -> Vec<f64> {
    (0..n).map(|i| TAU / l * if i < n / 2 { i as f64 } else { i as f64 - n as f64 }).collect()
}

/// Strang splitting: half nonlinear phase, full linear spectral step, half
/// nonlinear phase.
pub struct SplitStep {
    fft: Fft2,
    dt: f64,
    coeffs: Vec<[f64; 2]>,
    linear: Vec<Vec<Complex64>>,
}

impl SplitStep {
    pub fn new(grid: &FieldGrid, phys: &Physics, dt: f64) -> Result<Self, PropagatorError> {
        grid.validate()?;
        if grid.values.len() != phys.components() {
            return Err(PropagatorError::PhysicsMismatch { grid: grid.values.len(), physics: phys.components() });
        }
        if !dt.is_finite() {
            return Err(PropagatorError::InvalidGrid(format!("time step {dt} is not finite")));
        }
        let (disp, coeffs) = match *phys {
            Physics::Single(k) => (vec![k.c], vec![[k.a, 0.0]]),
            Physics::Coupled(k) => (vec![k.c1, k.c2], vec![[k.a1, k.b1], [k.a2, k.b2]]),
        };
        let (kx, ky) = (wavenumbers(grid.nx, grid.lx), wavenumbers(grid.ny, grid.ly));
        let linear = disp
            .iter()
            .map(|&c| {
                (0..grid.nx * grid.ny)
                    .map(|idx| {
                        let k2 = kx[idx % grid.nx].powi(2) + ky[idx / grid.nx].powi(2);
                        Complex64::from_polar(1.0, -c * k2 * dt)
                    })
                    .collect()
            })
            .collect();
        Ok(Self { fft: Fft2::new(grid.nx, grid.ny), dt, coeffs, linear })
    }

    fn nonlinear(&self, values: &mut [Vec<Complex64>], tau: f64) {
        let n = values[0].len();
        for idx in 0..n {
            let d0 = values[0][idx].norm_sqr();
            let d1 = values.get(1).map_or(0.0, |v| v[idx].norm_sqr());
            for (k, v) in values.iter_mut().enumerate() {
                let [a, b] = self.coeffs[k];
                v[idx] *= Complex64::from_polar(1.0, (a * d0 + b * d1) * tau);
            }
        }
    }

    pub fn step(&mut self, grid: &mut FieldGrid) {
        let half = 0.5 * self.dt;
        self.nonlinear(&mut grid.values, half);
        for (v, lin) in grid.values.iter_mut().zip(&self.linear) {
            self.fft.forward(v);
            v.iter_mut().zip(lin).for_each(|(z, l)| *z *= l);
            self.fft.inverse(v);
        }
        self.nonlinear(&mut grid.values, half);
        grid.t += self.dt;
    }
}

/// Evolves `g` by `steps` steps of size `dt` (negative `dt` runs backwards).
pub fn split_step_evolve(g: &FieldGrid, phys: &Physics, dt: f64, steps: usize) -> Result<FieldGrid, PropagatorError> {
    let mut stepper = SplitStep::new(g, phys, dt)?;
    let mut grid = g.clone();
    let t0 = grid.t;
    for step in 1..=steps {
        stepper.step(&mut grid);
        if grid.values.iter().flatten().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(PropagatorError::NonFiniteField { step });
        }
    }
    grid.t = t0 + dt * steps as f64;
    Ok(grid)
}

/// `‖u − v‖₂ / ‖v‖₂` over all samples.
pub fn relative_l2(u: &[Complex64], v: &[Complex64]) -> f64 {
    let num: f64 = u.iter().zip(v).map(|(a, b)| (a - b).norm_sqr()).sum();
    let den: f64 = v.iter().map(|b| b.norm_sqr()).sum();
    (num / den.max(f64::MIN_POSITIVE)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(nx: usize, ny: usize, f: impl FnMut(usize, f64, f64) -> Complex64) -> FieldGrid {
        FieldGrid::from_fn(nx, ny, 2.0 * TAU, TAU, 0.0, 1, f).unwrap()
    }

    #[test]
    fn constant_field_rotates_exactly() {
        let amp = 0.7;
        let g = grid(16, 8, |_, _, _| Complex64::new(amp, 0.0));
        let out = split_step_evolve(&g, &Physics::single(1.5, 0.8), 1e-2, 100).unwrap();
        let expect = Complex64::from_polar(amp, 1.5 * amp * amp * 1.0);
        for z in &out.values[0] {
            assert!((z - expect).norm() < 1e-12);
        }
        assert!((out.t - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_field_stays_zero() {
        let g = grid(8, 4, |_, _, _| Complex64::default());
        let out = split_step_evolve(&g, &Physics::single(-1.0, 2.0), 1e-3, 10).unwrap();
        assert!(out.values[0].iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn fft_round_trip() {
        let g = grid(32, 16, |_, x, y| Complex64::new((x * 1.3).sin() + y, (2.0 * y).cos() * x));
        let mut v = g.values[0].clone();
        let mut fft = Fft2::new(32, 16);
        fft.forward(&mut v);
        fft.inverse(&mut v);
        let err = v.iter().zip(&g.values[0]).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-13, "{err}");
    }

    #[test]
    fn linear_step_matches_plane_wave() {
        let g = grid(16, 8, |_, x, y| Complex64::from_polar(1e-8, 2.0 * x + 3.0 * y));
        let out = split_step_evolve(&g, &Physics::single(1.0, 0.5), 1e-2, 10).unwrap();
        // Tiny amplitude makes the nonlinear phase negligible.
        for (z, z0) in out.values[0].iter().zip(&g.values[0]) {
            let expect = z0 * Complex64::from_polar(1.0, -0.5 * 13.0 * 0.1);
            assert!((z - expect).norm() < 1e-20);
        }
    }

    #[test]
    fn mass_and_reversal() {
        let g = grid(64, 8, |_, x, _| Complex64::new(1.0 + 0.3 * (x / 2.0).cos(), 0.2 * x.sin()));
        let phys = Physics::single(1.0, 1.0);
        let fwd = split_step_evolve(&g, &phys, 1e-3, 1000).unwrap();
        let (m0, m1) = (g.mass()[0], fwd.mass()[0]);
        assert!(((m1 - m0) / m0).abs() < 1e-12);
        let back = split_step_evolve(&fwd, &phys, -1e-3, 1000).unwrap();
        assert!(relative_l2(&back.values[0], &g.values[0]) < 1e-10);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(FieldGrid::from_fn(12, 8, 1.0, 1.0, 0.0, 1, |_, _, _| Complex64::default()).is_err());
        let g = grid(8, 8, |_, _, _| Complex64::default());
        assert!(matches!(
            split_step_evolve(&g, &Physics::coupled(1.0, 1.0, 1.0, 1.0, 1.0, 1.0), 1e-3, 1),
            Err(PropagatorError::PhysicsMismatch { .. })
        ));
    }

    #[test]
    fn overflow_is_reported() {
        let g = grid(8, 8, |_, _, _| Complex64::new(1e200, 0.0));
        assert!(matches!(
            split_step_evolve(&g, &Physics::single(1.0, 1.0), 1e-3, 3),
            Err(PropagatorError::NonFiniteField { step: 1 })
        ));
    }
}
