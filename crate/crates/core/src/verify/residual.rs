//! Pointwise residuals of the complex equations and of the real
//! amplitude/phase system.

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::catalog::{CoupledCoefficients, Physics, SingleCoefficients};
use crate::fd::{first_derivative, second_derivative, FdOrder};
use crate::field::{Components, Polar};
use crate::geometry::Point;

/// Relative-residual floor added to the term-magnitude sum.
pub const FLOOR: f64 = 1e-30;

/// Per-axis step `h_base·max(1, |coordinate|)`.
pub fn steps(p: Point, h_base: f64) -> [f64; 3] {
    p.to_array().map(|v| h_base * v.abs().max(1.0))
}

/// Fixed-size vector of reals, so one stencil pass can differentiate every
/// channel of a field at once.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Lanes<const N: usize>([f64; N]);

impl<const N: usize> Default for Lanes<N> {
    fn default() -> Self {
        Lanes([0.0; N])
    }
}

impl<const N: usize> Add for Lanes<N> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(o.0) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Mul<f64> for Lanes<N> {
    type Output = Self;
    fn mul(mut self, s: f64) -> Self {
        for a in self.0.iter_mut() {
            *a *= s;
        }
        self
    }
}

/// Value, `∂t`, `∂x`, `∂y` and `Δ` of every lane at one point.
struct Jet<const N: usize> {
    value: [f64; N],
    dt: [f64; N],
    dx: [f64; N],
    dy: [f64; N],
    lap: [f64; N],
}

fn jet<const N: usize>(f: impl Fn(Point) -> [f64; N], p: Point, h: [f64; 3], order: FdOrder) -> Jet<N> {
    let g = |q: Point| Lanes(f(q));
    let along_t = |s: f64| g(Point::new(s, p.x, p.y));
    let along_x = |s: f64| g(Point::new(p.t, s, p.y));
    let along_y = |s: f64| g(Point::new(p.t, p.x, s));
    let dxx = second_derivative(along_x, p.x, h[1], order);
    let dyy = second_derivative(along_y, p.y, h[2], order);
    Jet {
        value: f(p),
        dt: first_derivative(along_t, p.t, h[0], order).0,
        dx: first_derivative(along_x, p.x, h[1], order).0,
        dy: first_derivative(along_y, p.y, h[2], order).0,
        lap: (dxx + dyy).0,
    }
}

fn complex_jet<const N: usize, const M: usize>(
    f: impl Fn(Point) -> [Complex64; N],
    p: Point,
    h: [f64; 3],
    order: FdOrder,
) -> ([Complex64; N], [Complex64; N], [Complex64; N]) {
    let j: Jet<M> = jet(
        |q| {
            let v = f(q);
            let mut out = [0.0; M];
            for (k, z) in v.iter().enumerate() {
                out[2 * k] = z.re;
                out[2 * k + 1] = z.im;
            }
            out
        },
        p,
        h,
        order,
    );
    let pack = |a: [f64; M]| std::array::from_fn(|k| Complex64::new(a[2 * k], a[2 * k + 1]));
    (pack(j.value), pack(j.dt), pack(j.lap))
}

/// Residual and the sum of term magnitudes used to normalise it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub residual: Complex64,
    pub scale: f64,
}

impl Term {
    pub fn relative(self) -> f64 {
        self.residual.norm() / (self.scale + FLOOR)
    }
}

pub(crate) fn single_terms(
    f: impl Fn(Point) -> Complex64,
    k: SingleCoefficients,
    p: Point,
    h: [f64; 3],
    order: FdOrder,
) -> Term {
    let ([v], [vt], [lap]) = complex_jet::<1, 2>(|q| [f(q)], p, h, order);
    let i_dt = Complex64::i() * vt;
    let disp = lap * k.c;
    let nonlin = v * (k.a * v.norm_sqr());
    Term { residual: i_dt + disp + nonlin, scale: i_dt.norm() + disp.norm() + nonlin.norm() }
}

pub(crate) fn coupled_terms(
    f: impl Fn(Point) -> [Complex64; 2],
    k: CoupledCoefficients,
    p: Point,
    h: [f64; 3],
    order: FdOrder,
) -> [Term; 2] {
    let (v, vt, lap) = complex_jet::<2, 4>(f, p, h, order);
    let (m0, m1) = (v[0].norm_sqr(), v[1].norm_sqr());
    // (dispersion, self coefficient, own mass, cross coefficient, other mass)
    let laws = [(k.c1, k.a1, m0, k.b1, m1), (k.c2, k.b2, m1, k.a2, m0)];
    std::array::from_fn(|j| {
        let (c, self_coeff, own, cross_coeff, other) = laws[j];
        let i_dt = Complex64::i() * vt[j];
        let disp = lap[j] * c;
        let self_term = v[j] * (self_coeff * own);
        let cross_term = v[j] * (cross_coeff * other);
        Term {
            residual: i_dt + disp + self_term + cross_term,
            scale: i_dt.norm() + disp.norm() + self_term.norm() + cross_term.norm(),
        }
    })
}

/// Residuals of the transport and amplitude equations of one component,
/// raw and normalised by the summed magnitudes of the terms of both.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RealTerms {
    pub transport: f64,
    pub amplitude: f64,
    pub transport_rel: f64,
    pub amplitude_rel: f64,
}

pub(crate) fn real_terms(
    f: impl Fn(Point) -> Components<Polar>,
    phys: Physics,
    p: Point,
    h: [f64; 3],
    order: FdOrder,
) -> Components<RealTerms> {
    let flat = |q: Point| -> [f64; 4] {
        match f(q) {
            Components::Single(a) => [a.amplitude, a.phase, 0.0, 0.0],
            Components::Coupled(a, b) => [a.amplitude, a.phase, b.amplitude, b.phase],
        }
    };
    let j: Jet<4> = jet(flat, p, h, order);
    // (dispersion, coefficient of ξ², coefficient of η²) for each field
    let (laws, n) = match phys {
        Physics::Single(k) => ([(k.c, k.a, 0.0), (0.0, 0.0, 0.0)], 1),
        Physics::Coupled(k) => ([(k.c1, k.a1, k.b1), (k.c2, k.a2, k.b2)], 2),
    };
    let (xi, eta) = (j.value[0], j.value[2]);
    let out: Vec<RealTerms> = (0..n)
        .map(|comp| {
            let (a0, p0) = (2 * comp, 2 * comp + 1);
            let (c, s_xi, s_eta) = laws[comp];
            let amp = j.value[a0];
            let grad_amp_dot = 2.0 * j.dx[a0] * j.dx[p0] + 2.0 * j.dy[a0] * j.dy[p0];
            let t1 = [j.dt[a0], c * grad_amp_dot, c * amp * j.lap[p0]];
            let grad_phase_sq = j.dx[p0] * j.dx[p0] + j.dy[p0] * j.dy[p0];
            let t2 = [
                -amp * j.dt[p0],
                -amp * c * grad_phase_sq,
                c * j.lap[a0],
                (s_xi * xi * xi + s_eta * eta * eta) * amp,
            ];
            let (r1, r2): (f64, f64) = (t1.iter().sum(), t2.iter().sum());
            let scale = t1.iter().chain(&t2).map(|v| v.abs()).sum::<f64>() + FLOOR;
            RealTerms { transport: r1, amplitude: r2, transport_rel: r1.abs() / scale, amplitude_rel: r2.abs() / scale }
        })
        .collect();
    match out.as_slice() {
        [a] => Components::Single(*a),
        [a, b] => Components::Coupled(*a, *b),
        _ => unreachable!(),
    }
}
