//! Independent reference computations checked against the library.

use std::f64::consts::{FRAC_PI_2, PI};

use nls_core::catalog::{instantiate, FamilyId, Physics, SolutionSpec, DEFAULT_EXCLUSION};
use nls_core::fd::FdOrder;
use nls_core::geometry::{Point, Surface};
use nls_core::special::{complete_k, jacobi, EllipticModulus};
use nls_core::verify::nls_residual;
use num_complex::Complex64;

fn modulus(m: f64) -> EllipticModulus {
    EllipticModulus::new(m).unwrap()
}

/// `K = π/2 · Σ ((2n)! / (2^{2n} n!²))² m^{2n}`
fn k_series(m: f64) -> f64 {
    let (mut term, mut sum, m2) = (1.0_f64, 1.0_f64, m * m);
    for n in 1..4000 {
        let r = (2 * n - 1) as f64 / (2 * n) as f64;
        term *= r * r * m2;
        sum += term;
        if term < 1e-18 {
            break;
        }
    }
    FRAC_PI_2 * sum
}

/// Trapezoid rule on the smooth even periodic integrand: exponentially
/// convergent.
fn k_quadrature(m: f64) -> f64 {
    let n = 4000;
    let h = FRAC_PI_2 / n as f64;
    let f = |th: f64| 1.0 / (1.0 - m * m * th.sin().powi(2)).sqrt();
    let inner: f64 = (1..n).map(|i| f(i as f64 * h)).sum();
    h * (0.5 * (f(0.0) + f(FRAC_PI_2)) + inner)
}

#[test]
fn complete_integral_matches_series_and_quadrature() {
    for m in [0.0, 0.1, 0.3, 0.5, 0.7, 0.8, 0.9] {
        let k = complete_k(modulus(m)).unwrap();
        assert!((k - k_series(m)).abs() < 1e-13, "series m={m}: {k} vs {}", k_series(m));
    }
    for m in [0.0, 0.25, 0.5, 0.9, 0.99, 0.999] {
        let k = complete_k(modulus(m)).unwrap();
        assert!((k - k_quadrature(m)).abs() < 1e-12 * k, "quadrature m={m}");
    }
    assert_eq!(complete_k(modulus(0.0)).unwrap(), FRAC_PI_2);
    assert!(complete_k(modulus(1.0)).is_err());
}

/// Classical RK4 on `sn' = cn·dn, cn' = −sn·dn, dn' = −m²·sn·cn`.
fn jacobi_ode(m: f64, u_end: f64, steps: usize) -> Vec<(f64, [f64; 3])> {
    let rhs = |y: [f64; 3]| [y[1] * y[2], -y[0] * y[2], -m * m * y[0] * y[1]];
    let h = u_end / steps as f64;
    let mut y = [0.0, 1.0, 1.0];
    let mut out = vec![(0.0, y)];
    for i in 0..steps {
        let add = |a: [f64; 3], b: [f64; 3], s: f64| [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]];
        let k1 = rhs(y);
        let k2 = rhs(add(y, k1, h / 2.0));
        let k3 = rhs(add(y, k2, h / 2.0));
        let k4 = rhs(add(y, k3, h));
        y = std::array::from_fn(|j| y[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]));
        out.push(((i + 1) as f64 * h, y));
    }
    out
}

#[test]
fn jacobi_matches_ode_integration() {
    for m in [0.2, 0.5, 0.8, 0.95] {
        let path = jacobi_ode(m, 10.0, 20_000);
        for (u, [s, c, d]) in path.into_iter().step_by(500) {
            for v in [u, -u] {
                let j = jacobi(v, modulus(m)).unwrap();
                let sign = v.signum() * if u == 0.0 { 0.0 } else { 1.0 };
                assert!((j.sn - sign * s).abs() < 1e-10, "sn m={m} u={v}");
                assert!((j.cn - c).abs() < 1e-10 && (j.dn - d).abs() < 1e-10, "cn/dn m={m} u={v}");
            }
        }
    }
}

#[test]
fn jacobi_special_values() {
    for m in [0.3, 0.6, 0.9] {
        let k = complete_k(modulus(m)).unwrap();
        let j = jacobi(k, modulus(m)).unwrap();
        let kp = (1.0 - m * m).sqrt();
        assert!((j.sn - 1.0).abs() < 1e-14 && j.cn.abs() < 1e-7 && (j.dn - kp).abs() < 1e-14);
        // sn(K/2) = 1/√(1+k')
        let h = jacobi(k / 2.0, modulus(m)).unwrap();
        assert!((h.sn - 1.0 / (1.0 + kp).sqrt()).abs() < 1e-14);
    }
    let lim = jacobi(1.3, modulus(1.0)).unwrap();
    assert!((lim.sn - 1.3f64.tanh()).abs() < 1e-15);
    let zero = jacobi(0.4, modulus(0.0)).unwrap();
    assert_eq!((zero.sn, zero.cn, zero.dn), (0.4f64.sin(), 0.4f64.cos(), 1.0));
}

#[test]
fn lattice_distance_matches_brute_force() {
    // Planes (n0 + s·n1)·p + o0 + s·o1 = 0 for s = start + k·step.
    let n0 = [0.0, 1.0, 0.3];
    let n1 = [-0.2, 0.0, 0.0];
    let (o0, o1, start, step) = (0.1, -1.0, 0.5, PI);
    let lattice = Surface::PlaneLattice { n0, n1, o0, o1, start, step };
    let brute = |p: Point| {
        (-2000..=2000)
            .map(|k| {
                let s = start + k as f64 * step;
                let n = [n0[0] + s * n1[0], n0[1] + s * n1[1], n0[2] + s * n1[2]];
                let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
                (n[0] * p.t + n[1] * p.x + n[2] * p.y + o0 + s * o1).abs() / norm
            })
            .fold(f64::INFINITY, f64::min)
    };
    let mut state = 12345u64;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..300 {
        let p = Point::new(0.1 + 2.0 * next(), -5.0 + 10.0 * next(), -5.0 + 10.0 * next());
        let (a, b) = (lattice.distance(p), brute(p));
        assert!((a - b).abs() <= 1e-12 * b.max(1.0), "{p:?}: {a} vs {b}");
    }
}

#[test]
fn worked_coupled_amplitudes_solve_the_linear_system() {
    let phys = Physics::coupled(1.0, -1.0, 1.0, 3.0, -2.0, 1.0);
    let inst = instantiate(&SolutionSpec::new(FamilyId::Coupled(1), phys)).unwrap();
    let [i1, i2] = inst.iota().unwrap();
    assert!((i1 * i1 - 2.0).abs() < 1e-14 && (i2 * i2 - 4.0).abs() < 1e-14);
    // a_j ι1² + b_j ι2² = −2c_j
    assert!((1.0 * i1 * i1 - 1.0 * i2 * i2 + 2.0).abs() < 1e-14);
    assert!((3.0 * i1 * i1 - 2.0 * i2 * i2 + 2.0).abs() < 1e-14);
    let v = inst.evaluate(Point::new(0.5, 2.0, 7.0), DEFAULT_EXCLUSION).unwrap().to_vec();
    assert!((v[0] - Complex64::new(2f64.sqrt() / 2.0, 0.0)).norm() < 1e-15);
    assert!((v[1] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn plane_wave_dispersion() {
    let (a, c) = (1.5, 0.7);
    let p = Point::new(0.4, 0.3, -0.2);
    for k in [0.5, 1.0, 2.0] {
        let wave = |omega: f64| move |q: Point| Complex64::from_polar(1.0, k * q.x - omega * q.t);
        let exact = nls_residual(wave(c * k * k - a), a, c, p, FdOrder::Eight, 1e-3).norm();
        assert!(exact < 1e-8, "k={k}: {exact}");
        let linear = nls_residual(wave(c * k * k), a, c, p, FdOrder::Eight, 1e-3).norm();
        assert!((linear - a).abs() < 1e-8, "k={k}: {linear}");
    }
}
