//! Real-argument Jacobi elliptic functions and the complete elliptic integral
//! of the first kind.
//!
//! **Convention.** Everything here is parameterised by the *modulus* `m`
//! (often written `k` elsewhere), not by the parameter `m²`. The defining
//! relations are
//!
//! ```text
//! sn² + cn² = 1,   dn² + m²·sn² = 1,
//! K(m) = ∫₀^{π/2} dθ / √(1 − m² sin²θ)
//! ```
//!
//! so `sn(u | m)` here equals `sn(u | k = m)` in the modulus notation and
//! `sn(u | m²)` in the parameter notation used by some libraries.
//!
//! Both routines are built on the arithmetic-geometric mean: `K` from the
//! AGM limit and `sn, cn, dn` by the descending Landen transformation seeded
//! from the same AGM scale sequence.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Iteration stops once the co-modulus term `c_n` of the AGM sequence drops
/// below this value.
const AGM_CUTOFF: f64 = 1e-15;

/// The AGM converges quadratically; this is far more than ever needed.
const MAX_AGM_STEPS: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("elliptic modulus {0} outside [0, 1]")]
    ModulusOutOfRange(f64),
    #[error("K(m) diverges at m = 1")]
    Divergent,
    #[error("argument must be finite, got {0}")]
    NonFiniteArgument(f64),
}

/// Jacobi modulus `m ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct EllipticModulus(f64);

impl EllipticModulus {
    pub fn new(m: f64) -> Result<Self, SpecialError> {
        if (0.0..=1.0).contains(&m) {
            Ok(Self(m))
        } else {
            Err(SpecialError::ModulusOutOfRange(m))
        }
    }

    /// The modulus `m` itself.
    pub fn value(self) -> f64 {
        self.0
    }

    /// The parameter `m²`.
    pub fn parameter(self) -> f64 {
        self.0 * self.0
    }

    /// The complementary modulus `√(1 − m²)`, computed without cancellation.
    pub fn complementary(self) -> f64 {
        ((1.0 - self.0) * (1.0 + self.0)).sqrt()
    }
}

impl TryFrom<f64> for EllipticModulus {
    type Error = SpecialError;

    fn try_from(m: f64) -> Result<Self, Self::Error> {
        Self::new(m)
    }
}

impl From<EllipticModulus> for f64 {
    fn from(m: EllipticModulus) -> f64 {
        m.0
    }
}

/// `(sn u, cn u, dn u)` at a common argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// Complete elliptic integral of the first kind, `K(m) = π / (2·AGM(1, √(1−m²)))`.
pub fn complete_k(m: EllipticModulus) -> Result<f64, SpecialError> {
    if m.value() == 1.0 {
        return Err(SpecialError::Divergent);
    }
    let mut a = 1.0_f64;
    let mut b = m.complementary();
    for _ in 0..MAX_AGM_STEPS {
        if (a - b).abs() <= AGM_CUTOFF * a {
            break;
        }
        let next_a = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next_a;
    }
    Ok(PI / (2.0 * a))
}

/// Jacobi elliptic functions `sn, cn, dn` of a real argument.
///
/// Descending Landen transformation: run the AGM scale sequence
/// `a₀ = 1, b₀ = √(1−m²), c₀ = m` until `c_N` falls below the cutoff, set
/// `φ_N = 2^N a_N u`, then walk back with
/// `φ_{n−1} = (φ_n + asin(c_n/a_n · sin φ_n)) / 2`. The degenerate moduli
/// `m = 0` and `m = 1` are dispatched to their circular/hyperbolic forms.
pub fn jacobi(u: f64, m: EllipticModulus) -> Result<JacobiTriple, SpecialError> {
    if !u.is_finite() {
        return Err(SpecialError::NonFiniteArgument(u));
    }
    let k = m.value();
    if k == 0.0 {
        let (s, c) = u.sin_cos();
        return Ok(JacobiTriple { sn: s, cn: c, dn: 1.0 });
    }
    if k == 1.0 {
        let sech = 1.0 / u.cosh();
        return Ok(JacobiTriple { sn: u.tanh(), cn: sech, dn: sech });
    }

    let mut a = [0.0_f64; MAX_AGM_STEPS + 1];
    let mut c = [0.0_f64; MAX_AGM_STEPS + 1];
    a[0] = 1.0;
    c[0] = k;
    let mut b = m.complementary();
    let mut n = 0;
    while c[n].abs() >= AGM_CUTOFF && n < MAX_AGM_STEPS {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
    }

    // Reduce by the period 4K = 2π/a_N so the rounding error of φ_N scales
    // with |r| ≤ 2K rather than with |u|.
    let period = 2.0 * PI / a[n];
    let r = (-(u / period).round()).mul_add(period, u);
    let mut phi = 2f64.powi(n as i32) * a[n] * r;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    // cn/cos(φ₁ − φ₀) loses digits where both vanish; 1 − m²sn² ≥ 1 − m² does not.
    let dn = ((1.0 - k * sn) * (1.0 + k * sn)).sqrt();
    Ok(JacobiTriple { sn, cn, dn })
}

/// `K(0)`; exposed for callers that special-case the circular limit.
pub const K_AT_ZERO: f64 = FRAC_PI_2;

#[cfg(test)]
mod tests {
    use super::*;

    fn modulus(m: f64) -> EllipticModulus {
        EllipticModulus::new(m).unwrap()
    }

    #[test]
    fn modulus_range_is_enforced() {
        assert!(EllipticModulus::new(-0.1).is_err());
        assert!(EllipticModulus::new(1.0 + 1e-12).is_err());
        assert!(EllipticModulus::new(f64::NAN).is_err());
        assert!(EllipticModulus::new(0.0).is_ok());
        assert!(EllipticModulus::new(1.0).is_ok());
    }

    #[test]
    fn k_at_zero_is_half_pi() {
        assert_eq!(complete_k(modulus(0.0)).unwrap(), K_AT_ZERO);
    }

    #[test]
    fn k_diverges_at_one() {
        assert_eq!(complete_k(modulus(1.0)), Err(SpecialError::Divergent));
    }

    #[test]
    fn identity_at_origin() {
        for m in [0.0, 0.3, 0.5, 0.99, 1.0] {
            let j = jacobi(0.0, modulus(m)).unwrap();
            assert_eq!((j.sn, j.cn), (0.0, 1.0));
            assert!((j.dn - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn degenerate_moduli_are_closed_form() {
        let j = jacobi(0.7, modulus(0.0)).unwrap();
        assert_eq!(j, JacobiTriple { sn: 0.7f64.sin(), cn: 0.7f64.cos(), dn: 1.0 });
        let j = jacobi(0.7, modulus(1.0)).unwrap();
        assert_eq!(j.sn, 0.7f64.tanh());
        assert_eq!(j.cn, 1.0 / 0.7f64.cosh());
        assert_eq!(j.dn, j.cn);
    }

    #[test]
    fn non_finite_argument_rejected() {
        assert!(jacobi(f64::INFINITY, modulus(0.5)).is_err());
        assert!(jacobi(f64::NAN, modulus(0.5)).is_err());
    }

    #[test]
    fn odd_and_even_symmetry() {
        let m = modulus(0.8);
        for u in [0.1, 1.7, 4.2, 23.0] {
            let p = jacobi(u, m).unwrap();
            let q = jacobi(-u, m).unwrap();
            assert!((p.sn + q.sn).abs() < 1e-14);
            assert!((p.cn - q.cn).abs() < 1e-14);
            assert!((p.dn - q.dn).abs() < 1e-14);
        }
    }

    #[test]
    fn modulus_serde_rejects_out_of_range() {
        assert!(serde_json::from_str::<EllipticModulus>("1.5").is_err());
        let m: EllipticModulus = serde_json::from_str("0.25").unwrap();
        assert_eq!(m.value(), 0.25);
    }
}
