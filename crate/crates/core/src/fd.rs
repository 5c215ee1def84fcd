//! Central finite-difference stencils.

use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

/// Accuracy order of a central stencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum FdOrder {
    Four,
    Six,
    Eight,
}

impl FdOrder {
    pub fn as_u32(self) -> u32 {
        match self {
            FdOrder::Four => 4,
            FdOrder::Six => 6,
            FdOrder::Eight => 8,
        }
    }

    /// Number of points on each side of the centre.
    pub fn half_width(self) -> usize {
        self.as_u32() as usize / 2
    }

    /// Weights for the first derivative at offsets `1..=half_width`; the
    /// stencil is antisymmetric and the centre weight is zero.
    fn first(self) -> &'static [f64] {
        match self {
            FdOrder::Four => &[2.0 / 3.0, -1.0 / 12.0],
            FdOrder::Six => &[3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0],
            FdOrder::Eight => &[4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0],
        }
    }

    /// Centre weight followed by weights at offsets `1..=half_width` for the
    /// (symmetric) second-derivative stencil.
    fn second(self) -> &'static [f64] {
        match self {
            FdOrder::Four => &[-5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0],
            FdOrder::Six => &[-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0],
            FdOrder::Eight => &[-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0],
        }
    }
}

impl TryFrom<u32> for FdOrder {
    type Error = String;

    fn try_from(v: u32) -> Result<Self, Self::Error> {
        match v {
            4 => Ok(FdOrder::Four),
            6 => Ok(FdOrder::Six),
            8 => Ok(FdOrder::Eight),
            other => Err(format!("finite-difference order must be 4, 6 or 8, got {other}")),
        }
    }
}

impl From<FdOrder> for u32 {
    fn from(o: FdOrder) -> u32 {
        o.as_u32()
    }
}

/// First derivative of `f` at `x` with step `h`.
pub fn first_derivative<T, F>(f: F, x: f64, h: f64, order: FdOrder) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T> + Default,
    F: Fn(f64) -> T,
{
    let mut acc = T::default();
    for (k, &w) in order.first().iter().enumerate() {
        let s = (k + 1) as f64 * h;
        acc = acc + (f(x + s) * w + f(x - s) * (-w));
    }
    acc * (1.0 / h)
}

/// Second derivative of `f` at `x` with step `h`.
pub fn second_derivative<T, F>(f: F, x: f64, h: f64, order: FdOrder) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T> + Default,
    F: Fn(f64) -> T,
{
    let w = order.second();
    let mut acc = f(x) * w[0];
    for (k, &wk) in w.iter().enumerate().skip(1) {
        let s = k as f64 * h;
        acc = acc + (f(x + s) + f(x - s)) * wk;
    }
    acc * (1.0 / (h * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDERS: [FdOrder; 3] = [FdOrder::Four, FdOrder::Six, FdOrder::Eight];

    // A central stencil of order p is exact on polynomials of degree p
    // (first derivative) and p + 1 (second derivative).
    #[test]
    fn stencils_are_exact_on_polynomials() {
        for order in ORDERS {
            let p = order.as_u32() as i32;
            for deg in 0..=p + 1 {
                let f = |x: f64| x.powi(deg);
                let x0 = 0.37;
                let h = 0.25;
                let d2 = second_derivative(f, x0, h, order);
                let exact2 = if deg >= 2 {
                    (deg * (deg - 1)) as f64 * x0.powi(deg - 2)
                } else {
                    0.0
                };
                assert!((d2 - exact2).abs() < 1e-9, "{order:?} deg {deg}: {d2} vs {exact2}");
                if deg <= p {
                    let d1 = first_derivative(f, x0, h, order);
                    let exact1 = if deg >= 1 { deg as f64 * x0.powi(deg - 1) } else { 0.0 };
                    assert!((d1 - exact1).abs() < 1e-10, "{order:?} deg {deg}: {d1} vs {exact1}");
                }
            }
        }
    }

    #[test]
    fn order_parses_from_integer() {
        assert_eq!(FdOrder::try_from(6).unwrap(), FdOrder::Six);
        assert!(FdOrder::try_from(5).is_err());
        assert_eq!(FdOrder::Eight.half_width(), 4);
    }

    #[test]
    fn observed_convergence_matches_order() {
        for order in ORDERS {
            let x0: f64 = 0.4;
            let exact = -x0.sin();
            let e1 = (second_derivative(f64::sin, x0, 0.2, order) - exact).abs();
            let e2 = (second_derivative(f64::sin, x0, 0.1, order) - exact).abs();
            let slope = (e1 / e2).log2();
            assert!((slope - order.as_u32() as f64).abs() < 0.3, "{order:?}: {slope}");
        }
    }
}
