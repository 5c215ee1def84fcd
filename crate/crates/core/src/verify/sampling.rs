use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::Point;

/// Axis-aligned box in `(t, x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleBox {
    pub t: [f64; 2],
    pub x: [f64; 2],
    pub y: [f64; 2],
}

impl Default for SampleBox {
    fn default() -> Self {
        Self { t: [0.1, 1.0], x: [-3.0, 3.0], y: [-3.0, 3.0] }
    }
}

impl SampleBox {
    pub fn new(t: [f64; 2], x: [f64; 2], y: [f64; 2]) -> Result<Self, String> {
        let b = Self { t, x, y };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), String> {
        for (name, [lo, hi]) in [("t", self.t), ("x", self.x), ("y", self.y)] {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(format!("box interval {name} = [{lo}, {hi}] is empty or not finite"));
            }
        }
        Ok(())
    }

    /// Maps a point of the unit cube into the box.
    pub fn at(&self, u: [f64; 3]) -> Point {
        let lerp = |[lo, hi]: [f64; 2], s: f64| lo + (hi - lo) * s;
        Point::new(lerp(self.t, u[0]), lerp(self.x, u[1]), lerp(self.y, u[2]))
    }
}

impl std::str::FromStr for SampleBox {
    type Err = String;

    /// `tmin:tmax:xmin:xmax:ymin:ymax`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|e| format!("bad box bound '{p}': {e}")))
            .collect::<Result<_, _>>()?;
        match v.as_slice() {
            &[t0, t1, x0, x1, y0, y1] => SampleBox::new([t0, t1], [x0, x1], [y0, y1]),
            _ => Err(format!("box needs 6 colon-separated numbers, got {}", v.len())),
        }
    }
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let (mut f, mut out) = (inv, 0.0);
    while i > 0 {
        out += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    out
}

/// `n` points of the 3D Halton sequence (bases 2, 3, 5) with a random
/// Cranley–Patterson shift drawn from `seed`, mapped into `bounds`.
pub fn halton_points(bounds: &SampleBox, n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
    (1..=n as u64)
        .map(|i| {
            let u = [2, 3, 5].map(|b| radical_inverse(i, b));
            bounds.at(std::array::from_fn(|k| (u[k] + shift[k]).fract()))
        })
        .collect()
}
