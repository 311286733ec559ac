//! Monotonicity-preserving piecewise-cubic interpolation (PCHIP).
//!
//! Tabulated noise ccdfs are interpolated with this so the derived pdf
//! f_ν = −G' can never change sign between knots.

use crate::error::{Error, Result};

/// Shape-preserving cubic Hermite interpolant on strictly increasing knots.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl MonotoneCubic {
    /// Builds the interpolant. Knots must be strictly increasing and the
    /// data monotone (either direction); derivatives are limited à la
    /// Fritsch–Carlson so the interpolant stays monotone on every cell.
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() || x.len() < 2 {
            return Err(Error::domain(
                "MonotoneCubic::new",
                "need at least two knots with matching value count",
            ));
        }
        for w in x.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::domain(
                    "MonotoneCubic::new",
                    format!("knots must be strictly increasing, got {} then {}", w[0], w[1]),
                ));
            }
        }
        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();

        let mut d = vec![0.0; n];
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] <= 0.0 {
                d[i] = 0.0;
            } else {
                // Weighted harmonic mean (Fritsch–Butland).
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        let m = h.len();
        d[0] = endpoint_slope(h[0], h.get(1).copied(), delta[0], delta.get(1).copied());
        d[n - 1] = endpoint_slope(
            h[m - 1],
            if m >= 2 { Some(h[m - 2]) } else { None },
            delta[m - 1],
            if m >= 2 { Some(delta[m - 2]) } else { None },
        );

        Ok(MonotoneCubic { x, y, d })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    fn cell(&self, t: f64) -> usize {
        let n = self.x.len();
        if t <= self.x[0] {
            return 0;
        }
        if t >= self.x[n - 1] {
            return n - 2;
        }
        self.x.partition_point(|&xi| xi <= t) - 1
    }

    /// Interpolated value; clamped to the end values outside the knots.
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        if t <= self.x[0] {
            return self.y[0];
        }
        if t >= self.x[n - 1] {
            return self.y[n - 1];
        }
        let i = self.cell(t);
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let (h00, h10, h01, h11) = hermite_basis(s);
        h00 * self.y[i] + h10 * h * self.d[i] + h01 * self.y[i + 1] + h11 * h * self.d[i + 1]
    }

    /// Derivative of the interpolant; zero outside the knots.
    pub fn derivative(&self, t: f64) -> f64 {
        let n = self.x.len();
        if t < self.x[0] || t > self.x[n - 1] {
            return 0.0;
        }
        let i = self.cell(t);
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let dh00 = (6.0 * s * s - 6.0 * s) / h;
        let dh10 = 3.0 * s * s - 4.0 * s + 1.0;
        let dh01 = (-6.0 * s * s + 6.0 * s) / h;
        let dh11 = 3.0 * s * s - 2.0 * s;
        dh00 * self.y[i] + dh10 * self.d[i] + dh01 * self.y[i + 1] + dh11 * self.d[i + 1]
    }
}

fn hermite_basis(s: f64) -> (f64, f64, f64, f64) {
    let s2 = s * s;
    let s3 = s2 * s;
    (
        2.0 * s3 - 3.0 * s2 + 1.0,
        s3 - 2.0 * s2 + s,
        -2.0 * s3 + 3.0 * s2,
        s3 - s2,
    )
}

/// Three-point endpoint slope with the usual shape-preserving clamps.
fn endpoint_slope(h0: f64, h1: Option<f64>, d0: f64, d1: Option<f64>) -> f64 {
    let (h1, d1) = match (h1, d1) {
        (Some(h1), Some(d1)) => (h1, d1),
        _ => return d0,
    };
    let mut slope = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if slope * d0 <= 0.0 {
        slope = 0.0;
    } else if d0 * d1 <= 0.0 && slope.abs() > 3.0 * d0.abs() {
        slope = 3.0 * d0;
    }
    slope
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_linear_data() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        let c = MonotoneCubic::new(x, y).unwrap();
        for i in 0..90 {
            let t = i as f64 * 0.1;
            assert!((c.eval(t) - (2.0 * t + 1.0)).abs() < 1e-12);
            assert!((c.derivative(t) - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn preserves_monotone_decrease() {
        // ccdf-like data with a plateau.
        let x = vec![0.0, 0.5, 1.0, 2.0, 3.0, 4.0];
        let y = vec![1.0, 0.8, 0.5, 0.5, 0.2, 0.0];
        let c = MonotoneCubic::new(x, y).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=400 {
            let t = i as f64 * 0.01;
            let v = c.eval(t);
            assert!(v <= prev + 1e-12, "not monotone at t={t}");
            assert!(c.derivative(t) <= 1e-12);
            prev = v;
        }
        // plateau stays flat
        assert!((c.eval(1.5) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn clamps_outside_range() {
        let c = MonotoneCubic::new(vec![0.0, 1.0], vec![1.0, 0.0]).unwrap();
        assert_eq!(c.eval(-1.0), 1.0);
        assert_eq!(c.eval(2.0), 0.0);
    }

    #[test]
    fn rejects_unsorted_knots() {
        assert!(MonotoneCubic::new(vec![0.0, 0.0, 1.0], vec![0.0, 0.5, 1.0]).is_err());
        assert!(MonotoneCubic::new(vec![1.0], vec![1.0]).is_err());
    }
}
