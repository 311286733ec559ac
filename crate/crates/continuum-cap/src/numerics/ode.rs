//! Adaptive Dormand–Prince 5(4) integration for scalar initial value problems.
//!
//! The accumulated-power recursion Π̇(ν) = 2η_s f_ν(ν)(ν + Π) is the only ODE
//! in the crate, so a scalar solver is all that is needed.

use crate::error::{Error, Result};

const MAX_STEPS: usize = 1_000_000;

// Dormand–Prince butcher tableau.
const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A2: [f64; 1] = [0.2];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates dy/dx = rhs(x, y) from (x0, y0) to x1 with local error
/// controlled to `step_tol · (1 + |y|)` per step.
///
/// ```
/// use continuum_cap::numerics::solve_ode;
///
/// // dy/dx = y, y(0) = 1 → y(1) = e
/// let y = solve_ode(|_, y| y, 0.0, 1.0, 1.0, 1e-10).unwrap();
/// assert!((y - std::f64::consts::E).abs() < 1e-9);
/// ```
pub fn solve_ode<F: Fn(f64, f64) -> f64>(
    rhs: F,
    x0: f64,
    y0: f64,
    x1: f64,
    step_tol: f64,
) -> Result<f64> {
    if !(step_tol > 0.0) || !step_tol.is_finite() {
        return Err(Error::domain("solve_ode", "step tolerance must be > 0"));
    }
    if !x0.is_finite() || !x1.is_finite() || !y0.is_finite() {
        return Err(Error::domain("solve_ode", "non-finite initial data"));
    }
    if x0 == x1 {
        return Ok(y0);
    }

    let span = x1 - x0;
    let mut x = x0;
    let mut y = y0;
    let mut h = span / 100.0;

    for _ in 0..MAX_STEPS {
        // Never step past the endpoint.
        if (x1 - x).abs() <= h.abs() {
            h = x1 - x;
        }
        if h.abs() < 4.0 * f64::EPSILON * x.abs().max(span.abs()) {
            return Err(Error::StepUnderflow { x });
        }

        let k1 = rhs(x, y);
        let k2 = rhs(x + C[0] * h, y + h * A2[0] * k1);
        let k3 = rhs(x + C[1] * h, y + h * (A3[0] * k1 + A3[1] * k2));
        let k4 = rhs(x + C[2] * h, y + h * (A4[0] * k1 + A4[1] * k2 + A4[2] * k3));
        let k5 = rhs(
            x + C[3] * h,
            y + h * (A5[0] * k1 + A5[1] * k2 + A5[2] * k3 + A5[3] * k4),
        );
        let k6 = rhs(
            x + C[4] * h,
            y + h * (A6[0] * k1 + A6[1] * k2 + A6[2] * k3 + A6[3] * k4 + A6[4] * k5),
        );
        let y5 = y + h * (B5[0] * k1 + B5[2] * k3 + B5[3] * k4 + B5[4] * k5 + B5[5] * k6);
        let k7 = rhs(x + h, y5);
        let y4 = y + h
            * (B4[0] * k1 + B4[2] * k3 + B4[3] * k4 + B4[4] * k5 + B4[5] * k6 + B4[6] * k7);

        let err = (y5 - y4).abs();
        let scale = step_tol * (1.0 + y.abs().max(y5.abs()));
        let ratio = err / scale;

        if !y5.is_finite() {
            return Err(Error::DivergentIntegral { op: "solve_ode" });
        }

        if ratio <= 1.0 {
            x += h;
            y = y5;
            if x == x1 {
                return Ok(y);
            }
        }
        let factor = if ratio > 0.0 {
            (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
    }
    Err(Error::NoConvergence {
        op: "solve_ode",
        iterations: MAX_STEPS,
    })
}
