//! Bisection for monotone functions, used to invert power ↔ capacity maps.

use crate::error::{Error, Result};

const MAX_BISECTIONS: usize = 200;

/// Bracket and acceptance tolerance for [`bisect_monotone`].
#[derive(Debug, Clone, Copy)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    /// Accept x once |f(x) − target| ≤ tol · max(1, |target|).
    pub tol: f64,
}

impl RootBracket {
    pub fn new(lo: f64, hi: f64, tol: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::domain(
                "bisect_monotone",
                format!("bracket must satisfy lo < hi, got [{lo}, {hi}]"),
            ));
        }
        if !(tol > 0.0) {
            return Err(Error::domain("bisect_monotone", "tolerance must be > 0"));
        }
        Ok(RootBracket { lo, hi, tol })
    }
}

/// Finds x in the bracket with f(x) = target for monotone f.
///
/// Works for either orientation. The target must lie within the image of
/// the bracket (up to the acceptance tolerance).
pub fn bisect_monotone<F: Fn(f64) -> f64>(f: F, target: f64, bracket: &RootBracket) -> Result<f64> {
    let accept = bracket.tol * target.abs().max(1.0);
    let f_lo = f(bracket.lo);
    let f_hi = f(bracket.hi);

    if (f_lo - target).abs() <= accept {
        return Ok(bracket.lo);
    }
    if (f_hi - target).abs() <= accept {
        return Ok(bracket.hi);
    }
    let increasing = f_hi > f_lo;
    let (img_lo, img_hi) = if increasing { (f_lo, f_hi) } else { (f_hi, f_lo) };
    if target < img_lo || target > img_hi {
        return Err(Error::TargetOutOfRange {
            target,
            f_lo,
            f_hi,
        });
    }

    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if (fm - target).abs() <= accept {
            return Ok(mid);
        }
        if (fm > target) == increasing {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= f64::EPSILON * mid.abs().max(1.0) {
            // Bracket exhausted at machine resolution without meeting the
            // function-value criterion (e.g. a jump across the target).
            break;
        }
    }
    Err(Error::NoConvergence {
        op: "bisect_monotone",
        iterations: MAX_BISECTIONS,
    })
}
