//! Finite partitions of the noise axis and the layered power recursions
//! that bound the continuum limit from both sides.
//!
//! A K-interval partition of [ν_m, ν_M] places one virtual user per
//! interval. Serving that finite broadcast channel with superposition
//! coding costs
//!
//! ```text
//! P_k = (2^(2R_k) − 1) · (ν_k + Σ_{q<k} P_q)
//! ```
//!
//! processed from the least-noisy interval up, with ν_k the interval's best
//! (lower) or worst (upper) endpoint. The worst-endpoint total Π₋ is
//! achievable, the best-endpoint total Π₊ is a converse bound, and
//! Π₊ ≤ P̃_m ≤ Π₋ with both sides converging to the continuum minimal power
//! as K grows. A pure time-sharing baseline completes the comparison.

use crate::error::{Error, Result, ResultExt};
use crate::numerics::QuadratureSpec;
use crate::scbc::{invert_min_power_with, SpectralEfficiency, LN_2};
use crate::scenario::NoiseDistribution;

/// Which interval endpoint plays the virtual receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Least-noisy point of each interval: converse (upper capacity) bound.
    Best,
    /// Most-noisy point of each interval: achievable (lower capacity) bound.
    Worst,
}

/// Link direction of an allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Downlink,
    Uplink,
}

/// One noise interval and the rate it must carry (bits per channel use).
#[derive(Debug, Clone, Copy)]
pub struct Interval {
    pub nu_lo: f64,
    pub nu_hi: f64,
    pub rate: f64,
}

/// Ordered noise intervals tiling [ν_m, ν_M] with per-interval rates.
#[derive(Debug, Clone)]
pub struct Partition {
    intervals: Vec<Interval>,
    level: Option<u32>,
}

impl Partition {
    /// Validates tiling (`nu_hi[k] = nu_lo[k+1]`, strictly widening) and
    /// non-negative rates.
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        Self::with_level(intervals, None)
    }

    fn with_level(intervals: Vec<Interval>, level: Option<u32>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::domain("Partition::new", "no intervals"));
        }
        if intervals[0].nu_lo < 0.0 {
            return Err(Error::domain("Partition::new", "noise must be >= 0"));
        }
        for (k, iv) in intervals.iter().enumerate() {
            if !(iv.nu_hi > iv.nu_lo) {
                return Err(Error::domain(
                    "Partition::new",
                    format!("interval {k} is empty: [{}, {}]", iv.nu_lo, iv.nu_hi),
                ));
            }
            if !(iv.rate >= 0.0) || !iv.rate.is_finite() {
                return Err(Error::domain(
                    "Partition::new",
                    format!("interval {k} has invalid rate {}", iv.rate),
                ));
            }
        }
        for (k, w) in intervals.windows(2).enumerate() {
            if w[0].nu_hi != w[1].nu_lo {
                return Err(Error::domain(
                    "Partition::new",
                    format!(
                        "gap or overlap between intervals {k} and {}: {} vs {}",
                        k + 1,
                        w[0].nu_hi,
                        w[1].nu_lo
                    ),
                ));
            }
        }
        Ok(Partition { intervals, level })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Split depth when built by dyadic midpoint splitting.
    pub fn level(&self) -> Option<u32> {
        self.level
    }

    /// Total requested rate ρ_T in bits per channel use.
    pub fn sum_rate(&self) -> f64 {
        self.intervals.iter().map(|iv| iv.rate).sum()
    }
}

/// Dyadic midpoint splitting of the support into 2^levels intervals, each
/// carrying the rate of its ccdf mass: R_k = ρ_T (G(ν_lo) − G(ν_hi)).
/// Zero-mass intervals are kept with rate 0 to preserve dyadic indexing.
pub fn split(dist: &NoiseDistribution, levels: u32, sum_rate_bits: f64) -> Result<Partition> {
    if levels > 24 {
        return Err(Error::domain(
            "split",
            format!("levels = {levels} would create 2^{levels} intervals"),
        ));
    }
    if !(sum_rate_bits >= 0.0) {
        return Err(Error::domain("split", "sum rate must be >= 0"));
    }
    let k = 1usize << levels;
    let (lo, hi) = (dist.nu_min(), dist.nu_max());
    let width = (hi - lo) / k as f64;
    let intervals = (0..k)
        .map(|j| {
            let nu_lo = if j == 0 { lo } else { lo + j as f64 * width };
            let nu_hi = if j == k - 1 {
                hi
            } else {
                lo + (j + 1) as f64 * width
            };
            Interval {
                nu_lo,
                nu_hi,
                rate: sum_rate_bits * (dist.ccdf(nu_lo) - dist.ccdf(nu_hi)),
            }
        })
        .collect();
    Partition::with_level(intervals, Some(levels))
}

/// Equal-rate partition: boundaries at ccdf quantiles so each of the k
/// intervals carries exactly ρ_T / k.
pub fn split_uniform_mass(
    dist: &NoiseDistribution,
    k: usize,
    sum_rate_bits: f64,
) -> Result<Partition> {
    if k < 1 {
        return Err(Error::domain("split_uniform_mass", "need k >= 1"));
    }
    if !(sum_rate_bits >= 0.0) {
        return Err(Error::domain("split_uniform_mass", "sum rate must be >= 0"));
    }
    let bounds = quantile_boundaries(dist, k);
    let rate = sum_rate_bits / k as f64;
    let intervals = bounds
        .windows(2)
        .map(|w| Interval {
            nu_lo: w[0],
            nu_hi: w[1],
            rate,
        })
        .collect();
    Partition::new(intervals)
}

/// k+1 noise boundaries at the ccdf quantiles 1, (k−1)/k, …, 1/k, 0.
pub(crate) fn quantile_boundaries(dist: &NoiseDistribution, k: usize) -> Vec<f64> {
    let mut bounds = Vec::with_capacity(k + 1);
    bounds.push(dist.nu_min());
    for j in 1..k {
        let g = 1.0 - j as f64 / k as f64;
        let q = dist.quantile(g);
        let prev = *bounds.last().expect("non-empty");
        // quantile inversion can land on a previous boundary for plateaued
        // ccdfs; nudge forward so the tiling stays strict
        bounds.push(q.max(prev + prev.abs().max(1e-300) * f64::EPSILON * 4.0));
    }
    bounds.push(dist.nu_max());
    bounds
}

/// Per-layer powers of one side and direction, with running totals.
#[derive(Debug, Clone)]
pub struct LayeredAllocation {
    pub side: Side,
    pub direction: Direction,
    pub layer_powers: Vec<f64>,
    /// Prefix sums of `layer_powers`.
    pub cumulative: Vec<f64>,
    pub total_power: f64,
}

impl LayeredAllocation {
    /// CSV table (layer, nu_lo, nu_hi, rate, power, cumulative).
    pub fn to_csv(&self, partition: &Partition) -> String {
        let mut out = String::from("layer,nu_lo,nu_hi,rate,power,cumulative\n");
        for (k, (iv, (p, c))) in partition
            .intervals()
            .iter()
            .zip(self.layer_powers.iter().zip(&self.cumulative))
            .enumerate()
        {
            out.push_str(&format!(
                "{k},{},{},{},{},{}\n",
                crate::sweep::fmt_g12(iv.nu_lo),
                crate::sweep::fmt_g12(iv.nu_hi),
                crate::sweep::fmt_g12(iv.rate),
                crate::sweep::fmt_g12(*p),
                crate::sweep::fmt_g12(*c),
            ));
        }
        out
    }
}

/// 2^(2R) − 1 with an explicit overflow guard.
fn shannon_factor(rate_bits: f64) -> Result<f64> {
    let f = (2.0 * rate_bits).exp2() - 1.0;
    if !f.is_finite() {
        return Err(Error::PowerOverflow { rate_bits });
    }
    Ok(f)
}

/// Downlink superposition-coding powers: layers processed best-to-worst so
/// each sees the cumulative power of better users as interference.
pub fn downlink_allocation(partition: &Partition, side: Side) -> Result<LayeredAllocation> {
    let n = partition.len();
    let mut layer_powers = Vec::with_capacity(n);
    let mut cumulative = Vec::with_capacity(n);
    let mut acc = 0.0f64;
    for iv in partition.intervals() {
        let nu = match side {
            Side::Best => iv.nu_lo,
            Side::Worst => iv.nu_hi,
        };
        let p = shannon_factor(iv.rate)? * (nu + acc);
        acc += p;
        if !acc.is_finite() {
            return Err(Error::PowerOverflow { rate_bits: iv.rate });
        }
        layer_powers.push(p);
        cumulative.push(acc);
    }
    Ok(LayeredAllocation {
        side,
        direction: Direction::Downlink,
        layer_powers,
        cumulative,
        total_power: acc,
    })
}

/// Total downlink power over precomputed boundaries with one equal rate per
/// interval — the hot loop behind the sandwich and its inversion.
fn layered_total(bounds: &[f64], rate_bits: f64, side: Side) -> Result<f64> {
    let a = shannon_factor(rate_bits)?;
    let mut acc = 0.0f64;
    for w in bounds.windows(2) {
        let nu = match side {
            Side::Best => w[0],
            Side::Worst => w[1],
        };
        acc += a * (nu + acc);
    }
    if !acc.is_finite() {
        return Err(Error::PowerOverflow { rate_bits });
    }
    Ok(acc)
}

/// Best/worst total powers (Π₊, Π₋) of a K-interval partition at spectral
/// efficiency η_s; they sandwich the continuum minimal power for any
/// partition, so the boundaries are placed to make the bracket tight.
///
/// The gap of a fine partition is ≈ 2η_s Σ ΔG_k Δν_k e^(2η_s G_k), so the
/// K boundaries equalize the measure √(f_ν e^(2η_s G_ν)) dν per interval —
/// by Cauchy–Schwarz never worse than the equal-rate quantile rule.
pub fn sandwich_bounds(
    dist: &NoiseDistribution,
    eta_s: SpectralEfficiency,
    k: usize,
) -> Result<(f64, f64)> {
    if k < 1 {
        return Err(Error::domain("sandwich_bounds", "need k >= 1"));
    }
    if eta_s.nats() == 0.0 {
        return Ok((0.0, 0.0));
    }
    let bounds = balanced_boundaries(dist, k, eta_s.nats());
    let rho = eta_s.sum_rate_bits();
    let mut lower = 0.0f64;
    let mut upper = 0.0f64;
    for w in bounds.windows(2) {
        let rate = rho * (dist.ccdf(w[0]) - dist.ccdf(w[1])).max(0.0);
        let a = shannon_factor(rate)?;
        lower += a * (w[0] + lower);
        upper += a * (w[1] + upper);
    }
    if !upper.is_finite() {
        return Err(Error::PowerOverflow {
            rate_bits: eta_s.sum_rate_bits(),
        });
    }
    Ok((lower, upper))
}

/// Boundaries equalizing the per-interval gap contribution: in the mass
/// coordinate t = 1 − G the cumulative weight m(t) = ∫ √(ν′(t) e^(2η(1−t))) dt
/// is tabulated on a fine grid and cut at equal increments.
fn balanced_boundaries(dist: &NoiseDistribution, k: usize, eta: f64) -> Vec<f64> {
    const FINE: usize = 4096;
    if k == 1 {
        return vec![dist.nu_min(), dist.nu_max()];
    }
    let mut nus = Vec::with_capacity(FINE + 1);
    let mut mass = Vec::with_capacity(FINE + 1);
    nus.push(dist.nu_min());
    mass.push(0.0);
    let mut acc = 0.0f64;
    for i in 1..=FINE {
        let t = i as f64 / FINE as f64;
        let nu = if i == FINE {
            dist.nu_max()
        } else {
            dist.quantile(1.0 - t)
        };
        let d_nu = (nu - nus[i - 1]).max(0.0);
        let g_mid = 1.0 - (i as f64 - 0.5) / FINE as f64;
        acc += (d_nu * (2.0 * eta * g_mid).exp() / FINE as f64).sqrt();
        nus.push(nu);
        mass.push(acc);
    }
    let total = acc;
    if !(total > 0.0) || !total.is_finite() {
        return quantile_boundaries(dist, k);
    }
    let mut bounds = Vec::with_capacity(k + 1);
    bounds.push(dist.nu_min());
    for j in 1..k {
        let target = total * j as f64 / k as f64;
        let idx = mass.partition_point(|&m| m < target).min(FINE);
        // linear interpolation inside the fine cell
        let (m0, m1) = (mass[idx - 1], mass[idx]);
        let frac = if m1 > m0 { (target - m0) / (m1 - m0) } else { 0.0 };
        let nu = nus[idx - 1] + frac * (nus[idx] - nus[idx - 1]);
        let prev = *bounds.last().expect("non-empty");
        bounds.push(nu.max(prev + prev.abs().max(1e-300) * f64::EPSILON * 4.0));
    }
    bounds.push(dist.nu_max());
    bounds
}

/// Per-user rate bound obtained by inverting one side of the K-layer
/// sandwich at a fixed power. The worst side is achievable; the best side
/// is the converse bound.
pub fn bounded_capacity(
    dist: &NoiseDistribution,
    power: f64,
    total_users: f64,
    k: usize,
    side: Side,
) -> Result<f64> {
    bounded_capacity_with_tol(dist, power, total_users, k, side, 1e-8)
}

/// [`bounded_capacity`] with an explicit relative power tolerance.
pub fn bounded_capacity_with_tol(
    dist: &NoiseDistribution,
    power: f64,
    total_users: f64,
    k: usize,
    side: Side,
    rel_tol: f64,
) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain("bounded_capacity", "need k >= 1"));
    }
    if !(power >= 0.0) || !power.is_finite() {
        return Err(Error::domain(
            "bounded_capacity",
            format!("power = {power} must be finite and >= 0"),
        ));
    }
    if power == 0.0 {
        return Ok(0.0);
    }
    let bounds = quantile_boundaries(dist, k);
    let eta = invert_min_power_with(
        |eta| layered_total(&bounds, eta / (LN_2 * k as f64), side),
        power,
        rel_tol,
    )
    .ctx("bounded_capacity")?;
    Ok(eta / (LN_2 * total_users))
}

/// Pure time-sharing baseline: each user is served alone at full power for
/// a time fraction proportional to its demand over its point-to-point
/// capacity, giving I₀ = [U_T ∫ f_ν(ν)/c(ν) dν]^(−1) with
/// c(ν) = ½ log₂(1 + P/ν).
pub fn time_sharing_capacity(
    dist: &NoiseDistribution,
    power: f64,
    total_users: f64,
) -> Result<f64> {
    if !(power > 0.0) || !power.is_finite() {
        return Err(Error::domain(
            "time_sharing_capacity",
            format!("power = {power} must be > 0"),
        ));
    }
    let inv_capacity = dist
        .integrate_weighted(
            |nu, _| {
                if nu <= 0.0 {
                    0.0
                } else {
                    2.0 / (1.0 + power / nu).log2()
                }
            },
            &QuadratureSpec::default(),
        )
        .ctx("time_sharing_capacity")?;
    if !inv_capacity.is_finite() || inv_capacity <= 0.0 {
        return Err(Error::DivergentIntegral {
            op: "time_sharing_capacity",
        });
    }
    Ok(1.0 / (total_users * inv_capacity))
}
