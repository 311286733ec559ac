//! Uplink spatial-continuum multiple access under transferable power.
//!
//! With successive interference cancellation the receiver decodes the
//! nearest transmitter first and the furthest last, so the furthest sees no
//! interference. Working from the furthest interval inward,
//!
//! ```text
//! P_k = (2^(2R_k) − 1) · (1 + Σ_{l>k} P_l / ν_l) · ν_k
//! ```
//!
//! where P_k is transmit power at the virtual transmitter of equivalent
//! noise ν_k (so its received SNR contribution is P_k/ν_k). Under
//! transferable power the BC/MAC duality is exact: the uplink total equals
//! the downlink worst-side total for every partition, even though the
//! per-layer powers differ.

use crate::error::{Error, Result};
use crate::partition::{downlink_allocation, Partition, Side};

/// Per-interval uplink transmit powers in SIC decode order.
#[derive(Debug, Clone)]
pub struct UplinkAllocation {
    pub side: Side,
    /// Transmit power per interval, indexed like the partition.
    pub layer_powers: Vec<f64>,
    /// Interval indices from first-decoded (nearest) to last (furthest).
    pub decode_order: Vec<usize>,
    pub total_power: f64,
}

impl UplinkAllocation {
    /// CSV table (layer, nu_lo, nu_hi, rate, power, cumulative), matching
    /// the downlink layer-table format; cumulative follows decode order.
    pub fn to_csv(&self, partition: &Partition) -> String {
        let mut out = String::from("layer,nu_lo,nu_hi,rate,power,cumulative\n");
        let mut acc = 0.0;
        for (k, (iv, p)) in partition
            .intervals()
            .iter()
            .zip(&self.layer_powers)
            .enumerate()
        {
            acc += p;
            out.push_str(&format!(
                "{k},{},{},{},{},{}\n",
                crate::sweep::fmt_g12(iv.nu_lo),
                crate::sweep::fmt_g12(iv.nu_hi),
                crate::sweep::fmt_g12(iv.rate),
                crate::sweep::fmt_g12(*p),
                crate::sweep::fmt_g12(acc),
            ));
        }
        out
    }
}

/// Worst-transmitter (achievable) SIC power allocation.
pub fn uplink_allocation(partition: &Partition) -> Result<UplinkAllocation> {
    uplink_allocation_side(partition, Side::Worst)
}

/// SIC allocation with the virtual transmitter at either interval endpoint.
/// `Side::Worst` is the achievable allocation; `Side::Best` gives the
/// converse-side totals through the same recursion.
pub fn uplink_allocation_side(partition: &Partition, side: Side) -> Result<UplinkAllocation> {
    let n = partition.len();
    let mut layer_powers = vec![0.0; n];
    // Received interference-to-noise ratio Σ_{l>k} P_l/ν_l.
    let mut acc = 0.0f64;
    for (k, iv) in partition.intervals().iter().enumerate().rev() {
        let nu = match side {
            Side::Best => iv.nu_lo,
            Side::Worst => iv.nu_hi,
        };
        let a = (2.0 * iv.rate).exp2() - 1.0;
        if !a.is_finite() {
            return Err(Error::PowerOverflow { rate_bits: iv.rate });
        }
        let p = a * (1.0 + acc) * nu;
        layer_powers[k] = p;
        if k > 0 && nu > 0.0 {
            acc += p / nu;
            if !acc.is_finite() {
                return Err(Error::PowerOverflow { rate_bits: iv.rate });
            }
        }
    }
    Ok(UplinkAllocation {
        side,
        total_power: layer_powers.iter().sum(),
        decode_order: (0..n).collect(),
        layer_powers,
    })
}

/// Numerical check of the BC/MAC sum-power duality on one partition.
#[derive(Debug, Clone, Copy)]
pub struct DualityReport {
    pub downlink_total: f64,
    pub uplink_total: f64,
    pub relative_gap: f64,
}

/// Computes both worst-side totals and their relative difference. Under
/// transferable power the gap is pure floating-point noise (≤ 1e-9).
pub fn verify_duality(partition: &Partition) -> Result<DualityReport> {
    let down = downlink_allocation(partition, Side::Worst)?.total_power;
    let up = uplink_allocation(partition)?.total_power;
    let scale = down.abs().max(up.abs());
    let relative_gap = if scale == 0.0 {
        0.0
    } else {
        (down - up).abs() / scale
    };
    Ok(DualityReport {
        downlink_total: down,
        uplink_total: up,
        relative_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{split_uniform_mass, Interval};
    use crate::scenario::NoiseDistribution;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn zero_rates_zero_powers() {
        let d = NoiseDistribution::disk(3.65, 1.0).unwrap();
        let p = split_uniform_mass(&d, 6, 0.0).unwrap();
        let a = uplink_allocation(&p).unwrap();
        assert!(a.layer_powers.iter().all(|&p| p == 0.0));
        assert_eq!(a.total_power, 0.0);
    }

    #[test]
    fn single_user_shannon_power() {
        let p = Partition::new(vec![Interval {
            nu_lo: 1.0,
            nu_hi: 2.0,
            rate: 0.5,
        }])
        .unwrap();
        let a = uplink_allocation(&p).unwrap();
        assert!(rel(a.total_power, 2.0) < 1e-14);
        assert_eq!(a.decode_order, vec![0]);
    }

    #[test]
    fn two_interval_example_matches_downlink() {
        let p = Partition::new(vec![
            Interval {
                nu_lo: 0.5,
                nu_hi: 1.0,
                rate: 0.5,
            },
            Interval {
                nu_lo: 1.0,
                nu_hi: 2.0,
                rate: 0.5,
            },
        ])
        .unwrap();
        let a = uplink_allocation(&p).unwrap();
        // furthest first: P₂ = (2−1)·2 = 2, then P₁ = (2−1)·(1 + 2/2)·1 = 2
        assert!(rel(a.layer_powers[1], 2.0) < 1e-14);
        assert!(rel(a.layer_powers[0], 2.0) < 1e-14);
        assert!(rel(a.total_power, 4.0) < 1e-14);
        let report = verify_duality(&p).unwrap();
        assert!(report.relative_gap < 1e-15);
    }

    #[test]
    fn per_layer_powers_differ_between_directions() {
        let d = NoiseDistribution::disk(3.65, 1.0).unwrap();
        let p = split_uniform_mass(&d, 8, 3.0).unwrap();
        let up = uplink_allocation(&p).unwrap();
        let down = downlink_allocation(&p, Side::Worst).unwrap();
        assert!(rel(up.total_power, down.total_power) < 1e-12);
        let differs = up
            .layer_powers
            .iter()
            .zip(&down.layer_powers)
            .any(|(u, d)| rel(*u, *d) > 1e-6);
        assert!(differs, "per-layer powers unexpectedly identical");
    }

    #[test]
    fn duality_gap_tiny_for_quantile_partitions() {
        for &alpha in &[2.0, 3.65] {
            let d = NoiseDistribution::disk(alpha, 2.0).unwrap();
            for &k in &[1usize, 2, 7, 16, 64] {
                let p = split_uniform_mass(&d, k, 4.0).unwrap();
                let report = verify_duality(&p).unwrap();
                assert!(report.relative_gap <= 1e-9, "alpha={alpha} k={k}");
            }
        }
    }

    #[test]
    fn uplink_total_monotone_in_rates_and_noise() {
        let base = Partition::new(vec![
            Interval {
                nu_lo: 0.5,
                nu_hi: 1.0,
                rate: 0.4,
            },
            Interval {
                nu_lo: 1.0,
                nu_hi: 2.0,
                rate: 0.7,
            },
        ])
        .unwrap();
        let t0 = uplink_allocation(&base).unwrap().total_power;

        let more_rate = Partition::new(vec![
            Interval {
                nu_lo: 0.5,
                nu_hi: 1.0,
                rate: 0.6,
            },
            Interval {
                nu_lo: 1.0,
                nu_hi: 2.0,
                rate: 0.7,
            },
        ])
        .unwrap();
        assert!(uplink_allocation(&more_rate).unwrap().total_power > t0);

        let more_noise = Partition::new(vec![
            Interval {
                nu_lo: 0.5,
                nu_hi: 1.0,
                rate: 0.4,
            },
            Interval {
                nu_lo: 1.0,
                nu_hi: 2.5,
                rate: 0.7,
            },
        ])
        .unwrap();
        assert!(uplink_allocation(&more_noise).unwrap().total_power > t0);
    }

    #[test]
    fn best_side_uses_lower_endpoints() {
        let p = Partition::new(vec![
            Interval {
                nu_lo: 0.5,
                nu_hi: 1.0,
                rate: 0.5,
            },
            Interval {
                nu_lo: 1.0,
                nu_hi: 2.0,
                rate: 0.5,
            },
        ])
        .unwrap();
        let best = uplink_allocation_side(&p, Side::Best).unwrap();
        let worst = uplink_allocation_side(&p, Side::Worst).unwrap();
        assert!(best.total_power < worst.total_power);
        // best-side total matches the downlink best-side total (duality)
        let down_best = downlink_allocation(&p, Side::Best).unwrap().total_power;
        assert!(rel(best.total_power, down_best) < 1e-12);
    }

    #[test]
    fn uplink_overflow_guard() {
        let p = Partition::new(vec![Interval {
            nu_lo: 1.0,
            nu_hi: 2.0,
            rate: 1e4,
        }])
        .unwrap();
        assert!(matches!(
            uplink_allocation(&p),
            Err(Error::PowerOverflow { .. })
        ));
    }
}
