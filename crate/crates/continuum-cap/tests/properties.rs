//! Randomized invariants over distributions, partitions, and allocations.

use proptest::prelude::*;

use continuum_cap::numerics::{gamma, lower_incomplete_gamma, upper_incomplete_gamma, QuadratureSpec};
use continuum_cap::partition::{downlink_allocation, sandwich_bounds, Interval, Partition, Side};
use continuum_cap::scbc::{min_power, SpectralEfficiency};
use continuum_cap::scmac::{uplink_allocation, verify_duality};
use continuum_cap::NoiseDistribution;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Random tabulated ccdf: cumulative noise knots with normalized drops.
fn tabulated_dist() -> impl Strategy<Value = NoiseDistribution> {
    (
        prop::collection::vec((0.01f64..1.0, 1e-3f64..1.0), 2..32),
        0.0f64..5.0,
    )
        .prop_map(|(steps, nu0)| {
            let mut nus = Vec::with_capacity(steps.len() + 1);
            let mut gs = Vec::with_capacity(steps.len() + 1);
            let total_drop: f64 = steps.iter().map(|s| s.1).sum();
            let mut nu = nu0;
            let mut g = 1.0;
            nus.push(nu);
            gs.push(g);
            for (dnu, dg) in &steps {
                nu += dnu;
                g -= dg / total_drop;
                nus.push(nu);
                gs.push(g.max(0.0));
            }
            let n = gs.len();
            gs[n - 1] = 0.0;
            NoiseDistribution::from_ccdf_table(nus, gs).expect("valid table")
        })
}

/// Random tiling of a noise range with rates in [0, 2] bits.
fn partition() -> impl Strategy<Value = Partition> {
    (
        prop::collection::vec((0.01f64..1.0, 0.0f64..2.0), 1..64),
        0.0f64..3.0,
    )
        .prop_map(|(steps, nu0)| {
            let mut lo = nu0;
            let intervals = steps
                .iter()
                .map(|&(width, rate)| {
                    let iv = Interval {
                        nu_lo: lo,
                        nu_hi: lo + width,
                        rate,
                    };
                    lo += width;
                    iv
                })
                .collect();
            Partition::new(intervals).expect("valid partition")
        })
}

proptest! {
    #[test]
    fn tabulated_ccdf_invariants(dist in tabulated_dist()) {
        prop_assert!((dist.ccdf(dist.nu_min()) - 1.0).abs() < 1e-9);
        prop_assert!(dist.ccdf(dist.nu_max()).abs() < 1e-9);
        let span = dist.nu_max() - dist.nu_min();
        let mut prev = 1.0f64;
        for i in 0..=100 {
            let nu = dist.nu_min() + span * i as f64 / 100.0;
            let g = dist.ccdf(nu);
            prop_assert!(g <= prev + 1e-12, "ccdf increased at {nu}");
            prop_assert!(dist.pdf(nu) >= 0.0);
            prev = g;
        }
        let mass = dist
            .integrate_weighted(|_, _| 1.0, &QuadratureSpec::default())
            .unwrap();
        prop_assert!((mass - 1.0).abs() < 1e-8, "pdf mass {mass}");
    }

    #[test]
    fn quantile_is_ccdf_inverse(dist in tabulated_dist(), g in 0.02f64..0.98) {
        let nu = dist.quantile(g);
        prop_assert!(nu >= dist.nu_min() - 1e-12 && nu <= dist.nu_max() + 1e-12);
        // exact inversion only away from plateaus; the ccdf at the returned
        // point can never overshoot the requested mass on either side of a
        // neighboring sample
        let g_back = dist.ccdf(nu);
        prop_assert!((0.0..=1.0).contains(&g_back));
        let eps = 1e-9 * dist.nu_max().max(1.0);
        prop_assert!(dist.ccdf(nu - eps) + 1e-9 >= g);
        prop_assert!(dist.ccdf(nu + eps) <= g + 1e-9);
    }

    #[test]
    fn partition_conserves_rates_and_tiles(p in partition()) {
        let expect: f64 = p.intervals().iter().map(|iv| iv.rate).sum();
        prop_assert!(rel(p.sum_rate(), expect.max(1e-300)) < 1e-10 || expect == 0.0);
        for w in p.intervals().windows(2) {
            prop_assert_eq!(w[0].nu_hi, w[1].nu_lo);
        }
    }

    #[test]
    fn allocations_nonnegative_with_prefix_totals(p in partition()) {
        for side in [Side::Best, Side::Worst] {
            let a = downlink_allocation(&p, side).unwrap();
            let mut acc = 0.0;
            for (lp, c) in a.layer_powers.iter().zip(&a.cumulative) {
                prop_assert!(*lp >= 0.0);
                acc += lp;
                prop_assert!(rel(acc, c.max(1e-300)) < 1e-12 || acc == 0.0);
            }
            prop_assert!((a.total_power - acc).abs() <= 1e-12 * acc.abs().max(1.0));
        }
        let best = downlink_allocation(&p, Side::Best).unwrap().total_power;
        let worst = downlink_allocation(&p, Side::Worst).unwrap().total_power;
        prop_assert!(best <= worst * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn downlink_powers_satisfy_recursion_exactly(p in partition()) {
        // re-evaluate the recursion from the stored layer powers
        for side in [Side::Best, Side::Worst] {
            let a = downlink_allocation(&p, side).unwrap();
            let mut acc = 0.0f64;
            for (iv, &lp) in p.intervals().iter().zip(&a.layer_powers) {
                let nu = match side {
                    Side::Best => iv.nu_lo,
                    Side::Worst => iv.nu_hi,
                };
                let expect = ((2.0 * iv.rate).exp2() - 1.0) * (nu + acc);
                prop_assert_eq!(lp, expect, "layer power deviates from the recursion");
                acc += lp;
            }
        }
    }

    #[test]
    fn duality_exact_for_random_partitions(p in partition()) {
        let report = verify_duality(&p).unwrap();
        prop_assert!(report.relative_gap <= 1e-9, "gap {}", report.relative_gap);
    }

    #[test]
    fn totals_scale_linearly_with_noise(p in partition(), c in 0.1f64..10.0) {
        let scaled = Partition::new(
            p.intervals()
                .iter()
                .map(|iv| Interval {
                    nu_lo: c * iv.nu_lo,
                    nu_hi: c * iv.nu_hi,
                    rate: iv.rate,
                })
                .collect(),
        )
        .unwrap();
        let t = downlink_allocation(&p, Side::Worst).unwrap().total_power;
        let ts = downlink_allocation(&scaled, Side::Worst).unwrap().total_power;
        prop_assert!(rel(ts, (c * t).max(1e-300)) < 1e-9 || t == 0.0);
        let u = uplink_allocation(&p).unwrap().total_power;
        let us = uplink_allocation(&scaled).unwrap().total_power;
        prop_assert!(rel(us, (c * u).max(1e-300)) < 1e-9 || u == 0.0);
    }

    #[test]
    fn incomplete_gamma_complement(a in 0.2f64..6.0, x in 0.0f64..30.0) {
        let lo = lower_incomplete_gamma(a, x).unwrap();
        let hi = upper_incomplete_gamma(a, x).unwrap();
        prop_assert!(rel(lo + hi, gamma(a)) < 1e-11);
        // monotone in x
        let lo2 = lower_incomplete_gamma(a, x + 0.1).unwrap();
        prop_assert!(lo2 >= lo);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sandwich_brackets_min_power(
        alpha in 0.8f64..6.0,
        nu_edge in 0.1f64..10.0,
        eta in 0.05f64..4.0,
        k in 1usize..200,
    ) {
        let d = NoiseDistribution::disk(alpha, nu_edge).unwrap();
        let eta_s = SpectralEfficiency::from_nats(eta).unwrap();
        let exact = min_power(&d, eta_s).unwrap();
        let (lo, hi) = sandwich_bounds(&d, eta_s, k).unwrap();
        prop_assert!(lo <= exact * (1.0 + 1e-9), "lower bound violated");
        prop_assert!(hi >= exact * (1.0 - 1e-9), "upper bound violated");
    }
}
