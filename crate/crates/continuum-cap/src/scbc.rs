//! Downlink spatial-continuum broadcast capacity.
//!
//! The minimal transmit power that serves every user of a noise
//! distribution at system spectral efficiency η_s (nats per channel use) is
//!
//! ```text
//! P̃_m = 2η_s ∫ ν f_ν(ν) e^(2η_s G_ν(ν)) dν
//! ```
//!
//! evaluated here three independent ways: adaptive quadrature
//! ([`min_power`]), the equivalent accumulated-power ODE
//! Π̇(ν) = 2η_s f_ν(ν)(ν + Π) ([`min_power_ode`]), and — on the uniform
//! disk — the closed form ν_R e^(2η_s) (2η_s)^(−α/2) γ(1 + α/2, 2η_s)
//! ([`disk_min_power_closed`]). The uniform capacity and the
//! access-region boundary invert this strictly increasing map by bisection.
//!
//! Rates follow the real-channel convention c = ½·log₂(1 + γ), so the 2η_s
//! factors appear exactly as in the power expression above.

use crate::error::{Error, Result, ResultExt};
use crate::numerics::{
    bisect_monotone, lower_incomplete_gamma, solve_ode, QuadratureSpec, RootBracket,
};
use crate::scenario::{NoiseDistribution, NoiseDistributionKind};

/// ln 2, the bits ↔ nats conversion.
pub const LN_2: f64 = std::f64::consts::LN_2;

/// Relative tolerance on power when inverting min_power.
const POWER_REL_TOL: f64 = 1e-8;
/// Spectral-efficiency cap for bracket growth during inversion.
const ETA_CAP: f64 = 64.0;
/// Local tolerance of the ODE cross-check path.
const ODE_TOL: f64 = 1e-11;

/// System spectral efficiency η_s = ln2 · I₀ · U_T, in nats per channel use.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SpectralEfficiency(f64);

impl SpectralEfficiency {
    pub fn from_nats(eta: f64) -> Result<Self> {
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::domain(
                "SpectralEfficiency",
                format!("eta_s = {eta} must be finite and >= 0"),
            ));
        }
        Ok(SpectralEfficiency(eta))
    }

    /// From a per-user rate I₀ (bits/channel use) and the user count.
    pub fn from_per_user_rate(i0_bits: f64, total_users: f64) -> Result<Self> {
        SpectralEfficiency::from_nats(LN_2 * i0_bits * total_users)
    }

    /// From a sum rate ρ_T in bits per channel use.
    pub fn from_sum_rate(rho_t_bits: f64) -> Result<Self> {
        SpectralEfficiency::from_nats(LN_2 * rho_t_bits)
    }

    pub fn nats(self) -> f64 {
        self.0
    }

    /// Sum rate in bits per channel use, η_s / ln2.
    pub fn sum_rate_bits(self) -> f64 {
        self.0 / LN_2
    }

    /// Per-user rate I₀ in bits per channel use.
    pub fn per_user_rate_bits(self, total_users: f64) -> f64 {
        self.0 / (LN_2 * total_users)
    }
}

/// Outcome of a capacity computation at a fixed power budget.
#[derive(Debug, Clone, Copy)]
pub struct CapacityResult {
    /// Per-user rate I₀ in bits per channel use.
    pub i0: f64,
    /// System spectral efficiency, consistent with `i0` via η = ln2·I₀·U_T.
    pub eta_s: SpectralEfficiency,
    /// The power budget this capacity saturates.
    pub min_power: f64,
    /// Edge SNR P/ν_R (disk distributions only).
    pub edge_snr: Option<f64>,
}

/// Minimal power serving spectral efficiency η_s over the distribution
/// (Gaussian-SCBC minimal power, quadrature form).
pub fn min_power(dist: &NoiseDistribution, eta_s: SpectralEfficiency) -> Result<f64> {
    let eta = eta_s.nats();
    if eta == 0.0 {
        return Ok(0.0);
    }
    dist.integrate_weighted(
        |nu, g| 2.0 * eta * nu * (2.0 * eta * g).exp(),
        &QuadratureSpec::default(),
    )
    .ctx("min_power")
}

/// Minimal power by integrating the accumulated-power ODE
/// Π̇(ν) = 2η_s f_ν(ν)(ν + Π(ν)) from Π(ν_m) = 0 — the independent
/// cross-check of [`min_power`].
pub fn min_power_ode(dist: &NoiseDistribution, eta_s: SpectralEfficiency) -> Result<f64> {
    let eta = eta_s.nats();
    if eta == 0.0 {
        return Ok(0.0);
    }
    match dist.kind() {
        NoiseDistributionKind::AnalyticDisk => {
            // In the mass variable t = (ν/ν_R)^(2/α) the pdf is flat:
            // dΠ/dt = 2η (ν_R t^(α/2) + Π), smooth even when f_ν blows up.
            let (alpha, nu_r) = dist.disk_params().expect("disk kind");
            let half_alpha = alpha / 2.0;
            solve_ode(
                |t, p| 2.0 * eta * (nu_r * t.powf(half_alpha) + p),
                0.0,
                0.0,
                1.0,
                ODE_TOL,
            )
            .ctx("min_power_ode")
        }
        NoiseDistributionKind::Uniform => {
            let width = dist.nu_max() - dist.nu_min();
            solve_ode(
                |nu, p| 2.0 * eta / width * (nu + p),
                dist.nu_min(),
                0.0,
                dist.nu_max(),
                ODE_TOL,
            )
            .ctx("min_power_ode")
        }
        NoiseDistributionKind::Tabulated => {
            // Integrate cell by cell so the stepper never crosses a knot.
            let knots: Vec<f64> = dist.ccdf_table(0).iter().map(|&(nu, _)| nu).collect();
            let mut p = 0.0;
            for w in knots.windows(2) {
                if w[1] <= w[0] {
                    continue;
                }
                p = solve_ode(
                    |nu, p| 2.0 * eta * dist.pdf(nu) * (nu + p),
                    w[0],
                    p,
                    w[1],
                    ODE_TOL,
                )
                .ctx("min_power_ode")?;
            }
            Ok(p)
        }
    }
}

/// Closed-form minimal power of the uniform disk,
/// ν_R e^(2η_s) (2η_s)^(−α/2) γ(1 + α/2, 2η_s), which matches the
/// quadrature of [`min_power`] on [`NoiseDistribution::disk`]. The
/// equivalent hypergeometric form is ν_R (2η_s/(1 + α/2)) ₁F₁(1; 2 + α/2; 2η_s).
pub fn disk_min_power_closed(
    alpha: f64,
    nu_edge: f64,
    eta_s: SpectralEfficiency,
) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::domain(
            "disk_min_power_closed",
            format!("alpha = {alpha} must be > 0"),
        ));
    }
    let eta = eta_s.nats();
    if eta == 0.0 {
        return Ok(0.0);
    }
    let x = 2.0 * eta;
    let g = lower_incomplete_gamma(1.0 + alpha / 2.0, x).ctx("disk_min_power_closed")?;
    Ok(nu_edge * x.exp() * x.powf(-alpha / 2.0) * g)
}

/// Largest spectral efficiency servable within `power`, found by growing a
/// bracket geometrically and bisecting min_power(η) = power to the given
/// relative tolerance. Shared by the capacity and sum-rate inversions.
pub(crate) fn invert_min_power_with<F: Fn(f64) -> Result<f64>>(
    power_of_eta: F,
    power: f64,
    rel_tol: f64,
) -> Result<f64> {
    // Grow the bracket until the target power is enclosed.
    let mut eta_hi = 1.0;
    loop {
        if power_of_eta(eta_hi)? >= power {
            break;
        }
        eta_hi *= 2.0;
        if eta_hi > ETA_CAP {
            return Err(Error::PowerUnreachable {
                target: power,
                eta_cap: ETA_CAP,
            });
        }
    }
    // Bisect on the power ratio so the acceptance criterion is relative.
    let bracket = RootBracket::new(0.0, eta_hi, rel_tol)?;
    let failure = std::cell::RefCell::new(None);
    let ratio = |eta: f64| match power_of_eta(eta) {
        Ok(p) => p / power,
        Err(e) => {
            *failure.borrow_mut() = Some(e);
            f64::NAN
        }
    };
    let res = bisect_monotone(ratio, 1.0, &bracket);
    if let Some(e) = failure.into_inner() {
        return Err(e.context("invert_min_power"));
    }
    res.ctx("invert_min_power")
}

/// Uniform capacity: the largest per-user rate I₀ that `power` can serve
/// for `total_users`, by inverting the minimal-power map.
pub fn uniform_capacity(
    dist: &NoiseDistribution,
    power: f64,
    total_users: f64,
) -> Result<CapacityResult> {
    uniform_capacity_with_tol(dist, power, total_users, POWER_REL_TOL)
}

/// [`uniform_capacity`] with an explicit relative power tolerance.
pub fn uniform_capacity_with_tol(
    dist: &NoiseDistribution,
    power: f64,
    total_users: f64,
    rel_tol: f64,
) -> Result<CapacityResult> {
    if !(power >= 0.0) || !power.is_finite() {
        return Err(Error::domain(
            "uniform_capacity",
            format!("power = {power} must be finite and >= 0"),
        ));
    }
    if !(total_users > 0.0) {
        return Err(Error::domain(
            "uniform_capacity",
            format!("total_users = {total_users} must be > 0"),
        ));
    }
    let edge_snr = dist
        .disk_params()
        .map(|(_, nu_r)| power / nu_r);
    if power == 0.0 {
        return Ok(CapacityResult {
            i0: 0.0,
            eta_s: SpectralEfficiency::from_nats(0.0)?,
            min_power: 0.0,
            edge_snr,
        });
    }
    let eta = invert_min_power_with(
        |eta| min_power(dist, SpectralEfficiency::from_nats(eta)?),
        power,
        rel_tol,
    )
    .ctx("uniform_capacity")?;
    let eta_s = SpectralEfficiency::from_nats(eta)?;
    Ok(CapacityResult {
        i0: eta_s.per_user_rate_bits(total_users),
        eta_s,
        min_power: power,
        edge_snr,
    })
}

/// Boundary of the access capacity region along a traffic shape: the
/// maximal sum rate ρ_T (bits/channel use) whose minimal serving power
/// stays within the budget.
pub fn max_sum_rate(dist: &NoiseDistribution, power_budget: f64) -> Result<f64> {
    max_sum_rate_with_tol(dist, power_budget, POWER_REL_TOL)
}

/// [`max_sum_rate`] with an explicit relative power tolerance.
pub fn max_sum_rate_with_tol(
    dist: &NoiseDistribution,
    power_budget: f64,
    rel_tol: f64,
) -> Result<f64> {
    if !(power_budget >= 0.0) || !power_budget.is_finite() {
        return Err(Error::domain(
            "max_sum_rate",
            format!("power budget = {power_budget} must be finite and >= 0"),
        ));
    }
    if power_budget == 0.0 {
        return Ok(0.0);
    }
    let eta = invert_min_power_with(
        |eta| min_power(dist, SpectralEfficiency::from_nats(eta)?),
        power_budget,
        rel_tol,
    )
    .ctx("max_sum_rate")?;
    Ok(eta / LN_2)
}
