//! Physical cell description and the equivalent-noise distribution.
//!
//! A user at radius r sees the transmitted signal through a power-law gain
//! h(r) = h0 · r^(−α), which is equivalent to an AWGN channel with noise
//! ν(r) = σ²/h(r). Every capacity computation in the crate consumes only
//! the distribution of ν over the user (or traffic) density: its ccdf
//! G_ν(ν) — the fraction of users at least ν noisy — and the pdf
//! f_ν = −G_ν′. For a uniform disk the distribution is analytic,
//! G_ν(ν) = 1 − (ν/ν_R)^(2/α); anything else is tabulated on a geometric
//! grid and interpolated with a monotone cubic.

use crate::error::{Error, Result, ResultExt};
use crate::numerics::{integrate, MonotoneCubic, QuadratureSpec};

/// Power-law pathloss h(r) = h0 · r^(−α).
#[derive(Debug, Clone, Copy)]
pub struct PathlossModel {
    h0: f64,
    alpha: f64,
}

impl PathlossModel {
    pub fn new(h0: f64, alpha: f64) -> Result<Self> {
        if !(h0 > 0.0) || !h0.is_finite() {
            return Err(Error::domain(
                "PathlossModel::new",
                format!("reference gain h0 = {h0} must be > 0"),
            ));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::domain(
                "PathlossModel::new",
                format!("attenuation exponent alpha = {alpha} must be > 0"),
            ));
        }
        Ok(PathlossModel { h0, alpha })
    }

    /// Channel gain at radius r > 0; strictly decreasing in r.
    pub fn gain(&self, r: f64) -> f64 {
        self.h0 * r.powf(-self.alpha)
    }

    pub fn h0(&self) -> f64 {
        self.h0
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Radial user (or traffic) density profile on the disk.
#[derive(Debug, Clone)]
pub enum RadialDensity {
    /// Constant density (users/m² or 1/m²).
    Uniform { u0: f64 },
    /// Piecewise-linear radial profile given as (radius, density) samples.
    /// Repeated radii encode jumps; density outside the sampled range is 0.
    Table { points: Vec<(f64, f64)> },
}

impl RadialDensity {
    fn validate(&self, radius: f64) -> Result<()> {
        match self {
            RadialDensity::Uniform { u0 } => {
                if !(u0 > &0.0) || !u0.is_finite() {
                    return Err(Error::domain(
                        "RadialDensity",
                        format!("uniform density u0 = {u0} must be > 0"),
                    ));
                }
            }
            RadialDensity::Table { points } => {
                if points.len() < 2 {
                    return Err(Error::domain(
                        "RadialDensity",
                        "tabulated density needs at least two (radius, density) points",
                    ));
                }
                for w in points.windows(2) {
                    if w[0].0 > w[1].0 {
                        return Err(Error::domain(
                            "RadialDensity",
                            "tabulated density radii must be non-decreasing",
                        ));
                    }
                }
                for &(r, u) in points {
                    if !(0.0..=radius).contains(&r) {
                        return Err(Error::domain(
                            "RadialDensity",
                            format!("table radius {r} outside the cell [0, {radius}]"),
                        ));
                    }
                    if u < 0.0 || !u.is_finite() {
                        return Err(Error::domain(
                            "RadialDensity",
                            format!("table density {u} must be finite and >= 0"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// ∫₀^r u(s) · 2πs ds, closed form per linear segment.
    fn cumulative_mass(&self, r: f64, radius: f64) -> f64 {
        let r = r.clamp(0.0, radius);
        match self {
            RadialDensity::Uniform { u0 } => u0 * std::f64::consts::PI * r * r,
            RadialDensity::Table { points } => {
                let mut mass = 0.0;
                for w in points.windows(2) {
                    let (r0, u0) = w[0];
                    let (r1, u1) = w[1];
                    if r0 >= r || r1 <= r0 {
                        if r0 >= r {
                            break;
                        }
                        continue;
                    }
                    let hi = r1.min(r);
                    mass += segment_mass(r0, u0, r1, u1, hi);
                }
                2.0 * std::f64::consts::PI * mass
            }
        }
    }

    fn total_mass(&self, radius: f64) -> f64 {
        match self {
            RadialDensity::Uniform { u0 } => u0 * std::f64::consts::PI * radius * radius,
            RadialDensity::Table { .. } => self.cumulative_mass(radius, radius),
        }
    }

    /// Radial support [r_lo, r_hi] carrying positive mass.
    fn support(&self, radius: f64) -> (f64, f64) {
        match self {
            RadialDensity::Uniform { .. } => (0.0, radius),
            RadialDensity::Table { points } => {
                let mut lo = radius;
                let mut hi = 0.0f64;
                for w in points.windows(2) {
                    let (r0, u0) = w[0];
                    let (r1, u1) = w[1];
                    if r1 > r0 && (u0 > 0.0 || u1 > 0.0) {
                        lo = lo.min(r0);
                        hi = hi.max(r1);
                    }
                }
                (lo.min(hi), hi.max(lo))
            }
        }
    }
}

/// ∫_{r0}^{hi} s · u(s) ds with u linear between (r0, u0) and (r1, u1).
fn segment_mass(r0: f64, u0: f64, r1: f64, u1: f64, hi: f64) -> f64 {
    let slope = (u1 - u0) / (r1 - r0);
    let quad = (hi * hi - r0 * r0) / 2.0;
    let cubic = (hi * hi * hi - r0 * r0 * r0) / 3.0 - r0 * quad;
    u0 * quad + slope * cubic
}

/// A single cell: geometry, pathloss, noise floor, power budget, and the
/// user density it must serve.
#[derive(Debug, Clone)]
pub struct Scenario {
    radius: f64,
    pathloss: PathlossModel,
    sigma2: f64,
    power_budget: f64,
    density: RadialDensity,
    total_users: f64,
}

impl Scenario {
    /// Relative tolerance for the density ↔ total_users consistency check.
    const UNIFORM_CONSISTENCY: f64 = 1e-9;
    const TABLE_CONSISTENCY: f64 = 1e-6;

    pub fn new(
        radius: f64,
        pathloss: PathlossModel,
        sigma2: f64,
        power_budget: f64,
        density: RadialDensity,
        total_users: f64,
    ) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::domain(
                "Scenario::new",
                format!("radius = {radius} must be > 0"),
            ));
        }
        if !(sigma2 > 0.0) || !sigma2.is_finite() {
            return Err(Error::domain(
                "Scenario::new",
                format!("noise variance sigma2 = {sigma2} must be > 0"),
            ));
        }
        if !(power_budget > 0.0) || !power_budget.is_finite() {
            return Err(Error::domain(
                "Scenario::new",
                format!("power_budget = {power_budget} must be > 0"),
            ));
        }
        if !(total_users > 0.0) || !total_users.is_finite() {
            return Err(Error::domain(
                "Scenario::new",
                format!("total_users = {total_users} must be > 0"),
            ));
        }
        density.validate(radius)?;
        let mass = density.total_mass(radius);
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::domain(
                "Scenario::new",
                "density integrates to zero or diverges over the cell",
            ));
        }
        let tol = match density {
            RadialDensity::Uniform { .. } => Self::UNIFORM_CONSISTENCY,
            RadialDensity::Table { .. } => Self::TABLE_CONSISTENCY,
        };
        if ((mass - total_users) / total_users).abs() > tol {
            return Err(Error::domain(
                "Scenario::new",
                format!(
                    "density integrates to {mass} users but total_users = {total_users} \
                     (relative mismatch above {tol:.0e})"
                ),
            ));
        }
        Ok(Scenario {
            radius,
            pathloss,
            sigma2,
            power_budget,
            density,
            total_users,
        })
    }

    /// Uniform-density cell with u0 derived from the user count.
    pub fn uniform_disk(
        radius: f64,
        pathloss: PathlossModel,
        sigma2: f64,
        power_budget: f64,
        total_users: f64,
    ) -> Result<Self> {
        let u0 = total_users / (std::f64::consts::PI * radius * radius);
        Scenario::new(
            radius,
            pathloss,
            sigma2,
            power_budget,
            RadialDensity::Uniform { u0 },
            total_users,
        )
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn pathloss(&self) -> &PathlossModel {
        &self.pathloss
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn power_budget(&self) -> f64 {
        self.power_budget
    }

    pub fn density(&self) -> &RadialDensity {
        &self.density
    }

    pub fn total_users(&self) -> f64 {
        self.total_users
    }

    pub fn is_uniform_density(&self) -> bool {
        matches!(self.density, RadialDensity::Uniform { .. })
    }

    /// Equivalent noise ν(r) = σ²/h(r) = (σ²/h0) · r^α; strictly increasing.
    pub fn noise_at(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || r > self.radius {
            return Err(Error::domain(
                "noise_at",
                format!("radius {r} outside the cell (0, {}]", self.radius),
            ));
        }
        Ok(self.sigma2 / self.pathloss.gain(r))
    }

    /// Equivalent noise at the cell edge, ν_R.
    pub fn edge_noise(&self) -> f64 {
        self.sigma2 / self.pathloss.gain(self.radius)
    }

    /// Radius at which the equivalent noise equals ν (inverse of `noise_at`).
    fn radius_of_noise(&self, nu: f64) -> f64 {
        (nu * self.pathloss.h0() / self.sigma2).powf(1.0 / self.pathloss.alpha())
    }

    /// Tabulates the equivalent-noise ccdf of the user density by exact
    /// radial mass integration on a geometric ν grid.
    pub fn noise_distribution(&self, grid_size: usize) -> Result<NoiseDistribution> {
        tabulate_noise_ccdf(self, &self.density, self.total_users(), grid_size)
    }
}

/// A requested traffic pattern: total sum rate plus its normalized spatial
/// shape f_ρ (1/m², integrating to 1 over the cell).
#[derive(Debug, Clone)]
pub struct TrafficProfile {
    rho_total: f64,
    shape: RadialDensity,
}

impl TrafficProfile {
    pub fn new(rho_total: f64, shape: RadialDensity) -> Result<Self> {
        if !(rho_total >= 0.0) || !rho_total.is_finite() {
            return Err(Error::domain(
                "TrafficProfile::new",
                format!("sum rate rho_total = {rho_total} must be >= 0"),
            ));
        }
        Ok(TrafficProfile { rho_total, shape })
    }

    /// Uniform traffic shape on a disk of the given radius.
    pub fn uniform_on_disk(rho_total: f64, radius: f64) -> Result<Self> {
        let u0 = 1.0 / (std::f64::consts::PI * radius * radius);
        TrafficProfile::new(rho_total, RadialDensity::Uniform { u0 })
    }

    pub fn rho_total(&self) -> f64 {
        self.rho_total
    }

    pub fn shape(&self) -> &RadialDensity {
        &self.shape
    }
}

/// Equivalent-noise distribution of a traffic shape over the scenario's
/// geometry (the user density is ignored; the traffic shape is the weight).
pub fn traffic_noise_distribution(
    profile: &TrafficProfile,
    scenario: &Scenario,
    grid_size: usize,
) -> Result<NoiseDistribution> {
    profile.shape.validate(scenario.radius())?;
    let mass = profile.shape.total_mass(scenario.radius());
    if (mass - 1.0).abs() > 1e-8 {
        return Err(Error::domain(
            "traffic_noise_distribution",
            format!("traffic shape integrates to {mass}, expected 1 within 1e-8"),
        ));
    }
    tabulate_noise_ccdf(scenario, &profile.shape, mass, grid_size)
}

/// Relative width of the leading grid cell when the support reaches ν = 0.
const NU_FLOOR_REL: f64 = 1e-15;

fn tabulate_noise_ccdf(
    scenario: &Scenario,
    weight: &RadialDensity,
    total: f64,
    grid_size: usize,
) -> Result<NoiseDistribution> {
    if grid_size < 16 {
        return Err(Error::domain(
            "noise_distribution",
            format!("grid_size = {grid_size} must be >= 16"),
        ));
    }
    let (r_lo, r_hi) = weight.support(scenario.radius());
    if !(r_hi > r_lo) {
        return Err(Error::domain(
            "noise_distribution",
            "density support is empty",
        ));
    }
    let nu_hi = scenario.sigma2() / scenario.pathloss().gain(r_hi);
    let nu_lo = if r_lo > 0.0 {
        scenario.sigma2() / scenario.pathloss().gain(r_lo)
    } else {
        0.0
    };

    let mut knots = Vec::with_capacity(grid_size);
    if nu_lo > 0.0 {
        geomspace_into(nu_lo, nu_hi, grid_size, &mut knots);
    } else {
        knots.push(0.0);
        geomspace_into(nu_hi * NU_FLOOR_REL, nu_hi, grid_size - 1, &mut knots);
    }

    let mut gs = Vec::with_capacity(knots.len());
    let mut prev = 1.0f64;
    for (i, &nu) in knots.iter().enumerate() {
        let g = if i == 0 {
            1.0
        } else if i == knots.len() - 1 {
            0.0
        } else {
            let r = scenario.radius_of_noise(nu);
            let g = 1.0 - weight.cumulative_mass(r, scenario.radius()) / total;
            g.clamp(0.0, 1.0).min(prev)
        };
        prev = g;
        gs.push(g);
    }

    NoiseDistribution::from_ccdf_table(knots, gs)
}

fn geomspace_into(lo: f64, hi: f64, n: usize, out: &mut Vec<f64>) {
    let ratio = (hi / lo).ln() / (n - 1) as f64;
    for i in 0..n {
        let v = if i == n - 1 {
            hi
        } else {
            lo * (ratio * i as f64).exp()
        };
        if out.last().is_none_or(|&last| v > last) {
            out.push(v);
        }
    }
}

/// The 1-D equivalent-noise distribution every capacity computation consumes.
#[derive(Debug, Clone)]
pub struct NoiseDistribution {
    nu_min: f64,
    nu_max: f64,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    /// Uniform disk law: G(ν) = 1 − (ν/ν_R)^(2/α) on (0, ν_R].
    Disk { alpha: f64 },
    /// Flat on [nu_min, nu_max]; stands in for point masses.
    Uniform,
    /// Monotone-cubic interpolated ccdf.
    Tabulated { ccdf: MonotoneCubic },
}

/// Discriminant of [`NoiseDistribution`] construction paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseDistributionKind {
    AnalyticDisk,
    Uniform,
    Tabulated,
}

impl NoiseDistribution {
    /// Analytic distribution of a uniformly loaded disk with edge noise ν_R:
    /// G(ν) = 1 − (ν/ν_R)^(2/α), f(ν) = (2/(α ν_R)) (ν/ν_R)^(2/α − 1).
    ///
    /// The pdf carries the 1/ν_R normalization so that ∫ f dν = 1.
    pub fn disk(alpha: f64, nu_edge: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::domain(
                "disk_noise_distribution",
                format!("alpha = {alpha} must be > 0"),
            ));
        }
        if !(nu_edge > 0.0) || !nu_edge.is_finite() {
            return Err(Error::domain(
                "disk_noise_distribution",
                format!("nu_edge = {nu_edge} must be > 0"),
            ));
        }
        Ok(NoiseDistribution {
            nu_min: 0.0,
            nu_max: nu_edge,
            kind: Kind::Disk { alpha },
        })
    }

    /// Flat distribution on [nu_lo, nu_hi].
    pub fn uniform(nu_lo: f64, nu_hi: f64) -> Result<Self> {
        if !(nu_lo >= 0.0) || !(nu_hi > nu_lo) || !nu_hi.is_finite() {
            return Err(Error::domain(
                "NoiseDistribution::uniform",
                format!("need 0 <= nu_lo < nu_hi, got [{nu_lo}, {nu_hi}]"),
            ));
        }
        Ok(NoiseDistribution {
            nu_min: nu_lo,
            nu_max: nu_hi,
            kind: Kind::Uniform,
        })
    }

    /// Narrow flat distribution around ν0; the continuous stand-in for a
    /// point mass.
    pub fn narrow_uniform(nu0: f64, half_width: f64) -> Result<Self> {
        if !(nu0 > 0.0) || !(half_width > 0.0) || half_width > nu0 {
            return Err(Error::domain(
                "NoiseDistribution::narrow_uniform",
                format!("need 0 < half_width <= nu0, got nu0 = {nu0}, half_width = {half_width}"),
            ));
        }
        NoiseDistribution::uniform(nu0 - half_width, nu0 + half_width)
    }

    /// Point mass at ν0, widened to the default half-width 1e-6 · ν0.
    pub fn point_mass(nu0: f64) -> Result<Self> {
        NoiseDistribution::narrow_uniform(nu0, 1e-6 * nu0)
    }

    /// Builds a tabulated distribution from ccdf samples. The first sample
    /// must be 1 and the last 0 (within 1e-9); values must be non-increasing.
    pub fn from_ccdf_table(nus: Vec<f64>, gs: Vec<f64>) -> Result<Self> {
        if nus.len() != gs.len() || nus.len() < 2 {
            return Err(Error::domain(
                "from_ccdf_table",
                "need at least two (nu, G) samples of equal length",
            ));
        }
        if (gs[0] - 1.0).abs() > 1e-9 || gs[gs.len() - 1].abs() > 1e-9 {
            return Err(Error::domain(
                "from_ccdf_table",
                format!(
                    "ccdf endpoints must be 1 and 0 within 1e-9, got {} and {}",
                    gs[0],
                    gs[gs.len() - 1]
                ),
            ));
        }
        let mut gs = gs;
        let n = gs.len();
        gs[0] = 1.0;
        gs[n - 1] = 0.0;
        let mut prev = 1.0;
        for g in gs.iter_mut() {
            if *g > prev {
                if *g - prev > 1e-9 {
                    return Err(Error::domain(
                        "from_ccdf_table",
                        "ccdf samples must be non-increasing",
                    ));
                }
                *g = prev;
            }
            prev = *g;
        }
        let nu_min = nus[0];
        let nu_max = nus[n - 1];
        let ccdf = MonotoneCubic::new(nus, gs).ctx("from_ccdf_table")?;
        Ok(NoiseDistribution {
            nu_min,
            nu_max,
            kind: Kind::Tabulated { ccdf },
        })
    }

    pub fn nu_min(&self) -> f64 {
        self.nu_min
    }

    pub fn nu_max(&self) -> f64 {
        self.nu_max
    }

    pub fn kind(&self) -> NoiseDistributionKind {
        match self.kind {
            Kind::Disk { .. } => NoiseDistributionKind::AnalyticDisk,
            Kind::Uniform => NoiseDistributionKind::Uniform,
            Kind::Tabulated { .. } => NoiseDistributionKind::Tabulated,
        }
    }

    /// (α, ν_R) when this is the analytic disk law.
    pub fn disk_params(&self) -> Option<(f64, f64)> {
        match self.kind {
            Kind::Disk { alpha } => Some((alpha, self.nu_max)),
            _ => None,
        }
    }

    /// ccdf G_ν(ν): fraction of users with equivalent noise ≥ ν.
    pub fn ccdf(&self, nu: f64) -> f64 {
        if nu <= self.nu_min {
            return 1.0;
        }
        if nu >= self.nu_max {
            return 0.0;
        }
        match &self.kind {
            Kind::Disk { alpha } => 1.0 - (nu / self.nu_max).powf(2.0 / alpha),
            Kind::Uniform => (self.nu_max - nu) / (self.nu_max - self.nu_min),
            Kind::Tabulated { ccdf } => ccdf.eval(nu).clamp(0.0, 1.0),
        }
    }

    /// pdf f_ν(ν) = −dG_ν/dν; zero outside the support.
    pub fn pdf(&self, nu: f64) -> f64 {
        if nu < self.nu_min || nu > self.nu_max {
            return 0.0;
        }
        match &self.kind {
            Kind::Disk { alpha } => {
                let e = 2.0 / alpha;
                e / self.nu_max * (nu / self.nu_max).powf(e - 1.0)
            }
            Kind::Uniform => 1.0 / (self.nu_max - self.nu_min),
            Kind::Tabulated { ccdf } => (-ccdf.derivative(nu)).max(0.0),
        }
    }

    /// Noise level at ccdf value g, i.e. G_ν(quantile(g)) = g.
    pub fn quantile(&self, g: f64) -> f64 {
        let g = g.clamp(0.0, 1.0);
        match &self.kind {
            Kind::Disk { alpha } => self.nu_max * (1.0 - g).powf(alpha / 2.0),
            Kind::Uniform => self.nu_max - g * (self.nu_max - self.nu_min),
            Kind::Tabulated { ccdf } => {
                let (xs, ys) = (ccdf.x(), ccdf.y());
                // Bracketing cell by the knot ccdf values (non-increasing).
                let idx = ys.partition_point(|&y| y > g);
                if idx == 0 {
                    return xs[0];
                }
                if idx >= xs.len() {
                    return xs[xs.len() - 1];
                }
                let (mut lo, mut hi) = (xs[idx - 1], xs[idx]);
                for _ in 0..100 {
                    let mid = 0.5 * (lo + hi);
                    if self.ccdf(mid) > g {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo <= f64::EPSILON * hi.abs().max(1e-300) {
                        break;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    }

    /// Mean equivalent noise `E[ν]`.
    pub fn mean(&self) -> Result<f64> {
        self.integrate_weighted(|nu, _| nu, &QuadratureSpec::default())
    }

    /// ∫ w(ν, G_ν(ν)) · f_ν(ν) dν over the support.
    ///
    /// The analytic kinds integrate in the ccdf variable, which absorbs the
    /// ν → 0 pdf singularity of the disk law (α > 2); tabulated kinds
    /// integrate cell by cell where the interpolant is polynomial.
    pub fn integrate_weighted<W: Fn(f64, f64) -> f64>(
        &self,
        w: W,
        spec: &QuadratureSpec,
    ) -> Result<f64> {
        match &self.kind {
            Kind::Disk { alpha } => {
                // t = (ν/ν_R)^(2/α) turns f dν into dt with G = 1 − t.
                let nu_r = self.nu_max;
                let half_alpha = alpha / 2.0;
                integrate(
                    |t| w(nu_r * t.powf(half_alpha), 1.0 - t),
                    0.0,
                    1.0,
                    spec,
                )
            }
            Kind::Uniform => {
                let (lo, hi) = (self.nu_min, self.nu_max);
                integrate(|g| w(hi - g * (hi - lo), g), 0.0, 1.0, spec)
            }
            Kind::Tabulated { ccdf } => {
                let xs = ccdf.x();
                let cells = xs.len() - 1;
                let cell_spec = QuadratureSpec {
                    abs_tol: (spec.abs_tol / cells as f64).max(1e-307),
                    rel_tol: spec.rel_tol,
                    max_depth: spec.max_depth.min(20),
                };
                let mut total = 0.0;
                for i in 0..cells {
                    let (a, b) = (xs[i], xs[i + 1]);
                    if b <= a {
                        continue;
                    }
                    total += integrate(|nu| w(nu, self.ccdf(nu)) * self.pdf(nu), a, b, &cell_spec)
                        .ctx(format!("integrate_weighted cell [{a:.3e}, {b:.3e}]"))?;
                }
                Ok(total)
            }
        }
    }

    /// Two-column CSV (`nu,G`) of [`Self::ccdf_table`].
    pub fn ccdf_csv(&self, n: usize) -> String {
        let mut out = String::from("nu,G\n");
        for (nu, g) in self.ccdf_table(n) {
            out.push_str(&format!(
                "{},{}\n",
                crate::sweep::fmt_g12(nu),
                crate::sweep::fmt_g12(g)
            ));
        }
        out
    }

    /// (ν, G) sample table, e.g. for CSV export. Tabulated distributions
    /// return their knots; analytic ones are sampled at `n` points.
    pub fn ccdf_table(&self, n: usize) -> Vec<(f64, f64)> {
        match &self.kind {
            Kind::Tabulated { ccdf } => ccdf
                .x()
                .iter()
                .zip(ccdf.y())
                .map(|(&nu, &g)| (nu, g))
                .collect(),
            _ => {
                let n = n.max(2);
                (0..n)
                    .map(|i| {
                        let nu = self.nu_min
                            + (self.nu_max - self.nu_min) * i as f64 / (n - 1) as f64;
                        (nu, self.ccdf(nu))
                    })
                    .collect()
            }
        }
    }
}
