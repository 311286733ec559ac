//! Sweeps over operating points and their CSV form.
//!
//! Capacity columns are reported normalized (I₀·U_T, bits per channel use)
//! against the edge SNR γ_R = P/ν_R in dB — the total received power at the
//! cell edge over the noise there, not the per-user SINR. Powers cross the
//! CLI boundary in absolute units; internally everything runs in units of
//! the edge noise.

use crate::config::CellConfig;
use crate::error::{Error, Result, ResultExt};
use crate::partition::{bounded_capacity_with_tol, time_sharing_capacity, Side};
use crate::scbc::{
    disk_min_power_closed, max_sum_rate_with_tol, min_power, min_power_ode,
    uniform_capacity_with_tol, SpectralEfficiency,
};
use crate::scenario::NoiseDistribution;

/// Grid size used when a non-uniform density must be tabulated.
const DEFAULT_GRID: usize = 2048;

/// Formats with 12 significant digits; the CSV number format.
pub fn fmt_g12(v: f64) -> String {
    format!("{v:.11e}")
}

/// An `a:b:n` sweep axis.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if !(start < stop) || !start.is_finite() || !stop.is_finite() {
            return Err(Error::domain(
                "GridSpec",
                format!("need start < stop, got {start}:{stop}"),
            ));
        }
        if count < 2 {
            return Err(Error::domain(
                "GridSpec",
                format!("need count >= 2, got {count}"),
            ));
        }
        Ok(GridSpec { start, stop, count })
    }

    /// Parses `"a:b:n"`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::domain(
                "GridSpec",
                format!("expected start:stop:count, got \"{text}\""),
            ));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| Error::domain("GridSpec", format!("bad start \"{}\"", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| Error::domain("GridSpec", format!("bad stop \"{}\"", parts[1])))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| Error::domain("GridSpec", format!("bad count \"{}\"", parts[2])))?;
        GridSpec::new(start, stop, count)
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count)
            .map(|i| {
                self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
            })
            .collect()
    }
}

/// What a sweep computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    UniformCapacity,
    MinPower,
    Bounds,
    Region,
    Baseline,
}

/// A full sweep request.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub quantity: Quantity,
    /// Edge SNR axis in dB (all quantities except MinPower).
    pub snr_db: GridSpec,
    /// Spectral-efficiency axis (MinPower).
    pub eta: GridSpec,
    /// Subset counts for the Bounds quantity.
    pub subset_counts: Vec<usize>,
    /// Relative tolerance of the power inversions.
    pub tol: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            quantity: Quantity::UniformCapacity,
            snr_db: GridSpec {
                start: -10.0,
                stop: 40.0,
                count: 51,
            },
            eta: GridSpec {
                start: 0.05,
                stop: 5.0,
                count: 50,
            },
            subset_counts: vec![3, 10, 25],
            tol: 1e-8,
        }
    }
}

impl SweepSpec {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::domain("SweepSpec", "tol must be in (0, 1)"));
        }
        if self.quantity == Quantity::Bounds {
            if self.subset_counts.is_empty() {
                return Err(Error::domain("SweepSpec", "bounds needs subset counts"));
            }
            if self.subset_counts.iter().any(|&k| k < 1) {
                return Err(Error::domain("SweepSpec", "subset counts must be >= 1"));
            }
        }
        Ok(())
    }
}

/// One named output column.
#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub values: Vec<f64>,
}

/// Sweep results: an x axis plus one column per computed series, with the
/// metadata echoed into the CSV header comments.
#[derive(Debug, Clone)]
pub struct CapacityCurve {
    pub x_label: String,
    pub x: Vec<f64>,
    pub series: Vec<Series>,
    pub metadata: Vec<(String, String)>,
}

impl CapacityCurve {
    pub fn new(x_label: impl Into<String>, x: Vec<f64>) -> Self {
        CapacityCurve {
            x_label: x_label.into(),
            x,
            series: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn push_series(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        if values.len() != self.x.len() {
            return Err(Error::domain(
                "CapacityCurve",
                "series length does not match the x axis",
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain(
                "CapacityCurve",
                "series contains non-finite values",
            ));
        }
        self.series.push(Series {
            name: name.into(),
            values,
        });
        Ok(())
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.metadata.push((key.into(), value.into()));
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty() || self.series.is_empty()
    }

    /// Deterministic CSV: `#`-prefixed metadata, a header row, then one row
    /// per grid point with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out.push_str(&self.x_label);
        for s in &self.series {
            out.push(',');
            out.push_str(&s.name);
        }
        out.push('\n');
        for (i, &x) in self.x.iter().enumerate() {
            out.push_str(&fmt_g12(x));
            for s in &self.series {
                out.push(',');
                out.push_str(&fmt_g12(s.values[i]));
            }
            out.push('\n');
        }
        out
    }
}

/// The noise distribution of a configured cell: analytic for uniform
/// densities, tabulated otherwise. Returned with ν_R for the SNR ↔ power
/// conversion.
pub fn cell_distribution(cfg: &CellConfig) -> Result<(NoiseDistribution, f64)> {
    let nu_r = cfg.scenario.edge_noise();
    let dist = if cfg.scenario.is_uniform_density() {
        NoiseDistribution::disk(cfg.scenario.pathloss().alpha(), nu_r)?
    } else {
        cfg.scenario.noise_distribution(DEFAULT_GRID)?
    };
    Ok((dist, nu_r))
}

/// Runs a curve-producing sweep.
pub fn run_sweep(cfg: &CellConfig, spec: &SweepSpec) -> Result<CapacityCurve> {
    spec.validate()?;
    let (dist, nu_r) = cell_distribution(cfg)?;
    let users = cfg.scenario.total_users();
    let scale = cfg.rate_convention.rate_scale();

    let mut curve = match spec.quantity {
        Quantity::MinPower => {
            let etas = spec.eta.values();
            let mut curve = CapacityCurve::new("eta_s", etas.clone());
            let mut quad = Vec::with_capacity(etas.len());
            let mut ode = Vec::with_capacity(etas.len());
            let mut closed = Vec::with_capacity(etas.len());
            let disk = dist.disk_params();
            for &h in &etas {
                let eta = SpectralEfficiency::from_nats(h)?;
                quad.push(min_power(&dist, eta)?);
                ode.push(min_power_ode(&dist, eta)?);
                if let Some((alpha, nu_edge)) = disk {
                    closed.push(disk_min_power_closed(alpha, nu_edge, eta)?);
                }
            }
            curve.push_series("min_power", quad)?;
            curve.push_series("min_power_ode", ode)?;
            if disk.is_some() {
                curve.push_series("min_power_closed", closed)?;
            }
            curve
        }
        Quantity::UniformCapacity => {
            let snrs = spec.snr_db.values();
            let mut curve = CapacityCurve::new("snr_db", snrs.clone());
            let mut cap = Vec::with_capacity(snrs.len());
            for &db in &snrs {
                let p = nu_r * 10f64.powf(db / 10.0);
                let c = uniform_capacity_with_tol(&dist, p, users, spec.tol)
                    .ctx(format!("snr {db} dB"))?;
                cap.push(scale * c.i0 * users);
            }
            curve.push_series("capacity", cap)?;
            curve
        }
        Quantity::Region => {
            let snrs = spec.snr_db.values();
            let mut curve = CapacityCurve::new("snr_db", snrs.clone());
            let mut rho = Vec::with_capacity(snrs.len());
            for &db in &snrs {
                let p = nu_r * 10f64.powf(db / 10.0);
                rho.push(scale * max_sum_rate_with_tol(&dist, p, spec.tol).ctx(format!("snr {db} dB"))?);
            }
            curve.push_series("max_sum_rate", rho)?;
            curve
        }
        Quantity::Baseline => {
            let snrs = spec.snr_db.values();
            let mut curve = CapacityCurve::new("snr_db", snrs.clone());
            let mut cap = Vec::with_capacity(snrs.len());
            let mut ts = Vec::with_capacity(snrs.len());
            let mut gain = Vec::with_capacity(snrs.len());
            for &db in &snrs {
                let p = nu_r * 10f64.powf(db / 10.0);
                let c = uniform_capacity_with_tol(&dist, p, users, spec.tol)?.i0;
                let t = time_sharing_capacity(&dist, p, users)?;
                cap.push(scale * c * users);
                ts.push(scale * t * users);
                gain.push(c / t - 1.0);
            }
            curve.push_series("capacity", cap)?;
            curve.push_series("timesharing", ts)?;
            curve.push_series("gain", gain)?;
            curve
        }
        Quantity::Bounds => {
            let snrs = spec.snr_db.values();
            let mut ks = spec.subset_counts.clone();
            ks.sort_unstable();
            ks.dedup();
            let mut curve = CapacityCurve::new("snr_db", snrs.clone());
            let mut exact = Vec::with_capacity(snrs.len());
            let mut per_k: Vec<(Vec<f64>, Vec<f64>)> = vec![Default::default(); ks.len()];
            let mut ts = Vec::with_capacity(snrs.len());
            for &db in &snrs {
                let p = nu_r * 10f64.powf(db / 10.0);
                exact.push(scale * uniform_capacity_with_tol(&dist, p, users, spec.tol)?.i0 * users);
                for (i, &k) in ks.iter().enumerate() {
                    let w = bounded_capacity_with_tol(&dist, p, users, k, Side::Worst, spec.tol)?;
                    let b = bounded_capacity_with_tol(&dist, p, users, k, Side::Best, spec.tol)?;
                    per_k[i].0.push(scale * w * users);
                    per_k[i].1.push(scale * b * users);
                }
                ts.push(scale * time_sharing_capacity(&dist, p, users)? * users);
            }
            curve.push_series("exact", exact)?;
            for (i, &k) in ks.iter().enumerate() {
                let (w, b) = std::mem::take(&mut per_k[i]);
                curve.push_series(format!("worst_K{k}"), w)?;
                curve.push_series(format!("best_K{k}"), b)?;
            }
            curve.push_series("timesharing", ts)?;
            curve
        }
    };

    annotate(&mut curve, cfg, spec);
    Ok(curve)
}

fn annotate(curve: &mut CapacityCurve, cfg: &CellConfig, spec: &SweepSpec) {
    let s = &cfg.scenario;
    curve.meta("tool", format!("continuum-cap {}", env!("CARGO_PKG_VERSION")));
    curve.meta(
        "scenario",
        format!(
            "radius_m={} alpha={} h0={} sigma2={} power_budget={} total_users={}",
            s.radius(),
            s.pathloss().alpha(),
            s.pathloss().h0(),
            s.sigma2(),
            s.power_budget(),
            s.total_users()
        ),
    );
    curve.meta("edge_noise", fmt_g12(s.edge_noise()));
    curve.meta(
        "convention",
        match cfg.rate_convention {
            crate::config::RateConvention::Complex => "complex (rates doubled)",
            crate::config::RateConvention::Real => "real (half-log2)",
        },
    );
    curve.meta("inversion_rel_tol", fmt_g12(spec.tol));
    curve.meta(
        "capacity_units",
        "normalized I0*U_T, bits per channel use; edge SNR = total received power / edge noise",
    );
    if spec.quantity == Quantity::Bounds {
        curve.meta(
            "subsets",
            spec.subset_counts
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
    }
}
