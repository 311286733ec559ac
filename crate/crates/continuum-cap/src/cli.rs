//! The `continuum-cap` command-line tool.
//!
//! ```text
//! continuum-cap <subcommand> --config <path> [--out <csv>] [--svg <path>]
//!               [--snr-db a:b:n] [--subsets 3,10,25] [--tol <rel>]
//! ```
//!
//! Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure.
//! Identical inputs produce byte-identical CSV.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{self, ConfigError};
use crate::error::Error;
use crate::partition::split_uniform_mass;
use crate::scbc::uniform_capacity_with_tol;
use crate::scmac::{uplink_allocation, verify_duality};
use crate::svg::{plot, PlotStyle};
use crate::sweep::{self, fmt_g12, CapacityCurve, GridSpec, Quantity, SweepSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser)]
#[command(
    name = "continuum-cap",
    version,
    about = "Capacity limits of spatial-continuum Gaussian cells"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Uniform capacity (normalized I0*U_T) over an edge-SNR sweep
    UniformCapacity(SweepArgs),
    /// Minimal serving power over a spectral-efficiency sweep, all routes
    MinPower(MinPowerArgs),
    /// Exact capacity, K-layer worst/best bounds, and time sharing
    Bounds(BoundsArgs),
    /// Access-capacity-region boundary: maximal sum rate per power budget
    Region(SweepArgs),
    /// Uplink SIC layer table at the configured budget, or a duality report
    Uplink(UplinkArgs),
    /// Time-sharing baseline and the superposition gain over it
    Baseline(SweepArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Scenario configuration file (TOML)
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output CSV path (stdout when omitted)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Render the curve as a self-contained SVG
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Relative tolerance of the capacity/power inversions
    #[arg(long, value_name = "REL", default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Edge SNR axis in dB, start:stop:count
    #[arg(long = "snr-db", value_name = "A:B:N", default_value = "-10:40:51", allow_hyphen_values = true)]
    snr_db: String,
}

#[derive(Args)]
struct MinPowerArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Spectral-efficiency axis in nats, start:stop:count
    #[arg(long = "eta-s", value_name = "A:B:N", default_value = "0.05:5:50", allow_hyphen_values = true)]
    eta_s: String,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Edge SNR axis in dB, start:stop:count
    #[arg(long = "snr-db", value_name = "A:B:N", default_value = "-10:40:51", allow_hyphen_values = true)]
    snr_db: String,
    /// Comma-separated subset counts K
    #[arg(long, value_name = "K,K,...", default_value = "3,10,25")]
    subsets: String,
}

#[derive(Args)]
struct UplinkArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Subset count for the layer table (first value), or the K list for
    /// the duality report
    #[arg(long, value_name = "K,K,...", default_value = "16")]
    subsets: String,
    /// Emit the BC/MAC duality report instead of the layer table
    #[arg(long)]
    duality_check: bool,
}

enum RunError {
    Usage(String),
    Config(ConfigError),
    Numerical(Error),
    Io(std::io::Error),
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Numerical(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

/// Entry point used by both `main` and the integration tests.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => EXIT_OK,
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_CONFIG
        }
        Err(RunError::Config(e)) => {
            eprintln!("config error: {e}");
            EXIT_CONFIG
        }
        Err(RunError::Numerical(e)) => {
            eprintln!("numerical error: {e}");
            EXIT_NUMERICAL
        }
        Err(RunError::Io(e)) => {
            eprintln!("io error: {e}");
            EXIT_NUMERICAL
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::UniformCapacity(a) => curve_command(a, Quantity::UniformCapacity, None),
        Command::Region(a) => curve_command(a, Quantity::Region, None),
        Command::Baseline(a) => curve_command(a, Quantity::Baseline, None),
        Command::Bounds(a) => {
            let subsets = parse_subsets(&a.subsets)?;
            let inner = SweepArgs {
                common: a.common,
                snr_db: a.snr_db,
            };
            curve_command(inner, Quantity::Bounds, Some(subsets))
        }
        Command::MinPower(a) => {
            let cfg = config::load(&a.common.config)?;
            check_tol(a.common.tol)?;
            let spec = SweepSpec {
                quantity: Quantity::MinPower,
                eta: GridSpec::parse(&a.eta_s).map_err(usage)?,
                tol: a.common.tol,
                ..Default::default()
            };
            let curve = sweep::run_sweep(&cfg, &spec)?;
            emit_curve(&curve, &a.common, "minimal serving power")
        }
        Command::Uplink(a) => uplink_command(a),
    }
}

fn curve_command(
    args: SweepArgs,
    quantity: Quantity,
    subsets: Option<Vec<usize>>,
) -> Result<(), RunError> {
    let cfg = config::load(&args.common.config)?;
    check_tol(args.common.tol)?;
    let mut spec = SweepSpec {
        quantity,
        snr_db: GridSpec::parse(&args.snr_db).map_err(usage)?,
        tol: args.common.tol,
        ..Default::default()
    };
    if let Some(subsets) = subsets {
        spec.subset_counts = subsets;
    }
    let curve = sweep::run_sweep(&cfg, &spec)?;
    let title = match quantity {
        Quantity::UniformCapacity => "uniform capacity",
        Quantity::Bounds => "capacity bounds",
        Quantity::Region => "access capacity region boundary",
        Quantity::Baseline => "time-sharing baseline",
        Quantity::MinPower => unreachable!(),
    };
    emit_curve(&curve, &args.common, title)
}

fn emit_curve(curve: &CapacityCurve, common: &CommonArgs, title: &str) -> Result<(), RunError> {
    write_output(common.out.as_deref(), &curve.to_csv())?;
    if let Some(svg_path) = &common.svg {
        let style = PlotStyle {
            title: title.to_string(),
            x_label: curve.x_label.clone(),
            y_label: "bits per channel use".to_string(),
            ..Default::default()
        };
        let doc = plot(curve, &style)?;
        std::fs::write(svg_path, doc)?;
    }
    Ok(())
}

fn uplink_command(args: UplinkArgs) -> Result<(), RunError> {
    let cfg = config::load(&args.common.config)?;
    check_tol(args.common.tol)?;
    if args.common.svg.is_some() {
        return Err(RunError::Usage(
            "--svg applies to curve subcommands, not uplink tables".into(),
        ));
    }
    let subsets = parse_subsets(&args.subsets)?;
    let (dist, _) = sweep::cell_distribution(&cfg)?;
    let scenario = &cfg.scenario;
    let budget = scenario.power_budget();
    let cap = uniform_capacity_with_tol(&dist, budget, scenario.total_users(), args.common.tol)?;
    let rho = cap.eta_s.sum_rate_bits();

    let mut out = String::new();
    out.push_str(&format!(
        "# tool: continuum-cap {}\n",
        env!("CARGO_PKG_VERSION")
    ));
    out.push_str(&format!(
        "# operating point: power_budget={} eta_s={} sum_rate_bits={}\n",
        fmt_g12(budget),
        fmt_g12(cap.eta_s.nats()),
        fmt_g12(rho)
    ));
    if args.duality_check {
        out.push_str("k,downlink_total,uplink_total,relative_gap\n");
        for &k in &subsets {
            let partition = split_uniform_mass(&dist, k, rho)?;
            let report = verify_duality(&partition)?;
            out.push_str(&format!(
                "{k},{},{},{}\n",
                fmt_g12(report.downlink_total),
                fmt_g12(report.uplink_total),
                fmt_g12(report.relative_gap)
            ));
        }
    } else {
        let k = subsets[0];
        out.push_str(&format!("# subsets: {k}\n"));
        let partition = split_uniform_mass(&dist, k, rho)?;
        let alloc = uplink_allocation(&partition)?;
        out.push_str(&alloc.to_csv(&partition));
    }
    write_output(args.common.out.as_deref(), &out)
}

fn parse_subsets(text: &str) -> Result<Vec<usize>, RunError> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let k: usize = part
            .trim()
            .parse()
            .map_err(|_| RunError::Usage(format!("bad subset count \"{part}\" in --subsets")))?;
        if k < 1 {
            return Err(RunError::Usage("subset counts must be >= 1".into()));
        }
        out.push(k);
    }
    if out.is_empty() {
        return Err(RunError::Usage("--subsets needs at least one value".into()));
    }
    Ok(out)
}

fn check_tol(tol: f64) -> Result<(), RunError> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(RunError::Usage(format!(
            "--tol must be in (0, 1), got {tol}"
        )));
    }
    Ok(())
}

fn usage(e: Error) -> RunError {
    RunError::Usage(e.to_string())
}

fn write_output(path: Option<&std::path::Path>, content: &str) -> Result<(), RunError> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}
