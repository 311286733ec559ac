//! Error type shared by the numerical routines and the capacity computations.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the numerical routines and the capacity computations.
///
/// Configuration-file problems have their own type ([`crate::config::ConfigError`])
/// so the CLI can distinguish bad input (exit code 2) from numerical failure
/// (exit code 3).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("{op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// An iterative method ran out of iterations.
    #[error("{op}: no convergence after {iterations} iterations")]
    NoConvergence { op: &'static str, iterations: usize },

    /// Adaptive quadrature hit its depth limit. Carries the best estimate
    /// and the accumulated error bound.
    #[error("quadrature tolerance not reached (estimate {estimate:.6e}, error bound {bound:.6e})")]
    QuadratureTolerance { estimate: f64, bound: f64 },

    /// Bisection target lies outside the image of the bracket.
    #[error("bisection target {target:.6e} outside bracket image [{f_lo:.6e}, {f_hi:.6e}]")]
    TargetOutOfRange { target: f64, f_lo: f64, f_hi: f64 },

    /// The ODE integrator's step size shrank below representable resolution.
    #[error("ODE step size underflow at x = {x:.6e}")]
    StepUnderflow { x: f64 },

    /// A layer rate is so large that 2^(2R) overflows.
    #[error("layer rate {rate_bits} bits overflows the 2^(2R) power scaling")]
    PowerOverflow { rate_bits: f64 },

    /// A power inversion could not bracket the target below the spectral
    /// efficiency cap.
    #[error("power {target:.6e} not reached at the spectral-efficiency cap eta_s = {eta_cap}")]
    PowerUnreachable { target: f64, eta_cap: f64 },

    /// An integral diverged or evaluated to a non-finite value.
    #[error("divergent integral in {op}")]
    DivergentIntegral { op: &'static str },

    /// A lower-level error annotated with the operation that triggered it.
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            op,
            msg: msg.into(),
        }
    }

    /// Wraps the error with the name of the calling operation.
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

/// Extension adding `.ctx("...")` to `Result`.
pub(crate) trait ResultExt<T> {
    fn ctx(self, context: impl Into<String>) -> Result<T>;
}

impl<T> ResultExt<T> for Result<T> {
    fn ctx(self, context: impl Into<String>) -> Result<T> {
        self.map_err(|e| e.context(context))
    }
}
