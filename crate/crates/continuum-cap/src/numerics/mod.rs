//! Self-contained special functions and solvers backing the capacity modules:
//! incomplete gamma, Kummer ₁F₁, adaptive Gauss–Kronrod quadrature, monotone
//! bisection, a Dormand–Prince ODE stepper, and shape-preserving cubic
//! interpolation.
//!
//! Everything here is deterministic — fixed subdivision and stepping rules,
//! no randomized algorithms — so downstream CSV output is bit-reproducible.

mod interp;
mod ode;
mod quad;
mod root;
mod special;

pub use interp::MonotoneCubic;
pub use ode::solve_ode;
pub use quad::{integrate, integrate_singular, EndpointSingularity, QuadratureSpec};
pub use root::{bisect_monotone, RootBracket};
pub use special::{gamma, kummer_1f1, ln_gamma, lower_incomplete_gamma, upper_incomplete_gamma};
