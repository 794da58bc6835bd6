//! Reference evaluators for checking the fast zeta/moment kernels.
//!
//! Two independent layers:
//! - [`hiprec`]: big-float Euler-Maclaurin zeta at >= 50 decimal digits,
//! - [`brute`]: fixed-step f64 Simpson quadrature over an over-provisioned
//!   zeta sum.
//!
//! Everything here favors being obviously correct over being fast.

pub mod bernoulli;
pub mod brute;
pub mod hiprec;

pub use brute::{abs_pow_brute, moment_brute, simpson, zeta_brute};
pub use hiprec::HighPrecZeta;
