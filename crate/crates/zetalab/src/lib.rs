//! A numerical laboratory for reverse iterations of a zeta-based ladder
//! transform and for desk-scale checks of classical zeta-moment asymptotics.
//!
//! Layout:
//! * [`zeta`] — evaluation of zeta(sigma + i t) on the critical line and in
//!   the strip sigma >= 1/2 + eps_min;
//! * [`quad`] — adaptive Gauss-Legendre quadrature with evaluation budgets;
//! * [`moments`] — second and fourth moments of |zeta| with a cumulative
//!   checkpoint cache;
//! * [`ladder`] — the ladder transform, its inverse, and reverse/forward
//!   iteration sequences;
//! * [`functionals`] — ratio/cross-bred/determinant interaction functionals
//!   and the exact-rational Fermat condition.
//!
//! Every kernel is generic over the working scalar via [`scalar::Real`];
//! the aliases below fix the production types.

pub mod consts;
pub mod error;
pub mod functionals;
pub mod ladder;
pub mod moments;
pub mod quad;
pub mod scalar;
pub mod zeta;

pub use error::{Error, Result};
pub use scalar::Real;

/// Production scalar.
pub type Scalar = f64;

pub type ZetaEvaluator = zeta::ZetaEvaluator<Scalar>;
pub type ZetaConfig = zeta::ZetaConfig<Scalar>;
pub type Constants = consts::Constants<Scalar>;
pub type MomentEngine = moments::MomentEngine<Scalar>;
pub type MomentCache = moments::MomentCache<Scalar>;
pub type LadderEngine = ladder::LadderEngine<Scalar>;
pub type LadderConfig = ladder::LadderConfig<Scalar>;
pub type FunctionalEngine = functionals::FunctionalEngine<Scalar>;
