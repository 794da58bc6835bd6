//! Shared constants of the asymptotic formulas.

use crate::scalar::Real;

/// Euler's constant c.
pub const EULER_C: f64 = 0.5772156649015328606;

/// Constants every asymptotic formula consumes. `hli_linear` and
/// `ingham_coeff` are computed from their definitions, never stored
/// independently.
#[derive(Debug, Clone, Copy)]
pub struct Constants<R> {
    /// Euler's constant c.
    pub euler_c: R,
    /// ln(2 pi).
    pub ln_2pi: R,
    /// 1 + ln(2 pi) - 2c, the linear coefficient of the second-moment
    /// asymptotic.
    pub hli_linear: R,
    /// 1/(2 pi^2), the fourth-moment leading coefficient.
    pub ingham_coeff: R,
}

impl<R: Real> Constants<R> {
    pub fn new() -> Self {
        let euler_c = R::of(EULER_C);
        let two = R::of(2.0);
        let ln_2pi = (two * R::PI()).ln();
        Constants {
            euler_c,
            ln_2pi,
            hli_linear: R::one() + ln_2pi - two * euler_c,
            ingham_coeff: (two * R::PI() * R::PI()).recip(),
        }
    }

    /// 1 - c, the spacing/increment coefficient.
    pub fn one_minus_c(&self) -> R {
        R::one() - self.euler_c
    }
}

impl<R: Real> Default for Constants<R> {
    fn default() -> Self {
        Self::new()
    }
}
