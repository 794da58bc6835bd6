//! Evaluation of zeta(sigma + i t) on the critical line and in the
//! half-plane sigma >= 1/2 + eps_min.
//!
//! The reference path is a truncated main sum with Euler-Maclaurin tail
//! corrections, valid for every admissible sigma. A Riemann-Siegel fast
//! path for the critical line can be enabled above a configurable height.

mod riemann_siegel;

use crate::consts::EULER_C;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// B_{2k}/(2k)! for k = 1..=40.
const BERN_OVER_FACT: [f64; 40] = [
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
    2.267952452337683e-24,
    -5.744790668872202e-26,
    1.455172475614865e-27,
    -3.6859949406653103e-29,
    9.336734257095045e-31,
    -2.36502241570063e-32,
    5.990671762482134e-34,
    -1.5174548844682903e-35,
    3.843758125454189e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
    -6.247076741820743e-42,
    1.5824030244644914e-43,
    -4.008273685948936e-45,
    1.0153075855569557e-46,
    -2.5718041582418717e-48,
    6.514456035233815e-50,
    -1.6501309906896525e-51,
    4.179830628539476e-53,
    -1.058763466770291e-54,
    2.6818791912607708e-56,
    -6.793279351107421e-58,
    1.7207577616681404e-59,
    -4.358730329348894e-61,
    1.1040792903684666e-62,
    -2.7966655133781345e-64,
];

/// A point sigma + i t with t >= 0. Negative ordinates are handled by the
/// conjugate-symmetry entry points and never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SPoint<R> {
    sigma: R,
    t: R,
}

impl<R: Real> SPoint<R> {
    /// sigma must be exactly 1/2 or at least 1/2 + eps_min; t finite, >= 0.
    pub fn new(sigma: R, t: R, eps_min: R) -> Result<Self> {
        if !sigma.is_finite() || !t.is_finite() {
            return Err(Error::Domain("non-finite point".into()));
        }
        if t < R::zero() {
            return Err(Error::Domain(
                "t must be >= 0; use the conjugate-symmetry entry point".into(),
            ));
        }
        let half = R::of(0.5);
        if sigma != half && sigma < half + eps_min {
            return Err(Error::Domain(format!(
                "sigma = {sigma} is neither 1/2 nor >= 1/2 + eps_min = {}",
                half + eps_min
            )));
        }
        Ok(SPoint { sigma, t })
    }

    pub fn sigma(&self) -> R {
        self.sigma
    }

    pub fn t(&self) -> R {
        self.t
    }

    pub fn on_critical_line(&self) -> bool {
        self.sigma == R::of(0.5)
    }
}

/// An evaluated zeta value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue<R> {
    pub re: R,
    pub im: R,
    /// |zeta|^2 = re^2 + im^2, stored for the moment integrands.
    pub abs_sq: R,
    /// Estimated absolute error of re and im.
    pub err_bound: R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalPath {
    EulerMaclaurin,
    RiemannSiegel,
}

/// Value plus instrumentation.
#[derive(Debug, Clone, Copy)]
pub struct ZetaEval<R> {
    pub value: ZetaValue<R>,
    /// Number of main-sum terms consumed.
    pub terms: u32,
    pub path: EvalPath,
}

#[derive(Debug, Clone, Copy)]
pub struct ZetaConfig<R> {
    /// Positive floor realizing "every fixed eps > 0" in the strip.
    pub eps_min: R,
    /// Critical-line heights above this use the Riemann-Siegel path.
    /// Infinite by default: Euler-Maclaurin is the reference implementation.
    pub rs_threshold: R,
    pub default_tol: R,
}

impl<R: Real> Default for ZetaConfig<R> {
    fn default() -> Self {
        ZetaConfig {
            eps_min: R::of(0.05),
            rs_threshold: R::infinity(),
            default_tol: R::of(1e-12),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ZetaEvaluator<R: Real> {
    pub cfg: ZetaConfig<R>,
}

impl<R: Real> ZetaEvaluator<R> {
    pub fn new(cfg: ZetaConfig<R>) -> Self {
        ZetaEvaluator { cfg }
    }

    /// Construct an admissible point under this evaluator's eps_min.
    pub fn point(&self, sigma: R, t: R) -> Result<SPoint<R>> {
        SPoint::new(sigma, t, self.cfg.eps_min)
    }

    /// zeta(sigma + i t) with estimated absolute error <= tol.
    pub fn eval(&self, p: &SPoint<R>, tol: R) -> Result<ZetaEval<R>> {
        if !(tol > R::zero()) {
            return Err(Error::Domain("tol must be > 0".into()));
        }
        if p.on_critical_line() && p.t >= self.cfg.rs_threshold {
            let (z, theta, err, terms) = riemann_siegel::z_function(p.t);
            if tol < err {
                return Err(Error::Precision {
                    requested: tol.as_f64(),
                    achievable: err.as_f64(),
                });
            }
            let (sin_th, cos_th) = theta.sin_cos();
            let re = z * cos_th;
            let im = -z * sin_th;
            return Ok(ZetaEval {
                value: ZetaValue {
                    re,
                    im,
                    abs_sq: z * z,
                    err_bound: err,
                },
                terms,
                path: EvalPath::RiemannSiegel,
            });
        }
        let (re, im, err, terms) = euler_maclaurin(p.sigma, p.t, tol)?;
        Ok(ZetaEval {
            value: ZetaValue {
                re,
                im,
                abs_sq: re * re + im * im,
                err_bound: err,
            },
            terms,
            path: EvalPath::EulerMaclaurin,
        })
    }

    pub fn zeta_point(&self, p: &SPoint<R>, tol: R) -> Result<ZetaValue<R>> {
        Ok(self.eval(p, tol)?.value)
    }

    /// |zeta(sigma + i t)|^2 >= 0.
    pub fn abs_zeta_sq(&self, p: &SPoint<R>, tol: R) -> Result<R> {
        Ok(self.eval(p, tol)?.value.abs_sq)
    }

    /// Symmetry entry point: accepts any sign of t and maps it to |t| by
    /// conjugate symmetry, so the result is bit-identical to the t >= 0 call.
    pub fn abs_zeta_sq_signed(&self, sigma: R, t: R, tol: R) -> Result<R> {
        let p = self.point(sigma, t.abs())?;
        self.abs_zeta_sq(&p, tol)
    }
}

/// Core Euler-Maclaurin evaluation. Returns (re, im, err_bound, terms).
fn euler_maclaurin<R: Real>(sigma: R, t: R, tol: R) -> Result<(R, R, R, u32)> {
    let tf = t.as_f64();
    let n_main = ((0.34 * tf) as u64 + 16).max(16) as u32;
    let mut re = R::zero();
    let mut im = R::zero();
    let mut abs_acc = R::zero(); // sum of n^{-2 sigma}, for the error model
    for n in 1..n_main {
        let nf = R::of(n as f64);
        let ln_n = nf.ln();
        let mag = (-sigma * ln_n).exp();
        let (s, c) = (t * ln_n).sin_cos();
        re += mag * c;
        im -= mag * s;
        abs_acc += mag * mag;
    }
    let nf = R::of(n_main as f64);
    let ln_n = nf.ln();
    let mag = (-sigma * ln_n).exp();
    let (s, c) = (t * ln_n).sin_cos();
    let (n_re, n_im) = (mag * c, -mag * s); // N^{-s}
    // N^{1-s}/(s-1)
    let (p_re, p_im) = (n_re * nf, n_im * nf);
    let (d_re, d_im) = (sigma - R::one(), t);
    let den = d_re * d_re + d_im * d_im;
    if den == R::zero() {
        return Err(Error::Domain("pole at s = 1".into()));
    }
    re += (p_re * d_re + p_im * d_im) / den;
    im += (p_im * d_re - p_re * d_im) / den;
    let half = R::of(0.5);
    re += half * n_re;
    im += half * n_im;

    // tail corrections T_k = B_{2k}/(2k)! * N^{1-s-2k} * prod_{j<2k-1}(s+j)
    let inv_n2 = (nf * nf).recip();
    let (mut pw_re, mut pw_im) = (p_re * inv_n2, p_im * inv_n2);
    let (mut pr_re, mut pr_im) = (sigma, t);
    let mut trunc = R::zero();
    for (k, &b) in BERN_OVER_FACT.iter().enumerate() {
        let k = k + 1;
        let bk = R::of(b);
        let t_re = bk * (pw_re * pr_re - pw_im * pr_im);
        let t_im = bk * (pw_re * pr_im + pw_im * pr_re);
        re += t_re;
        im += t_im;
        trunc = t_re.abs() + t_im.abs();
        if trunc < R::of(1e-3) * tol || trunc < R::of(1e-18) * (re.abs() + im.abs() + R::one()) {
            break;
        }
        pw_re *= inv_n2;
        pw_im *= inv_n2;
        let (f1_re, f1_im) = (sigma + R::of((2 * k - 1) as f64), t);
        let (f2_re, f2_im) = (sigma + R::of((2 * k) as f64), t);
        let (a_re, a_im) = (
            pr_re * f1_re - pr_im * f1_im,
            pr_re * f1_im + pr_im * f1_re,
        );
        pr_re = a_re * f2_re - a_im * f2_im;
        pr_im = a_re * f2_im + a_im * f2_re;
    }

    // round-off model: per-term phase error t*ln(n)*eps with random signs,
    // plus the last truncated correction
    let eps = R::epsilon();
    let round_off = eps * (R::one() + t * ln_n) * (abs_acc.sqrt() + R::one());
    let err = round_off + trunc;
    if tol < err {
        return Err(Error::Precision {
            requested: tol.as_f64(),
            achievable: err.as_f64(),
        });
    }
    Ok((re, im, err, n_main))
}

/// zeta(2 sigma) for sigma >= 1/2 + eps_min, to ~1e-12 absolute accuracy.
pub fn zeta_two_sigma<R: Real>(sigma: R, eps_min: R) -> Result<R> {
    if !(sigma >= R::of(0.5) + eps_min) {
        return Err(Error::Domain(format!(
            "zeta(2 sigma) needs sigma >= 1/2 + eps_min; got {sigma}"
        )));
    }
    let (re, _, _, _) = euler_maclaurin(sigma + sigma, R::zero(), R::of(1e-12))?;
    Ok(re)
}

/// The x/ln x surrogate for the prime-counting function.
pub fn prime_counting_approx<R: Real>(x: R) -> Result<R> {
    if !(x > R::one()) {
        return Err(Error::Domain(format!("x/ln x needs x > 1; got {x}")));
    }
    Ok(x / x.ln())
}

/// Euler's constant as the working scalar.
pub fn euler_c<R: Real>() -> R {
    R::of(EULER_C)
}

#[cfg(test)]
mod tests;
