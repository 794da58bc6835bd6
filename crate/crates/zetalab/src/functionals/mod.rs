//! The headline functionals: the non-local two-interval ratio, the two
//! cross-bred moment functionals and their Fermat-rational conditions, and
//! the bilinear determinant interaction, together with convergence sweeps
//! toward the claimed limits.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::consts::Constants;
use crate::error::{Error, Result};
use crate::ladder::LadderEngine;
use crate::moments::{MomentCache, MomentSpec};
use crate::scalar::Real;
use crate::zeta::zeta_two_sigma;

/// (x^n + y^n) / z^n in exact integer arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FermatRational {
    x: BigUint,
    y: BigUint,
    z: BigUint,
    n: u32,
    /// Flags membership in the n >= 3 class; stored, not enforced, so
    /// Pythagorean sanity cases still run.
    fermat_class: bool,
}

impl FermatRational {
    pub fn new(x: u64, y: u64, z: u64, n: u32) -> Result<Self> {
        if x < 1 || y < 1 || z < 1 || n < 1 {
            return Err(Error::Domain(
                "Fermat rational needs x, y, z, n >= 1".into(),
            ));
        }
        Ok(FermatRational {
            x: BigUint::from(x),
            y: BigUint::from(y),
            z: BigUint::from(z),
            n,
            fermat_class: n >= 3,
        })
    }

    pub fn fermat_class(&self) -> bool {
        self.fermat_class
    }

    /// Exact test of x^n + y^n = z^n; never floating point.
    pub fn is_unit(&self) -> bool {
        self.x.pow(self.n) + self.y.pow(self.n) == self.z.pow(self.n)
    }

    pub fn value_rational(&self) -> BigRational {
        let num = self.x.pow(self.n) + self.y.pow(self.n);
        let den = self.z.pow(self.n);
        BigRational::new(num.into(), den.into())
    }

    /// Real rounding of the exact value.
    pub fn value<R: Real>(&self) -> R {
        R::of(self.value_rational().to_f64().unwrap_or(f64::INFINITY))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossbredKind {
    Hli,
    Ingham,
}

/// One finite-tau evaluation of a cross-bred functional.
#[derive(Debug, Clone, Copy)]
pub struct FunctionalEstimate<R> {
    pub tau: R,
    pub raw_value: R,
    /// The claimed tau -> infinity limit.
    pub target: R,
    pub deviation: R,
    pub sigma: R,
    pub kind: CrossbredKind,
}

/// Heuristic reading of a Fermat condition at finite tau.
#[derive(Debug, Clone)]
pub struct FermatVerdict {
    /// Exact-arithmetic truth of x^n + y^n = z^n.
    pub exact_unit: bool,
    /// Half-width of the empirical error band used for the comparison.
    pub band: f64,
    /// Whether the finite-tau estimate is distinguishable from 1.
    pub distinguishable_from_one: bool,
    /// Heuristic wording; never a proof.
    pub text: String,
}

/// Row of a convergence sweep; failures are recorded, not fatal.
#[derive(Debug, Clone)]
pub struct SweepRow<R> {
    pub tau: R,
    pub estimate: Option<FunctionalEstimate<R>>,
    pub error: Option<Error>,
}

#[derive(Debug, Clone)]
pub struct ConvergenceTable<R> {
    pub rows: Vec<SweepRow<R>>,
    /// |deviation| of the last successful row <= that of the first;
    /// None when fewer than one row succeeded.
    pub trend_improving: Option<bool>,
}

/// Two-interval ratio and its claimed reference.
#[derive(Debug, Clone, Copy)]
pub struct RatioInteraction<R> {
    pub ratio: R,
    pub reference: R,
}

/// The determinant of the four energy integrals and its claimed
/// asymptotic right-hand side. `entries` is row-major:
/// [line over [T,T1], strip over [T,T1], line over [1,T], strip over [1,T]].
#[derive(Debug, Clone, Copy)]
pub struct DeterminantInteraction<R> {
    pub lhs: R,
    pub rhs: R,
    pub entries: [R; 4],
}

/// Functional evaluation bound to a ladder engine (which carries the
/// moment engine and the zeta evaluator).
#[derive(Debug, Clone)]
pub struct FunctionalEngine<R: Real> {
    pub ladder: LadderEngine<R>,
}

impl<R: Real> FunctionalEngine<R> {
    pub fn new(ladder: LadderEngine<R>) -> Self {
        FunctionalEngine { ladder }
    }

    fn eps_min(&self) -> R {
        self.ladder.moments.zeta.cfg.eps_min
    }

    fn tol_to(&self, upper: R) -> R {
        (upper * self.ladder.cfg.moment_unit_tol).max(self.ladder.cfg.solver_tol * upper)
    }

    /// Second moments over [a, b] on the line and in the strip at sigma.
    fn interval_pair(
        &self,
        a: R,
        b: R,
        sigma: R,
        cache: &mut MomentCache<R>,
    ) -> Result<(R, R)> {
        let tol = self.tol_to(b);
        let half = R::of(0.5);
        let line = self
            .ladder
            .moments
            .moment_integral(&MomentSpec::new(a, b, half, 2, tol, self.eps_min())?, cache)?
            .value;
        let strip = self
            .ladder
            .moments
            .moment_integral(&MomentSpec::new(a, b, sigma, 2, tol, self.eps_min())?, cache)?
            .value;
        Ok((line, strip))
    }

    /// ratio = line/strip over the r-th rung; reference = ln(T^{r-1})/zeta(2 sigma).
    pub fn ratio_interaction(
        &self,
        t: R,
        r: u32,
        sigma: R,
        cache: &mut MomentCache<R>,
    ) -> Result<RatioInteraction<R>> {
        if r < 1 {
            return Err(Error::Domain("rank must be >= 1".into()));
        }
        let seq = self.ladder.reverse_iterations(t, r, cache)?;
        let lo = seq.iterates()[r as usize - 1];
        let hi = seq.iterates()[r as usize];
        let (line, strip) = self.interval_pair(lo, hi, sigma, cache)?;
        let reference = lo.ln() / zeta_two_sigma(sigma, self.eps_min())?;
        Ok(RatioInteraction {
            ratio: line / strip,
            reference,
        })
    }

    /// (1/tau) J~(T) strip(T,T1)/line(T,T1) with T = x tau / zeta(2 sigma).
    pub fn hli_crossbred(
        &self,
        x: R,
        sigma: R,
        tau: R,
        cache: &mut MomentCache<R>,
    ) -> Result<FunctionalEstimate<R>> {
        if !(x > R::zero()) {
            return Err(Error::Domain("x must be > 0".into()));
        }
        let t = x * tau / zeta_two_sigma(sigma, self.eps_min())?;
        if !(t >= self.ladder.cfg.t0) {
            return Err(Error::Range {
                what: format!(
                    "tau = {tau} maps to T = {t} below T0 = {}",
                    self.ladder.cfg.t0
                ),
                rank: None,
            });
        }
        let t1 = self.ladder.ladder_inverse(t, cache)?;
        let half = R::of(0.5);
        let j_tilde = self
            .ladder
            .moments
            .moment_integral(
                &MomentSpec::new(R::one(), t, half, 2, self.tol_to(t), self.eps_min())?,
                cache,
            )?
            .value;
        let (line, strip) = self.interval_pair(t, t1, sigma, cache)?;
        let raw_value = j_tilde * strip / (line * tau);
        Ok(FunctionalEstimate {
            tau,
            raw_value,
            target: x,
            deviation: raw_value - x,
            sigma,
            kind: CrossbredKind::Hli,
        })
    }

    /// (1/tau) M4(T) [strip(T,T1)]^4 [line(T,T1)]^{-4} with
    /// T = 2 pi^2 x tau / zeta^4(2 sigma).
    pub fn ingham_crossbred(
        &self,
        x: R,
        sigma: R,
        tau: R,
        cache: &mut MomentCache<R>,
    ) -> Result<FunctionalEstimate<R>> {
        if !(x > R::zero()) {
            return Err(Error::Domain("x must be > 0".into()));
        }
        let z2s = zeta_two_sigma(sigma, self.eps_min())?;
        let two_pi_sq = R::of(2.0) * R::PI() * R::PI();
        let t = two_pi_sq * x * tau / (z2s * z2s * z2s * z2s);
        if !(t >= self.ladder.cfg.t0) {
            return Err(Error::Range {
                what: format!(
                    "tau = {tau} maps to T = {t} below T0 = {}",
                    self.ladder.cfg.t0
                ),
                rank: None,
            });
        }
        let t1 = self.ladder.ladder_inverse(t, cache)?;
        // the fourth moment is ~ T ln^4 T; keep its tolerance on the same
        // relative scale as the second-moment ones
        let lt = t.ln();
        let m4 = self
            .ladder
            .moments
            .fourth_moment(t, self.tol_to(t) * lt * lt * lt, cache)?
            .value;
        let (line, strip) = self.interval_pair(t, t1, sigma, cache)?;
        let q = strip / line;
        let raw_value = m4 * q * q * q * q / tau;
        Ok(FunctionalEstimate {
            tau,
            raw_value,
            target: x,
            deviation: raw_value - x,
            sigma,
            kind: CrossbredKind::Ingham,
        })
    }

    /// The chosen crossbred at x = value of the Fermat rational, plus the
    /// heuristic verdict against 1.
    pub fn fermat_condition(
        &self,
        kind: CrossbredKind,
        fr: &FermatRational,
        sigma: R,
        tau: R,
        band: f64,
        cache: &mut MomentCache<R>,
    ) -> Result<(FunctionalEstimate<R>, FermatVerdict)> {
        let x: R = fr.value();
        let est = match kind {
            CrossbredKind::Hli => self.hli_crossbred(x, sigma, tau, cache)?,
            CrossbredKind::Ingham => self.ingham_crossbred(x, sigma, tau, cache)?,
        };
        let exact_unit = fr.is_unit();
        let off_one = (est.raw_value - R::one()).abs().as_f64();
        let distinguishable = off_one > band;
        let text = if distinguishable {
            format!("inconsistent with =1 at band {band} (heuristic)")
        } else {
            "consistent with =1 (heuristic)".to_string()
        };
        Ok((
            est,
            FermatVerdict {
                exact_unit,
                band,
                distinguishable_from_one: distinguishable,
                text,
            },
        ))
    }

    /// The 2x2 determinant of the energy integrals and its asymptotic rhs.
    pub fn determinant_interaction(
        &self,
        t: R,
        sigma: R,
        cache: &mut MomentCache<R>,
    ) -> Result<DeterminantInteraction<R>> {
        let t1 = self.ladder.ladder_inverse(t, cache)?;
        let (a, b) = self.interval_pair(t, t1, sigma, cache)?;
        let (c, d) = self.interval_pair(R::one(), t, sigma, cache)?;
        let k = Constants::<R>::new();
        let lhs = a * d - b * c;
        let rhs = k.hli_linear / zeta_two_sigma(sigma, self.eps_min())? * d * b;
        Ok(DeterminantInteraction {
            lhs,
            rhs,
            entries: [a, b, c, d],
        })
    }

    /// Evaluate one crossbred over a strictly increasing tau grid;
    /// per-row failures are recorded without aborting.
    pub fn convergence_sweep(
        &self,
        kind: CrossbredKind,
        x: R,
        sigma: R,
        tau_grid: &[R],
        cache: &mut MomentCache<R>,
    ) -> Result<ConvergenceTable<R>> {
        if tau_grid.is_empty() {
            return Err(Error::Domain("empty tau grid".into()));
        }
        if tau_grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("tau grid must be strictly increasing".into()));
        }
        let mut rows = Vec::with_capacity(tau_grid.len());
        for &tau in tau_grid {
            let out = match kind {
                CrossbredKind::Hli => self.hli_crossbred(x, sigma, tau, cache),
                CrossbredKind::Ingham => self.ingham_crossbred(x, sigma, tau, cache),
            };
            rows.push(match out {
                Ok(est) => SweepRow {
                    tau,
                    estimate: Some(est),
                    error: None,
                },
                Err(e) => SweepRow {
                    tau,
                    estimate: None,
                    error: Some(e),
                },
            });
        }
        let ok: Vec<&FunctionalEstimate<R>> =
            rows.iter().filter_map(|r| r.estimate.as_ref()).collect();
        let trend_improving = match (ok.first(), ok.last()) {
            (Some(f), Some(l)) => Some(l.deviation.abs() <= f.deviation.abs()),
            _ => None,
        };
        Ok(ConvergenceTable {
            rows,
            trend_improving,
        })
    }
}
