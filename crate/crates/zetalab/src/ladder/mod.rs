//! The ladder transform, its inverse, and direct/reverse iteration
//! sequences, with spacing and increment-energy reports.
//!
//! The transform phi1 is realized as the solution u of
//!
//! ```text
//! F(u) = u ln u + (c - ln 2pi) u = J(T),
//! ```
//!
//! where J is the cumulative second moment on the critical line (exact
//! mode) or its closed-form leading terms (asymptotic mode). The inverse
//! solves J(v) = F(T) for v > T.

use crate::consts::Constants;
use crate::error::{Error, Result};
use crate::moments::{asymptotic_j, MomentCache, MomentEngine, MomentSpec};
use crate::scalar::Real;
use crate::zeta::prime_counting_approx;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderMode {
    /// J is the quadrature second moment.
    Exact,
    /// J is T ln T - (1 + ln 2pi - 2c) T.
    Asymptotic,
}

#[derive(Debug, Clone, Copy)]
pub struct LadderConfig<R> {
    pub mode: LadderMode,
    /// Relative solver tolerance.
    pub solver_tol: R,
    /// Minimum admissible base point.
    pub t0: R,
    /// Per-unit-length absolute tolerance for J evaluations; generous
    /// because the solver only needs a self-consistent J, not digits.
    pub moment_unit_tol: R,
}

impl<R: Real> Default for LadderConfig<R> {
    fn default() -> Self {
        LadderConfig {
            mode: LadderMode::Exact,
            solver_tol: R::of(1e-10),
            t0: R::of(200.0),
            moment_unit_tol: R::of(1e-4),
        }
    }
}

impl<R: Real> LadderConfig<R> {
    fn validate(&self) -> Result<()> {
        if !(self.solver_tol > R::zero() && self.solver_tol <= R::of(1e-4)) {
            return Err(Error::Domain(format!(
                "solver_tol must lie in (0, 1e-4], got {}",
                self.solver_tol
            )));
        }
        if !(self.t0 >= R::of(2.0)) {
            return Err(Error::Domain("T0 must be >= 2".into()));
        }
        Ok(())
    }
}

/// T = iterates[0] < iterates[1] < ... < iterates[k], where iterates[r] is
/// the r-fold inverse image of T under the transform.
#[derive(Debug, Clone)]
pub struct ReverseIterationSequence<R> {
    base: R,
    iterates: Vec<R>,
    k: u32,
}

impl<R: Real> ReverseIterationSequence<R> {
    pub fn base(&self) -> R {
        self.base
    }

    pub fn iterates(&self) -> &[R] {
        &self.iterates
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// One row of a spacing report: gap against (1-c) x / ln x.
#[derive(Debug, Clone, Copy)]
pub struct SpacingRow<R> {
    pub rank: u32,
    pub gap: R,
    pub reference: R,
    pub ratio: R,
}

#[derive(Debug, Clone)]
pub struct SpacingReport<R> {
    pub rows: Vec<SpacingRow<R>>,
    /// gap_{r+1} / gap_r for consecutive ranks.
    pub adjacent_gap_ratios: Vec<R>,
}

/// One row of an increment-energy report: the second moment over one rung
/// against (1-c) times the lower endpoint.
#[derive(Debug, Clone, Copy)]
pub struct IncrementRow<R> {
    pub rank: u32,
    pub increment: R,
    pub reference: R,
    pub ratio: R,
}

#[derive(Debug, Clone)]
pub struct IncrementReport<R> {
    pub rows: Vec<IncrementRow<R>>,
    pub adjacent_increment_ratios: Vec<R>,
    /// Sum of the per-rung increments.
    pub partition_sum: R,
    /// The single integral over the whole span, for the partition identity.
    pub partition_whole: R,
    /// Tolerance each constituent integral was computed to.
    pub partition_tol: R,
}

/// Ladder operations bound to a moment engine and a config.
#[derive(Debug, Clone)]
pub struct LadderEngine<R: Real> {
    pub moments: MomentEngine<R>,
    pub cfg: LadderConfig<R>,
}

const MAX_ITER: u32 = 200;

impl<R: Real> LadderEngine<R> {
    pub fn new(moments: MomentEngine<R>, cfg: LadderConfig<R>) -> Result<Self> {
        cfg.validate()?;
        Ok(LadderEngine { moments, cfg })
    }

    fn k(&self) -> Constants<R> {
        Constants::new()
    }

    /// F(u) = u ln u + (c - ln 2pi) u.
    pub fn f_map(&self, u: R) -> R {
        let k = self.k();
        u * u.ln() + (k.euler_c - k.ln_2pi) * u
    }

    fn f_deriv(&self, u: R) -> R {
        let k = self.k();
        u.ln() + R::one() + k.euler_c - k.ln_2pi
    }

    /// Absolute tolerance for a J evaluation up to height t.
    fn j_tol(&self, t: R) -> R {
        (t * self.cfg.moment_unit_tol).max(self.cfg.solver_tol * t)
    }

    fn j_value(&self, t: R, cache: &mut MomentCache<R>) -> Result<R> {
        match self.cfg.mode {
            LadderMode::Exact => Ok(self
                .moments
                .hardy_littlewood_j(t, self.j_tol(t), cache)?
                .value),
            LadderMode::Asymptotic => asymptotic_j(t),
        }
    }

    /// d J / d t: the integrand itself in exact mode.
    fn j_deriv(&self, t: R) -> Result<R> {
        match self.cfg.mode {
            LadderMode::Exact => {
                let p = self.moments.zeta.point(R::of(0.5), t)?;
                match self.moments.zeta.abs_zeta_sq(&p, R::of(1e-6)) {
                    Ok(v) => Ok(v),
                    Err(Error::Precision { achievable, .. }) => {
                        self.moments.zeta.abs_zeta_sq(&p, R::of(4.0 * achievable))
                    }
                    Err(e) => Err(e),
                }
            }
            LadderMode::Asymptotic => {
                let k = self.k();
                Ok(t.ln() + R::one() - k.hli_linear)
            }
        }
    }

    /// The transform value: the unique u < T with F(u) = J(T).
    pub fn ladder_value(&self, t: R, cache: &mut MomentCache<R>) -> Result<R> {
        if !(t >= self.cfg.t0) {
            return Err(Error::Domain(format!(
                "T = {t} below the minimum base point T0 = {}",
                self.cfg.t0
            )));
        }
        let target = self.j_value(t, cache)?;
        let k = self.k();
        // J(T) = F(T) - (1-c)T + ..., so the root sits near T - (1-c)T/ln T
        let mut u = t * (R::one() - k.one_minus_c() / t.ln());
        let mut lo = R::of(2.0);
        let mut hi = t;
        u = u.max(lo).min(hi);
        for _ in 0..MAX_ITER {
            let g = self.f_map(u) - target;
            if g > R::zero() {
                hi = u;
            } else {
                lo = u;
            }
            let step = g / self.f_deriv(u);
            let mut next = u - step;
            if !(next > lo) || !(next < hi) {
                next = (lo + hi) * R::of(0.5);
            }
            let done = (next - u).abs() <= self.cfg.solver_tol * u
                || (hi - lo) <= self.cfg.solver_tol * u;
            u = next;
            if done {
                return Ok(u);
            }
        }
        Err(Error::Solver {
            what: "transform value did not converge".into(),
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            rank: None,
        })
    }

    /// The inverse image: v > T with J(v) = F(T).
    pub fn ladder_inverse(&self, t: R, cache: &mut MomentCache<R>) -> Result<R> {
        if !(t >= self.cfg.t0) {
            return Err(Error::Domain(format!(
                "T = {t} below the minimum base point T0 = {}",
                self.cfg.t0
            )));
        }
        let target = self.f_map(t);
        let k = self.k();
        let off = k.one_minus_c() * t / t.ln();
        let mut lo = t;
        let mut hi = t + off + off;
        let mut expand = 0;
        while self.j_value(hi, cache)? < target {
            lo = hi;
            hi = t + (hi - t) * R::of(2.0);
            expand += 1;
            if expand > 40 {
                return Err(Error::Solver {
                    what: "inverse bracket expansion failed".into(),
                    lo: lo.as_f64(),
                    hi: hi.as_f64(),
                    rank: None,
                });
            }
        }
        let mut v = t + off; // the (2.14) spacing seed
        v = v.max(lo).min(hi);
        for _ in 0..MAX_ITER {
            let g = self.j_value(v, cache)? - target;
            if g > R::zero() {
                hi = v;
            } else {
                lo = v;
            }
            let d = self.j_deriv(v)?;
            let mut next = if d > R::zero() { v - g / d } else { v };
            if !(next > lo) || !(next < hi) {
                next = (lo + hi) * R::of(0.5);
            }
            let done = (next - v).abs() <= self.cfg.solver_tol * v
                || (hi - lo) <= self.cfg.solver_tol * v;
            v = next;
            if done {
                return Ok(v);
            }
        }
        Err(Error::Solver {
            what: "inverse did not converge".into(),
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            rank: None,
        })
    }

    /// [T, T^1, ..., T^k] by repeated inversion.
    pub fn reverse_iterations(
        &self,
        t: R,
        k: u32,
        cache: &mut MomentCache<R>,
    ) -> Result<ReverseIterationSequence<R>> {
        if k > 20 {
            return Err(Error::Domain(format!("iteration count {k} exceeds 20")));
        }
        let mut iterates = vec![t];
        for r in 1..=k {
            let prev = iterates[r as usize - 1];
            let next = self.ladder_inverse(prev, cache).map_err(|e| rank(e, r))?;
            if !(next > prev) {
                return Err(Error::Solver {
                    what: "inverse iterate failed to increase".into(),
                    lo: prev.as_f64(),
                    hi: next.as_f64(),
                    rank: Some(r),
                });
            }
            iterates.push(next);
        }
        Ok(ReverseIterationSequence {
            base: t,
            iterates,
            k,
        })
    }

    /// [t, phi1(t), phi1^2(t), ...], strictly decreasing.
    pub fn forward_iterations(
        &self,
        t: R,
        k: u32,
        cache: &mut MomentCache<R>,
    ) -> Result<Vec<R>> {
        if k > 20 {
            return Err(Error::Domain(format!("iteration count {k} exceeds 20")));
        }
        let mut out = vec![t];
        for r in 1..=k {
            let prev = out[r as usize - 1];
            let next = self.ladder_value(prev, cache).map_err(|e| rank(e, r))?;
            if !(next >= self.cfg.t0) {
                return Err(Error::Range {
                    what: format!("forward iterate {next} fell below T0 = {}", self.cfg.t0),
                    rank: Some(r),
                });
            }
            out.push(next);
        }
        Ok(out)
    }

    /// Per-rank gap against (1-c) x / ln x, plus adjacent-gap ratios.
    pub fn spacing_report(&self, seq: &ReverseIterationSequence<R>) -> Result<SpacingReport<R>> {
        if seq.k < 1 {
            return Err(Error::Domain("spacing report needs k >= 1".into()));
        }
        let k = self.k();
        let mut rows = Vec::with_capacity(seq.k as usize);
        for r in 1..=seq.k as usize {
            let gap = seq.iterates[r] - seq.iterates[r - 1];
            let reference = k.one_minus_c() * prime_counting_approx(seq.iterates[r])?;
            rows.push(SpacingRow {
                rank: r as u32,
                gap,
                reference,
                ratio: gap / reference,
            });
        }
        let adjacent_gap_ratios = rows
            .windows(2)
            .map(|w| w[1].gap / w[0].gap)
            .collect();
        Ok(SpacingReport {
            rows,
            adjacent_gap_ratios,
        })
    }

    /// Per-rank second-moment increments against (1-c) times the lower
    /// endpoint, plus the partition identity over the whole span.
    pub fn increment_energy_report(
        &self,
        seq: &ReverseIterationSequence<R>,
        cache: &mut MomentCache<R>,
    ) -> Result<IncrementReport<R>> {
        if seq.k < 1 {
            return Err(Error::Domain("increment report needs k >= 1".into()));
        }
        let k = self.k();
        let top = seq.iterates[seq.k as usize];
        let tol = self.j_tol(top);
        let eps_min = self.moments.zeta.cfg.eps_min;
        let half = R::of(0.5);
        let mut rows = Vec::with_capacity(seq.k as usize);
        let mut sum = R::zero();
        for r in 1..=seq.k as usize {
            let spec = MomentSpec::new(
                seq.iterates[r - 1],
                seq.iterates[r],
                half,
                2,
                tol,
                eps_min,
            )?;
            let inc = self.moments.moment_integral(&spec, cache)?.value;
            sum += inc;
            let reference = k.one_minus_c() * seq.iterates[r - 1];
            rows.push(IncrementRow {
                rank: r as u32,
                increment: inc,
                reference,
                ratio: inc / reference,
            });
        }
        let whole_spec = MomentSpec::new(seq.base, top, half, 2, tol, eps_min)?;
        let whole = self.moments.moment_integral(&whole_spec, cache)?.value;
        let adjacent_increment_ratios = rows
            .windows(2)
            .map(|w| w[1].increment / w[0].increment)
            .collect();
        Ok(IncrementReport {
            rows,
            adjacent_increment_ratios,
            partition_sum: sum,
            partition_whole: whole,
            partition_tol: tol,
        })
    }
}

fn rank(e: Error, r: u32) -> Error {
    match e {
        Error::Solver { what, lo, hi, .. } => Error::Solver {
            what,
            lo,
            hi,
            rank: Some(r),
        },
        Error::Range { what, .. } => Error::Range { what, rank: Some(r) },
        other => other,
    }
}
