//! Second and fourth moments of |zeta| over arbitrary ranges, with a
//! persistent cumulative checkpoint cache, plus the closed-form asymptotic
//! counterparts.
//!
//! The cache stores cumulative integrals from a fixed anchor (0 on the
//! critical line for the second moment, 1 otherwise) at a regular grid of
//! abscissas, one series per (sigma, power). A range request reuses every
//! full grid cell it covers and only integrates the two partial end
//! segments.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::quad::{initial_panel_width, integrate, EvalBudget};
use crate::scalar::Real;
use crate::zeta::{ZetaEvaluator, SPoint};

/// First line of every cache file.
pub const CACHE_FORMAT: &str = "zetalab-moment-cache v1";

/// A moment-integral request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSpec<R> {
    lower: R,
    upper: R,
    sigma: R,
    power: u8,
    tol: R,
}

impl<R: Real> MomentSpec<R> {
    pub fn new(lower: R, upper: R, sigma: R, power: u8, tol: R, eps_min: R) -> Result<Self> {
        if power != 2 && power != 4 {
            return Err(Error::Domain(format!("power must be 2 or 4, got {power}")));
        }
        let half = R::of(0.5);
        if power == 4 && sigma != half {
            return Err(Error::Domain(
                "power = 4 is only defined on the critical line".into(),
            ));
        }
        if sigma != half && sigma < half + eps_min {
            return Err(Error::Domain(format!(
                "sigma = {sigma} is neither 1/2 nor >= 1/2 + eps_min"
            )));
        }
        if !(lower >= R::zero()) {
            return Err(Error::Domain(format!("lower = {lower} must be >= 0")));
        }
        if sigma != half && !(lower >= R::one()) {
            return Err(Error::Domain(
                "strip moments need lower >= 1".into(),
            ));
        }
        if !(upper >= lower) || !upper.is_finite() {
            return Err(Error::Domain(format!(
                "upper = {upper} must be finite and >= lower = {lower}"
            )));
        }
        if !(tol > R::zero()) {
            return Err(Error::Domain("tol must be > 0".into()));
        }
        Ok(MomentSpec {
            lower,
            upper,
            sigma,
            power,
            tol,
        })
    }

    pub fn lower(&self) -> R {
        self.lower
    }
    pub fn upper(&self) -> R {
        self.upper
    }
    pub fn sigma(&self) -> R {
        self.sigma
    }
    pub fn power(&self) -> u8 {
        self.power
    }
    pub fn tol(&self) -> R {
        self.tol
    }
}

/// A computed moment with its bookkeeping.
#[derive(Debug, Clone, Copy)]
pub struct MomentResult<R> {
    pub value: R,
    pub err_estimate: R,
    pub n_evals: u64,
    pub cache_hits: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct SeriesKey {
    sigma_bits: u64,
    power: u8,
}

impl SeriesKey {
    fn new<R: Real>(sigma: R, power: u8) -> Self {
        SeriesKey {
            sigma_bits: sigma.as_f64().to_bits(),
            power,
        }
    }

    fn sigma<R: Real>(&self) -> R {
        R::of(f64::from_bits(self.sigma_bits))
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Series<R> {
    anchor: R,
    /// (abscissa, cumulative from anchor); first entry is (anchor, 0).
    points: Vec<(R, R)>,
}

/// Cumulative checkpoint cache, one monotone series per (sigma, power).
#[derive(Debug, Clone, PartialEq)]
pub struct MomentCache<R> {
    version: String,
    grid_step: R,
    /// Per-unit-length tolerance of the stored cumulative values.
    per_unit_tol: R,
    series: BTreeMap<SeriesKey, Series<R>>,
}

impl<R: Real> MomentCache<R> {
    pub fn new(version: &str) -> Self {
        MomentCache {
            version: version.to_string(),
            grid_step: R::of(2.0),
            per_unit_tol: R::of(1e-9),
            series: BTreeMap::new(),
        }
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn grid_step(&self) -> R {
        self.grid_step
    }

    pub fn per_unit_tol(&self) -> R {
        self.per_unit_tol
    }

    /// Checkpoint tolerance per unit length for a given power. Fourth-moment
    /// cells run 1e4 looser: |zeta|^4 reaches ~1e4, so the base tolerance
    /// would sit below the f64 noise floor of the integrand there.
    pub fn per_unit_tol_for(&self, power: u8) -> R {
        if power == 4 {
            self.per_unit_tol * R::of(1e4)
        } else {
            self.per_unit_tol
        }
    }

    /// Checkpoint tolerance per unit length at height t. The main-sum phases
    /// t ln n carry absolute rounding error ~ eps t ln t, so the integrand
    /// noise per unit is ~ 2 |zeta|^p eps t ln t with |zeta|^2 reaching tens;
    /// below that floor the quadrature cannot converge, only burn budget.
    /// 100 eps t ln^2 t covers the peaks with margin.
    pub fn cell_unit_tol(&self, power: u8, t: R) -> R {
        noise_floored(self.per_unit_tol_for(power), t)
    }

    /// (number of series, total number of checkpoints).
    pub fn stats(&self) -> (usize, usize) {
        (
            self.series.len(),
            self.series.values().map(|s| s.points.len()).sum(),
        )
    }

    /// Highest cached abscissa for (sigma, power), if any.
    pub fn frontier(&self, sigma: R, power: u8) -> Option<R> {
        self.series
            .get(&SeriesKey::new(sigma, power))
            .and_then(|s| s.points.last())
            .map(|&(x, _)| x)
    }

    /// Plain-text serialization: header lines, then per-series blocks of
    /// "abscissa,cumulative" records with 17 significant digits.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        let _ = writeln!(out, "{CACHE_FORMAT}");
        let _ = writeln!(out, "evaluator {}", self.version);
        let _ = writeln!(
            out,
            "grid {:.16e} per_unit_tol {:.16e}",
            self.grid_step.as_f64(),
            self.per_unit_tol.as_f64()
        );
        for (key, s) in &self.series {
            let _ = writeln!(
                out,
                "series sigma={:.16e} power={} grid=g{:.16e} n={}",
                key.sigma::<R>().as_f64(),
                key.power,
                self.grid_step.as_f64(),
                s.points.len()
            );
            for &(x, c) in &s.points {
                let _ = writeln!(out, "{:.16e},{:.16e}", x.as_f64(), c.as_f64());
            }
        }
        std::fs::write(path, out)
            .map_err(|e| Error::Integrity(format!("cannot write {}: {e}", path.display())))
    }

    pub fn load(path: &Path, expected_version: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Integrity(format!("cannot read {}: {e}", path.display())))?;
        let mut lines = text.lines();
        let bad = |msg: &str| Error::Integrity(format!("{}: {msg}", path.display()));
        if lines.next() != Some(CACHE_FORMAT) {
            return Err(bad("missing format header"));
        }
        let version = lines
            .next()
            .and_then(|l| l.strip_prefix("evaluator "))
            .ok_or_else(|| bad("missing evaluator line"))?
            .to_string();
        if version != expected_version {
            return Err(Error::Compatibility {
                found: version,
                expected: expected_version.to_string(),
            });
        }
        let grid_line = lines.next().ok_or_else(|| bad("missing grid line"))?;
        let parts: Vec<&str> = grid_line.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "grid" || parts[2] != "per_unit_tol" {
            return Err(bad("malformed grid line"));
        }
        let parse = |s: &str| -> Result<R> {
            s.parse::<f64>()
                .map(R::of)
                .map_err(|_| bad(&format!("bad number `{s}`")))
        };
        let grid_step = parse(parts[1])?;
        let per_unit_tol = parse(parts[3])?;
        let mut cache = MomentCache {
            version,
            grid_step,
            per_unit_tol,
            series: BTreeMap::new(),
        };
        let mut current: Option<(SeriesKey, usize)> = None;
        for line in lines {
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("series ") {
                let mut sigma = None;
                let mut power = None;
                let mut n = None;
                for field in rest.split_whitespace() {
                    if let Some(v) = field.strip_prefix("sigma=") {
                        sigma = Some(parse(v)?);
                    } else if let Some(v) = field.strip_prefix("power=") {
                        power = v.parse::<u8>().ok();
                    } else if let Some(v) = field.strip_prefix("n=") {
                        n = v.parse::<usize>().ok();
                    }
                }
                let (sigma, power, n) = match (sigma, power, n) {
                    (Some(s), Some(p), Some(n)) => (s, p, n),
                    _ => return Err(bad("malformed series line")),
                };
                let key = SeriesKey::new(sigma, power);
                let anchor = anchor_for(sigma, power);
                cache.series.insert(
                    key,
                    Series {
                        anchor,
                        points: Vec::with_capacity(n),
                    },
                );
                current = Some((key, n));
                continue;
            }
            let (key, n) = current.ok_or_else(|| bad("record before any series"))?;
            let (xs, cs) = line
                .split_once(',')
                .ok_or_else(|| bad("malformed record"))?;
            let x = parse(xs)?;
            let c = parse(cs)?;
            let s = cache.series.get_mut(&key).expect("series exists");
            if let Some(&(px, pc)) = s.points.last() {
                if !(x > px) || c < pc {
                    return Err(bad("checkpoints not monotone"));
                }
            }
            if s.points.len() >= n {
                return Err(bad("more records than declared"));
            }
            s.points.push((x, c));
        }
        for (key, s) in &cache.series {
            if s.points.first().map(|&(x, _)| x) != Some(s.anchor) {
                return Err(bad(&format!(
                    "series (sigma bits {}, power {}) does not start at its anchor",
                    key.sigma_bits, key.power
                )));
            }
        }
        Ok(cache)
    }
}

/// Anchor of the cumulative series: 0 for the critical-line second moment
/// (integrals from 0 appear there), 1 for everything else.
fn anchor_for<R: Real>(sigma: R, power: u8) -> R {
    if power == 2 && sigma == R::of(0.5) {
        R::zero()
    } else {
        R::one()
    }
}

/// Quadrature engine binding a zeta evaluator to moment requests.
#[derive(Debug, Clone)]
pub struct MomentEngine<R: Real> {
    pub zeta: ZetaEvaluator<R>,
    /// Max integrand evaluations per moment_integral call.
    pub budget_max: u64,
}

impl<R: Real> Default for MomentEngine<R> {
    fn default() -> Self {
        MomentEngine {
            zeta: ZetaEvaluator::new(crate::zeta::ZetaConfig::default()),
            budget_max: 50_000_000,
        }
    }
}

impl<R: Real> MomentEngine<R> {
    pub fn new(zeta: ZetaEvaluator<R>, budget_max: u64) -> Self {
        MomentEngine { zeta, budget_max }
    }

    /// Version string a compatible cache must carry: it pins the main-sum
    /// law and the fast-path threshold, which both change cached digits.
    pub fn version(&self) -> String {
        let rs = self.zeta.cfg.rs_threshold;
        if rs.is_finite() {
            format!("em34-rs{:.0}-q16.3", rs.as_f64())
        } else {
            "em34-rsoff-q16.3".to_string()
        }
    }

    pub fn new_cache(&self) -> MomentCache<R> {
        MomentCache::new(&self.version())
    }

    /// |zeta(sigma + i t)|^power and the propagated error bound.
    fn integrand(&self, p: &SPoint<R>, power: u8) -> Result<(R, R)> {
        let e = match self.zeta.eval(p, R::of(1e-9)) {
            Ok(e) => e,
            Err(Error::Precision { achievable, .. }) => {
                self.zeta.eval(p, R::of(4.0 * achievable))?
            }
            Err(e) => return Err(e),
        };
        let sq = e.value.abs_sq;
        let a = sq.sqrt();
        let (v, slope) = if power == 2 {
            (sq, (a + a))
        } else {
            (sq * sq, R::of(4.0) * sq * a)
        };
        Ok((v, slope * e.value.err_bound))
    }

    /// Integral of |zeta|^power over [a, b] to absolute tolerance seg_tol.
    /// The returned error adds the mean per-point integrand error bound
    /// times the segment length to the quadrature discrepancy.
    fn segment(
        &self,
        sigma: R,
        power: u8,
        a: R,
        b: R,
        seg_tol: R,
        budget: &mut EvalBudget,
    ) -> Result<(R, R)> {
        if a == b {
            return Ok((R::zero(), R::zero()));
        }
        let h0 = initial_panel_width(b);
        let mut ie_sum = R::zero();
        let mut n = 0u64;
        let r = integrate(
            |t| {
                let p = self.zeta.point(sigma, t)?;
                let (v, ie) = self.integrand(&p, power)?;
                ie_sum += ie;
                n += 1;
                Ok(v)
            },
            a,
            b,
            h0,
            seg_tol,
            budget,
        )?;
        let bias = if n > 0 {
            ie_sum / R::of(n as f64) * (b - a)
        } else {
            R::zero()
        };
        Ok((r.value, r.err_estimate + bias))
    }

    /// Cumulative integral from the series anchor to x, reusing and
    /// extending the grid checkpoints. Returns (value, err, cells_hit).
    fn cumulative(
        &self,
        cache: &mut MomentCache<R>,
        sigma: R,
        power: u8,
        x: R,
        budget: &mut EvalBudget,
    ) -> Result<(R, R, u64)> {
        let key = SeriesKey::new(sigma, power);
        let anchor = anchor_for(sigma, power);
        if x < anchor {
            return Err(Error::Domain(format!(
                "abscissa {x} below the series anchor {anchor}"
            )));
        }
        let step = cache.grid_step;
        let base_unit = cache.per_unit_tol_for(power);
        let want_cells = ((x - anchor) / step).floor().as_f64() as u64;

        let series = cache.series.entry(key).or_insert_with(|| Series {
            anchor,
            points: vec![(anchor, R::zero())],
        });
        let have_cells = (series.points.len() - 1) as u64;
        let hits = want_cells.min(have_cells);
        let mut new_err = R::zero();
        for i in have_cells..want_cells {
            let a = anchor + step * R::of(i as f64);
            let b = anchor + step * R::of((i + 1) as f64);
            let cell_tol = step * noise_floored(base_unit, b);
            let (v, e) = self.segment(sigma, power, a, b, cell_tol, budget)?;
            new_err += e;
            let &(_, last_c) = series.points.last().expect("anchor present");
            series.points.push((b, last_c + v));
        }
        let idx = want_cells as usize;
        let (cx, cval) = series.points[idx];
        // the unit tolerance at x dominates every cached cell below it
        let unit = noise_floored(base_unit, x);
        let seg_tol = (step * unit * R::of(0.5)).max(unit * (x - cx + R::one()));
        let (tail, tail_err) = self.segment(sigma, power, cx, x, seg_tol, budget)?;
        let err = R::of(hits as f64) * step * unit + new_err + tail_err;
        Ok((cval + tail, err, hits))
    }

    /// The general range moment with cache reuse.
    pub fn moment_integral(
        &self,
        spec: &MomentSpec<R>,
        cache: &mut MomentCache<R>,
    ) -> Result<MomentResult<R>> {
        let mut budget = EvalBudget::new(self.budget_max);
        if spec.lower == spec.upper {
            return Ok(MomentResult {
                value: R::zero(),
                err_estimate: R::zero(),
                n_evals: 0,
                cache_hits: 0,
            });
        }
        // the cache is only consulted when its per-unit error over the whole
        // covered range stays well inside the request tolerance
        let anchor = anchor_for(spec.sigma, spec.power);
        let covered = spec.upper - anchor;
        let use_cache =
            spec.tol >= R::of(4.0) * covered * cache.cell_unit_tol(spec.power, spec.upper);

        let (value, err_estimate, hits) = if use_cache {
            let (c_hi, e_hi, h1) =
                self.cumulative(cache, spec.sigma, spec.power, spec.upper, &mut budget)?;
            let (c_lo, e_lo, h2) =
                self.cumulative(cache, spec.sigma, spec.power, spec.lower, &mut budget)?;
            ((c_hi - c_lo).max(R::zero()), e_hi + e_lo, h1 + h2)
        } else {
            let (v, e) = self.segment(
                spec.sigma,
                spec.power,
                spec.lower,
                spec.upper,
                spec.tol * R::of(0.5),
                &mut budget,
            )?;
            (v, e, 0)
        };
        if err_estimate > spec.tol {
            return Err(Error::Precision {
                requested: spec.tol.as_f64(),
                achievable: err_estimate.as_f64(),
            });
        }
        Ok(MomentResult {
            value,
            err_estimate,
            n_evals: budget.spent(),
            cache_hits: hits,
        })
    }

    /// Second moment on the critical line from 0 to T.
    pub fn hardy_littlewood_j(
        &self,
        t: R,
        tol: R,
        cache: &mut MomentCache<R>,
    ) -> Result<MomentResult<R>> {
        let spec = MomentSpec::new(R::zero(), t, R::of(0.5), 2, tol, self.zeta.cfg.eps_min)?;
        self.moment_integral(&spec, cache)
    }

    /// Second moment in the strip from 1 to T at the given sigma.
    pub fn strip_second_moment(
        &self,
        t: R,
        sigma: R,
        tol: R,
        cache: &mut MomentCache<R>,
    ) -> Result<MomentResult<R>> {
        let spec = MomentSpec::new(R::one(), t, sigma, 2, tol, self.zeta.cfg.eps_min)?;
        self.moment_integral(&spec, cache)
    }

    /// Fourth moment on the critical line from 1 to T.
    pub fn fourth_moment(
        &self,
        t: R,
        tol: R,
        cache: &mut MomentCache<R>,
    ) -> Result<MomentResult<R>> {
        let spec = MomentSpec::new(R::one(), t, R::of(0.5), 4, tol, self.zeta.cfg.eps_min)?;
        self.moment_integral(&spec, cache)
    }

    /// Precompute checkpoints up to T for (sigma, power).
    pub fn extend_cache(
        &self,
        cache: &mut MomentCache<R>,
        sigma: R,
        power: u8,
        to: R,
    ) -> Result<u64> {
        let mut budget = EvalBudget::new(self.budget_max);
        let before = cache.stats().1;
        self.cumulative(cache, sigma, power, to, &mut budget)?;
        Ok((cache.stats().1 - before) as u64)
    }
}

/// The base per-unit tolerance floored by the integrand's rounding noise at
/// height t; see [`MomentCache::cell_unit_tol`].
fn noise_floored<R: Real>(base: R, t: R) -> R {
    let lt = t.max(R::of(8.0)).ln();
    base.max(R::epsilon() * R::of(100.0) * t * lt * lt)
}

/// Leading terms of the second-moment asymptotic: T ln T - (1+ln2pi-2c) T.
pub fn asymptotic_j<R: Real>(t: R) -> Result<R> {
    if !(t > R::one()) {
        return Err(Error::Domain(format!("asymptotic_j needs T > 1, got {t}")));
    }
    let k = crate::consts::Constants::<R>::new();
    Ok(t * t.ln() - k.hli_linear * t)
}

/// Fourth-moment leading term: (1/2pi^2) T ln^4 T.
pub fn asymptotic_fourth<R: Real>(t: R) -> Result<R> {
    if !(t > R::one()) {
        return Err(Error::Domain(format!(
            "asymptotic_fourth needs T > 1, got {t}"
        )));
    }
    let k = crate::consts::Constants::<R>::new();
    let l = t.ln();
    Ok(k.ingham_coeff * t * l * l * l * l)
}

/// Strip second-moment leading term: zeta(2 sigma) T.
pub fn asymptotic_strip<R: Real>(t: R, sigma: R, eps_min: R) -> Result<R> {
    if !(t >= R::one()) {
        return Err(Error::Domain(format!(
            "asymptotic_strip needs T >= 1, got {t}"
        )));
    }
    Ok(crate::zeta::zeta_two_sigma(sigma, eps_min)? * t)
}

#[cfg(test)]
mod tests;
