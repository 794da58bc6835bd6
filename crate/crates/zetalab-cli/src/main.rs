//! Experiment front door: configuration, orchestration, cache lifecycle,
//! and emission of convergence tables plus a run manifest.

mod config;
mod output;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use config::ExperimentConfig;
use output::{write_table, Cell, Expectations, Table};
use zetalab::functionals::{CrossbredKind, FermatRational};
use zetalab::ladder::LadderConfig;
use zetalab::moments::{
    asymptotic_fourth, asymptotic_j, asymptotic_strip, MomentSpec, CACHE_FORMAT,
};
use zetalab::zeta::ZetaConfig as ZetaCfg;
use zetalab::{Error, FunctionalEngine, MomentCache, Result};

#[derive(Parser)]
#[command(
    name = "zetalab",
    version,
    about = "Desk-scale experiments on zeta moments and ladder iterations"
)]
struct Cli {
    /// key=value config file, applied before any flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Checkpoint cache file
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Directory for emitted data files
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Output format: csv | json
    #[arg(long, global = true)]
    format: Option<String>,
    /// Strip offset floor (sigma >= 1/2 + eps_min off the line)
    #[arg(long, global = true)]
    eps_min: Option<f64>,
    /// Default absolute tolerance for direct moment requests
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Relative solver tolerance
    #[arg(long, global = true)]
    solver_tol: Option<f64>,
    /// Minimum admissible base point
    #[arg(long, global = true)]
    t0: Option<f64>,
    /// Ladder mode: exact | asymptotic
    #[arg(long, global = true)]
    mode: Option<String>,
    /// Evaluation budget per moment call
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Critical-line fast-path threshold (number or `off`)
    #[arg(long, global = true)]
    rs_threshold: Option<String>,
    /// Per-unit tolerance for solver-facing moment evaluations
    #[arg(long, global = true)]
    moment_unit_tol: Option<f64>,
    /// Empirical half-width for heuristic verdicts
    #[arg(long, global = true)]
    band: Option<f64>,
    /// Expectations file with [lo, hi] bands for verify tables
    #[arg(long, global = true)]
    expectations: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate zeta(sigma + i t)
    Zeta {
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        t: f64,
    },
    /// Integral of |zeta(sigma + i t)|^power over [lower, upper]
    Moment {
        lower: f64,
        upper: f64,
        sigma: f64,
        power: u8,
    },
    /// Reverse ladder iterations with spacing and increment reports
    Ladder {
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// Convergence table for one asymptotic law
    Verify {
        /// hl1922 | hli | ingham | theorem1 | hli-functional |
        /// ingham-functional | determinant
        target: String,
        /// Single base height (shorthand for --grid with one entry)
        #[arg(long)]
        t: Option<f64>,
        /// Iteration rank (theorem1)
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Scaling parameter of the crossbred functionals
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        /// Comma-separated tau grid (functional targets)
        #[arg(long, value_delimiter = ',')]
        tau: Vec<f64>,
        /// Comma-separated T grid (height-based targets)
        #[arg(long, value_delimiter = ',')]
        grid: Vec<f64>,
    },
    /// Fermat-rational condition through a crossbred functional
    Fermat {
        x: u64,
        y: u64,
        z: u64,
        n: u32,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, value_delimiter = ',', default_value = "1000")]
        tau: Vec<f64>,
        /// hli | ingham
        #[arg(long, default_value = "hli")]
        kind: String,
    },
    /// Checkpoint cache maintenance
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Create an empty cache file for the current engine version
    Init,
    /// Print version, series count, checkpoint count, and frontiers
    Stats,
    /// Precompute checkpoints up to a height
    Extend {
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
        #[arg(long, default_value_t = 2)]
        power: u8,
    },
}

#[derive(Serialize)]
struct RunManifest {
    command: Vec<String>,
    config: Vec<(String, String)>,
    cli_version: String,
    engine_version: String,
    cache_format: String,
    wall_time_s: f64,
    eval_counts: Vec<(String, u64)>,
    outputs: Vec<String>,
    status: String,
}

/// Everything a command needs, plus the manifest bookkeeping.
struct Run {
    cfg: ExperimentConfig,
    engine: FunctionalEngine,
    expectations: Expectations,
    outputs: Vec<PathBuf>,
    eval_counts: Vec<(String, u64)>,
}

impl Run {
    fn new(cfg: ExperimentConfig) -> Result<Run> {
        let zeta = zetalab::ZetaEvaluator::new(ZetaCfg {
            eps_min: cfg.eps_min,
            rs_threshold: cfg.rs_threshold,
            ..ZetaCfg::default()
        });
        let moments = zetalab::MomentEngine::new(zeta, cfg.budget);
        let ladder = zetalab::LadderEngine::new(
            moments,
            LadderConfig {
                mode: cfg.mode,
                solver_tol: cfg.solver_tol,
                t0: cfg.t0,
                moment_unit_tol: cfg.moment_unit_tol,
            },
        )?;
        let expectations = match &cfg.expectations {
            Some(p) => Expectations::load(p)?,
            None => Expectations::default(),
        };
        Ok(Run {
            cfg,
            engine: FunctionalEngine::new(ladder),
            expectations,
            outputs: Vec::new(),
            eval_counts: Vec::new(),
        })
    }

    fn moments(&self) -> &zetalab::MomentEngine {
        &self.engine.ladder.moments
    }

    /// Absolute moment tolerance scaled to the height, floored by cfg.tol.
    fn tol_for(&self, t: f64) -> f64 {
        (t * self.cfg.moment_unit_tol).max(self.cfg.tol)
    }

    fn load_cache(&self) -> Result<MomentCache> {
        if self.cfg.cache_path.exists() {
            MomentCache::load(&self.cfg.cache_path, &self.moments().version())
        } else {
            Ok(self.moments().new_cache())
        }
    }

    fn save_cache(&self, cache: &MomentCache) -> Result<()> {
        cache.save(&self.cfg.cache_path)
    }

    fn emit(&mut self, table: &Table, stem: &str) -> Result<()> {
        table.print();
        let path = write_table(table, &self.cfg.out_dir, stem, self.cfg.format)?;
        self.outputs.push(path);
        Ok(())
    }

    fn count(&mut self, label: &str, n: u64) {
        self.eval_counts.push((label.to_string(), n));
    }
}

struct CacheLock(PathBuf);

impl CacheLock {
    /// Advisory single-writer lock next to the cache file.
    fn acquire(cache: &Path) -> Result<CacheLock> {
        let p = PathBuf::from(format!("{}.lock", cache.display()));
        match std::fs::OpenOptions::new()
            .write(true)
            .create_new(true)
            .open(&p)
        {
            Ok(_) => Ok(CacheLock(p)),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => Err(Error::Integrity(
                format!("cache lock {} is held by another process", p.display()),
            )),
            Err(e) => Err(Error::Integrity(format!(
                "cannot create lock {}: {e}",
                p.display()
            ))),
        }
    }
}

impl Drop for CacheLock {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Range { .. } => 3,
        Error::Precision { .. } => 4,
        Error::Budget { .. } => 5,
        Error::Solver { .. } => 6,
        Error::Integrity(_) => 7,
        Error::Compatibility { .. } => 8,
    }
}

fn usage_error(msg: &str) -> ! {
    eprintln!("usage error: {msg}");
    std::process::exit(2);
}

/// Argument-shape errors exit 2 before any file is touched.
fn usage_precheck(cmd: &Command) {
    match cmd {
        Command::Moment { sigma, power, .. } => {
            if *power != 2 && *power != 4 {
                usage_error("power must be 2 or 4");
            }
            if *power == 4 && *sigma != 0.5 {
                usage_error("power 4 is only defined on the critical line (sigma = 0.5)");
            }
        }
        Command::Verify {
            target, t, tau, grid, ..
        } => {
            let functional = matches!(target.as_str(), "hli-functional" | "ingham-functional");
            match target.as_str() {
                "hl1922" | "hli" | "ingham" | "theorem1" | "hli-functional"
                | "ingham-functional" | "determinant" => {}
                other => usage_error(&format!("unknown verify target `{other}`")),
            }
            if functional {
                if tau.is_empty() {
                    usage_error("this target needs a non-empty --tau grid");
                }
            } else if grid.is_empty() && t.is_none() {
                usage_error("this target needs --t or a non-empty --grid");
            }
        }
        Command::Fermat {
            x, y, z, n, tau, kind, ..
        } => {
            if *x < 1 || *y < 1 || *z < 1 || *n < 1 {
                usage_error("x, y, z, n must all be >= 1");
            }
            if tau.is_empty() {
                usage_error("--tau grid must be non-empty");
            }
            if kind != "hli" && kind != "ingham" {
                usage_error("--kind must be hli or ingham");
            }
        }
        _ => {}
    }
}

fn needs_lock(cmd: &Command) -> bool {
    match cmd {
        Command::Zeta { .. } => false,
        Command::Cache {
            action: CacheAction::Stats,
        } => false,
        _ => true,
    }
}

fn run_zeta(run: &mut Run, sigma: f64, t: f64) -> Result<()> {
    let z = &run.moments().zeta;
    let p = z.point(sigma, t)?;
    let e = z.eval(&p, z.cfg.default_tol)?;
    println!("re = {:.16e}", e.value.re);
    println!("im = {:.16e}", e.value.im);
    println!("abs_sq = {:.16e}", e.value.abs_sq);
    println!("err_bound = {:.16e}", e.value.err_bound);
    println!("terms = {}, path = {:?}", e.terms, e.path);
    Ok(())
}

fn run_moment(run: &mut Run, lower: f64, upper: f64, sigma: f64, power: u8) -> Result<()> {
    let spec = MomentSpec::new(lower, upper, sigma, power, run.cfg.tol, run.cfg.eps_min)?;
    let mut cache = run.load_cache()?;
    let r = run.moments().moment_integral(&spec, &mut cache)?;
    run.save_cache(&cache)?;
    run.count("moment", r.n_evals);
    let mut table = Table::new(&[
        "lower",
        "upper",
        "sigma",
        "power",
        "value",
        "err_estimate",
        "n_evals",
        "cache_hits",
    ]);
    table.push(vec![
        Cell::Num(lower),
        Cell::Num(upper),
        Cell::Num(sigma),
        Cell::Text(power.to_string()),
        Cell::Num(r.value),
        Cell::Num(r.err_estimate),
        Cell::Text(r.n_evals.to_string()),
        Cell::Text(r.cache_hits.to_string()),
    ]);
    run.emit(&table, "moment")
}

fn run_ladder(run: &mut Run, t: f64, k: u32) -> Result<()> {
    let mut cache = run.load_cache()?;
    let seq = run.engine.ladder.reverse_iterations(t, k, &mut cache)?;
    if k == 0 {
        run.save_cache(&cache)?;
        println!("T0 = {t:.16e}");
        return Ok(());
    }
    let mut iter_tab = Table::new(&["r", "Tr"]);
    for (r, &v) in seq.iterates().iter().enumerate() {
        iter_tab.push(vec![Cell::Text(r.to_string()), Cell::Num(v)]);
    }
    let spacing = run.engine.ladder.spacing_report(&seq)?;
    let mut sp_tab = Table::new(&["r", "gap", "(1-c)pi(Tr)", "ratio"]);
    for row in &spacing.rows {
        sp_tab.push(vec![
            Cell::Text(row.rank.to_string()),
            Cell::Num(row.gap),
            Cell::Num(row.reference),
            Cell::Num(row.ratio),
        ]);
    }
    let inc = run.engine.ladder.increment_energy_report(&seq, &mut cache)?;
    run.save_cache(&cache)?;
    let mut in_tab = Table::new(&["r", "increment", "(1-c)Tr-1", "ratio"]);
    for row in &inc.rows {
        in_tab.push(vec![
            Cell::Text(row.rank.to_string()),
            Cell::Num(row.increment),
            Cell::Num(row.reference),
            Cell::Num(row.ratio),
        ]);
    }
    run.emit(&iter_tab, "ladder_iterates")?;
    run.emit(&sp_tab, "ladder_spacing")?;
    run.emit(&in_tab, "ladder_increments")?;
    println!(
        "partition: sum = {:.16e}, whole = {:.16e}, tol = {:.16e}",
        inc.partition_sum, inc.partition_whole, inc.partition_tol
    );
    Ok(())
}

fn height_grid(t: Option<f64>, grid: &[f64]) -> Vec<f64> {
    if grid.is_empty() {
        vec![t.expect("prechecked")]
    } else {
        grid.to_vec()
    }
}

fn run_verify(
    run: &mut Run,
    target: &str,
    t: Option<f64>,
    r: u32,
    sigma: f64,
    x: f64,
    tau: &[f64],
    grid: &[f64],
) -> Result<()> {
    let mut cache = run.load_cache()?;
    let table = match target {
        "hl1922" => {
            let mut tab = Table::new(&["T", "J", "T lnT - (1+ln2pi-2c)T", "ratio", "within"]);
            for &h in &height_grid(t, grid) {
                let j = run
                    .moments()
                    .hardy_littlewood_j(h, run.tol_for(h), &mut cache)?;
                run.count("hardy_littlewood_j", j.n_evals);
                let lead = asymptotic_j(h)?;
                let ratio = j.value / lead;
                let within = run.expectations.judge(target, &[("T", h)], ratio);
                tab.push(vec![
                    Cell::Num(h),
                    Cell::Num(j.value),
                    Cell::Num(lead),
                    Cell::Num(ratio),
                    within,
                ]);
            }
            tab
        }
        "hli" => {
            let mut tab = Table::new(&["T", "sigma", "J1", "zeta(2sigma)T", "ratio", "within"]);
            for &h in &height_grid(t, grid) {
                let j1 = run
                    .moments()
                    .strip_second_moment(h, sigma, run.tol_for(h), &mut cache)?;
                run.count("strip_second_moment", j1.n_evals);
                let lead = asymptotic_strip(h, sigma, run.cfg.eps_min)?;
                let ratio = j1.value / lead;
                let within = run
                    .expectations
                    .judge(target, &[("T", h), ("sigma", sigma)], ratio);
                tab.push(vec![
                    Cell::Num(h),
                    Cell::Num(sigma),
                    Cell::Num(j1.value),
                    Cell::Num(lead),
                    Cell::Num(ratio),
                    within,
                ]);
            }
            tab
        }
        "ingham" => {
            let mut tab = Table::new(&["T", "M4", "(1/2pi^2) T ln^4 T", "ratio", "within"]);
            for &h in &height_grid(t, grid) {
                let m4 = run
                    .moments()
                    .fourth_moment(h, run.tol_for(h) * h.ln().powi(3), &mut cache)?;
                run.count("fourth_moment", m4.n_evals);
                let lead = asymptotic_fourth(h)?;
                let ratio = m4.value / lead;
                let within = run.expectations.judge(target, &[("T", h)], ratio);
                tab.push(vec![
                    Cell::Num(h),
                    Cell::Num(m4.value),
                    Cell::Num(lead),
                    Cell::Num(ratio),
                    within,
                ]);
            }
            tab
        }
        "theorem1" => {
            let mut tab = Table::new(&[
                "T",
                "r",
                "sigma",
                "ratio",
                "lnT/zeta(2sigma)",
                "difference",
                "within",
            ]);
            for &h in &height_grid(t, grid) {
                let ri = run.engine.ratio_interaction(h, r, sigma, &mut cache)?;
                let diff = ri.ratio - ri.reference;
                let within = run.expectations.judge(
                    target,
                    &[("T", h), ("r", r as f64), ("sigma", sigma)],
                    diff,
                );
                tab.push(vec![
                    Cell::Num(h),
                    Cell::Text(r.to_string()),
                    Cell::Num(sigma),
                    Cell::Num(ri.ratio),
                    Cell::Num(ri.reference),
                    Cell::Num(diff),
                    within,
                ]);
            }
            tab
        }
        "hli-functional" | "ingham-functional" => {
            let kind = if target == "hli-functional" {
                CrossbredKind::Hli
            } else {
                CrossbredKind::Ingham
            };
            let sweep = run
                .engine
                .convergence_sweep(kind, x, sigma, tau, &mut cache)?;
            let mut tab = Table::new(&["tau", "raw", "target", "deviation", "within", "error"]);
            for row in &sweep.rows {
                match (&row.estimate, &row.error) {
                    (Some(est), _) => {
                        let within = run.expectations.judge(
                            target,
                            &[("tau", row.tau), ("x", x), ("sigma", sigma)],
                            est.raw_value / est.target,
                        );
                        tab.push(vec![
                            Cell::Num(row.tau),
                            Cell::Num(est.raw_value),
                            Cell::Num(est.target),
                            Cell::Num(est.deviation),
                            within,
                            Cell::Text(String::new()),
                        ]);
                    }
                    (None, Some(e)) => tab.push(vec![
                        Cell::Num(row.tau),
                        Cell::Text(String::new()),
                        Cell::Text(String::new()),
                        Cell::Text(String::new()),
                        Cell::Text("n-a".into()),
                        Cell::Text(format!("{e}").replace(',', ";")),
                    ]),
                    (None, None) => unreachable!("sweep rows carry a value or an error"),
                }
            }
            println!(
                "trend_improving = {}",
                match sweep.trend_improving {
                    Some(b) => b.to_string(),
                    None => "n-a".into(),
                }
            );
            tab
        }
        "determinant" => {
            let mut tab = Table::new(&["T", "sigma", "lhs", "rhs", "lhs_over_rhs", "within"]);
            for &h in &height_grid(t, grid) {
                let det = run.engine.determinant_interaction(h, sigma, &mut cache)?;
                let q = det.lhs / det.rhs;
                let within = run
                    .expectations
                    .judge(target, &[("T", h), ("sigma", sigma)], q);
                tab.push(vec![
                    Cell::Num(h),
                    Cell::Num(sigma),
                    Cell::Num(det.lhs),
                    Cell::Num(det.rhs),
                    Cell::Num(q),
                    within,
                ]);
            }
            tab
        }
        other => return Err(Error::Domain(format!("unknown verify target `{other}`"))),
    };
    run.save_cache(&cache)?;
    run.emit(&table, &format!("verify_{target}"))
}

fn run_fermat(
    run: &mut Run,
    x: u64,
    y: u64,
    z: u64,
    n: u32,
    sigma: f64,
    tau: &[f64],
    kind: &str,
) -> Result<()> {
    let fr = FermatRational::new(x, y, z, n)?;
    let kind = if kind == "hli" {
        CrossbredKind::Hli
    } else {
        CrossbredKind::Ingham
    };
    let mut cache = run.load_cache()?;
    let mut tab = Table::new(&["tau", "raw", "exact_value", "deviation", "verdict"]);
    let mut last_verdict = None;
    for &tv in tau {
        let (est, verdict) =
            run.engine
                .fermat_condition(kind, &fr, sigma, tv, run.cfg.band, &mut cache)?;
        tab.push(vec![
            Cell::Num(tv),
            Cell::Num(est.raw_value),
            Cell::Num(est.target),
            Cell::Num(est.deviation),
            Cell::Text(verdict.text.replace(',', ";")),
        ]);
        last_verdict = Some(verdict);
    }
    run.save_cache(&cache)?;
    run.emit(&tab, "fermat")?;
    let v = last_verdict.expect("tau grid prechecked non-empty");
    println!(
        "exact: {}^{n} + {}^{n} {} {}^{n}",
        x,
        y,
        if v.exact_unit { "=" } else { "!=" },
        z
    );
    println!("verdict: {}", v.text);
    Ok(())
}

fn run_cache(run: &mut Run, action: &CacheAction) -> Result<()> {
    match action {
        CacheAction::Init => {
            let cache = run.moments().new_cache();
            run.save_cache(&cache)?;
            let (series, points) = cache.stats();
            println!(
                "initialized {} (version {}, {series} series, {points} checkpoints)",
                run.cfg.cache_path.display(),
                cache.version()
            );
        }
        CacheAction::Stats => {
            let cache = MomentCache::load(&run.cfg.cache_path, &run.moments().version())?;
            let (series, points) = cache.stats();
            println!("version = {}", cache.version());
            println!("series = {series}");
            println!("checkpoints = {points}");
            for (sigma, power) in [(0.5, 2u8), (0.5, 4u8)] {
                if let Some(f) = cache.frontier(sigma, power) {
                    println!("frontier sigma={sigma} power={power} = {f:.16e}");
                }
            }
        }
        CacheAction::Extend { to, sigma, power } => {
            let mut cache = run.load_cache()?;
            let added = run.moments().extend_cache(&mut cache, *sigma, *power, *to)?;
            run.save_cache(&cache)?;
            run.count("extend_cache_cells", added);
            println!(
                "extended sigma={sigma} power={power} to {to}: {added} new checkpoints, frontier = {:.16e}",
                cache.frontier(*sigma, *power).unwrap_or(0.0)
            );
        }
    }
    Ok(())
}

fn dispatch(cmd: &Command, run: &mut Run) -> Result<()> {
    match cmd {
        Command::Zeta { sigma, t } => run_zeta(run, *sigma, *t),
        Command::Moment {
            lower,
            upper,
            sigma,
            power,
        } => run_moment(run, *lower, *upper, *sigma, *power),
        Command::Ladder { t, k } => run_ladder(run, *t, *k),
        Command::Verify {
            target,
            t,
            r,
            sigma,
            x,
            tau,
            grid,
        } => run_verify(run, target, *t, *r, *sigma, *x, tau, grid),
        Command::Fermat {
            x,
            y,
            z,
            n,
            sigma,
            tau,
            kind,
        } => run_fermat(run, *x, *y, *z, *n, *sigma, tau, kind),
        Command::Cache { action } => run_cache(run, action),
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Zeta { .. } => "zeta",
        Command::Moment { .. } => "moment",
        Command::Ladder { .. } => "ladder",
        Command::Verify { .. } => "verify",
        Command::Fermat { .. } => "fermat",
        Command::Cache { .. } => "cache",
    }
}

fn write_manifest(run: &Run, cmd: &Command, started: Instant, status: String) -> Result<()> {
    let manifest = RunManifest {
        command: std::env::args().collect(),
        config: run.cfg.pairs(),
        cli_version: env!("CARGO_PKG_VERSION").to_string(),
        engine_version: run.moments().version(),
        cache_format: CACHE_FORMAT.to_string(),
        wall_time_s: started.elapsed().as_secs_f64(),
        eval_counts: run.eval_counts.clone(),
        outputs: run
            .outputs
            .iter()
            .map(|p| p.display().to_string())
            .collect(),
        status,
    };
    std::fs::create_dir_all(&run.cfg.out_dir).map_err(|e| {
        Error::Integrity(format!("cannot create {}: {e}", run.cfg.out_dir.display()))
    })?;
    let path = run
        .cfg
        .out_dir
        .join(format!("manifest_{}.json", command_name(cmd)));
    let body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(&path, body)
        .map_err(|e| Error::Integrity(format!("cannot write {}: {e}", path.display())))
}

fn main() {
    // destructors (the cache lock) must run before the process exits
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = Cli::parse();
    let started = Instant::now();

    let mut cfg = ExperimentConfig::default();
    let resolved = (|| -> Result<()> {
        if let Some(p) = &cli.config {
            cfg.apply_file(p)?;
        }
        let s = |v: &Option<f64>| v.map(|x| format!("{x:e}"));
        let overrides: Vec<(&str, Option<String>)> = vec![
            ("cache", cli.cache.as_ref().map(|p| p.display().to_string())),
            (
                "out_dir",
                cli.out_dir.as_ref().map(|p| p.display().to_string()),
            ),
            ("format", cli.format.clone()),
            ("eps_min", s(&cli.eps_min)),
            ("tol", s(&cli.tol)),
            ("solver_tol", s(&cli.solver_tol)),
            ("t0", s(&cli.t0)),
            ("mode", cli.mode.clone()),
            ("budget", cli.budget.map(|b| b.to_string())),
            ("rs_threshold", cli.rs_threshold.clone()),
            ("moment_unit_tol", s(&cli.moment_unit_tol)),
            ("band", s(&cli.band)),
            (
                "expectations",
                cli.expectations.as_ref().map(|p| p.display().to_string()),
            ),
        ];
        for (key, value) in overrides {
            if let Some(v) = value {
                cfg.set(key, &v)?;
            }
        }
        cfg.validate()
    })();
    if let Err(e) = resolved {
        eprintln!("error: {e}");
        return exit_code(&e);
    }

    usage_precheck(&cli.cmd);

    let mut run = match Run::new(cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };

    let _lock = if needs_lock(&cli.cmd) {
        match CacheLock::acquire(&run.cfg.cache_path) {
            Ok(l) => Some(l),
            Err(e) => {
                eprintln!("error: {e}");
                return exit_code(&e);
            }
        }
    } else {
        None
    };

    let result = dispatch(&cli.cmd, &mut run);
    let status = match &result {
        Ok(()) => "ok".to_string(),
        Err(e) => format!("error: {e}"),
    };
    if let Err(e) = write_manifest(&run, &cli.cmd, started, status) {
        eprintln!("error: {e}");
        return exit_code(&e);
    }
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
