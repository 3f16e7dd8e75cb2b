//! One function per subcommand. Each returns the CSV table, a plot
//! description and, under `--check`, the acceptance verdicts.

use std::f64::consts::E;

use qsheet_core::geometry::{
    fit_hit_slope, hit_probabilities, hit_scaling, kendall_j, kendall_limit, range_volume, sojourn_fourier_mc,
    sojourn_spectrum, BallNorm, HitQuery,
};
use qsheet_core::ou::{
    capacity_estimate, mehler_apply, mehler_symmetry_check, sample_ou_sheet, strong_markov_test, PathEvent,
    PathFunctional,
};
use qsheet_core::pathstats::{
    chung_modulus, chung_modulus_ou, integral_table, levy_modulus, lil_block_scan, lil_profile, nowhere_diff_stat,
    partition_dyadic, quadratic_variation, reflection_check, reflection_holds, upper_class_test, IntegralTest,
    UpperFunction, Verdict,
};
use qsheet_core::sheet::{sample_multiscale, sample_sheet, GridSpec, SheetField};
use qsheet_core::stats::{covariance_table, CovEntry};
use qsheet_core::table::fmt_g17;
use qsheet_core::{run_replicas, Cell, EnsembleConfig, Path, Result, Seed, Table};

use crate::args::*;
use crate::defaults as d;
use crate::svg::PlotSpec;

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub seed: Seed,
    pub jobs: usize,
    pub check: bool,
}

impl Ctx {
    pub fn ensemble(&self, replicas: usize) -> EnsembleConfig {
        EnsembleConfig::new(replicas, self.seed).with_parallelism(self.jobs)
    }

    /// Stream for experiments that draw a single sample.
    fn single(&self) -> qsheet_core::RngStream {
        self.seed.stream(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckLine {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        CheckLine {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    pub plot: PlotSpec,
    pub checks: Vec<CheckLine>,
    /// Warnings reported on stderr.
    pub warnings: Vec<String>,
}

impl Outcome {
    fn new(table: Table, plot: PlotSpec) -> Self {
        Outcome {
            table,
            plot,
            checks: Vec::new(),
            warnings: Vec::new(),
        }
    }
}

pub fn execute(cmd: &Command, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        Command::Simulate(a) => simulate(a, ctx),
        Command::Lil(a) => lil(a, ctx),
        Command::LilBlocks(a) => lil_blocks(a, ctx),
        Command::Modulus(a) => modulus(a, ctx),
        Command::Chung(a) => chung(a, ctx),
        Command::Nodiff(a) => nodiff(a, ctx),
        Command::Qv(a) => qv(a, ctx),
        Command::Upperclass(a) => upperclass(a, ctx),
        Command::Capacity(a) => capacity(a, ctx),
        Command::Markov(a) => markov(a, ctx),
        Command::Reflect(a) => reflect(a, ctx),
        Command::Mehler(a) => mehler(a, ctx),
        Command::Hit(a) => hit(a, ctx),
        Command::Hitscale(a) => hitscale(a, ctx),
        Command::Rangevol(a) => rangevol(a, ctx),
        Command::Sojourn(a) => sojourn(a, ctx),
        Command::Kendall(a) => kendall(a, ctx),
    }
}

fn within(x: f64, band: (f64, f64)) -> bool {
    x >= band.0 && x <= band.1
}

fn g(x: f64) -> String {
    fmt_g17(x)
}

// ---------------------------------------------------------------- sheet

/// One probe of the covariance suite.
#[derive(Debug, Clone, PartialEq)]
pub struct CovProbe {
    pub a: (f64, f64),
    pub b: (f64, f64),
    pub entry: CovEntry,
    pub oracle: f64,
}

impl CovProbe {
    pub fn within(&self, k: f64) -> bool {
        (self.entry.cov - self.oracle).abs() <= k * self.entry.stderr
    }
}

/// Empirical covariances at the built-in probe pairs against `(s1 ^ s2)(t1 ^ t2)`.
pub fn covariance_suite(cfg: &EnsembleConfig) -> Result<Vec<CovProbe>> {
    let grid = GridSpec::square(d::COV_SIDE, d::COV_STEPS)?;
    let nodes: Vec<(usize, usize)> = d::COV_PROBES.iter().flat_map(|&(a, b)| [a, b]).collect();
    let ensemble = run_replicas(cfg, |_, rng| {
        let w = sample_sheet(&grid, rng)?;
        Ok(nodes.iter().map(|&(i, j)| w.value(i, j)).collect::<Vec<f64>>())
    })?;
    let probes: Vec<(usize, usize)> = (0..d::COV_PROBES.len()).map(|k| (2 * k, 2 * k + 1)).collect();
    let entries = covariance_table(&ensemble, &probes)?;
    Ok(d::COV_PROBES
        .iter()
        .zip(entries)
        .map(|(&((i1, j1), (i2, j2)), entry)| {
            let a = (grid.s(i1), grid.t(j1));
            let b = (grid.s(i2), grid.t(j2));
            CovProbe {
                a,
                b,
                entry,
                oracle: a.0.min(b.0) * a.1.min(b.1),
            }
        })
        .collect())
}

fn simulate(a: &SimulateArgs, ctx: &Ctx) -> Result<Outcome> {
    let grid = GridSpec::new(a.s_min, a.s_max, a.t_min, a.t_max, a.s_steps, a.t_steps)?;
    let sheet = sample_sheet(&grid, &mut ctx.single())?;
    let mut out = Outcome::new(
        sheet.to_table(),
        PlotSpec::new("Brownian sheet rows", "t", "value").grouped("s"),
    );
    if ctx.check {
        for p in covariance_suite(&ctx.ensemble(a.replicas))? {
            out.checks.push(CheckLine::new(
                "covariance",
                p.within(3.0),
                format!(
                    "({},{})~({},{}): {} +- {} vs {}",
                    p.a.0,
                    p.a.1,
                    p.b.0,
                    p.b.1,
                    g(p.entry.cov),
                    g(p.entry.stderr),
                    p.oracle
                ),
            ));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- LIL

fn lil(a: &LilArgs, ctx: &Ctx) -> Result<Outcome> {
    let ms = sample_multiscale(a.theta, a.n_min, a.n_max, a.s_steps, &mut ctx.single())?;
    let p = lil_profile(&ms)?;
    let mut table = p.to_table();
    table.comments.push(format!(
        "global_sup={} at s={} n={}",
        g(p.global_sup),
        g(p.argmax.0),
        p.argmax.1
    ));
    let mut out = Outcome::new(
        table,
        PlotSpec::new("LIL running maximum", "n", "running_max").grouped("s"),
    );
    if ctx.check {
        out.checks.push(CheckLine::new(
            "lil-band",
            within(p.global_sup, d::LIL_BAND),
            format!(
                "global sup {} in [{}, {}]",
                g(p.global_sup),
                d::LIL_BAND.0,
                d::LIL_BAND.1
            ),
        ));
        let mono = p
            .running_max
            .windows(2)
            .all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| b >= a));
        out.checks.push(CheckLine::new(
            "lil-running-max",
            mono,
            "running max nondecreasing in n",
        ));
    }
    Ok(out)
}

fn lil_blocks(a: &LilBlocksArgs, ctx: &Ctx) -> Result<Outcome> {
    let l = &a.lil;
    let ms = sample_multiscale(l.theta, l.n_min, l.n_max, l.s_steps, &mut ctx.single())?;
    let ev = lil_block_scan(&ms, a.c, a.eps)?;
    let mut table = Table::new(&["n", "e_n", "f_n"]);
    for b in &ev {
        table.push(vec![b.n.into(), (b.e_n as i64).into(), (b.f_n as i64).into()]);
    }
    let mut out = Outcome::new(table, PlotSpec::new("LIL block events", "n", "e_n"));
    if ctx.check {
        let scored: Vec<_> = ev.iter().filter(|b| b.n < l.n_max).collect();
        let freq = scored.iter().filter(|b| b.e_n).count() as f64 / scored.len().max(1) as f64;
        if a.c * (1.0 + a.eps) < 1.0 {
            out.checks.push(CheckLine::new(
                "lil-blocks-e",
                freq >= d::BLOCK_E_FLOOR,
                format!("E_n frequency {} >= {}", g(freq), d::BLOCK_E_FLOOR),
            ));
        }
        if a.c > 1.0 {
            let late = ev.iter().filter(|b| b.n >= d::BLOCK_F_FROM && b.f_n).count();
            out.checks.push(CheckLine::new(
                "lil-blocks-f",
                late == 0,
                format!("{late} F_n occurrences with n >= {}", d::BLOCK_F_FROM),
            ));
        }
        if out.checks.is_empty() {
            out.warnings
                .push("no acceptance band applies: need c (1 + eps) < 1 or c > 1".to_string());
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- moduli

/// The `[1, e] x [0, 1]` grid used by the modulus and QV statistics.
pub fn unit_strip(s_steps: usize, t_max: f64, t_steps: usize) -> Result<GridSpec> {
    GridSpec::new(1.0, E, 0.0, t_max, s_steps, t_steps)
}

fn modulus(a: &ModulusArgs, ctx: &Ctx) -> Result<Outcome> {
    let sheet = sample_sheet(&unit_strip(a.s_steps, 1.0, a.t_steps)?, &mut ctx.single())?;
    let p = levy_modulus(&sheet, &a.eps)?;
    let mut plot = PlotSpec::new("Uniform modulus ratio", "eps", "sup_ratio");
    plot.log_x = true;
    let mut out = Outcome::new(p.to_table(), plot);
    if ctx.check {
        let (k, e) = a
            .eps
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |m, (k, e)| if *e < m.1 { (k, *e) } else { m });
        let r = p.sup_ratio[k];
        out.checks.push(CheckLine::new(
            "modulus-band",
            within(r, d::MODULUS_BAND),
            format!(
                "ratio {} at eps {} in [{}, {}]",
                g(r),
                g(e),
                d::MODULUS_BAND.0,
                d::MODULUS_BAND.1
            ),
        ));
    }
    Ok(out)
}

/// Chung statistic on a grid of `t_steps` intervals per unit time, extended
/// past `t_span` far enough to hold a full window.
pub fn chung_sample(a: &ChungArgs, seed: Seed) -> Result<qsheet_core::pathstats::ChungProfile> {
    let dt = 1.0 / a.t_steps as f64;
    let span_steps = (a.t_span / dt).round() as usize;
    let extra = (a.eps / dt).ceil() as usize;
    let total = span_steps + extra;
    let t_max = total as f64 * dt;
    let mut rng = seed.stream(0);
    match a.field {
        ChungField::Ou => {
            let ou = sample_ou_sheet(a.s_max, a.s_steps, t_max, total, &mut rng)?;
            chung_modulus_ou(&ou, a.eps, a.t_span)
        }
        ChungField::Sheet => {
            let sheet = sample_sheet(&unit_strip(a.s_steps, t_max, total)?, &mut rng)?;
            chung_modulus(&sheet, a.eps, a.t_span)
        }
    }
}

fn chung(a: &ChungArgs, ctx: &Ctx) -> Result<Outcome> {
    let p = chung_sample(a, ctx.seed)?;
    let mut table = p.to_table();
    let med = p.median();
    table.comments.push(format!(
        "median={} inf={} sup={} target={}",
        g(med),
        g(p.inf),
        g(p.sup),
        g(std::f64::consts::PI / 8f64.sqrt())
    ));
    let mut out = Outcome::new(table, PlotSpec::new("Chung statistic per row", "s", "statistic"));
    if ctx.check {
        out.checks.push(CheckLine::new(
            "chung-band",
            within(med, d::CHUNG_BAND),
            format!("median {} in [{}, {}]", g(med), d::CHUNG_BAND.0, d::CHUNG_BAND.1),
        ));
    }
    Ok(out)
}

fn nodiff(a: &NodiffArgs, ctx: &Ctx) -> Result<Outcome> {
    let grid = unit_strip(a.s_steps, 1.0, a.t_steps)?;
    let sheet = if a.linear {
        SheetField::from_fn(grid, |_, t| t)
    } else {
        sample_sheet(&grid, &mut ctx.single())?
    };
    let stat = nowhere_diff_stat(&sheet, &a.levels, a.t_span)?;
    let mut table = Table::new(&["n", "statistic"]);
    for (n, v) in &stat {
        table.push(vec![(*n).into(), (*v).into()]);
    }
    let mut plot = PlotSpec::new("Nowhere-differentiability statistic", "n", "statistic");
    plot.log_x = true;
    let mut out = Outcome::new(table, plot);
    if ctx.check {
        if a.linear {
            let ok = stat.iter().all(|(_, v)| *v == 1.0);
            out.checks
                .push(CheckLine::new("nodiff-linear", ok, "linear control equals 1"));
        } else {
            let ok = stat.windows(2).all(|w| w[1].1 > w[0].1);
            out.checks
                .push(CheckLine::new("nodiff-increasing", ok, "statistic increasing in n"));
        }
    }
    Ok(out)
}

fn qv(a: &QvArgs, ctx: &Ctx) -> Result<Outcome> {
    let n = 1usize << a.depth;
    let sheet = sample_sheet(&unit_strip(a.s_steps, a.t, n)?, &mut ctx.single())?;
    let scheme = partition_dyadic(a.depth)?;
    let p = quadratic_variation(&sheet, &scheme, n, a.t)?;
    let mut table = p.to_table();
    table.comments.push(format!("sup_abs={}", g(p.sup_abs)));
    let mut out = Outcome::new(table, PlotSpec::new("Quadratic variation defect", "s", "vn"));
    if ctx.check {
        out.checks.push(CheckLine::new(
            "qv-bound",
            p.sup_abs <= d::QV_BOUND,
            format!("sup |V_n| = {} <= {}", g(p.sup_abs), d::QV_BOUND),
        ));
        let one = quadratic_variation(&sheet, &scheme, 1, a.t)?;
        let last = sheet.grid.t_steps;
        let exact = sheet
            .rows()
            .zip(&one.vn)
            .enumerate()
            .all(|(i, (row, v))| *v == row[last] * row[last] - sheet.grid.s(i) * a.t);
        out.checks
            .push(CheckLine::new("qv-identity", exact, "V_1 = W^2 - s t exactly"));
    }
    Ok(out)
}

// ---------------------------------------------------------------- upper classes

/// The verdict the integral tests must return for `phi_alpha`.
pub fn expected_verdict(alpha: f64, which: IntegralTest) -> Verdict {
    let threshold = match which {
        IntegralTest::Erdos => 3.0,
        IntegralTest::Mountford => 5.0,
    };
    if alpha > threshold {
        Verdict::Converges
    } else {
        Verdict::Diverges
    }
}

fn upperclass(a: &UpperclassArgs, ctx: &Ctx) -> Result<Outcome> {
    let mut rows = Vec::new();
    for &alpha in &a.alpha {
        for which in [IntegralTest::Erdos, IntegralTest::Mountford] {
            rows.push((alpha, upper_class_test(&UpperFunction::PhiAlpha(alpha), which)?));
        }
    }
    let mut out = Outcome::new(
        integral_table(&rows),
        PlotSpec::new("Integral tests", "alpha", "partial_value"),
    );
    if ctx.check {
        for (alpha, r) in &rows {
            let want = expected_verdict(*alpha, r.which);
            out.checks.push(CheckLine::new(
                "upperclass",
                r.verdict == want,
                format!(
                    "alpha {alpha} {}: {} (expected {})",
                    r.which.name(),
                    r.verdict.name(),
                    want.name()
                ),
            ));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- OU process

fn capacity(a: &CapacityArgs, ctx: &Ctx) -> Result<Outcome> {
    let cfg = ctx.ensemble(a.replicas);
    let rep = capacity_estimate(a.event, a.horizon, a.s_steps, a.t_steps, &cfg)?;
    let event = a.event;
    let t_steps = a.t_steps;
    let snap = run_replicas(&cfg, |_, rng| {
        let y = Path::brownian(1.0, t_steps, 1.0, rng);
        Ok(event.contains(&y) as u8 as f64)
    })?;
    let wiener = qsheet_core::EstimateReport::from_samples(&snap)?;
    let mut table = Table::new(&["event", "estimate", "stderr", "ci_low", "ci_high", "wiener_measure"]);
    table.push(vec![
        event_name(&a.event).into(),
        rep.mean.into(),
        rep.stderr.into(),
        rep.ci95.0.into(),
        rep.ci95.1.into(),
        wiener.mean.into(),
    ]);
    let mut out = Outcome::new(table, PlotSpec::new("Capacity estimate", "wiener_measure", "estimate"));
    out.warnings.extend(rep.warnings.iter().cloned());
    if ctx.check {
        out.checks.push(CheckLine::new(
            "capacity-positive",
            rep.ci95.0 > 0.0,
            format!("ci95 [{}, {}] excludes 0", g(rep.ci95.0), g(rep.ci95.1)),
        ));
        out.checks.push(CheckLine::new(
            "capacity-monotone",
            rep.mean >= wiener.mean - 3.0 * rep.stderr,
            format!(
                "estimate {} >= Wiener measure {} - 3 stderr",
                g(rep.mean),
                g(wiener.mean)
            ),
        ));
    }
    Ok(out)
}

pub fn event_name(e: &PathEvent) -> String {
    match *e {
        PathEvent::Everything => "everything".into(),
        PathEvent::Nothing => "nothing".into(),
        PathEvent::ZeroCrossingAt(t) => format!("zero-crossing:{t}"),
        PathEvent::SupExceeds(l) => format!("sup-exceeds:{l}"),
        PathEvent::ModulusViolation { eps, c } => format!("modulus:{eps}:{c}"),
    }
}

pub fn functional_name(f: &PathFunctional) -> String {
    match *f {
        PathFunctional::Eval(t) => format!("eval:{t}"),
        PathFunctional::SquareEval(t) => format!("square-eval:{t}"),
        PathFunctional::Sup => "sup".into(),
        PathFunctional::Integral => "integral".into(),
        PathFunctional::SignZero(t) => format!("sign-zero:{t}"),
    }
}

fn markov(a: &MarkovArgs, ctx: &Ctx) -> Result<Outcome> {
    let lags: Vec<(f64, f64)> = a.lags.iter().map(|p| (p.0, p.1)).collect();
    let r = strong_markov_test(a.lambda, &lags, a.ds, a.t_steps, a.horizon, &ctx.ensemble(a.replicas))?;
    let lag = |l: (f64, f64)| Cell::Text(format!("{}:{}", l.0, l.1));
    let mut table = Table::new(&["check", "lag_a", "lag_b", "statistic", "value", "stderr", "target"]);
    for c in &r.covariances {
        table.push(vec![
            "cov".into(),
            lag(c.lags.0),
            lag(c.lags.1),
            "".into(),
            c.empirical.into(),
            c.stderr.into(),
            c.oracle.into(),
        ]);
    }
    for c in &r.correlations {
        table.push(vec![
            "corr".into(),
            lag(c.lag),
            "".into(),
            c.statistic.into(),
            c.r.into(),
            c.stderr.into(),
            0.0.into(),
        ]);
    }
    table.comments.push(format!("mean_stop={}", g(r.mean_stop)));
    let mut out = Outcome::new(table, PlotSpec::new("Post-stopping covariances", "target", "value"));
    if ctx.check {
        for c in &r.covariances {
            out.checks.push(CheckLine::new(
                "markov-cov",
                c.within(3.0),
                format!("{:?}: {} +- {} vs {}", c.lags, g(c.empirical), g(c.stderr), c.oracle),
            ));
        }
        for c in &r.correlations {
            out.checks.push(CheckLine::new(
                "markov-corr",
                c.within(3.0),
                format!("{:?} with {}: r = {} +- {}", c.lag, c.statistic, g(c.r), g(c.stderr)),
            ));
        }
    }
    Ok(out)
}

fn reflect(a: &ReflectArgs, ctx: &Ctx) -> Result<Outcome> {
    let cfg = ctx.ensemble(a.replicas);
    let mut table = Table::new(&["T", "lambda", "lhs", "lhs_stderr", "rhs", "rhs_stderr", "holds"]);
    let mut checks = Vec::new();
    for p in &a.points {
        let (l, r) = reflection_check(p.0, p.1, a.s_steps, a.t_steps, &cfg)?;
        let ok = reflection_holds(&l, &r, 3.0);
        table.push(vec![
            p.0.into(),
            p.1.into(),
            l.mean.into(),
            l.stderr.into(),
            r.mean.into(),
            r.stderr.into(),
            (ok as i64).into(),
        ]);
        checks.push(CheckLine::new(
            "reflect",
            ok,
            format!("T {} lambda {}: {} <= 2 x {} + slack", p.0, p.1, g(l.mean), g(r.mean)),
        ));
    }
    let mut out = Outcome::new(table, PlotSpec::new("Reflection inequality", "rhs", "lhs"));
    if ctx.check {
        out.checks = checks;
    }
    Ok(out)
}

pub fn start_path(kind: StartPath, t_steps: usize) -> Path {
    let dt = 1.0 / t_steps as f64;
    let values = (0..=t_steps)
        .map(|j| {
            let t = j as f64 * dt;
            match kind {
                StartPath::Sin => t.sin(),
                StartPath::Linear => t,
                StartPath::Zero => 0.0,
            }
        })
        .collect();
    Path::new(0.0, dt, values)
}

/// Closed form of `(T_s f)(x)` where one is available.
pub fn mehler_target(f: &PathFunctional, x: &Path, s: f64) -> Option<f64> {
    let e = (-s).exp();
    match *f {
        PathFunctional::Eval(t) => Some((-0.5 * s).exp() * x.at(t)),
        PathFunctional::SquareEval(t) => Some((1.0 - e) * t + e * x.at(t).powi(2)),
        _ => None,
    }
}

fn mehler(a: &MehlerArgs, ctx: &Ctx) -> Result<Outcome> {
    let cfg = ctx.ensemble(a.replicas);
    let mut checks = Vec::new();
    let table = match a.g {
        None => {
            let x = start_path(a.x, a.t_steps);
            let mut t = Table::new(&["f", "s", "estimate", "stderr", "ci_low", "ci_high", "target"]);
            for &s in &a.s {
                let r = mehler_apply(a.f, &x, s, &cfg)?;
                let target = mehler_target(&a.f, &x, s);
                t.push(vec![
                    functional_name(&a.f).into(),
                    s.into(),
                    r.mean.into(),
                    r.stderr.into(),
                    r.ci95.0.into(),
                    r.ci95.1.into(),
                    target.map_or(Cell::Text(String::new()), Cell::Real),
                ]);
                if let Some(v) = target {
                    checks.push(CheckLine::new(
                        "mehler-apply",
                        r.contains(v),
                        format!("s {s}: {v} in [{}, {}]", g(r.ci95.0), g(r.ci95.1)),
                    ));
                }
            }
            t
        }
        Some(gf) => {
            let mut t = Table::new(&["f", "g", "s", "lhs", "lhs_stderr", "rhs", "rhs_stderr", "overlap"]);
            for &s in &a.s {
                let (l, r) = mehler_symmetry_check(a.f, gf, s, a.t_steps, &cfg)?;
                let ok = l.overlaps(&r);
                t.push(vec![
                    functional_name(&a.f).into(),
                    functional_name(&gf).into(),
                    s.into(),
                    l.mean.into(),
                    l.stderr.into(),
                    r.mean.into(),
                    r.stderr.into(),
                    (ok as i64).into(),
                ]);
                checks.push(CheckLine::new(
                    "mehler-symmetry",
                    ok,
                    format!("s {s}: {} vs {}", g(l.mean), g(r.mean)),
                ));
            }
            t
        }
    };
    let y = if a.g.is_some() { "lhs" } else { "estimate" };
    let mut out = Outcome::new(table, PlotSpec::new("Mehler semigroup", "s", y));
    if ctx.check {
        if checks.is_empty() {
            out.warnings
                .push("no closed form for this functional; nothing to check".into());
        }
        out.checks = checks;
    }
    Ok(out)
}

// ---------------------------------------------------------------- geometry

/// Verdict on a fitted hitting slope in dimension `d`.
pub fn hit_slope_check(d: usize, slope: f64, stderr: f64) -> Option<CheckLine> {
    if d >= 5 {
        let tol = d::hit_tolerance(d);
        let want = d as f64 - 4.0;
        Some(CheckLine::new(
            "hit-slope",
            (slope - want).abs() <= tol,
            format!("d {d}: slope {} within {want} +- {tol}", g(slope)),
        ))
    } else if d <= 3 {
        Some(CheckLine::new(
            "hit-slope",
            slope.abs() <= 3.0 * stderr,
            format!("d {d}: slope {} +- {} indistinguishable from 0", g(slope), g(stderr)),
        ))
    } else {
        None
    }
}

fn hit(a: &HitArgs, ctx: &Ctx) -> Result<Outcome> {
    let x = a.x.clone().unwrap_or_else(|| vec![0.0; a.dim]);
    if x.len() != a.dim {
        return Err(qsheet_core::Error::Argument(format!(
            "--x has {} coordinates, --dim is {}",
            x.len(),
            a.dim
        )));
    }
    let mut q = HitQuery::new(x, a.eps[0]);
    if a.l2 {
        q.norm = BallNorm::L2;
    }
    let est = hit_probabilities(&q, &a.eps, a.grid_steps, &ctx.ensemble(a.replicas))?;
    let mut table = Table::new(&["d", "eps", "estimate", "stderr"]);
    for (e, r) in a.eps.iter().zip(&est) {
        table.push(vec![a.dim.into(), (*e).into(), r.mean.into(), r.stderr.into()]);
    }
    let fit = if a.eps.len() >= 2 {
        fit_hit_slope(&a.eps, &est).ok()
    } else {
        None
    };
    if let Some((f, _, _)) = &fit {
        table
            .comments
            .push(format!("slope={} slope_stderr={}", g(f.slope), g(f.slope_stderr)));
    }
    let plot = PlotSpec::new("Hitting probability", "eps", "estimate")
        .log_log()
        .with_fit("stderr");
    let mut out = Outcome::new(table, plot);
    match &fit {
        Some((_, _, w)) => out.warnings.extend(w.iter().cloned()),
        None => out.warnings.extend(est.iter().flat_map(|r| r.warnings.iter().cloned())),
    }
    out.warnings.dedup();
    if ctx.check {
        match &fit {
            Some((f, _, _)) => out.checks.extend(hit_slope_check(a.dim, f.slope, f.slope_stderr)),
            None => out
                .checks
                .push(CheckLine::new("hit-slope", false, "no slope could be fitted")),
        }
    }
    Ok(out)
}

fn hitscale(a: &HitscaleArgs, ctx: &Ctx) -> Result<Outcome> {
    let cfg = ctx.ensemble(a.replicas);
    let mut table = Table::new(&["d", "slope", "slope_stderr"]);
    let mut out_checks = Vec::new();
    let mut warnings = Vec::new();
    for &dim in &a.dims {
        let h = hit_scaling(dim, &a.eps, a.grid_steps, &cfg)?;
        table.extend(h.slope_table());
        warnings.extend(h.warnings.iter().map(|w| format!("d {dim}: {w}")));
        out_checks.extend(hit_slope_check(dim, h.fit.slope, h.fit.slope_stderr));
    }
    let mut out = Outcome::new(table, PlotSpec::new("Hitting slope by dimension", "d", "slope"));
    out.warnings = warnings;
    if ctx.check {
        out.checks = out_checks;
    }
    Ok(out)
}

fn rangevol(a: &RangevolArgs, ctx: &Ctx) -> Result<Outcome> {
    let cfg = ctx.ensemble(a.replicas);
    let mut table = Table::new(&["d", "box_side", "volume", "stderr"]);
    let mut vols = Vec::new();
    for &b in &a.box_side {
        let r = range_volume(a.dim, a.grid_steps, b, &cfg)?;
        table.push(vec![a.dim.into(), b.into(), r.mean.into(), r.stderr.into()]);
        vols.push((b, r.mean));
    }
    let mut out = Outcome::new(
        table,
        PlotSpec::new("Range volume proxy", "box_side", "volume").log_log(),
    );
    if ctx.check {
        for w in vols.windows(2) {
            let ((b0, v0), (b1, v1)) = (w[0], w[1]);
            if (b0 / b1 - 2.0).abs() > 1e-9 {
                continue;
            }
            let ratio = v0 / v1;
            if a.dim < 4 {
                out.checks.push(CheckLine::new(
                    "rangevol-stable",
                    (0.5..=2.0).contains(&ratio),
                    format!("volume ratio {} within a factor 2 from {b0} to {b1}", g(ratio)),
                ));
            } else if a.dim >= 5 {
                out.checks.push(CheckLine::new(
                    "rangevol-shrinks",
                    ratio >= 4.0,
                    format!("volume shrinks by {} >= 4 from {b0} to {b1}", g(ratio)),
                ));
            }
        }
    }
    Ok(out)
}

fn sojourn(a: &SojournArgs, ctx: &Ctx) -> Result<Outcome> {
    let mut sp = sojourn_spectrum(a.dim, &a.xi)?;
    let mut warnings = Vec::new();
    if a.mc {
        let cfg = ctx.ensemble(a.replicas);
        let mut reps = Vec::new();
        for &x in &a.xi {
            let mut v = vec![0.0; a.dim];
            v[0] = x;
            let r = sojourn_fourier_mc(&v, a.s_max, a.grid_steps, &cfg)?;
            warnings.extend(r.warnings.iter().cloned());
            reps.push(r);
        }
        sp.mc = Some(reps);
    }
    warnings.dedup();
    let mut table = sp.to_table();
    table.comments.push(format!(
        "integral of Q over R^{}: {}",
        a.dim,
        if sp.integrable { "finite" } else { "infinite" }
    ));
    let mut out = Outcome::new(table, PlotSpec::new("Sojourn integrand", "xi", "Q").log_log());
    out.warnings = warnings;
    if ctx.check {
        if let Some(k) = a.xi.iter().position(|x| *x == 0.0) {
            out.checks.push(CheckLine::new(
                "sojourn-q0",
                (sp.q[k] - 0.25).abs() <= 1e-6,
                format!("Q(0) = {}", g(sp.q[k])),
            ));
        }
        let tail: Vec<f64> =
            a.xi.iter()
                .zip(&sp.q)
                .filter(|(x, _)| **x >= 100.0)
                .map(|(x, q)| q * x.powi(4))
                .collect();
        if tail.len() >= 2 {
            let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            out.checks.push(CheckLine::new(
                "sojourn-tail",
                hi / lo - 1.0 < 0.1,
                format!("Q |xi|^4 ranges over [{}, {}]", g(lo), g(hi)),
            ));
        }
        out.checks.push(CheckLine::new(
            "sojourn-verdict",
            sp.integrable == (a.dim <= 3),
            format!("d {}: {}", a.dim, if sp.integrable { "finite" } else { "infinite" }),
        ));
    }
    Ok(out)
}

fn kendall(a: &KendallArgs, ctx: &Ctx) -> Result<Outcome> {
    let cfg = ctx.ensemble(a.replicas);
    let mut rows = Vec::new();
    for &r in &a.r {
        rows.push((r, kendall_j(r, a.boundary_steps, a.lattice_steps, &cfg)?));
    }
    let limit = kendall_limit(a.limit_steps, false, &cfg)?;
    let mut table = qsheet_core::geometry::kendall_table(&rows);
    table.push(vec![0.0.into(), limit.mean.into(), limit.stderr.into()]);
    table.comments.push("the r = 0 row is the limit probability".into());
    let mut out = Outcome::new(table, PlotSpec::new("P{J(r)}", "r", "estimate"));
    if ctx.check {
        for (r, e) in &rows {
            out.checks.push(CheckLine::new(
                "kendall-floor",
                e.mean >= d::KENDALL_FLOOR && e.ci95.0 > 0.0,
                format!(
                    "r {r}: {} >= {} with ci95 low {}",
                    g(e.mean),
                    d::KENDALL_FLOOR,
                    g(e.ci95.0)
                ),
            ));
        }
        let mut by_r: Vec<(f64, f64)> = rows.iter().map(|(r, e)| (*r, (e.mean - limit.mean).abs())).collect();
        by_r.sort_by(|x, y| y.0.total_cmp(&x.0));
        let ok = by_r.windows(2).all(|w| w[1].1 <= w[0].1);
        out.checks.push(CheckLine::new(
            "kendall-trend",
            ok,
            format!("distance to limit {} nonincreasing as r decreases", g(limit.mean)),
        ));
    }
    Ok(out)
}
