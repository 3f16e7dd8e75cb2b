//! The Ornstein-Uhlenbeck process `U(s, t) = e^{-s/2} W(e^s, t)` on Wiener
//! space, its Mehler semigroup, killed hitting probabilities and the
//! strong Markov harness.

use crate::ensemble::{run_replicas, EnsembleConfig, EstimateReport};
use crate::error::{ensure_arg, Error, Result};
use crate::path::Path;
use crate::rng::{GaussianSource, RngStream};
use crate::sheet::{sample_rows, SheetField};
use crate::stats::{correlation, covariance_table};

/// `U(s_k, t_j)` on a (possibly non-uniform) `s` grid and a uniform `t` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OUSheet {
    pub s_grid: Vec<f64>,
    pub t0: f64,
    pub dt: f64,
    pub t_steps: usize,
    pub values: Vec<f64>,
}

impl OUSheet {
    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * (self.t_steps + 1) + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let c = self.t_steps + 1;
        &self.values[i * c..(i + 1) * c]
    }

    /// The snapshot `Y_{s_i} = U(s_i, .)`.
    pub fn snapshot(&self, i: usize) -> Path {
        Path::new(self.t0, self.dt, self.row(i).to_vec())
    }

    pub fn trajectory(&self) -> OUTrajectory {
        OUTrajectory {
            s_grid: self.s_grid.clone(),
            paths: (0..self.s_grid.len()).map(|i| self.snapshot(i)).collect(),
        }
    }
}

/// Path-valued snapshots `s -> Y_s` on a common `t` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OUTrajectory {
    pub s_grid: Vec<f64>,
    pub paths: Vec<Path>,
}

impl OUTrajectory {
    /// Run the `Y` diffusion from `y0` for `steps` exact transitions of size `ds`.
    pub fn simulate<G: GaussianSource + ?Sized>(y0: Path, ds: f64, steps: usize, g: &mut G) -> Result<Self> {
        let mut paths = Vec::with_capacity(steps + 1);
        let mut cur = y0;
        for _ in 0..steps {
            let next = ou_propagate(&cur, ds, g)?;
            paths.push(std::mem::replace(&mut cur, next));
        }
        paths.push(cur);
        Ok(OUTrajectory {
            s_grid: (0..=steps).map(|k| k as f64 * ds).collect(),
            paths,
        })
    }
}

/// `U(ln s_i, t) = W(s_i, t) / sqrt(s_i)` over the sheet nodes `s_i` in `[1, e^{s_max}]`.
///
/// A sheet whose first coordinate is log-spaced gives a uniform OU grid;
/// a uniform sheet grid gives the corresponding logarithmic OU grid.
pub fn ou_from_sheet(sheet: &SheetField, s_max: f64) -> Result<OUSheet> {
    ensure_arg!(
        s_max >= 0.0 && s_max.is_finite(),
        "s_max must be finite and nonnegative"
    );
    let g = &sheet.grid;
    let hi = s_max.exp();
    let tol = 1e-9 * hi;
    ensure_arg!(
        g.s_min <= 1.0 + 1e-12 && g.s_max >= hi - tol,
        "sheet s window [{}, {}] does not cover [1, {hi}]",
        g.s_min,
        g.s_max
    );
    let mut s_grid = Vec::new();
    let mut values = Vec::new();
    for i in 0..=g.s_steps {
        let s = g.s(i);
        if s < 1.0 - 1e-12 || s > hi + tol {
            continue;
        }
        let scale = 1.0 / s.sqrt();
        s_grid.push(s.ln().max(0.0));
        values.extend(sheet.row(i).iter().map(|w| w * scale));
    }
    ensure_arg!(!s_grid.is_empty(), "no sheet nodes inside [1, {hi}]");
    Ok(OUSheet {
        s_grid,
        t0: g.t_min,
        dt: g.dt(),
        t_steps: g.t_steps,
        values,
    })
}

/// Exact OU sheet on the uniform grid `s_k = k s_max / s_steps`, `t` in `[0, t_max]`.
pub fn sample_ou_sheet<G: GaussianSource + ?Sized>(
    s_max: f64,
    s_steps: usize,
    t_max: f64,
    t_steps: usize,
    g: &mut G,
) -> Result<OUSheet> {
    ensure_arg!(s_max > 0.0 && s_max.is_finite() && s_steps >= 1, "invalid OU s grid");
    let s_grid: Vec<f64> = (0..=s_steps).map(|k| s_max * k as f64 / s_steps as f64).collect();
    let sheet_s: Vec<f64> = s_grid.iter().map(|s| s.exp()).collect();
    let rows = sample_rows(&sheet_s, t_max, t_steps, g)?;
    let mut values = Vec::with_capacity(s_grid.len() * (t_steps + 1));
    for (row, s) in rows.iter().zip(&s_grid) {
        let scale = (-0.5 * s).exp();
        values.extend(row.iter().map(|w| w * scale));
    }
    Ok(OUSheet {
        s_grid,
        t0: 0.0,
        dt: t_max / t_steps as f64,
        t_steps,
        values,
    })
}

/// One exact transition of the `Y` diffusion: `sqrt(1 - e^{-s}) B + e^{-s/2} x`.
pub fn ou_propagate<G: GaussianSource + ?Sized>(x: &Path, s: f64, g: &mut G) -> Result<Path> {
    ensure_arg!(s >= 0.0, "OU time must be nonnegative, got {s}");
    let a = (-s).exp_m1().abs().sqrt();
    let b = (-0.5 * s).exp();
    let sd = (x.dt).sqrt();
    let mut out = Vec::with_capacity(x.len());
    let mut bm = x.t0.sqrt() * g.normal();
    out.push(a * bm + b * x.values[0]);
    for v in &x.values[1..] {
        bm += sd * g.normal();
        out.push(a * bm + b * v);
    }
    Ok(Path::new(x.t0, x.dt, out))
}

/// Real functionals of a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathFunctional {
    /// `x(t0)`
    Eval(f64),
    /// `x(t0)^2`
    SquareEval(f64),
    /// `max_t x(t)`
    Sup,
    /// `int x(t) dt` by the trapezoid rule
    Integral,
    /// `sign(x(t0))` with `sign(0) = 0`
    SignZero(f64),
}

impl PathFunctional {
    pub fn apply(&self, x: &Path) -> f64 {
        match *self {
            PathFunctional::Eval(t) => x.at(t),
            PathFunctional::SquareEval(t) => x.at(t).powi(2),
            PathFunctional::Sup => x.values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            PathFunctional::Integral => {
                let v = &x.values;
                if v.len() < 2 {
                    return 0.0;
                }
                let inner: f64 = v[1..v.len() - 1].iter().sum();
                x.dt * (inner + 0.5 * (v[0] + v[v.len() - 1]))
            }
            PathFunctional::SignZero(t) => {
                let y = x.at(t);
                if y > 0.0 {
                    1.0
                } else if y < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, PathFunctional::SignZero(_))
    }

    /// Parse `eval:1`, `square-eval:0.5`, `sup`, `integral`, `sign-zero:1`.
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, arg) = match text.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (text, None),
        };
        let t = |a: Option<&str>| -> Result<f64> {
            a.ok_or_else(|| Error::Argument(format!("functional `{kind}` needs a time argument")))?
                .parse::<f64>()
                .map_err(|_| Error::Argument(format!("bad time in functional `{text}`")))
        };
        Ok(match kind {
            "eval" => PathFunctional::Eval(t(arg)?),
            "square-eval" => PathFunctional::SquareEval(t(arg)?),
            "sign-zero" => PathFunctional::SignZero(t(arg)?),
            "sup" => PathFunctional::Sup,
            "integral" => PathFunctional::Integral,
            _ => return Err(Error::Argument(format!("unknown functional `{text}`"))),
        })
    }
}

/// Monte Carlo of `(T_s f)(x) = E f(sqrt(1 - e^{-s}) y + e^{-s/2} x)` over Wiener paths `y`.
pub fn mehler_apply(f: PathFunctional, x: &Path, s: f64, cfg: &EnsembleConfig) -> Result<EstimateReport> {
    ensure_arg!(s >= 0.0, "OU time must be nonnegative, got {s}");
    ensure_arg!(cfg.replicas >= 2, "need at least 2 replicas");
    if s == 0.0 {
        // the transition is the identity, so every replica returns f(x)
        return Ok(EstimateReport::exact(f.apply(x), cfg.replicas));
    }
    let samples = run_replicas(cfg, |_, rng| Ok(f.apply(&ou_propagate(x, s, rng)?)))?;
    EstimateReport::from_samples(&samples)
}

/// Estimates of `<g, T_s f>` and `<T_s g, f>` under Wiener measure, each
/// on its own derived seed. Symmetry of the semigroup means the two agree.
pub fn mehler_symmetry_check(
    f: PathFunctional,
    g: PathFunctional,
    s: f64,
    t_steps: usize,
    cfg: &EnsembleConfig,
) -> Result<(EstimateReport, EstimateReport)> {
    ensure_arg!(s >= 0.0, "OU time must be nonnegative, got {s}");
    ensure_arg!(cfg.replicas >= 2, "need at least 2 replicas");
    ensure_arg!(t_steps >= 1, "need at least one t step");
    let side = |outer: PathFunctional, inner: PathFunctional, tag: u64| -> Result<EstimateReport> {
        let c = EnsembleConfig {
            seed: cfg.seed.derive(tag),
            ..*cfg
        };
        let v = run_replicas(&c, |_, rng| {
            let x = Path::brownian(1.0, t_steps, 1.0, rng);
            let y = ou_propagate(&x, s, rng)?;
            Ok(outer.apply(&x) * inner.apply(&y))
        })?;
        EstimateReport::from_samples(&v)
    };
    Ok((side(g, f, 1)?, side(f, g, 2)?))
}

/// Path-space events evaluated on grid snapshots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathEvent {
    /// Every path.
    Everything,
    /// No path.
    Nothing,
    /// `x(t0) = 0`; along an OU trajectory, a sign change of `Y_s(t0)` between grid times.
    ZeroCrossingAt(f64),
    /// `max_t x(t) >= lambda`.
    SupExceeds(f64),
    /// Some pair of grid times within `eps` has `|x(u) - x(v)| > c sqrt(2 eps ln(1/eps))`.
    ModulusViolation { eps: f64, c: f64 },
}

impl PathEvent {
    /// Whether the single snapshot `x` lies in the event.
    pub fn contains(&self, x: &Path) -> bool {
        match *self {
            PathEvent::Everything => true,
            PathEvent::Nothing => false,
            PathEvent::ZeroCrossingAt(t) => x.at(t) == 0.0,
            PathEvent::SupExceeds(l) => x.values.iter().any(|v| *v >= l),
            PathEvent::ModulusViolation { eps, c } => {
                let w = ((eps / x.dt) + 1e-9).floor() as usize;
                if w == 0 {
                    return false;
                }
                let bound = c * (2.0 * eps * (1.0 / eps).ln()).sqrt();
                let v = &x.values;
                (0..v.len()).any(|i| {
                    v[i + 1..(i + w + 1).min(v.len())]
                        .iter()
                        .any(|y| (y - v[i]).abs() > bound)
                })
            }
        }
    }

    /// Whether the trajectory entered the event on `(s_prev, s_cur]`.
    pub fn entered(&self, prev: &Path, cur: &Path) -> bool {
        match *self {
            PathEvent::ZeroCrossingAt(t) => {
                let (a, b) = (prev.at(t), cur.at(t));
                b == 0.0 || (a < 0.0) != (b < 0.0)
            }
            _ => self.contains(cur),
        }
    }

    /// Parse `everything`, `nothing`, `zero-crossing:1`, `sup-exceeds:2`, `modulus:0.01:1.5`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let num = |k: usize| -> Result<f64> {
            parts
                .get(k)
                .ok_or_else(|| Error::Argument(format!("event `{text}` is missing a parameter")))?
                .parse::<f64>()
                .map_err(|_| Error::Argument(format!("bad number in event `{text}`")))
        };
        Ok(match parts[0] {
            "everything" => PathEvent::Everything,
            "nothing" => PathEvent::Nothing,
            "zero-crossing" => PathEvent::ZeroCrossingAt(num(1)?),
            "sup-exceeds" => PathEvent::SupExceeds(num(1)?),
            "modulus" => PathEvent::ModulusViolation {
                eps: num(1)?,
                c: num(2)?,
            },
            _ => return Err(Error::Argument(format!("unknown event `{text}`"))),
        })
    }
}

/// Probability that the `Y` diffusion, started from Wiener measure and
/// killed at an independent `Exp(1)` time, visits `event`.
///
/// The killing time is truncated at `s_horizon`; `s_steps` exact
/// transitions cover `[0, s_horizon]`.
pub fn capacity_estimate(
    event: PathEvent,
    s_horizon: f64,
    s_steps: usize,
    t_steps: usize,
    cfg: &EnsembleConfig,
) -> Result<EstimateReport> {
    ensure_arg!(cfg.replicas >= 100, "capacity estimation needs at least 100 replicas");
    ensure_arg!(s_horizon > 0.0 && s_steps >= 1 && t_steps >= 1, "invalid capacity grid");
    let ds = s_horizon / s_steps as f64;
    let hits = run_replicas(cfg, |_, rng: &mut RngStream| {
        let kill = rng.exp1().min(s_horizon);
        let mut y = Path::brownian(1.0, t_steps, 1.0, rng);
        if event.contains(&y) {
            return Ok(1.0);
        }
        let mut k = 1;
        while k <= s_steps && k as f64 * ds <= kill {
            let next = ou_propagate(&y, ds, rng)?;
            if event.entered(&y, &next) {
                return Ok(1.0);
            }
            y = next;
            k += 1;
        }
        Ok(0.0)
    })?;
    let mut rep = EstimateReport::from_samples(&hits)?;
    let lost = (-s_horizon).exp();
    if lost > 0.01 {
        rep = rep.with_warning(format!(
            "killing time truncated at {s_horizon}: lost mass {lost:.3e} exceeds 0.01"
        ));
    }
    Ok(rep)
}

/// Empirical versus oracle covariance of the post-stopping increment sheet.
#[derive(Debug, Clone, PartialEq)]
pub struct CovCheck {
    pub lags: ((f64, f64), (f64, f64)),
    pub empirical: f64,
    pub stderr: f64,
    pub oracle: f64,
}

impl CovCheck {
    pub fn within(&self, k: f64) -> bool {
        (self.empirical - self.oracle).abs() <= k * self.stderr
    }
}

/// Correlation of one post-stopping increment with one pre-stopping statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrCheck {
    pub lag: (f64, f64),
    pub statistic: &'static str,
    pub r: f64,
    pub stderr: f64,
}

impl CorrCheck {
    pub fn within(&self, k: f64) -> bool {
        self.r.abs() <= k * self.stderr
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrongMarkovReport {
    pub lambda: f64,
    pub replicas: usize,
    pub mean_stop: f64,
    pub covariances: Vec<CovCheck>,
    pub correlations: Vec<CorrCheck>,
}

/// Strong Markov harness for `S = inf{ s on the grid : max_{t <= 1} |W(s, t)| >= lambda }`.
///
/// The sheet is advanced row by row in steps of `ds`; after `S` fires the
/// increments `D(s_i, t_i) = W(S + s_i, t_i) - W(S, t_i)` are recorded.
/// Lag coordinates are snapped to the `s` and `t` grids.
pub fn strong_markov_test(
    lambda: f64,
    lags: &[(f64, f64)],
    ds: f64,
    t_steps: usize,
    s_horizon: f64,
    cfg: &EnsembleConfig,
) -> Result<StrongMarkovReport> {
    ensure_arg!(lambda >= 0.0, "lambda must be nonnegative");
    ensure_arg!(!lags.is_empty(), "need at least one lag");
    ensure_arg!(ds > 0.0 && s_horizon > 0.0 && t_steps >= 1, "invalid grid");
    ensure_arg!(cfg.replicas >= 3, "need at least 3 replicas");
    ensure_arg!(
        lags.iter().all(|&(s, t)| s > 0.0 && t > 0.0 && t <= 1.0),
        "lags need s > 0 and t in (0, 1]"
    );
    let dt = 1.0 / t_steps as f64;
    let snapped: Vec<(usize, usize)> = lags
        .iter()
        .map(|&(s, t)| (((s / ds).round() as usize).max(1), ((t / dt).round() as usize).max(1)))
        .collect();
    let max_lag = snapped.iter().map(|l| l.0).max().expect("nonempty");
    let horizon_steps = (s_horizon / ds).round() as usize;
    let sd = (ds * dt).sqrt();

    let advance = |row: &mut [f64], rng: &mut RngStream| {
        let mut acc = 0.0;
        for x in row.iter_mut().skip(1) {
            acc += sd * rng.normal();
            *x += acc;
        }
    };

    let outcomes = run_replicas(cfg, |_, rng| {
        let mut row: Vec<f64> = vec![0.0; t_steps + 1];
        let mut k = 0usize;
        loop {
            let m = row.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if m >= lambda {
                break;
            }
            if k >= horizon_steps {
                return Ok(None);
            }
            advance(&mut row, rng);
            k += 1;
        }
        let base = row.clone();
        let mut d = vec![0.0; snapped.len()];
        for step in 1..=max_lag {
            advance(&mut row, rng);
            for (slot, &(ls, lt)) in d.iter_mut().zip(&snapped) {
                if ls == step {
                    *slot = row[lt] - base[lt];
                }
            }
        }
        Ok(Some((k as f64 * ds, base[t_steps], d)))
    })?;

    let failed = outcomes.iter().filter(|o| o.is_none()).count();
    if failed * 100 > cfg.replicas {
        return Err(Error::Numeric(format!(
            "stopping rule did not fire before s = {s_horizon} in {failed} of {} replicas",
            cfg.replicas
        )));
    }
    let fired: Vec<_> = outcomes.into_iter().flatten().collect();
    let stops: Vec<f64> = fired.iter().map(|o| o.0).collect();
    let w_at_stop: Vec<f64> = fired.iter().map(|o| o.1).collect();
    let ensemble: Vec<Vec<f64>> = fired.iter().map(|o| o.2.clone()).collect();

    let grid_lag = |k: usize| (snapped[k].0 as f64 * ds, snapped[k].1 as f64 * dt);
    let mut probes = Vec::new();
    for a in 0..snapped.len() {
        for b in a..snapped.len() {
            probes.push((a, b));
        }
    }
    let covariances = covariance_table(&ensemble, &probes)?
        .into_iter()
        .map(|c| {
            let (la, lb) = (grid_lag(c.probe.0), grid_lag(c.probe.1));
            CovCheck {
                lags: (la, lb),
                empirical: c.cov,
                stderr: c.stderr,
                oracle: la.0.min(lb.0) * la.1.min(lb.1),
            }
        })
        .collect();
    let mut correlations = Vec::new();
    for k in 0..snapped.len() {
        let dk: Vec<f64> = ensemble.iter().map(|r| r[k]).collect();
        for (name, pre) in [("W(S,1)", &w_at_stop), ("S", &stops)] {
            let (r, stderr) = correlation(&dk, pre)?;
            correlations.push(CorrCheck {
                lag: grid_lag(k),
                statistic: name,
                r,
                stderr,
            });
        }
    }
    Ok(StrongMarkovReport {
        lambda,
        replicas: fired.len(),
        mean_stop: crate::stats::mean(&stops),
        covariances,
        correlations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Seed, ZeroNoise};
    use crate::sheet::{sample_sheet, GridSpec};

    #[test]
    fn propagate_zero_time_is_identity() {
        let x = Path::brownian(1.0, 16, 1.0, &mut Seed(4).stream(0));
        let y = ou_propagate(&x, 0.0, &mut Seed(5).stream(0)).unwrap();
        assert_eq!(x, y);
        assert!(ou_propagate(&x, -0.1, &mut ZeroNoise).is_err());
    }

    #[test]
    fn propagate_is_linear_in_start() {
        let x = Path::new(0.0, 0.25, vec![0.0, 1.0, -1.0, 2.0, 0.5]);
        let y = ou_propagate(&x, 1.2, &mut ZeroNoise).unwrap();
        let b = (-0.6f64).exp();
        for (u, v) in x.values.iter().zip(&y.values) {
            assert!((v - b * u).abs() < 1e-15);
        }
    }

    #[test]
    fn from_sheet_at_origin_is_w_one() {
        let grid = GridSpec::new(1.0, 1f64.exp(), 0.0, 1.0, 8, 4).unwrap();
        let sheet = sample_sheet(&grid, &mut Seed(9).stream(0)).unwrap();
        let ou = ou_from_sheet(&sheet, 1.0).unwrap();
        assert_eq!(ou.s_grid[0], 0.0);
        assert_eq!(ou.row(0), sheet.row(0));
        assert!((ou.s_grid[8] - 1.0).abs() < 1e-12);
        assert!(ou_from_sheet(&sheet, 1.5).is_err());
        assert!(ou.row(3)[0] == 0.0);
    }

    #[test]
    fn functional_parse_and_apply() {
        let x = Path::new(0.0, 0.5, vec![0.0, -2.0, 1.0]);
        assert_eq!(PathFunctional::parse("eval:1").unwrap().apply(&x), 1.0);
        assert_eq!(PathFunctional::parse("square-eval:0.5").unwrap().apply(&x), 4.0);
        assert_eq!(PathFunctional::parse("sup").unwrap().apply(&x), 1.0);
        assert_eq!(PathFunctional::parse("integral").unwrap().apply(&x), 0.5 * (-2.0 + 0.5));
        assert_eq!(PathFunctional::parse("sign-zero:0.5").unwrap().apply(&x), -1.0);
        assert!(PathFunctional::parse("eval").is_err());
        assert!(PathFunctional::parse("bogus").is_err());
    }

    #[test]
    fn mehler_zero_time_is_exact() {
        let x = Path::new(0.0, 0.5, vec![0.0, 0.3, 0.7]);
        let cfg = EnsembleConfig::new(10, Seed(1));
        let r = mehler_apply(PathFunctional::SquareEval(1.0), &x, 0.0, &cfg).unwrap();
        assert_eq!(r.mean, 0.7 * 0.7);
        assert_eq!(r.stderr, 0.0);
    }

    #[test]
    fn trivial_capacities() {
        let cfg = EnsembleConfig::new(200, Seed(2));
        let all = capacity_estimate(PathEvent::Everything, 10.0, 1000, 8, &cfg).unwrap();
        let none = capacity_estimate(PathEvent::Nothing, 10.0, 1000, 8, &cfg).unwrap();
        assert_eq!((all.mean, all.stderr), (1.0, 0.0));
        assert_eq!((none.mean, none.stderr), (0.0, 0.0));
        assert!(all.warnings.is_empty());
        let short = capacity_estimate(PathEvent::Nothing, 2.0, 200, 8, &cfg).unwrap();
        assert_eq!(short.warnings.len(), 1);
    }

    #[test]
    fn modulus_event() {
        let x = Path::new(0.0, 0.25, vec![0.0, 0.0, 5.0, 5.0, 5.0]);
        assert!(PathEvent::ModulusViolation { eps: 0.25, c: 1.0 }.contains(&x));
        assert!(!PathEvent::ModulusViolation { eps: 0.25, c: 100.0 }.contains(&x));
        assert!(PathEvent::parse("modulus:0.25:1").is_ok());
    }

    #[test]
    fn zero_lambda_stops_at_origin() {
        let cfg = EnsembleConfig::new(50, Seed(3));
        let rep = strong_markov_test(0.0, &[(0.5, 1.0)], 0.01, 16, 1.0, &cfg).unwrap();
        assert_eq!(rep.mean_stop, 0.0);
        assert_eq!(rep.covariances.len(), 1);
        assert_eq!(rep.correlations.len(), 2);
    }

    #[test]
    fn unfired_stop_is_error() {
        let cfg = EnsembleConfig::new(20, Seed(3));
        assert!(strong_markov_test(100.0, &[(0.5, 1.0)], 0.01, 8, 0.1, &cfg).is_err());
    }
}
