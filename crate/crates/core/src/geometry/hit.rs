use std::collections::HashSet;

use crate::ensemble::{run_replicas, EnsembleConfig, EstimateReport};
use crate::error::{ensure_arg, Error, Result};
use crate::rng::GaussianSource;
use crate::sheet::{sample_sheet, GridSpec};
use crate::stats::{weighted_line_fit, LineFit};
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallNorm {
    LInf,
    L2,
}

/// Does the `d`-dimensional sheet come within `eps` of `x` on `window`?
#[derive(Debug, Clone, PartialEq)]
pub struct HitQuery {
    pub d: usize,
    pub x: Vec<f64>,
    pub eps: f64,
    /// `(s_min, s_max, t_min, t_max)`
    pub window: (f64, f64, f64, f64),
    pub norm: BallNorm,
}

impl HitQuery {
    /// Target `x`, radius `eps`, window `[1, 2]^2`, sup norm.
    pub fn new(x: Vec<f64>, eps: f64) -> Self {
        HitQuery {
            d: x.len(),
            x,
            eps,
            window: (1.0, 2.0, 1.0, 2.0),
            norm: BallNorm::LInf,
        }
    }

    pub fn origin(d: usize, eps: f64) -> Self {
        Self::new(vec![0.0; d], eps)
    }

    fn validate(&self) -> Result<()> {
        ensure_arg!(self.d >= 1, "dimension must be at least 1");
        ensure_arg!(
            self.x.len() == self.d,
            "target has {} coordinates, expected {}",
            self.x.len(),
            self.d
        );
        ensure_arg!(self.eps > 0.0, "eps must be positive");
        Ok(())
    }
}

fn hit_grid(q: &HitQuery, grid_steps: usize) -> Result<GridSpec> {
    ensure_arg!(grid_steps >= 64, "grid_steps must be at least 64");
    let (a, b, c, d) = q.window;
    GridSpec::new(a, b, c, d, grid_steps, grid_steps)
}

/// Smallest distance from `x` to the sheet over the lattice nodes.
///
/// Components are accumulated one at a time. Once every node is farther
/// than `prune` the remaining components are not drawn and the distance is
/// reported as infinite.
pub fn min_distance<G: GaussianSource + ?Sized>(q: &HitQuery, grid: &GridSpec, prune: f64, g: &mut G) -> Result<f64> {
    let mut acc = vec![0.0f64; grid.node_count()];
    for k in 0..q.d {
        let sheet = sample_sheet(grid, g)?;
        let xk = q.x[k];
        match q.norm {
            BallNorm::LInf => {
                for (a, w) in acc.iter_mut().zip(&sheet.values) {
                    *a = a.max((w - xk).abs());
                }
            }
            BallNorm::L2 => {
                for (a, w) in acc.iter_mut().zip(&sheet.values) {
                    *a += (w - xk).powi(2);
                }
            }
        }
        let bound = match q.norm {
            BallNorm::LInf => prune,
            BallNorm::L2 => prune * prune,
        };
        if !acc.iter().any(|a| *a <= bound) {
            return Ok(f64::INFINITY);
        }
    }
    let m = acc.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(match q.norm {
        BallNorm::LInf => m,
        BallNorm::L2 => m.sqrt(),
    })
}

fn resolution_warning(eps: f64, grid: &GridSpec) -> Option<String> {
    let delta = grid.ds().max(grid.dt());
    (eps < 3.0 * delta.sqrt()).then(|| {
        format!(
            "eps {eps} is below 3 sqrt(grid step) = {:.4}; grid nodes may miss hits",
            3.0 * delta.sqrt()
        )
    })
}

/// Fraction of replicas hitting the `eps`-ball about `q.x` at some lattice node.
pub fn hit_probability(q: &HitQuery, grid_steps: usize, cfg: &EnsembleConfig) -> Result<EstimateReport> {
    Ok(hit_probabilities(q, &[q.eps], grid_steps, cfg)?.remove(0))
}

/// Hitting estimates for several radii on one ensemble; the indicators are
/// nested, so the estimates are monotone in `eps` sample by sample.
pub fn hit_probabilities(
    q: &HitQuery,
    eps: &[f64],
    grid_steps: usize,
    cfg: &EnsembleConfig,
) -> Result<Vec<EstimateReport>> {
    q.validate()?;
    ensure_arg!(
        !eps.is_empty() && eps.iter().all(|e| *e > 0.0),
        "radii must be positive"
    );
    let grid = hit_grid(q, grid_steps)?;
    let prune = eps.iter().copied().fold(0.0, f64::max);
    let dist = run_replicas(cfg, |_, rng| min_distance(q, &grid, prune, rng))?;
    eps.iter()
        .map(|&e| {
            let ind: Vec<f64> = dist.iter().map(|m| (*m <= e) as u8 as f64).collect();
            let mut rep = EstimateReport::from_samples(&ind)?;
            if let Some(w) = resolution_warning(e, &grid) {
                rep = rep.with_warning(w);
            }
            Ok(rep)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct HitScaling {
    pub d: usize,
    pub eps: Vec<f64>,
    pub estimates: Vec<EstimateReport>,
    pub fit: LineFit,
    /// Radii that entered the fit (at least `min_hits` hits).
    pub used: Vec<bool>,
    pub warnings: Vec<String>,
}

impl HitScaling {
    pub fn hits_table(&self) -> Table {
        let mut t = Table::new(&["d", "eps", "estimate", "stderr"]);
        for (e, r) in self.eps.iter().zip(&self.estimates) {
            t.push(vec![self.d.into(), (*e).into(), r.mean.into(), r.stderr.into()]);
        }
        t
    }

    pub fn slope_table(&self) -> Table {
        let mut t = Table::new(&["d", "slope", "slope_stderr"]);
        t.push(vec![self.d.into(), self.fit.slope.into(), self.fit.slope_stderr.into()]);
        t
    }
}

pub const MIN_HITS: usize = 30;

/// Weighted fit of `ln p` against `ln eps`, skipping radii with fewer than
/// [`MIN_HITS`] hits. Returns the fit, the mask of radii used and warnings.
pub fn fit_hit_slope(eps: &[f64], estimates: &[EstimateReport]) -> Result<(LineFit, Vec<bool>, Vec<String>)> {
    ensure_arg!(eps.len() == estimates.len(), "one estimate per radius");
    let used: Vec<bool> = estimates
        .iter()
        .map(|r| (r.mean * r.replicas as f64).round() as usize >= MIN_HITS)
        .collect();
    let mut warnings: Vec<String> = estimates.iter().flat_map(|r| r.warnings.iter().cloned()).collect();
    warnings.dedup();
    for (e, u) in eps.iter().zip(&used) {
        if !u {
            warnings.push(format!("fewer than {MIN_HITS} hits at eps {e}; excluded from the fit"));
        }
    }
    let (mut xs, mut ys, mut sig) = (Vec::new(), Vec::new(), Vec::new());
    for ((e, r), u) in eps.iter().zip(estimates).zip(&used) {
        if *u && r.stderr > 0.0 {
            xs.push(e.ln());
            ys.push(r.mean.ln());
            sig.push(r.stderr / r.mean);
        }
    }
    if xs.len() < 2 {
        return Err(Error::Numeric(format!(
            "only {} radii have at least {MIN_HITS} hits and nonzero spread; cannot fit a slope",
            xs.len()
        )));
    }
    Ok((weighted_line_fit(&xs, &ys, &sig)?, used, warnings))
}

/// Log-log slope of the hitting probability of the origin against `eps`.
pub fn hit_scaling(d: usize, eps: &[f64], grid_steps: usize, cfg: &EnsembleConfig) -> Result<HitScaling> {
    ensure_arg!(eps.len() >= 2, "need at least two radii");
    let q = HitQuery::origin(d, eps[0]);
    let estimates = hit_probabilities(&q, eps, grid_steps, cfg)?;
    let (fit, used, warnings) = fit_hit_slope(eps, &estimates)?;
    Ok(HitScaling {
        d,
        eps: eps.to_vec(),
        estimates,
        fit,
        used,
        warnings,
    })
}

/// Boxes of side `box_side` occupied by the `d`-dimensional sheet on the
/// `grid_steps^2` lattice over `[0, 1]^2`, times `box_side^d`.
pub fn range_volume_sample<G: GaussianSource + ?Sized>(
    d: usize,
    grid_steps: usize,
    box_side: f64,
    g: &mut G,
) -> Result<f64> {
    ensure_arg!((1..=6).contains(&d), "dimension must lie in 1..=6");
    ensure_arg!(box_side > 0.0 && box_side.is_finite(), "box side must be positive");
    ensure_arg!(grid_steps >= 1, "need at least one grid step");
    let vol = box_side.powi(d as i32);
    ensure_arg!(vol > 1e-250, "box volume {vol:e} underflows");
    let grid = GridSpec::square(1.0, grid_steps)?;
    let sheets: Vec<_> = (0..d).map(|_| sample_sheet(&grid, g)).collect::<Result<_>>()?;
    let mut boxes: HashSet<[i32; 6]> = HashSet::new();
    for node in 0..grid.node_count() {
        let mut key = [0i32; 6];
        for (k, s) in sheets.iter().enumerate() {
            let b = (s.values[node] / box_side).floor();
            ensure_arg!(
                b.abs() < i32::MAX as f64,
                "box index overflow: box side {box_side} too small"
            );
            key[k] = b as i32;
        }
        boxes.insert(key);
    }
    Ok(boxes.len() as f64 * vol)
}

pub fn range_volume(d: usize, grid_steps: usize, box_side: f64, cfg: &EnsembleConfig) -> Result<EstimateReport> {
    let v = run_replicas(cfg, |_, rng| range_volume_sample(d, grid_steps, box_side, rng))?;
    EstimateReport::from_samples(&v)
}
