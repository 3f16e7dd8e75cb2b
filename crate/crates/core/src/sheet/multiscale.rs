use crate::error::{ensure_arg, Error, Result};
use crate::rng::GaussianSource;

/// Joint samples of `s -> W(s, theta^-n)` for `n` in `n_min..=n_max`, with
/// `s` on a uniform grid over `[1, e]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiScaleSheet {
    pub theta: f64,
    pub n_min: i32,
    pub n_max: i32,
    pub s_grid: Vec<f64>,
    /// `levels[n - n_min][i] = W(s_grid[i], theta^-n)`.
    pub levels: Vec<Vec<f64>>,
}

impl MultiScaleSheet {
    /// Second coordinate `theta^-n` of level `n`.
    pub fn t_level(&self, n: i32) -> f64 {
        level_time(self.theta, n)
    }

    pub fn level(&self, n: i32) -> &[f64] {
        &self.levels[(n - self.n_min) as usize]
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn ns(&self) -> std::ops::RangeInclusive<i32> {
        self.n_min..=self.n_max
    }

    /// Restrict to levels `n_min..=n_max` (a sub-range of the stored ones).
    pub fn truncated(&self, n_min: i32, n_max: i32) -> Result<Self> {
        ensure_arg!(
            self.n_min <= n_min && n_min <= n_max && n_max <= self.n_max,
            "level range {n_min}..={n_max} not inside {}..={}",
            self.n_min,
            self.n_max
        );
        let a = (n_min - self.n_min) as usize;
        let b = (n_max - self.n_min) as usize;
        Ok(MultiScaleSheet {
            theta: self.theta,
            n_min,
            n_max,
            s_grid: self.s_grid.clone(),
            levels: self.levels[a..=b].to_vec(),
        })
    }
}

fn level_time(theta: f64, n: i32) -> f64 {
    (-(n as f64) * theta.ln()).exp()
}

/// Uniform grid of `s_steps` intervals on `[1, e]`.
pub fn lil_s_grid(s_steps: usize) -> Vec<f64> {
    let e = std::f64::consts::E;
    let h = (e - 1.0) / s_steps as f64;
    (0..=s_steps)
        .map(|i| if i == s_steps { e } else { 1.0 + i as f64 * h })
        .collect()
}

/// Sample the multi-scale structure.
///
/// The deepest level is drawn directly as `sqrt(theta^-n_max)` times a
/// Brownian motion in `s`. Every shallower level adds an independent Brownian
/// motion scaled by `sqrt(theta^-n - theta^-(n+1))`.
pub fn sample_multiscale<G: GaussianSource + ?Sized>(
    theta: f64,
    n_min: i32,
    n_max: i32,
    s_steps: usize,
    g: &mut G,
) -> Result<MultiScaleSheet> {
    ensure_arg!(theta.is_finite() && theta > 1.0, "theta must exceed 1, got {theta}");
    ensure_arg!(n_min <= n_max, "n_min {n_min} exceeds n_max {n_max}");
    ensure_arg!(s_steps >= 2, "need at least 2 s steps");
    let deepest = level_time(theta, n_max);
    if !(deepest.is_normal()) || deepest * f64::EPSILON == 0.0 {
        return Err(Error::Range(format!(
            "theta^-{n_max} = {deepest:e} underflows in double precision"
        )));
    }
    if !level_time(theta, n_min).is_finite() {
        return Err(Error::Range(format!("theta^-{n_min} overflows")));
    }
    let s_grid = lil_s_grid(s_steps);
    let count = (n_max - n_min + 1) as usize;
    let mut levels: Vec<Vec<f64>> = Vec::with_capacity(count);

    let bm = |scale: f64, g: &mut G| -> Vec<f64> {
        let mut out = Vec::with_capacity(s_grid.len());
        let mut acc = (s_grid[0]).sqrt() * scale * g.normal();
        out.push(acc);
        for w in s_grid.windows(2) {
            acc += ((w[1] - w[0]).sqrt() * scale) * g.normal();
            out.push(acc);
        }
        out
    };

    levels.push(bm(deepest.sqrt(), g));
    for n in (n_min..n_max).rev() {
        let var = level_time(theta, n) - level_time(theta, n + 1);
        let inc = bm(var.sqrt(), g);
        let prev = levels.last().expect("at least one level");
        levels.push(prev.iter().zip(&inc).map(|(a, b)| a + b).collect());
    }
    levels.reverse();
    Ok(MultiScaleSheet {
        theta,
        n_min,
        n_max,
        s_grid,
        levels,
    })
}
