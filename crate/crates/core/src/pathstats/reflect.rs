use crate::ensemble::{run_replicas, EnsembleConfig, EstimateReport};
use crate::error::{ensure_arg, Result};
use crate::sheet::{sample_sheet, GridSpec};

/// Both sides of the reflection inequality for the Banach-space Brownian
/// motion `B(t) = W(., t)` on `C[1, e]` and the seminorm
/// `N(f) = sup_{1 <= s <= e} |f(s)| / sqrt(s)`:
///
/// `lhs = P{ max_{t <= T} N(B(t)) >= lambda }`, `rhs = P{ N(B(T)) >= lambda }`,
/// estimated on one ensemble with suprema over grid nodes.
pub fn reflection_check(
    t_max: f64,
    lambda: f64,
    s_steps: usize,
    t_steps: usize,
    cfg: &EnsembleConfig,
) -> Result<(EstimateReport, EstimateReport)> {
    ensure_arg!(lambda >= 0.0, "lambda must be nonnegative, got {lambda}");
    ensure_arg!(t_max > 0.0, "T must be positive");
    let grid = GridSpec::new(1.0, std::f64::consts::E, 0.0, t_max, s_steps, t_steps)?;
    let scale: Vec<f64> = grid.s_nodes().iter().map(|s| 1.0 / s.sqrt()).collect();
    let pairs = run_replicas(cfg, |_, rng| {
        let sheet = sample_sheet(&grid, rng)?;
        let cols = grid.t_steps + 1;
        let mut norm_t = vec![0.0f64; cols];
        for (row, c) in sheet.rows().zip(&scale) {
            for (n, w) in norm_t.iter_mut().zip(row) {
                *n = n.max(w.abs() * c);
            }
        }
        let sup = norm_t.iter().copied().fold(0.0, f64::max);
        Ok(((sup >= lambda) as u8 as f64, (norm_t[cols - 1] >= lambda) as u8 as f64))
    })?;
    let (lhs, rhs): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    Ok((EstimateReport::from_samples(&lhs)?, EstimateReport::from_samples(&rhs)?))
}

/// `3 sqrt(se_lhs^2 + 4 se_rhs^2)` slack for `lhs <= 2 rhs`.
pub fn reflection_holds(lhs: &EstimateReport, rhs: &EstimateReport, k: f64) -> bool {
    let se = (lhs.stderr.powi(2) + 4.0 * rhs.stderr.powi(2)).sqrt();
    lhs.mean <= 2.0 * rhs.mean + k * se
}
