use crate::error::{ensure_arg, Result};
use crate::ou::OUSheet;
use crate::sheet::SheetField;
use crate::table::Table;

use super::window::{max_oscillation, min_forward_excursion};

fn steps_for(width: f64, dt: f64) -> Option<usize> {
    let k = width / dt;
    let r = k.round();
    ((k - r).abs() < 1e-9 * r.max(1.0)).then_some(r as usize)
}

/// Per-`eps` uniform modulus ratios of a sheet.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusProfile {
    pub eps: Vec<f64>,
    /// `sup_s max_{|u-v| <= eps} |W(s,u) - W(s,v)| / sqrt(2 s eps |ln eps|)`
    pub sup_ratio: Vec<f64>,
    /// The unnormalized `sup_s` oscillation.
    pub oscillation: Vec<f64>,
    pub dt: f64,
}

impl ModulusProfile {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["eps", "sup_ratio"]);
        for (e, r) in self.eps.iter().zip(&self.sup_ratio) {
            t.push(vec![(*e).into(), (*r).into()]);
        }
        t
    }
}

/// Grid version of the uniform Levy modulus over all sheet rows.
///
/// Each `eps` must be a whole number of at least two `t` steps.
pub fn levy_modulus(sheet: &SheetField, eps_levels: &[f64]) -> Result<ModulusProfile> {
    let g = &sheet.grid;
    let dt = g.dt();
    ensure_arg!(g.s_min > 0.0, "modulus normalization needs s > 0 on every row");
    let mut windows = Vec::with_capacity(eps_levels.len());
    for &e in eps_levels {
        ensure_arg!(e > 0.0 && e < 1.0, "eps must lie in (0, 1), got {e}");
        ensure_arg!(e >= 2.0 * dt * (1.0 - 1e-12), "eps {e} is below two grid steps ({dt})");
        let w =
            steps_for(e, dt).ok_or_else(|| crate::Error::Argument(format!("eps {e} is not a multiple of dt {dt}")))?;
        ensure_arg!(w <= g.t_steps, "eps {e} exceeds the t window");
        windows.push(w);
    }
    let mut sup_ratio = vec![0.0f64; eps_levels.len()];
    let mut oscillation = vec![0.0f64; eps_levels.len()];
    for (i, row) in sheet.rows().enumerate() {
        let s = g.s(i);
        for (k, (&e, &w)) in eps_levels.iter().zip(&windows).enumerate() {
            let osc = max_oscillation(row, w);
            oscillation[k] = oscillation[k].max(osc);
            sup_ratio[k] = sup_ratio[k].max(osc / (2.0 * s * e * e.ln().abs()).sqrt());
        }
    }
    Ok(ModulusProfile {
        eps: eps_levels.to_vec(),
        sup_ratio,
        oscillation,
        dt,
    })
}

/// Per-row Chung statistics and their extremes over rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ChungProfile {
    pub eps: f64,
    pub s_grid: Vec<f64>,
    pub per_s: Vec<f64>,
    pub sup: f64,
    pub inf: f64,
}

impl ChungProfile {
    pub fn median(&self) -> f64 {
        crate::stats::median(&self.per_s)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["s", "eps", "statistic"]);
        for (s, v) in self.s_grid.iter().zip(&self.per_s) {
            t.push(vec![(*s).into(), self.eps.into(), (*v).into()]);
        }
        t
    }
}

/// Chung statistic of standard Brownian rows on a common grid step `dt`:
/// `min_{t <= t_span} max_{0 <= u <= eps} |x(t+u) - x(t)| / sqrt(eps / |ln eps|)`.
pub fn chung_rows<'a>(
    rows: impl IntoIterator<Item = (f64, f64, &'a [f64])>,
    t0: f64,
    dt: f64,
    eps: f64,
    t_span: f64,
) -> Result<ChungProfile> {
    ensure_arg!(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1), got {eps}");
    ensure_arg!(
        dt <= eps / 32.0 * (1.0 + 1e-12),
        "grid step {dt} exceeds eps/32 = {}",
        eps / 32.0
    );
    ensure_arg!(t0 == 0.0, "Chung statistic needs a t grid starting at 0");
    let w =
        steps_for(eps, dt).ok_or_else(|| crate::Error::Argument(format!("eps {eps} is not a multiple of dt {dt}")))?;
    let last_start = (t_span / dt + 1e-9).floor() as usize;
    let norm = (eps / eps.ln().abs()).sqrt();
    let mut s_grid = Vec::new();
    let mut per_s = Vec::new();
    for (s, scale, row) in rows {
        ensure_arg!(
            last_start + w < row.len(),
            "t grid must extend to t_span + eps = {}",
            t_span + eps
        );
        s_grid.push(s);
        per_s.push(min_forward_excursion(row, w, last_start) * scale / norm);
    }
    ensure_arg!(!per_s.is_empty(), "no rows");
    let sup = per_s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let inf = per_s.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(ChungProfile {
        eps,
        s_grid,
        per_s,
        sup,
        inf,
    })
}

/// Chung statistic on the rows of an OU sheet (already standard in `t`).
pub fn chung_modulus_ou(ou: &OUSheet, eps: f64, t_span: f64) -> Result<ChungProfile> {
    chung_rows(
        ou.s_grid.iter().enumerate().map(|(i, &s)| (s, 1.0, ou.row(i))),
        ou.t0,
        ou.dt,
        eps,
        t_span,
    )
}

/// Chung statistic on the sheet rows, normalized by `1/sqrt(s)`.
pub fn chung_modulus(sheet: &SheetField, eps: f64, t_span: f64) -> Result<ChungProfile> {
    let g = &sheet.grid;
    ensure_arg!(g.s_min > 0.0, "normalization needs s > 0 on every row");
    chung_rows(
        sheet.rows().enumerate().map(|(i, r)| (g.s(i), 1.0 / g.s(i).sqrt(), r)),
        g.t_min,
        g.dt(),
        eps,
        t_span,
    )
}

/// `n * min_s min_{t <= t_span} max_{u <= 1/n} |W(s,t+u) - W(s,t)|` for each `n`.
pub fn nowhere_diff_stat(sheet: &SheetField, n_levels: &[usize], t_span: f64) -> Result<Vec<(usize, f64)>> {
    let g = &sheet.grid;
    ensure_arg!(g.t_min == 0.0, "t grid must start at 0");
    let dt = g.dt();
    let last_start = (t_span / dt + 1e-9).floor() as usize;
    n_levels
        .iter()
        .map(|&n| {
            ensure_arg!(n >= 1, "n must be positive");
            let h = 1.0 / n as f64;
            ensure_arg!(
                dt <= h / 32.0 * (1.0 + 1e-12),
                "grid step {dt} exceeds 1/(32 n) for n = {n}"
            );
            let w = steps_for(h, dt).ok_or_else(|| crate::Error::Argument(format!("1/{n} is not a multiple of dt")))?;
            ensure_arg!(last_start + w <= g.t_steps, "t grid must extend to t_span + 1/n");
            let m = sheet
                .rows()
                .map(|r| min_forward_excursion(r, w, last_start))
                .fold(f64::INFINITY, f64::min);
            Ok((n, m * n as f64))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Seed;
    use crate::sheet::{sample_sheet, GridSpec};

    fn lil_grid(s_steps: usize, t_pow: i32) -> GridSpec {
        GridSpec::new(1.0, std::f64::consts::E, 0.0, 1.0, s_steps, 1 << t_pow).unwrap()
    }

    #[test]
    fn linear_field_modulus() {
        let sheet = SheetField::from_fn(lil_grid(4, 10), |_, t| t);
        let eps = [2f64.powi(-4), 2f64.powi(-8)];
        let p = levy_modulus(&sheet, &eps).unwrap();
        for (e, r) in eps.iter().zip(&p.sup_ratio) {
            let want = e / (2.0 * e * e.ln().abs()).sqrt();
            assert!((r - want).abs() < 1e-12);
        }
        assert!(p.sup_ratio[1] < p.sup_ratio[0]);
        assert!(levy_modulus(&sheet, &[2f64.powi(-10)]).is_err());
    }

    #[test]
    fn oscillation_monotone_in_eps() {
        let sheet = sample_sheet(&lil_grid(4, 10), &mut Seed(3).stream(0)).unwrap();
        let eps: Vec<f64> = (2..=8).rev().map(|k| 2f64.powi(-k)).collect();
        let p = levy_modulus(&sheet, &eps).unwrap();
        assert!(p.oscillation.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn linear_field_chung() {
        let sheet = SheetField::from_fn(lil_grid(2, 12), |_, t| t);
        let eps = 2f64.powi(-6);
        let p = chung_modulus(&sheet, eps, 0.5).unwrap();
        let want = eps / (eps / eps.ln().abs()).sqrt();
        // rows are scaled by 1/sqrt(s)
        assert!((p.sup - want).abs() < 1e-12);
        assert!(chung_modulus(&sheet, 2f64.powi(-8), 0.5).is_err());
    }

    #[test]
    fn linear_control_is_one() {
        let sheet = SheetField::from_fn(lil_grid(2, 14), |_, t| t);
        let st = nowhere_diff_stat(&sheet, &[16, 32, 64, 128, 256], 0.5).unwrap();
        assert!(st.iter().all(|(_, v)| *v == 1.0), "{st:?}");
        let zero = SheetField::zeros(lil_grid(2, 14));
        assert!(nowhere_diff_stat(&zero, &[16], 0.5).unwrap()[0].1 == 0.0);
        assert!(nowhere_diff_stat(&zero, &[1024], 0.5).is_err());
    }
}
