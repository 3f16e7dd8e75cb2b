use crate::error::{ensure_arg, Error, Result};
use crate::sheet::MultiScaleSheet;
use crate::table::Table;

/// `sqrt(2 s theta^-n ln ln theta^n)`, with `ln ln theta^n` formed as `ln(n ln theta)`.
pub fn lil_denominator(s: f64, theta: f64, n: i32) -> Result<f64> {
    let log_level = n as f64 * theta.ln();
    if log_level.is_nan() || log_level <= 1.0 {
        return Err(Error::Range(format!(
            "ln ln theta^n needs theta^n > e (theta = {theta}, n = {n})"
        )));
    }
    let t = (-log_level).exp();
    Ok((2.0 * s * t * log_level.ln()).sqrt())
}

/// Same denominator from the time `t` itself: `sqrt(2 s t ln ln(1/t))`.
pub fn lil_denominator_direct(s: f64, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < (-1.0f64).exp()) {
        return Err(Error::Range(format!("ln ln(1/t) needs 0 < t < 1/e, got {t}")));
    }
    Ok((2.0 * s * t * (1.0 / t).ln().ln()).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LILProfile {
    pub theta: f64,
    pub n_min: i32,
    pub n_max: i32,
    pub s_grid: Vec<f64>,
    /// `ratios[n - n_min][i]`
    pub ratios: Vec<Vec<f64>>,
    /// `running_max[n - n_min][i] = max_{n_min <= m <= n} ratios[m - n_min][i]`
    pub running_max: Vec<Vec<f64>>,
    pub global_sup: f64,
    /// `(s, n)` attaining the global sup.
    pub argmax: (f64, i32),
}

impl LILProfile {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["s", "n", "ratio", "running_max"]);
        for (k, (r, m)) in self.ratios.iter().zip(&self.running_max).enumerate() {
            let n = self.n_min + k as i32;
            for (i, s) in self.s_grid.iter().enumerate() {
                t.push(vec![(*s).into(), (n as i64).into(), r[i].into(), m[i].into()]);
            }
        }
        t
    }
}

/// Ratios `W(s, theta^-n) / sqrt(2 s theta^-n ln ln theta^n)` with running maxima over `n`.
pub fn lil_profile(ms: &MultiScaleSheet) -> Result<LILProfile> {
    let mut ratios = Vec::with_capacity(ms.level_count());
    for n in ms.ns() {
        let row: Result<Vec<f64>> = ms
            .s_grid
            .iter()
            .zip(ms.level(n))
            .map(|(&s, &w)| Ok(w / lil_denominator(s, ms.theta, n)?))
            .collect();
        ratios.push(row?);
    }
    let mut running_max: Vec<Vec<f64>> = Vec::with_capacity(ratios.len());
    for r in &ratios {
        let next = match running_max.last() {
            Some(prev) => prev.iter().zip(r).map(|(a, b)| a.max(*b)).collect(),
            None => r.clone(),
        };
        running_max.push(next);
    }
    let mut global_sup = f64::NEG_INFINITY;
    let mut argmax = (ms.s_grid[0], ms.n_min);
    for (k, r) in ratios.iter().enumerate() {
        for (i, &v) in r.iter().enumerate() {
            if v > global_sup {
                global_sup = v;
                argmax = (ms.s_grid[i], ms.n_min + k as i32);
            }
        }
    }
    Ok(LILProfile {
        theta: ms.theta,
        n_min: ms.n_min,
        n_max: ms.n_max,
        s_grid: ms.s_grid.clone(),
        ratios,
        running_max,
        global_sup,
        argmax,
    })
}

/// Occurrence of the lower-bound event `E_n` and upper-bound event `F_n` at one level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockEvents {
    pub n: i32,
    pub e_n: bool,
    pub f_n: bool,
}

/// Scan every level for the events
///
/// * `E_n`: for all grid `s` in `[1, 1+eps]`,
///   `W(s, theta^-n) - W(s, theta^-n-1) >= sqrt(2 c s (theta^-n - theta^-n-1) ln ln theta^n)`;
/// * `F_n`: for some grid `s` in `[1, e]`,
///   `max_{t <= theta^-n} W(s, t) >= sqrt(2 c s theta^-n ln ln theta^n)`,
///   the maximum over `t` being taken over the stored levels `m >= n`.
///
/// `E_n` needs level `n + 1`, so it is only reported for `n < n_max`.
pub fn lil_block_scan(ms: &MultiScaleSheet, c: f64, eps: f64) -> Result<Vec<BlockEvents>> {
    ensure_arg!(c > 0.0 && eps > 0.0, "c and eps must be positive");
    let top = 1.0 + eps;
    let lower_window: Vec<usize> = (0..ms.s_grid.len())
        .filter(|&i| ms.s_grid[i] <= top * (1.0 + 1e-12))
        .collect();
    let mut out = Vec::with_capacity(ms.level_count());
    // suffix maxima over deeper levels, updated from the bottom up
    let mut deep_max = vec![f64::NEG_INFINITY; ms.s_grid.len()];
    let mut f_flags = vec![false; ms.level_count()];
    for n in ms.ns().rev() {
        for (m, w) in deep_max.iter_mut().zip(ms.level(n)) {
            *m = m.max(*w);
        }
        let mut f_n = false;
        for (i, &s) in ms.s_grid.iter().enumerate() {
            let thr = (c.sqrt()) * lil_denominator(s, ms.theta, n)?;
            if deep_max[i] >= thr {
                f_n = true;
                break;
            }
        }
        f_flags[(n - ms.n_min) as usize] = f_n;
    }
    for n in ms.ns() {
        let e_n = if n < ms.n_max {
            let gap = ms.t_level(n) - ms.t_level(n + 1);
            let ll = (n as f64 * ms.theta.ln()).ln();
            if ll.is_nan() || ll <= 0.0 {
                return Err(Error::Range(format!("ln ln theta^n not positive at n = {n}")));
            }
            !lower_window.is_empty()
                && lower_window.iter().all(|&i| {
                    let s = ms.s_grid[i];
                    let inc = ms.level(n)[i] - ms.level(n + 1)[i];
                    inc >= (2.0 * c * s * gap * ll).sqrt()
                })
        } else {
            false
        };
        out.push(BlockEvents {
            n,
            e_n,
            f_n: f_flags[(n - ms.n_min) as usize],
        });
    }
    Ok(out)
}
