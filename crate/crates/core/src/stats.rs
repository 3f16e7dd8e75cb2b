//! Small statistical helpers used by the estimators and their tests.

use crate::error::{ensure_arg, Result};

/// Fixed-shape pairwise sum; the split points depend only on the length.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn mean(xs: &[f64]) -> f64 {
    pairwise_sum(xs) / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    let dev: Vec<f64> = xs.iter().map(|x| (x - m) * (x - m)).collect();
    pairwise_sum(&dev) / (xs.len() as f64 - 1.0)
}

/// Median (mean of the two middle values for even lengths). NaNs sort last.
pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Two-sample Kolmogorov–Smirnov statistic: sup-distance between the
/// empirical distribution functions.
pub fn ks_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    ensure_arg!(!a.is_empty() && !b.is_empty(), "ks_distance needs two nonempty samples");
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.total_cmp(y));
    b.sort_by(|x, y| x.total_cmp(y));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Empirical covariance of one probe pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovEntry {
    pub probe: (usize, usize),
    pub cov: f64,
    pub stderr: f64,
}

/// Unbiased sample covariances between coordinates of an ensemble.
///
/// `ensemble[r][k]` is coordinate `k` of replica `r`. The standard error is
/// the delta-method value `sd((x - x̄)(y - ȳ)) / sqrt(n)`.
pub fn covariance_table(ensemble: &[Vec<f64>], probes: &[(usize, usize)]) -> Result<Vec<CovEntry>> {
    ensure_arg!(ensemble.len() >= 2, "covariance needs at least two replicas");
    let n = ensemble.len();
    let width = ensemble[0].len();
    ensure_arg!(ensemble.iter().all(|r| r.len() == width), "ragged ensemble");
    ensure_arg!(
        probes.iter().all(|&(a, b)| a < width && b < width),
        "probe index out of range"
    );
    let column = |k: usize| -> Vec<f64> { ensemble.iter().map(|r| r[k]).collect() };
    probes
        .iter()
        .map(|&(a, b)| {
            let xa = column(a);
            let xb = column(b);
            let (ma, mb) = (mean(&xa), mean(&xb));
            let prods: Vec<f64> = xa.iter().zip(&xb).map(|(x, y)| (x - ma) * (y - mb)).collect();
            let cov = pairwise_sum(&prods) / (n as f64 - 1.0);
            let pm = mean(&prods);
            let pv: Vec<f64> = prods.iter().map(|p| (p - pm) * (p - pm)).collect();
            let stderr = (pairwise_sum(&pv) / (n as f64 - 1.0) / n as f64).sqrt();
            Ok(CovEntry {
                probe: (a, b),
                cov,
                stderr,
            })
        })
        .collect()
}

/// Pearson correlation with the large-sample standard error `(1 - r^2)/sqrt(n - 1)`.
pub fn correlation(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    ensure_arg!(
        x.len() == y.len() && x.len() >= 3,
        "correlation needs paired samples, n >= 3"
    );
    let (mx, my) = (mean(x), mean(y));
    let sxy: Vec<f64> = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).collect();
    let sxx: Vec<f64> = x.iter().map(|a| (a - mx) * (a - mx)).collect();
    let syy: Vec<f64> = y.iter().map(|b| (b - my) * (b - my)).collect();
    let denom = (pairwise_sum(&sxx) * pairwise_sum(&syy)).sqrt();
    let r = if denom > 0.0 { pairwise_sum(&sxy) / denom } else { 0.0 };
    Ok((r, (1.0 - r * r) / ((x.len() - 1) as f64).sqrt()))
}

/// Least-squares line `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
}

/// Weighted least squares with weights `1/sigma_i^2`; the slope error is the
/// propagated `sqrt(1 / S_xx)` of the weighted design.
pub fn weighted_line_fit(x: &[f64], y: &[f64], sigma: &[f64]) -> Result<LineFit> {
    ensure_arg!(
        x.len() == y.len() && x.len() == sigma.len() && x.len() >= 2,
        "line fit needs at least two points"
    );
    ensure_arg!(
        sigma.iter().all(|s| *s > 0.0 && s.is_finite()),
        "line fit needs positive finite sigmas"
    );
    let w: Vec<f64> = sigma.iter().map(|s| 1.0 / (s * s)).collect();
    let sw: f64 = w.iter().sum();
    let xm = x.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let ym = y.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let sxx: f64 = x.iter().zip(&w).map(|(a, b)| b * (a - xm) * (a - xm)).sum();
    let sxy: f64 = x.iter().zip(y).zip(&w).map(|((a, c), b)| b * (a - xm) * (c - ym)).sum();
    ensure_arg!(sxx > 0.0, "line fit needs distinct abscissae");
    let slope = sxy / sxx;
    Ok(LineFit {
        slope,
        intercept: ym - slope * xm,
        slope_stderr: (1.0 / sxx).sqrt(),
    })
}

/// Ordinary least squares; the slope error is the classical residual-based one
/// (zero when only two points are given).
pub fn line_fit(x: &[f64], y: &[f64]) -> Result<LineFit> {
    ensure_arg!(x.len() == y.len() && x.len() >= 2, "line fit needs at least two points");
    let n = x.len() as f64;
    let xm = x.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - xm) * (a - xm)).sum();
    ensure_arg!(sxx > 0.0, "line fit needs distinct abscissae");
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - xm) * (b - ym)).sum();
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let slope_stderr = if x.len() > 2 {
        let rss: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
        (rss / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(LineFit {
        slope,
        intercept,
        slope_stderr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Seed;

    #[test]
    fn ks_identical_is_zero() {
        let a = [0.3, 1.0, -2.0, 5.0];
        assert_eq!(ks_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn ks_disjoint_is_one() {
        assert_eq!(ks_distance(&[0.0], &[1.0]).unwrap(), 1.0);
    }

    #[test]
    fn ks_empty_rejected() {
        assert!(ks_distance(&[], &[1.0]).is_err());
    }

    #[test]
    fn ks_ties_across_samples() {
        // F_a jumps to 1/2 at 0 and 1 at 1; F_b jumps to 1 at 0.
        let d = ks_distance(&[0.0, 1.0], &[0.0, 0.0]).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ks_same_normal_small() {
        // 95% quantile of the two-sample KS statistic is 1.358*sqrt(2/n) = 0.0192
        // at n = 10^4, so 0.03 should essentially never be exceeded.
        let mut fails = 0;
        for trial in 0..20u64 {
            let mut ra = Seed(trial).stream(0);
            let mut rb = Seed(trial).stream(1);
            let a: Vec<f64> = (0..10_000).map(|_| ra.normal()).collect();
            let b: Vec<f64> = (0..10_000).map(|_| rb.normal()).collect();
            if ks_distance(&a, &b).unwrap() >= 0.03 {
                fails += 1;
            }
        }
        assert!(fails <= 1);
    }

    #[test]
    fn constant_paths_zero_covariance() {
        let ens = vec![vec![1.0, 2.0]; 10];
        for e in covariance_table(&ens, &[(0, 1), (0, 0)]).unwrap() {
            assert_eq!(e.cov, 0.0);
        }
    }

    #[test]
    fn self_probe_is_variance() {
        let ens: Vec<Vec<f64>> = (0..7).map(|i| vec![i as f64 * 0.5 - 1.0]).collect();
        let col: Vec<f64> = ens.iter().map(|r| r[0]).collect();
        let e = covariance_table(&ens, &[(0, 0)]).unwrap()[0];
        assert!((e.cov - variance(&col)).abs() < 1e-15);
    }

    #[test]
    fn pairwise_matches_naive_on_small() {
        let xs: Vec<f64> = (0..1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&xs), 499_500.0);
    }

    #[test]
    fn exact_line_recovered() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 3.0, 5.0, 7.0];
        let f = line_fit(&x, &y).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12);
        let g = weighted_line_fit(&x, &y, &[1.0, 0.5, 2.0, 1.0]).unwrap();
        assert!((g.slope - 2.0).abs() < 1e-12);
    }

    #[test]
    fn median_even_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
