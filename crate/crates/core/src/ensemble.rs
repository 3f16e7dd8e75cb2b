//! Replica execution and estimate aggregation.
//!
//! Replica `k` always receives stream `k` of the configured seed, results are
//! gathered back into index order, and sums are formed by fixed-shape
//! pairwise reduction. Together these make every report independent of how
//! many worker threads were used.

use rayon::prelude::*;

use crate::error::{ensure_arg, Error, Result};
use crate::rng::{RngStream, Seed};
use crate::stats::pairwise_sum;

/// Monte Carlo estimate with its sampling uncertainty.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub mean: f64,
    pub stderr: f64,
    pub replicas: usize,
    pub ci95: (f64, f64),
    pub warnings: Vec<String>,
}

impl EstimateReport {
    /// Mean, `sd / sqrt(n)` and the normal-theory 95% interval of `samples`.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        ensure_arg!(!samples.is_empty(), "estimate needs at least one sample");
        let n = samples.len();
        let mean = pairwise_sum(samples) / n as f64;
        if !mean.is_finite() {
            return Err(Error::Numeric(format!("non-finite sample mean {mean}")));
        }
        let stderr = if n > 1 {
            let dev: Vec<f64> = samples.iter().map(|x| (x - mean) * (x - mean)).collect();
            (pairwise_sum(&dev) / (n - 1) as f64).sqrt() / (n as f64).sqrt()
        } else {
            0.0
        };
        Ok(Self::new(mean, stderr, n))
    }

    pub fn new(mean: f64, stderr: f64, replicas: usize) -> Self {
        EstimateReport {
            mean,
            stderr,
            replicas,
            ci95: (mean - 1.96 * stderr, mean + 1.96 * stderr),
            warnings: Vec::new(),
        }
    }

    /// Deterministic value, zero uncertainty.
    pub fn exact(value: f64, replicas: usize) -> Self {
        Self::new(value, 0.0, replicas)
    }

    pub fn with_warning(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }

    pub fn contains(&self, value: f64) -> bool {
        self.ci95.0 <= value && value <= self.ci95.1
    }

    /// `|mean - value| <= k * stderr`.
    pub fn within_sigmas(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.stderr
    }

    pub fn overlaps(&self, other: &EstimateReport) -> bool {
        self.ci95.0 <= other.ci95.1 && other.ci95.0 <= self.ci95.1
    }
}

/// Replica count, degree of parallelism and master seed of one ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleConfig {
    pub replicas: usize,
    /// Worker threads; 0 runs on the ambient rayon pool.
    pub parallelism: usize,
    pub seed: Seed,
}

impl EnsembleConfig {
    pub fn new(replicas: usize, seed: Seed) -> Self {
        EnsembleConfig {
            replicas,
            parallelism: 0,
            seed,
        }
    }

    pub fn with_parallelism(mut self, threads: usize) -> Self {
        self.parallelism = threads;
        self
    }
}

/// Run `replica(k, stream_k)` for every `k < cfg.replicas`, in index order.
pub fn run_replicas<T, F>(cfg: &EnsembleConfig, replica: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, &mut RngStream) -> Result<T> + Sync,
{
    ensure_arg!(cfg.replicas >= 1, "replicas must be at least 1");
    let seed = cfg.seed;
    let job = || {
        (0..cfg.replicas)
            .into_par_iter()
            .map(|k| {
                let mut rng = seed.stream(k as u64);
                replica(k, &mut rng).map_err(|e| Error::Replica {
                    index: k,
                    source: Box::new(e),
                })
            })
            .collect::<Vec<Result<T>>>()
    };
    let results = if cfg.parallelism == 0 {
        job()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallelism)
            .build()
            .map_err(|e| Error::Numeric(format!("thread pool: {e}")))?
            .install(job)
    };
    // first failure by replica index, not by completion order
    results.into_iter().collect()
}

/// Scalar Monte Carlo: mean and standard error of a per-replica statistic.
pub fn mc_run<F>(cfg: &EnsembleConfig, replica: F) -> Result<EstimateReport>
where
    F: Fn(usize, &mut RngStream) -> Result<f64> + Sync,
{
    let samples = run_replicas(cfg, replica)?;
    EstimateReport::from_samples(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_replica_has_zero_stderr() {
        let cfg = EnsembleConfig::new(50, Seed(1));
        let rep = mc_run(&cfg, |_, _| Ok(2.5)).unwrap();
        assert_eq!(rep.mean, 2.5);
        assert_eq!(rep.stderr, 0.0);
        assert_eq!(rep.replicas, 50);
        assert_eq!(rep.ci95, (2.5, 2.5));
    }

    #[test]
    fn parallelism_does_not_change_bits() {
        let base = EnsembleConfig::new(2000, Seed(99));
        let f = |_: usize, rng: &mut RngStream| Ok(rng.normal() * rng.uniform());
        let a = mc_run(&base.with_parallelism(1), f).unwrap();
        let b = mc_run(&base.with_parallelism(8), f).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }

    #[test]
    fn standard_normal_clt() {
        let cfg = EnsembleConfig::new(10_000, Seed(2024));
        let rep = mc_run(&cfg, |_, rng| Ok(rng.normal())).unwrap();
        assert!(rep.within_sigmas(0.0, 3.0), "{rep:?}");
        assert!((rep.stderr - 0.01).abs() < 0.0005, "{rep:?}");
    }

    #[test]
    fn failure_reports_lowest_index() {
        let cfg = EnsembleConfig::new(100, Seed(0)).with_parallelism(4);
        let err = mc_run(&cfg, |k, _| {
            if k == 17 || k == 60 {
                Err(Error::Numeric("boom".into()))
            } else {
                Ok(0.0)
            }
        })
        .unwrap_err();
        match err {
            Error::Replica { index, .. } => assert_eq!(index, 17),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ci_is_mean_pm_196_stderr() {
        let rep = EstimateReport::from_samples(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        let sd = (5.0f64 / 3.0).sqrt();
        assert!((rep.stderr - sd / 2.0).abs() < 1e-15);
        assert!((rep.ci95.0 - (rep.mean - 1.96 * rep.stderr)).abs() < 1e-15);
        assert!((rep.ci95.1 - (rep.mean + 1.96 * rep.stderr)).abs() < 1e-15);
    }

    #[test]
    fn zero_replicas_rejected() {
        let cfg = EnsembleConfig::new(0, Seed(0));
        assert!(matches!(mc_run(&cfg, |_, _| Ok(0.0)), Err(Error::Argument(_))));
    }
}
