use crate::error::{ensure_arg, Result};
use crate::rng::GaussianSource;

/// A one-parameter path sampled on the uniform grid `t0 + j * dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<f64>,
}

impl Path {
    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Self {
        Path { t0, dt, values }
    }

    pub fn zeros(t_max: f64, steps: usize) -> Self {
        Path::new(0.0, t_max / steps as f64, vec![0.0; steps + 1])
    }

    /// Brownian motion on `[0, t_max]` started at 0, scaled by `scale`.
    pub fn brownian<G: GaussianSource + ?Sized>(t_max: f64, steps: usize, scale: f64, g: &mut G) -> Self {
        let dt = t_max / steps as f64;
        let sd = scale * dt.sqrt();
        let mut values = Vec::with_capacity(steps + 1);
        let mut acc = 0.0;
        values.push(0.0);
        for _ in 0..steps {
            acc += sd * g.normal();
            values.push(acc);
        }
        Path::new(0.0, dt, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn t(&self, j: usize) -> f64 {
        self.t0 + j as f64 * self.dt
    }

    pub fn t_max(&self) -> f64 {
        self.t(self.values.len() - 1)
    }

    /// Linear interpolation; clamps outside the grid.
    pub fn at(&self, t: f64) -> f64 {
        let x = (t - self.t0) / self.dt;
        if x <= 0.0 {
            return self.values[0];
        }
        let last = self.values.len() - 1;
        let j = x.floor() as usize;
        if j >= last {
            return self.values[last];
        }
        let frac = x - j as f64;
        if frac == 0.0 {
            return self.values[j];
        }
        self.values[j] * (1.0 - frac) + self.values[j + 1] * frac
    }

    /// Grid index of `t`, if `t` is (to rounding) a grid point.
    pub fn index_of(&self, t: f64) -> Result<usize> {
        let x = (t - self.t0) / self.dt;
        let j = x.round();
        ensure_arg!(
            (x - j).abs() < 1e-9 && j >= 0.0 && (j as usize) < self.values.len(),
            "t = {t} is not a grid point of the path"
        );
        Ok(j as usize)
    }

    pub fn same_grid(&self, other: &Path) -> bool {
        self.values.len() == other.values.len() && self.t0 == other.t0 && self.dt == other.dt
    }
}
