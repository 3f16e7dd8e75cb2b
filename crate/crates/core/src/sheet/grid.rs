use crate::error::{ensure_arg, Result};

/// Rectangular lattice `[s_min, s_max] x [t_min, t_max]` with
/// `s_steps x t_steps` cells and `(s_steps + 1) x (t_steps + 1)` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub s_steps: usize,
    pub t_steps: usize,
}

impl GridSpec {
    pub fn new(s_min: f64, s_max: f64, t_min: f64, t_max: f64, s_steps: usize, t_steps: usize) -> Result<Self> {
        let g = GridSpec {
            s_min,
            s_max,
            t_min,
            t_max,
            s_steps,
            t_steps,
        };
        g.validate()?;
        Ok(g)
    }

    /// `[0, side]^2` with `steps` cells per side.
    pub fn square(side: f64, steps: usize) -> Result<Self> {
        Self::new(0.0, side, 0.0, side, steps, steps)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.s_min, self.s_max, self.t_min, self.t_max]
            .iter()
            .all(|x| x.is_finite());
        ensure_arg!(finite, "grid bounds must be finite");
        ensure_arg!(
            self.s_min >= 0.0 && self.t_min >= 0.0,
            "grid must lie in the closed positive quadrant"
        );
        ensure_arg!(
            self.s_min < self.s_max && self.t_min < self.t_max,
            "grid has zero area: [{}, {}] x [{}, {}]",
            self.s_min,
            self.s_max,
            self.t_min,
            self.t_max
        );
        ensure_arg!(
            self.s_steps >= 1 && self.t_steps >= 1,
            "grid needs at least one step per axis"
        );
        Ok(())
    }

    pub fn ds(&self) -> f64 {
        (self.s_max - self.s_min) / self.s_steps as f64
    }

    pub fn dt(&self) -> f64 {
        (self.t_max - self.t_min) / self.t_steps as f64
    }

    pub fn s(&self, i: usize) -> f64 {
        if i == self.s_steps {
            self.s_max
        } else {
            self.s_min + i as f64 * self.ds()
        }
    }

    pub fn t(&self, j: usize) -> f64 {
        if j == self.t_steps {
            self.t_max
        } else {
            self.t_min + j as f64 * self.dt()
        }
    }

    pub fn s_nodes(&self) -> Vec<f64> {
        (0..=self.s_steps).map(|i| self.s(i)).collect()
    }

    pub fn t_nodes(&self) -> Vec<f64> {
        (0..=self.t_steps).map(|j| self.t(j)).collect()
    }

    pub fn node_count(&self) -> usize {
        (self.s_steps + 1) * (self.t_steps + 1)
    }

    pub fn anchored(&self) -> bool {
        self.s_min == 0.0 && self.t_min == 0.0
    }

    /// Index of the node at `s`, when `s` is a node up to rounding.
    pub fn s_index(&self, s: f64) -> Option<usize> {
        node_index(s, self.s_min, self.ds(), self.s_steps)
    }

    pub fn t_index(&self, t: f64) -> Option<usize> {
        node_index(t, self.t_min, self.dt(), self.t_steps)
    }
}

fn node_index(x: f64, lo: f64, step: f64, steps: usize) -> Option<usize> {
    let k = (x - lo) / step;
    let r = k.round();
    if (k - r).abs() < 1e-9 && r >= 0.0 && r as usize <= steps {
        Some(r as usize)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_rejected() {
        assert!(GridSpec::new(0.0, 0.0, 0.0, 1.0, 4, 4).is_err());
        assert!(GridSpec::new(0.0, 1.0, 0.5, 0.5, 4, 4).is_err());
        assert!(GridSpec::new(0.0, 1.0, 0.0, 1.0, 0, 4).is_err());
        assert!(GridSpec::new(-1.0, 1.0, 0.0, 1.0, 2, 4).is_err());
        assert!(GridSpec::new(0.0, f64::NAN, 0.0, 1.0, 2, 4).is_err());
    }

    #[test]
    fn nodes_hit_endpoints_exactly() {
        let g = GridSpec::new(1.0, std::f64::consts::E, 0.0, 1.0, 64, 1 << 10).unwrap();
        assert_eq!(g.s(64), std::f64::consts::E);
        assert_eq!(g.t(1 << 10), 1.0);
        assert_eq!(g.t_index(0.5), Some(512));
        assert_eq!(g.t_index(0.50001), None);
    }
}
