use crate::error::{ensure_arg, Result};
use crate::path::Path;
use crate::rng::GaussianSource;

use super::{sample_sheet, GridSpec, SheetField};

/// Local decomposition of the sheet on the square `[1-r, 1+r]^2`:
///
/// `W(1-r+ur, 1-r+vr) = sqrt((1-r) r) [X(u) + Y(v)] + r Z(u, v) + base`
///
/// with `X`, `Y` Brownian motions on `[0, 2]`, `Z` a sheet on `[0, 2]^2`
/// and `base = W(1-r, 1-r)`, all independent.
#[derive(Debug, Clone, PartialEq)]
pub struct CornerDecomposition {
    pub r: f64,
    pub x: Path,
    pub y: Path,
    pub z: SheetField,
    pub base: f64,
}

impl CornerDecomposition {
    pub fn steps(&self) -> usize {
        self.x.len() - 1
    }

    /// Fluctuation part without the base value, at lattice nodes `(iu, iv)`.
    #[inline]
    pub fn local(&self, iu: usize, iv: usize) -> f64 {
        let a = ((1.0 - self.r) * self.r).sqrt();
        a * (self.x.values[iu] + self.y.values[iv]) + self.r * self.z.value(iu, iv)
    }

    /// The sheet value `W(1-r+u_i r, 1-r+v_j r)`.
    #[inline]
    pub fn reconstruct(&self, iu: usize, iv: usize) -> f64 {
        self.local(iu, iv) + self.base
    }

    /// The reconstructed sheet on the grid over `[1-r, 1+r]^2`.
    pub fn reconstruct_field(&self) -> Result<SheetField> {
        let n = self.steps();
        let grid = GridSpec::new(1.0 - self.r, 1.0 + self.r, 1.0 - self.r, 1.0 + self.r, n, n)?;
        let mut values = Vec::with_capacity(grid.node_count());
        for i in 0..=n {
            for j in 0..=n {
                values.push(self.reconstruct(i, j));
            }
        }
        Ok(SheetField { grid, values })
    }
}

/// Sample `(X, Y, Z, base)` with `steps` intervals per unit side of `[0, 2]`.
pub fn sample_corner<G: GaussianSource + ?Sized>(r: f64, steps: usize, g: &mut G) -> Result<CornerDecomposition> {
    ensure_arg!(r > 0.0 && r < 1.0, "r must lie in (0, 1), got {r}");
    ensure_arg!(steps >= 2, "need at least 2 steps");
    let x = Path::brownian(2.0, steps, 1.0, g);
    let y = Path::brownian(2.0, steps, 1.0, g);
    let z = sample_sheet(&GridSpec::square(2.0, steps)?, g)?;
    let base = (1.0 - r) * g.normal();
    Ok(CornerDecomposition { r, x, y, z, base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Seed, ZeroNoise};
    use crate::stats;

    #[test]
    fn zero_noise_reconstructs_zero() {
        let c = sample_corner(0.3, 8, &mut ZeroNoise).unwrap();
        let f = c.reconstruct_field().unwrap();
        assert!(f.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn rejects_r() {
        assert!(sample_corner(0.0, 8, &mut ZeroNoise).is_err());
        assert!(sample_corner(1.0, 8, &mut ZeroNoise).is_err());
        assert!(sample_corner(0.5, 1, &mut ZeroNoise).is_err());
    }

    #[test]
    fn center_variance_is_one() {
        let n = 4000;
        let v: Vec<f64> = (0..n)
            .map(|k| sample_corner(0.5, 4, &mut Seed(5).stream(k)).unwrap().reconstruct(2, 2))
            .collect();
        let var = stats::variance(&v);
        let se = (2.0 / (n as f64 - 1.0)).sqrt();
        assert!((var - 1.0).abs() < 4.0 * se, "{var}");
    }
}
