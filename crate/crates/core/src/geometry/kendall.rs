use crate::ensemble::{run_replicas, EnsembleConfig, EstimateReport};
use crate::error::{ensure_arg, Result};
use crate::path::Path;
use crate::sheet::{sample_corner, CornerDecomposition};
use crate::table::Table;

/// Lattice indices of the perimeter of `[0, 2]^2`, `per_side` equal steps
/// per side on a lattice of `lattice` intervals; each corner appears once.
pub fn boundary_nodes(lattice: usize, per_side: usize) -> Result<Vec<(usize, usize)>> {
    ensure_arg!(per_side >= 1, "need at least one boundary step per side");
    ensure_arg!(
        lattice.is_multiple_of(per_side),
        "boundary steps {per_side} must divide the lattice steps {lattice}"
    );
    let stride = lattice / per_side;
    let mut out = Vec::with_capacity(4 * per_side);
    for k in 0..per_side {
        let a = k * stride;
        out.push((a, 0));
        out.push((lattice, a));
        out.push((lattice - a, lattice));
        out.push((0, lattice - a));
    }
    Ok(out)
}

/// Whether the centre value beats every boundary value `J(r)`.
pub fn kendall_event(c: &CornerDecomposition, boundary: &[(usize, usize)]) -> bool {
    let mid = c.steps() / 2;
    let centre = c.local(mid, mid);
    boundary.iter().all(|&(i, j)| centre > c.local(i, j))
}

/// `P{J(r)}` estimated through the corner decomposition on a lattice of
/// `lattice_steps` intervals over `[0, 2]`, checking `boundary_steps`
/// boundary points per side.
pub fn kendall_j(r: f64, boundary_steps: usize, lattice_steps: usize, cfg: &EnsembleConfig) -> Result<EstimateReport> {
    ensure_arg!(r > 0.0 && r < 1.0, "r must lie in (0, 1), got {r}");
    ensure_arg!(
        lattice_steps >= 2 && lattice_steps.is_multiple_of(2),
        "lattice steps must be even"
    );
    let boundary = boundary_nodes(lattice_steps, boundary_steps)?;
    let v = run_replicas(cfg, |_, rng| {
        let c = sample_corner(r, lattice_steps, rng)?;
        Ok(kendall_event(&c, &boundary) as u8 as f64)
    })?;
    EstimateReport::from_samples(&v)
}

/// `P{ X(1) + Y(1) > X(u) + Y(v) for all (u, v) on the perimeter of [0, 2]^2 }`
/// for independent Brownian motions on `steps` intervals of `[0, 2]`.
/// With `y_zero` the second motion is replaced by the zero path.
pub fn kendall_limit(steps: usize, y_zero: bool, cfg: &EnsembleConfig) -> Result<EstimateReport> {
    ensure_arg!(
        steps >= 256 && steps.is_multiple_of(2),
        "need an even number of at least 256 steps"
    );
    let v = run_replicas(cfg, |_, rng| {
        let x = Path::brownian(2.0, steps, 1.0, rng);
        let y = if y_zero {
            Path::zeros(2.0, steps)
        } else {
            Path::brownian(2.0, steps, 1.0, rng)
        };
        Ok(limit_event(&x.values, &y.values) as u8 as f64)
    })?;
    EstimateReport::from_samples(&v)
}

fn limit_event(x: &[f64], y: &[f64]) -> bool {
    let n = x.len() - 1;
    let mid = n / 2;
    let centre = x[mid] + y[mid];
    let max_x = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let max_y = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // sides v = 0, v = 2, u = 0, u = 2
    let top = max_x + y[0].max(y[n]);
    let side = max_y + x[0].max(x[n]);
    centre > top && centre > side
}

pub fn kendall_table(rows: &[(f64, EstimateReport)]) -> Table {
    let mut t = Table::new(&["r", "estimate", "stderr"]);
    for (r, e) in rows {
        t.push(vec![(*r).into(), e.mean.into(), e.stderr.into()]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Seed;

    #[test]
    fn perimeter_layout() {
        let b = boundary_nodes(4, 1).unwrap();
        assert_eq!(b, vec![(0, 0), (4, 0), (4, 4), (0, 4)]);
        let b = boundary_nodes(8, 4).unwrap();
        assert_eq!(b.len(), 16);
        let mut u = b.clone();
        u.sort();
        u.dedup();
        assert_eq!(u.len(), 16);
        assert!(b.iter().all(|&(i, j)| i == 0 || j == 0 || i == 8 || j == 8));
        assert!(boundary_nodes(8, 3).is_err());
    }

    #[test]
    fn limit_event_by_hand() {
        // X peaks at the centre, Y flat: the boundary point (1, 0) ties the centre
        let x = [0.0, 1.0, 0.0];
        let y = [0.0, 0.0, 0.0];
        assert!(!limit_event(&x, &y));
        let y = [0.0, 0.5, -1.0];
        assert!(limit_event(&x, &y));
    }

    #[test]
    fn fewer_constraints_never_lower() {
        let cfg = EnsembleConfig::new(400, Seed(6));
        let coarse = kendall_j(0.1, 1, 64, &cfg).unwrap();
        let mid = kendall_j(0.1, 8, 64, &cfg).unwrap();
        let fine = kendall_j(0.1, 64, 64, &cfg).unwrap();
        assert!(coarse.mean >= mid.mean && mid.mean >= fine.mean);
    }

    #[test]
    fn zero_y_is_impossible() {
        let cfg = EnsembleConfig::new(200, Seed(7));
        let r = kendall_limit(256, true, &cfg).unwrap();
        assert_eq!(r.mean, 0.0);
    }
}
