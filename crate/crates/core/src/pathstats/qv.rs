use crate::error::{ensure_arg, Result};
use crate::sheet::SheetField;
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionKind {
    Dyadic,
    Custom,
}

/// Finite family of nested-or-not partitions of `[0, 1]`, indexed by interval count.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionScheme {
    pub kind: PartitionKind,
    partitions: Vec<Vec<f64>>,
}

/// Evidence that the mesh sequence is summable.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshCertificate {
    pub partial_sum: f64,
    /// Bound on the mesh sum beyond the stored partitions, if one is known in closed form.
    pub tail_bound: Option<f64>,
    pub total_bound: f64,
    pub argument: String,
}

impl PartitionScheme {
    pub fn custom(partitions: Vec<Vec<f64>>) -> Result<Self> {
        ensure_arg!(!partitions.is_empty(), "need at least one partition");
        for p in &partitions {
            ensure_arg!(p.len() >= 2, "a partition needs at least two points");
            ensure_arg!(
                p[0] == 0.0 && *p.last().expect("len >= 2") == 1.0,
                "partitions must run from 0 to 1"
            );
            ensure_arg!(
                p.windows(2).all(|w| w[0] < w[1]),
                "partition points must increase strictly"
            );
        }
        Ok(PartitionScheme {
            kind: PartitionKind::Custom,
            partitions,
        })
    }

    pub fn partitions(&self) -> &[Vec<f64>] {
        &self.partitions
    }

    /// The partition with `n` intervals.
    pub fn with_intervals(&self, n: usize) -> Option<&[f64]> {
        self.partitions.iter().find(|p| p.len() == n + 1).map(|p| p.as_slice())
    }

    pub fn mesh(&self) -> Vec<f64> {
        self.partitions
            .iter()
            .map(|p| p.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max))
            .collect()
    }

    /// Mesh sum over the stored partitions with `n >= 2` intervals plus, for
    /// dyadic schemes, the geometric tail `sum_{k > K} 2^-k = 2^-K`.
    pub fn certificate(&self) -> MeshCertificate {
        let mesh = self.mesh();
        let partial_sum: f64 = self
            .partitions
            .iter()
            .zip(&mesh)
            .filter(|(p, _)| p.len() > 2)
            .map(|(_, m)| m)
            .sum();
        match self.kind {
            PartitionKind::Dyadic => {
                let tail = mesh.last().copied().unwrap_or(1.0);
                MeshCertificate {
                    partial_sum,
                    tail_bound: Some(tail),
                    total_bound: partial_sum + tail,
                    argument: "geometric: sum_{k>=1} 2^-k = 1".into(),
                }
            }
            PartitionKind::Custom => MeshCertificate {
                partial_sum,
                tail_bound: None,
                total_bound: partial_sum,
                argument: "finite family".into(),
            },
        }
    }
}

/// Dyadic partitions `j / 2^k`, `k = 0..=k_max`.
pub fn partition_dyadic(k_max: u32) -> Result<PartitionScheme> {
    ensure_arg!((1..=40).contains(&k_max), "dyadic depth must lie in 1..=40");
    let partitions = (0..=k_max)
        .map(|k| {
            let n = 1usize << k;
            (0..=n).map(|j| j as f64 / n as f64).collect()
        })
        .collect();
    Ok(PartitionScheme {
        kind: PartitionKind::Dyadic,
        partitions,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct QVProfile {
    pub n: usize,
    pub t: f64,
    pub s_grid: Vec<f64>,
    /// `V_n(s, t) = sum_j |W(s, pi_j t) - W(s, pi_{j-1} t)|^2 - s t`
    pub vn: Vec<f64>,
    pub sup_abs: f64,
    /// Largest distance between a partition point and its grid node.
    pub snap_distance: f64,
}

impl QVProfile {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["s", "n", "vn"]);
        for (s, v) in self.s_grid.iter().zip(&self.vn) {
            t.push(vec![(*s).into(), self.n.into(), (*v).into()]);
        }
        t
    }
}

/// Quadratic variation defect along the scheme's `n`-interval partition of `[0, t]`.
pub fn quadratic_variation(sheet: &SheetField, scheme: &PartitionScheme, n: usize, t: f64) -> Result<QVProfile> {
    let g = &sheet.grid;
    ensure_arg!(g.t_min == 0.0, "t grid must start at 0");
    ensure_arg!(t > 0.0 && t <= g.t_max * (1.0 + 1e-12), "t = {t} outside the t window");
    let p = scheme
        .with_intervals(n)
        .ok_or_else(|| crate::Error::Argument(format!("scheme has no partition with {n} intervals")))?;
    let dt = g.dt();
    let mut idx = Vec::with_capacity(p.len());
    let mut snap_distance = 0.0f64;
    for &x in p {
        let target = x * t;
        let k = ((target / dt).round() as usize).min(g.t_steps);
        snap_distance = snap_distance.max((g.t(k) - target).abs());
        idx.push(k);
    }
    ensure_arg!(
        idx.windows(2).all(|w| w[0] < w[1]),
        "{n} intervals exceed the grid resolution ({} steps up to t)",
        (t / dt).round()
    );
    let mut vn = Vec::with_capacity(g.s_steps + 1);
    for (i, row) in sheet.rows().enumerate() {
        let s = g.s(i);
        let sum: f64 = idx.windows(2).map(|w| (row[w[1]] - row[w[0]]).powi(2)).sum();
        vn.push(sum - s * t);
    }
    let sup_abs = vn.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(QVProfile {
        n,
        t,
        s_grid: g.s_nodes(),
        vn,
        sup_abs,
        snap_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Seed;
    use crate::sheet::{sample_sheet, GridSpec};

    #[test]
    fn dyadic_basics() {
        let d = partition_dyadic(20).unwrap();
        assert_eq!(d.with_intervals(2).unwrap(), &[0.0, 0.5, 1.0]);
        let mesh = d.mesh();
        for (k, m) in mesh.iter().enumerate() {
            assert_eq!(*m, 2f64.powi(-(k as i32)));
        }
        let c = d.certificate();
        assert_eq!(c.partial_sum, 1.0 - 2f64.powi(-20));
        assert_eq!(c.total_bound, 1.0);
        assert!(partition_dyadic(0).is_err());
    }

    #[test]
    fn custom_validation() {
        assert!(PartitionScheme::custom(vec![vec![0.0, 0.3, 1.0]]).is_ok());
        assert!(PartitionScheme::custom(vec![vec![0.0, 0.3, 0.2, 1.0]]).is_err());
        assert!(PartitionScheme::custom(vec![vec![0.1, 1.0]]).is_err());
    }

    #[test]
    fn single_interval_identity() {
        let grid = GridSpec::new(1.0, std::f64::consts::E, 0.0, 1.0, 8, 64).unwrap();
        let sheet = sample_sheet(&grid, &mut Seed(4).stream(7)).unwrap();
        let q = quadratic_variation(&sheet, &partition_dyadic(3).unwrap(), 1, 1.0).unwrap();
        for (i, v) in q.vn.iter().enumerate() {
            let w = sheet.value(i, 64);
            assert_eq!(*v, w * w - grid.s(i));
        }
        assert_eq!(q.snap_distance, 0.0);
        assert!(quadratic_variation(&sheet, &partition_dyadic(7).unwrap(), 128, 1.0).is_err());
    }
}
