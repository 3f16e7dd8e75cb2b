use crate::error::{ensure_arg, Result};
use crate::path::Path;
use crate::rng::GaussianSource;
use crate::table::Table;

use super::GridSpec;

/// Lattice white noise covering `[0, s_max] x [0, t_max]`.
///
/// Storage is `(s_steps + 1) x (t_steps + 1)`, row-major in `s`:
///
/// * `[0][0]` is the mass of `[0, s_min] x [0, t_min]`,
/// * `[0][j]` (j >= 1) is the mass of `[0, s_min] x [t_{j-1}, t_j]`,
/// * `[i][0]` (i >= 1) is the mass of `[s_{i-1}, s_i] x [0, t_min]`,
/// * `[i][j]` (both >= 1) is the interior cell `[s_{i-1}, s_i] x [t_{j-1}, t_j]`.
///
/// For a grid anchored at the origin the first row and column have zero area
/// and hold exact zeros. The sheet at node `(i, j)` is the inclusive double
/// cumulative sum up to `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WhiteNoiseField {
    pub grid: GridSpec,
    pub cells: Vec<f64>,
}

impl WhiteNoiseField {
    pub fn zeros(grid: GridSpec) -> Self {
        WhiteNoiseField {
            cells: vec![0.0; grid.node_count()],
            grid,
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.grid.t_steps + 1) + j
    }

    pub fn cell(&self, i: usize, j: usize) -> f64 {
        self.cells[self.idx(i, j)]
    }

    pub fn set_cell(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.cells[k] = v;
    }

    /// Area of storage slot `(i, j)`.
    pub fn cell_area(&self, i: usize, j: usize) -> f64 {
        let g = &self.grid;
        let w = if i == 0 { g.s_min } else { g.ds() };
        let h = if j == 0 { g.t_min } else { g.dt() };
        w * h
    }

    /// Noise mass of `[s_{i0}, s_{i1}] x [t_{j0}, t_{j1}]` (node indices).
    pub fn rect_mass(&self, i0: usize, i1: usize, j0: usize, j1: usize) -> f64 {
        let mut acc = 0.0;
        for i in (i0 + 1)..=i1 {
            for j in (j0 + 1)..=j1 {
                acc += self.cell(i, j);
            }
        }
        acc
    }
}

/// Draw white noise for `grid`: every slot is an independent centered
/// Gaussian whose variance is the slot's area.
pub fn sample_white_noise<G: GaussianSource + ?Sized>(grid: &GridSpec, g: &mut G) -> Result<WhiteNoiseField> {
    grid.validate()?;
    let mut noise = WhiteNoiseField::zeros(*grid);
    let cols = grid.t_steps + 1;
    let interior = (grid.ds() * grid.dt()).sqrt();
    if grid.s_min > 0.0 {
        let row = &mut noise.cells[..cols];
        if grid.t_min > 0.0 {
            row[0] = (grid.s_min * grid.t_min).sqrt() * g.normal();
        }
        g.fill_normal(&mut row[1..], (grid.s_min * grid.dt()).sqrt());
    }
    let bottom = (grid.ds() * grid.t_min).sqrt();
    for i in 1..=grid.s_steps {
        let row = &mut noise.cells[i * cols..(i + 1) * cols];
        if grid.t_min > 0.0 {
            row[0] = bottom * g.normal();
        }
        g.fill_normal(&mut row[1..], interior);
    }
    Ok(noise)
}

/// Sheet values `W(s_i, t_j)` on a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct SheetField {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

impl SheetField {
    pub fn zeros(grid: GridSpec) -> Self {
        SheetField {
            values: vec![0.0; grid.node_count()],
            grid,
        }
    }

    /// Deterministic field `f(s, t)`; used for debug and control fields.
    pub fn from_fn(grid: GridSpec, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.node_count());
        for i in 0..=grid.s_steps {
            let s = grid.s(i);
            for j in 0..=grid.t_steps {
                values.push(f(s, grid.t(j)));
            }
        }
        SheetField { grid, values }
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * (self.grid.t_steps + 1) + j]
    }

    /// The `t`-row at `s_i`, i.e. `t -> W(s_i, t)` on the grid.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        let cols = self.grid.t_steps + 1;
        &self.values[i * cols..(i + 1) * cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.grid.t_steps + 1)
    }

    /// `W(s_{i1}, t_{j1}) - W(s_{i0}, t_{j1}) - W(s_{i1}, t_{j0}) + W(s_{i0}, t_{j0})`.
    pub fn rect_increment(&self, i0: usize, i1: usize, j0: usize, j1: usize) -> f64 {
        self.value(i1, j1) - self.value(i0, j1) - self.value(i1, j0) + self.value(i0, j0)
    }

    /// CSV table `s,t,value`, row-major in `s` then `t`.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["s", "t", "value"]);
        for i in 0..=self.grid.s_steps {
            for j in 0..=self.grid.t_steps {
                t.push(vec![
                    self.grid.s(i).into(),
                    self.grid.t(j).into(),
                    self.value(i, j).into(),
                ]);
            }
        }
        t
    }
}

/// Integrate white noise into the sheet: `W(s_i, t_j) = sum_{i' <= i, j' <= j} cell(i', j')`.
pub fn sheet_from_white_noise(noise: WhiteNoiseField) -> SheetField {
    let grid = noise.grid;
    let cols = grid.t_steps + 1;
    let mut v = noise.cells;
    for row in v.chunks_exact_mut(cols) {
        for j in 1..cols {
            row[j] += row[j - 1];
        }
    }
    for i in 1..=grid.s_steps {
        let (prev, cur) = v.split_at_mut(i * cols);
        let prev = &prev[(i - 1) * cols..];
        for (c, p) in cur[..cols].iter_mut().zip(prev) {
            *c += *p;
        }
    }
    SheetField { grid, values: v }
}

/// White noise followed by integration.
pub fn sample_sheet<G: GaussianSource + ?Sized>(grid: &GridSpec, g: &mut G) -> Result<SheetField> {
    Ok(sheet_from_white_noise(sample_white_noise(grid, g)?))
}

/// `d` independent component sheets on the same lattice.
pub fn sample_sheet_d<G: GaussianSource + ?Sized>(grid: &GridSpec, d: usize, g: &mut G) -> Result<Vec<SheetField>> {
    ensure_arg!(d >= 1, "dimension must be at least 1");
    (0..d).map(|_| sample_sheet(grid, g)).collect()
}

/// The path `t -> W(s_i, t)`.
pub fn slice_t(sheet: &SheetField, s_index: usize) -> Result<Path> {
    ensure_arg!(
        s_index <= sheet.grid.s_steps,
        "s index {s_index} out of range 0..={}",
        sheet.grid.s_steps
    );
    Ok(Path::new(
        sheet.grid.t_min,
        sheet.grid.dt(),
        sheet.row(s_index).to_vec(),
    ))
}

/// Sheet rows `t -> W(s_k, t)` at arbitrary increasing first coordinates
/// `s_nodes` (all >= 0) on the uniform `t`-grid of `t_steps` steps over `[0, t_max]`.
///
/// Row `k` is row `k - 1` plus an independent Brownian motion scaled by
/// `sqrt(s_k - s_{k-1})`, which is exact in law.
pub fn sample_rows<G: GaussianSource + ?Sized>(
    s_nodes: &[f64],
    t_max: f64,
    t_steps: usize,
    g: &mut G,
) -> Result<Vec<Vec<f64>>> {
    ensure_arg!(!s_nodes.is_empty(), "need at least one s node");
    ensure_arg!(s_nodes[0] >= 0.0, "s nodes must be nonnegative");
    ensure_arg!(
        s_nodes.windows(2).all(|w| w[0] < w[1]),
        "s nodes must be strictly increasing"
    );
    ensure_arg!(t_max > 0.0 && t_steps >= 1, "invalid t grid");
    let dt = t_max / t_steps as f64;
    let mut rows = Vec::with_capacity(s_nodes.len());
    let mut prev_s = 0.0;
    let mut prev = vec![0.0; t_steps + 1];
    for &s in s_nodes {
        let sd = ((s - prev_s) * dt).sqrt();
        let mut row = prev.clone();
        let mut acc = 0.0;
        for x in row.iter_mut().skip(1) {
            acc += sd * g.normal();
            *x += acc;
        }
        prev_s = s;
        prev = row.clone();
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Seed, ZeroNoise};

    fn unit(steps: usize) -> GridSpec {
        GridSpec::square(1.0, steps).unwrap()
    }

    #[test]
    fn zero_noise_zero_sheet() {
        let sheet = sample_sheet(&unit(8), &mut ZeroNoise).unwrap();
        assert!(sheet.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn single_cell_fills_quadrant() {
        let mut noise = WhiteNoiseField::zeros(unit(4));
        noise.set_cell(1, 1, 2.5);
        let sheet = sheet_from_white_noise(noise);
        for i in 0..=4 {
            for j in 0..=4 {
                let want = if i >= 1 && j >= 1 { 2.5 } else { 0.0 };
                assert_eq!(sheet.value(i, j), want, "({i},{j})");
            }
        }
        let path = slice_t(&sheet, 3).unwrap();
        assert_eq!(path.values, vec![0.0, 2.5, 2.5, 2.5, 2.5]);
    }

    #[test]
    fn deterministic_in_seed() {
        let g = unit(16);
        let a = sample_white_noise(&g, &mut Seed(3).stream(0)).unwrap();
        let b = sample_white_noise(&g, &mut Seed(3).stream(0)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn axes_are_zero_when_anchored() {
        let sheet = sample_sheet(&unit(8), &mut Seed(1).stream(0)).unwrap();
        for k in 0..=8 {
            assert_eq!(sheet.value(0, k), 0.0);
            assert_eq!(sheet.value(k, 0), 0.0);
        }
    }

    #[test]
    fn rectangle_mass_is_exact_increment() {
        let noise = sample_white_noise(
            &GridSpec::new(0.5, 2.0, 1.0, 3.0, 6, 8).unwrap(),
            &mut Seed(8).stream(2),
        )
        .unwrap();
        let sheet = sheet_from_white_noise(noise.clone());
        let m = noise.rect_mass(1, 5, 2, 7);
        let inc = sheet.rect_increment(1, 5, 2, 7);
        assert!((m - inc).abs() < 1e-12);
        // split along s and t: sub-rectangle masses add up
        let parts = noise.rect_mass(1, 3, 2, 4) + noise.rect_mass(3, 5, 2, 4) + noise.rect_mass(1, 5, 4, 7);
        assert!((parts - m).abs() < 1e-12);
    }

    #[test]
    fn slice_out_of_range() {
        let sheet = SheetField::zeros(unit(4));
        assert!(slice_t(&sheet, 5).is_err());
        assert!(slice_t(&sheet, 0).unwrap().values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn dimension_zero_rejected() {
        assert!(sample_sheet_d(&unit(2), 0, &mut ZeroNoise).is_err());
    }

    #[test]
    fn table_is_row_major() {
        let sheet = SheetField::from_fn(GridSpec::square(1.0, 1).unwrap(), |s, t| s + 10.0 * t);
        assert_eq!(sheet.to_table().to_csv(), "s,t,value\n0,0,0\n0,1,10\n1,0,1\n1,1,11\n");
    }
}
