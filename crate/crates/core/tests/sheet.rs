use proptest::prelude::*;
use qsheet_core::sheet::{
    sample_corner, sample_multiscale, sample_sheet, sample_sheet_d, sample_white_noise, slice_t, GridSpec,
};
use qsheet_core::stats::{covariance_table, ks_distance, variance};
use qsheet_core::{run_replicas, EnsembleConfig, Seed};

fn ensemble(replicas: usize, seed: u64) -> EnsembleConfig {
    EnsembleConfig::new(replicas, Seed(seed))
}

/// Standard error of a sample variance for Gaussian data with variance `v`.
fn var_se(v: f64, n: usize) -> f64 {
    v * (2.0 / (n as f64 - 1.0)).sqrt()
}

#[test]
fn white_noise_cell_variance_is_area() {
    let grid = GridSpec::square(1.0, 64).unwrap();
    let n = 10_000;
    let cells = [(1, 1), (17, 40), (64, 64), (32, 5)];
    let samples = run_replicas(&ensemble(n, 1), |_, rng| {
        let w = sample_white_noise(&grid, rng)?;
        let mut v: Vec<f64> = cells.iter().map(|&(i, j)| w.cell(i, j)).collect();
        v.push(w.rect_mass(0, 64, 0, 64));
        Ok(v)
    })
    .unwrap();
    let area = 1.0 / 4096.0;
    for k in 0..cells.len() {
        let col: Vec<f64> = samples.iter().map(|r| r[k]).collect();
        assert!(
            (variance(&col) - area).abs() < 4.0 * var_se(area, n),
            "cell {:?}",
            cells[k]
        );
    }
    let total: Vec<f64> = samples.iter().map(|r| r[cells.len()]).collect();
    assert!((variance(&total) - 1.0).abs() < 4.0 * var_se(1.0, n));
}

#[test]
fn sheet_covariance_is_product_of_minima() {
    let grid = GridSpec::square(1.0, 8).unwrap();
    let samples = run_replicas(&ensemble(10_000, 2), |_, rng| {
        let w = sample_sheet(&grid, rng)?;
        Ok(vec![w.value(8, 8), w.value(4, 8), w.value(8, 4), w.value(2, 6)])
    })
    .unwrap();
    // (probe, exact covariance)
    let expect = [
        ((0, 0), 1.0),
        ((1, 2), 0.25),
        ((0, 3), 0.25 * 0.75),
        ((1, 3), 0.25 * 0.75),
        ((2, 3), 0.25 * 0.5),
    ];
    let probes: Vec<(usize, usize)> = expect.iter().map(|e| e.0).collect();
    for (entry, (_, want)) in covariance_table(&samples, &probes).unwrap().iter().zip(expect) {
        assert!((entry.cov - want).abs() < 4.0 * entry.stderr, "{entry:?} vs {want}");
    }
}

#[test]
fn rectangle_increment_variance_is_area() {
    let grid = GridSpec::new(0.5, 2.5, 1.0, 3.0, 8, 8).unwrap();
    let n = 8000;
    let v = run_replicas(&ensemble(n, 3), |_, rng| {
        Ok(sample_sheet(&grid, rng)?.rect_increment(2, 6, 1, 4))
    })
    .unwrap();
    // [1.0, 2.0] x [1.25, 2.0]
    let area = 1.0 * 0.75;
    assert!((variance(&v) - area).abs() < 4.0 * var_se(area, n));
}

#[test]
fn offset_grid_includes_the_corner_mass() {
    let grid = GridSpec::new(1.0, 2.0, 1.0, 2.0, 4, 4).unwrap();
    let n = 8000;
    let v = run_replicas(&ensemble(n, 4), |_, rng| Ok(sample_sheet(&grid, rng)?.value(0, 0))).unwrap();
    assert!((variance(&v) - 1.0).abs() < 4.0 * var_se(1.0, n));
}

#[test]
fn components_are_independent() {
    let grid = GridSpec::new(1.0, 2.0, 1.0, 2.0, 4, 4).unwrap();
    let samples = run_replicas(&ensemble(8000, 5), |_, rng| {
        let w = sample_sheet_d(&grid, 5, rng)?;
        Ok(w.iter().map(|c| c.value(0, 0)).collect::<Vec<f64>>())
    })
    .unwrap();
    let probes = [(0, 0), (4, 4), (0, 1), (2, 4)];
    let t = covariance_table(&samples, &probes).unwrap();
    for e in &t {
        let want = if e.probe.0 == e.probe.1 { 1.0 } else { 0.0 };
        assert!((e.cov - want).abs() < 4.0 * e.stderr, "{e:?}");
    }
}

#[test]
fn slice_is_brownian_motion_in_t() {
    let grid = GridSpec::square(1.0, 16).unwrap();
    let n = 8000;
    let v = run_replicas(&ensemble(n, 6), |_, rng| {
        let p = slice_t(&sample_sheet(&grid, rng)?, 16)?;
        Ok((p.at(1.0), p.at(0.25)))
    })
    .unwrap();
    let end: Vec<f64> = v.iter().map(|p| p.0).collect();
    let quarter: Vec<f64> = v.iter().map(|p| p.1).collect();
    assert!((variance(&end) - 1.0).abs() < 4.0 * var_se(1.0, n));
    assert!((variance(&quarter) - 0.25).abs() < 4.0 * var_se(0.25, n));
}

#[test]
fn scaling_in_s_matches_in_law() {
    // W(4, 1) / 2 has the law of W(1, 1)
    let n = 5000;
    let grid = GridSpec::square(4.0, 4).unwrap();
    let v = run_replicas(&ensemble(n, 7), |_, rng| {
        let w = sample_sheet(&grid, rng)?;
        Ok((w.value(1, 1), w.value(4, 1) / 2.0))
    })
    .unwrap();
    let a: Vec<f64> = v.iter().map(|p| p.0).collect();
    let b: Vec<f64> = v[n / 2..].iter().map(|p| p.1).collect();
    // two-sample KS critical value at the 0.1% level
    let crit = 1.95 * ((a.len() + b.len()) as f64 / (a.len() * b.len()) as f64).sqrt();
    assert!(ks_distance(&a, &b).unwrap() < crit);
}

#[test]
fn multiscale_levels_have_sheet_covariance() {
    let theta = 2.0;
    let samples = run_replicas(&ensemble(10_000, 8), |_, rng| {
        let ms = sample_multiscale(theta, 3, 20, 4, rng)?;
        let e = ms.s_grid.len() - 1;
        Ok(vec![
            ms.level(3)[e] / (ms.t_level(3)).sqrt(),
            ms.level(20)[0] / (ms.t_level(20)).sqrt(),
            ms.level(5)[e],
            ms.level(8)[e],
        ])
    })
    .unwrap();
    let e = std::f64::consts::E;
    let t = covariance_table(&samples, &[(0, 0), (1, 1), (2, 3)]).unwrap();
    assert!((t[0].cov - e).abs() < 4.0 * t[0].stderr);
    assert!((t[1].cov - 1.0).abs() < 4.0 * t[1].stderr);
    assert!((t[2].cov - e * theta.powi(-8)).abs() < 4.0 * t[2].stderr, "{:?}", t[2]);
}

#[test]
fn multiscale_reaches_deep_levels() {
    let n = 10_000;
    let v = run_replicas(&ensemble(n, 9), |_, rng| {
        let ms = sample_multiscale(2.0, 18, 20, 4, rng)?;
        Ok(ms.level(20)[0])
    })
    .unwrap();
    let want = 2f64.powi(-20);
    assert!((variance(&v) - want).abs() < 4.0 * var_se(want, n));
    assert!(sample_multiscale(2.0, 0, 2000, 4, &mut Seed(0).stream(0)).is_err());
}

#[test]
fn corner_decomposition_reconstructs_the_sheet() {
    // r = 1/2 and 8 steps across [0, 2]: node k is u = k/4, i.e. s = 1/2 + k/8.
    let samples = run_replicas(&ensemble(10_000, 10), |_, rng| {
        let c = sample_corner(0.5, 8, rng)?;
        Ok(vec![
            c.reconstruct(4, 4),
            c.reconstruct(2, 2),
            c.reconstruct(4, 0),
            c.reconstruct(8, 8),
            c.x.values[4],
            c.z.value(4, 4),
        ])
    })
    .unwrap();
    let expect = [
        ((0, 0), 1.0),
        ((1, 1), 0.5625),
        ((0, 1), 0.5625),
        ((2, 2), 0.5),
        ((0, 2), 0.5),
        ((3, 3), 2.25),
        ((4, 5), 0.0),
    ];
    let probes: Vec<(usize, usize)> = expect.iter().map(|e| e.0).collect();
    for (entry, (_, want)) in covariance_table(&samples, &probes).unwrap().iter().zip(expect) {
        assert!((entry.cov - want).abs() < 4.0 * entry.stderr, "{entry:?} vs {want}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn increments_are_additive(seed in any::<u64>(), a in 0usize..4, b in 4usize..8, c in 8usize..=12, j0 in 0usize..5, j1 in 5usize..=10) {
        let grid = GridSpec::new(0.0, 3.0, 0.0, 2.0, 12, 10).unwrap();
        let w = sample_sheet(&grid, &mut Seed(seed).stream(0)).unwrap();
        let whole = w.rect_increment(a, c, j0, j1);
        let parts = w.rect_increment(a, b, j0, j1) + w.rect_increment(b, c, j0, j1);
        prop_assert!((whole - parts).abs() <= 1e-12 * (1.0 + whole.abs()));
    }

    #[test]
    fn increments_match_white_noise_mass(seed in any::<u64>(), i0 in 0usize..6, i1 in 6usize..=12, j0 in 0usize..5, j1 in 5usize..=10) {
        let grid = GridSpec::new(0.5, 3.0, 0.25, 2.0, 12, 10).unwrap();
        let noise = sample_white_noise(&grid, &mut Seed(seed).stream(3)).unwrap();
        let sheet = qsheet_core::sheet::sheet_from_white_noise(noise.clone());
        let m = noise.rect_mass(i0, i1, j0, j1);
        prop_assert!((sheet.rect_increment(i0, i1, j0, j1) - m).abs() <= 1e-12 * (1.0 + m.abs()));
    }

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>(), stream in 0u64..1000) {
        let grid = GridSpec::square(1.0, 6).unwrap();
        let a = sample_sheet(&grid, &mut Seed(seed).stream(stream)).unwrap();
        let b = sample_sheet(&grid, &mut Seed(seed).stream(stream)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn anchored_axes_are_zero(seed in any::<u64>(), side in 0.1f64..5.0, steps in 1usize..12) {
        let w = sample_sheet(&GridSpec::square(side, steps).unwrap(), &mut Seed(seed).stream(0)).unwrap();
        for k in 0..=steps {
            prop_assert_eq!(w.value(0, k), 0.0);
            prop_assert_eq!(w.value(k, 0), 0.0);
        }
    }
}
