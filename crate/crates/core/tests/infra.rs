use proptest::prelude::*;
use qsheet_core::stats::{
    correlation, covariance_table, ks_distance, line_fit, mean, median, variance, weighted_line_fit,
};
use qsheet_core::table::fmt_g17;
use qsheet_core::{mc_run, run_replicas, Cell, EnsembleConfig, Error, EstimateReport, Seed, Table};

fn draws(seed: Seed, stream: u64, n: usize) -> Vec<f64> {
    let mut g = seed.stream(stream);
    (0..n).map(|_| g.normal()).collect()
}

#[test]
fn neighbouring_streams_are_uncorrelated() {
    let n = 20_000;
    let bound = 4.0 / (n as f64).sqrt();
    let base = draws(Seed(1), 0, n + 3);
    for other in [1u64, 2, 1 << 40] {
        let x = draws(Seed(1), other, n + 3);
        for lag in 0..3 {
            let (r, _) = correlation(&base[..n], &x[lag..lag + n]).unwrap();
            assert!(r.abs() < bound, "stream {other} lag {lag}: {r}");
        }
    }
    for lag in 1..4 {
        let (r, _) = correlation(&base[..n], &base[lag..lag + n]).unwrap();
        assert!(r.abs() < bound, "autocorrelation at lag {lag}: {r}");
    }
    let derived = draws(Seed(1).derive(1), 0, n);
    let (r, _) = correlation(&base[..n], &derived).unwrap();
    assert!(r.abs() < bound);
}

#[test]
fn variates_have_the_right_laws() {
    let n = 20_000;
    let mut g = Seed(2).stream(0);
    let z: Vec<f64> = (0..n).map(|_| g.normal()).collect();
    let u: Vec<f64> = (0..n).map(|_| g.uniform()).collect();
    let e: Vec<f64> = (0..n).map(|_| g.exp1()).collect();
    let m = (n as f64).sqrt();
    assert!(mean(&z).abs() < 4.0 / m);
    assert!((variance(&z) - 1.0).abs() < 4.0 * 2f64.sqrt() / m);
    assert!(u.iter().all(|x| (0.0..1.0).contains(x)));
    assert!((mean(&u) - 0.5).abs() < 4.0 / (12f64.sqrt() * m));
    assert!(e.iter().all(|x| *x >= 0.0));
    assert!((mean(&e) - 1.0).abs() < 4.0 / m);
    assert!((median(&e) - 2f64.ln()).abs() < 0.03);
    let mut filled = vec![0.0; n];
    Seed(2).stream(9).fill_normal(&mut filled, 3.0);
    assert!((variance(&filled) - 9.0).abs() < 4.0 * 9.0 * 2f64.sqrt() / m);
}

#[test]
fn independent_normal_samples_pass_ks() {
    // two-sample KS at the 1% level, so about 1 in 100 pairs should fail
    let trials = 100;
    let n = 2000;
    let crit = 1.63 * (2.0 / n as f64).sqrt();
    let passed = (0..trials)
        .filter(|&k| ks_distance(&draws(Seed(3), 2 * k, n), &draws(Seed(3), 2 * k + 1, n)).unwrap() < crit)
        .count();
    assert!(passed >= 95, "{passed}/{trials}");
    let shifted: Vec<f64> = draws(Seed(3), 999, n).iter().map(|x| x + 0.5).collect();
    assert!(ks_distance(&draws(Seed(3), 998, n), &shifted).unwrap() > crit);
}

#[test]
fn covariance_table_recovers_a_known_pair() {
    // (X, X + Y) with X, Y standard normal: Var = 1, 2 and Cov = 1
    let ens = run_replicas(&EnsembleConfig::new(10_000, Seed(4)), |_, g| {
        let (x, y) = (g.normal(), g.normal());
        Ok(vec![x, x + y])
    })
    .unwrap();
    let t = covariance_table(&ens, &[(0, 0), (1, 1), (0, 1)]).unwrap();
    for (e, want) in t.iter().zip([1.0, 2.0, 1.0]) {
        assert!((e.cov - want).abs() < 4.0 * e.stderr, "{e:?}");
    }
    assert!(covariance_table(&ens, &[(0, 2)]).is_err());
    assert!(covariance_table(&ens[..1], &[(0, 0)]).is_err());
}

#[test]
fn line_fits_recover_exact_lines() {
    let x: Vec<f64> = (0..10).map(f64::from).collect();
    let y: Vec<f64> = x.iter().map(|v| 3.0 - 2.0 * v).collect();
    let f = line_fit(&x, &y).unwrap();
    assert!((f.slope + 2.0).abs() < 1e-12 && (f.intercept - 3.0).abs() < 1e-12);
    assert!(f.slope_stderr < 1e-10);
    let w = weighted_line_fit(&x, &y, &[0.5; 10]).unwrap();
    assert!((w.slope + 2.0).abs() < 1e-12);
}

#[test]
fn replica_failures_report_the_lowest_index() {
    let cfg = EnsembleConfig::new(50, Seed(5)).with_parallelism(2);
    let e = run_replicas(&cfg, |k, _| {
        if k % 7 == 3 {
            Err(Error::Numeric(format!("bad {k}")))
        } else {
            Ok(k)
        }
    })
    .unwrap_err();
    match e {
        Error::Replica { index, .. } => assert_eq!(index, 3),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn estimate_report_intervals() {
    let r = EstimateReport::from_samples(&[1.0, 2.0, 3.0, 4.0]).unwrap();
    assert_eq!(r.mean, 2.5);
    assert!((r.stderr - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
    assert!(r.contains(2.5) && !r.contains(10.0));
    assert!(r.overlaps(&EstimateReport::new(3.5, 0.1, 10)));
    assert!(!r.overlaps(&EstimateReport::new(30.0, 0.1, 10)));
    assert!(EstimateReport::from_samples(&[]).is_err());
    assert!(EstimateReport::from_samples(&[f64::INFINITY]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn results_do_not_depend_on_thread_count(seed in any::<u64>(), threads in 1usize..5) {
        let cfg = EnsembleConfig::new(64, Seed(seed));
        let f = |_: usize, g: &mut qsheet_core::RngStream| Ok(g.normal() * g.uniform());
        let serial = mc_run(&cfg.with_parallelism(1), f).unwrap();
        let parallel = mc_run(&cfg.with_parallelism(threads), f).unwrap();
        prop_assert_eq!(serial.mean.to_bits(), parallel.mean.to_bits());
        prop_assert_eq!(serial.stderr.to_bits(), parallel.stderr.to_bits());
    }

    #[test]
    fn distinct_streams_differ(seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        prop_assume!(a != b);
        prop_assert_ne!(draws(Seed(seed), a, 4), draws(Seed(seed), b, 4));
        prop_assert_eq!(draws(Seed(seed), a, 4), draws(Seed(seed), a, 4));
    }

    #[test]
    fn csv_round_trips_reals_exactly(values in prop::collection::vec(prop::num::f64::NORMAL | prop::num::f64::ZERO, 1..20), ints in prop::collection::vec(any::<i64>(), 1..20)) {
        let mut t = Table::new(&["k", "x", "label"]);
        t.comments.push("probe".into());
        for (k, x) in ints.iter().zip(&values) {
            t.push(vec![Cell::Int(*k), Cell::Real(*x), Cell::Text("a b".into())]);
        }
        let back = Table::from_csv(&t.to_csv()).unwrap();
        prop_assert_eq!(&back.header, &t.header);
        prop_assert_eq!(&back.comments, &t.comments);
        let xs = back.column("x").unwrap();
        for (a, b) in xs.iter().zip(&values) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
        let ks = back.column("k").unwrap();
        for (a, b) in ks.iter().zip(&ints) {
            prop_assert_eq!(*a, *b as f64);
        }
        prop_assert_eq!(back.to_csv(), t.to_csv());
    }

    #[test]
    fn g17_parses_back_to_the_same_double(x in prop::num::f64::ANY) {
        let s = fmt_g17(x);
        if x.is_nan() {
            prop_assert_eq!(s, "nan");
        } else {
            prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
