use proptest::prelude::*;
use qsheet_core::geometry::{
    boundary_nodes, hit_probabilities, hit_probability, kendall_j, kendall_limit, range_volume, sojourn_fourier_mc,
    sojourn_integrable, sojourn_q, sojourn_second_moment, tau_squared, HitQuery,
};
use qsheet_core::{EnsembleConfig, Seed};

// E|sigma_hat(1)|^2 for d = 1 and S = 10: 10^8-sample Monte Carlo of the
// four-fold integral against the truncated exponential density.
const SECOND_MOMENT_XI1: (f64, f64) = (0.6054552, 0.0000278);

// a^-1 e^{2/a} E1(2/a) at a = |xi|^2 / 2, from a library exponential integral.
const FACTOR: [(f64, f64); 3] = [
    (1.0, 0.4126912998021116),
    (10.0, 0.055813762719766805),
    (100.0, 0.001450025955587287),
];

// Hit probability of [-0.05, 0.05] by a one-dimensional sheet on [1, 2]^2,
// nodes of a 512 x 512 lattice: numpy corner-plus-edges construction, 1000 replicas.
const HIT_D1_GRID512: (f64, f64) = (0.829, 0.0119);

fn ensemble(replicas: usize, seed: u64) -> EnsembleConfig {
    EnsembleConfig::new(replicas, Seed(seed))
}

#[test]
fn one_dimensional_sheet_hits_the_origin() {
    let q = HitQuery::origin(1, 0.05);
    let p = hit_probability(&q, 512, &ensemble(2000, 1)).unwrap();
    let (want, se) = HIT_D1_GRID512;
    assert!(
        (p.mean - want).abs() < 3.0 * (p.stderr.powi(2) + se * se).sqrt(),
        "{p:?}"
    );
    // a one-dimensional sheet hits points, so the estimate stays well away from 0
    assert!(p.ci95.0 > 0.75);
}

#[test]
fn hitting_decays_with_the_radius_in_high_dimension() {
    let q = HitQuery::origin(5, 0.4);
    let eps = [0.4, 0.3, 0.2];
    let p = hit_probabilities(&q, &eps, 64, &ensemble(4000, 2)).unwrap();
    assert!(p.windows(2).all(|w| w[1].mean < w[0].mean), "{p:?}");
    assert!(p[0].mean < 0.5);
    let far = HitQuery::new(vec![50.0; 5], 0.4);
    assert_eq!(hit_probability(&far, 64, &ensemble(200, 2)).unwrap().mean, 0.0);
}

#[test]
fn range_volume_is_stable_below_four_dimensions_and_collapses_above() {
    let cfg = ensemble(20, 3);
    let coarse = range_volume(2, 128, 0.1, &cfg).unwrap();
    let fine = range_volume(2, 128, 0.05, &cfg).unwrap();
    let ratio = fine.mean / coarse.mean;
    assert!(ratio > 0.75 && ratio < 1.05, "d = 2 ratio {ratio}");
    let coarse = range_volume(5, 128, 0.4, &cfg).unwrap();
    let fine = range_volume(5, 128, 0.1, &cfg).unwrap();
    assert!(coarse.mean >= 4.0 * fine.mean, "{} vs {}", coarse.mean, fine.mean);
}

#[test]
fn sojourn_density_factor_matches_the_exponential_integral() {
    assert!((sojourn_q(0.0).unwrap() - 0.25).abs() < 1e-12);
    for (xi, f) in FACTOR {
        let q = sojourn_q(xi).unwrap();
        assert!((q - f * f).abs() <= 1e-8 * f * f, "xi {xi}: {q} vs {}", f * f);
    }
    let tail: Vec<bool> = (1..=8).map(sojourn_integrable).collect();
    assert_eq!(tail, [true, true, true, false, false, false, false, false]);
}

#[test]
fn sojourn_second_moment_quadrature_matches_oracle() {
    let (want, se) = SECOND_MOMENT_XI1;
    let q = sojourn_second_moment(1.0, 10.0, 48).unwrap();
    assert!((q - want).abs() < 4.0 * se, "{q}");
    // xi = 0 gives (1 - e^{-S})^4
    let z = sojourn_second_moment(0.0, 10.0, 24).unwrap();
    assert!((z - (-(-10.0f64).exp_m1()).powi(4)).abs() < 1e-10, "{z}");
}

#[test]
fn sojourn_monte_carlo_matches_quadrature() {
    let cfg = ensemble(2000, 4);
    let mc = sojourn_fourier_mc(&[1.0], 10.0, 200, &cfg).unwrap();
    let quad = sojourn_second_moment(1.0, 10.0, 48).unwrap();
    assert!(mc.contains(quad), "{mc:?} vs {quad}");
    assert!(mc.contains(SECOND_MOMENT_XI1.0));
    let far = sojourn_fourier_mc(&[4.0], 10.0, 200, &cfg).unwrap();
    assert!(far.mean < mc.mean);
}

#[test]
fn kendall_probabilities_are_proper() {
    let cfg = ensemble(4000, 5);
    let j = kendall_j(0.1, 32, 128, &cfg).unwrap();
    assert!(j.mean > 0.0 && j.mean < 1.0, "{j:?}");
    let lim = kendall_limit(1024, false, &cfg).unwrap();
    assert!(lim.ci95.0 > 0.0 && lim.ci95.1 < 1.0, "{lim:?}");
    // the centre of a single motion can never exceed its own maximum
    assert_eq!(kendall_limit(1024, true, &cfg).unwrap().mean, 0.0);
}

#[test]
fn kendall_event_shrinks_with_more_boundary_points() {
    // same seed, so the lattice paths coincide and the events are nested
    let cfg = ensemble(2000, 6);
    let p: Vec<f64> = [4, 16, 64]
        .iter()
        .map(|&b| kendall_j(0.1, b, 128, &cfg).unwrap().mean)
        .collect();
    assert!(p.windows(2).all(|w| w[1] <= w[0]), "{p:?}");
    assert_eq!(boundary_nodes(8, 2).unwrap().len(), 8);
    assert!(boundary_nodes(8, 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tau_squared_is_a_symmetric_difference(s1 in 0.0f64..5.0, s2 in 0.0f64..5.0, t1 in 0.0f64..5.0, t2 in 0.0f64..5.0) {
        let tau = tau_squared((s1, s2), (t1, t2));
        let lower = (s1 - t1).abs() * s2.min(t2) + (s2 - t2).abs() * s1.min(t1);
        prop_assert!(tau >= lower - 1e-12);
        prop_assert!(tau <= s1 * s2 + t1 * t2 + 1e-12);
        prop_assert!((tau - tau_squared((t1, t2), (s1, s2))).abs() < 1e-12);
        prop_assert_eq!(tau_squared((s1, s2), (s1, s2)), 0.0);
    }

    #[test]
    fn hitting_is_monotone_in_the_radius(seed in 0u64..1000, a in 0.05f64..0.5, b in 0.05f64..0.5) {
        let q = HitQuery::origin(3, a.max(b));
        let p = hit_probabilities(&q, &[a.min(b), a.max(b)], 64, &ensemble(20, seed)).unwrap();
        prop_assert!(p[0].mean <= p[1].mean);
    }
}
