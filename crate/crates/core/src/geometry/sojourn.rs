use crate::ensemble::{run_replicas, EnsembleConfig, EstimateReport};
use crate::error::{ensure_arg, Result};
use crate::quadrature::{gauss_legendre_on, integrate};
use crate::sheet::{sample_sheet, GridSpec};
use crate::table::Table;

/// `int_0^inf e^{-2s} / (1 + a s) ds`, computed as `int_0^1 u / (1 - a ln u) du`.
fn sojourn_factor(a: f64) -> Result<f64> {
    let q = integrate(
        |u: f64| if u <= 0.0 { 0.0 } else { u / (1.0 - a * u.ln()) },
        0.0,
        1.0,
        1e-11,
        0.0,
    )?;
    Ok(q.value)
}

/// `Q(xi) = int int e^{-2(s1+s2)} (1 + |xi|^2 s1/2)^{-1} (1 + |xi|^2 s2/2)^{-1} ds1 ds2`.
///
/// The integrand is a product, so the double integral is the square of one
/// adaptive quadrature.
pub fn sojourn_q(xi: f64) -> Result<f64> {
    ensure_arg!(xi >= 0.0 && xi.is_finite(), "|xi| must be finite and nonnegative");
    let f = sojourn_factor(0.5 * xi * xi)?;
    Ok(f * f)
}

/// Whether `int_{R^d} Q(xi) d xi` is finite: `Q` decays like `|xi|^-4` up to
/// logarithms, so the radial integral `int r^{d-1-4} dr` converges iff `d < 4`.
pub fn sojourn_integrable(d: usize) -> bool {
    (d as i64) - 1 - 4 < -1
}

#[derive(Debug, Clone, PartialEq)]
pub struct SojournSpectrum {
    pub d: usize,
    pub xi: Vec<f64>,
    pub q: Vec<f64>,
    pub mc: Option<Vec<EstimateReport>>,
    pub integrable: bool,
}

impl SojournSpectrum {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["d", "xi", "Q", "mc_estimate", "mc_stderr"]);
        for (k, (x, q)) in self.xi.iter().zip(&self.q).enumerate() {
            let (m, s) = match &self.mc {
                Some(v) => (v[k].mean.into(), v[k].stderr.into()),
                None => ("".into(), "".into()),
            };
            t.push(vec![self.d.into(), (*x).into(), (*q).into(), m, s]);
        }
        t
    }
}

pub fn sojourn_spectrum(d: usize, xi: &[f64]) -> Result<SojournSpectrum> {
    ensure_arg!(d >= 1, "dimension must be at least 1");
    Ok(SojournSpectrum {
        d,
        xi: xi.to_vec(),
        q: xi.iter().map(|x| sojourn_q(*x)).collect::<Result<_>>()?,
        mc: None,
        integrable: sojourn_integrable(d),
    })
}

/// `Var[W(s1, s2) - W(t1, t2)]`, the area of the symmetric difference of
/// `[0, s1] x [0, s2]` and `[0, t1] x [0, t2]`.
pub fn tau_squared(s: (f64, f64), t: (f64, f64)) -> f64 {
    s.0 * s.1 + t.0 * t.1 - 2.0 * s.0.min(t.0) * s.1.min(t.1)
}

/// `E |sigma_hat(xi)|^2` with both time integrals truncated to `[0, S]^2`:
///
/// `int_{[0,S]^4} e^{-s1-s2-t1-t2} exp(-|xi|^2 tau^2(s, t) / 2)`.
///
/// The domain is split along `s1 = t1` and `s2 = t2`, where `tau^2` has
/// kinks, and each piece is mapped to a cube for a tensor Gauss-Legendre rule
/// of `n` points per axis.
pub fn sojourn_second_moment(xi: f64, s_max: f64, n: usize) -> Result<f64> {
    ensure_arg!(
        xi >= 0.0 && s_max > 0.0 && n >= 2,
        "invalid sojourn quadrature arguments"
    );
    let k = 0.5 * xi * xi;
    let (x, w) = gauss_legendre_on(n, 0.0, 1.0);
    // (lower, upper, weight) triples for the ordered pair lower <= upper on [0, S]
    let mut pairs = Vec::with_capacity(n * n);
    for (a, wa) in x.iter().zip(&w) {
        let lo = s_max * a;
        let span = s_max - lo;
        for (b, wb) in x.iter().zip(&w) {
            let hi = lo + span * b;
            pairs.push((lo, hi, wa * wb * s_max * span * (-lo - hi).exp()));
        }
    }
    // s1 <= t1 in the first coordinate; the second coordinate runs over both orders.
    let mut total = 0.0;
    for &(s1, t1, w1) in &pairs {
        let mut inner = 0.0;
        for &(lo, hi, w2) in &pairs {
            // s2 = lo <= t2 = hi
            let same = tau_squared((s1, lo), (t1, hi));
            // s2 = hi >= t2 = lo
            let cross = tau_squared((s1, hi), (t1, lo));
            inner += w2 * ((-k * same).exp() + (-k * cross).exp());
        }
        total += w1 * inner;
    }
    // the region t1 <= s1 is the mirror image under swapping s and t
    Ok(2.0 * total)
}

/// Weights of `int_0^S e^{-s} f(s) ds` with `f` linearly interpolated
/// between the `steps + 1` nodes; they sum to `1 - e^{-S}`.
pub(crate) fn exp_trapezoid_weights(s_max: f64, steps: usize) -> Vec<f64> {
    let h = s_max / steps as f64;
    let inner = 1.0 - (1.0 + h) * (-h).exp();
    let right = inner / h;
    let left = -(-h).exp_m1() - right;
    let mut w = vec![0.0; steps + 1];
    for i in 0..steps {
        let base = (-(i as f64) * h).exp();
        w[i] += base * left;
        w[i + 1] += base * right;
    }
    w
}

/// Monte Carlo of `E |sigma_hat(xi)|^2` where
/// `sigma_hat(xi) = int int_{[0,S]^2} e^{-s-t} e^{i xi . W(s,t)} ds dt`
/// is evaluated per replica by the exponentially weighted trapezoid rule.
pub fn sojourn_fourier_mc(xi: &[f64], s_max: f64, grid_steps: usize, cfg: &EnsembleConfig) -> Result<EstimateReport> {
    let d = xi.len();
    ensure_arg!(d >= 1, "xi needs at least one coordinate");
    ensure_arg!(s_max > 0.0 && grid_steps >= 2, "invalid sojourn grid");
    let grid = GridSpec::square(s_max, grid_steps)?;
    let w = exp_trapezoid_weights(s_max, grid_steps);
    let zero = xi.iter().all(|x| *x == 0.0);
    let v = run_replicas(cfg, |_, rng| {
        let mut phase = vec![0.0f64; grid.node_count()];
        if !zero {
            for &x in xi {
                let sheet = sample_sheet(&grid, rng)?;
                for (p, v) in phase.iter_mut().zip(&sheet.values) {
                    *p += x * v;
                }
            }
        }
        let (mut re, mut im) = (0.0, 0.0);
        let cols = grid_steps + 1;
        for (i, wi) in w.iter().enumerate() {
            let (mut rr, mut ri) = (0.0, 0.0);
            for (j, wj) in w.iter().enumerate() {
                let (s, c) = phase[i * cols + j].sin_cos();
                rr += wj * c;
                ri += wj * s;
            }
            re += wi * rr;
            im += wi * ri;
        }
        Ok(re * re + im * im)
    })?;
    let mut rep = EstimateReport::from_samples(&v)?;
    let lost = (-s_max).exp();
    if lost >= 1e-4 {
        rep = rep.with_warning(format!("truncation at S = {s_max} leaves e^-S = {lost:.3e} >= 1e-4"));
    }
    Ok(rep)
}
