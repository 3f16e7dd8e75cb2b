use crate::error::{ensure_arg, Error, Result};
use crate::quadrature::integrate;
use crate::stats::line_fit;
use crate::table::Table;

/// Candidate upper function `phi`, evaluated at the large parameter `t > 4`.
#[derive(Debug, Clone, PartialEq)]
pub enum UpperFunction {
    /// `phi_alpha(t) = sqrt(2 ln ln t + alpha ln ln ln t)`
    PhiAlpha(f64),
    /// Increasing table `(t_i, phi_i)`, linearly interpolated in `v = ln ln t`.
    Tabulated { t: Vec<f64>, phi: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralTest {
    /// `int phi e^{-phi^2/2} dt/t`
    Erdos,
    /// `int phi^3 e^{-phi^2/2} dt/t`
    Mountford,
}

impl IntegralTest {
    pub fn power(self) -> i32 {
        match self {
            IntegralTest::Erdos => 1,
            IntegralTest::Mountford => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IntegralTest::Erdos => "erdos",
            IntegralTest::Mountford => "mountford",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converges,
    Diverges,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Converges => "converges",
            Verdict::Diverges => "diverges",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralTestResult {
    pub which: IntegralTest,
    pub verdict: Verdict,
    /// Quadrature of the integral over `[4, cutoff]`.
    pub partial_value: f64,
    /// Power `p` in the tail comparison `integrand ~ C v^p dv`, `v = ln ln t`.
    pub tail_exponent: f64,
    pub tail_bound_used: String,
    pub cutoff: f64,
}

/// Result rows `alpha,test,verdict,partial_value`.
pub fn integral_table(rows: &[(f64, IntegralTestResult)]) -> Table {
    let mut t = Table::new(&["alpha", "test", "verdict", "partial_value"]);
    for (a, r) in rows {
        t.push(vec![
            (*a).into(),
            r.which.name().into(),
            r.verdict.name().into(),
            r.partial_value.into(),
        ]);
    }
    t
}

pub fn upper_class_test(phi: &UpperFunction, which: IntegralTest) -> Result<IntegralTestResult> {
    upper_class_test_with_cutoff(phi, which, 1e12)
}

/// Integral test for `phi`, with the quadrature carried out in `v = ln ln t`
/// where `dt/t = e^v dv`. The verdict comes from the tail exponent alone.
pub fn upper_class_test_with_cutoff(
    phi: &UpperFunction,
    which: IntegralTest,
    cutoff: f64,
) -> Result<IntegralTestResult> {
    ensure_arg!(cutoff > 16.0 && cutoff.is_finite(), "cutoff must exceed 16");
    let k = which.power();
    let v_start = 4f64.ln().ln();
    let v_end = cutoff.ln().ln();
    match phi {
        UpperFunction::PhiAlpha(alpha) => {
            let alpha = *alpha;
            ensure_arg!(alpha > 0.0 && alpha.is_finite(), "alpha must be positive");
            // phi^2 = 2v + alpha ln v is increasing in v; integrate where it is nonnegative
            let phi2 = |v: f64| 2.0 * v + alpha * v.ln();
            let v0 = if phi2(v_start) >= 0.0 {
                v_start
            } else {
                let (mut lo, mut hi) = (v_start, 1.0);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if phi2(mid) < 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                hi
            };
            // phi^k e^{-phi^2/2} e^v = phi^k v^{-alpha/2}
            let q = integrate(
                |v| phi2(v).max(0.0).powf(0.5 * k as f64) * v.powf(-0.5 * alpha),
                v0,
                v_end,
                1e-10,
                1e-300,
            )?;
            let p = 0.5 * (k as f64 - alpha);
            Ok(IntegralTestResult {
                which,
                verdict: if p < -1.0 {
                    Verdict::Converges
                } else {
                    Verdict::Diverges
                },
                partial_value: q.value,
                tail_exponent: p,
                tail_bound_used: format!(
                    "(2v)^{k}/2 v^-alpha/2 <= integrand <= (2v + alpha v)^{k}/2 v^-alpha/2 for v >= 1, exponent {p}"
                ),
                cutoff,
            })
        }
        UpperFunction::Tabulated { t, phi } => {
            ensure_arg!(
                t.len() == phi.len() && t.len() >= 4,
                "table needs at least 4 matched points"
            );
            ensure_arg!(t.windows(2).all(|w| w[0] < w[1]), "table times must increase");
            ensure_arg!(t[0] > 4.0 - 1e-12, "table must start at t >= 4");
            ensure_arg!(phi.windows(2).all(|w| w[0] <= w[1]), "phi is not monotone on the table");
            ensure_arg!(phi.iter().all(|p| *p >= 0.0), "phi must be nonnegative");
            let v: Vec<f64> = t.iter().map(|x| x.ln().ln()).collect();
            let interp = |x: f64| -> f64 {
                let j = v.partition_point(|vi| *vi <= x).clamp(1, v.len() - 1);
                let w = (x - v[j - 1]) / (v[j] - v[j - 1]);
                phi[j - 1] + w * (phi[j] - phi[j - 1])
            };
            let g = |x: f64| {
                let p = interp(x);
                p.powi(k) * (x - 0.5 * p * p).exp()
            };
            let lo = v[0].max(v_start);
            let hi = v[v.len() - 1].min(v_end);
            let partial = if hi > lo {
                integrate(g, lo, hi, 1e-10, 1e-300)?.value
            } else {
                0.0
            };
            let tail: Vec<usize> = (v.len() / 2..v.len()).filter(|&i| v[i] > 0.0).collect();
            if tail.len() < 2 {
                return Err(Error::Numeric("too few tail points to fit an exponent".into()));
            }
            let xs: Vec<f64> = tail.iter().map(|&i| v[i].ln()).collect();
            let ys: Vec<f64> = tail.iter().map(|&i| g(v[i]).ln()).collect();
            let p = line_fit(&xs, &ys)?.slope;
            Ok(IntegralTestResult {
                which,
                verdict: if p < -1.0 {
                    Verdict::Converges
                } else {
                    Verdict::Diverges
                },
                partial_value: partial,
                tail_exponent: p,
                tail_bound_used: format!("log-log fit of the tabulated integrand over its upper half, exponent {p:.3}"),
                cutoff,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdicts(alpha: f64) -> (Verdict, Verdict) {
        let f = UpperFunction::PhiAlpha(alpha);
        (
            upper_class_test(&f, IntegralTest::Erdos).unwrap().verdict,
            upper_class_test(&f, IntegralTest::Mountford).unwrap().verdict,
        )
    }

    #[test]
    fn verdict_table() {
        use Verdict::*;
        assert_eq!(verdicts(2.0), (Diverges, Diverges));
        assert_eq!(verdicts(4.0), (Converges, Diverges));
        assert_eq!(verdicts(6.0), (Converges, Converges));
        assert_eq!(verdicts(5.0), (Converges, Diverges));
        assert_eq!(verdicts(3.0), (Diverges, Diverges));
    }

    #[test]
    fn cutoff_does_not_change_verdict() {
        for a in [1.0, 2.5, 4.0, 5.5, 8.0] {
            for w in [IntegralTest::Erdos, IntegralTest::Mountford] {
                let f = UpperFunction::PhiAlpha(a);
                let r12 = upper_class_test_with_cutoff(&f, w, 1e12).unwrap();
                let r14 = upper_class_test_with_cutoff(&f, w, 1e14).unwrap();
                assert_eq!(r12.verdict, r14.verdict);
                assert!(r14.partial_value >= r12.partial_value);
            }
        }
    }

    #[test]
    fn partial_value_matches_direct_t_integral() {
        // alpha = 0.5 keeps phi real on all of [4, inf)
        let a = 0.5;
        let r = upper_class_test(&UpperFunction::PhiAlpha(a), IntegralTest::Erdos).unwrap();
        let f = |u: f64| {
            // u = ln t, dt/t = du
            let p2 = 2.0 * u.ln() + a * u.ln().ln();
            p2.sqrt() * (-0.5 * p2).exp()
        };
        let q = integrate(f, 4f64.ln(), 1e12f64.ln(), 1e-11, 0.0).unwrap();
        assert!((q.value - r.partial_value).abs() < 1e-8 * q.value);
    }

    #[test]
    fn tabulated_phi_alpha_agrees() {
        let a = 6.0;
        let t: Vec<f64> = (0..=40).map(|k| (1.5f64 + 0.12 * k as f64).exp().exp()).collect();
        let phi: Vec<f64> = t
            .iter()
            .map(|x: &f64| (2.0 * x.ln().ln() + a * x.ln().ln().ln()).sqrt())
            .collect();
        let r = upper_class_test(&UpperFunction::Tabulated { t, phi }, IntegralTest::Mountford).unwrap();
        assert_eq!(r.verdict, Verdict::Converges);
        // the local log-log slope approaches -3/2 from below
        assert!(r.tail_exponent < -1.5 && r.tail_exponent > -2.5, "{}", r.tail_exponent);
    }

    #[test]
    fn non_monotone_table_rejected() {
        let t = vec![5.0, 10.0, 20.0, 40.0];
        let phi = vec![1.0, 2.0, 1.5, 3.0];
        assert!(upper_class_test(&UpperFunction::Tabulated { t, phi }, IntegralTest::Erdos).is_err());
    }
}
