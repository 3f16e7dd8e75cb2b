use std::collections::VecDeque;

/// Maxima and minima of `x[i..=i+w]` for `i = 0..x.len()-w`.
pub(crate) fn window_extrema(x: &[f64], w: usize) -> (Vec<f64>, Vec<f64>) {
    if x.len() <= w {
        return (Vec::new(), Vec::new());
    }
    let out_len = x.len() - w;
    let mut maxs = Vec::with_capacity(out_len);
    let mut mins = Vec::with_capacity(out_len);
    let mut hi: VecDeque<usize> = VecDeque::new();
    let mut lo: VecDeque<usize> = VecDeque::new();
    for (j, &v) in x.iter().enumerate() {
        while hi.back().is_some_and(|&k| x[k] <= v) {
            hi.pop_back();
        }
        hi.push_back(j);
        while lo.back().is_some_and(|&k| x[k] >= v) {
            lo.pop_back();
        }
        lo.push_back(j);
        if j >= w {
            let start = j - w;
            while hi.front().is_some_and(|&k| k < start) {
                hi.pop_front();
            }
            while lo.front().is_some_and(|&k| k < start) {
                lo.pop_front();
            }
            maxs.push(x[*hi.front().expect("window nonempty")]);
            mins.push(x[*lo.front().expect("window nonempty")]);
        }
    }
    (maxs, mins)
}

/// Largest oscillation `max - min` over all windows of `w + 1` consecutive nodes.
pub(crate) fn max_oscillation(x: &[f64], w: usize) -> f64 {
    let (hi, lo) = window_extrema(x, w);
    hi.iter().zip(&lo).fold(0.0, |m, (a, b)| m.max(a - b))
}

/// For each start `i <= last_start`, `max_{i <= j <= i+w} |x_j - x_i|`; returns their minimum.
pub(crate) fn min_forward_excursion(x: &[f64], w: usize, last_start: usize) -> f64 {
    let (hi, lo) = window_extrema(x, w);
    let n = hi.len().min(last_start + 1);
    (0..n)
        .map(|i| (hi[i] - x[i]).max(x[i] - lo[i]))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(x: &[f64], w: usize) -> (Vec<f64>, Vec<f64>) {
        (0..x.len().saturating_sub(w))
            .map(|i| {
                let s = &x[i..=i + w];
                (
                    s.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                    s.iter().copied().fold(f64::INFINITY, f64::min),
                )
            })
            .unzip()
    }

    #[test]
    fn small_cases() {
        let x = [0.0, 3.0, -1.0, 2.0, 2.0];
        assert_eq!(
            window_extrema(&x, 1),
            (vec![3.0, 3.0, 2.0, 2.0], vec![0.0, -1.0, -1.0, 2.0])
        );
        assert_eq!(max_oscillation(&x, 2), 4.0);
        assert_eq!(min_forward_excursion(&x, 1, 3), 0.0);
        assert_eq!(window_extrema(&x, 5).0.len(), 0);
    }

    proptest! {
        #[test]
        fn matches_brute_force(x in prop::collection::vec(-10.0f64..10.0, 1..60), w in 0usize..8) {
            prop_assert_eq!(window_extrema(&x, w), brute(&x, w));
        }
    }
}
