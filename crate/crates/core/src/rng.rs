//! Seeded, splittable random streams.
//!
//! A [`Seed`] names a family of streams. Stream `k` of a family is a ChaCha8
//! generator keyed by a SplitMix64 expansion of the master value and using
//! `k` as the ChaCha stream selector, so distinct indices never share
//! keystream and any stream can be created without touching the others.
//! Gaussian variates come from the ziggurat sampler in `rand_distr`.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

/// Master seed of a reproducible experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed(pub u64);

impl Seed {
    pub const fn new(master: u64) -> Self {
        Seed(master)
    }

    pub fn master(self) -> u64 {
        self.0
    }

    /// The stream used by replica `index`.
    pub fn stream(self, index: u64) -> RngStream {
        RngStream::new(self, index)
    }

    /// An independent seed family labelled by `tag`.
    ///
    /// Used when one experiment needs several unrelated ensembles (for
    /// instance the two sides of a symmetry check).
    pub fn derive(self, tag: u64) -> Seed {
        let mut state = self.0 ^ tag.wrapping_mul(0xD6E8_FEB8_6659_FD93);
        Seed(splitmix64(&mut state) ^ splitmix64(&mut state).rotate_left(17))
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One deterministic stream of a seed family.
#[derive(Debug, Clone)]
pub struct RngStream {
    inner: ChaCha8Rng,
    index: u64,
}

impl RngStream {
    pub fn new(seed: Seed, index: u64) -> Self {
        let mut state = seed.0;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        let mut inner = ChaCha8Rng::from_seed(key);
        inner.set_stream(index);
        RngStream { inner, index }
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    #[inline]
    pub fn normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }

    /// Uniform on [0, 1).
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Mean-one exponential variate.
    #[inline]
    pub fn exp1(&mut self) -> f64 {
        self.inner.sample(Exp1)
    }

    /// Overwrite `out` with i.i.d. `Normal(0, sd^2)` values.
    pub fn fill_normal(&mut self, out: &mut [f64], sd: f64) {
        for x in out.iter_mut() {
            *x = sd * self.normal();
        }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }
}

/// Generator that only produces zeros from `normal`.
///
/// Handy for debug fields: every sampler written against [`GaussianSource`]
/// collapses to the deterministic skeleton of its construction.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroNoise;

/// Anything that can hand out standard normal variates.
pub trait GaussianSource {
    fn normal(&mut self) -> f64;

    fn fill_normal(&mut self, out: &mut [f64], sd: f64) {
        for x in out.iter_mut() {
            *x = sd * self.normal();
        }
    }
}

impl GaussianSource for RngStream {
    #[inline]
    fn normal(&mut self) -> f64 {
        RngStream::normal(self)
    }

    fn fill_normal(&mut self, out: &mut [f64], sd: f64) {
        RngStream::fill_normal(self, out, sd)
    }
}

impl GaussianSource for ZeroNoise {
    #[inline]
    fn normal(&mut self) -> f64 {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Seed(11).stream(3);
        let mut b = Seed(11).stream(3);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn distinct_indices_differ() {
        let mut a = Seed(11).stream(0);
        let mut b = Seed(11).stream(1);
        let xa: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let xb: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_ne!(xa, xb);
    }

    #[test]
    fn derive_changes_family() {
        let s = Seed(5);
        assert_ne!(s.derive(1), s.derive(2));
        assert_ne!(s.derive(1), s);
        assert_eq!(s.derive(9), s.derive(9));
    }

    #[test]
    fn zero_noise_is_zero() {
        let mut z = ZeroNoise;
        let mut buf = [1.0; 4];
        z.fill_normal(&mut buf, 3.0);
        assert_eq!(buf, [0.0; 4]);
    }
}
