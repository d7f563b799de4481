//! Counter-based splittable random number generator.
//!
//! Monte-Carlo sweeps here fan out over (experiment, k, trial) tuples, and
//! the outputs must not depend on how those tuples are scheduled across
//! threads. A counter-based generator makes that free: each draw is a pure
//! function of (key, counter), and child generators derive fresh keys
//! without consuming any state from the parent.

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer: a full-avalanche 64-bit mix.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic counter-based generator (SplitMix64 stream per key).
#[derive(Debug, Clone)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn from_seed(seed: u64) -> Self {
        CounterRng {
            key: mix(seed ^ GOLDEN_GAMMA),
            counter: 0,
        }
    }

    /// Derives an independent child generator from an integer label.
    /// Does not advance this generator.
    pub fn split(&self, label: u64) -> Self {
        CounterRng {
            key: mix(self.key ^ mix(label.wrapping_mul(GOLDEN_GAMMA) ^ 0x5851_f42d_4c95_7f2d),
            ),
            counter: 0,
        }
    }

    /// Derives an independent child generator from a string label, e.g. an
    /// experiment tag. Does not advance this generator.
    pub fn split_str(&self, label: &str) -> Self {
        let mut acc = 0xcbf2_9ce4_8422_2325u64; // FNV offset basis
        for &b in label.as_bytes() {
            acc = (acc ^ b as u64).wrapping_mul(0x100_0000_01b3);
        }
        self.split(mix(acc))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN_GAMMA)))
    }

    /// Uniform in `[0, 1)` with 53-bit resolution.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `[0, n)`, rejection-debiased.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let limit = u64::MAX - u64::MAX % n;
        loop {
            let v = self.next_u64();
            if v < limit {
                return v % n;
            }
        }
    }

    /// Standard normal deviate via Box-Muller. Consumes two uniforms per
    /// draw; no state is cached, so streams stay counter-addressable.
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform(); // (0, 1]
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// A uniform random `k`-subset of `0..n`, via partial Fisher-Yates.
    /// The returned order is the selection order (unsorted).
    pub fn sample_distinct(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n, "cannot draw {k} distinct values from 0..{n}");
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }
}
