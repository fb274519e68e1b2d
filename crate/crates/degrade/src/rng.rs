const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: a bijective 64-bit mix.
pub fn mix64(mut x: u64) -> u64 {
    x ^= x >> 30;
    x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 31;
    x
}

/// Key of the per-view stream. The +1 offsets keep view (0, 0) from
/// collapsing the packed word to zero.
pub fn stream_key(seed: u64, u: usize, v: usize) -> u64 {
    let packed = ((u as u64 + 1) << 32) | (v as u64 + 1);
    mix64(seed ^ mix64(packed))
}

/// A counter-based Gaussian stream: sample `i` depends only on
/// `(seed, u, v, i)`, so any evaluation order yields identical values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoiseStream {
    key: u64,
}

impl NoiseStream {
    pub fn new(seed: u64, u: usize, v: usize) -> Self {
        NoiseStream {
            key: stream_key(seed, u, v),
        }
    }

    fn raw(&self, i: u64) -> u64 {
        mix64(self.key.wrapping_add(i.wrapping_mul(GOLDEN)))
    }

    /// Uniform draw in (0, 1], safe as a logarithm argument.
    pub fn unit_open(&self, i: u64) -> f64 {
        ((self.raw(i) >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal draw `i`. Counters 2k and 2k+1 form a Box-Muller
    /// pair over uniform counters 2k and 2k+1.
    pub fn normal(&self, i: u64) -> f64 {
        let pair = i / 2;
        let u1 = self.unit_open(2 * pair);
        let u2 = self.unit_open(2 * pair + 1);
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        if i % 2 == 0 {
            r * theta.cos()
        } else {
            r * theta.sin()
        }
    }
}
