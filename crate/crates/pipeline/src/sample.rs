use lfd_degrade::{mix64, Degradation, NoiseStream};

/// Domain tag keeping sampler draws disjoint from per-view noise streams
/// derived from the same user seed.
const SAMPLER_TAG: u64 = 0x6C66_6461_7567_7231;

/// Counter-based training-degradation sampler: draw `i` yields
/// `sigma_b ~ U[0,4]`, `noise_level ~ U[0,75]`, alpha fixed at 4,
/// independent of evaluation order.
#[derive(Debug, Clone, Copy)]
pub struct DegradationSampler {
    stream: NoiseStream,
}

impl DegradationSampler {
    pub fn new(seed: u64) -> Self {
        DegradationSampler {
            stream: NoiseStream::new(mix64(seed ^ SAMPLER_TAG), 0, 0),
        }
    }

    pub fn draw(&self, i: u64) -> Degradation {
        Degradation {
            sigma_b: 4.0 * self.stream.unit_open(2 * i),
            noise_level: 75.0 * self.stream.unit_open(2 * i + 1),
            alpha: 4,
        }
    }
}
