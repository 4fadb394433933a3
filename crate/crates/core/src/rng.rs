//! Seeded deterministic random sampling.
//!
//! The generator is SplitMix64: 64 bits of state, one additive constant and
//! two xor-shift multiplies per draw. It is pinned by name so that seeded
//! examples reproduce everywhere; reports echo the seed they were run with.

use crate::Complex;
use std::f64::consts::TAU;

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 bits of mantissa.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform over the complex unit square `[0,1) x [0,1)`.
    pub fn next_unit_square(&mut self) -> Complex {
        let re = self.next_f64();
        let im = self.next_f64();
        Complex::new(re, im)
    }

    /// Uniform (by area) over the disc of the given radius.
    pub fn next_in_disc(&mut self, radius: f64) -> Complex {
        let r = radius * self.next_f64().sqrt();
        let theta = TAU * self.next_f64();
        Complex::from_polar(r, theta)
    }

    /// Uniform angle in `[0, 2π)`.
    pub fn next_angle(&mut self) -> f64 {
        TAU * self.next_f64()
    }

    /// Uniform point on the unit circle.
    pub fn next_unimodular(&mut self) -> Complex {
        Complex::from_polar(1.0, self.next_angle())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_stream() {
        // Reference values for seed 0 from the published splitmix64 routine.
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn deterministic_across_instances() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn samples_stay_in_range() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            let u = rng.next_f64();
            assert!((0.0..1.0).contains(&u));
            let z = rng.next_in_disc(0.95);
            assert!(z.norm() <= 0.95);
            let w = rng.next_unimodular();
            assert!((w.norm() - 1.0).abs() < 1e-15);
        }
    }
}
