//! Seed plumbing shared by every stochastic estimator.
//!
//! Each trial derives its own stream from `(master_seed, trial_index)` so a
//! serial loop and a work-stealing parallel loop visit identical randomness.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default seed for every CLI command that does not receive one explicitly.
pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

/// splitmix64 finalizer; decorrelates nearby seeds.
#[must_use]
pub fn mix(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// RNG for trial `index` under `master` seed.
#[must_use]
pub fn trial_rng(master: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(master, index))
}

/// Standard real Gaussian via Box-Muller (no extra dependency).
pub fn standard_normal(rng: &mut impl Rng) -> f64 {
    loop {
        let u: f64 = rng.gen();
        if u > 0.0 {
            let v: f64 = rng.gen();
            return (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos();
        }
    }
}

/// Circularly symmetric complex Gaussian with the given total variance
/// (`CN(0, var)`: each real component has variance `var / 2`).
pub fn complex_normal(rng: &mut impl Rng, var: f64) -> Complex64 {
    let s = (var / 2.0).sqrt();
    Complex64::new(s * standard_normal(rng), s * standard_normal(rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_rngs_are_reproducible() {
        let mut a = trial_rng(42, 3);
        let mut b = trial_rng(42, 3);
        assert_eq!(a.gen::<u64>(), b.gen::<u64>());
        let mut c = trial_rng(42, 4);
        assert_ne!(a.gen::<u64>(), c.gen::<u64>());
    }

    #[test]
    fn complex_normal_moments() {
        let mut rng = trial_rng(1, 0);
        let n = 200_000;
        let (mut mean, mut pow) = (Complex64::new(0.0, 0.0), 0.0);
        for _ in 0..n {
            let z = complex_normal(&mut rng, 1.0);
            mean += z;
            pow += z.norm_sqr();
        }
        mean /= n as f64;
        pow /= n as f64;
        assert!(mean.norm() < 0.01, "mean {mean}");
        assert!((pow - 1.0).abs() < 0.02, "power {pow}");
    }
}
