//! Seeded sampling of MSR pairs, uniform on each Bloch sphere.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::msr::MsrPair;

/// Seed used by the CLI and the test suites unless overridden.
pub const DEFAULT_SEED: u64 = 0x4b43_4253;

/// One star: `cos θ` uniform on `[−1, 1]`, `φ` uniform on `[0, 2π)`.
fn sample_star<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
    (cos_theta.acos(), rng.gen_range(0.0..TAU))
}

pub fn random_pair<R: Rng + ?Sized>(rng: &mut R) -> MsrPair {
    let (t1, p1) = sample_star(rng);
    let (t2, p2) = sample_star(rng);
    MsrPair::from_angles(t1, p1, t2, p2).expect("acos lands in [0, π]")
}

/// `count` pairs from a ChaCha8 stream seeded with `seed`.
pub fn sample_pairs(count: usize, seed: u64) -> Vec<MsrPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_pair(&mut rng)).collect()
}
