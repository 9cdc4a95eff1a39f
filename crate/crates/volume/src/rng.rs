//! Seeded random streams.
//!
//! Every consumer draws from `ChaCha8Rng` seeded with the user seed and a
//! fixed stream number, so independent parts of a volume (splines, seeds,
//! z-slices of noise) never share state and can be generated in any order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SPLINES: u64 = 1;
pub const CELL_SEEDS: u64 = 2;
pub const CELL_GROWTH: u64 = 3;
/// Noise for slice `z` uses stream `NOISE + z`.
pub const NOISE: u64 = 1 << 32;

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Two independent standard normal variates by the Marsaglia polar method.
pub fn normal_pair<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    loop {
        let u = 2.0 * rng.gen::<f64>() - 1.0;
        let v = 2.0 * rng.gen::<f64>() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            let k = (-2.0 * s.ln() / s).sqrt();
            return (u * k, v * k);
        }
    }
}
