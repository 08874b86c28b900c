//! Seeded sampling of generic points.

use num_complex::Complex64 as C64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimum distance kept from poles and other special loci when drawing
/// "generic" sample points.
pub const SAMPLE_MARGIN: f64 = 0.05;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Uniform in the box `center ± (half_re, half_im)`.
    pub fn complex(&mut self, center: C64, half_re: f64, half_im: f64) -> C64 {
        C64::new(center.re + self.uniform(-half_re, half_re), center.im + self.uniform(-half_im, half_im))
    }

    /// Rejection sampling: draw from the box until `ok` accepts.
    pub fn generic(&mut self, center: C64, half_re: f64, half_im: f64, ok: impl Fn(C64) -> bool) -> C64 {
        for _ in 0..100_000 {
            let z = self.complex(center, half_re, half_im);
            if ok(z) {
                return z;
            }
        }
        panic!("no admissible sample point found in the box around {center}");
    }

    pub fn derive(&mut self) -> Sampler {
        Sampler::new(self.rng.random::<u64>())
    }
}
