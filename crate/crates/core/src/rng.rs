//! Seeded random sampling for randomized trials.
//!
//! Every trial owns a ChaCha stream selected by `(seed, trial index)`, so a
//! batch gives bit-identical results whether it runs serially or in
//! parallel.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::quaternion::{Quaternion, UnitQuaternion};

pub type TrialRng = ChaCha8Rng;

/// The generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

pub fn angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(0.0..TAU)
}

pub fn quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng))
}

/// Uniform on S^3: four normalized Gaussians.
pub fn unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> UnitQuaternion {
    loop {
        if let Ok(u) = UnitQuaternion::normalize(quaternion(rng)) {
            return u;
        }
    }
}

/// A unit vector of `n` real Gaussian coefficients, as complex numbers.
pub fn unit_real_coefficients<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    normalized((0..n).map(|_| Complex64::new(gaussian(rng), 0.0)).collect())
}

/// A unit vector of `n` complex Gaussian coefficients.
pub fn unit_complex_coefficients<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    normalized((0..n).map(|_| complex_gaussian(rng)).collect())
}

fn normalized(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|c| *c /= n);
    }
    v
}
