//! Seeded random inputs and the default commutator test battery.
//!
//! Every random draw in an experiment comes from a `ChaCha8Rng` seeded
//! with the configured value, so reruns with the same configuration
//! reproduce the same inputs bit for bit.

use num_complex::Complex64;
use phasekit_core::{ArcSet, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::TAU;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random union of one to three arcs, rejected until the normalized
/// set has measure above 0.05 and is not the full circle.
pub fn random_arcset(rng: &mut ChaCha8Rng) -> ArcSet {
    loop {
        let count = 1 + rng.gen_range(0..3usize);
        let arcs: Vec<(f64, f64)> = (0..count)
            .map(|_| {
                let start = rng.gen::<f64>() * TAU;
                let len = 0.05 + rng.gen::<f64>() * 1.95;
                (start, start + len)
            })
            .collect();
        let set = ArcSet::new(arcs);
        if set.measure() > 0.05 && !set.is_full() {
            return set;
        }
    }
}

/// Random unit vector: complex standard normal coordinates,
/// normalized.
pub fn random_unit_state(rng: &mut ChaCha8Rng, dim: usize) -> StateVector {
    loop {
        let coeffs: Vec<Complex64> = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            })
            .collect();
        if let Ok(unit) = StateVector::from_coeffs(coeffs).normalized() {
            return unit;
        }
    }
}

/// Commutator test battery: the seven eighth-circle prefixes
/// `[0, 2 pi j / 8)` paired cyclically, then four random arc pairs
/// from the seeded generator.
pub fn default_battery(rng: &mut ChaCha8Rng) -> Vec<(ArcSet, ArcSet)> {
    let prefix: Vec<ArcSet> = (1..=7)
        .map(|j| ArcSet::new([(0.0, TAU * j as f64 / 8.0)]))
        .collect();
    let mut pairs: Vec<(ArcSet, ArcSet)> = (0..7)
        .map(|j| (prefix[j].clone(), prefix[(j + 1) % 7].clone()))
        .collect();
    for _ in 0..4 {
        pairs.push((random_arcset(rng), random_arcset(rng)));
    }
    pairs
}
