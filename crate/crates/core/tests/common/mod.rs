//! Seeded random inputs shared by the integration suites.

#![allow(dead_code)]

use moe_core::games::{
    AnswerTable, GameSpec, GameVariant, MeasurementFamilies, QuantumStrategy,
    SemiClassicalStrategy,
};
use moe_core::qcore::{ComplexMatrix, StateVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn spec(variant: GameVariant, n: usize) -> GameSpec {
    GameSpec::new(variant, n).unwrap()
}

pub fn random_table(spec: GameSpec, rng: &mut ChaCha8Rng) -> AnswerTable {
    AnswerTable::from_fn(spec, |_| rng.gen())
}

pub fn random_state(dim: usize, rng: &mut ChaCha8Rng) -> StateVector {
    StateVector::normalized(
        (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .unwrap()
}

pub fn random_semiclassical(
    variant: GameVariant,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> SemiClassicalStrategy {
    let spec = spec(variant, n);
    SemiClassicalStrategy::new(random_state(1 << n, rng), random_table(spec, rng)).unwrap()
}

/// Random binary projective measurement on dimension `dim`: a Gram-Schmidt
/// orthonormal frame split into two groups at a random rank.
pub fn random_projector_pair(dim: usize, rng: &mut ChaCha8Rng) -> [ComplexMatrix; 2] {
    let mut frame: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while frame.len() < dim {
        let mut v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for u in &frame {
            let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= overlap * ui;
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            v.iter_mut().for_each(|z| *z /= norm);
            frame.push(v);
        }
    }
    let rank = rng.gen_range(0..=dim);
    let mut p0 = ComplexMatrix::zeros(dim, dim).unwrap();
    let mut p1 = ComplexMatrix::zeros(dim, dim).unwrap();
    for (k, v) in frame.iter().enumerate() {
        let target = if k < rank { &mut p0 } else { &mut p1 };
        target.add_assign_outer(v, v, Complex64::new(1.0, 0.0)).unwrap();
    }
    [p0, p1]
}

pub fn random_measurements(
    variant: GameVariant,
    n: usize,
    dim_b: usize,
    dim_c: usize,
    rng: &mut ChaCha8Rng,
) -> MeasurementFamilies {
    let spec = spec(variant, n);
    let p = (0..spec.challenge_count())
        .map(|_| random_projector_pair(dim_b, rng))
        .collect();
    let q = (0..spec.challenge_count())
        .map(|_| random_projector_pair(dim_c, rng))
        .collect();
    MeasurementFamilies::new(spec, dim_b, dim_c, p, q).unwrap()
}

pub fn random_quantum(
    variant: GameVariant,
    n: usize,
    dim_b: usize,
    dim_c: usize,
    rng: &mut ChaCha8Rng,
) -> QuantumStrategy {
    let measurements = random_measurements(variant, n, dim_b, dim_c, rng);
    let joint = random_state((1 << n) * dim_b * dim_c, rng);
    QuantumStrategy::new(joint, measurements).unwrap()
}
