//! Seeded Monte Carlo play of both games.
//!
//! The sampling scheme is fixed so that a `(strategy, trials, seed)` triple
//! always produces the same report: one ChaCha8 stream, and per trial the
//! draws are `theta`, then `r` (GL only), then the outcome string, then for
//! quantum strategies the two guesser bits, in that order.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qcore::ComplexMatrix;
use crate::states::rotate_to_basis;

use super::eval::{GameValueReport, ValueMethod};
use super::strategy::{GameVariant, QuantumStrategy, SemiClassicalStrategy, Strategy};

/// Plays `trials` rounds and reports the win frequency with its binomial
/// standard error.
pub fn simulate_game(strategy: &Strategy, trials: u64, seed: u64) -> Result<GameValueReport> {
    if trials == 0 {
        return Err(Error::contract("simulate_game needs at least one trial"));
    }
    let wins = match strategy {
        Strategy::SemiClassical(s) => simulate_semiclassical(s, trials, seed)?,
        Strategy::Quantum(s) => simulate_quantum(s, trials, seed)?,
    };
    let value = wins as f64 / trials as f64;
    Ok(GameValueReport {
        value,
        method: ValueMethod::MonteCarlo,
        trials: Some(trials),
        std_err: Some((value * (1.0 - value) / trials as f64).sqrt()),
    })
}

/// First index whose cumulative weight exceeds `z * total`.
fn sample_cdf(cdf: &[f64], z: f64) -> usize {
    let target = z * cdf[cdf.len() - 1];
    cdf.partition_point(|&c| c <= target).min(cdf.len() - 1)
}

fn cumulative(probs: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut acc = 0.0;
    probs
        .map(|p| {
            acc += p;
            acc
        })
        .collect()
}

fn simulate_semiclassical(s: &SemiClassicalStrategy, trials: u64, seed: u64) -> Result<u64> {
    let spec = s.spec();
    let n = spec.n;
    let dim = 1usize << n;
    // Outcome distribution depends on theta alone.
    let mut cdfs = Vec::with_capacity(dim);
    for theta in BitString::all(n) {
        let rotated = rotate_to_basis(&theta, &s.alice_state)?;
        cdfs.push(cumulative(rotated.amps().iter().map(|z| z.norm_sqr())));
    }
    let amp_of: Vec<usize> = BitString::all(n).map(|r| r.amp_index()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut wins = 0u64;
    for _ in 0..trials {
        let theta_idx = rng.gen_range(0..dim);
        let (challenge_idx, r_amp) = match spec.variant {
            GameVariant::Xor => (theta_idx, 0),
            GameVariant::Gl => {
                let r_idx = rng.gen_range(0..dim);
                ((theta_idx << n) | r_idx, amp_of[r_idx])
            }
        };
        let x = sample_cdf(&cdfs[theta_idx], rng.gen::<f64>());
        let target = match spec.variant {
            GameVariant::Xor => x.count_ones() & 1 == 1,
            GameVariant::Gl => (x & r_amp).count_ones() & 1 == 1,
        };
        if target == s.table.bit(challenge_idx) {
            wins += 1;
        }
    }
    Ok(wins)
}

/// `<w| P (x) I |w>` for `w` on `B (x) C`.
fn expect_on_b(p: &ComplexMatrix, w: &[Complex64], dim_b: usize, dim_c: usize) -> f64 {
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..dim_b {
        for j in 0..dim_b {
            let entry = p.get(i, j);
            if entry.re == 0.0 && entry.im == 0.0 {
                continue;
            }
            for c in 0..dim_c {
                total += w[i * dim_c + c].conj() * entry * w[j * dim_c + c];
            }
        }
    }
    total.re
}

fn apply_on_b(p: &ComplexMatrix, w: &[Complex64], dim_b: usize, dim_c: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); w.len()];
    for i in 0..dim_b {
        for j in 0..dim_b {
            let entry = p.get(i, j);
            if entry.re == 0.0 && entry.im == 0.0 {
                continue;
            }
            for c in 0..dim_c {
                out[i * dim_c + c] += entry * w[j * dim_c + c];
            }
        }
    }
    out
}

fn expect_on_c(q: &ComplexMatrix, w: &[Complex64], dim_b: usize, dim_c: usize) -> f64 {
    let mut total = Complex64::new(0.0, 0.0);
    for b in 0..dim_b {
        let block = &w[b * dim_c..(b + 1) * dim_c];
        for i in 0..dim_c {
            for j in 0..dim_c {
                total += block[i].conj() * q.get(i, j) * block[j];
            }
        }
    }
    total.re
}

/// Hadamard butterflies on the first register of a state laid out as
/// `a * block + rest`.
fn rotate_first_register(theta: &BitString, amps: &mut [Complex64], block: usize) {
    let n = theta.len();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for k in 0..n {
        if !theta.bit(k) {
            continue;
        }
        let stride = (1usize << (n - 1 - k)) * block;
        let mut base = 0;
        while base < amps.len() {
            for lo in base..base + stride {
                let hi = lo + stride;
                let a = amps[lo];
                let b = amps[hi];
                amps[lo] = (a + b) * inv_sqrt2;
                amps[hi] = (a - b) * inv_sqrt2;
            }
            base += 2 * stride;
        }
    }
}

fn simulate_quantum(s: &QuantumStrategy, trials: u64, seed: u64) -> Result<u64> {
    let spec = s.spec();
    let n = spec.n;
    let dim = 1usize << n;
    let meas = &s.measurements;
    let (dim_b, dim_c) = (meas.dim_b(), meas.dim_c());
    let block = dim_b * dim_c;

    // Per theta: outcome distribution plus the guessers' conditional state
    // for every outcome. Both depend only on the basis choice.
    let mut cdfs = Vec::with_capacity(dim);
    let mut conditionals: Vec<Vec<Option<Vec<Complex64>>>> = Vec::with_capacity(dim);
    for theta in BitString::all(n) {
        let mut amps = s.joint_state.amps().to_vec();
        rotate_first_register(&theta, &mut amps, block);
        let mut probs = Vec::with_capacity(dim);
        let mut conds = Vec::with_capacity(dim);
        for x in 0..dim {
            let slice = &amps[x * block..(x + 1) * block];
            let p: f64 = slice.iter().map(|z| z.norm_sqr()).sum();
            probs.push(p);
            conds.push((p > 0.0).then(|| {
                let inv = 1.0 / p.sqrt();
                slice.iter().map(|z| z * inv).collect()
            }));
        }
        cdfs.push(cumulative(probs.into_iter()));
        conditionals.push(conds);
    }
    let amp_of: Vec<usize> = BitString::all(n).map(|r| r.amp_index()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut wins = 0u64;
    for _ in 0..trials {
        let theta_idx = rng.gen_range(0..dim);
        let (challenge_idx, r_amp) = match spec.variant {
            GameVariant::Xor => (theta_idx, 0),
            GameVariant::Gl => {
                let r_idx = rng.gen_range(0..dim);
                ((theta_idx << n) | r_idx, amp_of[r_idx])
            }
        };
        let x = sample_cdf(&cdfs[theta_idx], rng.gen::<f64>());
        let target = match spec.variant {
            GameVariant::Xor => x.count_ones() & 1 == 1,
            GameVariant::Gl => (x & r_amp).count_ones() & 1 == 1,
        };
        let w = conditionals[theta_idx][x]
            .as_ref()
            .expect("sampled outcome has positive probability");

        let p_pair = meas.p(challenge_idx);
        let prob_b1 = expect_on_b(&p_pair[1], w, dim_b, dim_c).clamp(0.0, 1.0);
        let b = rng.gen::<f64>() < prob_b1;
        let collapsed = apply_on_b(&p_pair[b as usize], w, dim_b, dim_c);
        let norm_sqr: f64 = collapsed.iter().map(|z| z.norm_sqr()).sum();
        // The selected branch has positive probability, so the norm is too.
        let inv = 1.0 / norm_sqr.sqrt();
        let collapsed: Vec<Complex64> = collapsed.iter().map(|z| z * inv).collect();

        let q_pair = meas.q(challenge_idx);
        let prob_c1 = expect_on_c(&q_pair[1], &collapsed, dim_b, dim_c).clamp(0.0, 1.0);
        let c = rng.gen::<f64>() < prob_c1;

        if b == target && c == target {
            wins += 1;
        }
    }
    Ok(wins)
}
