//! Exact split of the masked-challenge average of the win projector.
//!
//! For one inner-product challenge `(theta, r)` the referee-side projector
//! onto outcomes with `r . x = b` has, in the computational basis, exactly
//! two kinds of matrix elements: half the identity, and a single
//! off-diagonal stripe connecting `|i>` to `|i ^ d|` where `d` is the
//! Hadamard part of `r`, carrying the sign `(-1)^(r_C . i_C)` from the
//! computational part. Averaging over the masked set `S` therefore splits
//! the win projector as
//!
//! ```text
//! E_S Pi = (1/2) I (x) E_S[ sum_b P_b (x) Q_b ]  +  W2
//! ```
//!
//! with `W2` assembled from the stripes. The first part never exceeds 1/2
//! on unit vectors; `||W2||` decays geometrically in `n` and controls the
//! guessers' advantage over a coin flip.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::games::eval::gl_game_projector;
use crate::games::strategy::{AnswerTable, GameVariant, MeasurementFamilies};
use crate::qcore::{operator_norm, ComplexMatrix, HermitianOperator};

use super::sset::{in_s, ChallengeSet};

/// Frobenius-norm limit for accepting the closed-form split.
pub const RESIDUAL_LIMIT: f64 = 1e-9;

fn check_caps(meas: &MeasurementFamilies) -> Result<()> {
    let spec = meas.spec();
    if spec.variant != GameVariant::Gl {
        return Err(Error::contract(
            "the operator split is defined for the inner-product game",
        ));
    }
    let dim_bc = meas.dim_b() * meas.dim_c();
    let ok = if dim_bc == 1 { spec.n <= 6 } else { spec.n <= 4 && dim_bc <= 16 };
    if !ok {
        return Err(Error::size(format!(
            "operator split supports n <= 4 with dim_b*dim_c <= 16, or n <= 6 with \
             scalar guessers; got n={} and dim_b*dim_c={dim_bc}",
            spec.n
        )));
    }
    Ok(())
}

/// Measurement families are accepted with a 1e-10 projectivity tolerance,
/// so operators averaged from them can miss exact Hermiticity by that
/// much; fold the defect away before wrapping.
fn symmetrized(m: ComplexMatrix) -> Result<HermitianOperator> {
    HermitianOperator::new(m.add(&m.dagger())?.scale(Complex64::new(0.5, 0.0)))
}

/// Challenge indices of the masked set, in lexicographic `(theta, r)` order.
fn masked_indices(meas: &MeasurementFamilies) -> Result<Vec<usize>> {
    let spec = meas.spec();
    let mut indices = Vec::new();
    for index in 0..spec.challenge_count() {
        let (theta, r) = spec.challenge(index);
        let r = r.expect("inner-product challenge");
        if in_s(&theta, &r)? {
            indices.push(index);
        }
    }
    Ok(indices)
}

/// The uniform average over masked challenges of the full win projector,
/// built challenge by challenge. This is the ground truth the closed-form
/// split is checked against.
pub fn build_avg_projector_on_s(meas: &MeasurementFamilies) -> Result<HermitianOperator> {
    check_caps(meas)?;
    let spec = meas.spec();
    let n = spec.n;
    let indices = masked_indices(meas)?;
    let dim = (1usize << n) * meas.dim_b() * meas.dim_c();
    let mut acc = ComplexMatrix::zeros(dim, dim)?;
    for &index in &indices {
        let (theta, r) = spec.challenge(index);
        let r = r.expect("inner-product challenge");
        acc.add_assign_scaled(
            &gl_game_projector(meas, &theta, &r)?,
            Complex64::new(1.0, 0.0),
        )?;
    }
    symmetrized(acc.scale(Complex64::new(1.0 / indices.len() as f64, 0.0)))
}

/// The diagonal half of the split: `(1/2) I (x) E[sum_b P_b (x) Q_b]`, with
/// the average over masked challenges only (`conditioned = true`) or over
/// all challenges. The split identity uses the conditioned variant.
pub fn build_w1(meas: &MeasurementFamilies, conditioned: bool) -> Result<HermitianOperator> {
    check_caps(meas)?;
    let spec = meas.spec();
    let dim_bc = meas.dim_b() * meas.dim_c();
    let mut avg = ComplexMatrix::zeros(dim_bc, dim_bc)?;
    let mut count = 0usize;
    for index in 0..spec.challenge_count() {
        let (theta, r) = spec.challenge(index);
        let r = r.expect("inner-product challenge");
        if conditioned && !in_s(&theta, &r)? {
            continue;
        }
        count += 1;
        for b in 0..2 {
            avg.add_assign_scaled(
                &meas.p(index)[b].kron(&meas.q(index)[b])?,
                Complex64::new(1.0, 0.0),
            )?;
        }
    }
    let id_a = ComplexMatrix::identity(1usize << spec.n)?;
    symmetrized(id_a.kron(&avg)?.scale(Complex64::new(0.5 / count as f64, 0.0)))
}

/// The stripe part of the split, assembled from its closed form: for every
/// masked challenge, the block `|i><i ^ d|` at `d = ` Hadamard part of `r`
/// receives `(-1)^(r_C . i_C) (P_0 (x) Q_0 - P_1 (x) Q_1)`, and the total
/// is scaled by `1 / (2 |S|)`.
pub fn build_w2_closed_form(meas: &MeasurementFamilies) -> Result<ComplexMatrix> {
    check_caps(meas)?;
    let spec = meas.spec();
    let n = spec.n;
    let dim_a = 1usize << n;
    let block = meas.dim_b() * meas.dim_c();
    let mut w2 = ComplexMatrix::zeros(dim_a * block, dim_a * block)?;
    let indices = masked_indices(meas)?;
    for &index in &indices {
        let (theta, r) = spec.challenge(index);
        let r = r.expect("inner-product challenge");
        let diff = meas.p(index)[0]
            .kron(&meas.q(index)[0])?
            .sub(&meas.p(index)[1].kron(&meas.q(index)[1])?)?;
        // Amplitude-space offset and sign mask: `r` on Hadamard positions
        // flips the branch, `r` on computational positions signs it.
        let delta = r.and(&theta).amp_index();
        let sign_mask = r.amp_index() & !theta.amp_index();
        for i in 0..dim_a {
            let sign = if (i & sign_mask).count_ones() & 1 == 1 { -1.0 } else { 1.0 };
            let j = i ^ delta;
            for a in 0..block {
                for c in 0..block {
                    w2.add_to(i * block + a, j * block + c, diff.get(a, c) * sign);
                }
            }
        }
    }
    Ok(w2.scale(Complex64::new(0.5 / indices.len() as f64, 0.0)))
}

/// Frobenius norm of `E_S Pi - W1(conditioned) - W2`; errors if it exceeds
/// [`RESIDUAL_LIMIT`], which would mean the closed form is wrong.
pub fn decomposition_residual(meas: &MeasurementFamilies) -> Result<f64> {
    let target = build_avg_projector_on_s(meas)?;
    let w1 = build_w1(meas, true)?;
    let w2 = build_w2_closed_form(meas)?;
    let residual = target.matrix().sub(w1.matrix())?.sub(&w2)?.frobenius_norm();
    if residual >= RESIDUAL_LIMIT {
        return Err(Error::DecompositionMismatch {
            residual,
            limit: RESIDUAL_LIMIT,
        });
    }
    Ok(residual)
}

/// Operator norm of the stripe part for a deterministic answer table
/// (scalar guessers), where it is a real `2^n x 2^n` matrix. `n <= 6`.
pub fn w2_norm_semiclassical(table: &AnswerTable) -> Result<f64> {
    let meas = MeasurementFamilies::from_answer_table(table);
    operator_norm(&build_w2_closed_form(&meas)?)
}

/// Norm ceilings for the stripe part at size `n`.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct W2Bound {
    pub n: usize,
    /// The squared per-step decay rate, `(4 + 2 sqrt 2) / 8`.
    pub decay_base: f64,
    /// Odds against a uniform challenge being masked, from the enumeration.
    pub delta_enumerated: f64,
    /// The same odds under the complement weight `2^-n / (1 - 2^-n)`.
    pub delta_rounded: f64,
    /// `(1 + delta_enumerated)/2 * decay_base^(n/2)`.
    pub bound_exact: f64,
    /// `(1 + delta_rounded)/2 * 0.93^n`, the rounded-rate variant.
    pub bound_rounded: f64,
}

/// Computes both norm ceilings; `1 <= n <= 10` for the enumerated odds.
pub fn w2_bound(n: usize) -> Result<W2Bound> {
    let delta_enumerated = ChallengeSet::new(n)?.delta_n_f64();
    let delta_rounded = 1.0 / ((1u64 << n) - 1) as f64;
    let decay_base = (4.0 + 2.0 * std::f64::consts::SQRT_2) / 8.0;
    Ok(W2Bound {
        n,
        decay_base,
        delta_enumerated,
        delta_rounded,
        bound_exact: 0.5 * (1.0 + delta_enumerated) * decay_base.powf(n as f64 / 2.0),
        bound_rounded: 0.5 * (1.0 + delta_rounded) * 0.93f64.powi(n as i32),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitString;
    use crate::decomp::lemmas::sum_xor;
    use crate::games::eval::{avg_game_operator, gl_game_value_semiclassical};
    use crate::games::strategy::{GameSpec, SemiClassicalStrategy};
    use crate::qcore::{hermitian_eigen, StateVector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gl_spec(n: usize) -> GameSpec {
        GameSpec::new(GameVariant::Gl, n).unwrap()
    }

    fn random_table(n: usize, rng: &mut ChaCha8Rng) -> AnswerTable {
        AnswerTable::from_fn(gl_spec(n), |_| rng.gen())
    }

    fn random_state(dim: usize, rng: &mut ChaCha8Rng) -> StateVector {
        StateVector::normalized(
            (0..dim)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
        .unwrap()
    }

    /// Random binary projective measurements on dimension `dim`: a random
    /// orthonormal frame split into two groups.
    fn random_projector_pair(dim: usize, rng: &mut ChaCha8Rng) -> [ComplexMatrix; 2] {
        // Gram-Schmidt on random vectors.
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

    fn random_measurements(n: usize, dim: usize, rng: &mut ChaCha8Rng) -> MeasurementFamilies {
        let spec = gl_spec(n);
        let p = (0..spec.challenge_count())
            .map(|_| random_projector_pair(dim, rng))
            .collect();
        let q = (0..spec.challenge_count())
            .map(|_| random_projector_pair(dim, rng))
            .collect();
        MeasurementFamilies::new(spec, dim, dim, p, q).unwrap()
    }

    #[test]
    fn n1_masked_average_is_the_single_challenge_projector() {
        let table = AnswerTable::from_packed(gl_spec(1), 0b0110).unwrap();
        let meas = MeasurementFamilies::from_answer_table(&table);
        let avg = build_avg_projector_on_s(&meas).unwrap();
        let only = gl_game_projector(&meas, &BitString::ones(1), &BitString::ones(1)).unwrap();
        assert!(avg.matrix().max_abs_diff(&only).unwrap() < 1e-14);
    }

    #[test]
    fn masked_average_spectrum_lies_in_the_unit_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let meas = random_measurements(2, 2, &mut rng);
        let avg = build_avg_projector_on_s(&meas).unwrap();
        let eig = hermitian_eigen(&avg).unwrap();
        for &v in &eig.values {
            assert!((-1e-10..=1.0 + 1e-10).contains(&v), "eigenvalue {v}");
        }
    }

    #[test]
    fn masked_average_sandwiches_the_full_average() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let meas = random_measurements(2, 2, &mut rng);
        let masked = build_avg_projector_on_s(&meas).unwrap();
        let full = avg_game_operator(&meas).unwrap();
        let complement = 1.0 - ChallengeSet::new(2).unwrap().prob_s_f64();
        for _ in 0..10 {
            let v = random_state(16, &mut rng);
            let a = v.expectation(masked.matrix()).unwrap().re;
            let b = v.expectation(&full).unwrap().re;
            assert!((a - b).abs() <= complement + 1e-12, "gap {}", (a - b).abs());
        }
    }

    #[test]
    fn scalar_guessers_make_the_diagonal_half_exactly_half_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let table = random_table(2, &mut rng);
        let meas = MeasurementFamilies::from_answer_table(&table);
        for conditioned in [false, true] {
            let w1 = build_w1(&meas, conditioned).unwrap();
            let half_id = ComplexMatrix::identity(4).unwrap().scale(Complex64::new(0.5, 0.0));
            assert!(w1.matrix().max_abs_diff(&half_id).unwrap() < 1e-14);
        }
    }

    #[test]
    fn diagonal_half_spectrum_stays_below_one_half() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let meas = random_measurements(1, 2, &mut rng);
        for conditioned in [false, true] {
            let w1 = build_w1(&meas, conditioned).unwrap();
            let eig = hermitian_eigen(&w1).unwrap();
            for &v in &eig.values {
                assert!((-1e-12..=0.5 + 1e-12).contains(&v), "eigenvalue {v}");
            }
        }
    }

    #[test]
    fn split_residual_vanishes_for_random_quantum_strategies() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=2 {
            for _ in 0..3 {
                let meas = random_measurements(n, 2, &mut rng);
                let residual = decomposition_residual(&meas).unwrap();
                assert!(residual < RESIDUAL_LIMIT, "n={n} residual={residual:e}");
            }
        }
    }

    #[test]
    fn split_residual_vanishes_for_random_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for n in 1..=4 {
            let table = random_table(n, &mut rng);
            let meas = MeasurementFamilies::from_answer_table(&table);
            let residual = decomposition_residual(&meas).unwrap();
            assert!(residual < RESIDUAL_LIMIT, "n={n} residual={residual:e}");
        }
    }

    #[test]
    fn always_answer_zero_strategy_splits_exactly() {
        let table = AnswerTable::constant(gl_spec(2), false);
        let meas = MeasurementFamilies::from_answer_table(&table);
        let residual = decomposition_residual(&meas).unwrap();
        assert!(residual < 1e-12, "residual={residual:e}");
    }

    #[test]
    fn scalar_guesser_stripes_are_real() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let table = random_table(3, &mut rng);
        let meas = MeasurementFamilies::from_answer_table(&table);
        let w2 = build_w2_closed_form(&meas).unwrap();
        let max_imag = w2.data().iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        assert_eq!(max_imag, 0.0);
        assert!(w2.hermiticity_defect().unwrap() < 1e-14);
    }

    #[test]
    fn character_sums_reduce_to_the_signed_count() {
        // Summing the signed count over both target bits collapses it to a
        // plain character sum: 2^m at u = 0 and 0 elsewhere.
        for m in 1..=3 {
            let r = BitString::ones(m);
            for ui in 0..1usize << m {
                let u = BitString::from_index(m, ui).unwrap();
                let total = sum_xor(&r, &u, false).unwrap() + sum_xor(&r, &u, true).unwrap();
                assert_eq!(total, if ui == 0 { 1 << m } else { 0 });
            }
        }
    }

    #[test]
    fn constant_table_stripes_match_the_binomial_closed_form() {
        // For the all-zeros table the stripe entries reduce to counting
        // basis strings theta covering both the offset and the row support:
        // entry (i, i ^ d) = 3^(n - |i OR d|) / (2 |S|), and zero at d = 0.
        let n = 3;
        let table = AnswerTable::constant(gl_spec(n), false);
        let meas = MeasurementFamilies::from_answer_table(&table);
        let w2 = build_w2_closed_form(&meas).unwrap();
        let members = ChallengeSet::new(n).unwrap().member_count() as f64;
        for i in 0..1usize << n {
            for j in 0..1usize << n {
                let d = i ^ j;
                let expect = if d == 0 {
                    0.0
                } else {
                    3f64.powi(n as i32 - (i | d).count_ones() as i32) / (2.0 * members)
                };
                let got = w2.get(i, j);
                assert!((got.re - expect).abs() < 1e-12, "({i},{j}): {} vs {expect}", got.re);
                assert_eq!(got.im, 0.0);
            }
        }
    }

    #[test]
    fn n1_stripe_norm_is_one_half_for_every_table() {
        for packed in 0..16u64 {
            let table = AnswerTable::from_packed(gl_spec(1), packed).unwrap();
            let norm = w2_norm_semiclassical(&table).unwrap();
            assert!((norm - 0.5).abs() < 1e-12, "table {packed:04b}: {norm}");
        }
    }

    #[test]
    fn stripe_norms_respect_both_ceilings_on_random_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 2..=4 {
            let bound = w2_bound(n).unwrap();
            for _ in 0..5 {
                let table = random_table(n, &mut rng);
                let norm = w2_norm_semiclassical(&table).unwrap();
                assert!(norm <= bound.bound_exact + 1e-12, "n={n} norm={norm}");
                assert!(norm <= bound.bound_rounded + 1e-12, "n={n} norm={norm}");
            }
        }
    }

    #[test]
    fn value_never_beats_the_assembled_chain_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in 1..=3 {
            let slack = 1.0 - ChallengeSet::new(n).unwrap().prob_s_f64();
            for _ in 0..5 {
                let table = random_table(n, &mut rng);
                let state = random_state(1 << n, &mut rng);
                let strat = SemiClassicalStrategy::new(state.clone(), table.clone()).unwrap();
                let value = gl_game_value_semiclassical(&strat).unwrap().value;
                let meas = MeasurementFamilies::from_answer_table(&table);
                let w2 = build_w2_closed_form(&meas).unwrap();
                let quad = state.expectation(&w2).unwrap().re;
                assert!(
                    value <= 0.5 + quad + slack + 1e-12,
                    "n={n} value={value} chain={}",
                    0.5 + quad + slack
                );
            }
        }
    }

    #[test]
    fn ceiling_numbers_are_as_stated() {
        let b1 = w2_bound(1).unwrap();
        assert!((b1.decay_base - 0.8535533905932737).abs() < 1e-15);
        assert!(b1.decay_base.sqrt() <= 0.93);
        assert!((b1.delta_enumerated - 3.0).abs() < 1e-15);
        assert!((b1.delta_rounded - 1.0).abs() < 1e-15);
        assert!((b1.bound_rounded - 0.93).abs() < 1e-15);
        // The ceiling decays geometrically.
        let b8 = w2_bound(8).unwrap();
        let b4 = w2_bound(4).unwrap();
        assert!(b8.bound_exact < b4.bound_exact && b4.bound_exact < b1.bound_exact * 1.2);
        assert!(b8.bound_rounded < 0.5 * 0.93f64.powi(7));
    }

    #[test]
    fn split_rejects_wrong_variant_and_oversized_inputs() {
        let xor_table = AnswerTable::constant(
            GameSpec::new(GameVariant::Xor, 2).unwrap(),
            false,
        );
        assert!(build_w2_closed_form(&MeasurementFamilies::from_answer_table(&xor_table)).is_err());
        let big = AnswerTable::constant(gl_spec(7), false);
        assert!(w2_norm_semiclassical(&big).is_err());
    }
}
