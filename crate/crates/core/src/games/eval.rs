//! Exact game values via the Born rule and eigenvalue optimization.
//!
//! Everything here reduces to two builders:
//!
//! * `outcome_projectors`: for a basis string `theta` and a target bit
//!   function, the pair of projectors onto outcome strings mapping to 0
//!   resp. 1, expressed in the computational basis. These are diagonal in
//!   the `theta` basis, so they are assembled by a masked loop over the
//!   Hadamard positions instead of dense outer products.
//! * `avg_game_operator`: the challenge average of the full win projector
//!   `sum_b A_b (x) P_b (x) Q_b`, whose top eigenvalue is the optimal
//!   guessing probability for fixed measurement families.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qcore::{fwht_in_place, lambda_max, ComplexMatrix, StateVector};
use crate::states::{parity_observable, rotate_to_basis};

use super::strategy::{
    AnswerTable, GameVariant, MeasurementFamilies, QuantumStrategy, SemiClassicalStrategy,
    Strategy,
};

/// How a reported value was obtained.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueMethod {
    /// Exact Born-rule average for a fixed strategy.
    Born,
    /// Top eigenvalue of an averaged operator.
    Eigen,
    /// Seeded Monte Carlo estimate.
    MonteCarlo,
}

/// A game value plus provenance. `trials` and `std_err` are present exactly
/// for Monte Carlo estimates.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct GameValueReport {
    pub value: f64,
    pub method: ValueMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_err: Option<f64>,
}

impl GameValueReport {
    fn exact(value: f64, method: ValueMethod) -> Result<Self> {
        if !(-1e-9..=1.0 + 1e-9).contains(&value) {
            return Err(Error::contract(format!(
                "game value {value} outside [0, 1]"
            )));
        }
        Ok(GameValueReport {
            value: value.clamp(0.0, 1.0),
            method,
            trials: None,
            std_err: None,
        })
    }
}

/// Probability that measuring `state` in the `theta` basis yields a string
/// of even parity: `(1 + <state| Xtilde_theta |state>)/2` with `Xtilde` the
/// parity observable.
pub fn parity_bias(state: &StateVector, theta: &BitString) -> Result<f64> {
    let obs = parity_observable(theta)?;
    let moved = obs.apply(state)?;
    let e = state.inner(&moved)?;
    if e.im.abs() > 1e-10 {
        return Err(Error::contract(format!(
            "parity expectation has imaginary part {:.3e}",
            e.im
        )));
    }
    Ok(((1.0 + e.re) / 2.0).clamp(0.0, 1.0))
}

/// Adds `coeff * sum_x weight(x) |x^theta><x^theta|` into `out`, where `x`
/// runs over amplitude indices. Cost `2^n * 4^h` for `h` Hadamard positions.
fn accumulate_theta_diagonal(
    out: &mut ComplexMatrix,
    theta: &BitString,
    weight: impl Fn(usize) -> f64,
    coeff: f64,
) {
    let n = theta.len();
    let dim = 1usize << n;
    debug_assert_eq!(out.rows(), dim);
    let h_mask = theta.amp_index();
    let scale = coeff * 2f64.powi(-(h_mask.count_ones() as i32));
    for x in 0..dim {
        let w = weight(x);
        if w == 0.0 {
            continue;
        }
        let base = x & !h_mask;
        let val = Complex64::new(scale * w, 0.0);
        // Enumerate both Hadamard-part assignments of the row and column.
        let mut ih = h_mask;
        loop {
            let si = (x & ih).count_ones() & 1 == 1;
            let mut jh = h_mask;
            loop {
                let sj = (x & jh).count_ones() & 1 == 1;
                out.add_to(base | ih, base | jh, if si ^ sj { -val } else { val });
                if jh == 0 {
                    break;
                }
                jh = (jh - 1) & h_mask;
            }
            if ih == 0 {
                break;
            }
            ih = (ih - 1) & h_mask;
        }
    }
}

/// The projectors onto `theta`-basis outcomes with target bit 0 resp. 1.
/// `target` receives the outcome string as an amplitude index.
pub fn outcome_projectors(
    theta: &BitString,
    target: impl Fn(usize) -> bool,
) -> Result<[ComplexMatrix; 2]> {
    let dim = 1usize << theta.len();
    let mut zero = ComplexMatrix::zeros(dim, dim)?;
    let mut one = ComplexMatrix::zeros(dim, dim)?;
    accumulate_theta_diagonal(&mut zero, theta, |x| if target(x) { 0.0 } else { 1.0 }, 1.0);
    accumulate_theta_diagonal(&mut one, theta, |x| if target(x) { 1.0 } else { 0.0 }, 1.0);
    Ok([zero, one])
}

/// Exact value of an XOR strategy: the average over `theta` of the
/// probability that the measured parity equals the table answer.
pub fn xor_game_value(strategy: &SemiClassicalStrategy) -> Result<GameValueReport> {
    let spec = strategy.spec();
    if spec.variant != GameVariant::Xor {
        return Err(Error::contract("xor_game_value needs an XOR strategy"));
    }
    let mut total = 0.0;
    for theta in BitString::all(spec.n) {
        let bias = parity_bias(&strategy.alice_state, &theta)?;
        total += if strategy.table.xor_answer(&theta) {
            1.0 - bias
        } else {
            bias
        };
    }
    GameValueReport::exact(total / spec.challenge_count() as f64, ValueMethod::Born)
}

/// The averaged scalar-answer operator `M_c` of a GL answer table:
///
/// ```text
/// M_c = E_(theta,r) sum_(x : r.x = c(theta,r)) |x^theta><x^theta|
/// ```
///
/// Its top eigenvalue is the best winning probability any Alice state can
/// reach against the fixed table.
pub fn gl_semiclassical_operator(table: &AnswerTable) -> Result<ComplexMatrix> {
    let spec = table.spec();
    if spec.variant != GameVariant::Gl {
        return Err(Error::contract("gl_semiclassical_operator needs a GL table"));
    }
    if spec.n > 8 {
        return Err(Error::size(format!(
            "gl_semiclassical_operator supports n <= 8, got {}",
            spec.n
        )));
    }
    let n = spec.n;
    let dim = 1usize << n;
    let mut op = ComplexMatrix::zeros(dim, dim)?;
    let coeff = 1.0 / spec.challenge_count() as f64;
    let mut counts = vec![0.0f64; dim];
    for theta in BitString::all(n) {
        // counts[x] = number of r with  r.x = c(theta, r)
        counts.iter_mut().for_each(|c| *c = 0.0);
        for r in BitString::all(n) {
            let c = table.gl_answer(&theta, &r);
            let r_amp = r.amp_index();
            for (x, cnt) in counts.iter_mut().enumerate() {
                if ((r_amp & x).count_ones() & 1 == 1) == c {
                    *cnt += 1.0;
                }
            }
        }
        accumulate_theta_diagonal(&mut op, &theta, |x| counts[x], coeff);
    }
    Ok(op)
}

/// Exact value of a GL strategy with a fixed Alice state and answer table.
///
/// Evaluated per `theta` from the measured outcome distribution: a
/// Walsh-Hadamard transform of the probabilities gives all `2^n` masked
/// sums `Pr[r.x = 0]` at once.
pub fn gl_game_value_semiclassical(strategy: &SemiClassicalStrategy) -> Result<GameValueReport> {
    let spec = strategy.spec();
    if spec.variant != GameVariant::Gl {
        return Err(Error::contract("gl_game_value_semiclassical needs a GL strategy"));
    }
    let n = spec.n;
    let mut total = 0.0;
    for theta in BitString::all(n) {
        let rotated = rotate_to_basis(&theta, &strategy.alice_state)?;
        let mut probs: Vec<f64> = rotated.amps().iter().map(|z| z.norm_sqr()).collect();
        fwht_in_place(&mut probs)?;
        let mass = probs[0];
        for r in BitString::all(n) {
            let even = 0.5 * (mass + probs[r.amp_index()]);
            total += if strategy.table.gl_answer(&theta, &r) {
                mass - even
            } else {
                even
            };
        }
    }
    GameValueReport::exact(total / spec.challenge_count() as f64, ValueMethod::Born)
}

/// The win projector of one GL challenge for given measurement families:
/// `sum_b A_b^(theta,r) (x) P_b (x) Q_b` with `A_b` the outcome projectors
/// of `r . x = b`.
pub fn gl_game_projector(
    meas: &MeasurementFamilies,
    theta: &BitString,
    r: &BitString,
) -> Result<ComplexMatrix> {
    let spec = meas.spec();
    if spec.variant != GameVariant::Gl {
        return Err(Error::contract("gl_game_projector needs GL measurement families"));
    }
    if theta.len() != spec.n || r.len() != spec.n {
        return Err(Error::contract("challenge strings do not match the game size"));
    }
    let index = (theta.index() << spec.n) | r.index();
    let r_amp = r.amp_index();
    let a = outcome_projectors(theta, |x| (r_amp & x).count_ones() & 1 == 1)?;
    let dim = (1usize << spec.n) * meas.dim_b() * meas.dim_c();
    let mut op = ComplexMatrix::zeros(dim, dim)?;
    for b in 0..2 {
        let bc = meas.p(index)[b].kron(&meas.q(index)[b])?;
        op.add_assign_scaled(&a[b].kron(&bc)?, Complex64::new(1.0, 0.0))?;
    }
    Ok(op)
}

/// The challenge average of the win projector, for either game variant.
pub fn avg_game_operator(meas: &MeasurementFamilies) -> Result<ComplexMatrix> {
    let spec = meas.spec();
    if spec.n > 6 {
        return Err(Error::size(format!(
            "avg_game_operator supports n <= 6, got {}",
            spec.n
        )));
    }
    let count = spec.challenge_count();
    let dim = (1usize << spec.n) * meas.dim_b() * meas.dim_c();
    let mut op = ComplexMatrix::zeros(dim, dim)?;
    let coeff = Complex64::new(1.0 / count as f64, 0.0);
    for index in 0..count {
        let (theta, _) = spec.challenge(index);
        let a = outcome_projectors(&theta, |x| spec.target_bit(index, x))?;
        for b in 0..2 {
            let bc = meas.p(index)[b].kron(&meas.q(index)[b])?;
            op.add_assign_scaled(&a[b].kron(&bc)?, coeff)?;
        }
    }
    Ok(op)
}

/// Optimal guessing probability for fixed measurement families: the top
/// eigenvalue of the averaged win projector, optimizing over joint states.
pub fn p_opt_for_measurements(meas: &MeasurementFamilies) -> Result<f64> {
    let value = lambda_max(&avg_game_operator(meas)?)?;
    Ok(value.clamp(0.0, 1.0))
}

fn quantum_value(strategy: &QuantumStrategy, variant: GameVariant) -> Result<GameValueReport> {
    if strategy.spec().variant != variant {
        return Err(Error::contract("strategy variant does not match the requested game"));
    }
    let op = avg_game_operator(&strategy.measurements)?;
    let e = strategy.joint_state.expectation(&op)?;
    if e.im.abs() > 1e-10 {
        return Err(Error::contract(format!(
            "win probability has imaginary part {:.3e}",
            e.im
        )));
    }
    GameValueReport::exact(e.re, ValueMethod::Born)
}

/// Exact value of an entangled GL strategy.
pub fn gl_game_value_quantum(strategy: &QuantumStrategy) -> Result<GameValueReport> {
    quantum_value(strategy, GameVariant::Gl)
}

/// Exact value of an entangled XOR strategy.
pub fn xor_game_value_quantum(strategy: &QuantumStrategy) -> Result<GameValueReport> {
    quantum_value(strategy, GameVariant::Xor)
}

/// Exact value of any strategy, dispatching on kind and variant.
pub fn game_value(strategy: &Strategy) -> Result<GameValueReport> {
    match (strategy, strategy.spec().variant) {
        (Strategy::SemiClassical(s), GameVariant::Xor) => xor_game_value(s),
        (Strategy::SemiClassical(s), GameVariant::Gl) => gl_game_value_semiclassical(s),
        (Strategy::Quantum(s), GameVariant::Xor) => xor_game_value_quantum(s),
        (Strategy::Quantum(s), GameVariant::Gl) => gl_game_value_quantum(s),
    }
}
