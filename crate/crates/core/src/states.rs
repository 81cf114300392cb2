//! States used by the parity-guessing attack and the bases they are measured
//! in.
//!
//! A challenge string `theta` assigns each qubit a measurement basis: `0`
//! selects the computational (Z) basis, `1` the Hadamard (X) basis. The
//! attack states are built in a third, circular basis
//!
//! ```text
//! |0Y> = (|0> + i|1>)/sqrt(2),    |1Y> = (|0> - i|1>)/sqrt(2),
//! ```
//!
//! whose tensor products sit at a fixed angle to every measurement basis the
//! referee can pick. That angle is what makes the guessing probability
//! `cos^2(pi/8)` challenge-independent.

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qcore::{Pauli, PauliString, StateVector};

/// The two attack-state families. They differ by the sign on the second
/// branch and favor complementary parity outcomes on half the challenges.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum AttackVariant {
    Phi,
    Psi,
}

impl AttackVariant {
    pub const ALL: [AttackVariant; 2] = [AttackVariant::Phi, AttackVariant::Psi];
}

fn check_same_len(a: &BitString, b: &BitString, what: &str) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::contract(format!(
            "{what}: lengths {} and {} differ",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// `|x^theta>`: qubit `k` is `|x_k>` when `theta_k = 0` and `H|x_k>` when
/// `theta_k = 1`. All amplitudes are real, either 0 or `2^(-|H|/2)` in
/// magnitude, where `|H|` is the number of Hadamard positions.
pub fn comp_basis_state(x: &BitString, theta: &BitString) -> Result<StateVector> {
    check_same_len(x, theta, "comp_basis_state")?;
    if x.is_empty() {
        return Err(Error::contract("comp_basis_state needs at least one qubit"));
    }
    let mut amps = vec![Complex64::new(1.0, 0.0)];
    for k in 0..x.len() {
        let (a0, a1) = match (theta.bit(k), x.bit(k)) {
            (false, false) => (1.0, 0.0),
            (false, true) => (0.0, 1.0),
            (true, false) => (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
            (true, true) => (FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
        };
        let mut next = Vec::with_capacity(amps.len() * 2);
        for amp in &amps {
            next.push(amp * a0);
            next.push(amp * a1);
        }
        amps = next;
    }
    StateVector::new(amps)
}

/// `|y^Y>`, the tensor product of circular-basis kets selected by `y`.
pub fn y_basis_state(y: &BitString) -> Result<StateVector> {
    if y.is_empty() {
        return Err(Error::contract("y_basis_state needs at least one qubit"));
    }
    let mut amps = vec![Complex64::new(1.0, 0.0)];
    for k in 0..y.len() {
        let i_part = if y.bit(k) { -FRAC_1_SQRT_2 } else { FRAC_1_SQRT_2 };
        let mut next = Vec::with_capacity(amps.len() * 2);
        for amp in &amps {
            next.push(amp * FRAC_1_SQRT_2);
            next.push(amp * Complex64::new(0.0, i_part));
        }
        amps = next;
    }
    StateVector::new(amps)
}

/// The attack state for label `y`:
///
/// ```text
/// |phi_y> = (|y^Y> + e^(i pi/4) |~y^Y>)/sqrt(2)
/// |psi_y> = (|y^Y> - e^(i pi/4) |~y^Y>)/sqrt(2)
/// ```
///
/// where `~y` is the bitwise complement.
pub fn attack_state(y: &BitString, variant: AttackVariant) -> Result<StateVector> {
    let head = y_basis_state(y)?;
    let tail = y_basis_state(&y.not())?;
    let sign = match variant {
        AttackVariant::Phi => 1.0,
        AttackVariant::Psi => -1.0,
    };
    let coeff = Complex64::from_polar(sign * FRAC_1_SQRT_2, FRAC_PI_4);
    let amps = head
        .amps()
        .iter()
        .zip(tail.amps())
        .map(|(a, b)| a * FRAC_1_SQRT_2 + coeff * b)
        .collect();
    StateVector::new(amps)
}

/// The parity observable of the measurement round: `Z` on computational
/// positions, `X` on Hadamard positions. Measuring `|x^theta>` returns
/// eigenvalue `(-1)^parity(x)`.
pub fn parity_observable(theta: &BitString) -> Result<PauliString> {
    if theta.is_empty() {
        return Err(Error::contract("parity_observable needs at least one qubit"));
    }
    let labels = (0..theta.len())
        .map(|k| if theta.bit(k) { Pauli::X } else { Pauli::Z })
        .collect();
    PauliString::new(labels)
}

/// The parity outcome an attack state is biased toward: measuring
/// `attack_state(y, variant)` in the `theta` basis yields a string of this
/// parity with probability exactly `cos^2(pi/8)`.
///
/// The rule depends only on `y . theta` and the Hamming weight of `theta`
/// modulo 4, because applying the parity observable to the two circular-basis
/// branches produces phases `(-1)^(y.theta) i^|theta|` that either add or
/// cancel against the `e^(i pi/4)` branch coefficient:
///
/// * `phi_y`: `y . theta` when `|theta| mod 4` is 0 or 1, flipped otherwise;
/// * `psi_y`: `y . theta` when `|theta| mod 4` is 2 or 3, flipped otherwise.
pub fn predicted_parity(y: &BitString, theta: &BitString, variant: AttackVariant) -> Result<bool> {
    check_same_len(y, theta, "predicted_parity")?;
    let base = y.dot(theta);
    let flip = match (variant, theta.weight() % 4) {
        (AttackVariant::Phi, 0 | 1) => false,
        (AttackVariant::Phi, _) => true,
        (AttackVariant::Psi, 2 | 3) => false,
        (AttackVariant::Psi, _) => true,
    };
    Ok(base ^ flip)
}

/// Coefficients of `v` in the `theta` basis: entry `x` (amplitude order) is
/// `<x^theta|v>`. Implemented as in-place Hadamard butterflies on the
/// positions where `theta_k = 1`.
pub fn rotate_to_basis(theta: &BitString, v: &StateVector) -> Result<StateVector> {
    let n = theta.len();
    if v.dim() != 1usize << n {
        return Err(Error::contract(format!(
            "rotate_to_basis: {n} positions vs dimension {}",
            v.dim()
        )));
    }
    let mut amps = v.amps().to_vec();
    for k in 0..n {
        if !theta.bit(k) {
            continue;
        }
        let stride = 1usize << (n - 1 - k);
        let mut base = 0;
        while base < amps.len() {
            for lo in base..base + stride {
                let hi = lo + stride;
                let a = amps[lo];
                let b = amps[hi];
                amps[lo] = (a + b) * FRAC_1_SQRT_2;
                amps[hi] = (a - b) * FRAC_1_SQRT_2;
            }
            base += 2 * stride;
        }
    }
    StateVector::new(amps)
}
