//! Pauli strings with a tracked scalar phase in `{1, i, -1, -i}`.
//!
//! The conventions are the textbook ones: `X|b> = |b^1>`, `Z|b> = (-1)^b |b>`,
//! `Y|b> = i(-1)^b |b^1>`. Qubit 0 of a string is the leftmost tensor factor
//! and therefore the most significant bit of an amplitude index.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::matrix::ComplexMatrix;
use crate::qcore::state::StateVector;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// (x, z) exponents in the `i^(x z) X^x Z^z` normal form.
    fn xz(self) -> (u8, u8) {
        match self {
            Pauli::I => (0, 0),
            Pauli::X => (1, 0),
            Pauli::Y => (1, 1),
            Pauli::Z => (0, 1),
        }
    }

    fn from_xz(x: u8, z: u8) -> Pauli {
        match (x, z) {
            (0, 0) => Pauli::I,
            (1, 0) => Pauli::X,
            (1, 1) => Pauli::Y,
            (0, 1) => Pauli::Z,
            _ => unreachable!("exponents are bits"),
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let rows = match self {
            Pauli::I => [[one, z], [z, one]],
            Pauli::X => [[z, one], [one, z]],
            Pauli::Y => [[z, -i], [i, z]],
            Pauli::Z => [[one, z], [z, -one]],
        };
        ComplexMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]).expect("2x2 build")
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        })
    }
}

/// A phase times a tensor product of single-qubit Paulis.
///
/// The phase is stored as a power of `i`, which is closed under products and
/// keeps composition exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PauliString {
    labels: Vec<Pauli>,
    /// Phase exponent k, meaning a scalar factor of `i^k`, with k in 0..4.
    i_power: u8,
}

impl PauliString {
    pub fn new(labels: Vec<Pauli>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::contract("Pauli string must act on at least one qubit"));
        }
        Ok(PauliString { labels, i_power: 0 })
    }

    pub fn with_phase(labels: Vec<Pauli>, i_power: u8) -> Result<Self> {
        let mut p = PauliString::new(labels)?;
        p.i_power = i_power % 4;
        Ok(p)
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Pauli] {
        &self.labels
    }

    pub fn phase(&self) -> Complex64 {
        match self.i_power {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// Hermitian exactly when the phase is real.
    pub fn is_hermitian(&self) -> bool {
        self.i_power % 2 == 0
    }

    pub fn dagger(&self) -> PauliString {
        PauliString {
            labels: self.labels.clone(),
            i_power: (4 - self.i_power) % 4,
        }
    }

    /// The matrix product `self * other`, with `other` acting first.
    pub fn compose(&self, other: &PauliString) -> Result<PauliString> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::contract(format!(
                "composing Pauli strings on {} and {} qubits",
                self.num_qubits(),
                other.num_qubits()
            )));
        }
        let mut i_power = self.i_power + other.i_power;
        let mut labels = Vec::with_capacity(self.labels.len());
        for (&a, &b) in self.labels.iter().zip(&other.labels) {
            let (x1, z1) = a.xz();
            let (x2, z2) = b.xz();
            let (x3, z3) = (x1 ^ x2, z1 ^ z2);
            // i^(x1 z1) X^x1 Z^z1 i^(x2 z2) X^x2 Z^z2
            //   = i^(x1 z1 + x2 z2) (-1)^(z1 x2) X^x3 Z^z3
            //   = i^(x1 z1 + x2 z2 + 2 z1 x2 - x3 z3) * P(x3, z3)
            i_power += x1 * z1 + x2 * z2 + 2 * z1 * x2 + 3 * x3 * z3;
            labels.push(Pauli::from_xz(x3, z3));
        }
        Ok(PauliString {
            labels,
            i_power: i_power % 4,
        })
    }

    /// Applies the string to a state in one pass over the amplitudes.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        let n = self.num_qubits();
        let dim = v.dim();
        if dim != 1usize << n {
            return Err(Error::contract(format!(
                "Pauli string on {n} qubits applied to dimension {dim}"
            )));
        }
        let mut xmask = 0usize;
        let mut ymask = 0usize;
        let mut zmask = 0usize;
        for (k, p) in self.labels.iter().enumerate() {
            let bit = 1usize << (n - 1 - k);
            match p {
                Pauli::I => {}
                Pauli::X => xmask |= bit,
                Pauli::Y => ymask |= bit,
                Pauli::Z => zmask |= bit,
            }
        }
        let flip = xmask | ymask;
        let sign_mask = zmask | ymask;
        let base = self.phase()
            * match ymask.count_ones() % 4 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (j, amp) in v.amps().iter().enumerate() {
            let coeff = if (j & sign_mask).count_ones() % 2 == 0 {
                base
            } else {
                -base
            };
            out[j ^ flip] = coeff * amp;
        }
        // A Pauli string is unitary, so the result is normalized whenever the
        // input is; wrap without re-checking to keep this exact.
        Ok(StateVector::new(out).expect("Pauli application preserves the norm"))
    }

    /// Dense matrix form; limited to 13 qubits by the kron size cap.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let mut m = self.labels[0].matrix();
        for p in &self.labels[1..] {
            m = m.kron(&p.matrix())?;
        }
        Ok(m.scale(self.phase()))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.i_power {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        })?;
        for p in &self.labels {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
