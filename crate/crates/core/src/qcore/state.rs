//! Normalized complex vectors. Most states here live on `n` qubits, but the
//! tripartite game states have dimension `2^n * dimB * dimC`, so the type
//! does not insist on power-of-two lengths.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::matrix::ComplexMatrix;

/// How far from 1 a squared norm may be at construction time.
pub const NORM_TOL: f64 = 1e-10;

#[derive(Clone, PartialEq, Debug)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized within [`NORM_TOL`].
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::contract("state vector must have positive dimension"));
        }
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::contract(format!(
                "state vector has squared norm {norm_sqr:.12}, expected 1"
            )));
        }
        Ok(StateVector { amps })
    }

    /// Normalizes and wraps; fails on the zero vector.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr <= 0.0 {
            return Err(Error::contract("cannot normalize the zero vector"));
        }
        let inv = 1.0 / norm_sqr.sqrt();
        for a in &mut amps {
            *a *= inv;
        }
        Ok(StateVector { amps })
    }

    /// The computational basis vector `|index>` in the given dimension.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::contract(format!("basis index {index} out of range for dim {dim}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// `Some(n)` when the dimension is exactly `2^n`.
    pub fn num_qubits(&self) -> Option<usize> {
        let d = self.amps.len();
        d.is_power_of_two().then(|| d.trailing_zeros() as usize)
    }

    #[inline]
    pub fn amp(&self, i: usize) -> Complex64 {
        self.amps[i]
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// `<self|other>`, conjugating `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::contract(format!(
                "inner product of dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|`; equals 1 exactly when the states agree up to a
    /// global phase.
    pub fn overlap_abs(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// `<self| M |self>`.
    pub fn expectation(&self, m: &ComplexMatrix) -> Result<Complex64> {
        let mv = m.apply(&self.amps)?;
        Ok(self
            .amps
            .iter()
            .zip(&mv)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Tensor product, `self` as the most significant factor.
    pub fn kron(&self, other: &StateVector) -> Result<StateVector> {
        let dim = self.dim().checked_mul(other.dim()).ok_or_else(|| Error::size("kron overflow"))?;
        let mut amps = Vec::with_capacity(dim);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector { amps })
    }
}
