//! Dense complex matrices, sized for exact enumeration work on a handful of
//! qubits rather than for large-scale linear algebra.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on matrix dimensions. Dense operators above this size have no
/// business in an exhaustive-enumeration tool.
pub const MAX_DIM: usize = 1 << 13;

/// Entrywise tolerance for accepting a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A dense row-major complex matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::contract("matrix dimensions must be positive"));
        }
        if rows > MAX_DIM || cols > MAX_DIM {
            return Err(Error::size(format!(
                "matrix of {rows}x{cols} exceeds the {MAX_DIM} per-side cap"
            )));
        }
        Ok(ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = ComplexMatrix::zeros(dim, dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = ComplexMatrix::zeros(r, c)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::contract(format!(
                    "row {i} has length {}, expected {c}",
                    row.len()
                )));
            }
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut m = ComplexMatrix::zeros(rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.cols + j] = z;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.cols + j] += z;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    fn same_shape(&self, other: &ComplexMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::contract(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        Ok(out)
    }

    /// `self += coeff * other`, the workhorse of every averaged-operator build.
    pub fn add_assign_scaled(&mut self, other: &ComplexMatrix, coeff: Complex64) -> Result<()> {
        self.same_shape(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += coeff * b;
        }
        Ok(())
    }

    /// `self += coeff * |v><w|`.
    pub fn add_assign_outer(&mut self, v: &[Complex64], w: &[Complex64], coeff: Complex64) -> Result<()> {
        if v.len() != self.rows || w.len() != self.cols {
            return Err(Error::contract(format!(
                "outer product of {}x{} into {}x{} matrix",
                v.len(),
                w.len(),
                self.rows,
                self.cols
            )));
        }
        for (i, vi) in v.iter().enumerate() {
            let c = coeff * vi;
            let row = &mut self.data[i * self.cols..(i + 1) * self.cols];
            for (entry, wj) in row.iter_mut().zip(w) {
                *entry += c * wj.conj();
            }
        }
        Ok(())
    }

    pub fn scale(&self, z: Complex64) -> ComplexMatrix {
        let mut out = self.clone();
        for a in &mut out.data {
            *a *= z;
        }
        out
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::contract(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let src = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix {
            rows: self.cols,
            cols: self.rows,
            data: vec![Complex64::new(0.0, 0.0); self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::contract(format!(
                "cannot apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        Ok(out)
    }

    /// Kronecker product; the left factor is the most significant index
    /// block, matching the first-qubit-leftmost layout of state vectors.
    pub fn kron(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        let rows = self
            .rows
            .checked_mul(other.rows)
            .filter(|&r| r <= MAX_DIM)
            .ok_or_else(|| Error::size(format!("kron rows {}x{} exceed cap", self.rows, other.rows)))?;
        let cols = self
            .cols
            .checked_mul(other.cols)
            .filter(|&c| c <= MAX_DIM)
            .ok_or_else(|| Error::size(format!("kron cols {}x{} exceed cap", self.cols, other.cols)))?;
        let mut out = ComplexMatrix::zeros(rows, cols)?;
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.data[i1 * self.cols + j1];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    let dst_row = (i1 * other.rows + i2) * cols + j1 * other.cols;
                    let src_row = i2 * other.cols;
                    for j2 in 0..other.cols {
                        out.data[dst_row + j2] = a * other.data[src_row + j2];
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::contract("trace of a non-square matrix"));
        }
        Ok((0..self.rows).map(|i| self.data[i * self.cols + i]).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation from conjugate symmetry; zero for an
    /// exactly Hermitian matrix.
    pub fn hermiticity_defect(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::contract("hermiticity defect of a non-square matrix"));
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self.data[i * self.cols + j] - self.data[j * self.cols + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        Ok(worst)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        matches!(self.hermiticity_defect(), Ok(d) if d <= tol)
    }
}

/// A square matrix checked to be Hermitian within [`HERMITIAN_TOL`] at
/// construction, so downstream eigenvalue routines can assume real spectra.
#[derive(Clone, Debug)]
pub struct HermitianOperator(ComplexMatrix);

impl HermitianOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::contract(format!(
                "Hermitian operator must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let defect = m.hermiticity_defect()?;
        if defect > HERMITIAN_TOL {
            return Err(Error::contract(format!(
                "matrix is not Hermitian: defect {defect:.3e} exceeds {HERMITIAN_TOL:.1e}"
            )));
        }
        Ok(HermitianOperator(m))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }
}
