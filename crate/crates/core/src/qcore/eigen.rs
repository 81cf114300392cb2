//! Hermitian eigenvalues and operator norms.
//!
//! The heavy lifting is delegated to nalgebra's complex symmetric (Hermitian)
//! eigensolver; this module adds the Hermitian-validation contract, sorted
//! deterministic output, and the `sqrt(lambda_max(A^dagger A))` route to the
//! spectral norm. Accuracy of the largest eigenvalue is well under the 1e-10
//! the callers rely on for matrices of the size used here.

use nalgebra::{Complex, DMatrix};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::matrix::{ComplexMatrix, HermitianOperator};
use crate::qcore::state::StateVector;

/// QR sweep budget handed to the eigensolver. Dimensions in this crate stay
/// in the hundreds, for which convergence takes far fewer sweeps.
const MAX_EIG_ITERS: usize = 10_000;

/// Eigenvalues in ascending order with matching eigenvector columns.
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

fn to_nalgebra(m: &ComplexMatrix) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j))
}

/// Full eigendecomposition of a validated Hermitian operator.
pub fn hermitian_eigen(h: &HermitianOperator) -> Result<Eigensystem> {
    let dim = h.dim();
    let se = nalgebra::linalg::SymmetricEigen::try_new(to_nalgebra(h.matrix()), f64::EPSILON, MAX_EIG_ITERS)
        .ok_or(Error::IterationLimit(MAX_EIG_ITERS))?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(dim, dim, |i, j| {
        let c = se.eigenvectors[(i, order[j])];
        Complex64::new(c.re, c.im)
    })?;
    Ok(Eigensystem { values, vectors })
}

/// Largest eigenvalue of a Hermitian matrix.
///
/// The input is checked for Hermiticity first; callers that already hold a
/// [`HermitianOperator`] can use [`hermitian_eigen`] directly.
pub fn lambda_max(m: &ComplexMatrix) -> Result<f64> {
    let h = HermitianOperator::new(m.clone())?;
    let eig = hermitian_eigen(&h)?;
    Ok(*eig.values.last().expect("dimension is positive"))
}

/// Largest eigenvalue together with a unit eigenvector.
pub fn top_eigenpair(m: &ComplexMatrix) -> Result<(f64, StateVector)> {
    let h = HermitianOperator::new(m.clone())?;
    let eig = hermitian_eigen(&h)?;
    let dim = h.dim();
    let top = dim - 1;
    let column: Vec<Complex64> = (0..dim).map(|i| eig.vectors.get(i, top)).collect();
    Ok((eig.values[top], StateVector::normalized(column)?))
}

/// Spectral norm `||A|| = sqrt(lambda_max(A^dagger A))`, defined for any
/// rectangular matrix.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    // The Gram matrix on the smaller side has the same nonzero spectrum.
    let gram = if m.rows() <= m.cols() {
        m.matmul(&m.dagger())?
    } else {
        m.dagger().matmul(m)?
    };
    let top = lambda_max(&gram)?;
    // Rounding can push the smallest Gram eigenvalues slightly negative; the
    // largest only matters here, and for the zero matrix it may be -0.0.
    Ok(top.max(0.0).sqrt())
}
