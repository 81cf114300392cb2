//! Complex linear algebra primitives shared by the game and decomposition
//! modules: dense matrices, state vectors, Pauli strings, and Hermitian
//! eigenvalue routines.

pub mod eigen;
pub mod matrix;
pub mod pauli;
pub mod state;
pub mod walsh;

pub use eigen::{hermitian_eigen, lambda_max, operator_norm, top_eigenpair, Eigensystem};
pub use matrix::{ComplexMatrix, HermitianOperator, HERMITIAN_TOL, MAX_DIM};
pub use pauli::{Pauli, PauliString};
pub use state::{StateVector, NORM_TOL};
pub use walsh::fwht_in_place;
