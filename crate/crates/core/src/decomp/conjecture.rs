//! Slice families and the two-term challenge average they feed.
//!
//! A joint state on `A (x) B (x) C` decomposes over the computational basis
//! of `A` as `|v> = sum_i |i> (x) |v_i>`; the pieces `|v_i>` form a *slice
//! family*. Sandwiching the unconditioned challenge average of the win
//! projector between such a state produces exactly two terms: a diagonal
//! one (same slice on both sides, conjectured to stay at or below 1/2 plus
//! an exponentially small excess) and a stripe one coupling slices whose
//! indices differ by the Hadamard part of `r`. [`conjecture_lhs`] evaluates
//! both terms by exact enumeration.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::strategy::{GameVariant, MeasurementFamilies};
use crate::qcore::{ComplexMatrix, StateVector};

/// Tolerance on the total squared length of a slice family.
pub const SLICE_NORM_TOL: f64 = 1e-12;

/// The `2^n` slices of a unit vector on `A (x) (B C)`, indexed by the
/// computational basis of `A` (amplitude order). Individual slices may have
/// any length; the squared lengths must sum to 1.
#[derive(Clone, PartialEq, Debug)]
pub struct SliceFamily {
    n: usize,
    dim_bc: usize,
    vectors: Vec<Vec<Complex64>>,
}

impl SliceFamily {
    pub fn new(n: usize, dim_bc: usize, vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        if n == 0 || n > 8 {
            return Err(Error::size(format!("slice families support 1 <= n <= 8, got {n}")));
        }
        if dim_bc == 0 {
            return Err(Error::contract("slice dimension must be positive"));
        }
        if vectors.len() != 1 << n {
            return Err(Error::contract(format!(
                "slice family has {} vectors, expected {}",
                vectors.len(),
                1 << n
            )));
        }
        if let Some(bad) = vectors.iter().position(|v| v.len() != dim_bc) {
            return Err(Error::contract(format!(
                "slice {bad} has length {}, expected {dim_bc}",
                vectors[bad].len()
            )));
        }
        let total: f64 = vectors
            .iter()
            .flat_map(|v| v.iter())
            .map(|z| z.norm_sqr())
            .sum();
        if (total - 1.0).abs() > SLICE_NORM_TOL {
            return Err(Error::contract(format!(
                "slice family squared lengths sum to {total}, expected 1"
            )));
        }
        Ok(SliceFamily { n, dim_bc, vectors })
    }

    /// Slices a unit vector on `A (x) (B C)` with `A` most significant.
    pub fn from_joint_state(n: usize, dim_bc: usize, state: &StateVector) -> Result<Self> {
        if n == 0 || n > 8 || state.dim() != (1usize << n) * dim_bc {
            return Err(Error::contract(format!(
                "joint state has dimension {}, expected {} for n={n}",
                state.dim(),
                (1usize << n.min(30)) * dim_bc
            )));
        }
        let vectors = state.amps().chunks(dim_bc).map(|c| c.to_vec()).collect();
        SliceFamily::new(n, dim_bc, vectors)
    }

    /// Slices for scalar guessers: each slice is one amplitude.
    pub fn semiclassical(state: &StateVector) -> Result<Self> {
        let n = state
            .num_qubits()
            .ok_or_else(|| Error::contract("state dimension is not a power of two"))?;
        SliceFamily::from_joint_state(n, 1, state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_bc(&self) -> usize {
        self.dim_bc
    }

    pub fn vector(&self, i: usize) -> &[Complex64] {
        &self.vectors[i]
    }

    /// Reassembles the slices into the joint unit vector.
    pub fn to_state(&self) -> Result<StateVector> {
        StateVector::new(self.vectors.iter().flatten().copied().collect())
    }
}

// --- JSON file format -----------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RawSliceFamily {
    n: usize,
    dim_bc: usize,
    vectors: Vec<Vec<[f64; 2]>>,
}

pub fn slice_family_from_json(text: &str) -> Result<SliceFamily> {
    let raw: RawSliceFamily =
        serde_json::from_str(text).map_err(|e| Error::input(format!("slice file: {e}")))?;
    let vectors = raw
        .vectors
        .iter()
        .map(|v| v.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    SliceFamily::new(raw.n, raw.dim_bc, vectors).map_err(|e| Error::input(e.to_string()))
}

pub fn slice_family_to_json(slices: &SliceFamily) -> String {
    let raw = RawSliceFamily {
        n: slices.n,
        dim_bc: slices.dim_bc,
        vectors: slices
            .vectors
            .iter()
            .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("slice serialization cannot fail")
}

/// The two terms of the unconditioned challenge-and-answer average.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct ConjectureTerms {
    /// Diagonal term; at most 1/2 for any input.
    pub term1: f64,
    /// Stripe term coupling slices offset by the Hadamard part of `r`.
    pub term2: f64,
    pub total: f64,
}

fn quad_form(m: &ComplexMatrix, v: &[Complex64], w: &[Complex64]) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for (i, vi) in v.iter().enumerate() {
        if vi.re == 0.0 && vi.im == 0.0 {
            continue;
        }
        let mut row = Complex64::new(0.0, 0.0);
        for (j, wj) in w.iter().enumerate() {
            row += m.get(i, j) * wj;
        }
        total += vi.conj() * row;
    }
    total
}

/// Evaluates both terms over uniform `(theta, r)` and a uniform answer bit:
///
/// ```text
/// term1 = E sum_i <v_i| P_b (x) Q_b |v_i>
/// term2 = E sum_i (-1)^(r_C . i_C + b) <v_i| P_b (x) Q_b |v_(i ^ d)>
/// ```
///
/// with `d` the Hadamard part of `r`. Their sum equals the expectation of
/// the full averaged win operator on the assembled state, so the total also
/// tracks the masked-set average within the masking odds.
pub fn conjecture_lhs(
    meas: &MeasurementFamilies,
    slices: &SliceFamily,
) -> Result<ConjectureTerms> {
    let spec = meas.spec();
    if spec.variant != GameVariant::Gl {
        return Err(Error::contract(
            "the two-term average is defined for the inner-product game",
        ));
    }
    if slices.n() != spec.n || slices.dim_bc() != meas.dim_b() * meas.dim_c() {
        return Err(Error::contract(format!(
            "slice family is ({}, {}) but the measurements need ({}, {})",
            slices.n(),
            slices.dim_bc(),
            spec.n,
            meas.dim_b() * meas.dim_c()
        )));
    }
    let dim_bc = slices.dim_bc();
    let ok = if dim_bc == 1 { spec.n <= 6 } else { spec.n <= 4 && dim_bc <= 16 };
    if !ok {
        return Err(Error::size(format!(
            "two-term average supports n <= 4 with dim_b*dim_c <= 16, or n <= 6 with \
             scalar guessers; got n={} and dim_b*dim_c={dim_bc}",
            spec.n
        )));
    }

    let dim_a = 1usize << spec.n;
    let mut sum1 = 0.0;
    let mut sum2 = Complex64::new(0.0, 0.0);
    for index in 0..spec.challenge_count() {
        let (theta, r) = spec.challenge(index);
        let r = r.expect("inner-product challenge");
        let delta = r.and(&theta).amp_index();
        let sign_mask = r.amp_index() & !theta.amp_index();
        for b in 0..2 {
            let k = meas.p(index)[b].kron(&meas.q(index)[b])?;
            let b_sign = if b == 1 { -1.0 } else { 1.0 };
            for i in 0..dim_a {
                let vi = slices.vector(i);
                sum1 += quad_form(&k, vi, vi).re;
                let sign = if (i & sign_mask).count_ones() & 1 == 1 { -b_sign } else { b_sign };
                sum2 += quad_form(&k, vi, slices.vector(i ^ delta)) * sign;
            }
        }
    }
    let norm = 0.5 / spec.challenge_count() as f64;
    if (sum2.im * norm).abs() >= 1e-9 {
        return Err(Error::contract(format!(
            "stripe term has imaginary part {:.3e}",
            sum2.im * norm
        )));
    }
    let term1 = sum1 * norm;
    let term2 = sum2.re * norm;
    Ok(ConjectureTerms {
        term1,
        term2,
        total: term1 + term2,
    })
}
