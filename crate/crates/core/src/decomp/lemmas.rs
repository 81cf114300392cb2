//! Counting and norm facts the operator split relies on: a signed count
//! over affine subcubes, the transform energy identity, and the
//! root-sum-of-squares bound on block matrices.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qcore::{fwht_in_place, operator_norm, ComplexMatrix};

/// Closed form of `sum over {x : r.x = b} of (-1)^(x.u)` on `N`-bit strings:
/// `2^(N-1)` when `u = 0`, `(-1)^b 2^(N-1)` when `u = r`, and 0 otherwise.
/// Requires `r != 0` (with `r = 0` the sum is over everything or nothing).
pub fn sum_xor(r: &BitString, u: &BitString, b: bool) -> Result<i64> {
    if r.len() != u.len() {
        return Err(Error::contract(format!(
            "r has {} bits but u has {}",
            r.len(),
            u.len()
        )));
    }
    if r.weight() == 0 {
        return Err(Error::contract("sum_xor needs r != 0"));
    }
    let half = 1i64 << (r.len() - 1);
    Ok(if u.weight() == 0 {
        half
    } else if u == r {
        if b {
            -half
        } else {
            half
        }
    } else {
        0
    })
}

/// The same sum by direct enumeration over all `2^N` strings; the oracle
/// for [`sum_xor`]. `N <= 16`, any `r`.
pub fn sum_xor_brute(r: &BitString, u: &BitString, b: bool) -> Result<i64> {
    if r.len() != u.len() {
        return Err(Error::contract(format!(
            "r has {} bits but u has {}",
            r.len(),
            u.len()
        )));
    }
    if r.len() > 16 {
        return Err(Error::size(format!(
            "sum_xor_brute enumerates 2^N terms, N <= 16; got N={}",
            r.len()
        )));
    }
    let (ri, ui) = (r.index(), u.index());
    let mut total = 0i64;
    for x in 0..1usize << r.len() {
        if ((x & ri).count_ones() & 1 == 1) != b {
            continue;
        }
        total += if (x & ui).count_ones() & 1 == 1 { -1 } else { 1 };
    }
    Ok(total)
}

/// Both sides of the transform energy identity for a real table `f` on
/// `{0,1}^N`: the left side `sum_i (sum_r (-1)^(i.r) f(r))^2` via the fast
/// transform, the right side `2^N sum_r f(r)^2` directly. `N <= 12`.
pub fn parseval_check(f: &[f64]) -> Result<(f64, f64)> {
    if f.len() > 1 << 12 {
        return Err(Error::size(format!(
            "parseval_check supports tables up to 2^12 entries, got {}",
            f.len()
        )));
    }
    let mut hat = f.to_vec();
    fwht_in_place(&mut hat)?;
    let lhs = hat.iter().map(|v| v * v).sum();
    let rhs = f.len() as f64 * f.iter().map(|v| v * v).sum::<f64>();
    Ok((lhs, rhs))
}

/// For a rectangular grid of equally sized blocks `M_ij`, returns
/// `(bound, actual)` with `bound = sqrt(sum_ij ||M_ij||^2)` and `actual`
/// the operator norm of the assembled matrix. The assembled norm can never
/// exceed the bound; a violation beyond 1e-9 is reported as an error since
/// it would mean the norm computation itself is broken.
pub fn block_norm_bound(blocks: &[Vec<ComplexMatrix>]) -> Result<(f64, f64)> {
    let grid_err = || Error::contract("block grid must be non-empty and rectangular");
    let rows = blocks.len();
    if rows == 0 || blocks[0].is_empty() {
        return Err(grid_err());
    }
    let cols = blocks[0].len();
    let (br, bc) = (blocks[0][0].rows(), blocks[0][0].cols());
    let mut assembled = ComplexMatrix::zeros(rows * br, cols * bc)?;
    let mut sum_sq = 0.0;
    for (bi, row) in blocks.iter().enumerate() {
        if row.len() != cols {
            return Err(grid_err());
        }
        for (bj, m) in row.iter().enumerate() {
            if m.rows() != br || m.cols() != bc {
                return Err(Error::contract(format!(
                    "block ({bi},{bj}) is {}x{}, expected {br}x{bc}",
                    m.rows(),
                    m.cols()
                )));
            }
            let norm = operator_norm(m)?;
            sum_sq += norm * norm;
            for i in 0..br {
                for j in 0..bc {
                    assembled.set(bi * br + i, bj * bc + j, m.get(i, j));
                }
            }
        }
    }
    let bound = sum_sq.sqrt();
    let actual = operator_norm(&assembled)?;
    if actual > bound + 1e-9 {
        return Err(Error::contract(format!(
            "assembled norm {actual:.12} exceeds the block bound {bound:.12}"
        )));
    }
    Ok((bound, actual))
}
