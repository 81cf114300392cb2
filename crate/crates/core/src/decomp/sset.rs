//! The masked challenge set and its exact probability.
//!
//! A challenge `(theta, r)` of the inner-product game is *masked* when at
//! least one qubit is measured in the Hadamard basis and `r` is nonzero on
//! those positions. Away from this set the target bit is determined by the
//! computational-basis part of the outcome alone, so the operator split in
//! [`super::wsplit`] conditions on it.

use num_rational::Ratio;

use crate::bits::BitString;
use crate::error::{Error, Result};

/// Largest `n` for which the set is enumerated exhaustively (`4^n` pairs).
pub const MAX_ENUM_N: usize = 10;

/// True when `theta` has a Hadamard position and `r` is nonzero there.
pub fn in_s(theta: &BitString, r: &BitString) -> Result<bool> {
    if theta.len() != r.len() {
        return Err(Error::contract(format!(
            "theta has {} bits but r has {}",
            theta.len(),
            r.len()
        )));
    }
    Ok(theta.weight() > 0 && r.and(theta).weight() > 0)
}

/// The masked challenge pairs at a fixed size, with their exact count.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct ChallengeSet {
    n: usize,
    members: u64,
}

impl ChallengeSet {
    /// Counts the members by enumerating all `4^n` pairs. `1 <= n <= 10`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ENUM_N {
            return Err(Error::size(format!(
                "challenge set enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}"
            )));
        }
        let mut members = 0u64;
        for theta in BitString::all(n) {
            for r in BitString::all(n) {
                if in_s(&theta, &r)? {
                    members += 1;
                }
            }
        }
        Ok(ChallengeSet { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of masked pairs.
    pub fn member_count(&self) -> u64 {
        self.members
    }

    /// Total number of challenge pairs, `4^n`.
    pub fn pair_count(&self) -> u64 {
        1u64 << (2 * self.n)
    }

    pub fn contains(&self, theta: &BitString, r: &BitString) -> Result<bool> {
        if theta.len() != self.n {
            return Err(Error::contract(format!(
                "challenge has {} bits but the set was built for n={}",
                theta.len(),
                self.n
            )));
        }
        in_s(theta, r)
    }

    /// Exact probability that a uniform pair is masked.
    pub fn prob_s(&self) -> Ratio<u64> {
        Ratio::new(self.members, self.pair_count())
    }

    /// Exact odds against membership, `(1 - prob) / prob`.
    pub fn delta_n(&self) -> Ratio<u64> {
        Ratio::new(self.pair_count() - self.members, self.members)
    }

    pub fn prob_s_f64(&self) -> f64 {
        self.members as f64 / self.pair_count() as f64
    }

    pub fn delta_n_f64(&self) -> f64 {
        (self.pair_count() - self.members) as f64 / self.members as f64
    }
}

/// Exact membership probability at size `n`, by enumeration.
pub fn prob_s(n: usize) -> Result<Ratio<u64>> {
    Ok(ChallengeSet::new(n)?.prob_s())
}

/// The enumerated probability next to two candidate closed forms, with a
/// match flag for each.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct ProbSReport {
    pub n: usize,
    /// `|S| / 4^n` from the enumeration; the value used everywhere else.
    pub enumerated: Ratio<u64>,
    /// `1 - 2^-n`.
    pub one_minus_half_pow: Ratio<u64>,
    /// `1 - (3/4)^n`.
    pub one_minus_three_quarters_pow: Ratio<u64>,
    pub matches_half_pow: bool,
    pub matches_three_quarters_pow: bool,
}

pub fn prob_s_report(n: usize) -> Result<ProbSReport> {
    let enumerated = prob_s(n)?;
    let pow2 = 1u64 << n;
    let pow3 = 3u64.pow(n as u32);
    let pow4 = 1u64 << (2 * n);
    let one_minus_half_pow = Ratio::new(pow2 - 1, pow2);
    let one_minus_three_quarters_pow = Ratio::new(pow4 - pow3, pow4);
    Ok(ProbSReport {
        n,
        enumerated,
        one_minus_half_pow,
        one_minus_three_quarters_pow,
        matches_half_pow: enumerated == one_minus_half_pow,
        matches_three_quarters_pow: enumerated == one_minus_three_quarters_pow,
    })
}
