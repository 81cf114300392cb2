//! Exact and Monte Carlo analysis of monogamy-of-entanglement parity games.
//!
//! Two games are covered. In both, a referee measures `n` qubits supplied by
//! Alice, choosing for each qubit the computational or Hadamard basis
//! according to a uniformly random string `theta`, and two cooperating
//! guessers (Bob and Charlie) must simultaneously predict a bit of the
//! outcome string `x`:
//!
//! * the **XOR game** asks for `parity(x)`;
//! * the **inner-product game** additionally draws `r` uniformly and asks
//!   for `r . x mod 2`.
//!
//! The crate provides the optimal XOR attack states and their exact value
//! `cos^2(pi/8)`, exhaustive and alternating searches over answer tables,
//! Monte Carlo simulation of both games, and the operator decomposition
//! machinery used to bound the inner-product game: the averaged win
//! projector restricted to challenges where the guessed bit is not fixed by
//! the basis splits into a diagonal half and a block part whose norm decays
//! like `cos(pi/8)^n`.
//!
//! Entry points by module:
//!
//! * [`qcore`]: matrices, state vectors, Pauli strings, eigenvalues;
//! * [`states`]: measurement bases, attack states, parity bookkeeping;
//! * [`games`]: strategies, exact values, simulation, file formats;
//! * [`decomp`]: challenge sets, the two-part operator split, norm bounds;
//! * [`search`]: exhaustive and alternating strategy searches.

pub mod bits;
pub mod decomp;
pub mod error;
pub mod games;
pub mod qcore;
pub mod search;
pub mod states;

pub use bits::BitString;
pub use error::{Error, Result};
