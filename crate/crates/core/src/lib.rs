//! Shallow quantum fingerprinting for the unary language MOD_p.
//!
//! The automaton for MOD_p runs `d` two-state rotations in superposition,
//! one per coefficient `k_i`, and rejects `a^x` (`x != 0 mod p`) with error
//! at most `eps(K) = max_x |sum_j e(k_j x / p)|^2 / d^2`. This crate builds
//! coefficient sets, evaluates `eps` exactly, simulates the automaton,
//! builds deep and shallow circuits that compute the same fingerprint, and
//! searches for low-error sets by coordinate descent.
//!
//! * [`zmod`]: primes, inverses, primitive roots.
//! * [`coeffsets`]: cyclic, AIKPS, GAP subset-sum and random sets.
//! * [`analysis`]: exponential sums, `eps`, additive energy, Fourier bias.
//! * [`qfa`]: state-vector automaton simulation.
//! * [`circuit`]: gate IR, builders, depth and CX cost, statevector, QASM.
//! * [`optimize`]: coordinate descent and the comparison experiment.
//! * [`cli`]: the `shallow-qfa` command-line front end.

pub mod analysis;
pub mod circuit;
pub mod cli;
pub mod coeffsets;
pub mod error;
pub mod fmt;
pub mod optimize;
pub mod qfa;
pub mod rng;
pub mod zmod;

pub use coeffsets::CoefficientSet;
pub use error::{Error, Result};
pub use zmod::PrimeModulus;
