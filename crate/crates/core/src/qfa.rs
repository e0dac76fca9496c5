//! State-vector simulation of the `2d`-state MOD_p automaton.
//!
//! Amplitudes are real and stored block-wise as
//! `(q_{1,0}, q_{1,1}, ..., q_{d,0}, q_{d,1})`. Reading a letter rotates
//! block `i` by `2 pi k_i / p`. The end-marker unitary only has to map the
//! initial state to `q_{1,0}`, so acceptance is `|<psi_0|psi>|^2` and the
//! unitary itself is never built.

use crate::analysis::{error_prob, phase, CompensatedSum};
use crate::coeffsets::CoefficientSet;
use crate::fmt::float17;
use crate::zmod::mul_mod;

#[derive(Debug, Clone, PartialEq)]
pub struct QfaState {
    p: u64,
    coefficients: Vec<u64>,
    rotations: Vec<(f64, f64)>,
    amplitudes: Vec<f64>,
    letters_read: u64,
}

impl QfaState {
    /// Automaton for arbitrary integer modulus `p >= 1`; primality is not
    /// needed for the dynamics.
    pub fn from_raw(p: u64, coefficients: &[u64]) -> Self {
        assert!(p >= 1 && !coefficients.is_empty());
        let rotations = coefficients
            .iter()
            .map(|&k| {
                let z = phase(k % p, p);
                (z.re, z.im)
            })
            .collect();
        let amp = 1.0 / (coefficients.len() as f64).sqrt();
        let amplitudes = coefficients.iter().flat_map(|_| [amp, 0.0]).collect();
        Self {
            p,
            coefficients: coefficients.to_vec(),
            rotations,
            amplitudes,
            letters_read: 0,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.coefficients.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn letters_read(&self) -> u64 {
        self.letters_read
    }

    pub fn norm_sqr(&self) -> f64 {
        let mut acc = CompensatedSum::default();
        for a in &self.amplitudes {
            acc.add(a * a);
        }
        acc.value()
    }

    fn rotate(&mut self, sign: f64) {
        for (block, &(c, s)) in self.amplitudes.chunks_exact_mut(2).zip(&self.rotations) {
            let s = sign * s;
            let (a0, a1) = (block[0], block[1]);
            block[0] = a0 * c - a1 * s;
            block[1] = a0 * s + a1 * c;
        }
    }

    /// Reads one letter `a`.
    pub fn step(&mut self) {
        self.rotate(1.0);
        self.letters_read += 1;
    }

    /// Undoes one [`step`](Self::step).
    pub fn unstep(&mut self) {
        self.rotate(-1.0);
        self.letters_read = self.letters_read.saturating_sub(1);
    }

    /// Probability of accepting after the right end-marker.
    pub fn accept_probability(&self) -> f64 {
        let mut overlap = CompensatedSum::default();
        for block in self.amplitudes.chunks_exact(2) {
            overlap.add(block[0]);
        }
        let inner = overlap.value() / (self.d() as f64).sqrt();
        inner * inner
    }
}

/// `|psi_0> = (1/sqrt d) sum_i |q_{i,0}>`.
pub fn initial_state(set: &CoefficientSet) -> QfaState {
    QfaState::from_raw(set.modulus(), set.coefficients())
}

/// Acceptance probability of `a^j`, computed by stepping `j` times.
pub fn run_word(set: &CoefficientSet, j: u64) -> f64 {
    let mut state = initial_state(set);
    for _ in 0..j {
        state.step();
    }
    state.accept_probability()
}

/// `(1/d sum_i cos(2 pi k_i j / p))^2`.
pub fn run_word_closed_form(set: &CoefficientSet, j: u64) -> f64 {
    error_prob(set, j % set.modulus())
}

/// Fingerprint amplitudes `(1/sqrt d)(cos, sin)(2 pi k_i j / p)` in block order.
pub fn fingerprint(set: &CoefficientSet, j: u64) -> Vec<f64> {
    let p = set.modulus();
    let amp = 1.0 / (set.len() as f64).sqrt();
    set.coefficients()
        .iter()
        .flat_map(|&k| {
            let z = phase(mul_mod(k, j % p, p), p);
            [amp * z.re, amp * z.im]
        })
        .collect()
}

/// Largest acceptance probability over rejected words `a^j`, `j` in `[1, p)`,
/// with the smallest such `j`.
pub fn max_error_sweep(set: &CoefficientSet) -> (f64, u64) {
    let mut state = initial_state(set);
    let mut best = (f64::NEG_INFINITY, 0);
    for j in 1..set.modulus() {
        state.step();
        let pr = state.accept_probability();
        if pr > best.0 {
            best = (pr, j);
        }
    }
    best
}

/// Acceptance probabilities for `j` in `range` as `j,accept_prob` CSV.
pub fn sweep_csv(set: &CoefficientSet, range: std::ops::Range<u64>) -> String {
    let mut out = String::from("j,accept_prob\n");
    let mut state = initial_state(set);
    for j in 0..range.end {
        if j >= range.start {
            out.push_str(&format!("{j},{}\n", float17(state.accept_probability())));
        }
        state.step();
    }
    out
}
