//! Exact spectral and additive-combinatorial analysis of coefficient sets.
//!
//! Trigonometric quantities are evaluated from the reduced residue
//! `(k * x) mod p`, so every phase argument lies in `[0, 2 pi)`. Additive
//! energy and representation counts are exact integers.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeffsets::CoefficientSet;
use crate::error::{Error, Result};
use crate::fmt::float17;
use crate::zmod::{add_mod, mul_mod};

pub type ComplexValue = Complex64;

/// Largest set accepted by the quadratic pair enumerations.
pub const MAX_PAIR_SET: usize = 1 << 16;

/// Absolute slack for the bias/energy inequalities.
pub const CHAIN_SLACK: f64 = 1e-9;

// Below this many phase terms the x-sweep stays sequential.
const PARALLEL_WORK: u64 = 1 << 16;

/// `e(r / p) = exp(2 pi i r / p)` for a reduced residue `r`.
#[inline]
pub fn phase(r: u64, p: u64) -> Complex64 {
    let theta = std::f64::consts::TAU * (r as f64) / (p as f64);
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

/// All phases `e(r / p)` for `r` in `[0, p)`.
#[derive(Debug, Clone)]
pub struct PhaseTable {
    p: u64,
    values: Vec<Complex64>,
}

impl PhaseTable {
    pub fn new(p: u64) -> Self {
        Self {
            p,
            values: (0..p).map(|r| phase(r, p)).collect(),
        }
    }

    #[inline]
    pub fn at(&self, r: u64) -> Complex64 {
        self.values[r as usize]
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    #[inline]
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(self) -> f64 {
        self.sum + self.carry
    }
}

fn exp_sum_raw(coefficients: &[u64], p: u64, x: u64, term: impl Fn(u64) -> Complex64) -> Complex64 {
    let x = x % p;
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for &k in coefficients {
        let z = term(mul_mod(k, x, p));
        re.add(z.re);
        im.add(z.im);
    }
    Complex64::new(re.value(), im.value())
}

/// `sum_j e(k_j x / p)`, multiplicity respected.
pub fn exp_sum(set: &CoefficientSet, x: u64) -> Complex64 {
    let p = set.modulus();
    exp_sum_raw(set.coefficients(), p, x, |r| phase(r, p))
}

/// [`exp_sum`] reading phases from a precomputed table.
pub fn exp_sum_with(table: &PhaseTable, set: &CoefficientSet, x: u64) -> Complex64 {
    exp_sum_raw(set.coefficients(), table.modulus(), x, |r| table.at(r))
}

/// Worst-case normalized character sum and the smallest `x` attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Epsilon {
    pub epsilon: f64,
    pub argmax_x: u64,
}

/// Max of `(value, x)` pairs, ties to the smaller `x`; order independent.
fn pick_max(a: (f64, u64), b: (f64, u64)) -> (f64, u64) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Max of `f(x)` over `x` in `[1, p)`; parallel for large work, same answer either way.
pub(crate) fn max_over_nonzero(
    p: u64,
    work_per_x: u64,
    f: impl Fn(u64) -> f64 + Sync,
) -> (f64, u64) {
    let init = (f64::NEG_INFINITY, u64::MAX);
    if p.saturating_mul(work_per_x) < PARALLEL_WORK {
        (1..p).map(|x| (f(x), x)).fold(init, pick_max)
    } else {
        (1..p)
            .into_par_iter()
            .map(|x| (f(x), x))
            .reduce(|| init, pick_max)
    }
}

/// `eps(K) = max_{x in [1, p)} |sum_j e(k_j x / p)|^2 / d^2`.
///
/// `x = 0` is excluded: it always contributes 1 and corresponds to accepted words.
pub fn epsilon_of(set: &CoefficientSet) -> Epsilon {
    let p = set.modulus();
    let table = PhaseTable::new(p);
    epsilon_with(&table, set)
}

/// [`epsilon_of`] reusing a phase table for the same modulus.
pub fn epsilon_with(table: &PhaseTable, set: &CoefficientSet) -> Epsilon {
    let p = set.modulus();
    debug_assert_eq!(table.modulus(), p);
    let d2 = (set.len() as f64).powi(2);
    let (epsilon, argmax_x) = max_over_nonzero(p, set.len() as u64, |x| {
        exp_sum_with(table, set, x).norm_sqr() / d2
    });
    Epsilon { epsilon, argmax_x }
}

/// `P_e = (1/d^2) (sum_i cos(2 pi k_i x / p))^2`, the acceptance probability of `a^x`.
pub fn error_prob(set: &CoefficientSet, x: u64) -> f64 {
    let p = set.modulus();
    let x = x % p;
    let mut acc = CompensatedSum::default();
    for &k in set.coefficients() {
        acc.add(phase(mul_mod(k, x, p), p).re);
    }
    (acc.value() / set.len() as f64).powi(2)
}

fn multiplicities(set: &CoefficientSet) -> Vec<(u64, u64)> {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &k in set.coefficients() {
        *counts.entry(k).or_default() += 1;
    }
    counts.into_iter().collect()
}

fn check_pair_sizes(a: &CoefficientSet, b: &CoefficientSet) -> Result<()> {
    if a.p() != b.p() {
        return Err(Error::InvalidParameter(format!(
            "sets live in different groups (p = {} and p = {})",
            a.p(),
            b.p()
        )));
    }
    for set in [a, b] {
        if set.len() > MAX_PAIR_SET {
            return Err(Error::InvalidParameter(format!(
                "set of size {} exceeds the pair-enumeration bound {MAX_PAIR_SET}",
                set.len()
            )));
        }
    }
    Ok(())
}

fn pair_counts(a: &CoefficientSet, b: &CoefficientSet) -> Result<HashMap<u64, u64>> {
    check_pair_sizes(a, b)?;
    let p = a.modulus();
    let (ma, mb) = (multiplicities(a), multiplicities(b));
    let mut out: HashMap<u64, u64> = HashMap::new();
    for &(x, cx) in &ma {
        for &(y, cy) in &mb {
            *out.entry(add_mod(x, y, p)).or_default() += cx * cy;
        }
    }
    Ok(out)
}

/// `R_n(A) = #{(a, b) in A x A : a + b = n}` for every `n` with a solution.
pub fn representation_counts(set: &CoefficientSet) -> Result<BTreeMap<u64, u64>> {
    Ok(pair_counts(set, set)?.into_iter().collect())
}

/// `E(A, B) = #{(a, b, a', b') : a + b = a' + b'} = sum_n R_n(A, B)^2`.
pub fn additive_energy(a: &CoefficientSet, b: &CoefficientSet) -> Result<u64> {
    Ok(pair_counts(a, b)?.values().map(|&r| r * r).sum())
}

/// `hat 1_A(xi) = (1/p) sum_{a in A} e(-xi a / p)`.
pub fn fourier_coefficient(set: &CoefficientSet, xi: u64) -> Complex64 {
    exp_sum(set, xi).conj() / set.modulus() as f64
}

/// `||A||_U = max_{xi != 0} |hat 1_A(xi)|`.
pub fn fourier_bias(set: &CoefficientSet) -> f64 {
    let p = set.modulus();
    let table = PhaseTable::new(p);
    fourier_bias_with(&table, set)
}

pub fn fourier_bias_with(table: &PhaseTable, set: &CoefficientSet) -> f64 {
    let p = set.modulus();
    max_over_nonzero(p, set.len() as u64, |xi| {
        exp_sum_with(table, set, xi).norm() / p as f64
    })
    .0
}

/// One side-by-side comparison in an [`AnalysisReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl BoundCheck {
    fn le(name: &str, lhs: f64, rhs: f64, slack: f64) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            holds: lhs <= rhs + slack,
        }
    }
}

/// Checks `||A||^4 <= E(A,A)/p^3 - (|A|/p)^4 <= ||A||^2 |A|/p` for a set
/// of distinct residues.
pub fn check_bias_energy_chain(set: &CoefficientSet) -> Result<Vec<BoundCheck>> {
    if let Some(value) = set.first_repeat() {
        return Err(Error::RepeatedElement { value });
    }
    let p = set.modulus() as f64;
    let bias = fourier_bias(set);
    let density = set.len() as f64 / p;
    let energy = additive_energy(set, set)? as f64;
    let middle = energy / p.powi(3) - density.powi(4);
    Ok(vec![
        BoundCheck::le("bias4_le_energy_excess", bias.powi(4), middle, CHAIN_SLACK),
        BoundCheck::le(
            "energy_excess_le_bias2_density",
            middle,
            bias * bias * density,
            CHAIN_SLACK,
        ),
    ])
}

/// Ceiling `sqrt(p / 2^m)` claimed for subset-sum sets of `m` generators.
/// Reported next to measured values; it is not a guarantee.
pub fn gap_epsilon_bound(p: u64, m: u32) -> f64 {
    (p as f64 / 2f64.powi(m as i32)).sqrt()
}

/// Summary of one coefficient set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub p: u64,
    pub d: usize,
    pub epsilon: f64,
    pub argmax_x: u64,
    pub energy: u64,
    pub bias: f64,
    pub density: f64,
    pub bounds: Vec<BoundCheck>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// Relative tolerance on `eps = ((p/d) bias)^2`.
pub const IDENTITY_RTOL: f64 = 1e-9;

pub fn analyze(set: &CoefficientSet) -> Result<AnalysisReport> {
    let p = set.modulus();
    let d = set.len();
    let table = PhaseTable::new(p);
    let eps = epsilon_with(&table, set);
    let bias = fourier_bias_with(&table, set);
    let energy = additive_energy(set, set)?;
    let density = d as f64 / p as f64;

    let identity = (p as f64 / d as f64 * bias).powi(2);
    let mut bounds = vec![BoundCheck {
        name: "epsilon_eq_scaled_bias_sq".into(),
        lhs: eps.epsilon,
        rhs: identity,
        holds: (eps.epsilon - identity).abs()
            <= IDENTITY_RTOL * identity.abs().max(eps.epsilon.abs()),
    }];
    if set.is_distinct() {
        bounds.extend(check_bias_energy_chain(set)?);
    }
    if let Some((_, generators)) = set.subset_sums() {
        let m = generators.len() as u32;
        bounds.push(BoundCheck::le(
            "energy_le_8_pow_m",
            energy as f64,
            8f64.powi(m as i32),
            0.0,
        ));
        bounds.push(BoundCheck::le(
            "epsilon_le_gap_claim",
            eps.epsilon,
            gap_epsilon_bound(p, m),
            0.0,
        ));
    }
    Ok(AnalysisReport {
        p,
        d,
        epsilon: eps.epsilon,
        argmax_x: eps.argmax_x,
        energy,
        bias,
        density,
        bounds,
    })
}

/// Full spectrum CSV: `x,re,im,magnitude2,error_prob` for every `x` in `[0, p)`.
pub fn spectrum_csv(set: &CoefficientSet) -> String {
    let p = set.modulus();
    let table = PhaseTable::new(p);
    let mut out = String::from("x,re,im,magnitude2,error_prob\n");
    for x in 0..p {
        let z = exp_sum_with(&table, set, x);
        out.push_str(&format!(
            "{x},{},{},{},{}\n",
            float17(z.re),
            float17(z.im),
            float17(z.norm_sqr()),
            float17(error_prob(set, x))
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffsets::{expand_subset_sums, gen_gap};
    use crate::zmod::PrimeModulus;

    fn set(p: u64, k: &[u64]) -> CoefficientSet {
        CoefficientSet::explicit(PrimeModulus::new(p).unwrap(), k.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn exp_sum_examples() {
        let z = exp_sum(&set(101, &[3, 50, 77]), 0);
        assert_eq!((z.re, z.im), (3.0, 0.0));
        let z = exp_sum(&set(3, &[1, 2]), 1);
        assert!(close(z.re, -1.0, 1e-15) && close(z.im, 0.0, 1e-15));
        let z = exp_sum(&set(13, &[0]), 7);
        assert_eq!((z.re, z.im), (1.0, 0.0));
    }

    #[test]
    fn epsilon_examples() {
        let e = epsilon_of(&set(7, &[0, 0, 0]));
        assert_eq!((e.epsilon, e.argmax_x), (1.0, 1));
        let e = epsilon_of(&set(3, &[1, 2]));
        assert!(close(e.epsilon, 0.25, 1e-15));
        assert_eq!(e.argmax_x, 1);
        let e = epsilon_of(&set(5, &[1, 2, 3, 4]));
        assert!(close(e.epsilon, 0.0625, 1e-15));
        let e = epsilon_of(&set(2, &[1]));
        assert_eq!(e.argmax_x, 1);
        assert!(close(e.epsilon, 1.0, 1e-15));
    }

    #[test]
    fn error_prob_examples() {
        assert_eq!(error_prob(&set(101, &[5, 9]), 0), 1.0);
        assert!(close(error_prob(&set(3, &[1]), 1), 0.25, 1e-15));
        assert!(close(error_prob(&set(3, &[1, 2]), 1), 0.25, 1e-15));
    }

    #[test]
    fn representation_count_examples() {
        assert_eq!(
            representation_counts(&set(5, &[0])).unwrap(),
            BTreeMap::from([(0, 1)])
        );
        assert_eq!(
            representation_counts(&set(5, &[0, 1])).unwrap(),
            BTreeMap::from([(0, 1), (1, 2), (2, 1)])
        );
        let f = gen_gap(PrimeModulus::new(101).unwrap(), 2, 5, 1000).unwrap();
        let counts = representation_counts(&f.expanded).unwrap();
        assert!(counts.values().all(|r| [1, 2, 4].contains(r)));
        assert_eq!(counts.values().sum::<u64>(), 16);
    }

    #[test]
    fn energy_examples() {
        assert_eq!(additive_energy(&set(5, &[0]), &set(5, &[0])).unwrap(), 1);
        let a = set(5, &[0, 1]);
        assert_eq!(additive_energy(&a, &a).unwrap(), 6);
        let f = gen_gap(PrimeModulus::new(1013).unwrap(), 3, 1, 1000).unwrap();
        assert_eq!(additive_energy(&f.expanded, &f.expanded).unwrap(), 216);
        assert!(additive_energy(&a, &set(7, &[1])).is_err());
    }

    #[test]
    fn energy_by_quadruple_enumeration() {
        let a = set(11, &[0, 1, 3, 3, 7]);
        let b = set(11, &[2, 5, 10]);
        let mut brute = 0u64;
        for &x in a.coefficients() {
            for &y in b.coefficients() {
                for &x2 in a.coefficients() {
                    for &y2 in b.coefficients() {
                        if (x + y) % 11 == (x2 + y2) % 11 {
                            brute += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(additive_energy(&a, &b).unwrap(), brute);
    }

    #[test]
    fn fourier_examples() {
        let a = set(7, &[1, 4, 4]);
        let c = fourier_coefficient(&a, 0);
        assert!(close(c.re, 3.0 / 7.0, 1e-15) && c.im == 0.0);
        let full = set(5, &[0, 1, 2, 3, 4]);
        assert!(fourier_coefficient(&full, 1).norm() < 1e-15);
        let c = fourier_coefficient(&set(13, &[0]), 6);
        assert!(close(c.re, 1.0 / 13.0, 1e-15));
    }

    #[test]
    fn bias_examples() {
        assert!(fourier_bias(&set(5, &[0, 1, 2, 3, 4])) < 1e-15);
        assert!(close(fourier_bias(&set(7, &[0])), 1.0 / 7.0, 1e-15));
        assert!(close(fourier_bias(&set(3, &[1, 2])), 1.0 / 3.0, 1e-15));
    }

    #[test]
    fn chain_examples() {
        for check in check_bias_energy_chain(&set(5, &[0, 1])).unwrap() {
            assert!(check.holds, "{check:?}");
        }
        let checks = check_bias_energy_chain(&set(7, &[0])).unwrap();
        assert!(close(checks[0].rhs, 1.0 / 343.0 - 1.0 / 2401.0, 1e-15));
        assert!(checks.iter().all(|c| c.holds));
        assert_eq!(
            check_bias_energy_chain(&set(7, &[2, 2])),
            Err(Error::RepeatedElement { value: 2 })
        );
    }

    #[test]
    fn gap_bound_examples() {
        assert!(close(
            gap_epsilon_bound(1013, 3),
            (1013.0f64 / 8.0).sqrt(),
            1e-12
        ));
        assert!(gap_epsilon_bound(1013, 3) > 11.25 && gap_epsilon_bound(1013, 3) < 11.26);
        assert_eq!(gap_epsilon_bound(8, 3), 1.0);
        assert!(close(gap_epsilon_bound(2, 10), 0.044194173824159216, 1e-15));
    }

    #[test]
    fn report_fields() {
        let p = PrimeModulus::new(101).unwrap();
        let a = expand_subset_sums(3, &[1, 10, 30], p).unwrap();
        let report = analyze(&a).unwrap();
        assert_eq!(report.d, 8);
        assert_eq!(report.energy, 216);
        assert!(report
            .bounds
            .iter()
            .any(|b| b.name == "epsilon_le_gap_claim"));
        assert!(report.bounds[0].holds);
        let json = report.to_json();
        let keys: Vec<&str> = [
            "\"p\"",
            "\"d\"",
            "\"epsilon\"",
            "\"argmax_x\"",
            "\"energy\"",
            "\"bias\"",
            "\"density\"",
            "\"bounds\"",
        ]
        .to_vec();
        let positions: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn spectrum_rows() {
        let csv = spectrum_csv(&set(5, &[1, 2]));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "x,re,im,magnitude2,error_prob");
        assert!(lines[1].starts_with("0,2.0000000000000000e0,"));
    }
}
