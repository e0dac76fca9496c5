//! Coefficient sets `K = (k_1, ..., k_d)` for the MOD_p automaton.
//!
//! A [`CoefficientSet`] is an ordered multiset of residues together with
//! the recipe that produced it. Constructors live here (cyclic, random,
//! subset sums) and in the [`gap`] and [`aikps`] submodules.

mod aikps;
mod gap;

pub use aikps::{gen_aikps, gen_aikps_with_base, AikpsSet, LogBase};
pub use gap::{
    gap_theorem_generators, gen_gap, gen_gap_in, is_proper_gap, Ambient, GapFingerprint,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::zmod::{add_mod, mod_pow, primitive_root, PrimeModulus};

/// Largest generator list whose subset sums are enumerated.
pub const MAX_GENERATORS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Cyclic,
    Aikps,
    Gap,
    Random,
    Explicit,
    Optimized,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Cyclic => "cyclic",
            Method::Aikps => "aikps",
            Method::Gap => "gap",
            Method::Random => "random",
            Method::Explicit => "explicit",
            Method::Optimized => "optimized",
        }
    }
}

/// Method-specific provenance. Only the fields relevant to a method are set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub g: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub log_base: Option<LogBase>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tries: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub restarts: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sweeps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub evaluations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub epsilon: Option<f64>,
}

/// Ordered multiset of residues modulo a prime, with provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSet", into = "RawSet")]
pub struct CoefficientSet {
    p: PrimeModulus,
    method: Method,
    params: Params,
    coefficients: Vec<u64>,
    subset_sums: Option<(u64, Vec<u64>)>,
}

// Wire layout; field order is part of the file format.
#[derive(Serialize, Deserialize)]
struct RawSet {
    p: u64,
    method: Method,
    #[serde(default)]
    params: Params,
    coefficients: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    t0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    generators: Option<Vec<u64>>,
}

impl TryFrom<RawSet> for CoefficientSet {
    type Error = Error;

    fn try_from(raw: RawSet) -> Result<Self> {
        let p = PrimeModulus::new(raw.p)?;
        let mut set = CoefficientSet::new(p, raw.coefficients, raw.method, raw.params)?;
        if let Some(generators) = raw.generators {
            let t0 = raw.t0.unwrap_or(0);
            let expanded = expand_subset_sums(t0, &generators, p)?;
            if expanded.coefficients != set.coefficients {
                return Err(Error::InconsistentGenerators);
            }
            set.subset_sums = Some((t0, generators));
        } else if raw.t0.is_some() {
            return Err(Error::InconsistentGenerators);
        }
        Ok(set)
    }
}

impl From<CoefficientSet> for RawSet {
    fn from(set: CoefficientSet) -> RawSet {
        let (t0, generators) = match set.subset_sums {
            Some((t0, g)) => (Some(t0), Some(g)),
            None => (None, None),
        };
        RawSet {
            p: set.p.get(),
            method: set.method,
            params: set.params,
            coefficients: set.coefficients,
            t0,
            generators,
        }
    }
}

impl CoefficientSet {
    fn new(
        p: PrimeModulus,
        coefficients: Vec<u64>,
        method: Method,
        params: Params,
    ) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(&bad) = coefficients.iter().find(|&&k| k >= p.get()) {
            return Err(Error::OutOfRange {
                value: bad,
                p: p.get(),
            });
        }
        Ok(Self {
            p,
            method,
            params,
            coefficients,
            subset_sums: None,
        })
    }

    /// A user-supplied multiset.
    pub fn explicit(p: PrimeModulus, coefficients: Vec<u64>) -> Result<Self> {
        Self::new(p, coefficients, Method::Explicit, Params::default())
    }

    pub(crate) fn with_provenance(mut self, method: Method, params: Params) -> Self {
        self.method = method;
        self.params = params;
        self
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    pub fn modulus(&self) -> u64 {
        self.p.get()
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Offset `t0` and generator list when the set is a subset-sum expansion.
    pub fn subset_sums(&self) -> Option<(u64, &[u64])> {
        self.subset_sums.as_ref().map(|(t0, g)| (*t0, g.as_slice()))
    }

    /// Element-wise `k + c mod p`. Provenance becomes explicit.
    pub fn translate(&self, c: u64) -> Self {
        let p = self.modulus();
        let coefficients = self
            .coefficients
            .iter()
            .map(|&k| add_mod(k, c % p, p))
            .collect();
        Self::explicit(self.p, coefficients).expect("translation stays in range")
    }

    /// Element-wise `c * k mod p`. Provenance becomes explicit.
    pub fn dilate(&self, c: u64) -> Self {
        let p = self.modulus();
        let coefficients = self
            .coefficients
            .iter()
            .map(|&k| crate::zmod::mul_mod(k, c % p, p))
            .collect();
        Self::explicit(self.p, coefficients).expect("dilation stays in range")
    }

    /// True when no residue appears twice.
    pub fn is_distinct(&self) -> bool {
        self.first_repeat().is_none()
    }

    pub(crate) fn first_repeat(&self) -> Option<u64> {
        let mut sorted = self.coefficients.clone();
        sorted.sort_unstable();
        sorted.windows(2).find(|w| w[0] == w[1]).map(|w| w[0])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("coefficient sets always serialize")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// First `d` powers `g, g^2, ..., g^d` of the smallest primitive root.
pub fn gen_cyclic(p: PrimeModulus, d: usize) -> Result<CoefficientSet> {
    let order = p.get() - 1;
    if d == 0 {
        return Err(Error::EmptySet);
    }
    if d as u64 > order {
        return Err(Error::CyclicTooLong { d, order });
    }
    let g = primitive_root(p);
    let coefficients = (1..=d as u64).map(|i| mod_pow(g, i, p)).collect();
    let params = Params {
        g: Some(g),
        ..Params::default()
    };
    CoefficientSet::new(p, coefficients, Method::Cyclic, params)
}

/// `d` seeded uniform draws from `[1, p - 1]`, duplicates allowed.
pub fn gen_random(p: PrimeModulus, d: usize, seed: u64) -> Result<CoefficientSet> {
    if d == 0 {
        return Err(Error::EmptySet);
    }
    let mut rng = SplitMix64::new(seed);
    let coefficients = (0..d).map(|_| rng.range(1, p.get())).collect();
    let params = Params {
        seed: Some(seed),
        ..Params::default()
    };
    CoefficientSet::new(p, coefficients, Method::Random, params)
}

/// `{t0 + sum(S) mod p : S subset of T}`, indexed by bitmask (bit `i` picks `T[i]`).
pub fn expand_subset_sums(t0: u64, generators: &[u64], p: PrimeModulus) -> Result<CoefficientSet> {
    let n = p.get();
    if generators.len() > MAX_GENERATORS {
        return Err(Error::TooManyGenerators {
            m: generators.len(),
            max: MAX_GENERATORS,
        });
    }
    for &v in std::iter::once(&t0).chain(generators) {
        if v >= n {
            return Err(Error::OutOfRange { value: v, p: n });
        }
    }
    let mut sums = vec![t0];
    sums.reserve(1 << generators.len());
    for &t in generators {
        let shifted: Vec<u64> = sums.iter().map(|&s| add_mod(s, t, n)).collect();
        sums.extend(shifted);
    }
    let mut set = CoefficientSet::new(p, sums, Method::Explicit, Params::default())?;
    set.subset_sums = Some((t0, generators.to_vec()));
    Ok(set)
}

/// Pads to the next power of two (at least 2) by repeating the last coefficient.
/// Returns the padded set and how many entries were appended.
pub fn pad_to_power_of_two(set: &CoefficientSet) -> (CoefficientSet, usize) {
    let d = set.len();
    let target = d.next_power_of_two().max(2);
    if target == d {
        return (set.clone(), 0);
    }
    let last = *set.coefficients.last().expect("non-empty");
    let mut coefficients = set.coefficients.clone();
    coefficients.resize(target, last);
    let padded = CoefficientSet::new(set.p, coefficients, set.method, set.params.clone())
        .expect("padding keeps residues in range");
    (padded, target - d)
}
