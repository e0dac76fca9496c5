//! Explicit AIKPS sequences `{s * r^-1 mod p}`.

use serde::{Deserialize, Serialize};

use super::{CoefficientSet, Method, Params};
use crate::error::{Error, Result};
use crate::zmod::{is_prime, mod_inverse, mul_mod, PrimeModulus};

/// Base of the logarithm in the AIKPS thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    Natural,
}

impl LogBase {
    pub fn log(self, v: f64) -> f64 {
        match self {
            LogBase::Two => v.log2(),
            LogBase::Natural => v.ln(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AikpsSet {
    pub p: PrimeModulus,
    pub eps: f64,
    pub log_base: LogBase,
    /// Primes strictly inside `((log p)^(1+eps) / 2, (log p)^(1+eps))`, ascending.
    pub primes: Vec<u64>,
    /// `S = {1, ..., s_max}` with `s_max = floor((log p)^(1+2 eps))`.
    pub s_max: u64,
    /// `s * r^-1` ordered by `r`, then by `s`.
    pub coefficients: CoefficientSet,
}

impl AikpsSet {
    pub fn inverses(&self) -> Vec<u64> {
        self.primes
            .iter()
            .map(|&r| mod_inverse(r, self.p).expect("validated at construction"))
            .collect()
    }
}

/// AIKPS set with base-2 logarithms.
pub fn gen_aikps(p: PrimeModulus, eps: f64) -> Result<AikpsSet> {
    gen_aikps_with_base(p, eps, LogBase::Two)
}

pub fn gen_aikps_with_base(p: PrimeModulus, eps: f64, log_base: LogBase) -> Result<AikpsSet> {
    let n = p.get();
    if n < 5 || !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::AikpsParameters { p: n, eps });
    }
    let log_p = log_base.log(n as f64);
    let hi = log_p.powf(1.0 + eps);
    let lo = hi / 2.0;
    let primes: Vec<u64> = (lo.floor() as u64..=hi.ceil() as u64)
        .filter(|&r| is_prime(r) && (r as f64) > lo && (r as f64) < hi)
        .collect();
    if primes.is_empty() {
        return Err(Error::AikpsNoPrime { lo, hi });
    }
    if let Some(&r) = primes.iter().find(|&&r| r % n == 0) {
        return Err(Error::AikpsNotInvertible { r, p: n });
    }
    let s_max = log_p.powf(1.0 + 2.0 * eps).floor() as u64;
    if s_max == 0 {
        return Err(Error::AikpsParameters { p: n, eps });
    }
    let mut coefficients = Vec::with_capacity(primes.len() * s_max as usize);
    for &r in &primes {
        let inv = mod_inverse(r, p)?;
        coefficients.extend((1..=s_max).map(|s| mul_mod(s % n, inv, n)));
    }
    let params = Params {
        eps: Some(eps),
        log_base: Some(log_base),
        ..Params::default()
    };
    let coefficients =
        CoefficientSet::explicit(p, coefficients)?.with_provenance(Method::Aikps, params);
    Ok(AikpsSet {
        p,
        eps,
        log_base,
        primes,
        s_max,
        coefficients,
    })
}
