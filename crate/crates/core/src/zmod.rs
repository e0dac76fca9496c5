//! Modular arithmetic over a prime modulus.
//!
//! Products go through `u128`, so every routine is exact for moduli up to
//! `u64::MAX`. Primality uses a Miller-Rabin witness set that is
//! deterministic on the whole `u64` range.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A modulus verified to be prime at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Self(p))
        } else {
            Err(Error::Composite(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Bits needed to index `p` values, i.e. `log2 p` as a real number.
    pub fn log2(self) -> f64 {
        (self.0 as f64).log2()
    }
}

impl TryFrom<u64> for PrimeModulus {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PrimeModulus> for u64 {
    fn from(p: PrimeModulus) -> u64 {
        p.0
    }
}

impl std::fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

fn pow_mod_raw(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n == w {
            return true;
        }
        if n.is_multiple_of(w) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod_raw(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `base^exp mod p` by square-and-multiply.
pub fn mod_pow(base: u64, exp: u64, p: PrimeModulus) -> u64 {
    pow_mod_raw(base, exp, p.get())
}

/// Multiplicative inverse via Fermat's little theorem.
pub fn mod_inverse(a: u64, p: PrimeModulus) -> Result<u64> {
    let a = a % p.get();
    if a == 0 {
        return Err(Error::NoInverse { a, p: p.get() });
    }
    Ok(mod_pow(a, p.get() - 2, p))
}

/// Distinct prime factors of `n` by trial division, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q.saturating_mul(q) <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least `t >= 1` with `a^t = 1 (mod p)`.
pub fn element_order(a: u64, p: PrimeModulus) -> Result<u64> {
    let a = a % p.get();
    if a == 0 {
        return Err(Error::NoInverse { a, p: p.get() });
    }
    // The order divides p - 1: strip each prime factor while the power stays 1.
    let mut order = p.get() - 1;
    for q in prime_factors(p.get() - 1) {
        while order.is_multiple_of(q) && mod_pow(a, order / q, p) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Smallest primitive root modulo `p`; `1` for the trivial group at `p = 2`.
pub fn primitive_root(p: PrimeModulus) -> u64 {
    let n = p.get();
    if n == 2 {
        return 1;
    }
    let factors = prime_factors(n - 1);
    (2..n)
        .find(|&g| factors.iter().all(|&q| mod_pow(g, (n - 1) / q, p) != 1))
        .expect("every prime modulus has a primitive root")
}

/// All primes in `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}
