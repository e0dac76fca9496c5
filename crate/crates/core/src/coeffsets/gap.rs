//! Subset-sum fingerprints built from proper generalized arithmetic progressions.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{expand_subset_sums, CoefficientSet, Method, Params, MAX_GENERATORS};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::zmod::{add_mod, mul_mod, PrimeModulus};

/// Group in which the `3^m` combinations of `B` must be distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    #[default]
    ModP,
    Integers,
}

/// Offset, generators, their subset-sum expansion, and the properness
/// certificate of `B = {2 t0 + sum n_i t_i : n_i in {0, 1, 2}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapFingerprint {
    pub p: PrimeModulus,
    pub t0: u64,
    pub generators: Vec<u64>,
    pub expanded: CoefficientSet,
    pub proper: bool,
    pub ambient: Ambient,
    /// Candidates drawn before a proper `B` was found.
    pub tries: u64,
}

impl GapFingerprint {
    pub fn m(&self) -> usize {
        self.generators.len()
    }
}

/// Generator count `ceil(log2 p - 2 log2 eps)` that the shallow-fingerprint
/// theorem prescribes for target error `eps`.
pub fn gap_theorem_generators(p: PrimeModulus, eps: f64) -> usize {
    (p.log2() - 2.0 * eps.log2()).ceil().max(0.0) as usize
}

fn pow_saturating(base: u64, exp: usize) -> u64 {
    (0..exp).fold(1u64, |acc, _| acc.saturating_mul(base))
}

/// Pairwise distinctness with early exit; `universe` bounds the values.
fn all_distinct(values: impl Iterator<Item = u64>, universe: u64) -> bool {
    const BITSET_LIMIT: u64 = 1 << 28;
    if universe <= BITSET_LIMIT {
        let mut seen = vec![0u64; universe.div_ceil(64) as usize];
        for v in values {
            let (word, bit) = ((v / 64) as usize, v % 64);
            if seen[word] >> bit & 1 == 1 {
                return false;
            }
            seen[word] |= 1 << bit;
        }
        true
    } else {
        let mut seen = HashSet::new();
        values.into_iter().all(|v| seen.insert(v))
    }
}

/// Odometer over `{0..bound}^m`, yielding `offset + sum n_i t_i` in the
/// requested ambient group.
struct Combinations<'a> {
    generators: &'a [u64],
    digits: Vec<u64>,
    current: u64,
    bound: u64,
    modulus: Option<u64>,
    done: bool,
}

impl Iterator for Combinations<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let out = self.current;
        let mut i = 0;
        loop {
            if i == self.generators.len() {
                self.done = true;
                break;
            }
            let t = self.generators[i];
            if self.digits[i] + 1 < self.bound {
                self.digits[i] += 1;
                self.current = match self.modulus {
                    Some(n) => add_mod(self.current, t, n),
                    None => self.current + t,
                };
                break;
            }
            // Roll this digit back to zero.
            self.current = match self.modulus {
                Some(n) => add_mod(self.current, n - mul_mod(t, self.bound - 1, n), n),
                None => self.current - t * (self.bound - 1),
            };
            self.digits[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// True iff all `bound^m` values `2 t0 + sum n_i t_i` (`0 <= n_i < bound`)
/// are pairwise distinct in the ambient group.
pub fn is_proper_gap(
    t0: u64,
    generators: &[u64],
    bound: u64,
    p: PrimeModulus,
    ambient: Ambient,
) -> Result<bool> {
    let m = generators.len();
    if m == 0 {
        return Err(Error::InvalidParameter(
            "GAP needs at least one generator".into(),
        ));
    }
    if m > MAX_GENERATORS || pow_saturating(bound, m) > pow_saturating(3, MAX_GENERATORS) {
        return Err(Error::TooManyGenerators {
            m,
            max: MAX_GENERATORS,
        });
    }
    if bound < 2 {
        return Err(Error::InvalidParameter(format!(
            "GAP bound must be at least 2, got {bound}"
        )));
    }
    let n = p.get();
    let count = pow_saturating(bound, m);
    let (offset, modulus, universe) = match ambient {
        Ambient::ModP => {
            if count > n {
                return Ok(false);
            }
            (mul_mod(2, t0 % n, n), Some(n), n)
        }
        Ambient::Integers => {
            let offset = 2 * t0;
            let span = offset + generators.iter().map(|&t| t * (bound - 1)).sum::<u64>() + 1;
            (offset, None, span)
        }
    };
    let combos = Combinations {
        generators,
        digits: vec![0; m],
        current: offset,
        bound,
        modulus,
        done: false,
    };
    Ok(all_distinct(combos, universe))
}

/// Seeded rejection search for `(t0, T)` with `B` proper in `Z_p`.
pub fn gen_gap(p: PrimeModulus, m: usize, seed: u64, max_tries: u64) -> Result<GapFingerprint> {
    gen_gap_in(p, m, seed, max_tries, Ambient::ModP)
}

/// [`gen_gap`] with an explicit ambient group for the properness check.
///
/// Each try draws `t0` uniformly from `[0, p)`, then `t_1..t_m` uniformly
/// from `[1, p)`, all from one SplitMix64 stream seeded with `seed`.
pub fn gen_gap_in(
    p: PrimeModulus,
    m: usize,
    seed: u64,
    max_tries: u64,
    ambient: Ambient,
) -> Result<GapFingerprint> {
    let n = p.get();
    if m == 0 {
        return Err(Error::InvalidParameter(
            "GAP needs at least one generator".into(),
        ));
    }
    if ambient == Ambient::ModP && pow_saturating(3, m) > n {
        return Err(Error::GapUnsatisfiable { m, p: n });
    }
    if m > MAX_GENERATORS {
        return Err(Error::TooManyGenerators {
            m,
            max: MAX_GENERATORS,
        });
    }
    let mut rng = SplitMix64::new(seed);
    for tries in 1..=max_tries {
        let t0 = rng.below(n);
        let generators: Vec<u64> = (0..m).map(|_| rng.range(1, n)).collect();
        if !is_proper_gap(t0, &generators, 3, p, ambient)? {
            continue;
        }
        let params = Params {
            seed: Some(seed),
            tries: Some(tries),
            ..Params::default()
        };
        let expanded = expand_subset_sums(t0, &generators, p)?.with_provenance(Method::Gap, params);
        return Ok(GapFingerprint {
            p,
            t0,
            generators,
            expanded,
            proper: true,
            ambient,
            tries,
        });
    }
    Err(Error::NoProperGap { tries: max_tries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    /// Direct enumeration through base-3 digits.
    fn proper_brute(t0: u64, t: &[u64], p: u64, modp: bool) -> bool {
        let m = t.len() as u32;
        let mut vals: Vec<u64> = (0..3u64.pow(m))
            .map(|mut code| {
                let mut v = 2 * t0;
                for &ti in t {
                    v += (code % 3) * ti;
                    code /= 3;
                }
                if modp {
                    v % p
                } else {
                    v
                }
            })
            .collect();
        vals.sort_unstable();
        vals.windows(2).all(|w| w[0] != w[1])
    }

    #[test]
    fn properness_examples() {
        assert!(is_proper_gap(0, &[1, 3], 3, pm(11), Ambient::ModP).unwrap());
        assert!(!is_proper_gap(0, &[1, 1], 3, pm(11), Ambient::ModP).unwrap());
        assert!(!is_proper_gap(0, &[1, 3, 9], 3, pm(13), Ambient::ModP).unwrap());
        assert!(is_proper_gap(0, &[1, 3, 9], 3, pm(13), Ambient::Integers).unwrap());
        assert!(is_proper_gap(0, &[1; 17], 3, pm(13), Ambient::ModP).is_err());
    }

    #[test]
    fn properness_matches_enumeration() {
        let mut rng = SplitMix64::new(3);
        for p in [29u64, 31, 101, 257] {
            for m in 1..=4usize {
                for _ in 0..40 {
                    let t0 = rng.below(p);
                    let t: Vec<u64> = (0..m).map(|_| rng.range(1, p)).collect();
                    for (ambient, modp) in [(Ambient::ModP, true), (Ambient::Integers, false)] {
                        assert_eq!(
                            is_proper_gap(t0, &t, 3, pm(p), ambient).unwrap(),
                            proper_brute(t0, &t, p, modp),
                            "p={p} t0={t0} t={t:?} {ambient:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn seeded_search_finds_proper_gap() {
        let f = gen_gap(pm(1013), 3, 1, 1000).unwrap();
        assert!(f.proper);
        assert_eq!(f.expanded.len(), 8);
        assert!(is_proper_gap(f.t0, &f.generators, 3, f.p, Ambient::ModP).unwrap());
        assert!(f.expanded.is_distinct());
        assert_eq!(f.expanded.method(), Method::Gap);
        assert_eq!(f, gen_gap(pm(1013), 3, 1, 1000).unwrap());
    }

    #[test]
    fn unsatisfiable_and_exhausted() {
        assert_eq!(
            gen_gap(pm(13), 3, 0, 10),
            Err(Error::GapUnsatisfiable { m: 3, p: 13 })
        );
        // 3^5 = 243 <= 251 but properness is very unlikely in three tries.
        assert!(matches!(
            gen_gap(pm(251), 5, 0, 3),
            Err(Error::NoProperGap { tries: 3 })
        ));
    }

    #[test]
    fn integer_ambient_escapes_pigeonhole() {
        let f = gen_gap_in(pm(13), 3, 4, 10_000, Ambient::Integers).unwrap();
        assert!(f.proper);
        assert!(proper_brute(f.t0, &f.generators, 13, false));
    }

    #[test]
    fn theorem_generator_count() {
        // ceil(log2 1013 - 2 log2 0.5) = ceil(9.98 + 2) = 12
        assert_eq!(gap_theorem_generators(pm(1013), 0.5), 12);
        assert_eq!(gap_theorem_generators(pm(257), 1.0), 9);
    }
}
