//! Coordinate descent over coefficient sets, and the general-vs-shallow
//! comparison harness.
//!
//! Each coordinate is scanned exhaustively over `[0, p)` in index order.
//! A candidate replaces the running best only when it is lower by more
//! than [`IMPROVEMENT_TOL`]; the scan starts from the coordinate's current
//! value and walks candidates upward from 0, so ties keep the current
//! value and otherwise resolve to the smallest candidate. A sweep with no
//! accepted move ends the run.
//!
//! In shallow mode the point is the generator list `T` with `t0 = 0`; the
//! offset does not change `eps`.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{epsilon_with, Epsilon, PhaseTable};
use crate::circuit::{build_deep, build_shallow_parts, cx_count_lnn, depth, CostModel};
use crate::coeffsets::{expand_subset_sums, CoefficientSet, Method, Params, MAX_GENERATORS};
use crate::error::{Error, Result};
use crate::fmt::float17;
use crate::rng::SplitMix64;
use crate::zmod::PrimeModulus;

/// Minimum decrease of `eps` that counts as an improvement.
pub const IMPROVEMENT_TOL: f64 = 1e-12;

/// Denominator floor for `eps_shallow / eps_general`.
pub const RATIO_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Optimize all `d` coefficients.
    General,
    /// Optimize the `m` generators of a subset-sum set.
    Shallow,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::General => "general",
            Mode::Shallow => "shallow",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DescentConfig {
    pub seed: u64,
    pub max_sweeps: usize,
    pub mode: Mode,
    /// Extra runs from fresh starting points; the best run is kept.
    pub restarts: u32,
}

impl Default for DescentConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_sweeps: 100,
            mode: Mode::General,
            restarts: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentResult {
    pub mode: Mode,
    /// Expanded set (subset sums in shallow mode).
    pub best_set: CoefficientSet,
    /// Optimized coordinates: coefficients, or generators in shallow mode.
    pub best_point: Vec<u64>,
    pub start: Vec<u64>,
    pub best_epsilon: f64,
    pub argmax_x: u64,
    /// Sweeps of the winning run.
    pub sweeps_used: usize,
    pub converged: bool,
    /// Candidate evaluations summed over all runs.
    pub evaluations: u64,
    /// `(sweep, eps)` of the winning run, starting at sweep 0.
    pub history: Vec<(usize, f64)>,
}

/// Candidate scores for one coordinate at a time.
trait Objective {
    fn size(&self) -> usize;
    /// Prepare for varying coordinate `i` of `point`.
    fn focus(&mut self, point: &[u64], i: usize);
    /// Score of value `v` at the focused coordinate, or `None` once it is
    /// known to be at least `cutoff`.
    fn score(&self, v: u64, cutoff: f64) -> Option<f64>;
}

struct GeneralObjective<'a> {
    table: &'a PhaseTable,
    p: u64,
    d2: f64,
    size: usize,
    rest: Vec<(f64, f64)>,
}

impl Objective for GeneralObjective<'_> {
    fn size(&self) -> usize {
        self.size
    }

    fn focus(&mut self, point: &[u64], i: usize) {
        let p = self.p;
        self.rest.clear();
        for x in 1..p {
            let (mut re, mut im) = (0.0, 0.0);
            for (j, &k) in point.iter().enumerate() {
                if j != i {
                    let z = self.table.at(((k as u128 * x as u128) % p as u128) as u64);
                    re += z.re;
                    im += z.im;
                }
            }
            self.rest.push((re, im));
        }
    }

    fn score(&self, v: u64, cutoff: f64) -> Option<f64> {
        let p = self.p;
        let limit = cutoff * self.d2;
        let mut best = f64::NEG_INFINITY;
        let mut r = 0u64;
        for &(re, im) in &self.rest {
            r += v;
            if r >= p {
                r -= p;
            }
            let z = self.table.at(r);
            let mag = (re + z.re).powi(2) + (im + z.im).powi(2);
            if mag >= limit {
                return None;
            }
            best = best.max(mag);
        }
        Some(best / self.d2)
    }
}

struct ShallowObjective<'a> {
    table: &'a PhaseTable,
    p: u64,
    scale: f64,
    size: usize,
    rest: Vec<f64>,
}

impl Objective for ShallowObjective<'_> {
    fn size(&self) -> usize {
        self.size
    }

    // |sum over subset sums of e(a x)|^2 = prod_j |1 + e(t_j x)|^2.
    fn focus(&mut self, point: &[u64], i: usize) {
        let p = self.p;
        self.rest.clear();
        for x in 1..p {
            let mut prod = 1.0;
            for (j, &t) in point.iter().enumerate() {
                if j != i {
                    let z = self.table.at(((t as u128 * x as u128) % p as u128) as u64);
                    prod *= 2.0 + 2.0 * z.re;
                }
            }
            self.rest.push(prod);
        }
    }

    fn score(&self, v: u64, cutoff: f64) -> Option<f64> {
        let p = self.p;
        let limit = cutoff * self.scale;
        let mut best = f64::NEG_INFINITY;
        let mut r = 0u64;
        for &rest in &self.rest {
            r += v;
            if r >= p {
                r -= p;
            }
            let mag = rest * (2.0 + 2.0 * self.table.at(r).re);
            if mag >= limit {
                return None;
            }
            best = best.max(mag);
        }
        Some(best / self.scale)
    }
}

/// The set a point stands for in `mode`.
pub fn point_to_set(p: PrimeModulus, point: &[u64], mode: Mode) -> Result<CoefficientSet> {
    match mode {
        Mode::General => CoefficientSet::explicit(p, point.to_vec()),
        Mode::Shallow => expand_subset_sums(0, point, p),
    }
}

fn check_size(p: PrimeModulus, size: usize, mode: Mode) -> Result<()> {
    if size == 0 {
        return Err(Error::InvalidParameter(
            "descent needs at least one coordinate".into(),
        ));
    }
    if mode == Mode::Shallow {
        if size > MAX_GENERATORS {
            return Err(Error::TooManyGenerators {
                m: size,
                max: MAX_GENERATORS,
            });
        }
        if (1u64 << size) > 4 * p.get() {
            log::warn!("2^{size} subset sums exceed 4p = {} residues", 4 * p.get());
        }
    }
    Ok(())
}

struct Run {
    point: Vec<u64>,
    eps: Epsilon,
    sweeps: usize,
    converged: bool,
    evaluations: u64,
    history: Vec<(usize, f64)>,
}

fn run_descent(
    p: PrimeModulus,
    table: &PhaseTable,
    start: &[u64],
    mode: Mode,
    max_sweeps: usize,
) -> Result<Run> {
    let n = p.get();
    let size = start.len();
    let mut objective: Box<dyn Objective> = match mode {
        Mode::General => Box::new(GeneralObjective {
            table,
            p: n,
            d2: (size as f64).powi(2),
            size,
            rest: Vec::with_capacity(n as usize),
        }),
        Mode::Shallow => Box::new(ShallowObjective {
            table,
            p: n,
            scale: 4f64.powi(size as i32),
            size,
            rest: Vec::with_capacity(n as usize),
        }),
    };
    let exact = |point: &[u64]| -> Result<Epsilon> {
        Ok(epsilon_with(table, &point_to_set(p, point, mode)?))
    };

    let mut point = start.to_vec();
    let mut history = vec![(0, exact(&point)?.epsilon)];
    let mut evaluations = 1u64;
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < max_sweeps.max(1) {
        sweeps += 1;
        let mut moved = false;
        for i in 0..objective.size() {
            objective.focus(&point, i);
            let current = objective.score(point[i], f64::INFINITY).expect("no cutoff");
            let (mut best_v, mut best) = (point[i], current);
            for v in (0..n).filter(|&v| v != point[i]) {
                if let Some(s) = objective.score(v, best - IMPROVEMENT_TOL) {
                    if s < best - IMPROVEMENT_TOL {
                        best_v = v;
                        best = s;
                    }
                }
            }
            evaluations += n;
            if best_v != point[i] {
                point[i] = best_v;
                moved = true;
            }
        }
        history.push((sweeps, exact(&point)?.epsilon));
        if !moved {
            converged = true;
            break;
        }
    }
    let eps = exact(&point)?;
    Ok(Run {
        point,
        eps,
        sweeps,
        converged,
        evaluations,
        history,
    })
}

fn finish(
    p: PrimeModulus,
    mode: Mode,
    start: Vec<u64>,
    run: Run,
    evaluations: u64,
    params: Params,
) -> Result<DescentResult> {
    let params = Params {
        mode: Some(mode.as_str().to_string()),
        sweeps: Some(run.sweeps),
        evaluations: Some(evaluations),
        epsilon: Some(run.eps.epsilon),
        ..params
    };
    let best_set = point_to_set(p, &run.point, mode)?.with_provenance(Method::Optimized, params);
    Ok(DescentResult {
        mode,
        best_set,
        best_point: run.point,
        start,
        best_epsilon: run.eps.epsilon,
        argmax_x: run.eps.argmax_x,
        sweeps_used: run.sweeps,
        converged: run.converged,
        evaluations,
        history: run.history,
    })
}

/// One descent from an explicit starting point (values in `[0, p)`).
pub fn descend_from(
    p: PrimeModulus,
    start: &[u64],
    mode: Mode,
    max_sweeps: usize,
) -> Result<DescentResult> {
    check_size(p, start.len(), mode)?;
    if let Some(&v) = start.iter().find(|&&v| v >= p.get()) {
        return Err(Error::OutOfRange {
            value: v,
            p: p.get(),
        });
    }
    let table = PhaseTable::new(p.get());
    let run = run_descent(p, &table, start, mode, max_sweeps)?;
    let evaluations = run.evaluations;
    finish(p, mode, start.to_vec(), run, evaluations, Params::default())
}

/// Seeded coordinate descent with restarts.
///
/// Starting points are consecutive blocks of `size` draws from `[1, p)` of a
/// SplitMix64 stream seeded with `cfg.seed`: the first block starts run 0,
/// the next block run 1, and so on. The lowest exact `eps` wins, earlier
/// runs on ties.
pub fn coordinate_descent(
    p: PrimeModulus,
    size: usize,
    cfg: &DescentConfig,
) -> Result<DescentResult> {
    check_size(p, size, cfg.mode)?;
    let table = PhaseTable::new(p.get());
    let mut rng = SplitMix64::new(cfg.seed);
    let mut best: Option<(Vec<u64>, Run)> = None;
    let mut evaluations = 0;
    for _ in 0..=cfg.restarts {
        let start: Vec<u64> = (0..size).map(|_| rng.range(1, p.get())).collect();
        let run = run_descent(p, &table, &start, cfg.mode, cfg.max_sweeps)?;
        evaluations += run.evaluations;
        if best
            .as_ref()
            .is_none_or(|(_, b)| run.eps.epsilon < b.eps.epsilon)
        {
            best = Some((start, run));
        }
    }
    let (start, run) = best.expect("at least one run");
    let params = Params {
        seed: Some(cfg.seed),
        restarts: Some(cfg.restarts),
        ..Params::default()
    };
    finish(p, cfg.mode, start, run, evaluations, params)
}

/// A single-coordinate change that lowers exact `eps` by more than `tol`,
/// as `(coordinate, value, eps)`; `None` certifies a coordinate-wise minimum.
pub fn audit_single_coordinate(
    result: &DescentResult,
    tol: f64,
) -> Result<Option<(usize, u64, f64)>> {
    let p = result.best_set.p();
    let table = PhaseTable::new(p.get());
    let mut point = result.best_point.clone();
    for i in 0..point.len() {
        let original = point[i];
        for v in 0..p.get() {
            point[i] = v;
            let eps = epsilon_with(&table, &point_to_set(p, &point, result.mode)?).epsilon;
            if eps < result.best_epsilon - tol {
                return Ok(Some((i, v, eps)));
            }
        }
        point[i] = original;
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodSummary {
    pub epsilon: f64,
    pub argmax_x: u64,
    pub depth: usize,
    pub cx_lnn: u64,
    pub sweeps: usize,
    pub evaluations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRecord {
    pub p: u64,
    pub m: usize,
    pub seed: u64,
    pub general: MethodSummary,
    pub shallow: MethodSummary,
    /// `eps_shallow / max(eps_general, 1e-15)`.
    pub ratio: f64,
}

fn compare_one(p: PrimeModulus, m: usize, cfg: &DescentConfig) -> Result<ComparisonRecord> {
    if (1u64 << m) > p.get() {
        log::warn!("p = {p} is below 2^{m}; general coefficients must repeat");
    }
    let model = CostModel::default();
    let general = coordinate_descent(
        p,
        1 << m,
        &DescentConfig {
            mode: Mode::General,
            ..*cfg
        },
    )?;
    let shallow = coordinate_descent(
        p,
        m,
        &DescentConfig {
            mode: Mode::Shallow,
            ..*cfg
        },
    )?;
    let deep_circuit = build_deep(&general.best_set, 1);
    let shallow_circuit = build_shallow_parts(0, &shallow.best_point, p.get(), 1);
    let summary = |r: &DescentResult, c: &crate::circuit::Circuit| -> Result<MethodSummary> {
        Ok(MethodSummary {
            epsilon: r.best_epsilon,
            argmax_x: r.argmax_x,
            depth: depth(c),
            cx_lnn: cx_count_lnn(c, &model)?,
            sweeps: r.sweeps_used,
            evaluations: r.evaluations,
        })
    };
    let record = ComparisonRecord {
        p: p.get(),
        m,
        seed: cfg.seed,
        general: summary(&general, &deep_circuit)?,
        shallow: summary(&shallow, &shallow_circuit)?,
        ratio: shallow.best_epsilon / general.best_epsilon.max(RATIO_FLOOR),
    };
    log::info!(
        "p={} m={m} eps_general={:.6} eps_shallow={:.6} ratio={:.4}",
        record.p,
        record.general.epsilon,
        record.shallow.epsilon,
        record.ratio
    );
    Ok(record)
}

/// General mode with `d = 2^m` against shallow mode with `m` generators, per prime.
/// Primes run in parallel; the output keeps the input order.
pub fn compare_experiment(
    primes: &[PrimeModulus],
    m: usize,
    cfg: &DescentConfig,
) -> Result<Vec<ComparisonRecord>> {
    primes.par_iter().map(|&p| compare_one(p, m, cfg)).collect()
}

/// One row per `(p, method)`.
pub fn comparison_csv(records: &[ComparisonRecord]) -> String {
    let mut out =
        String::from("p,m,method,epsilon,argmax_x,depth,cx_lnn,sweeps,evaluations,seed\n");
    for r in records {
        for (method, s) in [("general", &r.general), ("shallow", &r.shallow)] {
            out.push_str(&format!(
                "{},{},{method},{},{},{},{},{},{},{}\n",
                r.p,
                r.m,
                float17(s.epsilon),
                s.argmax_x,
                s.depth,
                s.cx_lnn,
                s.sweeps,
                s.evaluations,
                r.seed
            ));
        }
    }
    out
}

pub fn ratios_csv(records: &[ComparisonRecord]) -> String {
    let mut out = String::from("p,ratio\n");
    for r in records {
        out.push_str(&format!("{},{}\n", r.p, float17(r.ratio)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::epsilon_of;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn fast_objectives_match_exact() {
        let p = pm(61);
        let table = PhaseTable::new(61);
        let point = [3u64, 17, 40, 59, 8];
        for mode in [Mode::General, Mode::Shallow] {
            let mut obj: Box<dyn Objective> = match mode {
                Mode::General => Box::new(GeneralObjective {
                    table: &table,
                    p: 61,
                    d2: 25.0,
                    size: 5,
                    rest: vec![],
                }),
                Mode::Shallow => Box::new(ShallowObjective {
                    table: &table,
                    p: 61,
                    scale: 4f64.powi(5),
                    size: 5,
                    rest: vec![],
                }),
            };
            for i in 0..5 {
                obj.focus(&point, i);
                for v in [0u64, 1, 30, 60] {
                    let mut q = point;
                    q[i] = v;
                    let exact = epsilon_of(&point_to_set(p, &q, mode).unwrap()).epsilon;
                    let fast = obj.score(v, f64::INFINITY).unwrap();
                    assert!((exact - fast).abs() < 1e-12, "{mode:?} i={i} v={v}");
                }
            }
        }
    }

    #[test]
    fn general_improves_on_start() {
        let r = coordinate_descent(
            pm(7),
            2,
            &DescentConfig {
                seed: 11,
                ..Default::default()
            },
        )
        .unwrap();
        let start_eps =
            epsilon_of(&CoefficientSet::explicit(pm(7), r.start.clone()).unwrap()).epsilon;
        assert!(r.best_epsilon <= start_eps);
        assert!(r.history.windows(2).all(|w| w[1].1 <= w[0].1));
        assert_eq!(r.best_set.method(), Method::Optimized);
    }

    #[test]
    fn deterministic() {
        let cfg = DescentConfig {
            seed: 5,
            mode: Mode::Shallow,
            restarts: 2,
            ..Default::default()
        };
        assert_eq!(
            coordinate_descent(pm(53), 3, &cfg).unwrap(),
            coordinate_descent(pm(53), 3, &cfg).unwrap()
        );
    }

    #[test]
    fn shallow_result_matches_expansion() {
        let cfg = DescentConfig {
            seed: 2,
            mode: Mode::Shallow,
            ..Default::default()
        };
        let r = coordinate_descent(pm(101), 3, &cfg).unwrap();
        let exact = epsilon_of(&expand_subset_sums(0, &r.best_point, pm(101)).unwrap());
        assert_eq!(r.best_epsilon, exact.epsilon);
        assert!(audit_single_coordinate(&r, 1e-11).unwrap().is_none());
        assert!(r.converged);
    }

    #[test]
    fn max_sweeps_caps_run() {
        let r = descend_from(pm(101), &[1, 2, 3, 4, 5, 6, 7, 8], Mode::General, 1).unwrap();
        assert_eq!(r.sweeps_used, 1);
        assert_eq!(r.history.len(), 2);
        assert_eq!(r.evaluations, 1 + 8 * 101);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(descend_from(pm(7), &[], Mode::General, 3).is_err());
        assert!(descend_from(pm(7), &[9], Mode::General, 3).is_err());
    }

    #[test]
    fn comparison_rows() {
        let cfg = DescentConfig {
            seed: 7,
            ..Default::default()
        };
        let recs = compare_experiment(&[pm(11), pm(13)], 2, &cfg).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].p, 11);
        assert_eq!(recs[0].shallow.depth, 4);
        assert_eq!(recs[0].shallow.cx_lnn, 9);
        assert_eq!(recs[0].general.depth, 5);
        assert_eq!(recs[0].general.cx_lnn, 8);
        let csv = comparison_csv(&recs);
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.lines().nth(1).unwrap().starts_with("11,2,general,"));
        assert_eq!(ratios_csv(&recs).lines().count(), 3);
    }
}
