//! Brute-force oracles and exhaustive or sampled property sweeps.
//!
//! Every sweep returns a [`PropertyReport`]. Failures never abort a sweep;
//! they are collected with their enumeration index and sorted, so reports
//! are identical across runs and thread counts.

mod brute;
mod witness;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hensel::hensel_lift;
use crate::matclean::{pi_regular_witness, poly_reduce_via_matrix, strongly_clean_decompose, verify_decomposition};
use crate::matrix::Mat;
use crate::poly::{xgcd_residue, Poly, ResiduePoly};
use crate::rings::{Family, RingElem, RingSpec};

pub use brute::{
    brute_factor, brute_factor_bounded, brute_strongly_clean, brute_strongly_clean_bounded, cofactor_charpoly,
    matrix_at, matrix_count, monic_at,
};
pub use witness::{nonclean_witness_quadratic, NonCleanWitness};

/// Default cap on enumerated candidates.
pub const DEFAULT_WORK_BOUND: u64 = 10_000_000;

/// Which instances a sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    /// `count` matrices with entries drawn uniformly by SplitMix64 from `seed`.
    Sample {
        count: u64,
        seed: u64,
    },
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepMode::Exhaustive => f.write_str("exhaustive"),
            SweepMode::Sample { count, seed } => write!(f, "sample(count={count}, seed={seed})"),
        }
    }
}

/// Outcome of a property sweep.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub ring: String,
    pub bounds: String,
    pub mode: String,
    pub instances_checked: u64,
    /// Counterexamples in enumeration order.
    pub failures: Vec<String>,
    pub notes: BTreeMap<String, Value>,
    /// Wall time; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["passed"] = Value::Bool(self.passed());
        v
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "{verdict} {} over {} ({}, {}): {} checked, {} failures in {:.2?}",
            self.property,
            self.ring,
            self.bounds,
            self.mode,
            self.instances_checked,
            self.failures.len(),
            self.elapsed
        )
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    max: u64,
    failures: Vec<(u64, String)>,
}

impl Tally {
    fn fail(&mut self, index: u64, why: impl Into<String>) {
        self.failures.push((index, why.into()));
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.max = self.max.max(other.max);
        self.failures.extend(other.failures);
        self
    }
}

fn sweep(count: u64, check: impl Fn(u64, &mut Tally) + Sync + Send) -> Tally {
    let mut tally = (0..count)
        .into_par_iter()
        .fold(Tally::default, |mut t, i| {
            check(i, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge);
    tally.failures.sort();
    tally
}

/// `count` seeded random `n x n` matrices.
pub fn sample_matrices(spec: &RingSpec, n: usize, count: u64, seed: u64) -> Result<Vec<Mat>> {
    let size = spec.require_finite()?;
    let mut rng = SplitMix64::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let entries = (0..n * n).map(|_| spec.element_at(rng.gen_range(0..size))).collect();
            Mat::from_entries(spec, n, entries)
        })
        .collect())
}

/// The matrices a sweep visits, generated lazily when exhaustive.
enum Matrices {
    All { spec: RingSpec, n: usize, count: u64 },
    Listed(Vec<Mat>),
}

impl Matrices {
    fn new(spec: &RingSpec, n: usize, mode: SweepMode, bound: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("dimension must be at least 1".into()));
        }
        match mode {
            SweepMode::Exhaustive => {
                let count = matrix_count(spec, n, bound)?;
                Ok(Matrices::All {
                    spec: spec.clone(),
                    n,
                    count,
                })
            }
            SweepMode::Sample { count, .. } if count > bound => Err(Error::BoundExceeded {
                needed: count as u128,
                bound,
            }),
            SweepMode::Sample { count, seed } => Ok(Matrices::Listed(sample_matrices(spec, n, count, seed)?)),
        }
    }

    fn len(&self) -> u64 {
        match self {
            Matrices::All { count, .. } => *count,
            Matrices::Listed(v) => v.len() as u64,
        }
    }

    fn get(&self, i: u64) -> Mat {
        match self {
            Matrices::All { spec, n, .. } => matrix_at(spec, *n, i),
            Matrices::Listed(v) => v[i as usize].clone(),
        }
    }
}

fn report(
    property: &str,
    spec: &RingSpec,
    bounds: String,
    mode: String,
    tally: Tally,
    start: Instant,
) -> PropertyReport {
    PropertyReport {
        property: property.into(),
        ring: spec.to_string(),
        bounds,
        mode,
        instances_checked: tally.checked,
        failures: tally.failures.into_iter().map(|(_, why)| why).collect(),
        notes: BTreeMap::new(),
        elapsed: start.elapsed(),
    }
}

pub fn check_theorem_local_instance(spec: &RingSpec, n: usize, mode: SweepMode) -> Result<PropertyReport> {
    check_theorem_local_instance_bounded(spec, n, mode, DEFAULT_WORK_BOUND)
}

/// Every visited matrix decomposes and the decomposition verifies.
pub fn check_theorem_local_instance_bounded(
    spec: &RingSpec,
    n: usize,
    mode: SweepMode,
    bound: u64,
) -> Result<PropertyReport> {
    let start = Instant::now();
    if let Family::Localized { .. } = spec.family() {
        return Err(Error::InfiniteRing(spec.to_string()));
    }
    let mats = Matrices::new(spec, n, mode, bound)?;
    let tally = sweep(mats.len(), |i, t| {
        let a = mats.get(i);
        t.checked += 1;
        match strongly_clean_decompose(&a) {
            Ok(d) => {
                if let Err(why) = verify_decomposition(&a, &d.e, &d.u) {
                    t.fail(i, format!("{a}: {why}"));
                }
            }
            Err(err) => t.fail(i, format!("{a}: {err}")),
        }
    });
    Ok(report(
        "strongly-clean",
        spec,
        format!("n={n}"),
        mode.to_string(),
        tally,
        start,
    ))
}

/// On every visited matrix, both the oracle's and the algorithm's
/// decompositions verify.
pub fn check_oracle_agreement(spec: &RingSpec, n: usize, mode: SweepMode) -> Result<PropertyReport> {
    let start = Instant::now();
    let mats = Matrices::new(spec, n, mode, DEFAULT_WORK_BOUND)?;
    let tally = sweep(mats.len(), |i, t| {
        let a = mats.get(i);
        t.checked += 1;
        let algo = strongly_clean_decompose(&a)
            .map_err(|e| e.to_string())
            .and_then(|d| verify_decomposition(&a, &d.e, &d.u).map_err(|why| why.to_string()));
        if let Err(why) = algo {
            t.fail(i, format!("{a}: algorithm: {why}"));
        }
        match brute_strongly_clean(&a) {
            Ok(Some((e, u))) => {
                if let Err(why) = verify_decomposition(&a, &e, &u) {
                    t.fail(i, format!("{a}: oracle: {why}"));
                }
            }
            Ok(None) => t.fail(i, format!("{a}: oracle found no decomposition")),
            Err(err) => t.fail(i, format!("{a}: oracle: {err}")),
        }
    });
    Ok(report(
        "oracle-agreement",
        spec,
        format!("n={n}"),
        mode.to_string(),
        tally,
        start,
    ))
}

fn require_local_finite(spec: &RingSpec) -> Result<u64> {
    let size = spec.require_finite()?;
    if !spec.is_local_nilpotent() {
        return Err(Error::UnsupportedFamily(spec.to_string()));
    }
    Ok(size)
}

fn monic_count(size: u64, d: usize, bound: u64) -> Result<u64> {
    match (size as u128).checked_pow(d as u32) {
        Some(c) if c <= bound as u128 => Ok(c as u64),
        c => Err(Error::BoundExceeded {
            needed: c.unwrap_or(u128::MAX),
            bound,
        }),
    }
}

/// Checks a factorization `(g, h)` of `f` returned by the matrix route.
fn check_factor_pair(f: &Poly, pair: Result<(Poly, Poly)>) -> std::result::Result<(), String> {
    let (g, h) = pair.map_err(|e| e.to_string())?;
    let n = f.degree().unwrap();
    let dg = g.degree().unwrap_or(0);
    if &g * &h != *f {
        return Err(format!("({g})*({h}) != f"));
    }
    if !(g.is_monic() && h.is_monic() && (1..n).contains(&dg)) {
        return Err(format!("degenerate factors {g}, {h}"));
    }
    Ok(())
}

pub fn check_t5_condition(spec: &RingSpec, degrees: RangeInclusive<usize>) -> Result<PropertyReport> {
    check_t5_condition_bounded(spec, degrees, DEFAULT_WORK_BOUND)
}

/// Every monic `f` with `f(0)` and `f(1)` in `P` factors through the
/// companion matrix, and trial division agrees that it is reducible.
pub fn check_t5_condition_bounded(
    spec: &RingSpec,
    degrees: RangeInclusive<usize>,
    bound: u64,
) -> Result<PropertyReport> {
    let start = Instant::now();
    let size = require_local_finite(spec)?;
    if *degrees.start() < 2 || degrees.is_empty() {
        return Err(Error::PreconditionViolated(format!(
            "degrees {degrees:?} must lie in 2.. and be nonempty"
        )));
    }
    let one = spec.one();
    let mut total = Tally::default();
    let mut enumerated = 0u64;
    for d in degrees.clone() {
        let count = monic_count(size, d, bound)?;
        enumerated += count;
        let tally = sweep(count, |i, t| {
            let f = monic_at(spec, d, i);
            if spec.is_unit(&f.coeff(0)) || spec.is_unit(&f.eval_elem(&one)) {
                return;
            }
            t.checked += 1;
            if let Err(why) = check_factor_pair(&f, poly_reduce_via_matrix(&f, &RingElem::from_i64(spec, 1))) {
                t.fail(i, format!("{f}: {why}"));
            }
            match brute_factor_bounded(&f, bound) {
                Ok(Some(_)) => {}
                Ok(None) => t.fail(i, format!("{f}: trial division finds no factor")),
                Err(err) => t.fail(i, format!("{f}: {err}")),
            }
        });
        total = total.merge(tally);
    }
    let bounds = format!("degrees {}..={}", degrees.start(), degrees.end());
    let mut r = report("t5-condition", spec, bounds, "exhaustive".into(), total, start);
    r.notes.insert("enumerated".into(), enumerated.into());
    Ok(r)
}

pub fn check_lemma_polyreduc(spec: &RingSpec, n: usize) -> Result<PropertyReport> {
    check_lemma_polyreduc_bounded(spec, n, DEFAULT_WORK_BOUND)
}

/// For every monic `f` of degree `n` and unit `a` with `f(0), f(a)` in `P`,
/// the matrix route factors `f` and trial division confirms reducibility.
pub fn check_lemma_polyreduc_bounded(spec: &RingSpec, n: usize, bound: u64) -> Result<PropertyReport> {
    let start = Instant::now();
    let size = require_local_finite(spec)?;
    if n < 2 {
        return Err(Error::PreconditionViolated(format!("degree {n} must be at least 2")));
    }
    let count = monic_count(size, n, bound)?;
    let units: Vec<RingElem> = (0..size)
        .map(|i| spec.element_at(i))
        .filter(|x| spec.is_unit(x))
        .map(|x| RingElem::new(spec, x).unwrap())
        .collect();
    let tally = sweep(count, |i, t| {
        let f = monic_at(spec, n, i);
        if spec.is_unit(&f.coeff(0)) {
            return;
        }
        let mut reducible = None;
        for a in units.iter().filter(|a| !spec.is_unit(&f.eval_elem(a.elem()))) {
            t.checked += 1;
            if let Err(why) = check_factor_pair(&f, poly_reduce_via_matrix(&f, a)) {
                t.fail(i, format!("{f}, a={a}: {why}"));
            }
            let found = reducible.get_or_insert_with(|| brute_factor_bounded(&f, bound).map(|r| r.is_some()));
            match found {
                Ok(true) => {}
                Ok(false) => t.fail(i, format!("{f}, a={a}: trial division finds no factor")),
                Err(err) => t.fail(i, format!("{f}: {err}")),
            }
        }
    });
    let mut r = report(
        "lemma-polyreduc",
        spec,
        format!("degree {n}"),
        "exhaustive".into(),
        tally,
        start,
    );
    r.notes.insert("enumerated".into(), count.into());
    Ok(r)
}

pub fn check_pi_regular(spec: &RingSpec, n: usize, mode: SweepMode) -> Result<PropertyReport> {
    check_pi_regular_bounded(spec, n, mode, DEFAULT_WORK_BOUND)
}

/// Every visited matrix has a verified witness `A^q = A^(q+1) s`, with
/// `q` at most `n` times the nilpotency index of the maximal ideal(s).
pub fn check_pi_regular_bounded(spec: &RingSpec, n: usize, mode: SweepMode, bound: u64) -> Result<PropertyReport> {
    let start = Instant::now();
    let mats = Matrices::new(spec, n, mode, bound)?;
    let k = match spec.family() {
        Family::Product(cs) => cs.iter().filter_map(|c| c.nilpotency_index()).max().unwrap_or(1),
        _ => spec.nilpotency_index().unwrap_or(1),
    };
    let q_bound = n as u64 * k as u64;
    let tally = sweep(mats.len(), |i, t| {
        let a = mats.get(i);
        t.checked += 1;
        match pi_regular_witness(&a) {
            Ok(w) if !w.verify(&a) => t.fail(i, format!("{a}: witness does not verify")),
            Ok(w) if w.q > q_bound => t.fail(i, format!("{a}: q = {} exceeds {q_bound}", w.q)),
            Ok(w) => t.max = t.max.max(w.q),
            Err(err) => t.fail(i, format!("{a}: {err}")),
        }
    });
    let max_q = tally.max;
    let mut r = report("pi-regular", spec, format!("n={n}"), mode.to_string(), tally, start);
    r.notes.insert("max_q".into(), max_q.into());
    r.notes.insert("q_bound".into(), q_bound.into());
    Ok(r)
}

/// Cayley-Hamilton on every visited matrix, and Berkowitz against cofactor
/// expansion.
pub fn check_charpoly(spec: &RingSpec, n: usize, mode: SweepMode) -> Result<PropertyReport> {
    let start = Instant::now();
    let mats = Matrices::new(spec, n, mode, DEFAULT_WORK_BOUND)?;
    let tally = sweep(mats.len(), |i, t| {
        let a = mats.get(i);
        t.checked += 1;
        let f = a.charpoly();
        if !a.poly_eval_unchecked(&f).is_zero() {
            t.fail(i, format!("{a}: charpoly({a}) does not vanish"));
        }
        let oracle = cofactor_charpoly(&a);
        if f != oracle {
            t.fail(i, format!("{a}: Berkowitz {f} vs cofactor {oracle}"));
        }
    });
    Ok(report(
        "charpoly",
        spec,
        format!("n={n}"),
        mode.to_string(),
        tally,
        start,
    ))
}

/// For every monic `f` of degree `2..=max_degree` and every coprime split
/// `f = g0 h0` of its residue into nonconstant monic factors, the lift is
/// exact, monic of the right degrees, and the same on a second run.
pub fn check_hensel_exactness(spec: &RingSpec, max_degree: usize) -> Result<PropertyReport> {
    let start = Instant::now();
    let size = require_local_finite(spec)?;
    let p = spec.residue_prime().unwrap();
    let one = Poly::one(spec);
    let mut total = Tally::default();
    for d in 2..=max_degree {
        let count = monic_count(size, d, DEFAULT_WORK_BOUND)?;
        let tally = sweep(count, |i, t| {
            let f = monic_at(spec, d, i);
            let fbar = f.reduce_mod_p().unwrap();
            for dg in 1..d {
                for j in 0..p.pow(dg as u32) {
                    let g0 = ResiduePoly::monic_of_degree(p, dg, j);
                    let (h0, r) = fbar.divmod(&g0);
                    let coprime = xgcd_residue(&g0, &h0).is_ok_and(|(d, _, _)| d.is_one());
                    if !r.is_zero() || !coprime {
                        continue;
                    }
                    t.checked += 1;
                    let first = hensel_lift(&f, &g0, &h0);
                    let second = hensel_lift(&f, &g0, &h0);
                    match first {
                        Err(err) => t.fail(i, format!("{f} = ({g0})({h0}): {err}")),
                        Ok(l) => {
                            let exact = l.g.mul_unchecked(&l.h) == f
                                && l.u.mul_unchecked(&l.g).add_unchecked(&l.v.mul_unchecked(&l.h)) == one
                                && l.g.degree() == Some(dg)
                                && l.g.is_monic()
                                && l.h.is_monic()
                                && l.g.reduce_mod_p().unwrap() == g0;
                            if !exact {
                                t.fail(i, format!("{f} = ({g0})({h0}): inexact lift {} * {}", l.g, l.h));
                            }
                            if second.as_ref() != Ok(&l) {
                                t.fail(i, format!("{f} = ({g0})({h0}): second run differs"));
                            }
                        }
                    }
                }
            }
        });
        total = total.merge(tally);
    }
    Ok(report(
        "hensel-exactness",
        spec,
        format!("degrees 2..={max_degree}"),
        "exhaustive".into(),
        total,
        start,
    ))
}

#[cfg(test)]
mod tests;
