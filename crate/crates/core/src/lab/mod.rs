//! The theorem lab: each statement about the topology becomes a check run
//! over generated instances, with counterexample searches and the
//! 1 + t·∏ generators alongside.

mod checks;
mod generators;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use generators::{
    default_irreducible_seed, default_maximal_seed, extend_irreducibles, extend_maximal_ideals,
    find_coprime_not_comaximal, generate_irreducibles, generate_maximal_ideals, is_prime_element,
    scan_closed_principals, units_not_open_evidence, CoprimePair, Extension, OpenWitness,
};

use crate::error::{Error, Result};
use crate::par;
use crate::ring::{enumerate_window, sample_filtered, Element, Filter, Ring, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Expectation {
    Holds,
    FailsWithWitness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    ExpectedFail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub inputs: Vec<Element>,
    pub observed: String,
    pub expected: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub ring: Ring,
    pub cases_run: u64,
    pub violation_count: u64,
    /// The first violations, in instance order.
    pub violations: Vec<Violation>,
    pub verdict: Verdict,
    /// Seed of this check's generator; rerunning with it replays the cases.
    pub replay_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A registered check: `expect` says which rings it runs on and what it
/// should find there.
#[derive(Clone, Copy)]
pub struct CheckSpec {
    pub id: &'static str,
    pub statement: &'static str,
    pub expect: fn(Ring) -> Option<Expectation>,
    run: fn(&mut Ctx) -> Result<()>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckListing {
    pub id: &'static str,
    pub statement: &'static str,
    pub rings: Vec<(String, Expectation)>,
}

impl CheckSpec {
    pub fn listing(&self) -> CheckListing {
        let rings = REPRESENTATIVE_RINGS
            .iter()
            .filter_map(|&r| (self.expect)(r).map(|e| (family_name(r), e)))
            .collect();
        CheckListing {
            id: self.id,
            statement: self.statement,
            rings,
        }
    }
}

const REPRESENTATIVE_RINGS: [Ring; 6] = [
    Ring::Int,
    Ring::GaussInt,
    Ring::QuadM5,
    Ring::PolyFp(2),
    Ring::PolyZ,
    Ring::ProdIntInt,
];

fn family_name(r: Ring) -> String {
    match r {
        Ring::PolyFp(_) => "F_p[x]".to_string(),
        other => other.to_string(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub window: Window,
    pub seed: u64,
    pub cases: usize,
}

const MAX_REPORTED: usize = 20;
/// Exhaustive enumeration is used when the tuple count stays below this.
const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// Per-check state: instance generation, the check's RNG, collected violations.
pub(crate) struct Ctx {
    pub ring: Ring,
    pub w: Window,
    pub cases: usize,
    pub rng: ChaCha8Rng,
    cases_run: u64,
    violation_count: u64,
    violations: Vec<Violation>,
    pub note: Option<String>,
}

pub(crate) enum Instances {
    Exhaustive { pool: Vec<Element>, arity: u32 },
    Drawn(Vec<Vec<Element>>),
}

impl Instances {
    fn len(&self) -> u64 {
        match self {
            Instances::Exhaustive { pool, arity } => (pool.len() as u64).pow(*arity),
            Instances::Drawn(v) => v.len() as u64,
        }
    }
}

impl Ctx {
    /// Tuples of `arity` elements of `w` passing `filter`: every tuple when
    /// there are at most `limit` of them (ℤ is always tried exhaustively up
    /// to a million), otherwise `limit` seeded draws.
    pub fn instances(
        &mut self,
        arity: u32,
        filter: Filter,
        w: &Window,
        limit: usize,
    ) -> Result<Instances> {
        let size = w.size(self.ring).unwrap_or(u128::MAX);
        let cap = if self.ring == Ring::Int {
            EXHAUSTIVE_LIMIT.max(limit as u64)
        } else {
            limit as u64
        };
        if size.checked_pow(arity).is_some_and(|n| n <= cap as u128) {
            let pool = enumerate_window(self.ring, w, filter)?;
            if !pool.is_empty() {
                return Ok(Instances::Exhaustive { pool, arity });
            }
        }
        let mut out = Vec::with_capacity(limit);
        for _ in 0..limit {
            let t = (0..arity)
                .map(|_| sample_filtered(self.ring, w, filter, &mut self.rng))
                .collect::<Result<Vec<_>>>()?;
            out.push(t);
        }
        Ok(Instances::Drawn(out))
    }

    /// Runs `f` on every instance; `Some` results are violations.
    pub fn each<F>(&mut self, inst: &Instances, f: F) -> Result<()>
    where
        F: Fn(&[Element]) -> Result<Option<Violation>> + Sync + Send,
    {
        let found: Vec<Option<Violation>> = match inst {
            Instances::Exhaustive { pool, arity } => {
                let idx: Vec<u64> = (0..inst.len()).collect();
                let n = pool.len() as u64;
                par::try_map(&idx, |&i| {
                    let mut t = Vec::with_capacity(*arity as usize);
                    let mut k = i;
                    for _ in 0..*arity {
                        t.push(pool[(k % n) as usize].clone());
                        k /= n;
                    }
                    t.reverse();
                    f(&t)
                })?
            }
            Instances::Drawn(v) => par::try_map(v, |t| f(t))?,
        };
        self.cases_run += inst.len();
        for v in found.into_iter().flatten() {
            self.violate(v);
        }
        Ok(())
    }

    pub fn violate(&mut self, v: Violation) {
        self.violation_count += 1;
        if self.violations.len() < MAX_REPORTED {
            self.violations.push(v);
        }
    }

    pub fn violation_count(&self) -> u64 {
        self.violation_count
    }

    pub fn count(&mut self, n: u64) {
        self.cases_run += n;
    }
}

pub(crate) fn violation(
    inputs: &[Element],
    observed: impl Into<String>,
    expected: impl Into<String>,
) -> Violation {
    Violation {
        inputs: inputs.to_vec(),
        observed: observed.into(),
        expected: expected.into(),
        certificate: None,
    }
}

/// FNV-1a, used to give every (check, ring) its own stream from one seed.
fn fnv(parts: &[&str]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for part in parts {
        for b in part.bytes().chain([0xff]) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

pub fn check_seed(seed: u64, id: &str, ring: Ring) -> u64 {
    seed ^ fnv(&[id, &ring.to_string()])
}

pub fn registry() -> &'static [CheckSpec] {
    checks::REGISTRY
}

pub fn find_check(id: &str) -> Option<&'static CheckSpec> {
    registry().iter().find(|c| c.id.eq_ignore_ascii_case(id))
}

/// Runs one check on one ring; `None` if the check does not apply there.
pub fn run_check(spec: &CheckSpec, ring: Ring, cfg: &SuiteConfig) -> Option<CheckReport> {
    let expectation = (spec.expect)(ring)?;
    let replay_seed = check_seed(cfg.seed, spec.id, ring);
    let mut ctx = Ctx {
        ring,
        w: cfg.window,
        cases: cfg.cases,
        rng: ChaCha8Rng::seed_from_u64(replay_seed),
        cases_run: 0,
        violation_count: 0,
        violations: Vec::new(),
        note: None,
    };
    let outcome = (spec.run)(&mut ctx);
    let (verdict, diagnostic) = match (&outcome, expectation) {
        (Err(e), _) => (Verdict::Fail, Some(e.to_string())),
        (Ok(()), Expectation::Holds) if ctx.violation_count == 0 => (Verdict::Pass, None),
        (Ok(()), Expectation::Holds) => (Verdict::Fail, None),
        (Ok(()), Expectation::FailsWithWitness) if ctx.violation_count > 0 => {
            (Verdict::ExpectedFail, None)
        }
        (Ok(()), Expectation::FailsWithWitness) => (
            Verdict::Fail,
            Some("expected a counterexample in this window, found none".to_string()),
        ),
    };
    Some(CheckReport {
        id: spec.id.to_string(),
        ring,
        cases_run: ctx.cases_run,
        violation_count: ctx.violation_count,
        violations: ctx.violations,
        verdict,
        replay_seed,
        diagnostic,
        note: ctx.note,
    })
}

/// Every registered check (or those in `ids`) on every ring, in registry
/// order then ring order.
pub fn run_suite(
    rings: &[Ring],
    cfg: &SuiteConfig,
    ids: Option<&[String]>,
) -> Result<Vec<CheckReport>> {
    let selected: Vec<&CheckSpec> = match ids {
        None => registry().iter().collect(),
        Some(ids) => ids
            .iter()
            .map(|id| {
                find_check(id).ok_or_else(|| Error::Syntax(format!("unknown check id {id:?}")))
            })
            .collect::<Result<_>>()?,
    };
    let mut out = Vec::new();
    for spec in selected {
        for &ring in rings {
            out.extend(run_check(spec, ring, cfg));
        }
    }
    Ok(out)
}
