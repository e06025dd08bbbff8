//! Exact reversal distance by breadth-first search, a greedy sorter, and
//! surveys of how tight the lower bound is.
//!
//! BFS states pack each entry into 5 bits (4 bits of magnitude - 1, one sign
//! bit), so a whole permutation of length up to 12 fits in a `u64`.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{bound_plane, BoundError};
use crate::plane_perm::pi_cycle_count;
use crate::signed_perm::{enumerate_all, ReversalStep, SignedPermError, SignedPermutation};

/// Default cap on `n` for [`exact_distance`]; 2^7 * 7! = 645,120 states.
pub const DEFAULT_MAX_N: usize = 7;
/// Largest `n` the packed state encoding supports.
pub const PACK_LIMIT: usize = 12;
/// Largest `n` for an exhaustive survey.
pub const MAX_EXHAUSTIVE_N: usize = 6;
/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "REVDIST_MAX_N";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n={n} exceeds the search cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Signed(#[from] SignedPermError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error("greedy sort of {perm} exceeded {limit} steps")]
    NonTermination { perm: String, limit: usize },
    #[error("lower bound {bound} exceeds exact distance {exact} for {perm}")]
    Unsound {
        perm: String,
        bound: usize,
        exact: usize,
    },
    #[error("invalid {0} value {1:?}")]
    BadEnv(&'static str, String),
}

/// Cap from `REVDIST_MAX_N` if set, else [`DEFAULT_MAX_N`].
pub fn max_n_from_env() -> Result<usize, OracleError> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| OracleError::BadEnv(MAX_N_ENV, v)),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), OracleError> {
    let cap = cap.min(PACK_LIMIT);
    if n > cap {
        Err(OracleError::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

#[inline]
fn pack(entries: &[i32]) -> u64 {
    entries.iter().enumerate().fold(0u64, |acc, (k, &e)| {
        let code = ((e.unsigned_abs() as u64 - 1) << 1) | (e < 0) as u64;
        acc | code << (5 * k)
    })
}

#[inline]
fn unpack(state: u64, out: &mut [i32]) {
    for (k, e) in out.iter_mut().enumerate() {
        let code = (state >> (5 * k)) & 0x1f;
        let mag = (code >> 1) as i32 + 1;
        *e = if code & 1 == 1 { -mag } else { mag };
    }
}

/// Calls `visit` with every state one reversal away from `state`.
#[inline]
fn for_each_neighbor(state: u64, n: usize, buf: &mut [i32], mut visit: impl FnMut(u64)) {
    unpack(state, buf);
    for i in 0..n {
        for j in i..n {
            crate::signed_perm::reverse_in_place(buf, i, j);
            visit(pack(buf));
            crate::signed_perm::reverse_in_place(buf, i, j);
        }
    }
}

/// Length of a shortest reversal sequence sorting `a`, searching from `a`
/// toward the identity. Fails when `a.len() > cap`.
pub fn exact_distance(a: &SignedPermutation, cap: usize) -> Result<usize, OracleError> {
    let n = a.len();
    check_cap(n, cap)?;
    let target = pack(SignedPermutation::identity(n).entries());
    let start = pack(a.entries());
    if start == target {
        return Ok(0);
    }
    let mut buf = vec![0i32; n];
    let mut visited = HashSet::default();
    visited.insert(start);
    let mut frontier = vec![start];
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &state in &frontier {
            let mut found = false;
            for_each_neighbor(state, n, &mut buf, |nb| {
                if nb == target {
                    found = true;
                } else if visited.insert(nb) {
                    next.push(nb);
                }
            });
            if found {
                return Ok(depth);
            }
        }
        frontier = next;
    }
    unreachable!("every signed permutation can be sorted by reversals")
}

/// Distances of every signed permutation of length `n` from the identity,
/// from a single BFS rooted at the identity.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    n: usize,
    dist: HashMap<u64, u8>,
}

impl DistanceTable {
    pub fn build(n: usize, cap: usize) -> Result<Self, OracleError> {
        check_cap(n, cap)?;
        let mut buf = vec![0i32; n];
        let root = pack(SignedPermutation::identity(n).entries());
        let mut dist = HashMap::default();
        dist.insert(root, 0u8);
        let mut frontier = vec![root];
        let mut depth = 0u8;
        while !frontier.is_empty() {
            depth += 1;
            let mut next = Vec::new();
            for &state in &frontier {
                for_each_neighbor(state, n, &mut buf, |nb| {
                    dist.entry(nb).or_insert_with(|| {
                        next.push(nb);
                        depth
                    });
                });
            }
            frontier = next;
        }
        Ok(Self { n, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn get(&self, a: &SignedPermutation) -> Option<usize> {
        if a.len() != self.n {
            return None;
        }
        self.dist.get(&pack(a.entries())).map(|&d| d as usize)
    }

    pub fn diameter(&self) -> usize {
        self.dist.values().copied().max().unwrap_or(0) as usize
    }
}

/// A start permutation and reversals that sort it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SortCertificate {
    pub start: SignedPermutation,
    pub steps: Vec<ReversalStep>,
}

impl SortCertificate {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the steps, returning every intermediate permutation (start included).
    pub fn trace(&self) -> Result<Vec<SignedPermutation>, SignedPermError> {
        let mut out = vec![self.start.clone()];
        for &step in &self.steps {
            let next = out.last().expect("non-empty").reverse(step)?;
            out.push(next);
        }
        Ok(out)
    }
}

/// True iff replaying the steps ends at the identity.
pub fn validate(cert: &SortCertificate) -> bool {
    cert.trace()
        .map(|t| t.last().is_some_and(|a| a.is_identity()))
        .unwrap_or(false)
}

/// Greedy sorter: take the lexicographically first reversal that raises
/// `C(p ∘ s̃)` by 2; otherwise the one with the largest increase (first on
/// ties). Gives up after `4n` steps.
pub fn greedy_sort(a: &SignedPermutation) -> Result<SortCertificate, OracleError> {
    let n = a.len();
    let limit = 4 * n;
    let mut cur = a.clone();
    let mut steps = Vec::new();
    while !cur.is_identity() {
        if steps.len() >= limit {
            return Err(OracleError::NonTermination {
                perm: a.to_string(),
                limit,
            });
        }
        let base = pi_cycle_count(&cur) as i64;
        let mut best: Option<(i64, ReversalStep, SignedPermutation)> = None;
        for step in ReversalStep::all(n) {
            let next = cur.reverse(step)?;
            let delta = pi_cycle_count(&next) as i64 - base;
            if best.as_ref().is_none_or(|(d, _, _)| delta > *d) {
                let done = delta == 2;
                best = Some((delta, step, next));
                if done {
                    break;
                }
            }
        }
        let (_, step, next) = best.expect("n >= 1 gives at least one reversal");
        steps.push(step);
        cur = next;
    }
    Ok(SortCertificate {
        start: a.clone(),
        steps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SurveyMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub n: usize,
    pub mode: SurveyMode,
    pub total: usize,
    pub tight: usize,
    pub tight_fraction: f64,
    /// gap (exact - bound) -> count
    pub histogram: BTreeMap<usize, usize>,
    pub runtime_ms: u128,
}

impl SurveyReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("gap,count\n");
        for (gap, count) in &self.histogram {
            out.push_str(&format!("{gap},{count}\n"));
        }
        out
    }
}

fn gap(a: &SignedPermutation, exact: usize) -> Result<usize, OracleError> {
    let bound = bound_plane(a)?;
    exact
        .checked_sub(bound)
        .ok_or_else(|| OracleError::Unsound {
            perm: a.to_string(),
            bound,
            exact,
        })
}

/// Compares `bound_plane` with the exact distance over all permutations of
/// length `n` or over a seeded sample.
pub fn survey(n: usize, mode: SurveyMode, cap: usize) -> Result<SurveyReport, OracleError> {
    let started = Instant::now();
    let gaps: Vec<usize> = match mode {
        SurveyMode::Exhaustive => {
            check_cap(n, cap.min(MAX_EXHAUSTIVE_N))?;
            let table = DistanceTable::build(n, cap)?;
            let all: Vec<SignedPermutation> = enumerate_all(n)?.collect();
            all.par_iter()
                .map(|a| gap(a, table.get(a).expect("table covers every permutation")))
                .collect::<Result<_, _>>()?
        }
        SurveyMode::Sampled { count, seed } => {
            check_cap(n, cap)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sample: Vec<SignedPermutation> = (0..count)
                .map(|_| SignedPermutation::random_with(n, &mut rng))
                .collect();
            sample
                .par_iter()
                .map(|a| gap(a, exact_distance(a, cap)?))
                .collect::<Result<_, _>>()?
        }
    };
    let mut histogram = BTreeMap::new();
    for g in &gaps {
        *histogram.entry(*g).or_insert(0) += 1;
    }
    let total = gaps.len();
    let tight = histogram.get(&0).copied().unwrap_or(0);
    Ok(SurveyReport {
        n,
        mode,
        total,
        tight,
        tight_fraction: if total == 0 {
            0.0
        } else {
            tight as f64 / total as f64
        },
        histogram,
        runtime_ms: started.elapsed().as_millis(),
    })
}
