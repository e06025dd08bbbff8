//! Bulk cross-checks of the bound identities and the involution properties over
//! exhaustive and seeded random corpora.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    breakpoint, check_conjecture, check_equivalence, extend_involutions, extension_adds_one_cycle,
    fixed_points_share_cycle, involution_factors, matrix_factorization_holds, no_odd_return_holds,
    plane_cycle_count,
};
use crate::fatgraph::{bar_offset, fatgraph_from_signed, genus, hat};
use crate::perm_core::{GroundSet, Permutation};
use crate::plane_perm::{block_interchange, skew_symmetric, BlockInterchange, PlanePermutation};
use crate::signed_perm::{enumerate_all, ReversalStep, SignedPermutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Every signed permutation with `n <= exhaustive_n` is checked.
    pub exhaustive_n: usize,
    /// Random permutations per `n` in `exhaustive_n + 1 ..= max_n`, and
    /// random instances per involution check.
    pub samples: usize,
    pub seed: u64,
    pub max_n: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            exhaustive_n: 3,
            samples: 1000,
            seed: 0x5eed,
            max_n: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Exhaustive for `n <= exhaustive_n`, then `samples` random permutations
/// for each larger `n` up to `max_n`.
pub fn corpus(config: &VerifyConfig) -> Vec<SignedPermutation> {
    let mut out = Vec::new();
    for n in 1..=config.exhaustive_n.min(config.max_n) {
        out.extend(enumerate_all(n).expect("exhaustive_n within enumeration limit"));
    }
    for n in config.exhaustive_n + 1..=config.max_n {
        let mut rng = rng_for(config.seed, n as u64);
        out.extend((0..config.samples).map(|_| SignedPermutation::random_with(n, &mut rng)));
    }
    out
}

/// Random plane permutation on `{1..=m}` with anchor 1.
pub fn random_plane<R: Rng + ?Sized>(m: usize, rng: &mut R) -> PlanePermutation {
    let ground = Arc::new(GroundSet::range(1, m as i32));
    let mut rest: Vec<i32> = (2..=m as i32).collect();
    rest.shuffle(rng);
    let seq: Vec<i32> = std::iter::once(1).chain(rest).collect();
    let s = Permutation::long_cycle(Arc::clone(&ground), &seq).expect("long cycle");
    let mut images: Vec<i32> = (1..=m as i32).collect();
    images.shuffle(rng);
    let pi = Permutation::from_images(ground, &images).expect("shuffled images");
    PlanePermutation::new(s, pi, 1).expect("valid plane permutation")
}

/// Random pair of involutions on `size` labels, each with `fixed` fixed points
/// (`size - fixed` must be even). The fixed points are chosen independently.
pub fn random_involution_pair<R: Rng + ?Sized>(
    size: usize,
    fixed: usize,
    rng: &mut R,
) -> (Permutation, Permutation) {
    let ground = Arc::new(GroundSet::range(0, size as i32 - 1));
    let mut pick = || {
        let mut all: Vec<i32> = ground.elements().to_vec();
        all.shuffle(rng);
        let fixed_points: Vec<i32> = all[..fixed].to_vec();
        Permutation::random_involution(Arc::clone(&ground), &fixed_points, rng)
            .expect("parity checked by caller")
    };
    let a = pick();
    let b = pick();
    (a, b)
}

pub fn check_bound_equivalence(corpus: &[SignedPermutation]) -> CheckResult {
    let outcomes: Vec<Result<(), String>> = corpus
        .par_iter()
        .map(|a| check_equivalence(a).map(|_| ()).map_err(|e| e.to_string()))
        .collect();
    let mut t = Tally::new("bound equivalence (plane = breakpoint = genus)");
    for o in outcomes {
        let ok = o.is_ok();
        t.record(ok, || o.unwrap_err());
    }
    t.finish()
}

pub fn check_conjecture_corpus(corpus: &[SignedPermutation]) -> CheckResult {
    let outcomes: Vec<bool> = corpus.par_iter().map(check_conjecture).collect();
    let mut t = Tally::new("n and s_n share a cycle of p∘s");
    for (a, ok) in corpus.iter().zip(outcomes) {
        t.record(ok, || a.to_string());
    }
    t.finish()
}

pub fn check_fatgraph_invariants(corpus: &[SignedPermutation]) -> CheckResult {
    let mut t = Tally::new("fatgraph: gamma = alpha beta, one face, Euler parity");
    for a in corpus {
        let n = a.len();
        let fg = fatgraph_from_signed(a);
        let gamma_ok = fg.alpha().compose(fg.beta()).ok().as_ref() == Some(fg.gamma());
        let v = fg.beta().cycle_count();
        let e = fg.alpha().cycle_count();
        let f = fg.gamma().cycle_count();
        let ok = gamma_ok
            && f == 1
            && e == 2 * n + 1
            && v == plane_cycle_count(a) + 1
            && (v as i64 - e as i64 + f as i64) % 2 == 0
            && genus(&fg).is_ok();
        t.record(ok, || format!("{a}: V={v} E={e} F={f}"));
    }
    t.finish()
}

pub fn check_extension_is_breakpoint(corpus: &[SignedPermutation]) -> CheckResult {
    let mut t = Tally::new("extended (p_invo, s_invo) equals (theta2, theta1)");
    for a in corpus {
        let (p_invo, s_invo) = involution_factors(a);
        let bp = breakpoint(a);
        let ok = extend_involutions(&p_invo, &s_invo, -(a.len() as i32) - 1)
            .map(|(ep, es)| ep == bp.theta2 && es == bp.theta1)
            .unwrap_or(false);
        t.record(ok, || a.to_string());
    }
    t.finish()
}

pub fn check_matrix_factorization(config: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("PS = (PR)(RS) for n <= 8");
    let mut rng = rng_for(config.seed, 100);
    for n in 1..=8 {
        for _ in 0..config.samples.div_ceil(8).max(1) {
            let a = SignedPermutation::random_with(n, &mut rng);
            t.record(matrix_factorization_holds(&a), || a.to_string());
        }
    }
    t.finish()
}

pub fn check_no_odd_return(config: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("fixed-point-free involutions: no odd return");
    let mut rng = rng_for(config.seed, 101);
    for _ in 0..config.samples {
        let m = rng.gen_range(1..=12);
        let (s1, s2) = random_involution_pair(2 * m, 0, &mut rng);
        let ok = no_odd_return_holds(&s1, &s2).unwrap_or(false);
        t.record(ok, || format!("{s1} / {s2}"));
    }
    t.finish()
}

pub fn check_fixed_points_share_cycle(config: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("unique fixed points share a cycle of σ2σ1");
    let mut rng = rng_for(config.seed, 102);
    for _ in 0..config.samples {
        let size = 2 * rng.gen_range(0..=12) + 1;
        let (s1, s2) = random_involution_pair(size, 1, &mut rng);
        let ok = fixed_points_share_cycle(&s1, &s2).unwrap_or(false);
        t.record(ok, || format!("{s1} / {s2}"));
    }
    t.finish()
}

pub fn check_extension_adds_one_cycle(config: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("extension by a fresh element adds exactly one cycle");
    let mut rng = rng_for(config.seed, 103);
    for _ in 0..config.samples {
        let size = 2 * rng.gen_range(0..=12) + 1;
        let (s1, s2) = random_involution_pair(size, 1, &mut rng);
        let ok = extension_adds_one_cycle(&s1, &s2, size as i32).unwrap_or(false);
        t.record(ok, || format!("{s1} / {s2}"));
    }
    t.finish()
}

pub fn check_hat_construction(config: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("hat: involutive diagonal, pi kept, C(barred part) = C(D)");
    let mut rng = rng_for(config.seed, 104);
    for _ in 0..config.samples {
        let m = rng.gen_range(1..=15);
        let pp = random_plane(m, &mut rng);
        let ok = (|| {
            let h = hat(&pp).ok()?;
            let off = bar_offset(pp.ground());
            let originals = pp.ground().elements();
            let barred: Vec<i32> = originals.iter().map(|v| v + off).collect();
            let keeps_pi = originals
                .iter()
                .all(|&v| h.pi().image(v) == pp.pi().image(v));
            let restricted = h.pi().restrict(&barred).ok()?;
            Some(
                h.diagonal().is_fixed_point_free_involution()
                    && keeps_pi
                    && restricted.cycle_count() == pp.diagonal().cycle_count(),
            )
        })()
        .unwrap_or(false);
        t.record(ok, || pp.render_two_row());
    }
    t.finish()
}

pub fn check_block_interchange_moves(config: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("block-interchange keeps D and moves C(pi) by at most 2");
    let mut rng = rng_for(config.seed, 105);
    let rounds = (config.samples / 20).max(1);
    for _ in 0..rounds {
        let m = rng.gen_range(2..=7);
        let pp = random_plane(m, &mut rng);
        let d = pp.diagonal();
        let c = pp.cycle_count() as i64;
        for h in BlockInterchange::all(m) {
            let ok = block_interchange(&pp, h)
                .map(|q| q.diagonal() == d && (q.cycle_count() as i64 - c).abs() <= 2)
                .unwrap_or(false);
            t.record(ok, || format!("{h:?} on\n{pp}"));
        }
    }
    t.finish()
}

pub fn check_reversal_square(config: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("reversal commutes with its block-interchange");
    for n in 1..=config
        .exhaustive_n
        .clamp(4, crate::signed_perm::MAX_ENUMERATE_N)
    {
        for a in enumerate_all(n).expect("bounded n") {
            let inst = skew_symmetric(&a);
            for step in ReversalStep::all(n) {
                let ok = inst
                    .apply_reversal(step.i, step.j)
                    .map(|via_block| {
                        via_block == skew_symmetric(&a.reverse(step).expect("in range"))
                    })
                    .unwrap_or(false);
                t.record(ok, || format!("{a} {step}"));
            }
        }
    }
    t.finish()
}

/// Runs every check; the first two use [`corpus`].
pub fn run_battery(config: &VerifyConfig) -> Vec<CheckResult> {
    let corpus = corpus(config);
    vec![
        check_bound_equivalence(&corpus),
        check_conjecture_corpus(&corpus),
        check_fatgraph_invariants(&corpus),
        check_extension_is_breakpoint(&corpus),
        check_matrix_factorization(config),
        check_no_odd_return(config),
        check_fixed_points_share_cycle(config),
        check_extension_adds_one_cycle(config),
        check_hat_construction(config),
        check_block_interchange_moves(config),
        check_reversal_square(config),
    ]
}

pub fn render_table(results: &[CheckResult]) -> String {
    let width = results
        .iter()
        .map(|r| r.name.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for r in results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let pad = width - r.name.chars().count();
        out.push_str(&format!(
            "{status}  {}{}  {:>8} cases  {:>4} failures\n",
            r.name,
            " ".repeat(pad),
            r.cases,
            r.failures
        ));
        if let Some(f) = &r.first_failure {
            out.push_str(&format!(
                "      first failure: {}\n",
                f.replace('\n', " | ")
            ));
        }
    }
    out
}
