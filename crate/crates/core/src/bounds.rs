//! The three reversal-distance lower bounds and their cross-checks.
//!
//! * plane: `(2n+1 - C(p ∘ s̃)) / 2`
//! * breakpoint graph: `n+1 - C_BG(a)`, equivalently `(2n+2 - C(θ₁ ∘ θ₂)) / 2`
//! * genus of the fatgraph built by [`crate::fatgraph::fatgraph_from_signed`]
//!
//! All three agree. The link goes through the factorization
//! `p ∘ s̃ = p_invo ∘ s_invo` into involutions with one fixed point each;
//! extending both by a fresh element `-(n+1)` yields exactly `θ₂` and `θ₁`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fatgraph::{fatgraph_from_signed, genus, FatgraphError};
use crate::perm_core::{GroundSet, PermError, Permutation, PermutationMatrix};
use crate::plane_perm::{p_cycle, skew_symmetric, PlaneError, SkewSymmetricInstance};
use crate::signed_perm::SignedPermutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Fatgraph(#[from] FatgraphError),
    #[error("{what} = {value} is odd")]
    Parity { what: &'static str, value: i64 },
    #[error("bounds disagree for {perm}: {detail}")]
    Disagreement { perm: String, detail: String },
    #[error("not an involution")]
    NotInvolution,
    #[error("involution has {0} fixed points, expected exactly 1")]
    FixedPoints(usize),
    #[error("fresh element {0} already belongs to the ground set")]
    FreshElementInGround(i32),
}

/// Doubled sequence `b_0 .. b_{2n+1}` and the black/grey matchings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakpointData {
    pub n: usize,
    pub b: Vec<i32>,
    pub theta1: Permutation,
    pub theta2: Permutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub c_plane: usize,
    pub c_theta: usize,
    pub c_bg: usize,
    pub bound: usize,
    pub bound_plane: usize,
    pub bound_bg: usize,
    pub bound_genus: usize,
}

fn half(what: &'static str, value: i64) -> Result<usize, BoundError> {
    if value % 2 != 0 || value < 0 {
        return Err(BoundError::Parity { what, value });
    }
    Ok((value / 2) as usize)
}

/// `C(p ∘ s̃)`.
pub fn plane_cycle_count(a: &SignedPermutation) -> usize {
    skew_symmetric(a).cycle_count()
}

pub fn bound_plane(a: &SignedPermutation) -> Result<usize, BoundError> {
    let n = a.len() as i64;
    half("2n+1 - C(p s)", 2 * n + 1 - plane_cycle_count(a) as i64)
}

/// Ground set `{-(n+1), .., n}` of the breakpoint graph.
pub fn breakpoint_ground(n: usize) -> Arc<GroundSet> {
    let n = n as i32;
    Arc::new(GroundSet::range(-(n + 1), n))
}

pub fn breakpoint(a: &SignedPermutation) -> BreakpointData {
    let n = a.len();
    let mut b = Vec::with_capacity(2 * n + 2);
    b.push(0);
    for &x in a.entries() {
        b.push(-x);
        b.push(x);
    }
    b.push(-(n as i32) - 1);
    let ground = breakpoint_ground(n);
    let black: Vec<[i32; 2]> = b.chunks(2).map(|c| [c[0], c[1]]).collect();
    let grey: Vec<[i32; 2]> = (0..=n as i32).map(|i| [i, -(i + 1)]).collect();
    let theta1 = Permutation::from_cycles(Arc::clone(&ground), &black)
        .expect("black edges form a perfect matching");
    let theta2 =
        Permutation::from_cycles(ground, &grey).expect("grey edges form a perfect matching");
    BreakpointData {
        n,
        b,
        theta1,
        theta2,
    }
}

impl BreakpointData {
    /// Number of alternating black/grey cycles, found by walking the graph
    /// edge by edge (does not compose `θ₁` and `θ₂`).
    pub fn alternating_cycles(&self) -> usize {
        let n = self.n as i32;
        let size = 2 * self.n + 2;
        let idx = |x: i32| (x + n + 1) as usize;
        let mut black = vec![0i32; size];
        for pair in self.b.chunks(2) {
            black[idx(pair[0])] = pair[1];
            black[idx(pair[1])] = pair[0];
        }
        // grey edge i -- -(i+1)
        let grey = |x: i32| if x >= 0 { -(x + 1) } else { -x - 1 };
        let mut seen = vec![false; size];
        let mut cycles = 0;
        for start in -(n + 1)..=n {
            if seen[idx(start)] {
                continue;
            }
            cycles += 1;
            let mut cur = start;
            loop {
                seen[idx(cur)] = true;
                let across = black[idx(cur)];
                seen[idx(across)] = true;
                cur = grey(across);
                if cur == start {
                    break;
                }
            }
        }
        cycles
    }

    /// `C(θ₁ ∘ θ₂)`.
    pub fn theta_cycle_count(&self) -> usize {
        self.theta1
            .compose(&self.theta2)
            .expect("same ground set")
            .cycle_count()
    }
}

/// Breakpoint-graph bound, computed both from `C_BG` and from `C(θ₁θ₂)`.
pub fn bound_bg(a: &SignedPermutation) -> Result<usize, BoundError> {
    let bp = breakpoint(a);
    let n = a.len() as i64;
    let by_cycles = n + 1 - bp.alternating_cycles() as i64;
    let by_thetas = half(
        "2n+2 - C(theta1 theta2)",
        2 * n + 2 - bp.theta_cycle_count() as i64,
    )?;
    if by_cycles < 0 || by_cycles as usize != by_thetas {
        return Err(BoundError::Disagreement {
            perm: a.to_string(),
            detail: format!("n+1-C_BG = {by_cycles}, theta form = {by_thetas}"),
        });
    }
    Ok(by_thetas)
}

pub fn bound_genus(a: &SignedPermutation) -> Result<usize, BoundError> {
    Ok(genus(&fatgraph_from_signed(a))?.genus)
}

/// `(p_invo, s_invo)` with `p_invo ∘ s_invo = p ∘ s̃`.
///
/// `p_invo = (-n, n-1)(-n+1, n-2)..(-1, 0)(n)` and
/// `s_invo = (0, -s_1)(s_1, -s_2)..(s_{n-1}, -s_n)(s_n)`.
pub fn involution_factors(a: &SignedPermutation) -> (Permutation, Permutation) {
    let n = a.len() as i32;
    let ground = Arc::new(GroundSet::range(-n, n));
    let p_pairs: Vec<[i32; 2]> = (0..n).map(|k| [-(k + 1), k]).collect();
    let mut prev = 0;
    let mut s_pairs = Vec::with_capacity(a.len());
    for &x in a.entries() {
        s_pairs.push([prev, -x]);
        prev = x;
    }
    let p_invo = Permutation::from_cycles(Arc::clone(&ground), &p_pairs).expect("disjoint pairs");
    let s_invo = Permutation::from_cycles(ground, &s_pairs).expect("disjoint pairs");
    (p_invo, s_invo)
}

/// Checks `P·S = (P·R)(R·S)` and that `P·R`, `R·S` are the permutations
/// returned by [`involution_factors`].
pub fn matrix_factorization_holds(a: &SignedPermutation) -> bool {
    let inst = skew_symmetric(a);
    let n = a.len();
    let p = p_cycle(n);
    let ground = Arc::clone(p.ground());
    let pm = p.to_matrix();
    let sm = inst.s_tilde().to_matrix();
    let r = PermutationMatrix::exchange(2 * n + 1);
    let pr = pm.product(&r).expect("same order");
    let rs = r.product(&sm).expect("same order");
    let (p_invo, s_invo) = involution_factors(a);
    pm.product(&sm).ok() == pr.product(&rs).ok()
        && Permutation::from_matrix(&pr, Arc::clone(&ground)).ok() == Some(p_invo)
        && Permutation::from_matrix(&rs, ground).ok() == Some(s_invo)
}

/// Computes every cycle count and bound, failing on any disagreement.
pub fn check_equivalence(a: &SignedPermutation) -> Result<BoundReport, BoundError> {
    let n = a.len();
    let inst = skew_symmetric(a);
    let c_plane = inst.cycle_count();
    let bp = breakpoint(a);
    let c_theta = bp.theta_cycle_count();
    let c_bg = bp.alternating_cycles();
    let bound_plane = half("2n+1 - C(p s)", 2 * n as i64 + 1 - c_plane as i64)?;
    let bound_bg = bound_bg(a)?;
    let bound_genus = bound_genus(a)?;

    let (p_invo, s_invo) = involution_factors(a);
    let factored = p_invo.compose(&s_invo)?;

    let disagree = |detail: String| BoundError::Disagreement {
        perm: a.to_string(),
        detail,
    };
    if &factored != inst.pi() {
        return Err(disagree("p_invo ∘ s_invo differs from p ∘ s̃".into()));
    }
    if c_plane + 1 != c_theta {
        return Err(disagree(format!(
            "C(p s) = {c_plane}, C(theta1 theta2) = {c_theta}"
        )));
    }
    if c_theta != 2 * c_bg {
        return Err(disagree(format!(
            "C(theta1 theta2) = {c_theta}, C_BG = {c_bg}"
        )));
    }
    if bound_plane != bound_bg || bound_plane != bound_genus {
        return Err(disagree(format!(
            "plane {bound_plane}, breakpoint {bound_bg}, genus {bound_genus}"
        )));
    }
    Ok(BoundReport {
        n,
        c_plane,
        c_theta,
        c_bg,
        bound: bound_plane,
        bound_plane,
        bound_bg,
        bound_genus,
    })
}

/// `n` and `s_n` lie in one cycle of `p ∘ s̃`.
pub fn check_conjecture(a: &SignedPermutation) -> bool {
    conjecture_holds(&skew_symmetric(a))
}

/// Same as [`check_conjecture`] for a raw skew-symmetric sequence `0, s_1, .., s_2n`.
pub fn check_conjecture_sequence(seq: &[i32]) -> Result<bool, BoundError> {
    Ok(conjecture_holds(&SkewSymmetricInstance::from_sequence(
        seq,
    )?))
}

fn conjecture_holds(inst: &SkewSymmetricInstance) -> bool {
    inst.pi()
        .same_cycle(inst.n() as i32, inst.s_n())
        .expect("n and s_n lie in {-n..n}")
}

fn unique_fixed_point(sigma: &Permutation) -> Result<i32, BoundError> {
    if !sigma.is_involution() {
        return Err(BoundError::NotInvolution);
    }
    match sigma.fixed_points().as_slice() {
        [a] => Ok(*a),
        other => Err(BoundError::FixedPoints(other.len())),
    }
}

/// Ground set with `x` added; kept sorted when the input is sorted.
fn extend_ground(ground: &GroundSet, x: i32) -> Result<Arc<GroundSet>, BoundError> {
    if ground.contains(x) {
        return Err(BoundError::FreshElementInGround(x));
    }
    let mut elements = ground.elements().to_vec();
    if elements.windows(2).all(|w| w[0] < w[1]) {
        let pos = elements.partition_point(|&y| y < x);
        elements.insert(pos, x);
    } else {
        elements.push(x);
    }
    Ok(Arc::new(GroundSet::new(elements)?))
}

/// Turns two involutions with unique fixed points `a`, `b` into fixed-point-free
/// involutions on `T ∪ {x}` by adding the pairs `(a, x)` and `(b, x)`.
pub fn extend_involutions(
    sigma1: &Permutation,
    sigma2: &Permutation,
    fresh: i32,
) -> Result<(Permutation, Permutation), BoundError> {
    if sigma1.ground() != sigma2.ground() {
        return Err(PermError::GroundMismatch.into());
    }
    let a = unique_fixed_point(sigma1)?;
    let b = unique_fixed_point(sigma2)?;
    let ground = extend_ground(sigma1.ground(), fresh)?;
    let extend = |sigma: &Permutation, fixed: i32| {
        Permutation::from_fn(Arc::clone(&ground), |y| {
            if y == fresh {
                fixed
            } else if y == fixed {
                fresh
            } else {
                sigma.image(y).expect("original element")
            }
        })
    };
    Ok((extend(sigma1, a)?, extend(sigma2, b)?))
}

/// No `x` and `1 <= k <= |T|` with `σ₁(σ₂σ₁)^k(x) = x`, for fixed-point-free involutions.
pub fn no_odd_return_holds(sigma1: &Permutation, sigma2: &Permutation) -> Result<bool, BoundError> {
    let tau = sigma2.compose(sigma1)?;
    let size = sigma1.len();
    for x in 0..size {
        let mut y = x;
        for _ in 1..=size {
            y = tau.apply_index(y);
            if sigma1.apply_index(y) == x {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The fixed points of `σ₁` and `σ₂` share a cycle of `σ₂ ∘ σ₁`.
pub fn fixed_points_share_cycle(
    sigma1: &Permutation,
    sigma2: &Permutation,
) -> Result<bool, BoundError> {
    let a = unique_fixed_point(sigma1)?;
    let b = unique_fixed_point(sigma2)?;
    Ok(sigma2.compose(sigma1)?.same_cycle(a, b)?)
}

/// `C(σ₁' ∘ σ₂') - 1 = C(σ₁ ∘ σ₂)` after extending by `fresh`.
pub fn extension_adds_one_cycle(
    sigma1: &Permutation,
    sigma2: &Permutation,
    fresh: i32,
) -> Result<bool, BoundError> {
    let (e1, e2) = extend_involutions(sigma1, sigma2, fresh)?;
    Ok(e1.compose(&e2)?.cycle_count() == sigma1.compose(sigma2)?.cycle_count() + 1)
}
