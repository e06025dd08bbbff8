//! Plane permutations `(s, pi)` and the skew-symmetric encoding of signed
//! permutations.
//!
//! A plane permutation pairs a long cycle `s` with an arbitrary `pi` on the
//! same ground set. Its diagonal is `s ∘ pi⁻¹`. A block-interchange swaps two
//! disjoint blocks of the linearized `s` and recomputes `pi` so that the
//! diagonal is unchanged.
//!
//! A signed permutation `a` becomes the sequence `0, a_1, .., a_n, -a_n, .., -a_1`
//! on `{-n..n}`, read as a long cycle `s̃`, paired with `pi = p ∘ s̃` where `p` is
//! the long cycle `(0, -1, .., -n, n, .., 1)`. Reversals are then the
//! block-interchanges `(i, j, 2n+1-j, 2n+1-i)`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::perm_core::{GroundSet, PermError, Permutation};
use crate::signed_perm::{ReversalStep, SignedPermError, SignedPermutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Signed(#[from] SignedPermError),
    #[error("s is not a single cycle through the whole ground set")]
    NotLongCycle,
    #[error("anchor {0} is not in the ground set")]
    AnchorNotInGround(i32),
    #[error("invalid block-interchange ({i},{j},{k},{l}) for sequence length {len}")]
    BadBlockInterchange {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        len: usize,
    },
    #[error("sequence is not skew-symmetric: {0}")]
    NotSkewSymmetric(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanePermutation {
    s: Permutation,
    pi: Permutation,
    anchor: i32,
}

/// Positions into the linearized `s` sequence, 0 being the anchor.
/// Requires `1 <= i <= j < k <= l < len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockInterchange {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

impl BlockInterchange {
    pub fn new(i: usize, j: usize, k: usize, l: usize) -> Self {
        Self { i, j, k, l }
    }

    pub fn check(&self, len: usize) -> Result<(), PlaneError> {
        let BlockInterchange { i, j, k, l } = *self;
        if 1 <= i && i <= j && j < k && k <= l && l < len {
            Ok(())
        } else {
            Err(PlaneError::BadBlockInterchange { i, j, k, l, len })
        }
    }

    /// Every valid block-interchange on a sequence of length `len`.
    pub fn all(len: usize) -> impl Iterator<Item = BlockInterchange> {
        (1..len).flat_map(move |i| {
            (i..len).flat_map(move |j| {
                (j + 1..len)
                    .flat_map(move |k| (k..len).map(move |l| BlockInterchange { i, j, k, l }))
            })
        })
    }

    /// Swaps the blocks `[i..=j]` and `[k..=l]` of `seq`.
    pub fn apply_to_sequence(&self, seq: &[i32]) -> Vec<i32> {
        let BlockInterchange { i, j, k, l } = *self;
        let mut out = Vec::with_capacity(seq.len());
        out.extend_from_slice(&seq[..i]);
        out.extend_from_slice(&seq[k..=l]);
        out.extend_from_slice(&seq[j + 1..k]);
        out.extend_from_slice(&seq[i..=j]);
        out.extend_from_slice(&seq[l + 1..]);
        out
    }
}

impl PlanePermutation {
    pub fn new(s: Permutation, pi: Permutation, anchor: i32) -> Result<Self, PlaneError> {
        if s.ground() != pi.ground() {
            return Err(PermError::GroundMismatch.into());
        }
        if !s.ground().contains(anchor) {
            return Err(PlaneError::AnchorNotInGround(anchor));
        }
        if !s.is_long_cycle() {
            return Err(PlaneError::NotLongCycle);
        }
        Ok(Self { s, pi, anchor })
    }

    /// Builds `(s, pi)` from the `s` sequence and the matching bottom row `pi(s_k)`.
    pub fn from_rows(
        ground: Arc<GroundSet>,
        top: &[i32],
        bottom: &[i32],
    ) -> Result<Self, PlaneError> {
        let s = Permutation::long_cycle(Arc::clone(&ground), top)?;
        if bottom.len() != top.len() {
            return Err(PermError::LengthMismatch {
                expected: top.len(),
                got: bottom.len(),
            }
            .into());
        }
        let mut images = vec![0; ground.len()];
        for (&x, &y) in top.iter().zip(bottom) {
            images[ground.index_of(x).expect("s covers the ground set")] = y;
        }
        let pi = Permutation::from_images(ground, &images)?;
        Self::new(s, pi, top[0])
    }

    pub fn s(&self) -> &Permutation {
        &self.s
    }

    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    pub fn anchor(&self) -> i32 {
        self.anchor
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        self.s.ground()
    }

    /// `s_0 = anchor, s_1 = s(anchor), ...`
    pub fn s_sequence(&self) -> Vec<i32> {
        self.s
            .orbit(self.anchor)
            .expect("anchor is in the ground set")
    }

    /// `s ∘ pi⁻¹`.
    pub fn diagonal(&self) -> Permutation {
        self.s
            .compose(&self.pi.inverse())
            .expect("s and pi share a ground set")
    }

    pub fn cycle_count(&self) -> usize {
        self.pi.cycle_count()
    }

    pub fn two_row(&self) -> (Vec<i32>, Vec<i32>) {
        let top = self.s_sequence();
        let bottom = top
            .iter()
            .map(|&x| self.pi.image(x).expect("top row lies in the ground set"))
            .collect();
        (top, bottom)
    }

    /// Two aligned text rows, labels rendered through the ground set.
    pub fn render_two_row(&self) -> String {
        let (top, bottom) = self.two_row();
        let g = self.ground();
        let top: Vec<String> = top.iter().map(|&x| g.label(x)).collect();
        let bottom: Vec<String> = bottom.iter().map(|&x| g.label(x)).collect();
        let width = top
            .iter()
            .chain(&bottom)
            .map(|t| t.chars().count())
            .max()
            .unwrap_or(1);
        let row = |cells: &[String]| {
            cells
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{}\n{}", row(&top), row(&bottom))
    }
}

impl fmt::Display for PlanePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_two_row())
    }
}

pub fn diagonal(pp: &PlanePermutation) -> Permutation {
    pp.diagonal()
}

/// `p^h = (s^h, D⁻¹ ∘ s^h)` with `s^h` the block-swapped sequence.
pub fn block_interchange(
    pp: &PlanePermutation,
    h: BlockInterchange,
) -> Result<PlanePermutation, PlaneError> {
    let seq = pp.s_sequence();
    h.check(seq.len())?;
    let swapped = h.apply_to_sequence(&seq);
    let s_h = Permutation::long_cycle(Arc::clone(pp.ground()), &swapped)?;
    let pi_h = pp.diagonal().inverse().compose(&s_h)?;
    PlanePermutation::new(s_h, pi_h, pp.anchor)
}

/// `p = (0, -1, -2, .., -n, n, n-1, .., 1)` on `{-n..n}`.
pub fn p_cycle(n: usize) -> Permutation {
    let n = n as i32;
    let seq: Vec<i32> = std::iter::once(0)
        .chain((1..=n).map(|k| -k))
        .chain((1..=n).rev())
        .collect();
    Permutation::long_cycle(Arc::new(GroundSet::range(-n, n)), &seq)
        .expect("p is a long cycle on {-n..n}")
}

/// `e_n^♮ = (0, 1, .., n, -n, .., -1)`, the skew-symmetric cycle of the identity.
pub fn e_natural(n: usize) -> Permutation {
    skew_cycle(&SignedPermutation::identity(n))
}

/// `0, a_1, .., a_n, -a_n, .., -a_1`.
pub fn skew_sequence(a: &SignedPermutation) -> Vec<i32> {
    std::iter::once(0)
        .chain(a.entries().iter().copied())
        .chain(a.entries().iter().rev().map(|&x| -x))
        .collect()
}

fn skew_cycle(a: &SignedPermutation) -> Permutation {
    let n = a.len() as i32;
    Permutation::long_cycle(Arc::new(GroundSet::range(-n, n)), &skew_sequence(a))
        .expect("skew sequence is a long cycle on {-n..n}")
}

/// `(i, j, 2n+1-j, 2n+1-i)`.
pub fn reversal_h(i: usize, j: usize, n: usize) -> Result<BlockInterchange, PlaneError> {
    ReversalStep::new(i, j).check(n)?;
    Ok(BlockInterchange::new(i, j, 2 * n + 1 - j, 2 * n + 1 - i))
}

/// A signed permutation together with its skew-symmetric plane permutation
/// `(s̃, p ∘ s̃)`, whose diagonal is `p⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewSymmetricInstance {
    a: SignedPermutation,
    plane: PlanePermutation,
}

impl SkewSymmetricInstance {
    /// Reads a raw skew-symmetric sequence `0, s_1, .., s_2n`.
    pub fn from_sequence(seq: &[i32]) -> Result<Self, PlaneError> {
        if seq.len().is_multiple_of(2) {
            return Err(PlaneError::NotSkewSymmetric(format!(
                "length {} is even",
                seq.len()
            )));
        }
        let n = seq.len() / 2;
        if seq[0] != 0 {
            return Err(PlaneError::NotSkewSymmetric("s_0 must be 0".into()));
        }
        for k in 1..=2 * n {
            if seq[k] != -seq[2 * n + 1 - k] {
                return Err(PlaneError::NotSkewSymmetric(format!(
                    "s_{k} = {} but s_{} = {}",
                    seq[k],
                    2 * n + 1 - k,
                    seq[2 * n + 1 - k]
                )));
            }
        }
        if n == 0 {
            return Err(SignedPermError::Empty.into());
        }
        let a = SignedPermutation::new(seq[1..=n].to_vec())?;
        Ok(skew_symmetric(&a))
    }

    pub fn signed(&self) -> &SignedPermutation {
        &self.a
    }

    pub fn plane(&self) -> &PlanePermutation {
        &self.plane
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn s_tilde(&self) -> &Permutation {
        self.plane.s()
    }

    pub fn pi(&self) -> &Permutation {
        self.plane.pi()
    }

    /// `C(p ∘ s̃)`.
    pub fn cycle_count(&self) -> usize {
        self.plane.cycle_count()
    }

    /// `s_n`, i.e. `a_n`.
    pub fn s_n(&self) -> i32 {
        self.a.get(self.a.len())
    }

    /// Applies `rho(i, j)` as the block-interchange `reversal_h(i, j, n)`.
    pub fn apply_reversal(&self, i: usize, j: usize) -> Result<Self, PlaneError> {
        let n = self.n();
        let h = reversal_h(i, j, n)?;
        let plane = block_interchange(&self.plane, h)?;
        let seq = plane.s_sequence();
        let a = SignedPermutation::new(seq[1..=n].to_vec())?;
        Ok(Self { a, plane })
    }
}

pub fn skew_symmetric(a: &SignedPermutation) -> SkewSymmetricInstance {
    let s = skew_cycle(a);
    let pi = p_cycle(a.len()).compose(&s).expect("p and s̃ share {-n..n}");
    let plane = PlanePermutation::new(s, pi, 0).expect("s̃ is a long cycle containing 0");
    SkewSymmetricInstance {
        a: a.clone(),
        plane,
    }
}

/// `C(p ∘ s̃)` straight from the entries of `a`, without building permutations.
pub fn pi_cycle_count(a: &SignedPermutation) -> usize {
    let n = a.len() as i32;
    let idx = |x: i32| (x + n) as usize;
    let entries = a.entries();
    let size = 2 * a.len() + 1;
    // s̃ as an image table over {-n..n}
    let mut s = vec![0i32; size];
    let seq = skew_sequence(a);
    for w in 0..seq.len() {
        s[idx(seq[w])] = seq[(w + 1) % seq.len()];
    }
    debug_assert_eq!(s[idx(0)], entries[0]);
    // p: 0 -> -1 -> .. -> -n -> n -> .. -> 1 -> 0
    let p = |x: i32| -> i32 {
        if x == -n {
            n
        } else {
            x - 1
        }
    };
    let mut seen = vec![false; size];
    let mut count = 0;
    for start in 0..size {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = idx(p(s[cur]));
        }
    }
    count
}

/// Smallest `(i, j)` whose reversal raises `C(pi)` by exactly 2.
pub fn find_2_reversal(inst: &SkewSymmetricInstance) -> Option<ReversalStep> {
    let a = inst.signed();
    let base = pi_cycle_count(a);
    ReversalStep::all(a.len()).find(|&step| {
        let b = a.reverse(step).expect("step enumerated within range");
        pi_cycle_count(&b) == base + 2
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn p_cycle_small() {
        let g = Arc::new(GroundSet::signed(1));
        assert_eq!(p_cycle(1), Permutation::long_cycle(g, &[0, -1, 1]).unwrap());
        let p5 = p_cycle(5);
        assert_eq!(
            p5.orbit(0).unwrap(),
            vec![0, -1, -2, -3, -4, -5, 5, 4, 3, 2, 1]
        );
    }

    #[test]
    fn p_times_e_natural_is_identity() {
        for n in 1..=8 {
            let prod = p_cycle(n).compose(&e_natural(n)).unwrap();
            assert_eq!(prod.cycle_count(), 2 * n + 1);
        }
    }

    #[test]
    fn worked_example_two_row() {
        let inst = skew_symmetric(&sp(&[-5, 1, -3, 2, 4]));
        let (top, bottom) = inst.plane().two_row();
        assert_eq!(top, vec![0, -5, 1, -3, 2, 4, -4, -2, 3, -1, 5]);
        assert_eq!(bottom, vec![5, 0, -4, 1, 3, -5, -3, 2, -2, 4, -1]);
        assert_eq!(inst.cycle_count(), 3);
    }

    #[test]
    fn skew_diagonal_is_p_inverse() {
        for a in [sp(&[-5, 1, -3, 2, 4]), sp(&[2, -1, 3]), sp(&[-1])] {
            let inst = skew_symmetric(&a);
            assert_eq!(inst.plane().diagonal(), p_cycle(a.len()).inverse());
        }
    }

    #[test]
    fn identity_instance_is_e_natural() {
        let inst = skew_symmetric(&SignedPermutation::identity(4));
        assert_eq!(inst.s_tilde(), &e_natural(4));
    }

    #[test]
    fn minus_one_instance() {
        let inst = skew_symmetric(&sp(&[-1]));
        assert_eq!(inst.plane().s_sequence(), vec![0, -1, 1]);
        let g = Arc::new(GroundSet::signed(1));
        assert_eq!(inst.pi(), &Permutation::long_cycle(g, &[0, 1, -1]).unwrap());
    }

    #[test]
    fn diagonal_of_pi_equal_s_is_identity() {
        let g = Arc::new(GroundSet::range(1, 5));
        let s = Permutation::long_cycle(g, &[1, 3, 5, 2, 4]).unwrap();
        let pp = PlanePermutation::new(s.clone(), s, 1).unwrap();
        assert!(pp.diagonal().is_identity());
    }

    #[test]
    fn six_cycle_diagonal() {
        let g = Arc::new(GroundSet::range(1, 6));
        let pp = PlanePermutation::from_rows(g.clone(), &[1, 2, 3, 4, 5, 6], &[4, 5, 6, 1, 2, 3])
            .unwrap();
        let d = Permutation::from_cycles(g, &[vec![1, 5, 3], vec![2, 6, 4]]).unwrap();
        assert_eq!(pp.diagonal(), d);
    }

    #[test]
    fn rejects_non_long_cycle() {
        let g = Arc::new(GroundSet::range(1, 3));
        let s = Permutation::from_cycles(g.clone(), &[vec![1, 2]]).unwrap();
        let pi = Permutation::identity(g);
        assert_eq!(
            PlanePermutation::new(s, pi, 1).unwrap_err(),
            PlaneError::NotLongCycle
        );
    }

    #[test]
    fn smallest_block_interchange_is_transposition() {
        let g = Arc::new(GroundSet::range(0, 2));
        let s = Permutation::long_cycle(g.clone(), &[0, 1, 2]).unwrap();
        let pp = PlanePermutation::new(s, Permutation::identity(g), 0).unwrap();
        let out = block_interchange(&pp, BlockInterchange::new(1, 1, 2, 2)).unwrap();
        assert_eq!(out.s_sequence(), vec![0, 2, 1]);
        assert_eq!(out.diagonal(), pp.diagonal());
    }

    #[test]
    fn bad_block_interchange() {
        let inst = skew_symmetric(&sp(&[1, 2]));
        for h in [
            BlockInterchange::new(0, 1, 2, 3),
            BlockInterchange::new(2, 2, 2, 3),
            BlockInterchange::new(1, 2, 3, 5),
        ] {
            assert!(matches!(
                block_interchange(inst.plane(), h),
                Err(PlaneError::BadBlockInterchange { .. })
            ));
        }
    }

    #[test]
    fn reversal_h_arithmetic() {
        assert_eq!(
            reversal_h(3, 4, 5).unwrap(),
            BlockInterchange::new(3, 4, 7, 8)
        );
        assert!(reversal_h(3, 6, 5).is_err());
    }

    #[test]
    fn apply_reversal_matches_signed_reversal() {
        let a = sp(&[-5, 1, -3, 2, 4]);
        let inst = skew_symmetric(&a);
        let by_block =
            BlockInterchange::new(3, 4, 7, 8).apply_to_sequence(&inst.plane().s_sequence());
        let next = inst.apply_reversal(3, 4).unwrap();
        assert_eq!(next.plane().s_sequence(), by_block);
        assert_eq!(by_block, skew_sequence(&sp(&[-5, 1, -2, 3, 4])));
        assert_eq!(next.signed(), &sp(&[-5, 1, -2, 3, 4]));
    }

    #[test]
    fn apply_single_reversal_on_identity() {
        let inst = skew_symmetric(&SignedPermutation::identity(2));
        let next = inst.apply_reversal(2, 2).unwrap();
        assert_eq!(next.plane().s_sequence(), vec![0, 1, -2, 2, -1]);
    }

    #[test]
    fn from_sequence_validation() {
        let inst =
            SkewSymmetricInstance::from_sequence(&[0, -5, 1, -3, 2, 4, -4, -2, 3, -1, 5]).unwrap();
        assert_eq!(inst.signed(), &sp(&[-5, 1, -3, 2, 4]));
        assert!(SkewSymmetricInstance::from_sequence(&[0, 1, 2, -2]).is_err());
        assert!(SkewSymmetricInstance::from_sequence(&[0, 1, 2, -2, 1]).is_err());
        assert!(SkewSymmetricInstance::from_sequence(&[1, 0, -1]).is_err());
        assert!(matches!(
            SkewSymmetricInstance::from_sequence(&[0, 1, 1, -1, -1]),
            Err(PlaneError::Signed(SignedPermError::DuplicateMagnitude(1)))
        ));
    }

    #[test]
    fn two_reversal_search() {
        assert_eq!(
            find_2_reversal(&skew_symmetric(&SignedPermutation::identity(4))),
            None
        );
        assert_eq!(
            find_2_reversal(&skew_symmetric(&sp(&[-1]))),
            Some(ReversalStep::new(1, 1))
        );
        let inst = skew_symmetric(&sp(&[-5, 1, -3, 2, 4]));
        let step = find_2_reversal(&inst).expect("a 2-reversal exists");
        let next = inst.apply_reversal(step.i, step.j).unwrap();
        assert_eq!(next.cycle_count(), inst.cycle_count() + 2);
    }

    #[test]
    fn direct_cycle_count_matches_composition() {
        for n in 1..=4 {
            for a in crate::signed_perm::enumerate_all(n).unwrap() {
                assert_eq!(pi_cycle_count(&a), skew_symmetric(&a).cycle_count(), "{a}");
            }
        }
    }
}
