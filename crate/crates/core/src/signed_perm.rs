//! Signed permutations and reversals.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `n` accepted by [`enumerate_all`] (2^8 * 8! = 10,321,920 values).
pub const MAX_ENUMERATE_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignedPermError {
    #[error("empty permutation")]
    Empty,
    #[error("entry 0 is not allowed")]
    ZeroEntry,
    #[error("magnitude {magnitude} out of range 1..={n}")]
    MagnitudeOutOfRange { magnitude: u32, n: usize },
    #[error("duplicate magnitude {0}")]
    DuplicateMagnitude(u32),
    #[error("malformed token {0:?}")]
    MalformedToken(String),
    #[error("reversal ({i},{j}) out of range for n={n}")]
    BadReversal { i: usize, j: usize, n: usize },
    #[error("n={n} too large to enumerate (max {max})")]
    TooLarge { n: usize, max: usize },
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<SignedPermError>,
    },
}

/// A sequence `a_1 .. a_n` whose magnitudes are a permutation of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct SignedPermutation {
    entries: Vec<i32>,
}

/// Reversal of positions `i..=j` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReversalStep {
    pub i: usize,
    pub j: usize,
}

impl ReversalStep {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub fn check(&self, n: usize) -> Result<(), SignedPermError> {
        if self.i >= 1 && self.i <= self.j && self.j <= n {
            Ok(())
        } else {
            Err(SignedPermError::BadReversal {
                i: self.i,
                j: self.j,
                n,
            })
        }
    }

    /// All `n(n+1)/2` reversals in lexicographic `(i, j)` order.
    pub fn all(n: usize) -> impl Iterator<Item = ReversalStep> {
        (1..=n).flat_map(move |i| (i..=n).map(move |j| ReversalStep { i, j }))
    }
}

impl fmt::Display for ReversalStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rho({},{})", self.i, self.j)
    }
}

impl SignedPermutation {
    pub fn new(entries: Vec<i32>) -> Result<Self, SignedPermError> {
        let n = entries.len();
        if n == 0 {
            return Err(SignedPermError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            if e == 0 {
                return Err(SignedPermError::ZeroEntry);
            }
            let m = e.unsigned_abs();
            if m as usize > n {
                return Err(SignedPermError::MagnitudeOutOfRange { magnitude: m, n });
            }
            if std::mem::replace(&mut seen[m as usize], true) {
                return Err(SignedPermError::DuplicateMagnitude(m));
            }
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: (1..=n as i32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    /// `a_k`, 1-based.
    pub fn get(&self, k: usize) -> i32 {
        self.entries[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &e)| e == k as i32 + 1)
    }

    /// Reverses the block `i..=j` and flips the sign of each entry in it.
    pub fn reverse(&self, step: ReversalStep) -> Result<Self, SignedPermError> {
        step.check(self.len())?;
        let mut entries = self.entries.clone();
        reverse_in_place(&mut entries, step.i - 1, step.j - 1);
        Ok(Self { entries })
    }

    /// The signed inverse: if `a_k = ±m` then the result has `±k` at position `m`.
    pub fn inverse(&self) -> Self {
        let mut entries = vec![0; self.len()];
        for (k, &e) in self.entries.iter().enumerate() {
            entries[e.unsigned_abs() as usize - 1] = e.signum() * (k as i32 + 1);
        }
        Self { entries }
    }

    /// Uniform random signed permutation, reproducible per seed.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(n, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut entries: Vec<i32> = (1..=n as i32).collect();
        entries.shuffle(rng);
        for e in &mut entries {
            if rng.gen::<bool>() {
                *e = -*e;
            }
        }
        Self { entries }
    }
}

/// Reverses and negates `v[lo..=hi]` (0-based, inclusive).
#[inline]
pub(crate) fn reverse_in_place(v: &mut [i32], lo: usize, hi: usize) {
    v[lo..=hi].reverse();
    for e in &mut v[lo..=hi] {
        *e = -*e;
    }
}

impl TryFrom<Vec<i32>> for SignedPermutation {
    type Error = SignedPermError;

    fn try_from(entries: Vec<i32>) -> Result<Self, Self::Error> {
        Self::new(entries)
    }
}

impl From<SignedPermutation> for Vec<i32> {
    fn from(a: SignedPermutation) -> Self {
        a.entries
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for SignedPermutation {
    type Err = SignedPermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Parses whitespace- and/or comma-separated signed integers; a bare integer is positive.
pub fn parse(text: &str) -> Result<SignedPermutation, SignedPermError> {
    let entries = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i32>()
                .map_err(|_| SignedPermError::MalformedToken(t.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    SignedPermutation::new(entries)
}

pub fn format(a: &SignedPermutation) -> String {
    a.to_string()
}

/// One permutation per non-blank line; lines starting with `#` are skipped.
pub fn parse_many(text: &str) -> Result<Vec<SignedPermutation>, SignedPermError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(k, l)| {
            parse(l).map_err(|e| SignedPermError::Line {
                line: k + 1,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Every signed permutation of length `n`: magnitudes in lexicographic order,
/// and for each magnitude order the signs run as an `n`-bit counter (bit `k`
/// set means entry `k` is negative).
pub fn enumerate_all(n: usize) -> Result<EnumerateAll, SignedPermError> {
    if n == 0 {
        return Err(SignedPermError::Empty);
    }
    if n > MAX_ENUMERATE_N {
        return Err(SignedPermError::TooLarge {
            n,
            max: MAX_ENUMERATE_N,
        });
    }
    Ok(EnumerateAll {
        magnitudes: Some((1..=n as i32).collect()),
        mask: 0,
    })
}

pub struct EnumerateAll {
    magnitudes: Option<Vec<i32>>,
    mask: u32,
}

impl Iterator for EnumerateAll {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        let mags = self.magnitudes.as_mut()?;
        let n = mags.len();
        let entries = mags
            .iter()
            .enumerate()
            .map(|(k, &m)| if self.mask >> k & 1 == 1 { -m } else { m })
            .collect();
        self.mask += 1;
        if self.mask == 1 << n {
            self.mask = 0;
            if !next_permutation(mags) {
                self.magnitudes = None;
            }
        }
        Some(SignedPermutation { entries })
    }
}

fn next_permutation(v: &mut [i32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sp(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn reversal_steps_of_worked_example() {
        let a = sp(&[-5, 1, -3, 2, 4]);
        let b = a.reverse(ReversalStep::new(3, 4)).unwrap();
        assert_eq!(b, sp(&[-5, 1, -2, 3, 4]));
        let c = b.reverse(ReversalStep::new(3, 3)).unwrap();
        assert_eq!(c, sp(&[-5, 1, 2, 3, 4]));
        let d = c.reverse(ReversalStep::new(1, 5)).unwrap();
        assert_eq!(d, sp(&[-4, -3, -2, -1, 5]));
        let e = d.reverse(ReversalStep::new(1, 4)).unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn reversal_twice_is_identity() {
        let a = sp(&[-5, 1, -3, 2, 4]);
        let r = ReversalStep::new(2, 4);
        assert_eq!(a.reverse(r).unwrap().reverse(r).unwrap(), a);
    }

    #[test]
    fn reversal_out_of_range() {
        let a = sp(&[1, 2]);
        assert!(matches!(
            a.reverse(ReversalStep::new(2, 3)),
            Err(SignedPermError::BadReversal { .. })
        ));
        assert!(a.reverse(ReversalStep::new(2, 1)).is_err());
        assert!(a.reverse(ReversalStep::new(0, 1)).is_err());
    }

    #[test]
    fn identity_predicate() {
        assert!(sp(&[1, 2, 3]).is_identity());
        assert!(!sp(&[-1]).is_identity());
        assert!(!sp(&[2, 1]).is_identity());
    }

    #[test]
    fn enumerate_small() {
        let all: Vec<_> = enumerate_all(1).unwrap().collect();
        assert_eq!(all, vec![sp(&[1]), sp(&[-1])]);
        let three: Vec<_> = enumerate_all(3).unwrap().collect();
        assert_eq!(three.len(), 48);
        assert_eq!(three.iter().collect::<HashSet<_>>().len(), 48);
        assert_eq!(three.iter().filter(|a| a.is_identity()).count(), 1);
        assert!(three[0].is_identity());
    }

    #[test]
    fn enumerate_cardinality() {
        for (n, count) in [(2, 8), (4, 384), (5, 3840)] {
            assert_eq!(enumerate_all(n).unwrap().count(), count);
        }
    }

    #[test]
    fn enumerate_guard() {
        assert!(matches!(
            enumerate_all(9),
            Err(SignedPermError::TooLarge { n: 9, .. })
        ));
        assert_eq!(enumerate_all(0).err(), Some(SignedPermError::Empty));
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(
            SignedPermutation::random(5, 42),
            SignedPermutation::random(5, 42)
        );
        assert_eq!(SignedPermutation::random(9, 3).len(), 9);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse("-5 1 -3 2 4").unwrap(), sp(&[-5, 1, -3, 2, 4]));
        assert_eq!(parse("1,2,3").unwrap(), sp(&[1, 2, 3]));
        assert_eq!(parse(" +1, -2 ").unwrap(), sp(&[1, -2]));
        assert_eq!(
            parse("1 1 2").unwrap_err(),
            SignedPermError::DuplicateMagnitude(1)
        );
        assert_eq!(parse("1 0").unwrap_err(), SignedPermError::ZeroEntry);
        assert_eq!(
            parse("1 4").unwrap_err(),
            SignedPermError::MagnitudeOutOfRange { magnitude: 4, n: 2 }
        );
        assert_eq!(
            parse("1 x").unwrap_err(),
            SignedPermError::MalformedToken("x".into())
        );
        assert_eq!(parse("  ").unwrap_err(), SignedPermError::Empty);
    }

    #[test]
    fn parse_many_skips_comments() {
        let text = "# header\n-5 1 -3 2 4\n\n  # indented comment\n1,2\n";
        let v = parse_many(text).unwrap();
        assert_eq!(v, vec![sp(&[-5, 1, -3, 2, 4]), sp(&[1, 2])]);
        let err = parse_many("1 2\n2 2\n").unwrap_err();
        assert!(matches!(err, SignedPermError::Line { line: 2, .. }));
    }

    #[test]
    fn signed_inverse() {
        let a = sp(&[-2, 3, 1]);
        // position 1 holds -2, so inverse holds -1 at position 2
        assert_eq!(a.inverse(), sp(&[3, -1, 2]));
        assert_eq!(a.inverse().inverse(), a);
    }
}
