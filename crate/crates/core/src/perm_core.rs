//! Permutations of small finite sets of signed integers.
//!
//! A [`GroundSet`] fixes an ordered list of distinct `i32` labels. A
//! [`Permutation`] is stored densely as a map between positions of that list,
//! so composition, inversion and cycle walks are array lookups.
//!
//! Composition reads right to left: `sigma.compose(&tau)` maps `x` to
//! `sigma(tau(x))`.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("element {0} occurs more than once")]
    DuplicateElement(i32),
    #[error("element {0} is not in the ground set")]
    NotInGround(i32),
    #[error("permutations are defined on different ground sets")]
    GroundMismatch,
    #[error("mapping is not a bijection: {0} is hit more than once")]
    NotBijective(i32),
    #[error("expected {expected} images, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("element {0} appears in more than one cycle")]
    OverlappingCycles(i32),
    #[error("restriction is not closed: {0} maps outside the subset")]
    NotClosed(i32),
    #[error("matrix dimension mismatch ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not a permutation matrix")]
    NotPermutationMatrix,
    #[error("cannot build an involution with {fixed} fixed points on {size} elements")]
    BadInvolutionShape { size: usize, fixed: usize },
}

const ABSENT: u32 = u32::MAX;

/// Ordered set of distinct signed integer labels.
///
/// `bar_offset`, when present, marks the labels `v + offset` as the barred
/// companions of `v`; it only affects rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    elements: Vec<i32>,
    min: i32,
    lookup: Vec<u32>,
    bar_offset: Option<i32>,
}

impl GroundSet {
    pub fn new(elements: Vec<i32>) -> Result<Self, PermError> {
        let min = elements.iter().copied().min().unwrap_or(0);
        let max = elements.iter().copied().max().unwrap_or(-1);
        let span = if elements.is_empty() {
            0
        } else {
            (max as i64 - min as i64 + 1) as usize
        };
        let mut lookup = vec![ABSENT; span];
        for (idx, &x) in elements.iter().enumerate() {
            let slot = &mut lookup[(x - min) as usize];
            if *slot != ABSENT {
                return Err(PermError::DuplicateElement(x));
            }
            *slot = idx as u32;
        }
        Ok(Self {
            elements,
            min,
            lookup,
            bar_offset: None,
        })
    }

    /// The contiguous range `lo..=hi` in increasing order.
    pub fn range(lo: i32, hi: i32) -> Self {
        Self::new((lo..=hi).collect()).expect("a range has distinct elements")
    }

    /// `{-n, ..., 0, ..., n}` in increasing order.
    pub fn signed(n: usize) -> Self {
        let n = n as i32;
        Self::range(-n, n)
    }

    pub fn with_bar_offset(mut self, offset: i32) -> Self {
        self.bar_offset = Some(offset);
        self
    }

    pub fn bar_offset(&self) -> Option<i32> {
        self.bar_offset
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[i32] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, idx: usize) -> i32 {
        self.elements[idx]
    }

    #[inline]
    pub fn index_of(&self, x: i32) -> Option<usize> {
        let off = x as i64 - self.min as i64;
        if off < 0 || off as usize >= self.lookup.len() {
            return None;
        }
        match self.lookup[off as usize] {
            ABSENT => None,
            idx => Some(idx as usize),
        }
    }

    pub fn contains(&self, x: i32) -> bool {
        self.index_of(x).is_some()
    }

    fn require(&self, x: i32) -> Result<usize, PermError> {
        self.index_of(x).ok_or(PermError::NotInGround(x))
    }

    /// Human-readable label; barred companions render with a trailing `'`.
    pub fn label(&self, x: i32) -> String {
        match self.bar_offset {
            Some(off) if off > 0 && 2 * x > off => format!("{}'", x - off),
            _ => x.to_string(),
        }
    }
}

/// Bijection of a [`GroundSet`] onto itself.
#[derive(Clone)]
pub struct Permutation {
    ground: Arc<GroundSet>,
    map: Vec<u32>,
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && same_ground(&self.ground, &other.ground)
    }
}

impl Eq for Permutation {}

fn same_ground(a: &Arc<GroundSet>, b: &Arc<GroundSet>) -> bool {
    Arc::ptr_eq(a, b) || a.elements == b.elements
}

impl Permutation {
    pub fn identity(ground: Arc<GroundSet>) -> Self {
        let map = (0..ground.len() as u32).collect();
        Self { ground, map }
    }

    fn from_index_map(ground: Arc<GroundSet>, map: Vec<u32>) -> Result<Self, PermError> {
        if map.len() != ground.len() {
            return Err(PermError::LengthMismatch {
                expected: ground.len(),
                got: map.len(),
            });
        }
        let mut seen = vec![false; map.len()];
        for &m in &map {
            let m = m as usize;
            if m >= seen.len() {
                return Err(PermError::LengthMismatch {
                    expected: ground.len(),
                    got: m + 1,
                });
            }
            if std::mem::replace(&mut seen[m], true) {
                return Err(PermError::NotBijective(ground.element(m)));
            }
        }
        Ok(Self { ground, map })
    }

    /// `images[k]` is the image of the `k`-th ground element.
    pub fn from_images(ground: Arc<GroundSet>, images: &[i32]) -> Result<Self, PermError> {
        let map = images
            .iter()
            .map(|&y| ground.require(y).map(|i| i as u32))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_index_map(ground, map)
    }

    pub fn from_fn(ground: Arc<GroundSet>, f: impl Fn(i32) -> i32) -> Result<Self, PermError> {
        let images: Vec<i32> = ground.elements().iter().map(|&x| f(x)).collect();
        Self::from_images(ground, &images)
    }

    /// Builds a permutation from disjoint cycles; unlisted elements are fixed.
    pub fn from_cycles<C: AsRef<[i32]>>(
        ground: Arc<GroundSet>,
        cycles: &[C],
    ) -> Result<Self, PermError> {
        let mut map: Vec<u32> = (0..ground.len() as u32).collect();
        let mut used = vec![false; ground.len()];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            let idx = cycle
                .iter()
                .map(|&x| ground.require(x))
                .collect::<Result<Vec<_>, _>>()?;
            for (&i, &x) in idx.iter().zip(cycle) {
                if std::mem::replace(&mut used[i], true) {
                    return Err(PermError::OverlappingCycles(x));
                }
            }
            for w in 0..idx.len() {
                map[idx[w]] = idx[(w + 1) % idx.len()] as u32;
            }
        }
        Ok(Self { ground, map })
    }

    /// The single cycle `(seq[0], seq[1], ..., seq[last])` on exactly the elements of `seq`.
    pub fn long_cycle(ground: Arc<GroundSet>, seq: &[i32]) -> Result<Self, PermError> {
        if seq.len() != ground.len() {
            return Err(PermError::LengthMismatch {
                expected: ground.len(),
                got: seq.len(),
            });
        }
        Self::from_cycles(ground, &[seq])
    }

    /// Random involution fixing exactly `fixed`, pairing the rest uniformly.
    pub fn random_involution<R: Rng + ?Sized>(
        ground: Arc<GroundSet>,
        fixed: &[i32],
        rng: &mut R,
    ) -> Result<Self, PermError> {
        let mut rest: Vec<i32> = ground
            .elements()
            .iter()
            .copied()
            .filter(|x| !fixed.contains(x))
            .collect();
        if rest.len() + fixed.len() != ground.len() || !rest.len().is_multiple_of(2) {
            return Err(PermError::BadInvolutionShape {
                size: ground.len(),
                fixed: fixed.len(),
            });
        }
        rest.shuffle(rng);
        let pairs: Vec<[i32; 2]> = rest.chunks(2).map(|c| [c[0], c[1]]).collect();
        Self::from_cycles(ground, &pairs)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply_index(&self, idx: usize) -> usize {
        self.map[idx] as usize
    }

    pub fn image(&self, x: i32) -> Option<i32> {
        self.ground
            .index_of(x)
            .map(|i| self.ground.element(self.map[i] as usize))
    }

    /// Like [`image`](Self::image) but errors on foreign elements.
    pub fn apply(&self, x: i32) -> Result<i32, PermError> {
        self.image(x).ok_or(PermError::NotInGround(x))
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if !same_ground(&self.ground, &other.ground) {
            return Err(PermError::GroundMismatch);
        }
        let map = other.map.iter().map(|&j| self.map[j as usize]).collect();
        Ok(Permutation {
            ground: Arc::clone(&self.ground),
            map,
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0u32; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j as usize] = i as u32;
        }
        Permutation {
            ground: Arc::clone(&self.ground),
            map,
        }
    }

    /// Disjoint cycles, fixed points included. Each cycle starts at its
    /// earliest element in ground order; cycles are listed in that order too.
    pub fn cycles(&self) -> Vec<Vec<i32>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(self.ground.element(cur));
                cur = self.map[cur] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.map.len()];
        let mut count = 0;
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.map[cur] as usize;
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn is_involution(&self) -> bool {
        self.map
            .iter()
            .enumerate()
            .all(|(i, &j)| self.map[j as usize] as usize == i)
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        self.is_involution() && self.map.iter().enumerate().all(|(i, &j)| i != j as usize)
    }

    /// True iff the permutation is one cycle through every ground element.
    pub fn is_long_cycle(&self) -> bool {
        !self.map.is_empty() && self.cycle_count() == 1
    }

    pub fn fixed_points(&self) -> Vec<i32> {
        self.map
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i == j as usize)
            .map(|(i, _)| self.ground.element(i))
            .collect()
    }

    /// True iff `y = self^k(x)` for some `k >= 0`.
    pub fn same_cycle(&self, x: i32, y: i32) -> Result<bool, PermError> {
        let start = self.ground.require(x)?;
        let target = self.ground.require(y)?;
        let mut cur = start;
        loop {
            if cur == target {
                return Ok(true);
            }
            cur = self.map[cur] as usize;
            if cur == start {
                return Ok(false);
            }
        }
    }

    /// The cycle through `x`, starting at `x`.
    pub fn orbit(&self, x: i32) -> Result<Vec<i32>, PermError> {
        let start = self.ground.require(x)?;
        let mut out = vec![x];
        let mut cur = self.map[start] as usize;
        while cur != start {
            out.push(self.ground.element(cur));
            cur = self.map[cur] as usize;
        }
        Ok(out)
    }

    /// Restriction to an invariant subset, on a new ground set listing `subset` in order.
    pub fn restrict(&self, subset: &[i32]) -> Result<Permutation, PermError> {
        let ground = Arc::new(GroundSet::new(subset.to_vec())?);
        let images = subset
            .iter()
            .map(|&x| {
                let y = self.apply(x)?;
                if ground.contains(y) {
                    Ok(y)
                } else {
                    Err(PermError::NotClosed(x))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_images(ground, &images)
    }

    /// Images listed in ground order.
    pub fn images(&self) -> Vec<i32> {
        self.map
            .iter()
            .map(|&j| self.ground.element(j as usize))
            .collect()
    }

    pub fn to_matrix(&self) -> PermutationMatrix {
        let order = self.map.len();
        let mut entries = vec![0u8; order * order];
        for (j, &i) in self.map.iter().enumerate() {
            entries[i as usize * order + j] = 1;
        }
        PermutationMatrix { order, entries }
    }

    pub fn from_matrix(
        matrix: &PermutationMatrix,
        ground: Arc<GroundSet>,
    ) -> Result<Permutation, PermError> {
        if matrix.order != ground.len() {
            return Err(PermError::DimensionMismatch(matrix.order, ground.len()));
        }
        if !matrix.is_permutation_matrix() {
            return Err(PermError::NotPermutationMatrix);
        }
        let order = matrix.order;
        let map = (0..order)
            .map(|j| {
                (0..order)
                    .find(|&i| matrix.entries[i * order + j] == 1)
                    .expect("checked permutation matrix") as u32
            })
            .collect();
        Self::from_index_map(ground, map)
    }
}

/// `sigma ∘ tau`.
pub fn compose(sigma: &Permutation, tau: &Permutation) -> Result<Permutation, PermError> {
    sigma.compose(tau)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (k, &x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.ground.label(x))?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Square 0/1 matrix with `a[i][j] = 1` iff `i = sigma(j)`, rows and columns
/// indexed in ground order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationMatrix {
    order: usize,
    entries: Vec<u8>,
}

impl PermutationMatrix {
    pub fn identity(order: usize) -> Self {
        let mut entries = vec![0u8; order * order];
        for i in 0..order {
            entries[i * order + i] = 1;
        }
        Self { order, entries }
    }

    /// The anti-diagonal matrix.
    pub fn exchange(order: usize) -> Self {
        let mut entries = vec![0u8; order * order];
        for i in 0..order {
            entries[i * order + (order - 1 - i)] = 1;
        }
        Self { order, entries }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, PermError> {
        let order = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != order) {
            return Err(PermError::DimensionMismatch(order, bad.len()));
        }
        Ok(Self {
            order,
            entries: rows.concat(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.order + col]
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        Self { order: n, entries }
    }

    pub fn is_permutation_matrix(&self) -> bool {
        let n = self.order;
        if self.entries.iter().any(|&e| e > 1) {
            return false;
        }
        (0..n).all(|i| {
            (0..n)
                .map(|j| self.entries[i * n + j] as usize)
                .sum::<usize>()
                == 1
        }) && (0..n).all(|j| {
            (0..n)
                .map(|i| self.entries[i * n + j] as usize)
                .sum::<usize>()
                == 1
        })
    }

    /// Ordinary integer matrix product.
    pub fn product(&self, rhs: &PermutationMatrix) -> Result<Self, PermError> {
        if self.order != rhs.order {
            return Err(PermError::DimensionMismatch(self.order, rhs.order));
        }
        let n = self.order;
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            for k in 0..n {
                if self.entries[i * n + k] == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += self.entries[i * n + k] * rhs.entries[k * n + j];
                }
            }
        }
        Ok(Self { order: n, entries })
    }
}

pub fn matrix_product(
    a: &PermutationMatrix,
    b: &PermutationMatrix,
) -> Result<PermutationMatrix, PermError> {
    a.product(b)
}

pub fn exchange_matrix(order: usize) -> PermutationMatrix {
    PermutationMatrix::exchange(order)
}
