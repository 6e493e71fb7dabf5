//! One-sided interval restriction vectors and the permutation sets they cut
//! out of the symmetric group.
//!
//! A vector `b` of length `n` restricts row `i` to the values `[b_i, n]`;
//! the state space is every permutation compliant with all rows. Vectors are
//! normalized to weakly increasing order at construction, which leaves the
//! walk unchanged up to relabeling.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Cap on `enumerate` output size.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// A permutation of `1..=n`, stored as the image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((1..=n as u32).collect())
    }

    /// Validates that `images` is a permutation of `1..=n`.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(Error::InvalidInput(format!(
                    "not a permutation of 1..={n}: {images:?}"
                )));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Self(images))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// Image of row `i` (0-based row, 1-based value).
    pub fn image(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        self.0.swap(i, j);
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(
                f,
                "{}",
                self.0
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
    }
}

/// Sizes of the left and right equivalence classes of a restriction vector.
///
/// Left classes are the runs of equal values in `b`; right classes are the
/// column intervals between consecutive distinct values (capped at `n+1`).
/// The two lists always have equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClasses {
    pub left: Vec<u64>,
    pub right: Vec<u64>,
}

/// A normalized one-sided interval restriction vector.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RestrictionVector {
    #[serde(deserialize_with = "deserialize_lower")]
    lower: Vec<u32>,
}

fn deserialize_lower<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<u32>, D::Error> {
    let v = Vec::<u32>::deserialize(d)?;
    RestrictionVector::query(v.clone())
        .map_err(serde::de::Error::custom)?;
    Ok({
        let mut v = v;
        v.sort_unstable();
        v
    })
}

impl RestrictionVector {
    /// Strict constructor: sorts, checks entries lie in `[1, n]`, and
    /// rejects vectors whose permutation set is empty.
    pub fn new(bounds: Vec<u32>) -> Result<Self> {
        let v = Self::query(bounds)?;
        if let Some(i) = v.first_violation() {
            return Err(Error::EmptyStateSpace(format!(
                "b[{}] = {} exceeds its row index; no permutation satisfies the vector",
                i + 1,
                v.lower[i]
            )));
        }
        Ok(v)
    }

    /// Query constructor: accepts vectors with an empty permutation set so
    /// callers can inspect why.
    pub fn query(mut bounds: Vec<u32>) -> Result<Self> {
        let n = bounds.len();
        if n == 0 {
            return Err(Error::InvalidInput("restriction vector is empty".into()));
        }
        if let Some(&bad) = bounds.iter().find(|&&v| v == 0 || v as usize > n) {
            return Err(Error::InvalidInput(format!(
                "restriction entries must lie in [1, {n}], found {bad}"
            )));
        }
        bounds.sort_unstable();
        Ok(Self { lower: bounds })
    }

    pub fn n(&self) -> usize {
        self.lower.len()
    }

    /// The sorted lower bounds, one per row.
    pub fn lower(&self) -> &[u32] {
        &self.lower
    }

    fn first_violation(&self) -> Option<usize> {
        self.lower
            .iter()
            .enumerate()
            .find(|&(i, &b)| b as usize > i + 1)
            .map(|(i, _)| i)
    }

    /// Nonempty iff `b_i <= i` for every row.
    pub fn is_nonempty(&self) -> bool {
        self.first_violation().is_none()
    }

    fn ensure_nonempty(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some(i) => Err(Error::EmptyStateSpace(format!(
                "b[{}] = {} exceeds its row index",
                i + 1,
                self.lower[i]
            ))),
        }
    }

    /// Vertex degree of the transposition graph: `sum_i (i - b_i)`.
    pub fn degree(&self) -> Result<u64> {
        self.ensure_nonempty()?;
        Ok(self
            .lower
            .iter()
            .enumerate()
            .map(|(i, &b)| (i as u64 + 1) - b as u64)
            .sum())
    }

    /// `|S_M|` by the column-by-column product; zero signals empty.
    pub fn count(&self) -> BigUint {
        let n = self.n();
        let mut total = BigUint::one();
        for c in 1..=n as u32 {
            // rows allowed to hold value c, minus rows already used by 1..c-1
            let rows = self.lower.partition_point(|&b| b <= c) as u64;
            let used = c as u64 - 1;
            if rows <= used {
                return BigUint::zero();
            }
            total *= rows - used;
        }
        total
    }

    /// Sizes of the left and right equivalence classes.
    pub fn classes(&self) -> EquivalenceClasses {
        let n = self.n() as u32;
        let mut values = self.lower.clone();
        values.dedup();
        let left = values
            .iter()
            .map(|&v| self.lower.iter().filter(|&&b| b == v).count() as u64)
            .collect();
        let mut right = Vec::with_capacity(values.len());
        for (i, &v) in values.iter().enumerate() {
            let next = values.get(i + 1).copied().unwrap_or(n + 1);
            right.push((next - v) as u64);
        }
        EquivalenceClasses { left, right }
    }

    /// Two-step recognition: at most two distinct values, the first being 1.
    /// The degenerate all-ones vector reports `f = n, g = 1`.
    pub fn two_step_params(&self) -> Option<TwoStepParams> {
        let n = self.n() as u64;
        let classes = self.classes();
        if self.lower[0] != 1 || classes.left.len() > 2 {
            return None;
        }
        if classes.left.len() == 1 {
            return Some(TwoStepParams { n, f: n, g: 1 });
        }
        let f = classes.left[0];
        let g = self.lower[f as usize] as u64 - 1;
        Some(TwoStepParams { n, f, g })
    }

    /// Membership test: `sigma(i) >= b_i` for all rows.
    pub fn contains(&self, p: &Permutation) -> bool {
        p.n() == self.n()
            && p.images()
                .iter()
                .zip(&self.lower)
                .all(|(&img, &b)| img >= b)
    }

    /// Whether swapping the values at rows `i` and `j` (0-based) keeps the
    /// permutation in the set. Equal rows are holds, not edges.
    pub fn allows_swap(&self, p: &Permutation, i: usize, j: usize) -> bool {
        if i == j || i >= self.n() || j >= self.n() {
            return false;
        }
        p.image(i) >= self.lower[j] && p.image(j) >= self.lower[i]
    }

    /// All states one allowed transposition away; always `degree()` of them.
    pub fn neighbors(&self, p: &Permutation) -> Vec<Permutation> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                // sorted b: the swap is allowed iff the smaller row's value
                // clears the larger row's bound
                if p.image(i) >= self.lower[j] {
                    let mut q = p.clone();
                    q.swap_rows(i, j);
                    out.push(q);
                }
            }
        }
        out
    }

    /// Every compliant permutation in lexicographic order of the image
    /// sequence, guarded by the default cap.
    pub fn enumerate(&self) -> Result<Vec<Permutation>> {
        self.enumerate_capped(DEFAULT_ENUM_CAP)
    }

    pub fn enumerate_capped(&self, cap: u64) -> Result<Vec<Permutation>> {
        let count = self.count();
        if count > BigUint::from(cap) {
            return Err(Error::CapExceeded {
                what: "state enumeration".into(),
                needed: count.to_string(),
                cap,
            });
        }
        let n = self.n();
        let mut out = Vec::new();
        let mut used = vec![false; n + 1];
        let mut cur: Vec<u32> = Vec::with_capacity(n);
        fn rec(
            lower: &[u32],
            row: usize,
            used: &mut Vec<bool>,
            cur: &mut Vec<u32>,
            out: &mut Vec<Permutation>,
        ) {
            let n = lower.len();
            if row == n {
                out.push(Permutation(cur.clone()));
                return;
            }
            for v in lower[row]..=n as u32 {
                if !used[v as usize] {
                    used[v as usize] = true;
                    cur.push(v);
                    rec(lower, row + 1, used, cur, out);
                    cur.pop();
                    used[v as usize] = false;
                }
            }
        }
        rec(&self.lower, 0, &mut used, &mut cur, &mut out);
        debug_assert_eq!(BigUint::from(out.len()), count);
        Ok(out)
    }

    /// Exactly uniform sample: assign columns `1..=n` in increasing order,
    /// each to a uniformly chosen unused row whose bound admits it.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Permutation> {
        self.ensure_nonempty()?;
        let n = self.n();
        let mut images = vec![0u32; n];
        // rows with b <= c form a prefix of the sorted vector
        let mut free: Vec<usize> = Vec::with_capacity(n); // free rows among the prefix
        let mut prefix_end = 0;
        for c in 1..=n as u32 {
            while prefix_end < n && self.lower[prefix_end] <= c {
                free.push(prefix_end);
                prefix_end += 1;
            }
            let pick = rng.gen_range(0..free.len());
            let row = free.swap_remove(pick);
            images[row] = c;
        }
        Ok(Permutation(images))
    }
}

impl fmt::Debug for RestrictionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{:?}", self.lower)
    }
}

impl fmt::Display for RestrictionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.lower
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Parameters of a two-step restriction vector
/// `(1, ..., 1, g+1, ..., g+1)` with `f` leading ones.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct TwoStepParams {
    pub n: u64,
    pub f: u64,
    pub g: u64,
}

impl TwoStepParams {
    pub fn new(n: u64, f: u64, g: u64) -> Result<Self> {
        if n == 0 || f == 0 || g == 0 {
            return Err(Error::InvalidInput(
                "two-step parameters must be positive".into(),
            ));
        }
        if f > n {
            return Err(Error::InvalidInput(format!("f = {f} exceeds n = {n}")));
        }
        if g > f {
            return Err(Error::InvalidInput(format!(
                "g = {g} exceeds f = {f}: the walk is empty"
            )));
        }
        Ok(Self { n, f, g })
    }

    /// Expands to the restriction vector.
    pub fn vector(&self) -> RestrictionVector {
        let mut lower = vec![1u32; self.n as usize];
        for slot in lower.iter_mut().skip(self.f as usize) {
            *slot = self.g as u32 + 1;
        }
        RestrictionVector { lower }
    }

    /// Closed-form degree `(n^2 - n)/2 - ng + fg`.
    pub fn delta(&self) -> u64 {
        let (n, f, g) = (self.n as i64, self.f as i64, self.g as i64);
        ((n * n - n) / 2 - n * g + f * g) as u64
    }

    /// `n + 2*delta = n^2 - 2ng + 2fg`, the common eigenvalue denominator.
    pub fn n_plus_two_delta(&self) -> u64 {
        self.n + 2 * self.delta()
    }

    /// Closed-form size `f! (n-g)! / (f-g)!`.
    pub fn count(&self) -> BigUint {
        let range = |lo: u64, hi: u64| -> BigUint {
            (lo..=hi).fold(BigUint::one(), |acc, x| acc * BigUint::from(x))
        };
        range(self.f - self.g + 1, self.f) * range(1, self.n - self.g)
    }

    /// A proper two-step vector has two left classes, i.e. `f < n`.
    pub fn is_proper(&self) -> bool {
        self.f < self.n
    }
}
