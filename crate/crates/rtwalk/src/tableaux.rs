//! Integer partitions, skew shapes and standard Young tableau counts.
//!
//! Everything here is exact: sizes and contents in machine integers,
//! tableau counts in big integers.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Cap on the size accepted by [`partitions`]; listing grows like the
/// partition function, so anything near the cap is already impractical.
pub const DEFAULT_PARTITION_CAP: u64 = 200;

/// An integer partition, stored largest part first.
///
/// The empty partition is a first-class value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from weakly decreasing positive parts.
    /// Trailing zeros are stripped.
    ///
    /// Panics if the parts increase anywhere; callers construct partitions
    /// programmatically, so that is a bug, not an input error.
    pub fn new(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Single-row partition `(k)`; the empty partition when `k = 0`.
    pub fn row(k: u64) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Self::new(vec![k as u32])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part; 0 for the empty partition.
    pub fn first_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part at `row` (0-based), 0 beyond the last row.
    pub fn part(&self, row: usize) -> u32 {
        self.parts.get(row).copied().unwrap_or(0)
    }

    /// What remains after deleting the largest part.
    pub fn remainder(&self) -> Partition {
        if self.parts.is_empty() {
            Self::empty()
        } else {
            Self::new(self.parts[1..].to_vec())
        }
    }

    /// Componentwise containment of Ferrers diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .parts
            .iter()
            .enumerate()
            .all(|(r, &p)| self.part(r) >= p)
    }

    /// Sum of contents `column - row` over all squares, with the top-left
    /// square at (1,1) having content 0.
    pub fn content_sum(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(r, &p)| {
                let l = p as i64;
                let r = r as i64;
                // row r (0-based): contents -r .. l-1-r
                l * (l - 1) / 2 - r * l
            })
            .sum()
    }

    /// Conjugate partition (reflection along the main diagonal).
    pub fn transpose(&self) -> Partition {
        let Some(&first) = self.parts.first() else {
            return Self::empty();
        };
        let mut out = Vec::with_capacity(first as usize);
        for c in 1..=first {
            out.push(self.parts.iter().take_while(|&&p| p >= c).count() as u32);
        }
        Self::new(out)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// A skew shape `outer/inner` with `inner` contained in `outer`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::InvalidInput(format!(
                "inner {inner} is not contained in outer {outer}"
            )));
        }
        Ok(Self { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        Self {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> u64 {
        self.outer.size() - self.inner.size()
    }

    /// 1-based (row, column) membership test.
    pub fn contains_cell(&self, row: u32, col: u32) -> bool {
        row >= 1 && col > self.inner.part(row as usize - 1) && col <= self.outer.part(row as usize - 1)
    }

    pub fn content_sum(&self) -> i64 {
        self.outer.content_sum() - self.inner.content_sum()
    }

    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for r in 0..self.outer.rows() {
            for c in self.inner.part(r) + 1..=self.outer.part(r) {
                out.push((r as u32 + 1, c));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// standard Young tableau counts
// ---------------------------------------------------------------------------

type SytKey = (Vec<u32>, Vec<u32>);

fn syt_memo() -> &'static Mutex<HashMap<SytKey, BigUint>> {
    static MEMO: OnceLock<Mutex<HashMap<SytKey, BigUint>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Number of standard Young tableaux of the skew shape `outer/inner`,
/// by corner-removal recursion with a process-wide memo table.
pub fn syt_count(outer: &Partition, inner: &Partition) -> BigUint {
    debug_assert!(outer.contains(inner));
    if outer.size() == inner.size() {
        return BigUint::one();
    }
    let key = (outer.parts().to_vec(), inner.parts().to_vec());
    if let Some(v) = syt_memo().lock().unwrap().get(&key) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for r in 0..outer.rows() {
        let below = outer.part(r + 1);
        if outer.part(r) > inner.part(r) && outer.part(r) > below {
            let mut parts = outer.parts().to_vec();
            parts[r] -= 1;
            total += syt_count(&Partition::new(parts), inner);
        }
    }
    syt_memo().lock().unwrap().insert(key, total.clone());
    total
}

/// Tableau count of a straight shape.
pub fn syt_count_straight(shape: &Partition) -> BigUint {
    syt_count(shape, &Partition::empty())
}

pub fn syt_count_skew(shape: &SkewShape) -> BigUint {
    syt_count(shape.outer(), shape.inner())
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

/// All partitions of `size` in reverse-lexicographic order
/// (`(n), (n-1,1), ..., (1^n)`).
pub fn partitions(size: u64) -> Result<Vec<Partition>> {
    partitions_capped(size, DEFAULT_PARTITION_CAP)
}

pub fn partitions_capped(size: u64, cap: u64) -> Result<Vec<Partition>> {
    if size > cap {
        return Err(Error::CapExceeded {
            what: "partition enumeration".into(),
            needed: size.to_string(),
            cap,
        });
    }
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    descend(size as u32, size as u32, &mut cur, &mut out);
    Ok(out)
}

fn descend(remaining: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::new(cur.clone()));
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        cur.push(part);
        descend(remaining - part, part, cur, out);
        cur.pop();
    }
}

/// All `mu` contained in `lambda` with `|mu| = size`, reverse-lex order.
pub fn subpartitions(lambda: &Partition, size: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    if size > lambda.size() {
        return out;
    }
    let mut cur: Vec<u32> = Vec::new();
    fn rec(
        lambda: &Partition,
        row: usize,
        remaining: u64,
        prev: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition::new(cur.clone()));
            return;
        }
        if row >= lambda.rows() {
            return;
        }
        let hi = lambda.part(row).min(prev).min(remaining.min(u32::MAX as u64) as u32);
        for p in (1..=hi).rev() {
            cur.push(p);
            rec(lambda, row + 1, remaining - p as u64, p, cur, out);
            cur.pop();
        }
    }
    rec(lambda, 0, size, u32::MAX, &mut cur, &mut out);
    out
}

/// All `lambda` containing `mu` with `|lambda| = size`, reverse-lex order.
pub fn superpartitions(mu: &Partition, size: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    if size < mu.size() {
        return out;
    }
    let mut cur: Vec<u32> = Vec::new();
    fn rec(
        mu: &Partition,
        row: usize,
        remaining: u64,
        prev: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            if row >= mu.rows() {
                out.push(Partition::new(cur.clone()));
            }
            return;
        }
        // boxes still owed to uncovered rows of mu
        let owed: u64 = (row..mu.rows()).map(|r| mu.part(r) as u64).sum();
        if remaining < owed {
            return;
        }
        let lo = mu.part(row).max(1);
        let hi = prev.min((remaining - owed + mu.part(row) as u64).min(u32::MAX as u64) as u32);
        for p in (lo..=hi).rev() {
            cur.push(p);
            rec(mu, row + 1, remaining - p as u64, p, cur, out);
            cur.pop();
        }
    }
    rec(mu, 0, size, u32::MAX, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// content bounds
// ---------------------------------------------------------------------------

/// Upper bound for `C(lambda)` over partitions of `l` whose remainder has
/// size `i`: `(l^2-l)/2 - i(l-i+1)`. Attained at `(l-i, i)` when `i <= l/2`.
pub fn max_content(l: u64, i: u64) -> i64 {
    let (l, i) = (l as i64, i as i64);
    debug_assert!(i == 0 || i < l);
    (l * l - l) / 2 - i * (l - i + 1)
}

/// The companion bound for large remainders: `(l^2-l)/2 - il/2`,
/// exact as a rational.
pub fn max_content_large_remainder(l: u64, i: u64) -> Ratio<i64> {
    let (l, i) = (l as i64, i as i64);
    Ratio::new(l * l - l, 2) - Ratio::new(i * l, 2)
}

/// Upper bound for `C(lambda) - C(mu)` over `lambda` of `l` containing
/// `mu` of `m` with remainder sizes `i` and `j`.
pub fn max_content_skew(l: u64, m: u64, i: u64, j: u64) -> i64 {
    let (l, m, i, j) = (l as i64, m as i64, i as i64, j as i64);
    (l * l - l) / 2 - (m * m - m) / 2 - i * (l - i + 1) + j * (m - j + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{FromPrimitive, Signed};
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    /// Brute-force oracle: count standard fillings of a skew shape by
    /// placing 1..k cell by cell.
    fn syt_by_filling(outer: &Partition, inner: &Partition) -> u64 {
        let cells: Vec<(usize, usize)> = (0..outer.rows())
            .flat_map(|r| {
                (inner.part(r) as usize..outer.part(r) as usize).map(move |c| (r, c))
            })
            .collect();
        let k = cells.len();
        let mut filled: HashMap<(usize, usize), usize> = HashMap::new();
        // Labels are placed in increasing order, so a neighbor constraint
        // holds exactly when the neighbor cell is already filled or lies
        // outside the skew shape.
        fn rec(
            cells: &[(usize, usize)],
            inner: &Partition,
            filled: &mut HashMap<(usize, usize), usize>,
            label: usize,
            k: usize,
        ) -> u64 {
            if label > k {
                return 1;
            }
            let mut total = 0;
            for &(r, c) in cells {
                if filled.contains_key(&(r, c)) {
                    continue;
                }
                let left_ok =
                    c == inner.part(r) as usize || filled.contains_key(&(r, c - 1));
                let up_ok = r == 0
                    || c < inner.part(r - 1) as usize
                    || filled.contains_key(&(r - 1, c));
                if left_ok && up_ok {
                    filled.insert((r, c), label);
                    total += rec(cells, inner, filled, label + 1, k);
                    filled.remove(&(r, c));
                }
            }
            total
        }
        rec(&cells, inner, &mut filled, 1, k)
    }

    /// Aitken determinant oracle: f(outer/inner) = k! det[1/(outer_i - inner_j - i + j)!]
    fn syt_by_determinant(outer: &Partition, inner: &Partition) -> BigUint {
        let r = outer.rows();
        if r == 0 {
            return BigUint::one();
        }
        let k = (outer.size() - inner.size()) as u32;
        let mut mat: Vec<Vec<BigRational>> = Vec::new();
        for i in 0..r {
            let mut row = Vec::new();
            for j in 0..r {
                let a = outer.part(i) as i64 - inner.part(j) as i64 - i as i64 + j as i64;
                row.push(if a < 0 {
                    BigRational::zero()
                } else {
                    BigRational::new(BigInt::one(), factorial_big(a as u64))
                });
            }
            mat.push(row);
        }
        let det = det_rational(mat);
        let f = BigRational::from_integer(factorial_big(k as u64)) * det;
        assert!(f.is_integer() && !f.is_negative());
        f.to_integer().magnitude().clone()
    }

    fn factorial_big(n: u64) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, x| acc * BigInt::from_u64(x).unwrap())
    }

    #[allow(clippy::needless_range_loop)] // two rows of `m` in play
    fn det_rational(mut m: Vec<Vec<BigRational>>) -> BigRational {
        let n = m.len();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return BigRational::zero();
            };
            if piv != c {
                m.swap(piv, c);
                det = -det;
            }
            det *= m[c][c].clone();
            let inv = m[c][c].clone().recip();
            for i in c + 1..n {
                let factor = m[i][c].clone() * inv.clone();
                for j in c..n {
                    let sub = factor.clone() * m[c][j].clone();
                    m[i][j] -= sub;
                }
            }
        }
        det
    }

    /// Euler pentagonal recurrence for the partition function.
    fn partition_function(n: usize) -> BigUint {
        let mut p = vec![BigUint::zero(); n + 1];
        p[0] = BigUint::one();
        for m in 1..=n {
            let mut acc = BigInt::zero();
            let mut k = 1i64;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                let g2 = k * (3 * k + 1) / 2;
                if g1 as usize > m && g2 as usize > m {
                    break;
                }
                let sign = if k % 2 == 0 { -1 } else { 1 };
                if (g1 as usize) <= m {
                    acc += sign * BigInt::from(p[m - g1 as usize].clone());
                }
                if (g2 as usize) <= m {
                    acc += sign * BigInt::from(p[m - g2 as usize].clone());
                }
                k += 1;
            }
            p[m] = acc.to_biguint().unwrap();
        }
        p[n].clone()
    }

    #[test]
    fn content_sum_examples() {
        assert_eq!(p(&[4, 2, 1]).content_sum(), 3);
        assert_eq!(Partition::empty().content_sum(), 0);
        for l in 1..10u32 {
            assert_eq!(p(&[l]).content_sum(), (l as i64 * (l as i64 - 1)) / 2);
        }
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[4, 2, 1]).transpose(), p(&[3, 2, 1, 1]));
        assert_eq!(p(&[5]).transpose(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn syt_examples() {
        assert_eq!(syt_count_straight(&p(&[2, 1])), BigUint::from(2u32));
        // f = 6, g = 3: shape (5,1)/(3) has 3 fillings; (5,1) has 5
        assert_eq!(syt_count(&p(&[5, 1]), &p(&[3])), BigUint::from(3u32));
        assert_eq!(syt_count_straight(&p(&[5, 1])), BigUint::from(5u32));
        for k in 1..8u64 {
            assert_eq!(syt_count_straight(&Partition::row(k)), BigUint::one());
        }
    }

    #[test]
    fn syt_agrees_with_filling_enumeration_up_to_8_boxes() {
        for total in 0..=8u64 {
            for outer in partitions(total).unwrap() {
                for m in 0..=total {
                    for inner in subpartitions(&outer, m) {
                        let dp = syt_count(&outer, &inner);
                        let brute = syt_by_filling(&outer, &inner);
                        assert_eq!(dp, BigUint::from(brute), "{outer}/{inner}");
                    }
                }
            }
        }
    }

    #[test]
    fn syt_agrees_with_determinant_oracle() {
        for (outer, inner) in [
            (p(&[4, 2, 1]), Partition::empty()),
            (p(&[4, 3, 1]), p(&[2, 1])),
            (p(&[3, 3, 2]), p(&[2, 1])),
            (p(&[5, 1]), p(&[3])),
            (p(&[6, 4, 2, 1]), p(&[3, 1])),
        ] {
            assert_eq!(syt_count(&outer, &inner), syt_by_determinant(&outer, &inner));
        }
    }

    #[test]
    fn partition_enumeration_counts() {
        assert_eq!(partitions(4).unwrap().len(), 5);
        assert_eq!(partitions(0).unwrap(), vec![Partition::empty()]);
        assert_eq!(partitions(10).unwrap().len(), 42);
        for n in 0..=20u64 {
            assert_eq!(
                BigUint::from(partitions(n).unwrap().len()),
                partition_function(n as usize)
            );
        }
        assert!(matches!(
            partitions(10_000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn partition_enumeration_order_is_reverse_lex() {
        let got = partitions(4).unwrap();
        let expect = vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])];
        assert_eq!(got, expect);
    }

    #[test]
    fn sub_and_superpartitions() {
        assert_eq!(subpartitions(&p(&[2, 1]), 1), vec![p(&[1])]);
        assert_eq!(subpartitions(&p(&[2, 2]), 2), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(subpartitions(&p(&[3, 1]), 0), vec![Partition::empty()]);
        assert_eq!(
            superpartitions(&Partition::empty(), 3),
            partitions(3).unwrap()
        );
        assert_eq!(superpartitions(&p(&[1]), 2), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(superpartitions(&p(&[2]), 3), vec![p(&[3]), p(&[2, 1])]);
        // every superpartition contains mu and has the right size
        let mu = p(&[3, 2]);
        for lam in superpartitions(&mu, 8) {
            assert!(lam.contains(&mu));
            assert_eq!(lam.size(), 8);
        }
        assert_eq!(
            superpartitions(&mu, 8).len(),
            partitions(8)
                .unwrap()
                .iter()
                .filter(|l| l.contains(&mu))
                .count()
        );
    }

    #[test]
    fn branching_identity_up_to_10() {
        // f(lambda) = sum over mu of f(lambda/mu) f(mu), any slice size m
        for ell in 0..=10u64 {
            for lam in partitions(ell).unwrap() {
                let f = syt_count_straight(&lam);
                for m in 0..=ell {
                    let total: BigUint = subpartitions(&lam, m)
                        .iter()
                        .map(|mu| syt_count(&lam, mu) * syt_count_straight(mu))
                        .sum();
                    assert_eq!(total, f, "lambda {lam} m {m}");
                }
            }
        }
    }

    #[test]
    fn square_sum_identity_up_to_10() {
        for k in 0..=10u64 {
            let sum: BigUint = partitions(k)
                .unwrap()
                .iter()
                .map(|lam| {
                    let f = syt_count_straight(lam);
                    f.clone() * f
                })
                .sum();
            let fact = (1..=k).fold(BigUint::one(), |a, x| a * BigUint::from(x));
            assert_eq!(sum, fact, "k = {k}");
        }
    }

    #[test]
    fn content_bound_examples() {
        // equality case (l-i, i) for i <= l/2
        assert_eq!(max_content(6, 2), p(&[4, 2]).content_sum());
        for l in 1..=10u64 {
            assert_eq!(max_content(l, 0), p(&[l as u32]).content_sum());
        }
        // skew example: l=9, m=5, i=4, j=2 attains at (5,4)/(3,2)
        assert_eq!(
            max_content_skew(9, 5, 4, 2),
            p(&[5, 4]).content_sum() - p(&[3, 2]).content_sum()
        );
        assert_eq!(max_content_skew(7, 3, 0, 0), (49 - 7) / 2 - (9 - 3) / 2);
        // i = l/2 boundary with empty mu
        assert_eq!(max_content_skew(4, 0, 2, 0), p(&[2, 2]).content_sum());
    }

    #[test]
    fn content_bounds_vs_exhaustive_search() {
        // straight shapes, l <= 12, grouped by remainder size
        for l in 1..=12u64 {
            let mut best: HashMap<u64, i64> = HashMap::new();
            for lam in partitions(l).unwrap() {
                let i = lam.size() - lam.first_part() as u64;
                let c = lam.content_sum();
                best.entry(i).and_modify(|b| *b = (*b).max(c)).or_insert(c);
            }
            for (&i, &c) in &best {
                assert!(c <= max_content(l, i), "l={l} i={i}");
                if 2 * i <= l {
                    assert_eq!(c, max_content(l, i), "equality l={l} i={i}");
                }
                let large = max_content_large_remainder(l, i);
                if 2 * i >= l {
                    assert!(Ratio::from_integer(c) <= large, "large-bound l={l} i={i}");
                }
            }
        }
    }

    #[test]
    fn skew_content_bound_vs_exhaustive_search() {
        for l in 1..=9u64 {
            for lam in partitions(l).unwrap() {
                let i = lam.size() - lam.first_part() as u64;
                for m in 0..=l {
                    for mu in subpartitions(&lam, m) {
                        let j = mu.size() - mu.first_part() as u64;
                        let diff = lam.content_sum() - mu.content_sum();
                        assert!(
                            diff <= max_content_skew(l, m, i, j),
                            "{lam}/{mu} i={i} j={j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn partition_serializes_as_bare_array() {
        let lam = p(&[4, 2, 1]);
        assert_eq!(serde_json::to_string(&lam).unwrap(), "[4,2,1]");
        let back: Partition = serde_json::from_str("[4,2,1]").unwrap();
        assert_eq!(back, lam);
        let shape = SkewShape::new(p(&[3, 1]), p(&[1])).unwrap();
        assert_eq!(
            serde_json::to_string(&shape).unwrap(),
            r#"{"outer":[3,1],"inner":[1]}"#
        );
    }

    #[test]
    fn skew_shape_rejects_non_contained_inner() {
        assert!(SkewShape::new(p(&[2, 1]), p(&[3])).is_err());
    }

    proptest! {
        #[test]
        fn transpose_is_involution_and_negates_content(size in 0u64..=12) {
            for lam in partitions(size).unwrap() {
                let t = lam.transpose();
                prop_assert_eq!(t.transpose(), lam.clone());
                prop_assert_eq!(t.content_sum(), -lam.content_sum());
                prop_assert_eq!(t.size(), lam.size());
            }
        }

        #[test]
        fn syt_transpose_invariance(size in 0u64..=9) {
            for lam in partitions(size).unwrap() {
                prop_assert_eq!(
                    syt_count_straight(&lam),
                    syt_count_straight(&lam.transpose())
                );
            }
        }
    }
}
