//! Eigenvalues and eigenspace dimensions of the walk's adjacency matrix,
//! indexed by chains of partitions.
//!
//! Each eigenspace corresponds to a chain `(lambda_1, mu_1, ..., lambda_s)`
//! whose alternating sizes are dictated by the equivalence classes of the
//! restriction vector. The adjacency eigenvalue of a chain is the alternating
//! content sum; its dimension is a product of standard-tableau counts of the
//! consecutive skew shapes. Summed over all chains the dimensions recover
//! the full state-space size, which is how the product convention is pinned
//! down in the test suite.

use crate::error::{Error, Result};
use crate::restriction::{RestrictionVector, TwoStepParams};
use crate::tableaux::{subpartitions, superpartitions, syt_count, Partition};
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Cap on the number of chains enumerated for one spectrum.
pub const DEFAULT_CHAIN_CAP: u64 = 10_000_000;

/// Exact eigenvalue ratio `(n + 2*eig) / (n + 2*delta)`.
pub type EigRatio = Ratio<i128>;

/// A chain `(lambda_1, mu_1, lambda_2, ..., lambda_s)` indexing one
/// eigenspace; stored flat, lambdas at even indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionChain {
    parts: Vec<Partition>,
}

impl PartitionChain {
    /// Builds a chain from the flat alternating sequence. The length must
    /// be odd and consecutive containments must hold.
    pub fn new(parts: Vec<Partition>) -> Result<Self> {
        if parts.len().is_multiple_of(2) || parts.is_empty() {
            return Err(Error::InvalidInput(format!(
                "a chain alternates lambda/mu and has odd length, got {}",
                parts.len()
            )));
        }
        for i in (1..parts.len()).step_by(2) {
            if !parts[i - 1].contains(&parts[i]) || !parts[i + 1].contains(&parts[i]) {
                return Err(Error::InvalidInput(format!(
                    "containment fails around position {i}"
                )));
            }
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    /// Number of lambda entries.
    pub fn steps(&self) -> usize {
        self.parts.len() / 2 + 1
    }

    pub fn lambdas(&self) -> impl Iterator<Item = &Partition> {
        self.parts.iter().step_by(2)
    }

    pub fn mus(&self) -> impl Iterator<Item = &Partition> {
        self.parts.iter().skip(1).step_by(2)
    }

    /// Checks the size and containment constraints imposed by `b`.
    pub fn validate_for(&self, b: &RestrictionVector) -> Result<()> {
        let classes = b.classes();
        if classes.left.len() != self.steps() {
            return Err(Error::InvalidInput(format!(
                "chain has {} steps, vector has {} classes",
                self.steps(),
                classes.left.len()
            )));
        }
        let mut prev_mu = 0u64;
        for (i, lam) in self.lambdas().enumerate() {
            if lam.size() != prev_mu + classes.left[i] {
                return Err(Error::InvalidInput(format!(
                    "lambda_{} has size {}, expected {}",
                    i + 1,
                    lam.size(),
                    prev_mu + classes.left[i]
                )));
            }
            prev_mu = lam.size() - classes.right[i];
        }
        if prev_mu != 0 {
            return Err(Error::InvalidInput("chain sizes do not close".into()));
        }
        Ok(())
    }

    /// Alternating content sum: `sum C(lambda_i) - sum C(mu_i)`.
    pub fn eigenvalue_by_contents(&self) -> i64 {
        let lam: i64 = self.lambdas().map(|p| p.content_sum()).sum();
        let mu: i64 = self.mus().map(|p| p.content_sum()).sum();
        lam - mu
    }

    /// Per-square multiplicities: how many of the skew shapes
    /// `lambda_i / mu_{i-1}` contain each square (1-based row, column).
    pub fn indicator_tableau(&self) -> BTreeMap<(u32, u32), u32> {
        let mut map = BTreeMap::new();
        let mut prev_mu = Partition::empty();
        for (i, lam) in self.lambdas().enumerate() {
            for r in 0..lam.rows() {
                for c in prev_mu.part(r) + 1..=lam.part(r) {
                    *map.entry((r as u32 + 1, c)).or_insert(0) += 1;
                }
            }
            prev_mu = self
                .parts
                .get(2 * i + 1)
                .cloned()
                .unwrap_or_else(Partition::empty);
        }
        map
    }

    fn eigenvalue_by_indicator(&self) -> i64 {
        self.indicator_tableau()
            .iter()
            .map(|(&(r, c), &t)| t as i64 * (c as i64 - r as i64))
            .sum()
    }

    /// The adjacency eigenvalue, computed by both the indicator-tableau and
    /// the content-difference formulas; disagreement is a library bug.
    pub fn eigenvalue(&self) -> Result<i64> {
        let by_contents = self.eigenvalue_by_contents();
        let by_indicator = self.eigenvalue_by_indicator();
        if by_contents != by_indicator {
            return Err(Error::Internal(format!(
                "eigenvalue formulas disagree on {self:?}: contents {by_contents}, indicator {by_indicator}"
            )));
        }
        Ok(by_contents)
    }

    /// Eigenspace dimension: product over `i = 1..=s` of
    /// `|X_{lambda_i/mu_{i-1}}| * |X_{lambda_i/mu_i}|` with the outer mus
    /// empty. Pinned by the completeness checks.
    pub fn dimension(&self) -> BigUint {
        let empty = Partition::empty();
        let mut acc = BigUint::one();
        for (i, lam) in self.lambdas().enumerate() {
            let prev_mu = if i == 0 { &empty } else { &self.parts[2 * i - 1] };
            let next_mu = self.parts.get(2 * i + 1).unwrap_or(&empty);
            acc *= syt_count(lam, prev_mu) * syt_count(lam, next_mu);
        }
        acc
    }

    /// Componentwise conjugate chain: eigenvalue negates, dimension is
    /// preserved.
    pub fn transpose(&self) -> PartitionChain {
        PartitionChain {
            parts: self.parts.iter().map(|p| p.transpose()).collect(),
        }
    }

    /// Remainder sizes `(i, j, k)` of a two-step chain
    /// `(lambda_1, mu_1, lambda_2)`.
    pub fn remainder_triple(&self) -> Result<RemainderTriple> {
        if self.parts.len() != 3 {
            return Err(Error::NotTwoStep(format!(
                "remainder triples require a 3-part chain, got {} parts",
                self.parts.len()
            )));
        }
        let rem = |p: &Partition| p.size() - p.first_part() as u64;
        Ok(RemainderTriple {
            i: rem(&self.parts[0]),
            j: rem(&self.parts[1]),
            k: rem(&self.parts[2]),
        })
    }
}

impl fmt::Display for PartitionChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", strs.join(", "))
    }
}

/// Sizes of the remainders of a two-step chain.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RemainderTriple {
    pub i: u64,
    pub j: u64,
    pub k: u64,
}

/// Enumerates every chain of `b`, deterministically ordered by the
/// reverse-lexicographic order of each partition slot.
pub fn enumerate_chains(b: &RestrictionVector) -> Result<Vec<PartitionChain>> {
    enumerate_chains_capped(b, DEFAULT_CHAIN_CAP)
}

pub fn enumerate_chains_capped(b: &RestrictionVector, cap: u64) -> Result<Vec<PartitionChain>> {
    if !b.is_nonempty() {
        return Err(Error::EmptyStateSpace(format!("vector {b}")));
    }
    let classes = b.classes();
    let s = classes.left.len();
    // alternating target sizes: |lambda_1|, |mu_1|, |lambda_2|, ...
    let mut sizes = Vec::with_capacity(2 * s - 1);
    let mut cur = 0u64;
    for i in 0..s {
        cur += classes.left[i];
        sizes.push(cur);
        cur -= classes.right[i];
        if i + 1 < s {
            sizes.push(cur);
        }
    }
    debug_assert_eq!(cur, 0);

    let mut out: Vec<PartitionChain> = Vec::new();
    let mut stack: Vec<Partition> = Vec::new();
    fn rec(
        sizes: &[u64],
        pos: usize,
        stack: &mut Vec<Partition>,
        out: &mut Vec<PartitionChain>,
        cap: u64,
    ) -> Result<()> {
        if pos == sizes.len() {
            if out.len() as u64 >= cap {
                return Err(Error::CapExceeded {
                    what: "chain enumeration".into(),
                    needed: format!("more than {cap}"),
                    cap,
                });
            }
            out.push(PartitionChain {
                parts: stack.clone(),
            });
            return Ok(());
        }
        let candidates = if pos == 0 {
            crate::tableaux::partitions_capped(sizes[0], u64::MAX)?
        } else if pos % 2 == 1 {
            subpartitions(stack.last().unwrap(), sizes[pos])
        } else {
            superpartitions(stack.last().unwrap(), sizes[pos])
        };
        for c in candidates {
            stack.push(c);
            rec(sizes, pos + 1, stack, out, cap)?;
            stack.pop();
        }
        Ok(())
    }
    rec(&sizes, 0, &mut stack, &mut out, cap)?;
    Ok(out)
}

/// One aggregated line of a spectrum: adjacency eigenvalue, the transition
/// eigenvalue as the unreduced ratio `(n + 2*eig) / (n + 2*delta)`, and the
/// total dimension across chains sharing the eigenvalue.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpectralLine {
    pub eig_adj: i64,
    pub eig_num: i64,
    pub eig_den: u64,
    pub dim: BigUint,
}

impl SpectralLine {
    pub fn eig_ratio(&self) -> EigRatio {
        Ratio::new(self.eig_num as i128, self.eig_den as i128)
    }
}

/// The full eigenvalue multiset of one restriction vector, lines sorted by
/// decreasing adjacency eigenvalue.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Spectrum {
    pub n: u64,
    pub delta: u64,
    pub two_step: bool,
    pub lines: Vec<SpectralLine>,
    pub total_dim: BigUint,
}

impl Spectrum {
    pub fn max_eig(&self) -> i64 {
        self.lines.first().map(|l| l.eig_adj).unwrap_or(0)
    }

    /// Largest adjacency eigenvalue strictly below the degree.
    pub fn second_eig(&self) -> Option<i64> {
        self.lines.get(1).map(|l| l.eig_adj)
    }

    pub fn line_for(&self, eig_adj: i64) -> Option<&SpectralLine> {
        self.lines.iter().find(|l| l.eig_adj == eig_adj)
    }
}

/// Computes the aggregated spectrum of `b` by chain enumeration.
pub fn full_spectrum(b: &RestrictionVector) -> Result<Spectrum> {
    full_spectrum_capped(b, DEFAULT_CHAIN_CAP)
}

pub fn full_spectrum_capped(b: &RestrictionVector, cap: u64) -> Result<Spectrum> {
    let delta = b.degree()?;
    let n = b.n() as u64;
    let den = n + 2 * delta;
    let mut by_eig: BTreeMap<i64, BigUint> = BTreeMap::new();
    for chain in enumerate_chains_capped(b, cap)? {
        let eig = chain.eigenvalue()?;
        *by_eig.entry(eig).or_insert_with(BigUint::zero) += chain.dimension();
    }
    let mut total = BigUint::zero();
    let mut lines = Vec::with_capacity(by_eig.len());
    for (eig, dim) in by_eig.into_iter().rev() {
        total += &dim;
        lines.push(SpectralLine {
            eig_adj: eig,
            eig_num: n as i64 + 2 * eig,
            eig_den: den,
            dim,
        });
    }
    Ok(Spectrum {
        n,
        delta,
        two_step: b.two_step_params().is_some(),
        lines,
        total_dim: total,
    })
}

// ---------------------------------------------------------------------------
// eigenvalue and dimension bounds by remainder triple
// ---------------------------------------------------------------------------

/// The eigenvalue majorant `s(i, j, k)` for the transition eigenvalues of
/// all two-step chains with remainder sizes `(i, j, k)`:
/// `9/10` on the large-k zone `5k >= n - g`, otherwise
/// `1 - s1(i) + s2(j) - s3(k)` over the exact denominator `n + 2*delta`.
///
/// The large-k constant is asymptotic; the piecewise branch is a theorem at
/// every size.
pub fn eig_bound(triple: RemainderTriple, params: &TwoStepParams) -> Result<EigRatio> {
    let (n, f, g) = (params.n, params.f, params.g);
    let RemainderTriple { i, j, k } = triple;
    if i < j || k < j {
        return Err(Error::InvalidInput(format!(
            "remainder triple must satisfy i >= j <= k, got ({i},{j},{k})"
        )));
    }
    if i > f || j > f - g || k > n - g {
        return Err(Error::InvalidInput(format!(
            "remainder triple ({i},{j},{k}) outside the box ({f},{},{})",
            f - g,
            n - g
        )));
    }
    if in_large_k_zone(triple, params) {
        return Ok(Ratio::new(9, 10));
    }
    let den = params.n_plus_two_delta() as i128;
    let (i, j, k) = (i as i128, j as i128, k as i128);
    let (n, f, g) = (n as i128, f as i128, g as i128);
    let s1 = if 2 * i < f {
        Ratio::new(2 * i * (f - i + 1), den)
    } else {
        Ratio::new(i * f, den)
    };
    let s2 = Ratio::new(2 * j * (f - g - j + 1), den);
    let s3 = Ratio::new(2 * k * (n - g - k + 1), den);
    Ok(Ratio::one() - s1 + s2 - s3)
}

/// Whether the triple falls in the constant-9/10 zone `k >= (n - g)/5`.
pub fn in_large_k_zone(triple: RemainderTriple, params: &TwoStepParams) -> bool {
    5 * triple.k >= params.n - params.g
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, x| acc * BigUint::from(x))
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    for x in n - k + 1..=n {
        num *= BigUint::from(x);
    }
    num / factorial(k)
}

/// Upper bound on the summed dimension of all chains with remainder triple
/// `(i, j, k)`: `C(f,i) C(g,i-j) C(n-f,k-j) C(n-g,k) * i! k! / j!`.
/// Out-of-range binomials are zero.
pub fn dim_sum_bound(triple: RemainderTriple, params: &TwoStepParams) -> BigUint {
    let (n, f, g) = (params.n, params.f, params.g);
    let RemainderTriple { i, j, k } = triple;
    if j > i || j > k {
        return BigUint::zero();
    }
    let a = binomial(f, i) * binomial(g, i - j) * binomial(n - f, k - j) * binomial(n - g, k);
    a * factorial(i) * factorial(k) / factorial(j)
}

/// The three distinguished two-step chains: the top chain, and the two
/// next-eigenvalue candidates obtained by bending one row.
pub fn lead_chains(params: &TwoStepParams) -> Result<(PartitionChain, Option<PartitionChain>, Option<PartitionChain>)> {
    let (n, f, g) = (params.n, params.f, params.g);
    let top = PartitionChain::new(vec![
        Partition::row(f),
        Partition::row(f - g),
        Partition::row(n - g),
    ])?;
    let bend_first = if f >= 2 {
        Some(PartitionChain::new(vec![
            Partition::new(vec![f as u32 - 1, 1]),
            Partition::row(f - g),
            Partition::row(n - g),
        ])?)
    } else {
        None
    };
    let bend_last = if n - g >= 2 && f < n {
        Some(PartitionChain::new(vec![
            Partition::row(f),
            Partition::row(f - g),
            Partition::new(vec![(n - g) as u32 - 1, 1]),
        ])?)
    } else {
        None
    };
    Ok((top, bend_first, bend_last))
}
