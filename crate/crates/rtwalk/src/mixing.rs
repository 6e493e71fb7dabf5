//! Exact transition matrices and distances at enumerable sizes, plus the
//! spectral chi-squared formula for vertex-transitive (two-step) walks.
//!
//! Matrix powers are taken over the integers: the lazy chain's `t`-step
//! distribution has common denominator `(n + 2*delta)^t` and the
//! uniform-neighbor chain's `delta^t`, so distributions are integer vectors
//! until the caller divides.

use crate::error::{Error, Result};
use crate::restriction::{Permutation, RestrictionVector};
use crate::scalar::{CompensatedSum, Real};
use crate::spectrum::Spectrum;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Cap on the number of states for exact matrix work.
pub const DEFAULT_STATE_CAP: u64 = 50_000;

/// Which transition chain on the state space.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    /// `P = (nI + 2U) / (n + 2*delta)`: the random transposition walk with
    /// holding probability `n / (n + 2*delta)`.
    Lazy,
    /// `P = U / delta`: jump to a uniform neighbor, no holding.
    #[serde(rename = "uniform")]
    UniformNeighbor,
}

impl ChainKind {
    pub fn name(&self) -> &'static str {
        match self {
            ChainKind::Lazy => "lazy",
            ChainKind::UniformNeighbor => "uniform",
        }
    }
}

/// An enumerated state space with its transposition graph and chain kind.
pub struct ExactChain {
    pub vector: RestrictionVector,
    pub kind: ChainKind,
    pub n: u64,
    pub delta: u64,
    states: Vec<Permutation>,
    adjacency: Vec<Vec<u32>>,
}

impl ExactChain {
    pub fn build(vector: RestrictionVector, kind: ChainKind) -> Result<Self> {
        Self::build_capped(vector, kind, DEFAULT_STATE_CAP)
    }

    pub fn build_capped(vector: RestrictionVector, kind: ChainKind, cap: u64) -> Result<Self> {
        let delta = vector.degree()?;
        let states = vector.enumerate_capped(cap)?;
        let adjacency = states
            .iter()
            .map(|p| {
                vector
                    .neighbors(p)
                    .iter()
                    .map(|q| {
                        states
                            .binary_search(q)
                            .expect("neighbor of a state is a state") as u32
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            n: vector.n() as u64,
            delta,
            vector,
            kind,
            states,
            adjacency,
        })
    }

    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[Permutation] {
        &self.states
    }

    pub fn state_index(&self, p: &Permutation) -> Option<usize> {
        self.states.binary_search(p).ok()
    }

    /// Common denominator contributed by one step.
    pub fn step_denominator(&self) -> u64 {
        match self.kind {
            ChainKind::Lazy => self.n + 2 * self.delta,
            // a single isolated state holds with probability one
            ChainKind::UniformNeighbor => self.delta.max(1),
        }
    }

    fn step_numerators(&self, v: &[BigUint]) -> Vec<BigUint> {
        let mut new = match self.kind {
            ChainKind::Lazy => v
                .iter()
                .map(|x| x * BigUint::from(self.n))
                .collect::<Vec<_>>(),
            ChainKind::UniformNeighbor => {
                if self.delta == 0 {
                    return v.to_vec();
                }
                vec![BigUint::zero(); v.len()]
            }
        };
        let weight = match self.kind {
            ChainKind::Lazy => 2u32,
            ChainKind::UniformNeighbor => 1,
        };
        for (i, nbrs) in self.adjacency.iter().enumerate() {
            if v[i].is_zero() {
                continue;
            }
            let w = &v[i] * BigUint::from(weight);
            for &j in nbrs {
                new[j as usize] += &w;
            }
        }
        new
    }

    /// Integer numerators of the `t`-step distribution from `start`, over
    /// the denominator `step_denominator()^t`.
    pub fn distribution_numerators(&self, start: usize, t: u64) -> (Vec<BigUint>, BigUint) {
        let mut v = vec![BigUint::zero(); self.size()];
        v[start] = BigUint::one();
        for _ in 0..t {
            v = self.step_numerators(&v);
        }
        let den = BigUint::from(self.step_denominator()).pow(t as u32);
        (v, den)
    }

    /// Exact `t`-step distribution from `start` as rationals.
    pub fn distribution(&self, start: usize, t: u64) -> Vec<BigRational> {
        let (nums, den) = self.distribution_numerators(start, t);
        let den = BigInt::from(den);
        nums.into_iter()
            .map(|x| BigRational::new(BigInt::from(x), den.clone()))
            .collect()
    }

    /// The uniform stationary distribution.
    pub fn uniform(&self) -> Vec<BigRational> {
        let m = BigInt::from(self.size());
        vec![BigRational::new(BigInt::one(), m); self.size()]
    }

    /// Dense one-step transition matrix, exact.
    pub fn transition_matrix(&self) -> Vec<Vec<BigRational>> {
        (0..self.size())
            .map(|i| {
                let mut v = vec![BigUint::zero(); self.size()];
                v[i] = BigUint::one();
                let nums = self.step_numerators(&v);
                let den = BigInt::from(self.step_denominator());
                nums.into_iter()
                    .map(|x| BigRational::new(BigInt::from(x), den.clone()))
                    .collect()
            })
            .collect()
    }

    /// Exact TV distance to uniform after `t` steps from `start`.
    pub fn tv_to_uniform(&self, start: usize, t: u64) -> BigRational {
        tv_distance(&self.distribution(start, t), &self.uniform())
    }

    /// Exact squared chi-squared distance to uniform after `t` steps.
    pub fn chi_sq_to_uniform(&self, start: usize, t: u64) -> BigRational {
        chi_squared_sq(&self.distribution(start, t), &self.uniform())
            .expect("uniform distribution is positive")
    }

    /// Return probabilities `P^t(x, x)` for every state and every
    /// `1 <= t <= t_max`.
    pub fn return_probabilities(&self, t_max: u64) -> Vec<Vec<BigRational>> {
        let m = self.size();
        let mut diag_nums: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); m]; t_max as usize];
        for v0 in 0..m {
            let mut v = vec![BigUint::zero(); m];
            v[v0] = BigUint::one();
            for t in 1..=t_max {
                v = self.step_numerators(&v);
                diag_nums[t as usize - 1][v0] = v[v0].clone();
            }
        }
        let step_den = BigUint::from(self.step_denominator());
        let mut den = BigUint::one();
        diag_nums
            .into_iter()
            .map(|nums| {
                den *= &step_den;
                let d = BigInt::from(den.clone());
                nums.into_iter()
                    .map(|x| BigRational::new(BigInt::from(x), d.clone()))
                    .collect()
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// distances
// ---------------------------------------------------------------------------

/// Total variation distance: half the L1 distance. Works for exact
/// rationals and floating scalars alike.
pub fn tv_distance<T>(mu: &[T], pi: &[T]) -> T
where
    T: Signed + PartialOrd + Clone,
{
    assert_eq!(mu.len(), pi.len(), "distributions over different supports");
    let mut acc = T::zero();
    for (a, b) in mu.iter().zip(pi) {
        acc = acc + (a.clone() - b.clone()).abs();
    }
    acc / (T::one() + T::one())
}

/// Squared chi-squared distance `sum (mu/pi - 1)^2 pi`; errors on zero
/// stationary mass.
pub fn chi_squared_sq<T>(mu: &[T], pi: &[T]) -> Result<T>
where
    T: Signed + PartialOrd + Clone,
{
    assert_eq!(mu.len(), pi.len(), "distributions over different supports");
    let mut acc = T::zero();
    for (a, b) in mu.iter().zip(pi) {
        if b.is_zero() {
            return Err(Error::InvalidInput(
                "chi-squared distance needs strictly positive stationary mass".into(),
            ));
        }
        let r = a.clone() / b.clone() - T::one();
        acc = acc + r.clone() * r * b.clone();
    }
    Ok(acc)
}

/// Chi-squared distance in a floating scalar.
pub fn chi_squared<R: Real + Signed>(mu: &[R], pi: &[R]) -> Result<R> {
    chi_squared_sq(mu, pi).map(|x| x.sqrt())
}

fn ensure_two_step(spec: &Spectrum) -> Result<()> {
    if !spec.two_step {
        return Err(Error::NotTwoStep(
            "the spectral chi-squared formula needs vertex transitivity, \
             which is guaranteed only for two-step vectors"
                .into(),
        ));
    }
    Ok(())
}

/// Exact squared chi-squared distance from the spectrum:
/// `sum dim * eig^(2t)` over transition eigenvalues distinct from one.
/// Valid for two-step vectors, whose walks are vertex transitive.
pub fn chi_squared_sq_from_spectrum_exact(spec: &Spectrum, t: u64) -> Result<BigRational> {
    ensure_two_step(spec)?;
    let mut acc = BigRational::zero();
    for line in &spec.lines {
        if line.eig_num as u128 == line.eig_den as u128 {
            continue;
        }
        let ratio = BigRational::new(BigInt::from(line.eig_num), BigInt::from(line.eig_den));
        acc += BigRational::from_integer(BigInt::from(line.dim.clone()))
            * rational_pow(&ratio, 2 * t);
    }
    Ok(acc)
}

/// Floating-point version of the spectral chi-squared distance.
pub fn chi_squared_from_spectrum<R: Real>(spec: &Spectrum, t: u64) -> Result<R> {
    ensure_two_step(spec)?;
    let mut acc = CompensatedSum::<R>::new();
    for line in &spec.lines {
        if line.eig_num as u128 == line.eig_den as u128 {
            continue;
        }
        let ratio = R::from_int_ratio(line.eig_num, line.eig_den);
        let dim = R::from_big_ratio(&BigInt::from(line.dim.clone()), &BigInt::one());
        acc.add(dim * ratio.powu(2 * t));
    }
    Ok(acc.value().sqrt())
}

/// Exact rational power by repeated squaring.
pub fn rational_pow(r: &BigRational, mut e: u64) -> BigRational {
    let mut base = r.clone();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        let sq = base.clone();
        base *= sq;
        e >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// vertex transitivity probe
// ---------------------------------------------------------------------------

/// Outcome of the return-probability constancy scan.
///
/// A consistent verdict is necessary-condition evidence only; a witness is
/// a proof of non-transitivity.
#[derive(Clone, Debug, PartialEq)]
pub enum TransitivityVerdict {
    Consistent {
        t_max: u64,
    },
    Witness {
        state_a: Permutation,
        state_b: Permutation,
        t: u64,
        prob_a: BigRational,
        prob_b: BigRational,
    },
}

/// Scans `P^t(x, x)` for constancy over all states and `t <= t_max`,
/// returning the earliest witness pair if any.
pub fn vertex_transitivity_probe(chain: &ExactChain, t_max: u64) -> TransitivityVerdict {
    if chain.size() == 1 {
        return TransitivityVerdict::Consistent { t_max };
    }
    let diags = chain.return_probabilities(t_max);
    for (idx, diag) in diags.iter().enumerate() {
        if let Some(j) = diag.iter().position(|x| *x != diag[0]) {
            return TransitivityVerdict::Witness {
                state_a: chain.states()[0].clone(),
                state_b: chain.states()[j].clone(),
                t: idx as u64 + 1,
                prob_a: diag[0].clone(),
                prob_b: diag[j].clone(),
            };
        }
    }
    TransitivityVerdict::Consistent { t_max }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::restriction::TwoStepParams;
    use crate::scalar::DoubleDouble;
    use crate::spectrum::full_spectrum;
    use num_traits::ToPrimitive;

    fn b(v: &[u32]) -> RestrictionVector {
        RestrictionVector::new(v.to_vec()).unwrap()
    }

    fn frac(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn lazy_matrix_n2() {
        let chain = ExactChain::build(b(&[1, 1]), ChainKind::Lazy).unwrap();
        let m = chain.transition_matrix();
        assert_eq!(m[0][0], frac(1, 2));
        assert_eq!(m[0][1], frac(1, 2));
        assert_eq!(m[1][0], frac(1, 2));
        // rows sum to one
        for row in &m {
            assert_eq!(row.iter().sum::<BigRational>(), BigRational::one());
        }
    }

    #[test]
    fn single_state_chain() {
        for kind in [ChainKind::Lazy, ChainKind::UniformNeighbor] {
            let chain = ExactChain::build(b(&[1, 2, 3]), kind).unwrap();
            assert_eq!(chain.size(), 1);
            let m = chain.transition_matrix();
            assert_eq!(m, vec![vec![BigRational::one()]]);
        }
    }

    #[test]
    fn uniform_neighbor_rows() {
        let chain = ExactChain::build(b(&[1, 1, 1, 2, 3]), ChainKind::UniformNeighbor).unwrap();
        assert_eq!(chain.size(), 54);
        assert_eq!(chain.delta, 7);
        let m = chain.transition_matrix();
        for row in &m {
            let nonzero: Vec<_> = row.iter().filter(|x| !x.is_zero()).collect();
            assert_eq!(nonzero.len(), 7);
            assert!(nonzero.iter().all(|x| **x == frac(1, 7)));
        }
    }

    #[test]
    fn remark_return_probabilities() {
        let chain = ExactChain::build(b(&[1, 1, 1, 2, 3]), ChainKind::UniformNeighbor).unwrap();
        let id = chain
            .state_index(&Permutation::identity(5))
            .expect("identity is a state");
        let tau = chain
            .state_index(&Permutation::new(vec![4, 5, 1, 2, 3]).unwrap())
            .expect("45123 is a state");
        let (nums, den) = chain.distribution_numerators(id, 6);
        assert_eq!(den, BigUint::from(117_649u32)); // 7^6
        assert_eq!(nums[id], BigUint::from(5207u32));
        let (nums_tau, _) = chain.distribution_numerators(tau, 6);
        assert_eq!(nums_tau[tau], BigUint::from(5287u32));
    }

    #[test]
    fn probe_finds_the_counterexample() {
        let chain = ExactChain::build(b(&[1, 1, 1, 2, 3]), ChainKind::UniformNeighbor).unwrap();
        match vertex_transitivity_probe(&chain, 6) {
            TransitivityVerdict::Witness {
                state_a,
                state_b,
                t,
                prob_a,
                prob_b,
            } => {
                assert_eq!(state_a, Permutation::identity(5));
                // the earliest lexicographic witness; its return
                // probability coincides with that of 45123
                assert_eq!(state_b, Permutation::new(vec![1, 3, 4, 2, 5]).unwrap());
                assert_eq!(t, 6);
                assert_eq!(prob_a, frac(5207, 117_649));
                assert_eq!(prob_b, frac(5287, 117_649));
            }
            v => panic!("expected witness, got {v:?}"),
        }
    }

    #[test]
    fn probe_consistent_for_two_step() {
        let chain = ExactChain::build(b(&[1, 1, 1, 3, 3]), ChainKind::Lazy).unwrap();
        assert_eq!(
            vertex_transitivity_probe(&chain, 6),
            TransitivityVerdict::Consistent { t_max: 6 }
        );
        let single = ExactChain::build(b(&[1, 2, 3]), ChainKind::Lazy).unwrap();
        assert_eq!(
            vertex_transitivity_probe(&single, 4),
            TransitivityVerdict::Consistent { t_max: 4 }
        );
    }

    #[test]
    fn tv_and_chi_examples() {
        let u = vec![frac(1, 4); 4];
        assert_eq!(tv_distance(&u, &u), BigRational::zero());
        let point = vec![
            BigRational::one(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        assert_eq!(tv_distance(&point, &u), frac(3, 4));
        // chi squared of a point mass vs uniform on m states: m - 1
        assert_eq!(chi_squared_sq(&point, &u).unwrap(), frac(3, 1));
        let pf: Vec<f64> = vec![1.0, 0.0, 0.0, 0.0];
        let uf = vec![0.25f64; 4];
        assert!((chi_squared(&pf, &uf).unwrap() - 3f64.sqrt()).abs() < 1e-14);
        // zero stationary mass is refused
        let bad = vec![BigRational::zero(), BigRational::one()];
        assert!(chi_squared_sq(&point[0..2], &bad).is_err());
    }

    #[test]
    fn hand_computed_tv_s3_at_t2() {
        // lazy chain on S_3 from the identity after two steps:
        // distribution (7/27, 4/27 x5), TV 5/54, squared chi 5/81
        let chain = ExactChain::build(b(&[1, 1, 1]), ChainKind::Lazy).unwrap();
        let id = chain.state_index(&Permutation::identity(3)).unwrap();
        let dist = chain.distribution(id, 2);
        assert_eq!(dist[id], frac(7, 27));
        assert_eq!(chain.tv_to_uniform(id, 2), frac(5, 54));
        assert_eq!(chain.chi_sq_to_uniform(id, 2), frac(5, 81));
    }

    #[test]
    fn spectral_chi_matches_matrix_chi_exactly() {
        for v in [vec![1, 1, 1, 3, 3], vec![1, 1, 1, 1]] {
            let bv = b(&v);
            let spec = full_spectrum(&bv).unwrap();
            let chain = ExactChain::build(bv, ChainKind::Lazy).unwrap();
            for t in 0..=8u64 {
                let spectral = chi_squared_sq_from_spectrum_exact(&spec, t).unwrap();
                for start in [0, chain.size() / 2] {
                    assert_eq!(spectral, chain.chi_sq_to_uniform(start, t), "t={t}");
                }
            }
        }
    }

    #[test]
    fn spectral_chi_refuses_general_vectors() {
        let spec = full_spectrum(&b(&[1, 1, 1, 2, 3])).unwrap();
        assert!(matches!(
            chi_squared_sq_from_spectrum_exact(&spec, 3),
            Err(Error::NotTwoStep(_))
        ));
    }

    #[test]
    fn spectral_chi_floating_lanes_agree() {
        let spec = full_spectrum(&TwoStepParams::new(6, 3, 2).unwrap().vector()).unwrap();
        for t in 0..=10u64 {
            let exact = chi_squared_sq_from_spectrum_exact(&spec, t).unwrap();
            let exact_f = exact.to_f64().unwrap().sqrt();
            let dd: DoubleDouble = chi_squared_from_spectrum(&spec, t).unwrap();
            let f: f64 = chi_squared_from_spectrum(&spec, t).unwrap();
            assert!((dd.to_f64() - exact_f).abs() <= 1e-13 * exact_f.max(1e-300));
            assert!((f - exact_f).abs() <= 1e-12 * exact_f.max(1e-300));
        }
    }

    #[test]
    fn chi_at_zero_is_sqrt_of_size_minus_one() {
        let bv = b(&[1, 1, 1, 3, 3]);
        let spec = full_spectrum(&bv).unwrap();
        let chi: f64 = chi_squared_from_spectrum(&spec, 0).unwrap();
        assert!((chi - 35f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn distribution_at_time_zero_is_point_mass() {
        let chain = ExactChain::build(b(&[1, 1, 1, 3, 3]), ChainKind::Lazy).unwrap();
        let dist = chain.distribution(7, 0);
        for (i, p) in dist.iter().enumerate() {
            assert_eq!(*p == BigRational::one(), i == 7);
        }
    }

    #[test]
    fn chi_dominates_twice_tv_exhaustively() {
        // every sorted vector with n <= 5, every t <= 6, exact rationals
        for n in 1..=5usize {
            for bv in crate::checks::nonempty_sorted_vectors(n) {
                let chain = ExactChain::build(bv, ChainKind::Lazy).unwrap();
                for t in 0..=6u64 {
                    let tv = chain.tv_to_uniform(0, t);
                    let chi2 = chain.chi_sq_to_uniform(0, t);
                    let twice_tv = tv.clone() + tv;
                    assert!(chi2 >= twice_tv.clone() * twice_tv);
                }
            }
        }
    }

    #[test]
    fn exact_distances_are_nonincreasing() {
        let chain = ExactChain::build(b(&[1, 1, 1, 2, 3]), ChainKind::Lazy).unwrap();
        let id = chain.state_index(&Permutation::identity(5)).unwrap();
        let mut prev_tv: Option<BigRational> = None;
        let mut prev_chi: Option<BigRational> = None;
        for t in 0..=8 {
            let tv = chain.tv_to_uniform(id, t);
            let chi = chain.chi_sq_to_uniform(id, t);
            if let Some(p) = prev_tv {
                assert!(tv <= p, "tv increased at t={t}");
            }
            if let Some(p) = prev_chi {
                assert!(chi <= p, "chi increased at t={t}");
            }
            // chi >= 2 tv always
            assert!(
                chi >= rational_pow(&(tv.clone() + tv.clone()), 2),
                "chi^2 < (2tv)^2 at t={t}"
            );
            prev_tv = Some(tv);
            prev_chi = Some(chi);
        }
    }
}
