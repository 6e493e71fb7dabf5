//! Named verification checks shared by the `verify` command and the
//! acceptance test suite.
//!
//! Each check is self-contained, deterministic, and reports what it
//! actually compared. Exact claims are compared in exact arithmetic.

use crate::cutoff::{
    chi_lower_term, chi_lower_term_exact, chi_upper_bound, chi_upper_bound_cells_exact,
    cutoff_times, fast_mix_no_cutoff_lower,
};
use crate::mixing::{
    chi_squared_sq_from_spectrum_exact, rational_pow, ChainKind, ExactChain,
};
use crate::montecarlo::{
    run_statistics, SimulationConfig, StatKind, StepRule, Walker,
};
use crate::restriction::{Permutation, RestrictionVector, TwoStepParams};
use crate::scalar::{DoubleDouble, Real};
use crate::spectrum::{enumerate_chains, full_spectrum, in_large_k_zone, lead_chains};
use crate::tableaux::{partitions, subpartitions, syt_count, syt_count_straight, Partition};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

/// Result of one named check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub elapsed: Duration,
}

impl CheckOutcome {
    fn run(name: &'static str, body: impl FnOnce() -> Result<String, String>) -> Self {
        let start = Instant::now();
        let (passed, details) = match body() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Self {
            name,
            passed,
            details,
            elapsed: start.elapsed(),
        }
    }
}

/// All weakly increasing vectors with entries in `[1, i]` at position `i`
/// (exactly the vectors with nonempty state spaces), for one length.
pub fn nonempty_sorted_vectors(n: usize) -> Vec<RestrictionVector> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::with_capacity(n);
    fn rec(n: usize, prev: u32, cur: &mut Vec<u32>, out: &mut Vec<RestrictionVector>) {
        if cur.len() == n {
            out.push(RestrictionVector::new(cur.clone()).unwrap());
            return;
        }
        let i = cur.len() as u32 + 1;
        for v in prev..=i {
            cur.push(v);
            rec(n, v, cur, out);
            cur.pop();
        }
    }
    rec(n, 1, &mut cur, &mut out);
    out
}

fn all_two_step(max_n: u64) -> Vec<TwoStepParams> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for f in 1..=n {
            for g in 1..=f {
                out.push(TwoStepParams::new(n, f, g).unwrap());
            }
        }
    }
    out
}

fn proper_two_step(max_n: u64) -> Vec<TwoStepParams> {
    all_two_step(max_n)
        .into_iter()
        .filter(|p| p.f >= 2 && p.is_proper())
        .collect()
}

// ---------------------------------------------------------------------------
// criterion 1
// ---------------------------------------------------------------------------

/// Exact reproduction of the printed return probabilities of the
/// uniform-neighbor chain on (1,1,1,2,3) at six steps.
pub fn check_remark_reproduction() -> CheckOutcome {
    CheckOutcome::run("remark-reproduction", || {
        let bv = RestrictionVector::new(vec![1, 1, 1, 2, 3]).map_err(|e| e.to_string())?;
        let chain =
            ExactChain::build(bv, ChainKind::UniformNeighbor).map_err(|e| e.to_string())?;
        let id = chain
            .state_index(&Permutation::identity(5))
            .ok_or("identity missing")?;
        let tau_perm = Permutation::new(vec![4, 5, 1, 2, 3]).map_err(|e| e.to_string())?;
        let tau = chain.state_index(&tau_perm).ok_or("45123 missing")?;
        let (nums_id, den) = chain.distribution_numerators(id, 6);
        let (nums_tau, _) = chain.distribution_numerators(tau, 6);
        let expect_den = BigUint::from(117_649u32);
        if den != expect_den {
            return Err(format!("denominator {den}, expected 117649"));
        }
        if nums_id[id] != BigUint::from(5207u32) {
            return Err(format!("P^6(id,id) = {}/117649, expected 5207", nums_id[id]));
        }
        if nums_tau[tau] != BigUint::from(5287u32) {
            return Err(format!(
                "P^6(45123,45123) = {}/117649, expected 5287",
                nums_tau[tau]
            ));
        }
        Ok("P^6(id,id) = 5207/117649 and P^6(45123,45123) = 5287/117649, exact".into())
    })
}

// ---------------------------------------------------------------------------
// criterion 2
// ---------------------------------------------------------------------------

/// Dimension sums over chains equal the state-space size: all two-step
/// instances up to `max_two_step_n`, all sorted vectors up to
/// `max_general_n`.
pub fn check_completeness(max_two_step_n: u64, max_general_n: usize) -> CheckOutcome {
    CheckOutcome::run("completeness", || {
        let mut instances = 0usize;
        for params in all_two_step(max_two_step_n) {
            let bv = params.vector();
            let total: BigUint = enumerate_chains(&bv)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|c| c.dimension())
                .sum();
            let count = bv.count();
            if total != count || count != params.count() {
                return Err(format!(
                    "two-step {params:?}: dims {total}, count {count}, closed {}",
                    params.count()
                ));
            }
            instances += 1;
        }
        for n in 1..=max_general_n {
            for bv in nonempty_sorted_vectors(n) {
                let total: BigUint = enumerate_chains(&bv)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(|c| c.dimension())
                    .sum();
                if total != bv.count() {
                    return Err(format!("{bv}: dims {total} != count {}", bv.count()));
                }
                instances += 1;
            }
        }
        Ok(format!("dimension sums match |S_M| on {instances} instances"))
    })
}

// ---------------------------------------------------------------------------
// criterion 3
// ---------------------------------------------------------------------------

/// Traces of integer adjacency powers against spectral moments,
/// `k = 1..=4`, every sorted vector up to `max_n`.
pub fn check_trace_moments(max_n: usize) -> CheckOutcome {
    CheckOutcome::run("trace-moments", || {
        let mut instances = 0usize;
        for n in 1..=max_n {
            for bv in nonempty_sorted_vectors(n) {
                let chain =
                    ExactChain::build(bv.clone(), ChainKind::Lazy).map_err(|e| e.to_string())?;
                let m = chain.size();
                // dense U^2 from the adjacency lists
                let mut u2 = vec![0u64; m * m];
                let adj: Vec<Vec<usize>> = chain
                    .states()
                    .iter()
                    .map(|p| {
                        bv.neighbors(p)
                            .iter()
                            .map(|q| chain.state_index(q).unwrap())
                            .collect()
                    })
                    .collect();
                for (i, nbrs) in adj.iter().enumerate() {
                    for &j in nbrs {
                        for &k in &adj[j] {
                            u2[i * m + k] += 1;
                        }
                    }
                }
                let delta = chain.delta;
                let tr = |k: u32| -> i128 {
                    match k {
                        1 => 0,
                        2 => (m as u64 * delta) as i128,
                        3 => adj
                            .iter()
                            .enumerate()
                            .map(|(v, nbrs)| {
                                nbrs.iter().map(|&j| u2[j * m + v] as i128).sum::<i128>()
                            })
                            .sum(),
                        4 => u2.iter().map(|&x| (x as i128) * (x as i128)).sum(),
                        _ => unreachable!(),
                    }
                };
                let spec = full_spectrum(&bv).map_err(|e| e.to_string())?;
                for k in 1..=4u32 {
                    let moment: i128 = spec
                        .lines
                        .iter()
                        .map(|l| {
                            let dim = i128::try_from(BigInt::from(l.dim.clone()))
                                .expect("dims fit i128 at these sizes");
                            dim * (l.eig_adj as i128).pow(k)
                        })
                        .sum();
                    if moment != tr(k) {
                        return Err(format!(
                            "{bv}: tr(U^{k}) = {} but spectral moment {moment}",
                            tr(k)
                        ));
                    }
                }
                instances += 1;
            }
        }
        Ok(format!(
            "tr(U^k) = spectral moments for k = 1..4 on {instances} instances"
        ))
    })
}

// ---------------------------------------------------------------------------
// criterion 4
// ---------------------------------------------------------------------------

/// Lead terms for proper two-step instances: top eigenvalue `delta` with a
/// one-dimensional space, second-largest `max(delta-f, delta-(n-g))`, and
/// the bent-chain dimensions `(f-1)g` and `(n-g-1)(n-f)` for `f > g`.
///
/// At `f = g` the bent skew shapes become connected and those two product
/// formulas do not apply; the dimension clause is checked on `f > g` and
/// the eigenvalue clauses everywhere.
pub fn check_lead_terms(max_n: u64) -> CheckOutcome {
    CheckOutcome::run("lead-terms", || {
        let mut checked = 0usize;
        let mut dim_checked = 0usize;
        for params in proper_two_step(max_n) {
            if params.n - params.g < 2 {
                continue;
            }
            let (n, f, g) = (params.n, params.f, params.g);
            let delta = params.delta() as i64;
            let spec = full_spectrum(&params.vector()).map_err(|e| e.to_string())?;
            if spec.max_eig() != delta {
                return Err(format!("{params:?}: max eig {} != {delta}", spec.max_eig()));
            }
            if spec.line_for(delta).unwrap().dim != BigUint::one() {
                return Err(format!("{params:?}: top eigenspace not one-dimensional"));
            }
            let second = spec.second_eig().ok_or(format!("{params:?}: no second line"))?;
            let expect = (delta - f as i64).max(delta - (n - g) as i64);
            if second != expect {
                return Err(format!("{params:?}: second {second} != {expect}"));
            }
            if f > g {
                let (_, bend1, bend2) = lead_chains(&params).map_err(|e| e.to_string())?;
                let d1 = bend1.unwrap().dimension();
                let d2 = bend2.unwrap().dimension();
                if d1 != BigUint::from((f - 1) * g) {
                    return Err(format!("{params:?}: dim(alpha1) = {d1} != (f-1)g"));
                }
                if d2 != BigUint::from((n - g - 1) * (n - f)) {
                    return Err(format!("{params:?}: dim(alpha2) = {d2} != (n-g-1)(n-f)"));
                }
                dim_checked += 1;
            }
            checked += 1;
        }
        Ok(format!(
            "lead eigenvalues on {checked} proper instances, bent dims on {dim_checked} (f > g)"
        ))
    })
}

// ---------------------------------------------------------------------------
// criterion 5
// ---------------------------------------------------------------------------

/// Spectral chi-squared equals exact-matrix chi-squared, as rationals,
/// for every two-step instance up to `max_n` and `t <= max_t`, from two
/// different start states.
pub fn check_spectral_matrix_chi(max_n: u64, max_t: u64) -> CheckOutcome {
    CheckOutcome::run("spectral-matrix-chi", || {
        let mut comparisons = 0usize;
        for params in all_two_step(max_n) {
            let bv = params.vector();
            let spec = full_spectrum(&bv).map_err(|e| e.to_string())?;
            let chain = ExactChain::build(bv, ChainKind::Lazy).map_err(|e| e.to_string())?;
            let starts = [0, chain.size() / 2];
            for t in 0..=max_t {
                let spectral =
                    chi_squared_sq_from_spectrum_exact(&spec, t).map_err(|e| e.to_string())?;
                for &s in &starts {
                    if spectral != chain.chi_sq_to_uniform(s, t) {
                        return Err(format!("{params:?} t={t} start={s}: mismatch"));
                    }
                    comparisons += 1;
                }
            }
        }
        Ok(format!("{comparisons} exact chi-squared equalities"))
    })
}

// ---------------------------------------------------------------------------
// criterion 6
// ---------------------------------------------------------------------------

/// The combinatorial identity suite: tableau branching, squared-count
/// factorials, transpose pairing of chains, and content bounds against
/// exhaustive search.
pub fn check_identity_suite() -> CheckOutcome {
    CheckOutcome::run("identity-suite", || {
        // branching identity, all partitions of size <= 10, every slice
        for ell in 0..=10u64 {
            for lam in partitions(ell).map_err(|e| e.to_string())? {
                let f = syt_count_straight(&lam);
                for m in 0..=ell {
                    let total: BigUint = subpartitions(&lam, m)
                        .iter()
                        .map(|mu| syt_count(&lam, mu) * syt_count_straight(mu))
                        .sum();
                    if total != f {
                        return Err(format!("branching fails at {lam} m={m}"));
                    }
                }
            }
        }
        // squared tableau counts sum to k!
        for k in 0..=10u64 {
            let sum: BigUint = partitions(k)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|lam| {
                    let f = syt_count_straight(lam);
                    f.clone() * f
                })
                .sum();
            let fact = (1..=k).fold(BigUint::one(), |a, x| a * BigUint::from(x));
            if sum != fact {
                return Err(format!("sum of squared counts at k={k} is {sum}, not {k}!"));
            }
        }
        // transpose pairing on every chain of every sorted vector, n <= 7
        let mut chains_checked = 0usize;
        for n in 1..=7usize {
            for bv in nonempty_sorted_vectors(n) {
                for c in enumerate_chains(&bv).map_err(|e| e.to_string())? {
                    let t = c.transpose();
                    let (e1, e2) = (
                        c.eigenvalue().map_err(|e| e.to_string())?,
                        t.eigenvalue().map_err(|e| e.to_string())?,
                    );
                    if e2 != -e1 || t.dimension() != c.dimension() {
                        return Err(format!("pairing fails at {bv}: {c}"));
                    }
                    chains_checked += 1;
                }
            }
        }
        // content bounds vs exhaustive search
        for l in 1..=12u64 {
            for lam in partitions(l).map_err(|e| e.to_string())? {
                let i = lam.size() - lam.first_part() as u64;
                let c = lam.content_sum();
                if c > crate::tableaux::max_content(l, i) {
                    return Err(format!("content bound fails at {lam}"));
                }
                if 2 * i >= l
                    && num_rational::Ratio::from_integer(c)
                        > crate::tableaux::max_content_large_remainder(l, i)
                {
                    return Err(format!("large-remainder bound fails at {lam}"));
                }
                if 2 * i <= l {
                    let mut opt = vec![(l - i) as u32, i as u32];
                    opt.retain(|&x| x > 0);
                    let attained = Partition::new(opt).content_sum();
                    if attained != crate::tableaux::max_content(l, i) {
                        return Err(format!("equality case fails at l={l} i={i}"));
                    }
                }
                for m in 0..=l {
                    for mu in subpartitions(&lam, m) {
                        let j = mu.size() - mu.first_part() as u64;
                        if lam.content_sum() - mu.content_sum()
                            > crate::tableaux::max_content_skew(l, m, i, j)
                        {
                            return Err(format!("skew bound fails at {lam}/{mu}"));
                        }
                    }
                }
            }
        }
        Ok(format!(
            "branching, factorial sums, pairing on {chains_checked} chains, content bounds to size 12"
        ))
    })
}

// ---------------------------------------------------------------------------
// criterion 7
// ---------------------------------------------------------------------------

/// On every piecewise (small-k) cell the evaluator term dominates the true
/// nonnegative-eigenvalue sum, exactly; the truncation term never exceeds
/// the squared spectral distance. Constant-zone cells are skipped and
/// counted: their 9/10 is an asymptotic statement.
pub fn check_bound_domination(max_n: u64, max_t: u64) -> CheckOutcome {
    CheckOutcome::run("bound-domination", || {
        let mut cells_checked = 0usize;
        let mut kbig_skipped = 0usize;
        let mut truncations = 0usize;
        for params in proper_two_step(max_n) {
            let bv = params.vector();
            let chains = enumerate_chains(&bv).map_err(|e| e.to_string())?;
            let den = params.n_plus_two_delta();
            // group chains by remainder triple
            let mut by_cell: std::collections::BTreeMap<_, Vec<&crate::spectrum::PartitionChain>> =
                Default::default();
            for c in &chains {
                by_cell
                    .entry(c.remainder_triple().map_err(|e| e.to_string())?)
                    .or_default()
                    .push(c);
            }
            for t in 0..=max_t {
                let terms = chi_upper_bound_cells_exact(&params, t);
                for (triple, term) in terms {
                    if triple == (crate::spectrum::RemainderTriple { i: 0, j: 0, k: 0 }) {
                        continue;
                    }
                    if in_large_k_zone(triple, &params) {
                        kbig_skipped += 1;
                        continue;
                    }
                    let mut true_sum = BigRational::zero();
                    for c in by_cell.get(&triple).map(|v| v.as_slice()).unwrap_or(&[]) {
                        let eig = c.eigenvalue().map_err(|e| e.to_string())?;
                        let num = params.n as i64 + 2 * eig;
                        if num < 0 || num as u64 == den {
                            continue;
                        }
                        let ratio =
                            BigRational::new(BigInt::from(num), BigInt::from(den));
                        true_sum += BigRational::from_integer(BigInt::from(c.dimension()))
                            * rational_pow(&ratio, 2 * t);
                    }
                    if true_sum > term {
                        return Err(format!(
                            "{params:?} t={t} cell {triple:?}: true sum exceeds bound term"
                        ));
                    }
                    cells_checked += 1;
                }
            }
            // truncation term vs squared spectral distance; the term's
            // (f-1)g coefficient is the bent-chain dimension only for
            // f > g, so that is where the inequality is a theorem
            if params.f >= 2 && params.f > params.g {
                let spec = full_spectrum(&bv).map_err(|e| e.to_string())?;
                for t in 0..=max_t {
                    let lower = chi_lower_term_exact(&params, t).map_err(|e| e.to_string())?;
                    let chi2 =
                        chi_squared_sq_from_spectrum_exact(&spec, t).map_err(|e| e.to_string())?;
                    if lower > chi2 {
                        return Err(format!("{params:?} t={t}: truncation exceeds chi^2"));
                    }
                    truncations += 1;
                }
            }
        }
        Ok(format!(
            "domination exact on {cells_checked} small-k cells ({kbig_skipped} constant-zone cells skipped as asymptotic), {truncations} truncation comparisons on f > g"
        ))
    })
}

// ---------------------------------------------------------------------------
// criterion 8
// ---------------------------------------------------------------------------

/// Desk-scale cutoff shape at (n, f, g) = (2000, 40, 20): the chi bound
/// exceeds `e^2/2` at the lower time with `c = 4` and drops below
/// `4 e^{-6}` at the upper time with `c = 12`.
pub fn check_cutoff_shape() -> CheckOutcome {
    CheckOutcome::run("cutoff-shape", || {
        let params = TwoStepParams::new(2000, 40, 20).map_err(|e| e.to_string())?;
        let t_lower = cutoff_times(&params, 4.0).map_err(|e| e.to_string())?.t_chi_lower;
        let t_upper = cutoff_times(&params, 12.0).map_err(|e| e.to_string())?.t_chi_upper;
        let lower_term: DoubleDouble =
            chi_lower_term(&params, t_lower.ceil() as u64).map_err(|e| e.to_string())?;
        let chi_lower = lower_term.sqrt().to_f64();
        let threshold_low = (2.0f64).exp() / 2.0;
        if chi_lower <= threshold_low {
            return Err(format!(
                "lower bound {chi_lower} at t={t_lower:.1} does not exceed e^2/2 = {threshold_low}"
            ));
        }
        let upper: crate::cutoff::BoundValue<DoubleDouble> =
            chi_upper_bound(&params, t_upper.ceil() as u64);
        let upper_v = upper.value.to_f64();
        let threshold_high = 4.0 * (-6.0f64).exp();
        if upper_v >= threshold_high {
            return Err(format!(
                "upper bound {upper_v} at t={t_upper:.1} not below 4e^-6 = {threshold_high}"
            ));
        }
        Ok(format!(
            "chi bound falls from {chi_lower:.3} (> {threshold_low:.3}) at t={} to {upper_v:.3e} (< {threshold_high:.3e}) at t={}",
            t_lower.ceil(), t_upper.ceil()
        ))
    })
}

// ---------------------------------------------------------------------------
// criterion 9
// ---------------------------------------------------------------------------

/// Simulation consistency: one-step laws against the exact matrix, the
/// stationary small-fixed-point frequency, and the first-column survival
/// probability.
pub fn check_monte_carlo() -> CheckOutcome {
    CheckOutcome::run("monte-carlo", || {
        // (a) one-step law within 4 sigma per state, both rules, 1e5 samples
        for (bounds, seed) in [(vec![1u32, 1, 1, 3, 3], 5u64), (vec![1, 1, 1], 6)] {
            let bv = RestrictionVector::new(bounds).map_err(|e| e.to_string())?;
            let chain =
                ExactChain::build(bv.clone(), ChainKind::Lazy).map_err(|e| e.to_string())?;
            let n = bv.n();
            let id_idx = chain.state_index(&Permutation::identity(n)).unwrap();
            let row = chain.distribution(id_idx, 1);
            let reps = 100_000u32;
            for rule in [StepRule::Rejection, StepRule::Direct] {
                let walker = Walker::new(bv.clone()).map_err(|e| e.to_string())?;
                let mut counts = vec![0u64; chain.size()];
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..reps {
                    let mut p = Permutation::identity(n);
                    walker.step(&mut p, rule, &mut rng);
                    counts[chain.state_index(&p).unwrap()] += 1;
                }
                for (k, &c) in counts.iter().enumerate() {
                    let expected = row[k].to_f64().unwrap();
                    let sigma = (expected * (1.0 - expected) / reps as f64).sqrt();
                    let got = c as f64 / reps as f64;
                    if (got - expected).abs() > 4.0 * sigma.max(1e-9) {
                        return Err(format!(
                            "one-step law off at state {k} under {rule:?}: {got} vs {expected}"
                        ));
                    }
                }
            }
        }
        // (b) stationary frequency of a small fixed point at t = 200
        let params = TwoStepParams::new(5, 3, 2).unwrap();
        let cfg = SimulationConfig::new(&params, 200, 100_000, 271_828);
        let series = run_statistics(&cfg).map_err(|e| e.to_string())?;
        let pt = series.point(StatKind::AnySmallFixedPoint, 200).unwrap();
        if (pt.mean - 0.5).abs() > pt.ci99 {
            return Err(format!(
                "small-fixed-point frequency {} not within ci99 {} of 1/2",
                pt.mean, pt.ci99
            ));
        }
        // (c) first-column survival at the fast-mixing time
        let params = TwoStepParams::new(300, 10, 1).unwrap();
        let t = cutoff_times(&params, 0.0)
            .map_err(|e| e.to_string())?
            .t_fast_mix
            .ceil() as u64;
        let cfg = SimulationConfig::new(&params, t, 20_000, 314_159);
        let series = run_statistics(&cfg).map_err(|e| e.to_string())?;
        let pt = series.point(StatKind::FirstColumnUnused, t).unwrap();
        let target = (-3.0f64).exp();
        if (pt.mean - target).abs() > pt.ci99 {
            return Err(format!(
                "P(T > {t}) = {} not within ci99 {} of e^-3 = {target}",
                pt.mean, pt.ci99
            ));
        }
        Ok(format!(
            "one-step laws, stationary frequency, and survival P(T>{t}) = {:.5} vs e^-3",
            pt.mean
        ))
    })
}

// ---------------------------------------------------------------------------
// criterion 10
// ---------------------------------------------------------------------------

/// The no-cutoff TV lower bound: its value at twice the fast-mixing time,
/// and exact domination by the true TV distance at n = 5.
pub fn check_fast_mix_curve() -> CheckOutcome {
    CheckOutcome::run("fast-mix", || {
        let params = TwoStepParams::new(300, 10, 1).unwrap();
        let k = (2.0
            * cutoff_times(&params, 0.0)
                .map_err(|e| e.to_string())?
                .t_fast_mix)
            .ceil() as u64;
        let v: f64 = fast_mix_no_cutoff_lower(&params, k).map_err(|e| e.to_string())?;
        let target = (-6.0f64).exp() - 0.1;
        if (v - target).abs() > 1e-3 {
            return Err(format!("bound at k={k} is {v}, expected {target} within 1e-3"));
        }

        // exact domination at (n, f, g) = (5, 2, 1)
        let small = TwoStepParams::new(5, 2, 1).unwrap();
        let den = small.n_plus_two_delta();
        let chain =
            ExactChain::build(small.vector(), ChainKind::Lazy).map_err(|e| e.to_string())?;
        let id = chain.state_index(&Permutation::identity(5)).unwrap();
        let survival_base = BigRational::new(
            BigInt::from(den - (2 * small.f - 1)),
            BigInt::from(den),
        );
        let inv_f = BigRational::new(BigInt::one(), BigInt::from(small.f));
        for t in 0..=10u64 {
            let bound = rational_pow(&survival_base, t) - inv_f.clone();
            let tv = chain.tv_to_uniform(id, t);
            if bound > tv {
                return Err(format!("bound exceeds exact TV at k={t}"));
            }
        }
        Ok(format!(
            "bound at k={k} within 1e-3 of e^-6 - 1/f; exact domination for k <= 10 at n=5"
        ))
    })
}

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

/// Fast subset: the printed-example reproduction plus completeness at
/// small sizes.
pub fn quick_suite() -> Vec<CheckOutcome> {
    vec![check_remark_reproduction(), check_completeness(6, 6)]
}

/// Every check at its stated size.
pub fn full_suite() -> Vec<CheckOutcome> {
    vec![
        check_remark_reproduction(),
        check_completeness(8, 6),
        check_trace_moments(6),
        check_lead_terms(8),
        check_spectral_matrix_chi(6, 10),
        check_identity_suite(),
        check_bound_domination(7, 10),
        check_cutoff_shape(),
        check_monte_carlo(),
        check_fast_mix_curve(),
    ]
}
