//! Trajectory simulation of the lazy walk and the statistics behind the
//! total-variation arguments: small fixed points, first-column stopping
//! time, and coupon counts.
//!
//! Two step rules realize the same one-step law. The rejection rule redraws
//! ordered row pairs until one is a hold or an allowed transposition; the
//! direct rule first flips the exact hold probability, then picks a uniform
//! allowed transposition. The direct rule is the default at large sizes.

use crate::error::{Error, Result};
use crate::restriction::{Permutation, RestrictionVector, TwoStepParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// How one lazy-chain step is realized.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepRule {
    Rejection,
    Direct,
}

/// The accepted outcome of one step: the ordered row pair, with `i == j`
/// meaning a hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepEvent {
    pub rows: (usize, usize),
}

impl StepEvent {
    pub fn is_hold(&self) -> bool {
        self.rows.0 == self.rows.1
    }
}

/// Reusable stepping context for one restriction vector.
pub struct Walker {
    vector: RestrictionVector,
    n: usize,
    denominator: u64,
}

impl Walker {
    pub fn new(vector: RestrictionVector) -> Result<Self> {
        let delta = vector.degree()?;
        let n = vector.n();
        Ok(Self {
            vector,
            n,
            denominator: n as u64 + 2 * delta,
        })
    }

    pub fn vector(&self) -> &RestrictionVector {
        &self.vector
    }

    /// Denominator `n + 2*delta` of the lazy chain.
    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    /// Advances `p` by one lazy-chain step, returning the accepted pair.
    pub fn step<R: Rng + ?Sized>(
        &self,
        p: &mut Permutation,
        rule: StepRule,
        rng: &mut R,
    ) -> StepEvent {
        let rows = match rule {
            StepRule::Rejection => loop {
                let i = rng.gen_range(0..self.n);
                let j = rng.gen_range(0..self.n);
                if i == j || self.vector.allows_swap(p, i, j) {
                    break (i, j);
                }
            },
            StepRule::Direct => {
                if rng.gen_range(0..self.denominator) < self.n as u64 {
                    let i = rng.gen_range(0..self.n);
                    (i, i)
                } else {
                    loop {
                        let i = rng.gen_range(0..self.n);
                        let j = rng.gen_range(0..self.n);
                        if i != j && self.vector.allows_swap(p, i, j) {
                            break (i, j);
                        }
                    }
                }
            }
        };
        if rows.0 != rows.1 {
            p.swap_rows(rows.0, rows.1);
        }
        StepEvent { rows }
    }
}

/// One lazy-chain step on `p`; builds a throwaway context.
pub fn step<R: Rng + ?Sized>(
    vector: &RestrictionVector,
    p: &mut Permutation,
    rule: StepRule,
    rng: &mut R,
) -> Result<StepEvent> {
    Ok(Walker::new(vector.clone())?.step(p, rule, rng))
}

/// Mean and variance bound of the per-step coupon count, scaled to `t`
/// steps: `(2tfg/(n+2D), 4tfg/(n+2D))`.
pub fn coupon_collector_prediction(params: &TwoStepParams, t: u64) -> (f64, f64) {
    let den = params.n_plus_two_delta() as f64;
    let fg = (params.f * params.g) as f64;
    let t = t as f64;
    (2.0 * t * fg / den, 4.0 * t * fg / den)
}

/// Simulation request. Trajectories start at the identity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimulationConfig {
    /// The restriction vector; must be two-step, which gives the
    /// small-fixed-point statistics their meaning.
    #[serde(rename = "b")]
    pub vector: RestrictionVector,
    /// Horizon `t`.
    #[serde(rename = "t")]
    pub horizon: u64,
    /// Times at which statistics are recorded; defaults to just the horizon.
    #[serde(default, rename = "record")]
    pub record_at: Vec<u64>,
    pub reps: u64,
    pub seed: u64,
    #[serde(default = "default_rule", rename = "rule")]
    pub step_rule: StepRule,
}

fn default_rule() -> StepRule {
    StepRule::Direct
}

impl SimulationConfig {
    pub fn new(params: &TwoStepParams, horizon: u64, reps: u64, seed: u64) -> Self {
        Self {
            vector: params.vector(),
            horizon,
            record_at: vec![horizon],
            reps,
            seed,
            step_rule: StepRule::Direct,
        }
    }

    fn normalized_times(&self) -> Vec<u64> {
        let mut times = if self.record_at.is_empty() {
            vec![self.horizon]
        } else {
            self.record_at.clone()
        };
        times.sort_unstable();
        times.dedup();
        times.retain(|&t| t <= self.horizon);
        times
    }
}

/// The recorded statistics.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum StatKind {
    /// Number of rows `i <= g` with `sigma(i) = i`.
    SmallFixedPoints,
    /// Indicator of at least one small fixed point.
    AnySmallFixedPoint,
    /// Indicator of `sigma(1) = 1`.
    FirstColumnHome,
    /// Indicator that the first column has not been used by this time.
    FirstColumnUnused,
    /// Cumulative coupon count: small rows touched by pairs within the
    /// unrestricted block, holds counting twice.
    SmallRowTouches,
}

impl StatKind {
    pub const ALL: [StatKind; 5] = [
        StatKind::SmallFixedPoints,
        StatKind::AnySmallFixedPoint,
        StatKind::FirstColumnHome,
        StatKind::FirstColumnUnused,
        StatKind::SmallRowTouches,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            StatKind::SmallFixedPoints => "small_fixed_points",
            StatKind::AnySmallFixedPoint => "any_small_fixed_point",
            StatKind::FirstColumnHome => "first_column_home",
            StatKind::FirstColumnUnused => "first_column_unused",
            StatKind::SmallRowTouches => "small_row_touches",
        }
    }
}

/// Mean, sample variance, count and 99% normal half-width of one statistic
/// at one time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatPoint {
    pub mean: f64,
    pub variance: f64,
    pub count: u64,
    pub ci99: f64,
}

/// Statistic traces over the recorded times; counts equal `reps`
/// everywhere.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StatisticSeries {
    pub times: Vec<u64>,
    pub stats: Vec<(StatKind, Vec<StatPoint>)>,
}

impl StatisticSeries {
    pub fn series(&self, kind: StatKind) -> Option<&[StatPoint]> {
        self.stats
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, v)| v.as_slice())
    }

    pub fn point(&self, kind: StatKind, t: u64) -> Option<&StatPoint> {
        let idx = self.times.iter().position(|&x| x == t)?;
        self.series(kind)?.get(idx)
    }
}

#[derive(Clone)]
struct Accumulator {
    sum: Vec<[f64; 2]>, // per (time, stat): sum and sum of squares
}

const N_STATS: usize = StatKind::ALL.len();

impl Accumulator {
    fn new(n_times: usize) -> Self {
        Self {
            sum: vec![[0.0; 2]; n_times * N_STATS],
        }
    }

    fn record(&mut self, time_idx: usize, stat_idx: usize, value: f64) {
        let cell = &mut self.sum[time_idx * N_STATS + stat_idx];
        cell[0] += value;
        cell[1] += value * value;
    }

    fn merge(&mut self, other: &Accumulator) {
        for (a, b) in self.sum.iter_mut().zip(&other.sum) {
            a[0] += b[0];
            a[1] += b[1];
        }
    }
}

/// Runs `reps` independent trajectories and aggregates the statistics.
///
/// Each trajectory draws from its own counter-derived stream, so results
/// are reproducible for a fixed seed and unchanged by the worker count or
/// by raising `reps`.
pub fn run_statistics(cfg: &SimulationConfig) -> Result<StatisticSeries> {
    if cfg.reps == 0 {
        return Err(Error::InvalidInput("reps must be at least 1".into()));
    }
    let params = cfg.vector.two_step_params().ok_or_else(|| {
        Error::NotTwoStep(format!(
            "simulation statistics are defined for two-step vectors, got {}",
            cfg.vector
        ))
    })?;
    let walker = Walker::new(cfg.vector.clone())?;
    let times = cfg.normalized_times();

    const CHUNK: u64 = 512;
    let n_chunks = cfg.reps.div_ceil(CHUNK);
    let chunks: Vec<Accumulator> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(cfg.reps);
            let mut acc = Accumulator::new(times.len());
            for rep in lo..hi {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(rep + 1);
                run_trajectory(&walker, &params, cfg, &times, &mut rng, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = Accumulator::new(times.len());
    for c in &chunks {
        total.merge(c);
    }

    let reps = cfg.reps as f64;
    let z99 = 2.5758293035489004;
    let stats = StatKind::ALL
        .iter()
        .map(|&kind| {
            let stat_idx = StatKind::ALL.iter().position(|&k| k == kind).unwrap();
            let points = (0..times.len())
                .map(|ti| {
                    let [s, sq] = total.sum[ti * N_STATS + stat_idx];
                    let mean = s / reps;
                    let variance = if cfg.reps > 1 {
                        ((sq - s * s / reps) / (reps - 1.0)).max(0.0)
                    } else {
                        0.0
                    };
                    StatPoint {
                        mean,
                        variance,
                        count: cfg.reps,
                        ci99: z99 * (variance / reps).sqrt(),
                    }
                })
                .collect();
            (kind, points)
        })
        .collect();
    Ok(StatisticSeries { times, stats })
}

fn run_trajectory(
    walker: &Walker,
    params: &TwoStepParams,
    cfg: &SimulationConfig,
    times: &[u64],
    rng: &mut ChaCha8Rng,
    acc: &mut Accumulator,
) {
    let n = walker.vector().n();
    let (f, g) = (params.f as usize, params.g as usize);
    let mut p = Permutation::identity(n);
    // row currently holding card 1, for the first-column stopping time
    let mut row_of_one = 0usize;
    let mut first_column_used_at: Option<u64> = None;
    let mut coupons: u64 = 0;
    let mut next = 0usize;
    for t in 0..=cfg.horizon {
        while next < times.len() && times[next] == t {
            let fixed = (0..g).filter(|&i| p.image(i) == i as u32 + 1).count();
            acc.record(next, 0, fixed as f64);
            acc.record(next, 1, (fixed > 0) as u8 as f64);
            acc.record(next, 2, (p.image(0) == 1) as u8 as f64);
            acc.record(next, 3, first_column_used_at.is_none() as u8 as f64);
            acc.record(next, 4, coupons as f64);
            next += 1;
        }
        if t == cfg.horizon {
            break;
        }
        let ev = walker.step(&mut p, cfg.step_rule, rng);
        let (i, j) = ev.rows;
        if first_column_used_at.is_none() && (i == row_of_one || j == row_of_one) {
            first_column_used_at = Some(t + 1);
        }
        if !ev.is_hold() {
            if i == row_of_one {
                row_of_one = j;
            } else if j == row_of_one {
                row_of_one = i;
            }
        }
        // coupons: pairs inside the unrestricted block only; such pairs are
        // always accepted, so the per-step mean is exactly 2fg/(n+2D)
        if i < f && j < f {
            coupons += (i < g) as u64 + (j < g) as u64;
        }
    }
}
