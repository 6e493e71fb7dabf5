//! Distance and bound curves over step grids.

use crate::cutoff::{chi_lower_term, chi_upper_bound, tv_lower_bound_curve};
use crate::error::{Error, Result};
use crate::mixing::{chi_squared_from_spectrum, ChainKind, ExactChain, DEFAULT_STATE_CAP};
use crate::restriction::{Permutation, RestrictionVector};
use crate::scalar::Real;
use crate::spectrum::{full_spectrum_capped, DEFAULT_CHAIN_CAP};
use serde::{Deserialize, Serialize};

/// What a curve's values mean.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CurveKind {
    /// Exact TV distance to uniform from the identity.
    #[serde(rename = "tv-exact")]
    TvExact,
    /// Exact chi-squared distance to uniform from the identity.
    #[serde(rename = "chi-exact")]
    ChiExact,
    /// Spectral chi-squared distance (lazy-chain eigenvalues; two-step only).
    #[serde(rename = "chi-spectral")]
    ChiSpectral,
    /// The log-space upper-bound evaluator, on the chi scale.
    #[serde(rename = "chi-upper-bound")]
    ChiUpperBound,
    /// Square root of the single-eigenspace truncation term: a chi-scale
    /// lower bound.
    #[serde(rename = "chi-lower-term")]
    ChiLowerTerm,
    /// TV lower bound: the first-column survival bound when `g = 1`, the
    /// small-fixed-point bound otherwise.
    #[serde(rename = "tv-lower-bound")]
    TvLowerBound,
}

impl CurveKind {
    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::TvExact => "tv-exact",
            CurveKind::ChiExact => "chi-exact",
            CurveKind::ChiSpectral => "chi-spectral",
            CurveKind::ChiUpperBound => "chi-upper-bound",
            CurveKind::ChiLowerTerm => "chi-lower-term",
            CurveKind::TvLowerBound => "tv-lower-bound",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "tv-exact" => CurveKind::TvExact,
            "chi-exact" => CurveKind::ChiExact,
            "chi-spectral" => CurveKind::ChiSpectral,
            "chi-upper-bound" => CurveKind::ChiUpperBound,
            "chi-lower-term" => CurveKind::ChiLowerTerm,
            "tv-lower-bound" => CurveKind::TvLowerBound,
            other => {
                return Err(Error::InvalidInput(format!("unknown curve kind: {other}")));
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint<R> {
    pub t: u64,
    pub value: R,
}

/// A `(t, value)` sequence of one distance or bound kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceCurve<R> {
    pub kind: CurveKind,
    pub points: Vec<CurvePoint<R>>,
}

/// What to sweep and over which grid.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub vector: RestrictionVector,
    pub chain_kind: ChainKind,
    pub kinds: Vec<CurveKind>,
    pub t_grid: Vec<u64>,
    pub state_cap: u64,
    pub chain_cap: u64,
}

impl SweepConfig {
    pub fn new(vector: RestrictionVector, kinds: Vec<CurveKind>, t_grid: Vec<u64>) -> Self {
        Self {
            vector,
            chain_kind: ChainKind::Lazy,
            kinds,
            t_grid,
            state_cap: DEFAULT_STATE_CAP,
            chain_cap: DEFAULT_CHAIN_CAP,
        }
    }
}

/// Evaluates each requested curve over the grid; per-curve failures do not
/// abort the others.
pub fn sweep<R: Real>(cfg: &SweepConfig) -> Vec<(CurveKind, Result<DistanceCurve<R>>)> {
    cfg.kinds
        .iter()
        .map(|&kind| (kind, one_curve(cfg, kind)))
        .collect()
}

fn one_curve<R: Real>(cfg: &SweepConfig, kind: CurveKind) -> Result<DistanceCurve<R>> {
    let mut points = Vec::with_capacity(cfg.t_grid.len());
    match kind {
        CurveKind::TvExact | CurveKind::ChiExact => {
            let chain =
                ExactChain::build_capped(cfg.vector.clone(), cfg.chain_kind, cfg.state_cap)?;
            let start = chain
                .state_index(&Permutation::identity(chain.vector.n()))
                .expect("identity always satisfies a nonempty vector");
            for &t in &cfg.t_grid {
                let value = match kind {
                    CurveKind::TvExact => {
                        let tv = chain.tv_to_uniform(start, t);
                        R::from_big_ratio(tv.numer(), tv.denom())
                    }
                    _ => {
                        let chi2 = chain.chi_sq_to_uniform(start, t);
                        R::from_big_ratio(chi2.numer(), chi2.denom()).sqrt()
                    }
                };
                points.push(CurvePoint { t, value });
            }
        }
        CurveKind::ChiSpectral => {
            let spec = full_spectrum_capped(&cfg.vector, cfg.chain_cap)?;
            for &t in &cfg.t_grid {
                points.push(CurvePoint {
                    t,
                    value: chi_squared_from_spectrum(&spec, t)?,
                });
            }
        }
        CurveKind::ChiUpperBound | CurveKind::ChiLowerTerm | CurveKind::TvLowerBound => {
            let params = cfg.vector.two_step_params().ok_or_else(|| {
                Error::NotTwoStep(format!("bound curves need two-step vectors, got {}", cfg.vector))
            })?;
            for &t in &cfg.t_grid {
                let value = match kind {
                    CurveKind::ChiUpperBound => chi_upper_bound::<R>(&params, t).value,
                    CurveKind::ChiLowerTerm => chi_lower_term::<R>(&params, t)?.sqrt(),
                    _ => {
                        if params.g == 1 {
                            crate::cutoff::fast_mix_no_cutoff_lower::<R>(&params, t)?
                        } else {
                            R::from_f64(tv_lower_bound_curve(&params, t))
                        }
                    }
                };
                points.push(CurvePoint { t, value });
            }
        }
    }
    Ok(DistanceCurve { kind, points })
}

/// Coerces curve values to f64 for export.
pub fn curve_to_f64<R: Real>(curve: &DistanceCurve<R>) -> DistanceCurve<f64> {
    DistanceCurve {
        kind: curve.kind,
        points: curve
            .points
            .iter()
            .map(|p| CurvePoint {
                t: p.t,
                value: p.value.to_f64(),
            })
            .collect(),
    }
}
