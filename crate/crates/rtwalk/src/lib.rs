//! Exact spectral analysis, mixing bounds and simulation for the random
//! transposition walk on permutations with one-sided interval restrictions.
//!
//! A restriction vector `b` confines row `i` of a permutation to the values
//! `[b_i, n]`. The walk picks two rows uniformly and swaps them when the
//! result stays compliant, holding on equal picks. This crate computes the
//! walk's full eigenvalue multiset from chains of partitions, evaluates the
//! closed-form chi-squared and total-variation bounds at finite sizes, and
//! cross-validates everything against brute-force enumeration, exact
//! rational matrix powers and Monte-Carlo simulation.
//!
//! Exact quantities (counts, eigenvalues, dimensions, small-instance
//! distances) are big integers and rationals. Distance curves and bound
//! evaluations are generic over a floating scalar: `f64` when convenient,
//! [`scalar::DoubleDouble`] (roughly 106-bit mantissa) where long sums and
//! extreme exponents call for headroom.

pub mod checks;
pub mod cutoff;
pub mod error;
pub mod mixing;
pub mod montecarlo;
pub mod report;
pub mod restriction;
pub mod scalar;
pub mod spectrum;
pub mod sweep;
pub mod tableaux;

pub use error::{Error, Result};
pub use restriction::{Permutation, RestrictionVector, TwoStepParams};
pub use scalar::{DoubleDouble, Real};
pub use spectrum::{PartitionChain, RemainderTriple, SpectralLine, Spectrum};
pub use sweep::{CurveKind, DistanceCurve, SweepConfig};
pub use tableaux::{Partition, SkewShape};

/// Distance curve in plain doubles.
pub type DistanceCurve64 = sweep::DistanceCurve<f64>;
/// Distance curve in the high-precision scalar (the default lane).
pub type DistanceCurveHp = sweep::DistanceCurve<DoubleDouble>;
/// Bound value in the high-precision scalar.
pub type BoundValueHp = cutoff::BoundValue<DoubleDouble>;
