//! Orbit iteration, cobweb traces, fixed points, period detection,
//! three-cycle search, Lyapunov exponents and bifurcation sweeps for scalar
//! maps.

mod cobweb;
mod fixed_point;
mod lyapunov;
mod orbit;
mod sweep;

pub use cobweb::{cobweb_trace, cobweb_trace_one_step, CobwebTrace, Segment, SegmentKind};
pub use fixed_point::{
    find_three_cycle, fixed_points, FixedPoint, FixedPointSet, Stability, ThreeCycle,
};
pub use lyapunov::{lyapunov, LyapunovEstimate};
pub use orbit::{detect_period, iterate, Orbit, DIVERGENCE_LIMIT};
pub use sweep::{bifurcation_sweep, BifurcationDiagram, SweepConfig};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("orbit diverged at iterate {index}: |x| = {value:e} exceeds {limit:e}")]
    Divergence { index: usize, value: f64, limit: f64 },
    #[error("iteration counts must satisfy n > transient, got n = {n}, transient = {transient}")]
    BadIterationCounts { n: usize, transient: usize },
    #[error("domain [{lo}, {hi}] is empty or not finite")]
    EmptyDomain { lo: f64, hi: f64 },
    #[error("grid needs at least {needed} points, got {got}")]
    GridTooCoarse { got: usize, needed: usize },
    #[error("orbit window of {len} samples is too short for p_max = {p_max} (need {needed})")]
    WindowTooShort { len: usize, p_max: usize, needed: usize },
    #[error("p_max must be at least 1")]
    ZeroPeriodBound,
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("cobweb trace needs at least one step")]
    NoSteps,
    #[error("keep count {keep} must be at least 2 * p_max = {}", 2 * p_max)]
    KeepTooSmall { keep: usize, p_max: usize },
}

/// Validates a finite, nonempty interval.
fn check_domain((lo, hi): (f64, f64)) -> Result<(), AnalysisError> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(AnalysisError::EmptyDomain { lo, hi });
    }
    Ok(())
}

/// `n` evenly spaced points covering `[lo, hi]` inclusive.
fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(move |i| if i == n - 1 { hi } else { lo + step * i as f64 })
}
