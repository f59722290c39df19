//! Lyapunov exponent estimation along a single orbit.

use super::orbit::DIVERGENCE_LIMIT;
use super::AnalysisError;
use crate::system::Clamp;

/// Derivatives below this magnitude contribute `ln(1e-300)` and set the flag.
const DERIVATIVE_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovEstimate {
    pub exponent: f64,
    /// True when some orbit point hit the derivative floor; the estimate is
    /// then a lower bound dominated by that visit.
    pub floored: bool,
}

/// Average of `ln|f'(x_k)|` over the post-transient orbit of `map`:
/// positive values indicate exponential separation of nearby orbits.
pub fn lyapunov(
    map: impl Fn(f64) -> f64,
    derivative: impl Fn(f64) -> f64,
    x0: f64,
    n: usize,
    transient: usize,
    clamp: Clamp,
) -> Result<LyapunovEstimate, AnalysisError> {
    if n <= transient {
        return Err(AnalysisError::BadIterationCounts { n, transient });
    }
    let mut x = x0;
    check(x, 0)?;
    for k in 1..=transient {
        x = clamp.apply(map(x));
        check(x, k)?;
    }
    let mut sum = 0.0;
    let mut floored = false;
    let m = n - transient;
    for k in 0..m {
        let mut d = derivative(x).abs();
        if d < DERIVATIVE_FLOOR {
            d = DERIVATIVE_FLOOR;
            floored = true;
        }
        sum += d.ln();
        x = clamp.apply(map(x));
        check(x, transient + k + 1)?;
    }
    Ok(LyapunovEstimate { exponent: sum / m as f64, floored })
}

fn check(x: f64, index: usize) -> Result<(), AnalysisError> {
    if !x.is_finite() || x.abs() > DIVERGENCE_LIMIT {
        return Err(AnalysisError::Divergence { index, value: x, limit: DIVERGENCE_LIMIT });
    }
    Ok(())
}
