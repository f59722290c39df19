//! Orbit iteration and period detection.

use super::AnalysisError;
use crate::system::Clamp;

/// Iterates whose magnitude exceeds this are reported as divergence.
pub const DIVERGENCE_LIMIT: f64 = 1e6;

/// Post-transient iterates of a scalar map.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub samples: Vec<f64>,
    pub transient_len: usize,
    pub map_id: String,
}

/// Iterates `map` from `x0` for `n` steps, discarding the first `transient`
/// iterates; `clamp` is applied after every step (energy-domain maps clamp
/// to nonnegative values, signed velocity maps do not).
pub fn iterate(
    map: impl Fn(f64) -> f64,
    map_id: &str,
    x0: f64,
    n: usize,
    transient: usize,
    clamp: Clamp,
) -> Result<Orbit, AnalysisError> {
    if n <= transient {
        return Err(AnalysisError::BadIterationCounts { n, transient });
    }
    check_diverged(x0, 0)?;
    let mut samples = Vec::with_capacity(n - transient);
    let mut x = x0;
    for k in 1..=n {
        x = clamp.apply(map(x));
        check_diverged(x, k)?;
        if k > transient {
            samples.push(x);
        }
    }
    Ok(Orbit { samples, transient_len: transient, map_id: map_id.to_owned() })
}

fn check_diverged(x: f64, index: usize) -> Result<(), AnalysisError> {
    if !x.is_finite() || x.abs() > DIVERGENCE_LIMIT {
        return Err(AnalysisError::Divergence { index, value: x, limit: DIVERGENCE_LIMIT });
    }
    Ok(())
}

/// Smallest period `p ≤ p_max` such that `|x_{k+p} - x_k| ≤ tol·max(1, |x_k|)`
/// for every retained sample, or `0` when no period qualifies.
///
/// The window must hold at least `3·p_max` samples so every candidate period
/// is checked against two or more repetitions.
pub fn detect_period(orbit: &Orbit, p_max: usize, tol: f64) -> Result<usize, AnalysisError> {
    if p_max == 0 {
        return Err(AnalysisError::ZeroPeriodBound);
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(AnalysisError::BadTolerance(tol));
    }
    let len = orbit.samples.len();
    if len < 3 * p_max {
        return Err(AnalysisError::WindowTooShort { len, p_max, needed: 3 * p_max });
    }
    Ok(detect_period_slice(&orbit.samples, p_max, tol))
}

/// Period detection core shared with the sweep, which caps `p_max` itself.
pub(super) fn detect_period_slice(xs: &[f64], p_max: usize, tol: f64) -> usize {
    'candidates: for p in 1..=p_max {
        for k in 0..xs.len() - p {
            if (xs[k + p] - xs[k]).abs() > tol * xs[k].abs().max(1.0) {
                continue 'candidates;
            }
        }
        return p;
    }
    0
}
