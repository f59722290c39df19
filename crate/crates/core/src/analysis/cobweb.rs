//! Cobweb traces for two-step gain/loss systems and plain one-step maps.
//!
//! For a two-step system the gain curve is drawn as a function of the
//! ordinate (post-loss energy on the y axis, post-gain energy on the x axis)
//! and the loss curve as a function of the abscissa. One gain application is
//! a horizontal segment from the loss curve to the gain curve; one loss
//! application is a vertical segment back. Intersections of the two curves
//! are exactly the fixed points of the composed cycle.

use super::orbit::DIVERGENCE_LIMIT;
use super::AnalysisError;
use crate::system::{Clamp, CycleOrder, GainLossSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    /// Horizontal step onto the gain curve (two-step systems).
    GainStep,
    /// Vertical step onto the loss curve (two-step systems).
    LossStep,
    /// Vertical step onto the map curve (one-step maps).
    ToCurve,
    /// Horizontal step onto the diagonal (one-step maps).
    ToDiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub from: (f64, f64),
    pub to: (f64, f64),
    pub kind: SegmentKind,
}

/// A cobweb trace plus the sampled curves it is drawn against.
#[derive(Debug, Clone, PartialEq)]
pub struct CobwebTrace {
    pub segments: Vec<Segment>,
    /// Gain curve as plot points, or the map curve for one-step cobwebs.
    pub gain_curve: Vec<(f64, f64)>,
    /// Loss curve as plot points, or the diagonal for one-step cobwebs.
    pub loss_curve: Vec<(f64, f64)>,
    /// The canonical-state orbit traced out, identical to what `iterate`
    /// produces for the composed cycle map.
    pub state_orbit: Vec<f64>,
}

/// Walks `steps` full gain/loss cycles of `system` starting from the
/// canonical state `x0` (pre-impact energy for the kick system, the logistic
/// value for the two-step logistic).
pub fn cobweb_trace(
    system: &GainLossSystem,
    x0: f64,
    steps: usize,
    curve_samples: usize,
) -> Result<CobwebTrace, AnalysisError> {
    if steps == 0 {
        return Err(AnalysisError::NoSteps);
    }
    check(x0, 0)?;
    let clamp = system.clamp();
    let mut segments = Vec::with_capacity(2 * steps);
    let mut state_orbit = Vec::with_capacity(steps);

    match system.order() {
        CycleOrder::LossThenGain => {
            let mut x = x0;
            let mut y = clamp.apply(system.loss(x0));
            for k in 1..=steps {
                let x1 = clamp.apply(system.gain(y));
                segments.push(Segment { from: (x, y), to: (x1, y), kind: SegmentKind::GainStep });
                check(x1, k)?;
                state_orbit.push(x1);
                let y1 = clamp.apply(system.loss(x1));
                segments.push(Segment { from: (x1, y), to: (x1, y1), kind: SegmentKind::LossStep });
                x = x1;
                y = y1;
            }
        }
        CycleOrder::GainThenLoss => {
            let mut y = x0;
            let mut x = clamp.apply(system.gain(y));
            for k in 1..=steps {
                let y1 = clamp.apply(system.loss(x));
                segments.push(Segment { from: (x, y), to: (x, y1), kind: SegmentKind::LossStep });
                check(y1, k)?;
                state_orbit.push(y1);
                let x1 = clamp.apply(system.gain(y1));
                segments.push(Segment { from: (x, y1), to: (x1, y1), kind: SegmentKind::GainStep });
                x = x1;
                y = y1;
            }
        }
    }

    let (x_range, y_range) = bounding_ranges(&segments);
    let gain_curve = sample(curve_samples, y_range, |y| (system.gain(y), y));
    let loss_curve = sample(curve_samples, x_range, |x| (x, system.loss(x)));
    Ok(CobwebTrace { segments, gain_curve, loss_curve, state_orbit })
}

/// Standard cobweb for a one-step map: vertical to the curve, horizontal to
/// the diagonal. The returned `gain_curve` holds the map curve and
/// `loss_curve` the diagonal.
pub fn cobweb_trace_one_step(
    map: impl Fn(f64) -> f64,
    x0: f64,
    steps: usize,
    curve_samples: usize,
    clamp: Clamp,
) -> Result<CobwebTrace, AnalysisError> {
    if steps == 0 {
        return Err(AnalysisError::NoSteps);
    }
    check(x0, 0)?;
    let mut segments = Vec::with_capacity(2 * steps);
    let mut state_orbit = Vec::with_capacity(steps);
    let mut x = x0;
    for k in 1..=steps {
        let y = clamp.apply(map(x));
        segments.push(Segment { from: (x, x), to: (x, y), kind: SegmentKind::ToCurve });
        check(y, k)?;
        state_orbit.push(y);
        segments.push(Segment { from: (x, y), to: (y, y), kind: SegmentKind::ToDiagonal });
        x = y;
    }

    let (x_range, y_range) = bounding_ranges(&segments);
    let square = (x_range.0.min(y_range.0), x_range.1.max(y_range.1));
    let gain_curve = sample(curve_samples, x_range, |x| (x, map(x)));
    let loss_curve = sample(curve_samples, square, |t| (t, t));
    Ok(CobwebTrace { segments, gain_curve, loss_curve, state_orbit })
}

fn check(x: f64, index: usize) -> Result<(), AnalysisError> {
    if !x.is_finite() || x.abs() > DIVERGENCE_LIMIT {
        return Err(AnalysisError::Divergence { index, value: x, limit: DIVERGENCE_LIMIT });
    }
    Ok(())
}

fn bounding_ranges(segments: &[Segment]) -> ((f64, f64), (f64, f64)) {
    let mut x = (f64::INFINITY, f64::NEG_INFINITY);
    let mut y = (f64::INFINITY, f64::NEG_INFINITY);
    for seg in segments {
        for p in [seg.from, seg.to] {
            x = (x.0.min(p.0), x.1.max(p.0));
            y = (y.0.min(p.1), y.1.max(p.1));
        }
    }
    (widen(x), widen(y))
}

/// A trace collapsed onto an attractor still needs curves to plot against.
fn widen((lo, hi): (f64, f64)) -> (f64, f64) {
    if hi - lo < 1e-12 {
        let pad = 0.5 * lo.abs().max(1.0);
        (lo - pad, hi + pad)
    } else {
        (lo, hi)
    }
}

fn sample(n: usize, (lo, hi): (f64, f64), f: impl Fn(f64) -> (f64, f64)) -> Vec<(f64, f64)> {
    let n = n.max(2);
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| {
            let t = if i == n - 1 { hi } else { lo + step * i as f64 };
            f(t)
        })
        .collect()
}
