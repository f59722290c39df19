//! Walker trajectories on the annulus, reconstructed from the velocity map.
//!
//! The velocity map is iterated directly (signed, no clamping) and positions
//! accumulate as `x_{n+1} = x_n + v_{n+1}·dt`, wrapped onto `[0, L)`. With
//! the default `dt = 1` the displacement per impact equals the velocity.

use std::f64::consts::PI;
use thiserror::Error;

use crate::analysis::{detect_period, iterate, lyapunov, AnalysisError};
use crate::kick::KickParams;
use crate::system::Clamp;

pub const DEFAULT_CIRCUMFERENCE: f64 = 10.0 * PI;
pub const DEFAULT_DT: f64 = 1.0;

#[derive(Debug, Error, PartialEq)]
pub enum TrajectoryError {
    #[error("circumference must be positive and finite, got {0}")]
    InvalidCircumference(f64),
    #[error("time per impact must be positive and finite, got {0}")]
    InvalidTimestep(f64),
    #[error("at least one impact is required")]
    NoImpacts,
    #[error("histogram bin width must be positive and finite, got {0}")]
    InvalidBinWidth(f64),
    #[error("path must not be empty")]
    EmptyPath,
    #[error(transparent)]
    Orbit(#[from] AnalysisError),
}

/// Per-impact state of a walker on an annulus of circumference `L`.
/// Entry `i` is the state after impact `i + 1`; the walker starts at
/// arc-length position zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerPath {
    /// Arc-length coordinate per impact, wrapped to `[0, L)`.
    pub positions: Vec<f64>,
    /// Signed velocity per impact.
    pub velocities: Vec<f64>,
    /// Cumulative unwrapped positions; differences are `v·dt`.
    pub unwrapped: Vec<f64>,
    pub circumference: f64,
    pub dt: f64,
}

/// Iterates the kick velocity map from `v0` and accumulates positions.
pub fn simulate_walk(
    params: &KickParams,
    v0: f64,
    impacts: usize,
    circumference: f64,
    dt: f64,
) -> Result<WalkerPath, TrajectoryError> {
    if impacts == 0 {
        return Err(TrajectoryError::NoImpacts);
    }
    if !circumference.is_finite() || circumference <= 0.0 {
        return Err(TrajectoryError::InvalidCircumference(circumference));
    }
    if !dt.is_finite() || dt <= 0.0 {
        return Err(TrajectoryError::InvalidTimestep(dt));
    }
    let orbit = iterate(params.velocity_fn(), "kick-velocity", v0, impacts, 0, Clamp::None)?;
    let velocities = orbit.samples;
    let mut unwrapped = Vec::with_capacity(impacts);
    let mut positions = Vec::with_capacity(impacts);
    let mut x = 0.0;
    for &v in &velocities {
        x += v * dt;
        unwrapped.push(x);
        positions.push(wrap(x, circumference));
    }
    Ok(WalkerPath { positions, velocities, unwrapped, circumference, dt })
}

fn wrap(x: f64, l: f64) -> f64 {
    let w = x.rem_euclid(l);
    // rem_euclid can round up to l itself for tiny negative inputs
    if w >= l {
        0.0
    } else {
        w
    }
}

/// Histogram of displacement magnitudes with fixed-width bins starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub bin_width: f64,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn occupied_bins(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathStats {
    /// Mean of `|v|` over the path.
    pub mean_speed: f64,
    /// Sign changes of the velocity, ignoring exact zeros.
    pub direction_switch_count: usize,
    /// Histogram of per-impact displacement magnitudes `|Δx|`.
    pub displacement_histogram: Histogram,
}

pub fn path_stats(path: &WalkerPath, bin_width: f64) -> Result<PathStats, TrajectoryError> {
    if path.velocities.is_empty() {
        return Err(TrajectoryError::EmptyPath);
    }
    if !bin_width.is_finite() || bin_width <= 0.0 {
        return Err(TrajectoryError::InvalidBinWidth(bin_width));
    }
    let mean_speed =
        path.velocities.iter().map(|v| v.abs()).sum::<f64>() / path.velocities.len() as f64;

    let mut switches = 0;
    let mut prev_sign = 0i8;
    for &v in &path.velocities {
        let s = if v > 0.0 {
            1i8
        } else if v < 0.0 {
            -1
        } else {
            0
        };
        if s != 0 {
            if prev_sign != 0 && s != prev_sign {
                switches += 1;
            }
            prev_sign = s;
        }
    }

    let mut counts = Vec::new();
    let mut prev = 0.0;
    for &x in &path.unwrapped {
        let d = (x - prev).abs();
        prev = x;
        let bin = (d / bin_width).floor() as usize;
        if bin >= counts.len() {
            counts.resize(bin + 1, 0);
        }
        counts[bin] += 1;
    }

    Ok(PathStats {
        mean_speed,
        direction_switch_count: switches,
        displacement_histogram: Histogram { bin_width, counts },
    })
}

/// Long-time character of the walk, decided by period detection and the
/// Lyapunov exponent of the velocity orbit rather than ad-hoc thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkRegime {
    /// Period-1 velocity: the walker moves at a steady speed.
    Steady,
    /// A low-period velocity cycle, e.g. the two-step jump.
    Periodic(usize),
    /// No period up to the bound and a positive Lyapunov exponent.
    Chaotic,
    /// No period detected but the exponent is not positive either.
    Unresolved,
}

pub fn walk_regime(
    params: &KickParams,
    v0: f64,
    n: usize,
    transient: usize,
) -> Result<WalkRegime, TrajectoryError> {
    let orbit = iterate(params.velocity_fn(), "kick-velocity", v0, n, transient, Clamp::None)?;
    let period = detect_period(&orbit, 64, 1e-6)?;
    Ok(match period {
        1 => WalkRegime::Steady,
        0 => {
            let est = lyapunov(
                params.velocity_fn(),
                |v| params.velocity_derivative(v),
                v0,
                n,
                transient,
                Clamp::None,
            )?;
            if est.exponent > 0.01 {
                WalkRegime::Chaotic
            } else {
                WalkRegime::Unresolved
            }
        }
        p => WalkRegime::Periodic(p),
    })
}
