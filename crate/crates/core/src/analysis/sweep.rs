//! Bifurcation sweeps over a one-parameter family of maps.

use rayon::prelude::*;

use super::orbit::{detect_period_slice, DIVERGENCE_LIMIT};
use super::{check_domain, linspace, AnalysisError};
use crate::system::Clamp;

/// Attractor samples and detected periods across a parameter grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationDiagram {
    pub param_grid: Vec<f64>,
    /// `keep` retained post-transient iterates per parameter. A diverged
    /// parameter keeps a row of NaNs.
    pub attractor_samples: Vec<Vec<f64>>,
    /// Detected period per parameter: `0` means aperiodic within tolerance,
    /// `-1` marks divergence.
    pub periods: Vec<i32>,
}

/// Sweep controls. `Default` gives the tuned values used throughout:
/// `x0 = 1`, 5000 transient iterates, 256 kept samples, `p_max = 64`,
/// relative period tolerance 1e-6, warm start on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub x0: f64,
    pub transient: usize,
    pub keep: usize,
    pub p_max: usize,
    pub period_tol: f64,
    /// Seed each grid point with the previous attractor sample, tracking the
    /// attractor branch; this makes the sweep sequential. With warm start off
    /// every point starts cold from `x0` and points run in parallel.
    pub warm_start: bool,
    pub clamp: Clamp,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            x0: 1.0,
            transient: 5000,
            keep: 256,
            p_max: 64,
            period_tol: 1e-6,
            warm_start: true,
            clamp: Clamp::NonNegative,
        }
    }
}

/// Iterates `family(param)` over an ascending parameter grid and attaches a
/// detected period to each grid point. Divergence at one parameter is
/// recorded in-band (period `-1`) and the sweep continues. Output is
/// deterministic regardless of how many threads execute the cold-start path.
pub fn bifurcation_sweep<M, F>(
    family: F,
    param_range: (f64, f64),
    grid_n: usize,
    cfg: &SweepConfig,
) -> Result<BifurcationDiagram, AnalysisError>
where
    F: Fn(f64) -> M + Sync,
    M: Fn(f64) -> f64,
{
    check_domain(param_range)?;
    if grid_n < 2 {
        return Err(AnalysisError::GridTooCoarse { got: grid_n, needed: 2 });
    }
    if cfg.p_max == 0 {
        return Err(AnalysisError::ZeroPeriodBound);
    }
    if cfg.keep < 2 * cfg.p_max || cfg.keep < 3 {
        return Err(AnalysisError::KeepTooSmall { keep: cfg.keep, p_max: cfg.p_max });
    }
    if !cfg.period_tol.is_finite() || cfg.period_tol <= 0.0 {
        return Err(AnalysisError::BadTolerance(cfg.period_tol));
    }
    // period detection needs three repetitions per candidate
    let p_max = cfg.p_max.min(cfg.keep / 3).max(1);

    let param_grid: Vec<f64> = linspace(param_range.0, param_range.1, grid_n).collect();
    let mut attractor_samples;
    let mut periods;

    if cfg.warm_start {
        attractor_samples = Vec::with_capacity(grid_n);
        periods = Vec::with_capacity(grid_n);
        let mut start = cfg.x0;
        for &param in &param_grid {
            let (samples, period) = run_point(&family(param), start, cfg, p_max);
            // Re-seed when the orbit diverged or collapsed onto exactly zero:
            // the origin is absorbing, so a warm start from it would pin every
            // later parameter to the trivial branch.
            start = match samples.last() {
                Some(&x) if x.is_finite() && x.abs() > 1e-12 => x,
                _ => cfg.x0,
            };
            attractor_samples.push(samples);
            periods.push(period);
        }
    } else {
        let results: Vec<(Vec<f64>, i32)> = param_grid
            .par_iter()
            .map(|&param| run_point(&family(param), cfg.x0, cfg, p_max))
            .collect();
        attractor_samples = Vec::with_capacity(grid_n);
        periods = Vec::with_capacity(grid_n);
        for (samples, period) in results {
            attractor_samples.push(samples);
            periods.push(period);
        }
    }

    Ok(BifurcationDiagram { param_grid, attractor_samples, periods })
}

fn run_point<M: Fn(f64) -> f64>(
    map: &M,
    x0: f64,
    cfg: &SweepConfig,
    p_max: usize,
) -> (Vec<f64>, i32) {
    let diverged = |x: f64| !x.is_finite() || x.abs() > DIVERGENCE_LIMIT;
    if diverged(x0) {
        return (vec![f64::NAN; cfg.keep], -1);
    }
    let mut x = x0;
    for _ in 0..cfg.transient {
        x = cfg.clamp.apply(map(x));
        if diverged(x) {
            return (vec![f64::NAN; cfg.keep], -1);
        }
    }
    let mut samples = Vec::with_capacity(cfg.keep);
    for _ in 0..cfg.keep {
        x = cfg.clamp.apply(map(x));
        if diverged(x) {
            return (vec![f64::NAN; cfg.keep], -1);
        }
        samples.push(x);
    }
    let period = detect_period_slice(&samples, p_max, cfg.period_tol) as i32;
    (samples, period)
}

impl BifurcationDiagram {
    /// Index of the first grid point whose detected period equals `p`.
    pub fn first_index_with_period(&self, p: i32) -> Option<usize> {
        self.periods.iter().position(|&q| q == p)
    }
}
