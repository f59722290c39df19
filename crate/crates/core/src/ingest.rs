//! Measured impact velocities to per-impact gain/loss energies and fitted
//! gain/loss curves, enabling an empirically inferred cobweb.
//!
//! Kinetic energies just before and after impact `n` are `E_n⁻ = v_in²` and
//! `E_n⁺ = v_out²`. The flight between impacts carries the gain,
//! `E_n^gain = E_n⁻ - E_{n-1}⁺`, and the impact carries the loss,
//! `E_n^loss = E_n⁺ - E_n⁻` (negative when the impact dissipates).
//!
//! Input schema: UTF-8 CSV with header `n,v_in,v_out`, one impact per line,
//! `#` comments ignored.

use std::io::BufRead;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::kick::KickParams;
use crate::system::{Clamp, CycleOrder, GainLossSystem};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("read error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {message}")]
    Validation { line: usize, message: String },
    #[error("need at least {needed} records, got {got}")]
    TooFewRecords { got: usize, needed: usize },
    #[error("need at least {needed} points to fit, got {got}")]
    TooFewPoints { got: usize, needed: usize },
    #[error("fit is rank deficient: all abscissae are identical")]
    RankDeficient,
    #[error("invalid fit request: {0}")]
    BadFitSpec(String),
}

/// One measured impact: approach and launch speeds relative to the table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpactRecord {
    pub index: u64,
    pub v_in: f64,
    pub v_out: f64,
}

/// Parses the `n,v_in,v_out` CSV schema, rejecting non-monotone indices and
/// negative or non-finite speeds. Errors carry the offending line number.
pub fn parse_impacts(reader: impl BufRead) -> Result<Vec<ImpactRecord>, IngestError> {
    let mut records: Vec<ImpactRecord> = Vec::new();
    let mut header_seen = false;
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if !header_seen {
            if fields != ["n", "v_in", "v_out"] {
                return Err(IngestError::Parse {
                    line: line_no,
                    message: format!("expected header `n,v_in,v_out`, got `{trimmed}`"),
                });
            }
            header_seen = true;
            continue;
        }
        if fields.len() != 3 {
            return Err(IngestError::Parse {
                line: line_no,
                message: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        let index: u64 = fields[0].parse().map_err(|e| IngestError::Parse {
            line: line_no,
            message: format!("bad impact number `{}`: {e}", fields[0]),
        })?;
        let v_in: f64 = fields[1].parse().map_err(|e| IngestError::Parse {
            line: line_no,
            message: format!("bad v_in `{}`: {e}", fields[1]),
        })?;
        let v_out: f64 = fields[2].parse().map_err(|e| IngestError::Parse {
            line: line_no,
            message: format!("bad v_out `{}`: {e}", fields[2]),
        })?;
        for (name, v) in [("v_in", v_in), ("v_out", v_out)] {
            if !v.is_finite() || v < 0.0 {
                return Err(IngestError::Validation {
                    line: line_no,
                    message: format!("{name} must be a nonnegative finite speed, got {v}"),
                });
            }
        }
        if let Some(last) = records.last() {
            if index <= last.index {
                return Err(IngestError::Validation {
                    line: line_no,
                    message: format!(
                        "impact numbers must increase strictly: {index} after {}",
                        last.index
                    ),
                });
            }
        }
        records.push(ImpactRecord { index, v_in, v_out });
    }
    if !header_seen {
        return Err(IngestError::Parse { line: 1, message: "missing header `n,v_in,v_out`".into() });
    }
    Ok(records)
}

/// Per-impact energies derived from a record series.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySeries {
    /// `E_n⁻ = v_in²`, one per record.
    pub pre_impact: Vec<f64>,
    /// `E_n⁺ = v_out²`, one per record.
    pub post_impact: Vec<f64>,
    /// `E_n^gain = E_n⁻ - E_{n-1}⁺` for each complete cycle (records.len() - 1).
    pub gains: Vec<f64>,
    /// `E_n^loss = E_n⁺ - E_n⁻` for the same cycles, stored signed.
    pub losses: Vec<f64>,
}

pub fn energy_series(records: &[ImpactRecord]) -> Result<EnergySeries, IngestError> {
    if records.len() < 2 {
        return Err(IngestError::TooFewRecords { got: records.len(), needed: 2 });
    }
    let pre_impact: Vec<f64> = records.iter().map(|r| r.v_in * r.v_in).collect();
    let post_impact: Vec<f64> = records.iter().map(|r| r.v_out * r.v_out).collect();
    let gains: Vec<f64> =
        (1..records.len()).map(|n| pre_impact[n] - post_impact[n - 1]).collect();
    let losses: Vec<f64> = (1..records.len()).map(|n| post_impact[n] - pre_impact[n]).collect();
    Ok(EnergySeries { pre_impact, post_impact, gains, losses })
}

/// Requested fit family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitKind {
    /// `y = slope·x`; the natural model for the loss curve.
    LinearThroughOrigin,
    /// Piecewise-linear interpolation through binned means; the default for
    /// the oscillatory gain curve. Evaluation clamps outside the knot range.
    PiecewiseLinear { bins: usize },
    /// Least-squares polynomial of the given degree (at most 6), fitted in a
    /// rescaled abscissa for conditioning.
    Polynomial { degree: usize },
}

pub const DEFAULT_GAIN_BINS: usize = 32;

impl FitKind {
    pub fn default_loss() -> Self {
        FitKind::LinearThroughOrigin
    }

    pub fn default_gain() -> Self {
        FitKind::PiecewiseLinear { bins: DEFAULT_GAIN_BINS }
    }
}

/// A fitted input-output curve with its root-mean-square residual.
#[derive(Debug, Clone, PartialEq)]
pub enum FittedCurve {
    LinearThroughOrigin {
        slope: f64,
        residual_rms: f64,
    },
    PiecewiseLinear {
        /// Knots sorted by abscissa, strictly increasing.
        knots: Vec<(f64, f64)>,
        residual_rms: f64,
    },
    Polynomial {
        /// Coefficients in the scaled variable `t = (x - center) / half_width`.
        coefficients: Vec<f64>,
        center: f64,
        half_width: f64,
        residual_rms: f64,
    },
}

impl FittedCurve {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            FittedCurve::LinearThroughOrigin { slope, .. } => slope * x,
            FittedCurve::PiecewiseLinear { knots, .. } => {
                let first = knots[0];
                let last = knots[knots.len() - 1];
                if x <= first.0 {
                    return first.1;
                }
                if x >= last.0 {
                    return last.1;
                }
                let i = knots.partition_point(|k| k.0 <= x);
                let (x0, y0) = knots[i - 1];
                let (x1, y1) = knots[i];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
            FittedCurve::Polynomial { coefficients, center, half_width, .. } => {
                let t = (x - center) / half_width;
                coefficients.iter().rev().fold(0.0, |acc, &c| acc * t + c)
            }
        }
    }

    pub fn residual_rms(&self) -> f64 {
        match self {
            FittedCurve::LinearThroughOrigin { residual_rms, .. }
            | FittedCurve::PiecewiseLinear { residual_rms, .. }
            | FittedCurve::Polynomial { residual_rms, .. } => *residual_rms,
        }
    }
}

/// Fits the gain curve (pre-impact energy against the previous post-impact
/// energy) and the loss curve (post-impact energy against pre-impact energy).
/// A linear-through-origin loss fit recovers an empirical `C²`.
pub fn fit_curves(
    series: &EnergySeries,
    loss_kind: FitKind,
    gain_kind: FitKind,
) -> Result<(FittedCurve, FittedCurve), IngestError> {
    let loss_points: Vec<(f64, f64)> =
        series.pre_impact.iter().copied().zip(series.post_impact.iter().copied()).collect();
    let gain_points: Vec<(f64, f64)> = series
        .post_impact
        .iter()
        .copied()
        .zip(series.pre_impact.iter().copied().skip(1))
        .collect();
    let gain = fit_points(gain_points, gain_kind)?;
    let loss = fit_points(loss_points, loss_kind)?;
    Ok((gain, loss))
}

fn fit_points(mut points: Vec<(f64, f64)>, kind: FitKind) -> Result<FittedCurve, IngestError> {
    if points.len() < 4 {
        return Err(IngestError::TooFewPoints { got: points.len(), needed: 4 });
    }
    // sort for determinism: the fit is then invariant under record shuffles
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let x_lo = points[0].0;
    let x_hi = points[points.len() - 1].0;

    match kind {
        FitKind::LinearThroughOrigin => {
            let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
            if sxx == 0.0 {
                return Err(IngestError::RankDeficient);
            }
            let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
            let slope = sxy / sxx;
            let residual_rms = rms(&points, |x| slope * x);
            Ok(FittedCurve::LinearThroughOrigin { slope, residual_rms })
        }
        FitKind::PiecewiseLinear { bins } => {
            if bins == 0 {
                return Err(IngestError::BadFitSpec("piecewise-linear needs at least one bin".into()));
            }
            if x_hi <= x_lo {
                return Err(IngestError::RankDeficient);
            }
            let width = (x_hi - x_lo) / bins as f64;
            let mut sums = vec![(0.0f64, 0.0f64, 0usize); bins];
            for &(x, y) in &points {
                let bin = (((x - x_lo) / width) as usize).min(bins - 1);
                sums[bin].0 += x;
                sums[bin].1 += y;
                sums[bin].2 += 1;
            }
            let mut knots: Vec<(f64, f64)> = sums
                .into_iter()
                .filter(|&(_, _, n)| n > 0)
                .map(|(sx, sy, n)| (sx / n as f64, sy / n as f64))
                .collect();
            knots.dedup_by(|b, a| b.0 <= a.0);
            if knots.len() < 2 {
                return Err(IngestError::RankDeficient);
            }
            let curve = FittedCurve::PiecewiseLinear { knots, residual_rms: 0.0 };
            let residual_rms = rms(&points, |x| curve.eval(x));
            if let FittedCurve::PiecewiseLinear { knots, .. } = curve {
                Ok(FittedCurve::PiecewiseLinear { knots, residual_rms })
            } else {
                unreachable!()
            }
        }
        FitKind::Polynomial { degree } => {
            if degree == 0 || degree > 6 {
                return Err(IngestError::BadFitSpec(format!(
                    "polynomial degree must lie in 1..=6, got {degree}"
                )));
            }
            if x_hi <= x_lo {
                return Err(IngestError::RankDeficient);
            }
            let center = 0.5 * (x_lo + x_hi);
            let half_width = 0.5 * (x_hi - x_lo);
            let m = degree + 1;
            // normal equations in the scaled variable
            let mut pow_sums = vec![0.0f64; 2 * degree + 1];
            let mut rhs = vec![0.0f64; m];
            for &(x, y) in &points {
                let t = (x - center) / half_width;
                let mut tp = 1.0;
                for k in 0..=2 * degree {
                    pow_sums[k] += tp;
                    if k < m {
                        rhs[k] += y * tp;
                    }
                    tp *= t;
                }
            }
            let mut matrix = vec![vec![0.0f64; m]; m];
            for i in 0..m {
                for j in 0..m {
                    matrix[i][j] = pow_sums[i + j];
                }
            }
            let coefficients = solve(matrix, rhs).ok_or(IngestError::RankDeficient)?;
            let curve = FittedCurve::Polynomial {
                coefficients: coefficients.clone(),
                center,
                half_width,
                residual_rms: 0.0,
            };
            let residual_rms = rms(&points, |x| curve.eval(x));
            Ok(FittedCurve::Polynomial { coefficients, center, half_width, residual_rms })
        }
    }
}

fn rms(points: &[(f64, f64)], f: impl Fn(f64) -> f64) -> f64 {
    let ss: f64 = points.iter().map(|&(x, y)| (y - f(x)) * (y - f(x))).sum();
    (ss / points.len() as f64).sqrt()
}

/// Gaussian elimination with partial pivoting; small systems only (≤ 7×7).
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 * n as f64 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Impact records generated from the kick model itself: the launch velocity
/// follows the velocity map and the approach velocity is the pre-damping
/// value `v_out / C`. Optional Gaussian measurement noise is added to both
/// speeds; energies are even in the velocity, so speeds are stored as
/// magnitudes.
pub fn synthesize_impacts(
    params: &KickParams,
    v0: f64,
    impacts: usize,
    noise_sigma: f64,
    seed: u64,
) -> Result<Vec<ImpactRecord>, IngestError> {
    if impacts < 2 {
        return Err(IngestError::TooFewRecords { got: impacts, needed: 2 });
    }
    if !noise_sigma.is_finite() || noise_sigma < 0.0 {
        return Err(IngestError::BadFitSpec(format!(
            "noise sigma must be nonnegative and finite, got {noise_sigma}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = if noise_sigma > 0.0 {
        Some(Normal::new(0.0, noise_sigma).expect("sigma validated above"))
    } else {
        None
    };
    let mut records = Vec::with_capacity(impacts);
    let mut v_prev = v0;
    for n in 1..=impacts as u64 {
        let v_out = params.velocity_step(v_prev);
        let v_in = v_out / params.c();
        let (mut v_in_meas, mut v_out_meas) = (v_in, v_out);
        if let Some(dist) = &noise {
            v_in_meas += dist.sample(&mut rng);
            v_out_meas += dist.sample(&mut rng);
        }
        records.push(ImpactRecord { index: n, v_in: v_in_meas.abs(), v_out: v_out_meas.abs() });
        v_prev = v_out;
    }
    Ok(records)
}

/// Wraps fitted curves as a gain/loss system so the empirical cobweb and
/// fixed-point analysis run through the same machinery as the model.
pub fn empirical_system(gain: FittedCurve, loss: FittedCurve, domain: (f64, f64)) -> GainLossSystem {
    GainLossSystem::new(
        Box::new(move |e| gain.eval(e)),
        Box::new(move |e| loss.eval(e)),
        domain,
        CycleOrder::LossThenGain,
        Clamp::NonNegative,
        "empirical",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::fixed_points;
    use crate::kick::EnergyVariant;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use std::io::Cursor;

    fn rel(a: f64, b: f64) -> f64 {
        if a == b {
            return 0.0;
        }
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn parses_minimal_file() {
        let records = parse_impacts(Cursor::new("n,v_in,v_out\n1,0.34,0.27\n")).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0], ImpactRecord { index: 1, v_in: 0.34, v_out: 0.27 });
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let text = "# impact data\n\nn,v_in,v_out\n# first run\n1,0.3,0.2\n2,0.31,0.21\n";
        let records = parse_impacts(Cursor::new(text)).unwrap();
        assert_eq!(records.len(), 2);
    }

    #[test]
    fn rejects_out_of_order_indices_with_line_number() {
        let text = "n,v_in,v_out\n1,0.3,0.2\n3,0.3,0.2\n2,0.3,0.2\n";
        let err = parse_impacts(Cursor::new(text)).unwrap_err();
        match err {
            IngestError::Validation { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_negative_speed() {
        let text = "n,v_in,v_out\n1,-0.3,0.2\n";
        assert!(matches!(
            parse_impacts(Cursor::new(text)),
            Err(IngestError::Validation { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_garbage_and_missing_header() {
        let err = parse_impacts(Cursor::new("n,v_in,v_out\n1,abc,0.2\n")).unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 2, .. }));
        let err = parse_impacts(Cursor::new("1,0.3,0.2\n")).unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 1, .. }));
        let err = parse_impacts(Cursor::new("")).unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 1, .. }));
    }

    #[test]
    fn energy_series_arithmetic() {
        let records = vec![
            ImpactRecord { index: 1, v_in: 0.32, v_out: 0.30 },
            ImpactRecord { index: 2, v_in: 0.34, v_out: 0.27 },
        ];
        let series = energy_series(&records).unwrap();
        assert_eq!(series.gains.len(), 1);
        assert_eq!(series.losses.len(), 1);
        // E₂^gain = 0.34² - 0.30² and E₂^loss = 0.27² - 0.34²
        assert!(rel(series.gains[0], 0.0256) < 1e-12, "gain {}", series.gains[0]);
        assert!(rel(series.losses[0], -0.0427) < 1e-12, "loss {}", series.losses[0]);
    }

    #[test]
    fn energy_series_balanced_steady_state() {
        let records: Vec<ImpactRecord> = (1..=5)
            .map(|n| ImpactRecord { index: n, v_in: 0.25, v_out: 0.25 })
            .collect();
        let series = energy_series(&records).unwrap();
        assert!(series.gains.iter().all(|&g| g == 0.0));
        assert!(series.losses.iter().all(|&l| l == 0.0));
    }

    #[test]
    fn energy_series_is_exact_arithmetic() {
        let records = synthesize_impacts(
            &KickParams::paper_defaults_ck(0.1).unwrap(),
            0.5,
            50,
            0.0,
            0,
        )
        .unwrap();
        let series = energy_series(&records).unwrap();
        for (r, e) in records.iter().zip(&series.pre_impact) {
            assert!(rel(e.sqrt(), r.v_in) < 1e-15);
        }
    }

    #[test]
    fn energy_series_needs_two_records() {
        let records = vec![ImpactRecord { index: 1, v_in: 0.3, v_out: 0.2 }];
        assert!(matches!(
            energy_series(&records),
            Err(IngestError::TooFewRecords { got: 1, needed: 2 })
        ));
    }

    #[test]
    fn noiseless_round_trip_recovers_c_squared() {
        let p = KickParams::paper_defaults_ck(0.1).unwrap();
        let records = synthesize_impacts(&p, 0.5, 300, 0.0, 0).unwrap();
        let series = energy_series(&records).unwrap();
        let (_, loss) = fit_curves(&series, FitKind::default_loss(), FitKind::default_gain()).unwrap();
        match loss {
            FittedCurve::LinearThroughOrigin { slope, residual_rms } => {
                let c2 = p.c() * p.c();
                assert!(rel(slope, c2) < 1e-6, "slope {slope:e} vs C² {c2:e}");
                assert!(residual_rms.is_finite());
            }
            other => panic!("unexpected loss fit {other:?}"),
        }
    }

    #[test]
    fn noisy_round_trip_stays_within_five_percent() {
        let p = KickParams::paper_defaults_ck(0.1).unwrap();
        let c2 = p.c() * p.c();
        for seed in 0..100 {
            let records = synthesize_impacts(&p, 0.5, 300, 1e-3, seed).unwrap();
            let series = energy_series(&records).unwrap();
            let (_, loss) =
                fit_curves(&series, FitKind::default_loss(), FitKind::default_gain()).unwrap();
            let slope = match loss {
                FittedCurve::LinearThroughOrigin { slope, .. } => slope,
                _ => unreachable!(),
            };
            assert!(rel(slope, c2) < 0.05, "seed {seed}: slope {slope:e} vs {c2:e}");
        }
    }

    #[test]
    fn constant_series_fits_slope_one_exactly() {
        let records: Vec<ImpactRecord> =
            (1..=6).map(|n| ImpactRecord { index: n, v_in: 0.3, v_out: 0.3 }).collect();
        let series = energy_series(&records).unwrap();
        // constant abscissae make the gain fit rank deficient, so fit loss alone
        let both = fit_curves(&series, FitKind::default_loss(), FitKind::PiecewiseLinear { bins: 4 });
        assert!(matches!(both, Err(IngestError::RankDeficient)));
        let pts: Vec<(f64, f64)> =
            series.pre_impact.iter().copied().zip(series.post_impact.iter().copied()).collect();
        let curve = fit_points(pts, FitKind::LinearThroughOrigin).unwrap();
        match curve {
            FittedCurve::LinearThroughOrigin { slope, residual_rms } => {
                assert_eq!(slope, 1.0);
                assert_eq!(residual_rms, 0.0);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn fitting_is_permutation_invariant() {
        let p = KickParams::paper_defaults_ck(0.1).unwrap();
        let records = synthesize_impacts(&p, 0.5, 200, 1e-3, 7).unwrap();
        let series = energy_series(&records).unwrap();
        let (gain_a, loss_a) =
            fit_curves(&series, FitKind::default_loss(), FitKind::default_gain()).unwrap();

        // shuffle the derived point sets; index validation does not apply here
        let mut shuffled = series.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut order: Vec<usize> = (0..series.pre_impact.len()).collect();
        order.shuffle(&mut rng);
        shuffled.pre_impact = order.iter().map(|&i| series.pre_impact[i]).collect();
        shuffled.post_impact = order.iter().map(|&i| series.post_impact[i]).collect();
        // keep the gain pairing intact under the same permutation
        let pairs: Vec<(f64, f64)> = series
            .post_impact
            .iter()
            .copied()
            .zip(series.pre_impact.iter().copied().skip(1))
            .collect();
        let mut pair_order: Vec<usize> = (0..pairs.len()).collect();
        pair_order.shuffle(&mut rng);
        let shuffled_pairs: Vec<(f64, f64)> = pair_order.iter().map(|&i| pairs[i]).collect();

        let gain_b = fit_points(shuffled_pairs, FitKind::default_gain()).unwrap();
        let loss_pts: Vec<(f64, f64)> = shuffled
            .pre_impact
            .iter()
            .copied()
            .zip(shuffled.post_impact.iter().copied())
            .collect();
        let loss_b = fit_points(loss_pts, FitKind::LinearThroughOrigin).unwrap();
        assert_eq!(gain_a, gain_b);
        assert_eq!(loss_a, loss_b);
    }

    #[test]
    fn polynomial_fit_recovers_exact_cubic() {
        let poly = |x: f64| 1.5 - 2.0 * x + 0.5 * x * x * x;
        let points: Vec<(f64, f64)> =
            (0..40).map(|i| (i as f64 * 0.1, poly(i as f64 * 0.1))).collect();
        let curve = fit_points(points.clone(), FitKind::Polynomial { degree: 3 }).unwrap();
        for &(x, y) in &points {
            assert!((curve.eval(x) - y).abs() < 1e-9, "at x={x}");
        }
        assert!(curve.residual_rms() < 1e-9);
    }

    #[test]
    fn polynomial_degree_is_bounded() {
        let points: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, i as f64)).collect();
        assert!(matches!(
            fit_points(points.clone(), FitKind::Polynomial { degree: 7 }),
            Err(IngestError::BadFitSpec(_))
        ));
        assert!(matches!(
            fit_points(points, FitKind::Polynomial { degree: 0 }),
            Err(IngestError::BadFitSpec(_))
        ));
    }

    #[test]
    fn empirical_cobweb_matches_analytic_fixed_point_count() {
        let p = KickParams::paper_defaults_ck(0.1).unwrap();
        let records = synthesize_impacts(&p, 0.5, 300, 0.0, 0).unwrap();
        let series = energy_series(&records).unwrap();
        let (gain, loss) =
            fit_curves(&series, FitKind::default_loss(), FitKind::default_gain()).unwrap();

        let analytic = fixed_points(
            p.energy_cycle_fn(EnergyVariant::ExactSquare),
            p.energy_cycle_derivative_fn(EnergyVariant::ExactSquare),
            (0.0, 50.0),
            50_001,
        )
        .unwrap();

        let hull_hi = series.pre_impact.iter().cloned().fold(0.0f64, f64::max);
        let sys = empirical_system(gain, loss, (0.0, 1.2 * hull_hi));
        let cycle = |e: f64| sys.cycle(e);
        let derivative = |e: f64| {
            let h = 1e-6 * e.abs().max(1.0);
            (cycle(e + h) - cycle(e - h)) / (2.0 * h)
        };
        let empirical = fixed_points(cycle, derivative, (0.0, 1.2 * hull_hi), 20_001).unwrap();

        assert_eq!(
            empirical.nontrivial_count(1e-6 * hull_hi),
            analytic.nontrivial_count(1e-6),
            "empirical {empirical:?}"
        );
    }

    #[test]
    fn synthesized_records_are_valid_input() {
        let p = KickParams::paper_defaults_ck(0.5).unwrap();
        let records = synthesize_impacts(&p, 1.0, 100, 1e-3, 3).unwrap();
        assert_eq!(records.len(), 100);
        assert!(records.iter().all(|r| r.v_in >= 0.0 && r.v_out >= 0.0));
        assert!(records.windows(2).all(|w| w[0].index < w[1].index));
    }
}
