//! The logistic map `E ↦ rE(1-E)` and its two-step gain/loss decomposition.
//!
//! Writing the gain as `G(E) = rE²` and solving for the loss that restores
//! the one-step map gives `T(E) = √(rE) - E`; the composition `T(G(E))`
//! is again `rE - rE²`. This is the reference damped-driven cycle the kick
//! system is compared against.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LogisticError {
    #[error("growth rate must lie in (0, 4], got {0}")]
    InvalidRate(f64),
    #[error("logistic state must lie in [0, 1], got {0}")]
    OutOfDomain(f64),
    #[error("input must be nonnegative and finite, got {0}")]
    NegativeInput(f64),
}

/// Growth rate of the logistic map. For `r ≤ 4` iterates of `[0, 1]` stay
/// in `[0, 1]`, so the constructor rejects anything outside `(0, 4]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticParams {
    r: f64,
}

impl LogisticParams {
    pub fn new(r: f64) -> Result<Self, LogisticError> {
        if !r.is_finite() || r <= 0.0 || r > 4.0 {
            return Err(LogisticError::InvalidRate(r));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// One application of `rE(1-E)` with the domain check.
    pub fn step(&self, e: f64) -> Result<f64, LogisticError> {
        if !(0.0..=1.0).contains(&e) {
            return Err(LogisticError::OutOfDomain(e));
        }
        Ok(self.step_raw(e))
    }

    pub(crate) fn step_raw(&self, e: f64) -> f64 {
        self.r * e * (1.0 - e)
    }

    /// `r(1 - 2E)`, the slope of the map. The two-step composition has the
    /// same derivative wherever it is defined.
    pub fn derivative(&self, e: f64) -> f64 {
        self.r * (1.0 - 2.0 * e)
    }

    /// Gain half-step `G(E) = rE²`.
    pub fn gain(&self, e: f64) -> Result<f64, LogisticError> {
        check_nonneg(e)?;
        Ok(self.gain_raw(e))
    }

    pub(crate) fn gain_raw(&self, e: f64) -> f64 {
        self.r * e * e
    }

    /// Loss half-step `T(E) = √(rE) - E`.
    pub fn loss(&self, e: f64) -> Result<f64, LogisticError> {
        check_nonneg(e)?;
        Ok(self.loss_raw(e))
    }

    pub(crate) fn loss_raw(&self, e: f64) -> f64 {
        (self.r * e).sqrt() - e
    }

    /// The one-step map as a plain closure, for iteration.
    pub fn step_fn(&self) -> impl Fn(f64) -> f64 + Send + Sync + Copy {
        let p = *self;
        move |e| p.step_raw(e)
    }

    pub fn derivative_fn(&self) -> impl Fn(f64) -> f64 + Send + Sync + Copy {
        let p = *self;
        move |e| p.derivative(e)
    }
}

fn check_nonneg(e: f64) -> Result<(), LogisticError> {
    if !e.is_finite() || e < 0.0 {
        return Err(LogisticError::NegativeInput(e));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        if a == b {
            return 0.0;
        }
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn rate_validation() {
        assert!(LogisticParams::new(4.0).is_ok());
        assert!(matches!(LogisticParams::new(0.0), Err(LogisticError::InvalidRate(_))));
        assert!(matches!(LogisticParams::new(4.1), Err(LogisticError::InvalidRate(_))));
        assert!(matches!(LogisticParams::new(f64::INFINITY), Err(LogisticError::InvalidRate(_))));
    }

    #[test]
    fn fixed_point_of_r_2_5() {
        // E* = 1 - 1/r
        let p = LogisticParams::new(2.5).unwrap();
        assert!(rel(p.step(0.6).unwrap(), 0.6) < 1e-15);
    }

    #[test]
    fn endpoints_and_maximum() {
        let p = LogisticParams::new(4.0).unwrap();
        assert_eq!(p.step(0.0).unwrap(), 0.0);
        assert_eq!(p.step(0.5).unwrap(), 1.0);
        assert_eq!(p.step(1.0).unwrap(), 0.0);
    }

    #[test]
    fn step_rejects_out_of_domain() {
        let p = LogisticParams::new(2.0).unwrap();
        assert!(matches!(p.step(-0.1), Err(LogisticError::OutOfDomain(_))));
        assert!(matches!(p.step(1.1), Err(LogisticError::OutOfDomain(_))));
        assert!(p.step(f64::NAN).is_err());
    }

    #[test]
    fn two_step_composition_recovers_one_step() {
        for r in [2.5, 3.3, 4.0] {
            let p = LogisticParams::new(r).unwrap();
            let mut worst = 0.0f64;
            for i in 0..=1000 {
                let e = i as f64 / 1000.0;
                let two = p.loss(p.gain(e).unwrap()).unwrap();
                let one = p.step(e).unwrap();
                let err = if two == one {
                    0.0
                } else {
                    (two - one).abs() / one.abs().max(f64::MIN_POSITIVE)
                };
                if one != 0.0 {
                    worst = worst.max(err);
                } else {
                    assert!(two.abs() < 1e-15, "r={r} e={e}");
                }
            }
            assert!(worst < 1e-12, "r={r}: worst relative error {worst:e}");
        }
    }

    #[test]
    fn gain_and_loss_at_origin() {
        let p = LogisticParams::new(3.3).unwrap();
        assert_eq!(p.gain(0.0).unwrap(), 0.0);
        assert_eq!(p.loss(0.0).unwrap(), 0.0);
    }

    #[test]
    fn gain_then_loss_at_the_maximum() {
        let p = LogisticParams::new(4.0).unwrap();
        let g = p.gain(0.5).unwrap();
        assert_eq!(g, 1.0);
        assert!(rel(p.loss(g).unwrap(), 1.0) < 1e-15);
    }

    #[test]
    fn half_steps_reject_negative_input() {
        let p = LogisticParams::new(3.0).unwrap();
        assert!(matches!(p.gain(-0.5), Err(LogisticError::NegativeInput(_))));
        assert!(matches!(p.loss(-0.5), Err(LogisticError::NegativeInput(_))));
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let p = LogisticParams::new(3.7).unwrap();
        let h = 1e-6;
        for i in 1..20 {
            let e = i as f64 / 20.0;
            let fd = (p.step_raw(e + h) - p.step_raw(e - h)) / (2.0 * h);
            assert!((p.derivative(e) - fd).abs() < 1e-8);
        }
    }
}
