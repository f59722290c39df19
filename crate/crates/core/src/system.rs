//! A damped-driven cycle expressed as a pair of input-output energy curves.

use crate::kick::{EnergyVariant, KickParams};
use crate::logistic::LogisticParams;

/// Whether iterated values are clamped to stay nonnegative.
///
/// Energy-domain maps clamp once per half-step at the orbit layer; the curve
/// evaluators themselves are never clamped, so they stay plottable. Signed
/// velocity maps use [`Clamp::None`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clamp {
    None,
    NonNegative,
}

impl Clamp {
    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Clamp::None => x,
            Clamp::NonNegative => x.max(0.0),
        }
    }
}

/// Which half-step comes first in one full cycle, and therefore which plot
/// axis carries the canonical state.
///
/// The kick system iterates pre-impact energies (abscissa): loss first, then
/// gain. The two-step logistic iterates the logistic value itself (ordinate):
/// gain first, then loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleOrder {
    GainThenLoss,
    LossThenGain,
}

type Curve = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A gain curve and a loss curve forming one damped-driven cycle.
///
/// Both curves map nonnegative energies to finite values over `domain`; the
/// composed cycle map and cobweb traces are built on top of them.
pub struct GainLossSystem {
    gain: Curve,
    loss: Curve,
    domain: (f64, f64),
    order: CycleOrder,
    clamp: Clamp,
    label: String,
}

impl GainLossSystem {
    pub fn new(
        gain: Curve,
        loss: Curve,
        domain: (f64, f64),
        order: CycleOrder,
        clamp: Clamp,
        label: impl Into<String>,
    ) -> Self {
        Self { gain, loss, domain, order, clamp, label: label.into() }
    }

    /// The kick system in the energy domain. The canonical state is the
    /// pre-impact energy `E = v²`, so the cycle applies the loss first.
    pub fn kick(params: KickParams, variant: EnergyVariant) -> Self {
        let g = params;
        let l = params;
        Self::new(
            Box::new(move |e| g.gain_curve_raw(e, variant)),
            Box::new(move |e| l.loss_curve_raw(e)),
            (0.0, 50.0),
            CycleOrder::LossThenGain,
            Clamp::NonNegative,
            format!("kick-energy[{variant:?}] CK={:.6e}", params.ck()),
        )
    }

    /// The two-step logistic system. The canonical state is the logistic
    /// value itself, so the cycle applies the gain first.
    pub fn logistic(params: LogisticParams) -> Self {
        let g = params;
        let l = params;
        Self::new(
            Box::new(move |e| g.gain_raw(e)),
            Box::new(move |e| l.loss_raw(e)),
            (0.0, 1.0),
            CycleOrder::GainThenLoss,
            Clamp::NonNegative,
            format!("two-step-logistic r={}", params.r()),
        )
    }

    pub fn gain(&self, e: f64) -> f64 {
        (self.gain)(e)
    }

    pub fn loss(&self, e: f64) -> f64 {
        (self.loss)(e)
    }

    /// One full cycle in the canonical state variable. The intermediate
    /// half-step value is clamped exactly as the cobweb trace clamps it, so
    /// iterating this closure and walking the cobweb agree bit for bit.
    pub fn cycle(&self, x: f64) -> f64 {
        match self.order {
            CycleOrder::LossThenGain => self.gain(self.clamp.apply(self.loss(x))),
            CycleOrder::GainThenLoss => self.loss(self.clamp.apply(self.gain(x))),
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn order(&self) -> CycleOrder {
        self.order
    }

    pub fn clamp(&self) -> Clamp {
        self.clamp
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamp_behaviour() {
        assert_eq!(Clamp::NonNegative.apply(-0.5), 0.0);
        assert_eq!(Clamp::NonNegative.apply(0.5), 0.5);
        assert_eq!(Clamp::None.apply(-0.5), -0.5);
    }

    #[test]
    fn kick_cycle_matches_energy_cycle() {
        let p = KickParams::paper_defaults_ck(0.25).unwrap();
        let sys = GainLossSystem::kick(p, EnergyVariant::ExactSquare);
        for e in [0.01, 0.1, 1.0, 10.0] {
            let via_curves = sys.cycle(e);
            let direct = p.energy_cycle(e, EnergyVariant::ExactSquare).unwrap();
            let scale = direct.abs().max(1e-18);
            assert!((via_curves - direct).abs() / scale < 1e-12, "e={e}");
        }
    }

    #[test]
    fn logistic_cycle_matches_one_step() {
        let p = LogisticParams::new(3.3).unwrap();
        let sys = GainLossSystem::logistic(p);
        for i in 0..=100 {
            let e = i as f64 / 100.0;
            let two = sys.cycle(e);
            let one = p.step(e).unwrap();
            let scale = one.abs().max(1e-18);
            assert!((two - one).abs() / scale < 1e-12, "e={e}");
        }
    }

    #[test]
    fn kick_loss_contracts_below_identity() {
        let p = KickParams::paper_defaults_ck(1.0).unwrap();
        let sys = GainLossSystem::kick(p, EnergyVariant::ExactSquare);
        for e in [1e-3, 0.1, 3.0, 49.0] {
            assert!(sys.loss(e) < e);
            assert!(sys.loss(e).is_finite());
            assert!(sys.gain(e).is_finite());
        }
    }
}
