//! The kick map for a walker on an annulus and its energy-domain forms.
//!
//! The velocity map is
//!
//! ```text
//! v_{n+1} = C [ v_n + K sin(ω v_n) e^{-ν v_n²} ]
//! ```
//!
//! with damping factor `C`, kick strength `K`, wavenumber `ω` and damping
//! parameter `ν`. Squaring it gives a recurrence for the kinetic energy
//! `E = v²`, which splits into a linear loss curve `E ↦ C²E` and an
//! oscillatory gain curve; composing gain after loss reproduces the full
//! energy cycle.

use std::f64::consts::PI;
use thiserror::Error;

/// Reject wavenumbers whose `sin(πω)` is this close to zero.
const RESONANCE_EPS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum KickError {
    #[error("damping factor must lie in (0, 1], got {0}")]
    InvalidDamping(f64),
    #[error("wavenumber {omega} is resonant: |sin(pi omega)| = {sin_abs:e} leaves the kick strength undefined")]
    ResonantWavenumber { omega: f64, sin_abs: f64 },
    #[error("kick strength overflows: ln|K| = {ln_abs}")]
    KickOverflow { ln_abs: f64 },
    #[error("parameter {name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("energy must be nonnegative and finite, got {0}")]
    InvalidEnergy(f64),
}

/// Kick strength `K = -π e^{νπ²} / sin(πω)`.
pub fn kick_strength(omega: f64, nu: f64) -> Result<f64, KickError> {
    let (sign, ln_abs) = kick_strength_parts(omega, nu)?;
    Ok(sign * ln_abs.exp())
}

/// `K` as a sign and the log of its magnitude, `ln|K| = νπ² + ln π - ln|sin(πω)|`.
///
/// Keeping the logarithm lets `K e^{-ν v²}` be evaluated as
/// `exp(ln|K| - ν v²)`, which preserves the cancellation at `v = π` and
/// avoids overflow for large `ν`.
fn kick_strength_parts(omega: f64, nu: f64) -> Result<(f64, f64), KickError> {
    if !omega.is_finite() {
        return Err(KickError::NonFinite { name: "omega", value: omega });
    }
    if !nu.is_finite() {
        return Err(KickError::NonFinite { name: "nu", value: nu });
    }
    let s = (PI * omega).sin();
    if s.abs() <= RESONANCE_EPS {
        return Err(KickError::ResonantWavenumber { omega, sin_abs: s.abs() });
    }
    let ln_abs = nu * PI * PI + PI.ln() - s.abs().ln();
    if ln_abs >= f64::MAX.ln() {
        return Err(KickError::KickOverflow { ln_abs });
    }
    Ok((-s.signum(), ln_abs))
}

/// Selects how the cross term of the energy recurrence is weighted.
///
/// Squaring the velocity map produces the cross term
/// `C²K v sin(ωv) e^{-νv²}` twice. `ExactSquare` keeps both copies, so the
/// energy cycle is exactly the squared velocity map; `SingleCrossTerm`
/// carries the term once.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EnergyVariant {
    #[default]
    ExactSquare,
    SingleCrossTerm,
}

impl EnergyVariant {
    fn cross_coefficient(self) -> f64 {
        match self {
            EnergyVariant::ExactSquare => 2.0,
            EnergyVariant::SingleCrossTerm => 1.0,
        }
    }
}

/// Constants of the kick map: damping factor `C`, wavenumber `ω`, damping
/// parameter `ν` and the derived kick strength `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickParams {
    c: f64,
    omega: f64,
    nu: f64,
    k: f64,
    k_sign: f64,
    k_ln_abs: f64,
}

impl KickParams {
    /// The experimental wavenumber, `ω = 31/2`.
    pub const DEFAULT_OMEGA: f64 = 15.5;

    pub fn new(c: f64, omega: f64, nu: f64) -> Result<Self, KickError> {
        if !c.is_finite() || c <= 0.0 || c > 1.0 {
            return Err(KickError::InvalidDamping(c));
        }
        let (k_sign, k_ln_abs) = kick_strength_parts(omega, nu)?;
        let k = k_sign * k_ln_abs.exp();
        Ok(Self { c, omega, nu, k, k_sign, k_ln_abs })
    }

    /// Parameters with `ω = 31/2` and `ν = ω²/(8.4π²)`; only `C` is free.
    pub fn paper_defaults(c: f64) -> Result<Self, KickError> {
        let omega = Self::DEFAULT_OMEGA;
        let nu = omega * omega / (8.4 * PI * PI);
        Self::new(c, omega, nu)
    }

    /// Default parameters with the damping factor given as a multiple of
    /// `1/K`, i.e. `C = ck / K`. Every regime of interest is stated this way
    /// (`ck = 1/7` for the steady walker, `1` for full-scale chaos, ...).
    pub fn paper_defaults_ck(ck: f64) -> Result<Self, KickError> {
        if !ck.is_finite() || ck <= 0.0 {
            return Err(KickError::InvalidDamping(ck));
        }
        let omega = Self::DEFAULT_OMEGA;
        let nu = omega * omega / (8.4 * PI * PI);
        let k = kick_strength(omega, nu)?;
        Self::new(ck / k, omega, nu)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// `C·K`, the damping factor in units of `1/K`.
    pub fn ck(&self) -> f64 {
        self.c * self.k
    }

    /// One application of the velocity map, `C [v + K sin(ωv) e^{-νv²}]`.
    pub fn velocity_step(&self, v: f64) -> f64 {
        let kick = self.k_sign * (self.k_ln_abs - self.nu * v * v).exp() * (self.omega * v).sin();
        self.c * (v + kick)
    }

    /// Exact derivative of [`Self::velocity_step`]:
    /// `C [1 + Kω cos(ωv) e^{-νv²} - 2Kν v sin(ωv) e^{-νv²}]`.
    pub fn velocity_derivative(&self, v: f64) -> f64 {
        let a = self.k_sign * (self.k_ln_abs - self.nu * v * v).exp();
        let (sin, cos) = (self.omega * v).sin_cos();
        self.c * (1.0 + self.omega * cos * a - 2.0 * self.nu * v * sin * a)
    }

    /// One full cycle of the energy recurrence, `E = v² ↦ v_{next}²`.
    pub fn energy_cycle(&self, e: f64, variant: EnergyVariant) -> Result<f64, KickError> {
        check_energy(e)?;
        Ok(self.energy_cycle_raw(e, variant))
    }

    pub(crate) fn energy_cycle_raw(&self, e: f64, variant: EnergyVariant) -> f64 {
        match variant {
            EnergyVariant::ExactSquare => {
                let f = self.velocity_step(e.sqrt());
                f * f
            }
            EnergyVariant::SingleCrossTerm => {
                let s = e.sqrt();
                // t = K sin(ω√E) e^{-νE}
                let t = self.k_sign * (self.k_ln_abs - self.nu * e).exp() * (self.omega * s).sin();
                self.c * self.c * (e + t * t + s * t)
            }
        }
    }

    /// Derivative of [`Self::energy_cycle`] with respect to `E`.
    pub fn energy_cycle_derivative(&self, e: f64, variant: EnergyVariant) -> Result<f64, KickError> {
        check_energy(e)?;
        Ok(self.energy_cycle_derivative_raw(e, variant))
    }

    pub(crate) fn energy_cycle_derivative_raw(&self, e: f64, variant: EnergyVariant) -> f64 {
        match variant {
            EnergyVariant::ExactSquare => {
                if e == 0.0 {
                    let d = self.velocity_derivative(0.0);
                    return d * d;
                }
                let v = e.sqrt();
                self.velocity_step(v) * self.velocity_derivative(v) / v
            }
            EnergyVariant::SingleCrossTerm => {
                let c2 = self.c * self.c;
                if e == 0.0 {
                    let kw = self.k * self.omega;
                    return c2 * (1.0 + kw + kw * kw);
                }
                let s = e.sqrt();
                let (sin, cos) = (self.omega * s).sin_cos();
                let a1 = self.k_sign * (self.k_ln_abs - self.nu * e).exp();
                let a2 = (2.0 * (self.k_ln_abs - self.nu * e)).exp();
                let d2 = a2 * (self.omega * sin * cos / s - 2.0 * self.nu * sin * sin);
                let d3 = a1 * (sin / (2.0 * s) + 0.5 * self.omega * cos - self.nu * s * sin);
                c2 * (1.0 + d2 + d3)
            }
        }
    }

    /// The gain curve: post-loss energy in, post-gain energy out.
    ///
    /// With `g = CK sin(ω√E/C) e^{-νE/C²}` this is `(√E + g)²` for
    /// [`EnergyVariant::ExactSquare`] and `E + √E·g + g²` for
    /// [`EnergyVariant::SingleCrossTerm`]. For energies far above the
    /// oscillatory scale the exponential underflows and the curve degenerates
    /// to the identity.
    pub fn gain_curve(&self, e: f64, variant: EnergyVariant) -> Result<f64, KickError> {
        check_energy(e)?;
        Ok(self.gain_curve_raw(e, variant))
    }

    pub(crate) fn gain_curve_raw(&self, e: f64, variant: EnergyVariant) -> f64 {
        let s = e.sqrt();
        let g = self.c
            * self.k_sign
            * (self.k_ln_abs - self.nu * e / (self.c * self.c)).exp()
            * (self.omega * s / self.c).sin();
        e + variant.cross_coefficient() * s * g + g * g
    }

    /// The loss curve, `E ↦ C²E`.
    pub fn loss_curve(&self, e: f64) -> Result<f64, KickError> {
        check_energy(e)?;
        Ok(self.loss_curve_raw(e))
    }

    pub(crate) fn loss_curve_raw(&self, e: f64) -> f64 {
        self.c * self.c * e
    }

    /// The velocity map as a plain closure, for iteration.
    pub fn velocity_fn(&self) -> impl Fn(f64) -> f64 + Send + Sync + Copy {
        let p = *self;
        move |v| p.velocity_step(v)
    }

    /// The energy cycle as a plain closure. Callers are responsible for
    /// keeping inputs nonnegative (the orbit layer clamps).
    pub fn energy_cycle_fn(&self, variant: EnergyVariant) -> impl Fn(f64) -> f64 + Send + Sync + Copy {
        let p = *self;
        move |e| p.energy_cycle_raw(e, variant)
    }

    /// Derivative of the energy cycle as a plain closure.
    pub fn energy_cycle_derivative_fn(
        &self,
        variant: EnergyVariant,
    ) -> impl Fn(f64) -> f64 + Send + Sync + Copy {
        let p = *self;
        move |e| p.energy_cycle_derivative_raw(e, variant)
    }
}

fn check_energy(e: f64) -> Result<(), KickError> {
    if !e.is_finite() || e < 0.0 {
        return Err(KickError::InvalidEnergy(e));
    }
    Ok(())
}
