//! Damped-driven gain-loss maps for walking droplets on an annulus.
//!
//! The crate models the horizontal dynamics of a bouncing droplet as a
//! one-dimensional kick map for the velocity, recasts one impact cycle as an
//! energy gain curve composed with an energy loss curve, and provides the
//! analysis toolchain for such maps: orbit iteration, cobweb traces, fixed
//! points, period detection, three-cycle search, Lyapunov exponents and
//! bifurcation sweeps. The two-step logistic map serves as the reference
//! damped-driven cycle, and the [`ingest`] module turns measured impact
//! velocities into empirical gain/loss curves.

pub mod analysis;
pub mod ingest;
pub mod kick;
pub mod logistic;
pub mod system;
pub mod trajectory;

pub use kick::{kick_strength, EnergyVariant, KickError, KickParams};
pub use logistic::{LogisticError, LogisticParams};
pub use system::{Clamp, CycleOrder, GainLossSystem};
