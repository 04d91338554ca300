//! Radiation from electrons accelerated by ultra-strong field pulses.
//!
//! An electron pushed by a uni-directional electric field pulse `E(t)` emits
//! two kinds of radiation:
//!
//! * **quantum radiation**: photon *pairs* created by the non-inertial
//!   motion of the scatterer (a moving-mirror effect, the flat-space cousin
//!   of accelerated-detector thermality), with maximally entangled
//!   polarizations;
//! * **classical Larmor radiation**: the coherent state radiated by the
//!   accelerated charge, with its exact blind spot along the axis of motion.
//!
//! This crate solves the 1D relativistic motion of the electron, evaluates
//! both emission amplitudes as highly oscillatory time integrals (in lab time
//! or in retarded time, where the phase is exactly linear), and derives the
//! observables that tell the two channels apart: the forward/backward cone of
//! quantum domination, pair and single-photon probabilities via mode sums,
//! spectral power laws with their cutoff, and the Euler-Heisenberg vacuum
//! corrections relevant near the Schwinger field.
//!
//! Everything internal is expressed in natural units (ħ = c = ε₀ = μ₀ = 1)
//! with energies in eV; see [`units`] for the conversions. Pulse widths for
//! Gaussian profiles are standard deviations, not FWHM.
//!
//! The `examples/` directory has one runnable program per capability; the
//! `unruh` binary drives the same pipelines from TOML run configurations.

pub mod analysis;
pub mod cli;
pub mod kinematics;
pub mod pulse;
pub mod quadrature;
pub mod radiation;
pub mod units;
pub mod vacuum;

pub use kinematics::{RetardedTimeMap, SamplingPolicy, Trajectory};
pub use pulse::{PulseProfile, PulseShape};
pub use radiation::{AmplitudeMethod, LarmorCoefficient, PhotonMode, TwoPhotonAmplitude};
pub use units::Constants;
