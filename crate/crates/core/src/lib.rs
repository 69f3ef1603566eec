//! Linear response of a linearized, driven-dissipative optomechanical system.
//!
//! The cavity fluctuation `δa` and the mechanical fluctuation `δb` obey linear
//! quantum Langevin equations with drift matrix `χ0` in the basis
//! `u = (δa, δa†, δb, δb†)`. Everything observable about the response to a
//! weak probe follows from the susceptibility `χ(ω) = (−iω − χ0)⁻¹`:
//!
//! * [`response`] builds `χ0`, inverts it numerically, evaluates the closed
//!   forms, and checks dynamical stability from the characteristic polynomial.
//! * [`greens`] turns susceptibilities into retarded Green's functions and
//!   the sideband, spectral-function and reflection observables.
//! * [`timedomain`] integrates the Green's-function equations of motion and a
//!   probe-driven mean-field ODE as an independent check of the frequency
//!   domain results.
//! * [`baseline`] is the bare single-mode cavity.
//!
//! All rates and frequencies are expressed in units of the cavity damping
//! rate `κ` unless stated otherwise.

// `!(x < y)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baseline;
pub mod error;
pub mod greens;
pub mod matrix;
pub mod params;
pub mod presets;
pub mod response;
pub mod roots;
pub mod timedomain;

pub use error::{Error, Result};
pub use greens::{GreensSet, ObservablePoint, ResponseSignal, Sidebands};
pub use matrix::ComplexMatrix4;
pub use params::{MeanFields, SystemParams, ValidationReport};
pub use presets::{FigurePreset, OutputKind, SweepSpec};
pub use response::{StabilityReport, SusceptibilitySet};
pub use timedomain::{GreenSource, SidebandFit, Spectrum, TimeSeries};

pub use num_complex::Complex64;
