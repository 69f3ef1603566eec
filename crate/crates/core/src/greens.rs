//! Retarded Green's functions and the observables built from them.
//!
//! With the transform convention `G̃(ω) = ∫ G(τ)·e^{+iωτ} dτ` the Green's
//! functions are the first and third rows of `χ(ω)` up to a phase:
//!
//! ```text
//! G̃aa†(ω) = −i·χaa(ω)     G̃aa(ω) = +i·χaa†(ω)
//! G̃ba†(ω) = −i·χba(ω)     G̃ba(ω) = +i·χba†(ω)
//! ```
//!
//! A weak probe `ζ·δa·e^{iω_pc t} + h.c.` produces
//! `⟨δa(t)⟩ = ζ*·G̃aa†(ω_pc)·e^{−iω_pc t} + ζ·G̃aa(−ω_pc)·e^{+iω_pc t}` and the
//! same with `b` for the mechanics.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::params::SystemParams;
use crate::response::{susceptibility_analytic, SusceptibilitySet};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreensSet {
    pub g_aadag: Complex64,
    pub g_aa: Complex64,
    pub g_badag: Complex64,
    pub g_ba: Complex64,
}

impl GreensSet {
    pub fn from_susceptibilities(s: &SusceptibilitySet) -> Self {
        Self {
            g_aadag: -I * s.chi_aa,
            g_aa: I * s.chi_aadag,
            g_badag: -I * s.chi_ba,
            g_ba: I * s.chi_badag,
        }
    }
}

pub fn greens_at(p: &SystemParams, omega: f64) -> Result<GreensSet> {
    Ok(GreensSet::from_susceptibilities(&susceptibility_analytic(
        p, omega,
    )?))
}

/// Heaviside step with θ(0) = 1/2.
pub fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Anti-Stokes and Stokes sideband amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sidebands {
    pub d_as: f64,
    pub d_s: f64,
}

fn split_sidebands(omega_pc: f64, forward: f64, reflected: f64) -> Sidebands {
    let (up, down) = (heaviside(omega_pc), heaviside(-omega_pc));
    Sidebands {
        d_as: forward * up + reflected * down,
        d_s: forward * down + reflected * up,
    }
}

/// `D_AS = |G̃aa†(ω_pc)|·θ(ω_pc) + |G̃aa(−ω_pc)|·θ(−ω_pc)` and `D_S` with the
/// step functions swapped.
pub fn sideband_amplitudes(p: &SystemParams, omega_pc: f64) -> Result<Sidebands> {
    let forward = greens_at(p, omega_pc)?.g_aadag.norm();
    let reflected = greens_at(p, -omega_pc)?.g_aa.norm();
    Ok(split_sidebands(omega_pc, forward, reflected))
}

/// Every observable of the probe response at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservablePoint {
    pub omega_pc: f64,
    pub d_as: f64,
    pub d_s: f64,
    /// Cavity spectral function ρ(ω) = −(2/π)·Im G̃aa†(ω).
    pub rho: f64,
    /// Elastic reflection coefficient r(ω) = 1 − i·κ_cp·G̃aa†(ω).
    pub r_complex: Complex64,
    /// |r|².
    pub r_power: f64,
    /// 1 − κ_cp·ρ(ω).
    pub r_power_approx: f64,
    /// |G̃ba†(ω_pc)|
    pub d_badag: f64,
    /// |G̃ba(−ω_pc)|
    pub d_ba: f64,
    /// Green's functions at +ω_pc.
    pub greens: GreensSet,
}

pub fn spectral_and_reflection(p: &SystemParams, omega: f64) -> Result<ObservablePoint> {
    let here = greens_at(p, omega)?;
    let mirrored = greens_at(p, -omega)?;
    let sidebands = split_sidebands(omega, here.g_aadag.norm(), mirrored.g_aa.norm());
    let rho = -2.0 / PI * here.g_aadag.im;
    let r_complex = 1.0 - I * p.kappa_cp * here.g_aadag;
    Ok(ObservablePoint {
        omega_pc: omega,
        d_as: sidebands.d_as,
        d_s: sidebands.d_s,
        rho,
        r_complex,
        r_power: r_complex.norm_sqr(),
        r_power_approx: 1.0 - p.kappa_cp * rho,
        d_badag: here.g_badag.norm(),
        d_ba: mirrored.g_ba.norm(),
        greens: here,
    })
}

/// Two-sideband decomposition of a mean field in the frame rotating at the
/// coupling laser: `offset + amp_neg·e^{−iω_pc t} + amp_pos·e^{+iω_pc t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseSignal {
    pub mean_offset: Complex64,
    pub amp_neg: Complex64,
    pub amp_pos: Complex64,
    pub omega_pc: f64,
}

impl ResponseSignal {
    /// Value at time `t` in the rotating frame.
    pub fn at(&self, t: f64) -> Complex64 {
        let phase = Complex64::from_polar(1.0, -self.omega_pc * t);
        self.mean_offset + self.amp_neg * phase + self.amp_pos * phase.conj()
    }

    /// Value at time `t` in the laboratory frame, for carrier frequency `omega_c`.
    pub fn lab_frame(&self, t: f64, omega_c: f64) -> Complex64 {
        self.at(t) * Complex64::from_polar(1.0, -omega_c * t)
    }
}

pub fn optical_response(
    p: &SystemParams,
    alpha: Complex64,
    omega_pc: f64,
) -> Result<ResponseSignal> {
    let here = greens_at(p, omega_pc)?;
    let mirrored = greens_at(p, -omega_pc)?;
    Ok(ResponseSignal {
        mean_offset: alpha,
        amp_neg: p.zeta.conj() * here.g_aadag,
        amp_pos: p.zeta * mirrored.g_aa,
        omega_pc,
    })
}

pub fn mechanical_response(
    p: &SystemParams,
    beta: Complex64,
    omega_pc: f64,
) -> Result<ResponseSignal> {
    let here = greens_at(p, omega_pc)?;
    let mirrored = greens_at(p, -omega_pc)?;
    Ok(ResponseSignal {
        mean_offset: beta,
        amp_neg: p.zeta.conj() * here.g_badag,
        amp_pos: p.zeta * mirrored.g_ba,
        omega_pc,
    })
}
