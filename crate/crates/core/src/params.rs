//! Physical parameters of the linearized optomechanical system and the mean
//! fields around which it is linearized.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Parameter set of the linearized system.
///
/// Rates and frequencies are stored in units of `kappa`; [`SystemParams::normalized`]
/// rescales a set given in other units so that `kappa == 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Effective cavity detuning Δ. Positive is red detuning.
    pub delta: f64,
    /// Mechanical frequency ω_m.
    pub omega_m: f64,
    /// Effective optomechanical coupling g = g0·α.
    pub g: f64,
    /// Weight of the beam-splitter interaction, g_b = g·eps_b.
    pub eps_b: f64,
    /// Weight of the two-mode-squeezing interaction, g_t = g·eps_t.
    pub eps_t: f64,
    /// Total cavity damping rate κ.
    pub kappa: f64,
    /// Mechanical damping rate γ_m.
    pub gamma_m: f64,
    /// Part of κ due to the drive port.
    pub kappa_cp: f64,
    /// Probe amplitude ζ.
    pub zeta: Complex64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            delta: 5.0,
            omega_m: 5.0,
            g: 0.0,
            eps_b: 1.0,
            eps_t: 1.0,
            kappa: 1.0,
            gamma_m: 1e-4,
            kappa_cp: 0.25,
            zeta: Complex64::new(1e-3, 0.0),
        }
    }
}

impl SystemParams {
    /// Beam-splitter coupling g_b.
    pub fn g_b(&self) -> f64 {
        self.g * self.eps_b
    }

    /// Two-mode-squeezing coupling g_t.
    pub fn g_t(&self) -> f64 {
        self.g * self.eps_t
    }

    /// True when the optical and mechanical blocks are decoupled.
    pub fn is_uncoupled(&self) -> bool {
        self.g_b() == 0.0 && self.g_t() == 0.0
    }

    /// Returns the same physical system expressed in units of κ.
    pub fn normalized(&self) -> Self {
        let k = self.kappa;
        Self {
            delta: self.delta / k,
            omega_m: self.omega_m / k,
            g: self.g / k,
            eps_b: self.eps_b,
            eps_t: self.eps_t,
            kappa: 1.0,
            gamma_m: self.gamma_m / k,
            kappa_cp: self.kappa_cp / k,
            zeta: self.zeta / k,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// Validates and converts a failing report into an error.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = validate(self);
        if report.passed() {
            Ok(())
        } else {
            Err(Error::InvalidParams(report.violations))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every invariant of [`SystemParams`] and collects the violations.
pub fn validate(p: &SystemParams) -> ValidationReport {
    let mut violations = Vec::new();
    let mut require = |ok: bool, msg: &str| {
        if !ok {
            violations.push(msg.to_string());
        }
    };

    let fields = [
        ("delta", p.delta),
        ("omega_m", p.omega_m),
        ("g", p.g),
        ("eps_b", p.eps_b),
        ("eps_t", p.eps_t),
        ("kappa", p.kappa),
        ("gamma_m", p.gamma_m),
        ("kappa_cp", p.kappa_cp),
        ("zeta", p.zeta.re),
        ("zeta", p.zeta.im),
    ];
    for (name, v) in fields {
        require(v.is_finite(), &format!("{name} must be finite"));
    }

    require(p.kappa > 0.0, "kappa must be > 0");
    require(p.gamma_m > 0.0, "gamma_m must be > 0");
    require(p.omega_m > 0.0, "omega_m must be > 0");
    require(p.g >= 0.0, "g must be >= 0");
    require(p.eps_b >= 0.0, "eps_b must be >= 0");
    require(p.eps_t >= 0.0, "eps_t must be >= 0");
    require(p.kappa_cp >= 0.0, "kappa_cp must be >= 0");
    require(p.kappa_cp <= p.kappa, "kappa_cp must be ≤ kappa");
    require(
        p.g_b().is_finite() && p.g_t().is_finite(),
        "g_b and g_t must be finite",
    );

    violations.dedup();
    ValidationReport { violations }
}

/// Classical steady state of the driven system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFields {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub g_eff: f64,
}

/// Mean fields of the pumped cavity and the displaced mechanics.
///
/// `alpha = −eta/delta`, `beta = g0·alpha²/(omega_m − i·gamma_m/2)` and the
/// effective coupling `g = g0·alpha`. The undamped form `−g0·alpha²/omega_m`
/// differs from `beta` by its sign and the γ_m → 0 limit; only the damped
/// form is used here. `beta` shifts the mechanical DC offset and never enters
/// the fluctuation spectra.
pub fn mean_fields(
    eta: f64,
    g0: f64,
    delta: f64,
    omega_m: f64,
    gamma_m: f64,
) -> Result<MeanFields> {
    if delta == 0.0 {
        return Err(Error::SingularDetuning);
    }
    let alpha = -eta / delta;
    let beta = Complex64::new(g0 * alpha * alpha, 0.0) / Complex64::new(omega_m, -gamma_m / 2.0);
    Ok(MeanFields {
        alpha: Complex64::new(alpha, 0.0),
        beta,
        g_eff: g0 * alpha,
    })
}
