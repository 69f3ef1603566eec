//! Cross-check of the frequency-domain Green's functions against the two
//! time-domain routes at one probe frequency.

use std::fmt;

use omlrt_core::greens::greens_at;
use omlrt_core::response::stability;
use omlrt_core::timedomain::{
    default_horizon, default_probe_horizon, fft_green, integrate_green_eom, probe_oracle,
    step_limit,
};
use omlrt_core::{GreenSource, StabilityReport, SystemParams};

use crate::{CliError, CliResult};

pub const FFT_TOLERANCE: f64 = 1e-2;
pub const PROBE_TOLERANCE: f64 = 1e-6;
/// Half-width of the frequency window compared after the FFT.
pub const FFT_WINDOW: f64 = 2.0;
const DT: f64 = 1e-3;
const PROBE_PERIODS: usize = 30;
/// Largest number of RK4 steps a single integration may take.
const STEP_BUDGET: f64 = 2e7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Passed,
    Failed,
    /// Unstable parameters: the time-domain routes do not settle.
    Skipped,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Passed => 0,
            Verdict::Failed => 2,
            Verdict::Skipped => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    /// Largest relative error, or `None` when the check could not run.
    pub error: Option<f64>,
    pub tolerance: f64,
    pub note: String,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.error.is_some_and(|e| e <= self.tolerance)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub omega_pc: f64,
    pub stability: StabilityReport,
    pub fft: Option<CheckResult>,
    pub probe: Option<CheckResult>,
}

impl VerifyReport {
    pub fn verdict(&self) -> Verdict {
        match (&self.fft, &self.probe) {
            (Some(f), Some(p)) if f.passed() && p.passed() => Verdict::Passed,
            (None, None) => Verdict::Skipped,
            _ => Verdict::Failed,
        }
    }
}

fn not_run(tolerance: f64, note: String) -> CheckResult {
    CheckResult {
        error: None,
        tolerance,
        note,
    }
}

fn fft_check(p: &SystemParams, omega_pc: f64) -> CliResult<CheckResult> {
    let dt = DT.min(step_limit(p));
    let (horizon, capped) = default_horizon(p, dt)?;
    if capped {
        return Ok(not_run(
            FFT_TOLERANCE,
            format!("decay too slow for the default step budget (horizon capped at {horizon})"),
        ));
    }
    if horizon / dt > STEP_BUDGET {
        return Ok(not_run(
            FFT_TOLERANCE,
            format!("horizon {horizon} needs more than {STEP_BUDGET:e} steps"),
        ));
    }
    let dagger = fft_green(&integrate_green_eom(p, GreenSource::ADagger, horizon, dt)?);
    let plain = fft_green(&integrate_green_eom(p, GreenSource::A, horizon, dt)?);
    let (mut worst, mut peak, mut bins) = (0.0f64, 0.0f64, 0usize);
    for ((w, v_dag), v_a) in dagger.omega.iter().zip(&dagger.values).zip(&plain.values) {
        if (w - omega_pc).abs() > FFT_WINDOW {
            continue;
        }
        let g = greens_at(p, *w)?;
        worst = worst
            .max((v_dag[0] - g.g_aadag).norm())
            .max((v_a[0] - g.g_aa).norm());
        peak = peak.max(g.g_aadag.norm());
        bins += 1;
    }
    if bins == 0 || peak == 0.0 {
        return Ok(not_run(
            FFT_TOLERANCE,
            "no FFT bins in the comparison window".into(),
        ));
    }
    let mut note =
        format!("{bins} bins within +-{FFT_WINDOW} of omega_pc, dt {dt:e}, horizon {horizon}");
    if let Some(w) = dagger.truncation_warning.or(plain.truncation_warning) {
        note.push_str("; ");
        note.push_str(&w);
    }
    Ok(CheckResult {
        error: Some(worst / peak),
        tolerance: FFT_TOLERANCE,
        note,
    })
}

fn probe_check(p: &SystemParams, omega_pc: f64) -> CliResult<CheckResult> {
    if omega_pc == 0.0 {
        return Ok(not_run(
            PROBE_TOLERANCE,
            "probe frequency 0 has no finite period".into(),
        ));
    }
    let horizon = default_probe_horizon(p, omega_pc, PROBE_PERIODS)?;
    if horizon / DT > STEP_BUDGET {
        return Ok(not_run(
            PROBE_TOLERANCE,
            format!("probe horizon {horizon} needs more than {STEP_BUDGET:e} steps"),
        ));
    }
    let fit = probe_oracle(p, omega_pc, horizon, DT)?;
    let want_neg = p.zeta.conj() * greens_at(p, omega_pc)?.g_aadag;
    let want_pos = p.zeta * greens_at(p, -omega_pc)?.g_aa;
    let scale = want_neg.norm().max(want_pos.norm());
    let rel = |got: omlrt_core::Complex64, want: omlrt_core::Complex64| {
        // A sideband that vanishes identically is compared to the larger one.
        (got - want).norm()
            / if want.norm() > 0.0 {
                want.norm()
            } else {
                scale
            }
    };
    Ok(CheckResult {
        error: Some(rel(fit.amp_neg, want_neg).max(rel(fit.amp_pos, want_pos))),
        tolerance: PROBE_TOLERANCE,
        note: format!(
            "{} periods fitted from t = {:.3}, residual {:.3e}",
            fit.window_periods, fit.window_start, fit.residual
        ),
    })
}

/// Stability report plus, for stable parameters, the FFT and probe checks.
pub fn run_verify(p: &SystemParams, omega_pc: f64) -> CliResult<VerifyReport> {
    p.ensure_valid()?;
    if !omega_pc.is_finite() {
        return Err(CliError::Usage(format!(
            "omega_pc must be finite, got {omega_pc}"
        )));
    }
    let report = stability(p)?;
    if !report.stable {
        return Ok(VerifyReport {
            omega_pc,
            stability: report,
            fft: None,
            probe: None,
        });
    }
    Ok(VerifyReport {
        omega_pc,
        stability: report,
        fft: Some(fft_check(p, omega_pc)?),
        probe: Some(probe_check(p, omega_pc)?),
    })
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.stability;
        writeln!(f, "omega_pc = {}", self.omega_pc)?;
        writeln!(
            f,
            "stability: {} (margin {:+.6e})",
            if s.stable { "stable" } else { "unstable" },
            s.margin
        )?;
        let mut line = |name: &str, check: &Option<CheckResult>| -> fmt::Result {
            match check {
                None => writeln!(f, "{name}: skipped"),
                Some(c) => match c.error {
                    Some(e) => writeln!(
                        f,
                        "{name}: {} max relative error {e:.3e} (tolerance {:.0e}); {}",
                        if c.passed() { "pass" } else { "FAIL" },
                        c.tolerance,
                        c.note
                    ),
                    None => writeln!(f, "{name}: FAIL not run; {}", c.note),
                },
            }
        };
        line("fft", &self.fft)?;
        line("probe", &self.probe)?;
        match self.verdict() {
            Verdict::Passed => writeln!(f, "verdict: pass"),
            Verdict::Failed => writeln!(f, "verdict: FAIL"),
            Verdict::Skipped => writeln!(
                f,
                "verdict: unstable (margin {:+.6e} > 0), time-domain checks skipped",
                s.margin
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3(delta: f64) -> SystemParams {
        SystemParams {
            g: 0.5,
            delta,
            ..Default::default()
        }
    }

    #[test]
    fn red_detuned_passes() {
        let r = run_verify(&fig3(5.0), 5.5).unwrap();
        assert_eq!(r.verdict(), Verdict::Passed, "{r}");
        assert!(r.probe.as_ref().unwrap().error.unwrap() <= 1e-6);
    }

    #[test]
    fn blue_detuned_is_skipped() {
        let r = run_verify(&fig3(-5.0), -5.5).unwrap();
        assert_eq!(r.verdict(), Verdict::Skipped);
        assert!(r.stability.margin > 0.0);
        assert!(r.to_string().contains("skipped"));
        assert_eq!(r.verdict().exit_code(), 3);
    }

    #[test]
    fn decoupled_reaches_floor() {
        let p = SystemParams {
            g: 0.0,
            ..Default::default()
        };
        let r = run_verify(&p, 5.0).unwrap();
        assert_eq!(r.verdict(), Verdict::Passed, "{r}");
        assert!(r.fft.unwrap().error.unwrap() <= 1e-8);
        assert!(r.probe.unwrap().error.unwrap() <= 1e-8);
    }

    #[test]
    fn slow_mechanics_cannot_run_fft() {
        let p = SystemParams {
            g: 0.005,
            ..Default::default()
        };
        let r = run_verify(&p, 5.0).unwrap();
        assert_eq!(r.verdict(), Verdict::Failed);
        assert!(r.fft.unwrap().error.is_none());
    }
}
