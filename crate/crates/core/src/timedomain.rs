//! Time-domain verification of the frequency-domain response.
//!
//! The Green's-function vectors obey `dG/dt = χ0·G` for `t > 0` with a jump
//! `G(0⁺) = ∓i·V` produced by the `δ(t)` source, and `G(t < 0) = 0`. They are
//! integrated with fixed-step RK4 and transformed back with the same
//! `e^{+iωτ}` convention as the analytic Green's functions. The probe oracle
//! integrates the driven mean-field equation and fits the two sidebands of
//! the steady state.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::matrix::Vector4;
use crate::params::SystemParams;
use crate::response::{build_drift, optical_decay_rate, stability, StabilityReport};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Sign convention of every transform produced here.
pub const FOURIER_CONVENTION: &str = "G(w) = integral G(t) exp(+i w t) dt";

/// Largest step as a fraction of `1/max|χ0|`.
const STEP_FRACTION: f64 = 0.01;
const MAX_DEFAULT_STEPS: usize = 1_000_000;
/// Transient suppression required before fitting the probe sidebands.
const TRANSIENT_SUPPRESSION: f64 = 1e-10;

/// Which Green's-function vector to integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreenSource {
    /// `G_{a†}(t) = (G_aa†, G_a†a†, G_ba†, G_b†a†)`, started from `(−i, 0, 0, 0)`.
    ADagger,
    /// `G_a(t) = (G_aa, G_a†a, G_ba, G_b†a)`, started from `(0, +i, 0, 0)`.
    A,
}

impl GreenSource {
    pub fn initial_condition(self) -> Vector4 {
        match self {
            GreenSource::ADagger => [-I, ZERO, ZERO, ZERO],
            GreenSource::A => [ZERO, I, ZERO, ZERO],
        }
    }
}

/// Uniformly sampled 4-vector trajectory, `t_k = k·dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub dt: f64,
    pub samples: Vec<Vector4>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, k: usize) -> f64 {
        k as f64 * self.dt
    }

    pub fn component(&self, i: usize) -> Vec<Complex64> {
        self.samples.iter().map(|s| s[i]).collect()
    }

    pub fn norm(&self, k: usize) -> f64 {
        norm(&self.samples[k])
    }

    /// Last-sample norm relative to the peak norm.
    pub fn tail_ratio(&self) -> f64 {
        let peak = (0..self.len()).map(|k| self.norm(k)).fold(0.0, f64::max);
        match self.samples.last() {
            Some(last) if peak > 0.0 => norm(last) / peak,
            _ => 0.0,
        }
    }
}

fn norm(v: &Vector4) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(a: f64, x: &Vector4, y: &Vector4) -> Vector4 {
    [
        y[0] + x[0] * a,
        y[1] + x[1] * a,
        y[2] + x[2] * a,
        y[3] + x[3] * a,
    ]
}

/// One classical fourth-order Runge–Kutta step of `dy/dt = f(t, y)`.
pub fn rk4_step<F>(f: &F, t: f64, y: &Vector4, h: f64) -> Vector4
where
    F: Fn(f64, &Vector4) -> Vector4,
{
    let k1 = f(t, y);
    let k2 = f(t + h / 2.0, &axpy(h / 2.0, &k1, y));
    let k3 = f(t + h / 2.0, &axpy(h / 2.0, &k2, y));
    let k4 = f(t + h, &axpy(h, &k3, y));
    let mut out = *y;
    for i in 0..4 {
        out[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
    }
    out
}

/// Largest admissible step for [`integrate_green_eom`]: `0.01/max|χ0 entry|`.
pub fn step_limit(p: &SystemParams) -> f64 {
    STEP_FRACTION / build_drift(p).max_abs()
}

fn stable_report(p: &SystemParams) -> Result<StabilityReport> {
    p.ensure_valid()?;
    let report = stability(p)?;
    if !report.stable {
        return Err(Error::Unstable(report));
    }
    Ok(report)
}

/// Default Green's-function horizon `max(10/rate, 200/κ)`, capped at
/// 10⁶ steps. The flag is set when the cap was applied.
pub fn default_horizon(p: &SystemParams, dt: f64) -> Result<(f64, bool)> {
    let report = stable_report(p)?;
    let wanted = (10.0 / optical_decay_rate(p, &report)).max(200.0 / p.kappa);
    let cap = MAX_DEFAULT_STEPS as f64 * dt;
    Ok((wanted.min(cap), wanted > cap))
}

/// Integrates a Green's-function vector from its jump initial condition.
pub fn integrate_green_eom(
    p: &SystemParams,
    which: GreenSource,
    horizon: f64,
    dt: f64,
) -> Result<TimeSeries> {
    let report = stable_report(p)?;
    let limit = step_limit(p);
    if !(dt > 0.0 && dt <= limit) {
        return Err(Error::StepSize { dt, limit });
    }
    let required = 10.0 / optical_decay_rate(p, &report);
    if !(horizon >= required) {
        return Err(Error::Horizon { horizon, required });
    }

    let drift = build_drift(p);
    let rhs = |_t: f64, y: &Vector4| drift.mul_vec(y);
    let steps = (horizon / dt).round() as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut y = which.initial_condition();
    samples.push(y);
    for n in 0..steps {
        y = rk4_step(&rhs, n as f64 * dt, &y, dt);
        samples.push(y);
    }
    Ok(TimeSeries { dt, samples })
}

/// Frequency-domain samples of a 4-vector function.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Ascending angular frequencies, in units of κ.
    pub omega: Vec<f64>,
    pub values: Vec<Vector4>,
    pub convention: &'static str,
    /// Set when the series had not decayed to 1e-6 of its peak.
    pub truncation_warning: Option<String>,
}

impl Spectrum {
    pub fn component(&self, i: usize) -> Vec<Complex64> {
        self.values.iter().map(|v| v[i]).collect()
    }

    pub fn spacing(&self) -> f64 {
        self.omega[1] - self.omega[0]
    }
}

/// Transform of a causal Green's-function series on the FFT's natural grid
/// `ω_k = 2πk/(N·dt)`, by the trapezoid rule on `[0, horizon]`.
///
/// The leading Euler–Maclaurin term at `t = 0`, `dt²/12·(f'(0) + iω f(0))`,
/// is added back with `f'(0)` from a one-sided three-point stencil, so bins
/// with `|ω|·dt ≪ 1` are fourth-order accurate. The series must have decayed
/// at the far end for the same to hold there.
pub fn fft_green(series: &TimeSeries) -> Spectrum {
    let n = series.len();
    let dt = series.dt;
    let tail = series.tail_ratio();
    let truncation_warning = (tail > 1e-6)
        .then(|| format!("series decayed only to {tail:.3e} of its peak; transform is truncated"));

    let mut planner = FftPlanner::<f64>::new();
    // e^{+iωt} analysis transform = unnormalised inverse DFT.
    let fft = planner.plan_fft_inverse(n);
    let columns: Vec<Vec<Complex64>> = (0..4)
        .map(|i| {
            let mut col: Vec<Complex64> = series.samples.iter().map(|s| s[i] * dt).collect();
            col[0] *= 0.5;
            if n > 1 {
                col[n - 1] *= 0.5;
            }
            fft.process(&mut col);
            col
        })
        .collect();

    let dw = 2.0 * PI / (n as f64 * dt);
    let first_negative = n.div_ceil(2);
    let order: Vec<usize> = (first_negative..n).chain(0..first_negative).collect();
    let omega: Vec<f64> = order
        .iter()
        .map(|&k| {
            if k >= first_negative {
                (k as f64 - n as f64) * dw
            } else {
                k as f64 * dw
            }
        })
        .collect();
    let s = &series.samples;
    let (f0, slope0) = if n >= 3 {
        let d = std::array::from_fn::<_, 4, _>(|i| {
            (-3.0 * s[0][i] + 4.0 * s[1][i] - s[2][i]) / (2.0 * dt)
        });
        (s[0], d)
    } else {
        ([ZERO; 4], [ZERO; 4])
    };
    let values = order
        .iter()
        .zip(&omega)
        .map(|(&k, &w): (&usize, &f64)| {
            std::array::from_fn(|i| columns[i][k] + dt * dt / 12.0 * (slope0[i] + I * w * f0[i]))
        })
        .collect();

    Spectrum {
        omega,
        values,
        convention: FOURIER_CONVENTION,
        truncation_warning,
    }
}

/// Long-time exponential rate of the homogeneous dynamics, from a least
/// squares fit of `ln‖u(t)‖` over the second half of `[0, horizon]`.
///
/// The initial state `(1, 1, 1, 1)/2` overlaps every eigenmode. No stability
/// precondition: unstable systems give a positive slope.
pub fn log_norm_slope(p: &SystemParams, horizon: f64, dt: f64) -> Result<f64> {
    p.ensure_valid()?;
    if !(dt > 0.0 && horizon > 2.0 * dt) {
        return Err(Error::StepSize {
            dt,
            limit: horizon / 2.0,
        });
    }
    let drift = build_drift(p);
    let rhs = |_t: f64, y: &Vector4| drift.mul_vec(y);
    let steps = (horizon / dt).round() as usize;
    let half = Complex64::new(0.5, 0.0);
    let mut y = [half; 4];
    let (mut n, mut st, mut sy, mut stt, mut sty) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for k in 0..steps {
        y = rk4_step(&rhs, k as f64 * dt, &y, dt);
        if 2 * (k + 1) >= steps {
            let t = (k + 1) as f64 * dt;
            let l = norm(&y).ln();
            n += 1.0;
            st += t;
            sy += l;
            stt += t * t;
            sty += t * l;
        }
    }
    Ok((n * sty - st * sy) / (n * stt - st * st))
}

/// Sideband amplitudes extracted from a driven trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidebandFit {
    /// Coefficient of `e^{−iω_pc t}` in `⟨δa(t)⟩`.
    pub amp_neg: Complex64,
    /// Coefficient of `e^{+iω_pc t}` in `⟨δa(t)⟩`.
    pub amp_pos: Complex64,
    /// RMS of the fit remainder over the window.
    pub residual: f64,
    pub window_start: f64,
    pub window_periods: usize,
    /// Set when the fit window was shortened to a whole number of periods.
    pub window_adjusted: bool,
}

/// Time after which the free transient is below 1e-10 of its initial size.
pub fn transient_time(p: &SystemParams) -> Result<f64> {
    let report = stable_report(p)?;
    Ok(-TRANSIENT_SUPPRESSION.ln() / optical_decay_rate(p, &report))
}

/// Horizon covering the transient plus `periods` probe periods.
pub fn default_probe_horizon(p: &SystemParams, omega_pc: f64, periods: usize) -> Result<f64> {
    Ok(transient_time(p)? + periods as f64 * 2.0 * PI / omega_pc.abs())
}

/// Drives `d⟨u⟩/dt = χ0·⟨u⟩ + f(t)` from rest with
/// `f(t) = (−iζ*e^{−iω_pc t}, +iζe^{+iω_pc t}, 0, 0)` and fits
/// `⟨δa⟩ = amp_neg·e^{−iω_pc t} + amp_pos·e^{+iω_pc t}` on the last whole
/// number of probe periods after the transient.
pub fn probe_oracle(p: &SystemParams, omega_pc: f64, horizon: f64, dt: f64) -> Result<SidebandFit> {
    let discard = transient_time(p)?;
    if omega_pc == 0.0 || !omega_pc.is_finite() {
        return Err(Error::ProbeWindow(format!(
            "probe frequency {omega_pc} has no finite period"
        )));
    }
    // RK4 on the fastest scale in the problem.
    let fastest = build_drift(p).max_abs().max(omega_pc.abs());
    if !(dt > 0.0 && dt * fastest <= 0.5) {
        return Err(Error::StepSize {
            dt,
            limit: 0.5 / fastest,
        });
    }
    let period = 2.0 * PI / omega_pc.abs();
    let available = horizon - discard;
    let periods = if available > 0.0 {
        (available / period).floor() as usize
    } else {
        0
    };
    if periods == 0 {
        return Err(Error::Horizon {
            horizon,
            required: discard + period,
        });
    }
    let window = periods as f64 * period;
    let window_start = horizon - window;
    let window_adjusted = (window - available).abs() > 1e-12 * horizon;

    let drift = build_drift(p);
    let zeta = p.zeta;
    let rhs = |t: f64, y: &Vector4| {
        let rot = Complex64::from_polar(1.0, -omega_pc * t);
        let mut d = drift.mul_vec(y);
        d[0] += -I * zeta.conj() * rot;
        d[1] += I * zeta * rot.conj();
        d
    };

    let steps = (horizon / dt).round() as usize;
    let mut y = [ZERO; 4];
    let mut window_samples = Vec::new();
    for n in 0..steps {
        y = rk4_step(&rhs, n as f64 * dt, &y, dt);
        let t = (n + 1) as f64 * dt;
        if t >= window_start {
            window_samples.push((t, y[0]));
        }
    }

    let (amp_neg, amp_pos) = fit_two_tones(&window_samples, omega_pc);
    let sq: f64 = window_samples
        .iter()
        .map(|&(t, v)| {
            let rot = Complex64::from_polar(1.0, -omega_pc * t);
            (v - amp_neg * rot - amp_pos * rot.conj()).norm_sqr()
        })
        .sum();
    let residual = (sq / window_samples.len() as f64).sqrt();

    Ok(SidebandFit {
        amp_neg,
        amp_pos,
        residual,
        window_start,
        window_periods: periods,
        window_adjusted,
    })
}

/// Least-squares coefficients of `e^{−iωt}` and `e^{+iωt}`.
fn fit_two_tones(samples: &[(f64, Complex64)], omega: f64) -> (Complex64, Complex64) {
    // 2×2 normal equations; both basis functions have unit modulus.
    let n = samples.len() as f64;
    let (mut overlap, mut b_neg, mut b_pos) = (ZERO, ZERO, ZERO);
    for &(t, v) in samples {
        let e_neg = Complex64::from_polar(1.0, -omega * t);
        overlap += e_neg.conj() * e_neg.conj();
        b_neg += e_neg.conj() * v;
        b_pos += e_neg * v;
    }
    let det = n * n - overlap.norm_sqr();
    let a = (n * b_neg - overlap * b_pos) / det;
    let b = (n * b_pos - overlap.conj() * b_neg) / det;
    (a, b)
}
