//! The bare single-mode cavity: the exactly solvable limit of the coupled
//! system and the anchor for its Lorentzian features.

use num_complex::Complex64;

/// Reduced Planck constant [J·s].
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant [J/K].
pub const BOLTZMANN: f64 = 1.380_649e-23;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    /// Resonance frequency ω0.
    pub omega0: f64,
    /// Damping rate κ.
    pub kappa: f64,
    /// Pump rate η.
    pub eta: f64,
}

/// `G̃aa†(ω) = 1/(ω − ω0 + iκ/2)`.
pub fn green_single(c: &CavityParams, omega: f64) -> Complex64 {
    Complex64::new(omega - c.omega0, c.kappa / 2.0).inv()
}

/// `G̃aa(ω)` of the bare cavity. Its equation of motion is homogeneous with
/// no initial jump, so `G_aa(τ) ≡ 0` and so is its transform.
pub fn green_single_aa(_c: &CavityParams, _omega: f64) -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Amplitude of the `e^{−iω_p t}` oscillation of `⟨a(t)⟩` under a pump at `omega_p > 0`.
pub fn response_single(c: &CavityParams, omega_p: f64) -> Complex64 {
    c.eta * green_single(c, omega_p) + c.eta * green_single_aa(c, -omega_p)
}

/// Bose–Einstein occupation `1/(e^x − 1)` for `x = ħω0/(k_B·T)`.
/// `x = +∞` (zero temperature) gives exactly 0.
pub fn thermal_occupation_ratio(x: f64) -> f64 {
    if x.is_infinite() && x > 0.0 {
        return 0.0;
    }
    x.exp_m1().recip()
}

/// Mean thermal occupation of a mode at angular frequency `omega0_abs` [rad/s]
/// in a bath at `temperature` [K].
pub fn thermal_occupation(omega0_abs: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        return 0.0;
    }
    thermal_occupation_ratio(HBAR * omega0_abs / (BOLTZMANN * temperature))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greens::optical_response;
    use crate::params::SystemParams;
    use rustfft::FftPlanner;
    use std::f64::consts::{LN_2, PI};

    const CAVITY: CavityParams = CavityParams {
        omega0: 5.0,
        kappa: 1.0,
        eta: 1.0,
    };

    #[test]
    fn resonance_value() {
        let g = green_single(&CAVITY, 5.0);
        assert_eq!(g, Complex64::new(0.0, -2.0));
        assert_eq!(g.norm(), 2.0);
    }

    #[test]
    fn decays_far_from_resonance() {
        for w in [1e6, -1e6] {
            assert!(green_single(&CAVITY, w).norm() < 1.1e-6);
        }
        assert_eq!(green_single_aa(&CAVITY, -5.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn satisfies_frequency_domain_eom() {
        for w in [-3.0, 0.0, 4.9, 5.0, 12.5] {
            let lhs =
                Complex64::new(w - CAVITY.omega0, CAVITY.kappa / 2.0) * green_single(&CAVITY, w);
            assert!((lhs - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn fwhm_equals_kappa() {
        // Half maximum of |G|² solves (ω − ω0)² = κ²/4.
        let step = 1e-4;
        let ws: Vec<f64> = (0..=40_000).map(|k| 3.0 + k as f64 * step).collect();
        let power: Vec<f64> = ws
            .iter()
            .map(|&w| green_single(&CAVITY, w).norm_sqr())
            .collect();
        let half = 0.5 * power.iter().cloned().fold(0.0, f64::max);
        let above: Vec<f64> = ws
            .iter()
            .zip(&power)
            .filter(|(_, &p)| p >= half)
            .map(|(&w, _)| w)
            .collect();
        let width = above.last().unwrap() - above.first().unwrap();
        assert!((width - CAVITY.kappa).abs() <= 2.0 * step, "{width}");
    }

    #[test]
    fn response_is_pump_times_green() {
        let r = response_single(&CAVITY, 5.0);
        assert_eq!(r, Complex64::new(0.0, -2.0));
        let quiet = CavityParams { eta: 0.0, ..CAVITY };
        assert_eq!(response_single(&quiet, 4.0).norm(), 0.0);
        // Single Lorentzian peak at ω0.
        let peak = (0..=2000)
            .map(|k| 3.0 + k as f64 * 2e-3)
            .max_by(|a, b| {
                response_single(&CAVITY, *a)
                    .norm()
                    .total_cmp(&response_single(&CAVITY, *b).norm())
            })
            .unwrap();
        assert!((peak - 5.0).abs() < 2e-3);
    }

    #[test]
    fn matches_full_system_without_coupling() {
        let eta = 0.7;
        let cav = CavityParams { eta, ..CAVITY };
        let p = SystemParams {
            g: 0.0,
            delta: cav.omega0,
            zeta: Complex64::new(eta, 0.0),
            ..Default::default()
        };
        for w in [3.0, 4.5, 5.0, 6.1] {
            let full = optical_response(&p, Complex64::new(0.0, 0.0), w).unwrap();
            let single = response_single(&cav, w);
            assert!((full.amp_neg - single).norm() <= 1e-15 * single.norm());
            assert_eq!(full.amp_pos.norm(), 0.0);
        }
    }

    #[test]
    fn inverse_transform_is_causal_exponential() {
        // G(τ) = (1/2π)∫ G̃(ω) e^{−iωτ} dω on a wide grid via one FFT.
        let n = 1 << 20;
        let dw = 0.005;
        let w_min = -(n as f64) / 2.0 * dw;
        let mut buf: Vec<Complex64> = (0..n)
            .map(|k| green_single(&CAVITY, w_min + k as f64 * dw) * dw / (2.0 * PI))
            .collect();
        FftPlanner::<f64>::new()
            .plan_fft_forward(n)
            .process(&mut buf);
        let dtau = 2.0 * PI / (n as f64 * dw);
        let mut worst: f64 = 0.0;
        for (j, &v) in buf.iter().enumerate() {
            let signed = if j < n / 2 {
                j as isize
            } else {
                j as isize - n as isize
            };
            let tau = signed as f64 * dtau;
            if tau.abs() < 0.5 || tau.abs() > 10.0 {
                continue;
            }
            // Undo the grid offset w_min: e^{−i w_min τ}.
            let g = v * Complex64::from_polar(1.0, -w_min * tau);
            let exact = if tau > 0.0 {
                -Complex64::i()
                    * Complex64::new(-CAVITY.kappa / 2.0, -CAVITY.omega0)
                        .scale(tau)
                        .exp()
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((g - exact).norm());
        }
        assert!(worst <= 0.01, "{worst}");
    }

    #[test]
    fn thermal_occupation_values() {
        assert_eq!(thermal_occupation(1e6, 0.0), 0.0);
        assert_eq!(thermal_occupation_ratio(f64::INFINITY), 0.0);
        assert_eq!(thermal_occupation_ratio(LN_2), 1.0);
        // 1/(e − 1) to 20 digits: 0.58197670686932642439.
        assert!((thermal_occupation_ratio(1.0) - 0.581_976_706_869_326_4).abs() < 1e-15);
        let omega = BOLTZMANN * 300.0 / HBAR;
        assert!((thermal_occupation(omega, 300.0) - 0.581_976_706_869_326_4).abs() < 1e-12);
    }
}
