//! Drift matrix, susceptibilities and dynamical stability.
//!
//! Two independent routes lead to the susceptibility: direct inversion of
//! `−iω − χ0` ([`susceptibility_numeric`]) and the closed forms obtained by
//! eliminating the mechanics ([`susceptibility_analytic`]). They agree entry by
//! entry; the closed forms are used for sweeps and the inversion for checking.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix4;
use crate::params::SystemParams;
use crate::roots;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// |D(ω)| below this is reported as a singularity.
const D_FLOOR: f64 = 1e-300;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Drift matrix `χ0` of the linearized Langevin equations.
pub fn build_drift(p: &SystemParams) -> ComplexMatrix4 {
    let (gb, gt) = (p.g_b(), p.g_t());
    let (k2, gm2) = (p.kappa / 2.0, p.gamma_m / 2.0);
    let z = c(0.0, 0.0);
    ComplexMatrix4::from_rows([
        [c(-k2, -p.delta), z, c(0.0, -gb), c(0.0, -gt)],
        [z, c(-k2, p.delta), c(0.0, gt), c(0.0, gb)],
        [c(0.0, -gb), c(0.0, -gt), c(-gm2, -p.omega_m), z],
        [c(0.0, gt), c(0.0, gb), z, c(-gm2, p.omega_m)],
    ])
}

/// `χ(ω) = (−iω·1 − χ0)⁻¹` by direct inversion.
pub fn susceptibility_numeric(p: &SystemParams, omega: f64) -> Result<ComplexMatrix4> {
    let m = ComplexMatrix4::identity().scale(c(0.0, -omega)) - build_drift(p);
    m.inverse().ok_or(Error::Singular {
        omega,
        what: "-i*omega - chi0",
    })
}

/// Closed-form susceptibilities at a single frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusceptibilitySet {
    pub omega: f64,
    /// χ−m(ω) = [γ_m/2 − i(ω − ω_m)]⁻¹
    pub chi_m_minus: Complex64,
    /// χ+m(ω) = [γ_m/2 − i(ω + ω_m)]⁻¹
    pub chi_m_plus: Complex64,
    pub lambda_a: Complex64,
    pub sigma_a: Complex64,
    pub q_plus: Complex64,
    /// Q*(−ω)
    pub q_minus_conj: Complex64,
    pub d: Complex64,
    pub chi_aa: Complex64,
    pub chi_aadag: Complex64,
    pub chi_ab: Complex64,
    pub chi_abdag: Complex64,
    pub chi_ba: Complex64,
    pub chi_badag: Complex64,
}

/// Mechanical susceptibilities `(χ−m(ω), χ+m(ω))`.
pub fn mechanical_susceptibilities(p: &SystemParams, omega: f64) -> (Complex64, Complex64) {
    let half = p.gamma_m / 2.0;
    (
        c(half, -(omega - p.omega_m)).inv(),
        c(half, -(omega + p.omega_m)).inv(),
    )
}

/// Effective parametric modulation λa(ω) = g_b·g_t·[χ+m(ω) − χ−m(ω)].
pub fn effective_modulation(p: &SystemParams, omega: f64) -> Complex64 {
    let (minus, plus) = mechanical_susceptibilities(p, omega);
    p.g_b() * p.g_t() * (plus - minus)
}

/// Cavity self-energy Σa(ω) = Δ − i·g_b²·χ−m(ω) + i·g_t²·χ+m(ω).
pub fn self_energy(p: &SystemParams, omega: f64) -> Complex64 {
    let (minus, plus) = mechanical_susceptibilities(p, omega);
    let (gb, gt) = (p.g_b(), p.g_t());
    p.delta - I * gb * gb * minus + I * gt * gt * plus
}

/// Q(ω) = κ/2 − i(ω − Σa(ω)).
pub fn q_function(p: &SystemParams, omega: f64) -> Complex64 {
    p.kappa / 2.0 - I * (omega - self_energy(p, omega))
}

struct OpticalRow {
    chi_m_minus: Complex64,
    chi_m_plus: Complex64,
    lambda_a: Complex64,
    sigma_a: Complex64,
    q_plus: Complex64,
    q_minus_conj: Complex64,
    d: Complex64,
    chi_aa: Complex64,
    chi_aadag: Complex64,
}

fn optical_row(p: &SystemParams, omega: f64) -> Result<OpticalRow> {
    let (chi_m_minus, chi_m_plus) = mechanical_susceptibilities(p, omega);
    let lambda_a = effective_modulation(p, omega);
    let sigma_a = self_energy(p, omega);
    let q_plus = p.kappa / 2.0 - I * (omega - sigma_a);
    let q_minus_conj = q_function(p, -omega).conj();
    let lambda_reflected_conj = effective_modulation(p, -omega).conj();
    let d = q_plus * q_minus_conj - lambda_a * lambda_reflected_conj;
    if !(d.norm() >= D_FLOOR) {
        return Err(Error::Singular {
            omega,
            what: "D(omega)",
        });
    }
    Ok(OpticalRow {
        chi_m_minus,
        chi_m_plus,
        lambda_a,
        sigma_a,
        q_plus,
        q_minus_conj,
        d,
        chi_aa: q_minus_conj / d,
        chi_aadag: lambda_a / d,
    })
}

/// Closed-form susceptibility elements of the optical and mechanical rows.
pub fn susceptibility_analytic(p: &SystemParams, omega: f64) -> Result<SusceptibilitySet> {
    let row = optical_row(p, omega)?;
    let mirrored = optical_row(p, -omega)?;
    let (gb, gt) = (p.g_b(), p.g_t());
    let OpticalRow {
        chi_m_minus,
        chi_m_plus,
        lambda_a,
        q_minus_conj,
        d,
        chi_aa,
        chi_aadag,
        ..
    } = row;

    let chi_ab = I * chi_m_minus * (gt * lambda_a - gb * q_minus_conj) / d;
    let chi_abdag = I * chi_m_plus * (gb * lambda_a - gt * q_minus_conj) / d;
    let chi_ba = -I * chi_m_minus * (gb * chi_aa + gt * mirrored.chi_aadag.conj());
    let chi_badag = -I * chi_m_minus * (gb * chi_aadag + gt * mirrored.chi_aa.conj());

    Ok(SusceptibilitySet {
        omega,
        chi_m_minus,
        chi_m_plus,
        lambda_a,
        sigma_a: row.sigma_a,
        q_plus: row.q_plus,
        q_minus_conj,
        d,
        chi_aa,
        chi_aadag,
        chi_ab,
        chi_abdag,
        chi_ba,
        chi_badag,
    })
}

/// Eigenvalue summary of the drift matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    pub eigenvalues: [Complex64; 4],
    pub eigen_real_parts: [f64; 4],
    pub stable: bool,
    /// Largest eigenvalue real part; negative iff stable.
    pub margin: f64,
}

/// Stability of the linearized dynamics from the roots of `det(λ − χ0)`.
pub fn stability(p: &SystemParams) -> Result<StabilityReport> {
    let poly = build_drift(p).characteristic_polynomial();
    let found = roots::polynomial_roots(&poly)?;
    let mut eigenvalues = [c(0.0, 0.0); 4];
    eigenvalues.copy_from_slice(&found);
    eigenvalues.sort_by(|a, b| b.re.total_cmp(&a.re).then(a.im.total_cmp(&b.im)));
    let eigen_real_parts = eigenvalues.map(|z| z.re);
    let margin = eigen_real_parts[0];
    Ok(StabilityReport {
        eigenvalues,
        eigen_real_parts,
        stable: margin < 0.0,
        margin,
    })
}

/// Decay rate (> 0 when stable) governing transients that start in the
/// optical block. With no coupling the mechanics is never excited, so the
/// optical damping κ/2 applies instead of the global margin.
pub fn optical_decay_rate(p: &SystemParams, report: &StabilityReport) -> f64 {
    if p.is_uncoupled() {
        p.kappa / 2.0
    } else {
        -report.margin
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fig(g: f64, delta: f64) -> SystemParams {
        SystemParams {
            g,
            delta,
            ..Default::default()
        }
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        let scale = a.norm().max(b.norm());
        if scale == 0.0 {
            0.0
        } else {
            (a - b).norm() / scale
        }
    }

    #[test]
    fn decoupled_drift_is_diagonal() {
        let p = fig(0.0, 3.0);
        let m = build_drift(&p);
        let diag = [c(-0.5, -3.0), c(-0.5, 3.0), c(-5e-5, -5.0), c(-5e-5, 5.0)];
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { diag[i] } else { c(0.0, 0.0) };
                assert_eq!(m[(i, j)], want);
            }
        }
        let rwa_off = SystemParams {
            eps_b: 0.0,
            eps_t: 0.0,
            g: 2.0,
            ..p
        };
        assert_eq!(build_drift(&rwa_off), m);
    }

    #[test]
    fn fig2_coupling_entries() {
        let m = build_drift(&fig(2.0, 5.0));
        assert_eq!(m[(0, 2)], c(0.0, -2.0));
        assert_eq!(m[(3, 0)], c(0.0, 2.0));
    }

    #[test]
    fn rows_are_conjugate_paired() {
        let sigma = [1, 0, 3, 2];
        let p = SystemParams {
            eps_t: 0.3,
            ..fig(1.7, -2.0)
        };
        let m = build_drift(&p);
        for (r, s) in [(0, 1), (2, 3)] {
            for j in 0..4 {
                assert_eq!(m[(s, j)], m[(r, sigma[j])].conj());
            }
        }
    }

    #[test]
    fn decoupled_numeric_susceptibility() {
        let p = fig(0.0, 5.0);
        for omega in [-7.0, 0.0, 4.2, 5.0] {
            let chi = susceptibility_numeric(&p, omega).unwrap();
            let lorentz = c(0.5, -(omega - 5.0)).inv();
            assert!(rel(chi[(0, 0)], lorentz) < 1e-15);
            assert_eq!(chi[(0, 2)], c(0.0, 0.0));
        }
    }

    #[test]
    fn numeric_inverse_residual() {
        let p = fig(2.0, 5.0);
        for omega in [-10.0, -5.0, 0.0, 4.5635, 5.0, 7.3] {
            let chi = susceptibility_numeric(&p, omega).unwrap();
            let m = ComplexMatrix4::identity().scale(c(0.0, -omega)) - build_drift(&p);
            assert!(m.identity_residual(&chi) <= 1e-12);
        }
    }

    #[test]
    fn rwa_has_no_parametric_modulation() {
        let p = SystemParams {
            eps_t: 0.0,
            ..fig(2.0, 5.0)
        };
        for k in 0..=200 {
            let omega = -10.0 + 0.1 * k as f64;
            let s = susceptibility_analytic(&p, omega).unwrap();
            assert_eq!(s.lambda_a, c(0.0, 0.0));
            assert_eq!(s.chi_aadag, c(0.0, 0.0));
        }
    }

    #[test]
    fn decoupled_closed_forms() {
        let p = fig(0.0, 5.0);
        for omega in [-3.0, 0.5, 5.0, 9.0] {
            let s = susceptibility_analytic(&p, omega).unwrap();
            assert!(rel(s.chi_aa, c(0.5, -(omega - 5.0)).inv()) < 1e-15);
            assert_eq!(s.chi_ab, c(0.0, 0.0));
            assert_eq!(s.chi_ba, c(0.0, 0.0));
        }
    }

    #[test]
    fn closed_forms_match_inversion_fig3() {
        let p = fig(0.5, 5.0);
        for k in 0..2001 {
            let omega = -10.0 + 0.01 * k as f64;
            let s = susceptibility_analytic(&p, omega).unwrap();
            let chi = susceptibility_numeric(&p, omega).unwrap();
            for (a, n) in [
                (s.chi_aa, chi[(0, 0)]),
                (s.chi_aadag, chi[(0, 1)]),
                (s.chi_ab, chi[(0, 2)]),
                (s.chi_abdag, chi[(0, 3)]),
                (s.chi_ba, chi[(2, 0)]),
                (s.chi_badag, chi[(2, 1)]),
            ] {
                assert!(rel(a, n) <= 1e-10, "omega {omega}: {a} vs {n}");
            }
        }
    }

    #[test]
    fn d_is_internally_consistent() {
        let p = fig(2.0, 5.0);
        let s = susceptibility_analytic(&p, 4.7).unwrap();
        let lam_reflected = effective_modulation(&p, -4.7).conj();
        assert_eq!(s.d, s.q_plus * s.q_minus_conj - s.lambda_a * lam_reflected);
    }

    #[test]
    fn decoupled_stability() {
        let r = stability(&fig(0.0, 5.0)).unwrap();
        let mut parts = r.eigen_real_parts;
        parts.sort_by(f64::total_cmp);
        let want = [-0.5, -0.5, -5e-5, -5e-5];
        for (a, b) in parts.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{parts:?}");
        }
        assert!(r.stable);
    }

    #[test]
    fn red_is_stable_blue_is_not() {
        let red = stability(&fig(2.0, 5.0)).unwrap();
        assert!(red.stable && red.margin < 0.0);
        let blue = stability(&fig(0.5, -5.0)).unwrap();
        assert!(!blue.stable && blue.margin > 0.0);
    }

    #[test]
    fn eigenvalues_are_roots_of_the_drift() {
        let p = fig(0.5, -5.0);
        let r = stability(&p).unwrap();
        let drift = build_drift(&p);
        for lambda in r.eigenvalues {
            let shifted = ComplexMatrix4::identity().scale(lambda) - drift;
            // det(λ − χ0) vanishes: inversion either fails or blows up.
            match shifted.inverse() {
                None => {}
                Some(inv) => assert!(inv.max_abs() > 1e8, "{lambda}"),
            }
        }
    }

    proptest! {
        #[test]
        fn reflection_symmetries(
            g in 0.0f64..3.0,
            delta in -8.0f64..8.0,
            eb in 0.0f64..1.0,
            et in 0.0f64..1.0,
            omega in -12.0f64..12.0,
        ) {
            let p = SystemParams { g, delta, eps_b: eb, eps_t: et, ..Default::default() };
            let (minus, plus) = mechanical_susceptibilities(&p, omega);
            let (minus_r, plus_r) = mechanical_susceptibilities(&p, -omega);
            prop_assert!((plus_r.conj() - minus).norm() <= 1e-14 * (1.0 + minus.norm()));
            prop_assert!((minus_r.conj() - plus).norm() <= 1e-14 * (1.0 + plus.norm()));
            let lam = effective_modulation(&p, omega);
            let lam_r = effective_modulation(&p, -omega);
            prop_assert!((lam_r.conj() + lam).norm() <= 1e-14 * (1.0 + lam.norm()));
        }

        #[test]
        fn closed_forms_match_inversion(
            g in 0.0f64..2.5,
            delta in prop_oneof![-6.0f64..-4.0, 4.0f64..6.0],
            eb in 0.0f64..1.0,
            et in 0.0f64..1.0,
            gm in 1e-4f64..0.5,
            omega in -10.0f64..10.0,
        ) {
            let p = SystemParams { g, delta, eps_b: eb, eps_t: et, gamma_m: gm, ..Default::default() };
            let s = susceptibility_analytic(&p, omega).unwrap();
            let chi = susceptibility_numeric(&p, omega).unwrap();
            let pairs = [
                (s.chi_aa, chi[(0, 0)]),
                (s.chi_aadag, chi[(0, 1)]),
                (s.chi_ab, chi[(0, 2)]),
                (s.chi_abdag, chi[(0, 3)]),
                (s.chi_ba, chi[(2, 0)]),
                (s.chi_badag, chi[(2, 1)]),
            ];
            for (a, n) in pairs {
                // Relative to the row scale: entries that vanish identically
                // (e.g. λa = 0) are compared absolutely.
                let scale = chi[(0, 0)].norm().max(chi[(2, 0)].norm());
                prop_assert!((a - n).norm() <= 1e-10 * a.norm().max(n.norm()).max(1e-6 * scale));
            }
        }
    }
}
