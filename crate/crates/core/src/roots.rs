//! Simultaneous-iteration polynomial root finder.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 500;

/// Evaluates `Σ coeffs[k]·z^k` and its derivative by Horner's rule.
pub fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    eval_with_derivative(coeffs, z).0
}

/// All roots of the polynomial `Σ coeffs[k]·z^k` (lowest degree first).
///
/// Aberth–Ehrlich iteration: every root estimate takes a Newton step
/// corrected by the repulsion from all other estimates, so the whole set
/// converges together. Converged roots satisfy
/// `|p(root)| ≤ 1e-9·max|coeff|`; otherwise a [`Error::RootFinder`] carrying
/// the worst residual is returned.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let degree = coeffs
        .iter()
        .rposition(|c| *c != Complex64::new(0.0, 0.0))
        .unwrap_or(0);
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[degree];
    let monic: Vec<Complex64> = coeffs[..=degree].iter().map(|c| c / lead).collect();
    let scale = coeffs[..=degree]
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    let bound = 1e-9 * scale;

    // Initial guesses on a circle of the Cauchy radius, rotated off the axes.
    let radius = 1.0 + monic[..degree].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut max_step: f64 = 0.0;
        for i in 0..degree {
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }

    // Newton polish; Aberth's step may stall a few ulps away from a simple root.
    for root in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(&monic, *root);
            let step = p / dp;
            if !step.is_finite() || step.norm() == 0.0 {
                break;
            }
            let candidate = *root - step;
            if eval(&monic, candidate).norm() < p.norm() {
                *root = candidate;
            } else {
                break;
            }
        }
    }

    let residual = z
        .iter()
        .map(|&r| eval(&coeffs[..=degree], r).norm())
        .fold(0.0, f64::max);
    if !(residual <= bound) {
        return Err(Error::RootFinder {
            iterations,
            residual,
            bound,
        });
    }
    Ok(z)
}
