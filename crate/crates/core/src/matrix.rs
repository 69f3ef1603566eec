//! Fixed-size 4×4 complex matrices in the field basis `(δa, δa†, δb, δb†)`.

use std::ops::{Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

pub type Vector4 = [Complex64; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major 4×4 complex matrix. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4(pub [[Complex64; 4]; 4]);

impl ComplexMatrix4 {
    pub fn zeros() -> Self {
        Self([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: [[Complex64; 4]; 4]) -> Self {
        Self(rows)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|z| *z *= s);
        out
    }

    pub fn mul_vec(&self, v: &Vector4) -> Vector4 {
        let mut out = [ZERO; 4];
        for (o, row) in out.iter_mut().zip(&self.0) {
            *o = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
        }
        out
    }

    pub fn column(&self, j: usize) -> Vector4 {
        [self.0[0][j], self.0[1][j], self.0[2][j], self.0[3][j]]
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }

    /// Largest entry modulus of `self·other − 1`.
    pub fn identity_residual(&self, other: &Self) -> f64 {
        (*self * *other - Self::identity()).max_abs()
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    ///
    /// Returns `None` when a pivot falls below `1e-300` (relative to the
    /// largest entry), which is treated as exact singularity.
    pub fn inverse(&self) -> Option<Self> {
        let scale = self.max_abs();
        if scale == 0.0 || !scale.is_finite() {
            return None;
        }
        let mut a = self.0;
        let mut inv = Self::identity().0;

        for col in 0..4 {
            let pivot_row = (col..4)
                .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
                .unwrap();
            if a[pivot_row][col].norm() < 1e-300 * scale {
                return None;
            }
            a.swap(col, pivot_row);
            inv.swap(col, pivot_row);

            let p = a[col][col].inv();
            for k in 0..4 {
                a[col][k] *= p;
                inv[col][k] *= p;
            }
            for row in 0..4 {
                if row == col {
                    continue;
                }
                let f = a[row][col];
                if f == ZERO {
                    continue;
                }
                for k in 0..4 {
                    let (ak, ik) = (a[col][k], inv[col][k]);
                    a[row][k] -= f * ak;
                    inv[row][k] -= f * ik;
                }
            }
        }
        Some(Self(inv))
    }

    /// Coefficients `[c0, c1, c2, c3, c4]` of the characteristic polynomial
    /// `det(λ − A) = c4·λ⁴ + … + c0`, with `c4 = 1`, via Faddeev–LeVerrier.
    pub fn characteristic_polynomial(&self) -> [Complex64; 5] {
        let mut coeffs = [ZERO; 5];
        coeffs[4] = ONE;
        let mut m = Self::zeros();
        for k in 1..=4 {
            // M_k = A·M_{k-1} + c_{n-k+1}·I
            let mut next = *self * m;
            for i in 0..4 {
                next.0[i][i] += coeffs[4 - k + 1];
            }
            m = next;
            let am = *self * m;
            coeffs[4 - k] = -am.trace() / k as f64;
        }
        coeffs
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for (o, r) in out.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *o -= *r;
        }
        out
    }
}
