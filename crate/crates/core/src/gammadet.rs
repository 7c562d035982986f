//! Direct evaluation of `D(z) = (−4π)^N det Γ(z)` by dense LU factorization.
//!
//! `Γ(z)_{jj'} = (a_j − iz/4π) δ_{jj'} − e^{iz d_{jj'}} / (4π d_{jj'})` off the
//! diagonal. Entries grow like `e^{|Im z| d}`; keep `|Im z| · max d ≤ 700`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::geometry::{check_compatible, distance_matrix, Configuration, StrengthTuple};
use crate::error::Result;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Dense row-major complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl GammaMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = self.entries.clone();
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        GammaMatrix { n, entries }
    }

    pub fn determinant(&self) -> Complex64 {
        lu_determinant(self.n, self.entries.clone())
    }
}

pub fn gamma_matrix(a: &StrengthTuple, cfg: &Configuration, z: Complex64) -> Result<GammaMatrix> {
    check_compatible(a, cfg)?;
    let n = cfg.len();
    let dist = distance_matrix(cfg);
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            entries[i * n + j] = if i == j {
                a.values()[i] - I * z / (4.0 * PI)
            } else {
                let d = dist.get(i, j);
                -(I * z * d).exp() / (4.0 * PI * d)
            };
        }
    }
    Ok(GammaMatrix { n, entries })
}

pub fn determinant_direct(a: &StrengthTuple, cfg: &Configuration, z: Complex64) -> Result<Complex64> {
    let gamma = gamma_matrix(a, cfg, z)?;
    let factor = Complex64::new(-4.0 * PI, 0.0).powu(cfg.len() as u32);
    Ok(factor * gamma.determinant())
}

/// Gaussian elimination with partial pivoting on a row-major `n × n` matrix.
fn lu_determinant(n: usize, mut m: Vec<Complex64>) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| m[r * n + col].norm().total_cmp(&m[s * n + col].norm()))
            .expect("nonempty range");
        let pivot = m[pivot_row * n + col];
        if pivot == Complex64::new(0.0, 0.0) {
            return Complex64::new(0.0, 0.0);
        }
        if pivot_row != col {
            for k in 0..n {
                m.swap(col * n + k, pivot_row * n + k);
            }
            det = -det;
        }
        det *= pivot;
        for r in col + 1..n {
            let factor = m[r * n + col] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in col + 1..n {
                let upper = m[col * n + k];
                m[r * n + k] -= factor * upper;
            }
        }
    }
    det
}
