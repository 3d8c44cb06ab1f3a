//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a[p][q]` with a
//! diagonal unitary and then applies the real symmetric Jacobi rotation, so
//! the combined 2x2 block is
//!
//! ```text
//! J = [[ c,      s     ],
//!      [-s*u,    c*u   ]]      u = exp(-i arg a[p][q])
//! ```
//!
//! and `A <- J^dagger A J`. For the 2x2 and 4x4 matrices used here the
//! iteration converges to round-off in a handful of sweeps.

use num_complex::Complex64;

use super::{CMatrix, Tolerances};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and the unitary whose columns are the matching
/// eigenvectors: `m = V diag(values) V^dagger`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn new(m: &CMatrix) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::default())
    }

    pub fn with_tolerances(m: &CMatrix, tol: &Tolerances) -> Result<Self> {
        let scale = m.max_abs().max(1.0);
        let defect = m.hermiticity_defect();
        if !m.all_finite() || defect > tol.hermitian * scale {
            return Err(Error::NotHermitian { deviation: defect });
        }
        let (values, vectors) = jacobi(m.hermitian_part())?;
        Ok(HermitianEigen { values, vectors })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V f(diag) V^dagger` for a scalar function of the eigenvalues.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let n = self.dim();
        let fv: Vec<Complex64> = self.values.iter().map(|&v| f(v)).collect();
        let v = &self.vectors;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += v[(i, k)] * fv[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map_spectrum(|x| Complex64::new(x, 0.0))
    }

    /// `exp(-i H t)`
    pub fn propagator(&self, t: f64) -> CMatrix {
        self.map_spectrum(|e| Complex64::from_polar(1.0, -e * t))
    }
}

fn off_diagonal_norm_sq(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[(i, j)].norm_sqr();
        }
    }
    s
}

fn jacobi(mut a: CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = a.dim();
    let mut v = CMatrix::identity(n);
    let total: f64 = a.as_slice().iter().map(|z| z.norm_sqr()).sum();
    // Round-off floor of the rotations is ~eps * ||A|| per entry.
    let floor = 10.0 * n as f64 * f64::EPSILON;
    let threshold = floor * floor * total.max(f64::MIN_POSITIVE);

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm_sq(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm_sq(&a) > threshold {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok((values, vectors))
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let u = (apq / r).conj();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.dim();

    // A <- A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * u * s;
        a[(k, q)] = akp * s + akq * u * c;
    }
    // A <- J^dagger A
    let uc = u.conj();
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * uc * s;
        a[(q, k)] = apk * s + aqk * uc * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    // V <- V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * u * s;
        v[(k, q)] = vkp * s + vkq * u * c;
    }
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn herm_eigvals(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(HermitianEigen::new(m)?.values)
}

/// `exp(-i h t)` computed from the eigendecomposition of `h`.
pub fn propagator(h: &CMatrix, t: f64) -> Result<CMatrix> {
    Ok(HermitianEigen::new(h)?.propagator(t))
}
