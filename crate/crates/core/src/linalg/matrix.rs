use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries. The entry count must be a
    /// perfect square.
    pub fn from_row_major(data: Vec<Complex64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != data.len() {
            return Err(Error::NotSquare {
                entries: data.len(),
            });
        }
        Ok(CMatrix { dim, data })
    }

    pub fn from_rows<const N: usize>(rows: [[Complex64; N]; N]) -> Self {
        CMatrix {
            dim: N,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        CMatrix {
            dim: N,
            data: rows
                .into_iter()
                .flatten()
                .map(|x| Complex64::new(x, 0.0))
                .collect(),
        }
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &CMatrix) -> Self {
        &(self * other) - &(other * self)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// max |M - M^dagger|
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// `(M + M^dagger) / 2`
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        out
    }

    /// Kronecker product: `out[(i*n + k, j*n + l)] = a[(i, j)] * b[(k, l)]`
    /// with `n = b.dim()`.
    pub fn kron(&self, b: &CMatrix) -> Self {
        let (m, n) = (self.dim, b.dim);
        let mut out = Self::zeros(m * n);
        for i in 0..m {
            for j in 0..m {
                let aij = self[(i, j)];
                if aij == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        out[(i * n + k, j * n + l)] = aij * b[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn all_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Free-function form of [`CMatrix::kron`].
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kron(b)
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                for j in 0..n {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;

    #[test]
    fn kron_of_identities_is_identity() {
        let i4 = kron(&CMatrix::identity(2), &CMatrix::identity(2));
        assert_eq!(i4, CMatrix::identity(4));
    }

    #[test]
    fn kron_sigma_z_sigma_z() {
        let zz = kron(&pauli::sigma_z(), &pauli::sigma_z());
        assert_eq!(zz, CMatrix::from_real_diag(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn kron_index_layout() {
        let a = CMatrix::from_real_rows([[1.0, 2.0], [3.0, 4.0]]);
        let b = CMatrix::from_real_rows([[0.0, 5.0], [6.0, 7.0]]);
        let k = kron(&a, &b);
        assert_eq!(k.dim(), 4);
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        assert_eq!(k[(i * 2 + p, j * 2 + q)], a[(i, j)] * b[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn non_square_entry_count_rejected() {
        let err = CMatrix::from_row_major(vec![Complex64::new(1.0, 0.0); 3]).unwrap_err();
        assert_eq!(err, Error::NotSquare { entries: 3 });
        assert!(CMatrix::from_row_major(Vec::new()).is_err());
    }

    #[test]
    fn adjoint_and_hermitian_part() {
        let m = CMatrix::from_rows([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)],
            [Complex64::new(3.0, 0.0), Complex64::new(4.0, 1.0)],
        ]);
        assert!(!m.is_hermitian(1e-12));
        let h = m.hermitian_part();
        assert!(h.is_hermitian(0.0));
        assert_eq!(m.adjoint().adjoint(), m);
    }
}
