use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CMatrix, HermitianEigen, Tolerances};
use crate::error::{Error, Result};

/// Ordering of the joint basis. There is only one: `index = 2 q + s`, where
/// `q` is the qubit state and `s` the thermal-spin state, and state 0 is the
/// `sigma_z = +1` eigenstate of either spin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum BasisConvention {
    #[default]
    QubitMajor,
}

impl BasisConvention {
    /// Joint index of qubit state `q` and thermal-spin state `s`.
    pub const fn index(self, q: usize, s: usize) -> usize {
        match self {
            BasisConvention::QubitMajor => 2 * q + s,
        }
    }
}

/// Which factor of the two-spin system to keep when tracing out the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    /// The qubit (Q-spin).
    Qubit,
    /// The thermal two-level system (T-spin).
    Thermal,
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    basis: BasisConvention,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, &Tolerances::default())
    }

    pub fn with_tolerances(matrix: CMatrix, tol: &Tolerances) -> Result<Self> {
        let defect = matrix.hermiticity_defect();
        if !matrix.all_finite() || defect > tol.hermitian {
            return Err(Error::NotHermitian { deviation: defect });
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol.trace {
            return Err(Error::NotUnitTrace { trace: tr.re });
        }
        let min = HermitianEigen::with_tolerances(&matrix, tol)?
            .values
            .first()
            .copied()
            .unwrap_or(0.0);
        if min < -tol.positivity {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(DensityMatrix {
            matrix,
            basis: BasisConvention::QubitMajor,
        })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn basis(&self) -> BasisConvention {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(HermitianEigen::new(&self.matrix)?.values)
    }

    /// Bloch vector `(<sigma_x>, <sigma_y>, <sigma_z>)` of a single-spin state.
    pub fn bloch_vector(&self) -> Result<[f64; 3]> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim(),
            });
        }
        Ok(bloch_vector(&self.matrix))
    }

    /// `<sigma_+> = Tr(sigma_+ rho) = 2 rho[(1, 0)]` for a single-spin state.
    pub fn sigma_plus(&self) -> Result<Complex64> {
        if self.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: self.dim(),
            });
        }
        Ok(self.matrix[(1, 0)] * 2.0)
    }
}

pub(crate) fn bloch_vector(m: &CMatrix) -> [f64; 3] {
    let r10 = m[(1, 0)];
    [2.0 * r10.re, 2.0 * r10.im, (m[(0, 0)] - m[(1, 1)]).re]
}

/// Reduced state of one spin of a two-spin matrix, without validation.
pub(crate) fn partial_trace_matrix(m: &CMatrix, keep: Subsystem) -> CMatrix {
    let basis = BasisConvention::QubitMajor;
    let mut out = CMatrix::zeros(2);
    for a in 0..2 {
        for b in 0..2 {
            out[(a, b)] = (0..2)
                .map(|k| match keep {
                    Subsystem::Qubit => m[(basis.index(a, k), basis.index(b, k))],
                    Subsystem::Thermal => m[(basis.index(k, a), basis.index(k, b))],
                })
                .sum();
        }
    }
    out
}

/// Traces a 4x4 two-spin density matrix down to the kept spin.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let reduced = partial_trace_matrix(rho.matrix(), keep);
    DensityMatrix::new(reduced)
}

/// `-sum(l ln l)` over a spectrum, with `0 ln 0 = 0` and eigenvalues within
/// `positivity` below zero clamped to zero.
pub(crate) fn entropy_of_spectrum(values: &[f64], positivity: f64) -> Result<f64> {
    let mut s = 0.0;
    for &l in values {
        if l < -positivity {
            return Err(Error::NotPositive { min_eigenvalue: l });
        }
        if l > 0.0 {
            s -= l * l.ln();
        }
    }
    Ok(s.max(0.0))
}

/// Von Neumann entropy in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let tol = Tolerances::default();
    entropy_of_spectrum(&rho.eigenvalues()?, tol.positivity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;

    fn plus_state() -> CMatrix {
        CMatrix::from_real_rows([[0.5, 0.5], [0.5, 0.5]])
    }

    #[test]
    fn rejects_invalid_matrices() {
        let not_herm = CMatrix::from_real_rows([[0.5, 0.1], [0.0, 0.5]]);
        assert!(matches!(
            DensityMatrix::new(not_herm),
            Err(Error::NotHermitian { .. })
        ));
        let bad_trace = CMatrix::from_real_diag(&[0.5, 0.6]);
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(Error::NotUnitTrace { .. })
        ));
        let negative = CMatrix::from_real_diag(&[1.1, -0.1]);
        assert!(matches!(
            DensityMatrix::new(negative),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn partial_trace_of_product_state() {
        let q = plus_state();
        let t = CMatrix::from_real_diag(&[0.8, 0.2]);
        let rho = DensityMatrix::new(kron(&q, &t)).unwrap();
        let rq = partial_trace(&rho, Subsystem::Qubit).unwrap();
        let rt = partial_trace(&rho, Subsystem::Thermal).unwrap();
        assert!(rq.matrix().max_abs_diff(&q) < 1e-15);
        assert!(rt.matrix().max_abs_diff(&t) < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_state() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [h, 0.0, 0.0, h];
        let mut m = CMatrix::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = Complex64::new(psi[i] * psi[j], 0.0);
            }
        }
        let rho = DensityMatrix::new(m).unwrap();
        for keep in [Subsystem::Qubit, Subsystem::Thermal] {
            let r = partial_trace(&rho, keep).unwrap();
            assert!(
                r.matrix()
                    .max_abs_diff(&CMatrix::from_real_diag(&[0.5, 0.5]))
                    < 1e-15
            );
        }
        assert!(von_neumann_entropy(&rho).unwrap() < 1e-12);
    }

    #[test]
    fn partial_trace_needs_two_spins() {
        let rho = DensityMatrix::new(plus_state()).unwrap();
        assert!(partial_trace(&rho, Subsystem::Qubit).is_err());
    }

    #[test]
    fn entropy_reference_values() {
        let pure = DensityMatrix::new(CMatrix::from_real_diag(&[1.0, 0.0])).unwrap();
        assert_eq!(von_neumann_entropy(&pure).unwrap(), 0.0);
        let mixed = DensityMatrix::new(CMatrix::from_real_diag(&[0.5, 0.5])).unwrap();
        assert!((von_neumann_entropy(&mixed).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        // Boltzmann weights of a unit splitting at unit temperature.
        let f00 = 0.880_797_077_977_882_4;
        let thermal = DensityMatrix::new(CMatrix::from_real_diag(&[f00, 1.0 - f00])).unwrap();
        assert!((von_neumann_entropy(&thermal).unwrap() - 0.365_333_855_087_207_6).abs() < 1e-14);
    }

    #[test]
    fn spectrum_entropy_clamps_and_rejects() {
        assert_eq!(entropy_of_spectrum(&[-1e-12, 1.0], 1e-10).unwrap(), 0.0);
        assert!(entropy_of_spectrum(&[-1e-6, 1.0], 1e-10).is_err());
    }

    #[test]
    fn bloch_vector_and_sigma_plus_of_plus_state() {
        let rho = DensityMatrix::new(plus_state()).unwrap();
        assert_eq!(rho.bloch_vector().unwrap(), [1.0, 0.0, 0.0]);
        assert_eq!(rho.sigma_plus().unwrap(), Complex64::new(1.0, 0.0));
    }
}
