//! Dense complex linear algebra for one- and two-spin problems.

mod density;
mod eigen;
mod matrix;
pub mod pauli;

pub(crate) use density::{bloch_vector, entropy_of_spectrum, partial_trace_matrix};
pub use density::{partial_trace, von_neumann_entropy, BasisConvention, DensityMatrix, Subsystem};
pub use eigen::{herm_eigvals, propagator, HermitianEigen};
pub use matrix::{kron, CMatrix};

/// Numerical thresholds for density-matrix validation. The defaults sit
/// about two orders of magnitude above double-precision round-off for 4x4
/// problems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// max |M - M^dagger|
    pub hermitian: f64,
    /// |Tr M - 1|
    pub trace: f64,
    /// Smallest eigenvalue allowed is `-positivity`.
    pub positivity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermitian: 1e-12,
            trace: 1e-12,
            positivity: 1e-10,
        }
    }
}
