//! Observable time series, formula audits and extremum detection.

mod extrema;
mod report;
mod series;

pub use extrema::{extrema_locator, Extremum, ExtremumKind};
pub use report::{run_audit, AuditEntry, AuditKind, AuditReport, AuditTolerances, Verdict};
pub use series::{
    observable_series, oracle_series, ObservablePoint, ObservableSeries, Propagation, Provenance,
    Quantity,
};

use crate::error::Result;
use crate::linalg::{entropy_of_spectrum, CMatrix, HermitianEigen, Tolerances};

/// Eigenvalue entropy of an unvalidated Hermitian matrix.
pub(crate) fn matrix_entropy(m: &CMatrix) -> Result<f64> {
    matrix_entropy_with(m, &Tolerances::default())
}

pub(crate) fn matrix_entropy_with(m: &CMatrix, tol: &Tolerances) -> Result<f64> {
    let values = HermitianEigen::with_tolerances(m, tol)?.values;
    entropy_of_spectrum(&values, tol.positivity)
}
