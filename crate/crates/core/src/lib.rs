//! Unitary dynamics of a qubit coupled to a thermal two-level system.
//!
//! The joint 4x4 density matrix evolves under an Ising (`-J sz sz`) or
//! Heisenberg (`-J s.s`) coupling. From it the crate derives the qubit and
//! thermal-spin entropies and the transverse qubit polarization `<sigma_+>`,
//! and compares the known closed-form solutions against an independent
//! numerical propagator.
//!
//! Modules, bottom up:
//!
//! * [`linalg`]: dense complex matrices, Hermitian eigensolver, partial
//!   trace, von Neumann entropy.
//! * [`model`]: parameters, Hamiltonians, thermal populations, initial state.
//! * [`dynamics`]: exact spectral propagation and an RK4 cross-check.
//! * [`closedform`]: literal evaluators of the closed-form solutions.
//! * [`audit`]: observable time series, formula-vs-oracle reports, extrema.

pub mod audit;
pub mod closedform;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod model;

pub use audit::{
    extrema_locator, observable_series, oracle_series, run_audit, AuditEntry, AuditReport,
    AuditTolerances, Extremum, ExtremumKind, ObservablePoint, ObservableSeries, Propagation,
    Provenance, Quantity, Verdict,
};
pub use dynamics::{evolve_exact, evolve_rk4, StateSeries, TimeGrid, DEFAULT_RK4_SUBSTEPS};
pub use error::{Error, Result};
pub use linalg::{
    herm_eigvals, kron, partial_trace, propagator, von_neumann_entropy, BasisConvention, CMatrix,
    DensityMatrix, Subsystem, Tolerances,
};
pub use model::{
    hamiltonian, initial_state, thermal_populations, CouplingKind, ModelParams, Temperature,
    ThermalPopulations,
};
pub use num_complex::Complex64;
