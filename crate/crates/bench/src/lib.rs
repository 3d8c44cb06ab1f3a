//! Shared fixtures for the criterion benchmarks.

use qtspin::{
    hamiltonian, initial_state, thermal_populations, CMatrix, CouplingKind, DensityMatrix,
    ModelParams, Temperature, TimeGrid,
};

/// Hamiltonian and initial state at the figure parameters, `T = 1`.
pub fn figure_setup(coupling: CouplingKind) -> (CMatrix, DensityMatrix) {
    let p = ModelParams::figure_params(coupling);
    let pops = thermal_populations(p.e2, Temperature::Finite(1.0)).expect("valid temperature");
    (
        hamiltonian(&p).expect("finite params"),
        initial_state(&pops).expect("valid populations"),
    )
}

/// `[0, 400]` with 4001 points.
pub fn default_grid() -> TimeGrid {
    TimeGrid::new(0.0, 400.0, 4001).expect("valid grid")
}
