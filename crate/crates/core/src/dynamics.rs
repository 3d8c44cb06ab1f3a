//! Numerical solution of `i d(rho)/dt = [H, rho]` for a time-independent
//! Hamiltonian.
//!
//! [`evolve_exact`] conjugates with `exp(-iHt)` built from the spectral
//! decomposition and is the reference. [`evolve_rk4`] integrates the same
//! equation with classical Runge-Kutta and shares no code with the
//! eigensolver, so the two can check each other.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DensityMatrix, HermitianEigen, Tolerances};

/// RK4 substeps per grid interval used when the caller has no preference.
///
/// Chosen from a step-halving study on the default grid (`[0, 400]`, 4001
/// points) with `E1 = 1e-4, E2 = 1, J = 1e-2`. The Ising run is at round-off
/// already with one substep. The Heisenberg run has eigenfrequency
/// differences near `2 E2` and its maximum deviation from the exact
/// propagator is about `4.9e-5` at 1 substep and `3.1e-6` at 2, scaling as
/// `substeps^-4`; 16 substeps gives roughly `8e-10`, under the `1e-8` budget
/// for both couplings.
pub const DEFAULT_RK4_SUBSTEPS: usize = 16;

/// Validation thresholds for RK4 output. The integrator does not preserve
/// positivity, so zero eigenvalues of the initial state drift by the local
/// truncation error; anything below `-1e-6` means the step is too large.
pub const RK4_TOLERANCES: Tolerances = Tolerances {
    hermitian: 1e-12,
    trace: 1e-12,
    positivity: 1e-6,
};

/// Uniform time grid with inclusive endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    n_points: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, n_points: usize) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite()) {
            return Err(Error::param("grid", "endpoints must be finite"));
        }
        if t_end <= t_start {
            return Err(Error::param(
                "grid",
                format!("t_end ({t_end}) must exceed t_start ({t_start})"),
            ));
        }
        if n_points < 2 {
            return Err(Error::GridTooCoarse {
                points: n_points,
                required: 2,
            });
        }
        Ok(TimeGrid {
            t_start,
            t_end,
            n_points,
        })
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.t_end - self.t_start) / (self.n_points - 1) as f64
    }

    /// Time of grid point `k`; the last point is exactly `t_end`.
    pub fn point(&self, k: usize) -> f64 {
        if k + 1 == self.n_points {
            return self.t_end;
        }
        self.t_start + (self.t_end - self.t_start) * (k as f64 / (self.n_points - 1) as f64)
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.point(k)).collect()
    }
}

/// One density matrix per grid point.
#[derive(Debug, Clone)]
pub struct StateSeries {
    pub grid: TimeGrid,
    pub states: Vec<DensityMatrix>,
}

impl StateSeries {
    pub fn iter(&self) -> impl Iterator<Item = (f64, &DensityMatrix)> + '_ {
        self.grid.times().into_iter().zip(&self.states)
    }
}

/// Spectral propagator for a fixed Hamiltonian, reusable across times.
#[derive(Debug, Clone)]
pub struct ExactEvolution {
    eigen: HermitianEigen,
}

impl ExactEvolution {
    pub fn new(h: &CMatrix) -> Result<Self> {
        Ok(ExactEvolution {
            eigen: HermitianEigen::new(h)?,
        })
    }

    /// `U rho U^dagger` with `U = exp(-iHt)`, unvalidated.
    pub fn conjugate(&self, rho: &CMatrix, t: f64) -> CMatrix {
        let u = self.eigen.propagator(t);
        &(&u * rho) * &u.adjoint()
    }

    pub fn state_at(&self, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        if t == 0.0 {
            return Ok(rho0.clone());
        }
        DensityMatrix::new(self.conjugate(rho0.matrix(), t))
    }
}

pub fn evolve_exact(h: &CMatrix, rho0: &DensityMatrix, grid: &TimeGrid) -> Result<StateSeries> {
    check_dims(h, rho0)?;
    let evo = ExactEvolution::new(h)?;
    let states = grid
        .times()
        .into_par_iter()
        .map(|t| evo.state_at(rho0, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(StateSeries {
        grid: *grid,
        states,
    })
}

fn check_dims(h: &CMatrix, rho0: &DensityMatrix) -> Result<()> {
    if h.dim() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho0.dim(),
            found: h.dim(),
        });
    }
    Ok(())
}

/// `-i [H, rho]`
fn liouvillian(h: &CMatrix, rho: &CMatrix) -> CMatrix {
    h.commutator(rho).scale(Complex64::new(0.0, -1.0))
}

fn rk4_step(h: &CMatrix, rho: &CMatrix, dt: f64) -> CMatrix {
    let k1 = liouvillian(h, rho);
    let k2 = liouvillian(h, &(rho + &k1.scale_real(dt / 2.0)));
    let k3 = liouvillian(h, &(rho + &k2.scale_real(dt / 2.0)));
    let k4 = liouvillian(h, &(rho + &k3.scale_real(dt)));
    let incr = &(&k1 + &k2.scale_real(2.0)) + &(&k3.scale_real(2.0) + &k4);
    rho + &incr.scale_real(dt / 6.0)
}

/// Classical RK4 with `substeps` equal steps per grid interval. Each emitted
/// state is re-Hermitized and renormalized to unit trace.
pub fn evolve_rk4(
    h: &CMatrix,
    rho0: &DensityMatrix,
    grid: &TimeGrid,
    substeps: usize,
) -> Result<StateSeries> {
    check_dims(h, rho0)?;
    if substeps == 0 {
        return Err(Error::Integration("substeps must be positive".into()));
    }
    if !h.all_finite() {
        return Err(Error::Integration(
            "Hamiltonian has non-finite entries".into(),
        ));
    }
    let mut states = Vec::with_capacity(grid.len());
    states.push(rho0.clone());
    let mut rho = rho0.matrix().clone();
    for k in 1..grid.len() {
        let dt = (grid.point(k) - grid.point(k - 1)) / substeps as f64;
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::Integration(format!("invalid step size {dt}")));
        }
        for _ in 0..substeps {
            rho = rk4_step(h, &rho, dt);
        }
        if !rho.all_finite() {
            return Err(Error::Integration(format!(
                "non-finite state at t = {}",
                grid.point(k)
            )));
        }
        rho = rho.hermitian_part();
        let tr = rho.trace().re;
        rho = rho.scale_real(1.0 / tr);
        let state = DensityMatrix::with_tolerances(rho.clone(), &RK4_TOLERANCES).map_err(|e| {
            Error::Integration(format!(
                "state at t = {} is not a density matrix: {e}",
                grid.point(k)
            ))
        })?;
        states.push(state);
    }
    Ok(StateSeries {
        grid: *grid,
        states,
    })
}

/// Largest entrywise deviation between two series on the same grid.
pub fn max_deviation(a: &StateSeries, b: &StateSeries) -> f64 {
    a.states
        .iter()
        .zip(&b.states)
        .map(|(x, y)| x.matrix().max_abs_diff(y.matrix()))
        .fold(0.0, f64::max)
}
