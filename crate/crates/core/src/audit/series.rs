use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{matrix_entropy, matrix_entropy_with};
use crate::closedform::{
    heis_density_matrix, heis_entropy, heis_reduced_matrix, heis_sigma_plus,
    heis_sigma_plus_from_a01, heis_thermal_entropy, ising_density_matrix, ising_entropy,
    ising_reduced_matrix, ising_sigma_plus, ThermalEntropyForm,
};
use crate::dynamics::{evolve_rk4, ExactEvolution, TimeGrid, DEFAULT_RK4_SUBSTEPS, RK4_TOLERANCES};
use crate::error::Result;
use crate::linalg::{
    bloch_vector, partial_trace_matrix, CMatrix, DensityMatrix, Subsystem, Tolerances,
};
use crate::model::{
    hamiltonian, initial_state, thermal_populations, CouplingKind, ModelParams, Temperature,
    ThermalPopulations,
};

/// Where the numbers in a series came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Oracle,
    ClosedFormLiteral,
    ClosedFormRepaired,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Oracle => "oracle",
            Provenance::ClosedFormLiteral => "closed-form-literal",
            Provenance::ClosedFormRepaired => "closed-form-repaired",
        })
    }
}

/// Numerical propagation method behind an oracle series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Propagation {
    #[default]
    Exact,
    Rk4 {
        substeps: usize,
    },
}

impl Propagation {
    pub fn rk4_default() -> Self {
        Propagation::Rk4 {
            substeps: DEFAULT_RK4_SUBSTEPS,
        }
    }
}

/// Observables at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObservablePoint {
    pub t: f64,
    /// Qubit entropy.
    pub s1: f64,
    /// Thermal-spin entropy.
    pub s2: f64,
    /// Entropy of the joint state.
    pub s_total: f64,
    pub sigma_plus: Complex64,
    /// Qubit Bloch vector `(<sx>, <sy>, <sz>)`.
    pub bloch: [f64; 3],
    /// Diagonal of the reduced thermal-spin state.
    pub rho2_diag: [f64; 2],
}

impl ObservablePoint {
    pub fn abs_sigma_plus(&self) -> f64 {
        self.sigma_plus.norm()
    }

    pub fn get(&self, q: Quantity) -> f64 {
        match q {
            Quantity::S1 => self.s1,
            Quantity::S2 => self.s2,
            Quantity::STotal => self.s_total,
            Quantity::ReSigmaPlus => self.sigma_plus.re,
            Quantity::ImSigmaPlus => self.sigma_plus.im,
            Quantity::AbsSigmaPlus => self.abs_sigma_plus(),
            Quantity::Rho2Ground => self.rho2_diag[0],
            Quantity::Rho2Excited => self.rho2_diag[1],
        }
    }
}

/// Scalar field of an [`ObservablePoint`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    S1,
    S2,
    STotal,
    ReSigmaPlus,
    ImSigmaPlus,
    AbsSigmaPlus,
    Rho2Ground,
    Rho2Excited,
}

#[derive(Debug, Clone)]
pub struct ObservableSeries {
    pub grid: TimeGrid,
    pub source: Provenance,
    pub points: Vec<ObservablePoint>,
}

impl ObservableSeries {
    pub fn values(&self, q: Quantity) -> Vec<f64> {
        self.points.iter().map(|p| p.get(q)).collect()
    }

    pub fn times(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.t).collect()
    }
}

fn point_from_joint(t: f64, joint: &CMatrix, tol: &Tolerances) -> Result<ObservablePoint> {
    let q = partial_trace_matrix(joint, Subsystem::Qubit);
    let th = partial_trace_matrix(joint, Subsystem::Thermal);
    Ok(ObservablePoint {
        t,
        s1: matrix_entropy_with(&q, tol)?,
        s2: matrix_entropy_with(&th, tol)?,
        s_total: matrix_entropy_with(joint, tol)?,
        sigma_plus: q[(1, 0)] * 2.0,
        bloch: bloch_vector(&q),
        rho2_diag: [th[(0, 0)].re, th[(1, 1)].re],
    })
}

/// Oracle series from numerical propagation of the initial state.
pub fn oracle_series(
    p: &ModelParams,
    temp: Temperature,
    grid: &TimeGrid,
    method: Propagation,
) -> Result<ObservableSeries> {
    let pops = thermal_populations(p.e2, temp)?;
    let h = hamiltonian(p)?;
    let rho0 = initial_state(&pops)?;
    let points = match method {
        Propagation::Exact => {
            let evo = ExactEvolution::new(&h)?;
            grid.times()
                .into_par_iter()
                .map(|t| {
                    let joint = evo.state_at(&rho0, t)?;
                    point_from_joint(t, joint.matrix(), &Tolerances::default())
                })
                .collect::<Result<Vec<_>>>()?
        }
        Propagation::Rk4 { substeps } => {
            let states = evolve_rk4(&h, &rho0, grid, substeps)?;
            states
                .iter()
                .map(|(t, rho): (f64, &DensityMatrix)| {
                    point_from_joint(t, rho.matrix(), &RK4_TOLERANCES)
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(ObservableSeries {
        grid: *grid,
        source: Provenance::Oracle,
        points,
    })
}

fn closed_form_point(
    p: &ModelParams,
    pops: &ThermalPopulations,
    t: f64,
    repaired: bool,
) -> Result<ObservablePoint> {
    let (joint, q, th, s1, s2, sigma_plus) = match p.coupling {
        CouplingKind::Ising => (
            ising_density_matrix(p, pops, t),
            ising_reduced_matrix(p, pops, t, Subsystem::Qubit),
            ising_reduced_matrix(p, pops, t, Subsystem::Thermal),
            ising_entropy(pops, p.j, t, Subsystem::Qubit),
            ising_entropy(pops, p.j, t, Subsystem::Thermal),
            ising_sigma_plus(p, pops, t)?,
        ),
        CouplingKind::Heisenberg => {
            let form = if repaired {
                ThermalEntropyForm::Repaired
            } else {
                ThermalEntropyForm::Literal
            };
            let sigma_plus = if repaired {
                heis_sigma_plus_from_a01(p, pops, t)?
            } else {
                heis_sigma_plus(p, pops, t)?
            };
            (
                heis_density_matrix(p, pops, t)?,
                heis_reduced_matrix(p, pops, t, Subsystem::Qubit)?,
                heis_reduced_matrix(p, pops, t, Subsystem::Thermal)?,
                heis_entropy(p, pops, t, Subsystem::Qubit)?,
                heis_thermal_entropy(p, pops, t, form)?,
                sigma_plus,
            )
        }
    };
    Ok(ObservablePoint {
        t,
        s1,
        s2,
        s_total: matrix_entropy(&joint)?,
        sigma_plus,
        bloch: bloch_vector(&q),
        rho2_diag: [th[(0, 0)].re, th[(1, 1)].re],
    })
}

/// Observables over `grid` from the exact oracle or from the closed forms.
///
/// Closed-form series report what the printed expressions give, so their
/// entropies may fall outside `[0, ln 2]` where an expression is wrong.
pub fn observable_series(
    p: &ModelParams,
    temp: Temperature,
    grid: &TimeGrid,
    source: Provenance,
) -> Result<ObservableSeries> {
    if source == Provenance::Oracle {
        return oracle_series(p, temp, grid, Propagation::Exact);
    }
    let pops = thermal_populations(p.e2, temp)?;
    let repaired = source == Provenance::ClosedFormRepaired;
    let points = grid
        .times()
        .into_par_iter()
        .map(|t| closed_form_point(p, &pops, t, repaired))
        .collect::<Result<Vec<_>>>()?;
    Ok(ObservableSeries {
        grid: *grid,
        source,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    #[test]
    fn zero_temperature_ising_is_pure_precession() {
        let p = ModelParams::figure_params(CouplingKind::Ising);
        let grid = TimeGrid::new(0.0, 400.0, 401).unwrap();
        let s = observable_series(&p, Temperature::Zero, &grid, Provenance::Oracle).unwrap();
        for pt in &s.points {
            assert!(pt.s1 <= 1e-10);
            assert!((pt.abs_sigma_plus() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn infinite_temperature_maximum_is_ln2() {
        let p = ModelParams::figure_params(CouplingKind::Ising);
        // 1001 points on [0, pi/J]: the quarter period pi/(4J) is point 250.
        let grid = TimeGrid::new(0.0, PI / p.j, 1001).unwrap();
        let s = observable_series(&p, Temperature::Infinite, &grid, Provenance::Oracle).unwrap();
        let (k, max) =
            s.values(Quantity::S1)
                .into_iter()
                .enumerate()
                .fold(
                    (0, f64::MIN),
                    |acc, (k, v)| if v > acc.1 { (k, v) } else { acc },
                );
        assert!((max - LN_2).abs() < 1e-9);
        assert!(
            (s.points[k].t - 78.539_816_339_744_83).abs() < 1e-9
                || (s.points[k].t - 3.0 * 78.539_816_339_744_83).abs() < 1e-9
        );
    }

    #[test]
    fn heisenberg_total_entropy_is_constant() {
        let p = ModelParams::figure_params(CouplingKind::Heisenberg);
        let grid = TimeGrid::new(0.0, 400.0, 401).unwrap();
        let s = observable_series(&p, Temperature::Finite(1.0), &grid, Provenance::Oracle).unwrap();
        for pt in &s.points {
            assert!((pt.s_total - 0.365_333_855_087_207_6).abs() <= 1e-8);
        }
    }

    #[test]
    fn rk4_and_exact_series_agree() {
        let p = ModelParams::figure_params(CouplingKind::Heisenberg);
        let grid = TimeGrid::new(0.0, 50.0, 101).unwrap();
        let a = oracle_series(&p, Temperature::Finite(1.0), &grid, Propagation::Exact).unwrap();
        let b = oracle_series(
            &p,
            Temperature::Finite(1.0),
            &grid,
            Propagation::rk4_default(),
        )
        .unwrap();
        for (x, y) in a.points.iter().zip(&b.points) {
            assert!((x.s1 - y.s1).abs() < 1e-7);
            assert!((x.sigma_plus - y.sigma_plus).norm() < 1e-8);
        }
    }

    #[test]
    fn closed_form_ising_matches_oracle_series() {
        let p = ModelParams::figure_params(CouplingKind::Ising);
        let grid = TimeGrid::new(0.0, 400.0, 201).unwrap();
        let o = observable_series(&p, Temperature::Finite(1.0), &grid, Provenance::Oracle).unwrap();
        let c = observable_series(
            &p,
            Temperature::Finite(1.0),
            &grid,
            Provenance::ClosedFormLiteral,
        )
        .unwrap();
        for (x, y) in o.points.iter().zip(&c.points) {
            assert!((x.s1 - y.s1).abs() < 1e-9);
            assert!((x.sigma_plus - y.sigma_plus).norm() < 1e-10);
            assert!((x.bloch[2] - y.bloch[2]).abs() < 1e-12);
        }
    }
}
