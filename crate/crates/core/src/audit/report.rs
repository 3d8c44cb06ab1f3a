//! Formula-by-formula comparison of the closed forms with the exact
//! propagator.
//!
//! Deviations are measured at every grid point and reduced to the maximum
//! and its location (earliest on ties). A discrepancy is a finding, not an
//! error.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use super::matrix_entropy;
use crate::closedform::{
    heis_density_matrix, heis_entropy, heis_reduced_matrix, heis_sigma_plus,
    heis_sigma_plus_from_a01, heis_thermal_entropy, ising_density_matrix, ising_entropy,
    ising_reduced_matrix, ising_sigma_plus, EntropyAux, ThermalEntropyForm,
};
use crate::dynamics::{ExactEvolution, TimeGrid};
use crate::error::Result;
use crate::linalg::{partial_trace_matrix, CMatrix, Subsystem};
use crate::model::{
    hamiltonian, initial_state, thermal_populations, CouplingKind, ModelParams, Temperature,
    ThermalPopulations,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditTolerances {
    /// For expressions claimed to be exact solutions.
    pub exact: f64,
    /// For limiting statements valid only when `E1 << J << E2`.
    pub regime: f64,
}

impl Default for AuditTolerances {
    fn default() -> Self {
        AuditTolerances {
            exact: 1e-9,
            regime: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Confirmed,
    Discrepant,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Discrepant => "discrepant",
        })
    }
}

/// Whether an entry checks an exact identity or a weak-coupling limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditKind {
    Exact,
    Regime,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditEntry {
    pub formula: &'static str,
    pub description: &'static str,
    pub kind: AuditKind,
    #[serde(serialize_with = "finite_or_null")]
    pub max_abs_deviation: f64,
    pub t_at_max: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

fn finite_or_null<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub params: ModelParams,
    pub temperature: String,
    pub populations: ThermalPopulations,
    pub grid: TimeGrid,
    pub tolerances: AuditTolerances,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn entry(&self, formula: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.formula == formula)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("audit report serializes")
    }

    pub fn all_confirmed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == Verdict::Confirmed)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "audit: {} coupling, E1={} E2={} J={}, T={}, t in [{}, {}] ({} points)",
            self.params.coupling,
            self.params.e1,
            self.params.e2,
            self.params.j,
            self.temperature,
            self.grid.t_start(),
            self.grid.t_end(),
            self.grid.len()
        )?;
        writeln!(
            f,
            "{:<26} {:<7} {:>12} {:>12} {:>9}  {:<10} description",
            "formula", "kind", "max dev", "at t", "tol", "verdict"
        )?;
        for e in &self.entries {
            let kind = match e.kind {
                AuditKind::Exact => "exact",
                AuditKind::Regime => "regime",
            };
            writeln!(
                f,
                "{:<26} {:<7} {:>12.3e} {:>12.4} {:>9.1e}  {:<10} {}",
                e.formula,
                kind,
                e.max_abs_deviation,
                e.t_at_max,
                e.tolerance,
                e.verdict,
                e.description
            )?;
        }
        Ok(())
    }
}

struct Check {
    formula: &'static str,
    description: &'static str,
    kind: AuditKind,
}

const fn exact(formula: &'static str, description: &'static str) -> Check {
    Check {
        formula,
        description,
        kind: AuditKind::Exact,
    }
}

const fn regime(formula: &'static str, description: &'static str) -> Check {
    Check {
        formula,
        description,
        kind: AuditKind::Regime,
    }
}

const ISING_CHECKS: &[Check] = &[
    exact("eq4", "Ising joint density matrix"),
    exact("eq5_qubit", "Ising reduced qubit matrix"),
    exact("eq5_thermal", "Ising reduced thermal matrix is constant"),
    exact("eq6_7", "Ising qubit entropy S1 with X"),
    exact("eq8", "thermal entropy S2"),
    exact("eq9", "Ising |<sigma_+>|"),
];

const HEISENBERG_CHECKS: &[Check] = &[
    exact("eq10_11_literal", "Heisenberg S2 as printed"),
    exact(
        "eq10_11_repaired",
        "Heisenberg S2 with 1/2 on the X2 log term",
    ),
    exact("eq12_13", "Heisenberg qubit entropy S1 with X1, Y1"),
    exact("eq14_literal", "Heisenberg |<sigma_+>| as printed"),
    exact("eq14_via_a01", "Heisenberg |<sigma_+>| as 2 conj(a01)"),
    exact("eq15", "Heisenberg joint density matrix"),
    exact("eq16", "Heisenberg reduced thermal matrix b_ij"),
    exact("eq17", "Heisenberg reduced qubit matrix a_ij"),
    exact(
        "eq17_vs_ptrace_eq15",
        "a_ij against partial trace of the printed joint matrix",
    ),
    regime(
        "eq10_literal_to_eq8",
        "printed Heisenberg S2 vs thermal entropy",
    ),
    regime(
        "eq10_repaired_to_eq8",
        "repaired Heisenberg S2 vs thermal entropy",
    ),
    regime("eq12_to_eq6", "Heisenberg S1 vs Ising S1"),
    regime(
        "eq14_literal_to_eq9",
        "printed Heisenberg |<sigma_+>| vs Ising",
    ),
    regime("eq14_via_a01_to_eq9", "2|a01| vs Ising |<sigma_+>|"),
    regime("x1_to_x", "X1 vs X"),
    regime("x2_to_f00_minus_f11", "X2 vs f00 - f11"),
];

struct Oracle {
    joint: CMatrix,
    qubit: CMatrix,
    thermal: CMatrix,
    s1: f64,
    s2: f64,
}

impl Oracle {
    fn at(evo: &ExactEvolution, rho0: &CMatrix, t: f64) -> Result<Self> {
        let joint = evo.conjugate(rho0, t);
        let qubit = partial_trace_matrix(&joint, Subsystem::Qubit);
        let thermal = partial_trace_matrix(&joint, Subsystem::Thermal);
        Ok(Oracle {
            s1: matrix_entropy(&qubit)?,
            s2: matrix_entropy(&thermal)?,
            joint,
            qubit,
            thermal,
        })
    }

    fn sigma_plus_abs(&self) -> f64 {
        (self.qubit[(1, 0)] * 2.0).norm()
    }
}

fn ising_deviations(
    p: &ModelParams,
    pops: &ThermalPopulations,
    o: &Oracle,
    t: f64,
) -> Result<Vec<f64>> {
    Ok(vec![
        ising_density_matrix(p, pops, t).max_abs_diff(&o.joint),
        ising_reduced_matrix(p, pops, t, Subsystem::Qubit).max_abs_diff(&o.qubit),
        ising_reduced_matrix(p, pops, t, Subsystem::Thermal).max_abs_diff(&o.thermal),
        (ising_entropy(pops, p.j, t, Subsystem::Qubit) - o.s1).abs(),
        (ising_entropy(pops, p.j, t, Subsystem::Thermal) - o.s2).abs(),
        (ising_sigma_plus(p, pops, t)?.norm() - o.sigma_plus_abs()).abs(),
    ])
}

fn heisenberg_deviations(
    p: &ModelParams,
    pops: &ThermalPopulations,
    o: &Oracle,
    t: f64,
) -> Result<Vec<f64>> {
    let ising = p.with_coupling(CouplingKind::Ising);
    let s2_lit = heis_thermal_entropy(p, pops, t, ThermalEntropyForm::Literal)?;
    let s2_rep = heis_thermal_entropy(p, pops, t, ThermalEntropyForm::Repaired)?;
    let s1 = heis_entropy(p, pops, t, Subsystem::Qubit)?;
    let sp_lit = heis_sigma_plus(p, pops, t)?.norm();
    let sp_a01 = heis_sigma_plus_from_a01(p, pops, t)?.norm();
    let joint = heis_density_matrix(p, pops, t)?;
    let a = heis_reduced_matrix(p, pops, t, Subsystem::Qubit)?;
    let b = heis_reduced_matrix(p, pops, t, Subsystem::Thermal)?;
    let aux = EntropyAux::new(p, pops, t)?;
    let s1_ising = ising_entropy(pops, p.j, t, Subsystem::Qubit);
    let s2_ising = ising_entropy(pops, p.j, t, Subsystem::Thermal);
    let sp_ising = ising_sigma_plus(&ising, pops, t)?.norm();
    Ok(vec![
        (s2_lit - o.s2).abs(),
        (s2_rep - o.s2).abs(),
        (s1 - o.s1).abs(),
        (sp_lit - o.sigma_plus_abs()).abs(),
        (sp_a01 - o.sigma_plus_abs()).abs(),
        joint.max_abs_diff(&o.joint),
        b.max_abs_diff(&o.thermal),
        a.max_abs_diff(&o.qubit),
        a.max_abs_diff(&partial_trace_matrix(&joint, Subsystem::Qubit)),
        (s2_lit - s2_ising).abs(),
        (s2_rep - s2_ising).abs(),
        (s1 - s1_ising).abs(),
        (sp_lit - sp_ising).abs(),
        (sp_a01 - sp_ising).abs(),
        (aux.x1 - aux.x).abs(),
        (aux.x2 - (pops.f00 - pops.f11)).abs(),
    ])
}

/// Audits every closed form for `p.coupling` against the exact propagator.
///
/// Heisenberg audits also include the weak-coupling limit statements,
/// judged at `tolerances.regime`. Output depends only on the inputs.
pub fn run_audit(
    p: &ModelParams,
    temp: Temperature,
    grid: &TimeGrid,
    tolerances: AuditTolerances,
) -> Result<AuditReport> {
    let pops = thermal_populations(p.e2, temp)?;
    let evo = ExactEvolution::new(&hamiltonian(p)?)?;
    let rho0 = initial_state(&pops)?.into_matrix();
    let checks = match p.coupling {
        CouplingKind::Ising => ISING_CHECKS,
        CouplingKind::Heisenberg => HEISENBERG_CHECKS,
    };

    let times = grid.times();
    let rows = times
        .par_iter()
        .map(|&t| {
            let o = Oracle::at(&evo, &rho0, t)?;
            match p.coupling {
                CouplingKind::Ising => ising_deviations(p, &pops, &o, t),
                CouplingKind::Heisenberg => heisenberg_deviations(p, &pops, &o, t),
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let entries = checks
        .iter()
        .enumerate()
        .map(|(i, check)| {
            let (mut worst, mut at) = (0.0f64, times[0]);
            for (row, &t) in rows.iter().zip(&times) {
                let d = row[i];
                // NaN marks an expression that could not be evaluated.
                if d.is_nan() || d > worst {
                    worst = if d.is_nan() { f64::INFINITY } else { d };
                    at = t;
                    if d.is_nan() {
                        break;
                    }
                }
            }
            let tolerance = match check.kind {
                AuditKind::Exact => tolerances.exact,
                AuditKind::Regime => tolerances.regime,
            };
            AuditEntry {
                formula: check.formula,
                description: check.description,
                kind: check.kind,
                max_abs_deviation: worst,
                t_at_max: at,
                tolerance,
                verdict: if worst <= tolerance {
                    Verdict::Confirmed
                } else {
                    Verdict::Discrepant
                },
            }
        })
        .collect();

    Ok(AuditReport {
        params: *p,
        temperature: temp.label(),
        populations: pops,
        grid: *grid,
        tolerances,
        entries,
    })
}
