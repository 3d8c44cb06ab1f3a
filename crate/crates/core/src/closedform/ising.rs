use num_complex::Complex64;

use super::{require, two_level_entropy_from_q};
use crate::error::Result;
use crate::linalg::{CMatrix, DensityMatrix, Subsystem};
use crate::model::{CouplingKind, ModelParams, ThermalPopulations};

pub(crate) fn ising_density_matrix(p: &ModelParams, pops: &ThermalPopulations, t: f64) -> CMatrix {
    let (f00, f11) = (pops.f00, pops.f11);
    let mut m = CMatrix::zeros(4);
    let half = |x: f64| Complex64::new(0.5 * x, 0.0);
    m[(0, 0)] = half(f00);
    m[(2, 2)] = half(f00);
    m[(1, 1)] = half(f11);
    m[(3, 3)] = half(f11);
    m[(0, 2)] = Complex64::from_polar(0.5 * f00, 2.0 * (p.e1 + p.j) * t);
    m[(1, 3)] = Complex64::from_polar(0.5 * f11, 2.0 * (p.e1 - p.j) * t);
    m[(2, 0)] = m[(0, 2)].conj();
    m[(3, 1)] = m[(1, 3)].conj();
    m
}

/// Full two-spin density matrix under Ising coupling.
pub fn ising_density(p: &ModelParams, pops: &ThermalPopulations, t: f64) -> Result<DensityMatrix> {
    require(p, CouplingKind::Ising)?;
    DensityMatrix::new(ising_density_matrix(p, pops, t))
}

/// Qubit coherence `a = f00 e^{2i(E1+J)t} + f11 e^{2i(E1-J)t}`.
fn coherence(p: &ModelParams, pops: &ThermalPopulations, t: f64) -> Complex64 {
    Complex64::from_polar(pops.f00, 2.0 * (p.e1 + p.j) * t)
        + Complex64::from_polar(pops.f11, 2.0 * (p.e1 - p.j) * t)
}

pub(crate) fn ising_reduced_matrix(
    p: &ModelParams,
    pops: &ThermalPopulations,
    t: f64,
    keep: Subsystem,
) -> CMatrix {
    match keep {
        Subsystem::Qubit => {
            let a = coherence(p, pops, t) * 0.5;
            CMatrix::from_rows([
                [Complex64::new(0.5, 0.0), a],
                [a.conj(), Complex64::new(0.5, 0.0)],
            ])
        }
        Subsystem::Thermal => CMatrix::from_real_diag(&[pops.f00, pops.f11]),
    }
}

pub fn ising_reduced(
    p: &ModelParams,
    pops: &ThermalPopulations,
    t: f64,
    keep: Subsystem,
) -> Result<DensityMatrix> {
    require(p, CouplingKind::Ising)?;
    DensityMatrix::new(ising_reduced_matrix(p, pops, t, keep))
}

/// Qubit (`Subsystem::Qubit`) or thermal-spin entropy under Ising coupling.
///
/// The qubit form is singular wherever `f00 f11 sin^2(2Jt) = 0`; there it
/// returns the limit 0.
pub fn ising_entropy(pops: &ThermalPopulations, j: f64, t: f64, which: Subsystem) -> f64 {
    match which {
        Subsystem::Qubit => {
            let s = (2.0 * j * t).sin();
            let four_q = 4.0 * pops.f00 * pops.f11 * s * s;
            let x = (1.0 - four_q).max(0.0).sqrt();
            two_level_entropy_from_q(x, four_q)
        }
        Subsystem::Thermal => pops.entropy(),
    }
}

/// `<sigma_+> = f00 e^{-2i(E1+J)t} + f11 e^{-2i(E1-J)t}`
pub fn ising_sigma_plus(p: &ModelParams, pops: &ThermalPopulations, t: f64) -> Result<Complex64> {
    require(p, CouplingKind::Ising)?;
    Ok(coherence(p, pops, t).conj())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::linalg::{kron, von_neumann_entropy};
    use crate::model::{initial_state, thermal_populations, Temperature};
    use std::f64::consts::{LN_2, PI};

    fn params() -> ModelParams {
        ModelParams::figure_params(CouplingKind::Ising)
    }

    fn pops(t: Temperature) -> ThermalPopulations {
        thermal_populations(1.0, t).unwrap()
    }

    #[test]
    fn density_at_zero_is_initial_state() {
        let pp = pops(Temperature::Finite(1.0));
        let rho = ising_density(&params(), &pp, 0.0).unwrap();
        assert!(
            rho.matrix()
                .max_abs_diff(initial_state(&pp).unwrap().matrix())
                < 1e-16
        );
    }

    #[test]
    fn zero_temperature_components() {
        let pp = pops(Temperature::Zero);
        let p = params();
        let t = 12.5;
        let m = ising_density(&p, &pp, t).unwrap().into_matrix();
        let expected = Complex64::from_polar(0.5, 2.0 * (p.e1 + p.j) * t);
        assert!((m[(0, 2)] - expected).norm() < 1e-16);
        for (i, j) in [(1, 1), (3, 3), (1, 3), (3, 1)] {
            assert_eq!(m[(i, j)].norm(), 0.0);
        }
    }

    #[test]
    fn wrong_coupling_rejected() {
        let p = params().with_coupling(CouplingKind::Heisenberg);
        let pp = pops(Temperature::Infinite);
        assert!(matches!(
            ising_density(&p, &pp, 1.0),
            Err(Error::WrongCoupling { .. })
        ));
        assert!(ising_sigma_plus(&p, &pp, 1.0).is_err());
        assert!(ising_reduced(&p, &pp, 1.0, Subsystem::Qubit).is_err());
    }

    #[test]
    fn reduced_qubit_initial_and_refocused() {
        let pp = pops(Temperature::Finite(1.0));
        let r0 = ising_reduced(&params(), &pp, 0.0, Subsystem::Qubit).unwrap();
        assert!(
            r0.matrix()
                .max_abs_diff(&CMatrix::from_real_rows([[0.5, 0.5], [0.5, 0.5]]))
                < 1e-16
        );
        let p = ModelParams::new(0.0, 1.0, 1e-2, CouplingKind::Ising).unwrap();
        let t = PI / (2.0 * p.j);
        let r = ising_reduced(&p, &pp, t, Subsystem::Qubit).unwrap();
        let a = r.matrix()[(0, 1)] * 2.0;
        assert!((a - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(von_neumann_entropy(&r).unwrap() < 1e-9);
    }

    #[test]
    fn reduced_thermal_is_constant() {
        let pp = pops(Temperature::Finite(1.0));
        for t in [0.0, 1.0, 77.0, 400.0] {
            let r = ising_reduced(&params(), &pp, t, Subsystem::Thermal).unwrap();
            let d = r.matrix().diagonal();
            assert!((d[0].re - 0.880_797_077_977_882_4).abs() < 1e-15);
            assert!((d[1].re - 0.119_202_922_022_117_56).abs() < 1e-15);
        }
    }

    #[test]
    fn entropy_reference_points() {
        let j = 1e-2;
        assert_eq!(
            ising_entropy(&pops(Temperature::Finite(1.0)), j, 0.0, Subsystem::Qubit),
            0.0
        );
        let quarter = PI / (4.0 * j);
        let s = ising_entropy(&pops(Temperature::Infinite), j, quarter, Subsystem::Qubit);
        assert!((s - LN_2).abs() < 1e-12);
        let s2_half = ising_entropy(&pops(Temperature::Finite(0.5)), j, 3.0, Subsystem::Thermal);
        assert!((s2_half - 0.090_094_767_766_175_97).abs() < 1e-14);
        let s2_one = ising_entropy(&pops(Temperature::Finite(1.0)), j, 3.0, Subsystem::Thermal);
        assert!((s2_one - 0.365_333_855_087_207_6).abs() < 1e-14);
    }

    #[test]
    fn entropy_matches_eigenvalues_near_zeros() {
        // Close to sin(2Jt) = 0 the two printed terms nearly cancel.
        let pp = pops(Temperature::Finite(1.0));
        let p = params();
        for dt in [1e-7, 1e-5, 1e-3, 0.1] {
            let t = PI / (2.0 * p.j) + dt;
            let cf = ising_entropy(&pp, p.j, t, Subsystem::Qubit);
            let num =
                von_neumann_entropy(&ising_reduced(&p, &pp, t, Subsystem::Qubit).unwrap()).unwrap();
            assert!((cf - num).abs() < 1e-10, "dt={dt}: {cf} vs {num}");
        }
    }

    #[test]
    fn sigma_plus_values() {
        let pp = pops(Temperature::Finite(1.0));
        assert!(
            (ising_sigma_plus(&params(), &pp, 0.0).unwrap() - Complex64::new(1.0, 0.0)).norm()
                < 1e-15
        );
        let p = ModelParams::new(0.0, 1.0, 1e-2, CouplingKind::Ising).unwrap();
        let sp = ising_sigma_plus(&p, &pp, PI / (4.0 * p.j)).unwrap();
        assert!((sp.norm() - (pp.f00 - pp.f11)).abs() < 1e-12);
        let cold = pops(Temperature::Zero);
        for t in [0.0, 10.0, 123.4] {
            assert!((ising_sigma_plus(&params(), &cold, t).unwrap().norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn product_form_at_zero() {
        let pp = pops(Temperature::Finite(2.0));
        let q = CMatrix::from_real_rows([[0.5, 0.5], [0.5, 0.5]]);
        let t = CMatrix::from_real_diag(&[pp.f00, pp.f11]);
        assert!(ising_density_matrix(&params(), &pp, 0.0).max_abs_diff(&kron(&q, &t)) < 1e-16);
    }
}
