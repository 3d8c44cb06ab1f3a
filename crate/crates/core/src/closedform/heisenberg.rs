use num_complex::Complex64;
use serde::Serialize;

use super::{require, DEGENERATE_THRESHOLD};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DensityMatrix, Subsystem};
use crate::model::{CouplingKind, ModelParams, ThermalPopulations};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `E12 = E1 - E2` and `W = sqrt(E12^2 + 4 J^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergAux {
    pub e12: f64,
    pub w: f64,
}

impl HeisenbergAux {
    pub fn new(p: &ModelParams) -> Result<Self> {
        let e12 = p.e1 - p.e2;
        let w = e12.hypot(2.0 * p.j);
        if w == 0.0 {
            return Err(Error::param("j", "E1 = E2 with J = 0 makes W vanish"));
        }
        Ok(HeisenbergAux { e12, w })
    }
}

/// Auxiliary quantities of the entropy expressions at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyAux {
    /// `sqrt(1 - 4 f00 f11 sin^2(2Jt))` (Ising qubit).
    pub x: f64,
    /// Heisenberg qubit, as printed.
    pub x1: f64,
    /// Heisenberg qubit, as printed.
    pub y1: f64,
    /// Heisenberg thermal spin, as printed.
    pub x2: f64,
}

impl EntropyAux {
    pub fn new(p: &ModelParams, pops: &ThermalPopulations, t: f64) -> Result<Self> {
        let HeisenbergAux { e12: _, w } = HeisenbergAux::new(p)?;
        let (f00, f11, j) = (pops.f00, pops.f11, p.j);
        let s2jt = (2.0 * j * t).sin();
        let c2jt = (2.0 * j * t).cos();
        let stw = (t * w).sin();
        let s2tw = (2.0 * t * w).sin();
        let w2 = w * w;
        let w4 = w2 * w2;
        let df = f00 - f11;
        let ff = f00 * f11;

        let x = (1.0 - 4.0 * ff * s2jt * s2jt).max(0.0).sqrt();

        let k = quartic_term(p, pops, t, w);
        let y1 =
            ff * s2jt * s2jt - 4.0 * k + j * j * stw * stw * (1.0 - 4.0 * ff * s2jt * s2jt) / w2;
        let x1 = (1.0 - 4.0 * y1 + 4.0 * k).max(0.0).sqrt();

        let x2 = (df * df * (w2 - 4.0 * j * j * stw * stw).powi(2) / w4
            + 4.0 * j * j * (1.0 - 4.0 * ff * c2jt * c2jt) * s2tw * s2tw / w2)
            .max(0.0)
            .sqrt();

        Ok(EntropyAux { x, x1, y1, x2 })
    }
}

/// `J^4 (f00 - f11)^2 sin^4(tW) / W^4`
fn quartic_term(p: &ModelParams, pops: &ThermalPopulations, t: f64, w: f64) -> f64 {
    let df = pops.f00 - pops.f11;
    p.j.powi(4) * df * df * (t * w).sin().powi(4) / w.powi(4)
}

pub(crate) fn heis_density_matrix(
    p: &ModelParams,
    pops: &ThermalPopulations,
    t: f64,
) -> Result<CMatrix> {
    let HeisenbergAux { e12, w } = HeisenbergAux::new(p)?;
    let (f00, f11, j) = (pops.f00, pops.f11, p.j);
    let (e1, e2) = (p.e1, p.e2);
    let stw = (t * w).sin();
    let ctw = (t * w).cos();
    let c2tw = (2.0 * t * w).cos();
    let s2tw = (2.0 * t * w).sin();
    let w2 = w * w;
    let phase_up = Complex64::from_polar(1.0, t * (e1 + e2 + 2.0 * j));
    let phase_dn = Complex64::from_polar(1.0, t * (e1 + e2 - 2.0 * j));
    let rotor = Complex64::new(w * ctw, e12 * stw);
    let re = |x: f64| Complex64::new(x, 0.0);

    let mut m = CMatrix::zeros(4);
    m[(0, 0)] = re(0.5 * f00);
    m[(3, 3)] = re(0.5 * f11);
    m[(1, 1)] = re((f11 * (2.0 * j * j * c2tw + e12 * e12 + 2.0 * j * j)
        + 4.0 * f00 * j * j * stw * stw)
        / (2.0 * w2));
    m[(2, 2)] = re((f00 * (2.0 * j * j * c2tw + e12 * e12 + 2.0 * j * j)
        + 4.0 * f11 * j * j * stw * stw)
        / (2.0 * w2));
    m[(0, 1)] = -I * j * f00 * phase_up * stw / w;
    m[(0, 2)] = f00 * phase_up * rotor / (2.0 * w);
    m[(1, 2)] = 0.5 * j * (f00 - f11) * Complex64::new(e12 * c2tw - e12, w * s2tw) / w2;
    m[(2, 3)] = I * f11 * j * phase_dn * stw / w;
    m[(1, 3)] = f11 * phase_dn * rotor / (2.0 * w);
    // (0, 3) stays zero.
    for r in 0..4 {
        for c in (r + 1)..4 {
            m[(c, r)] = m[(r, c)].conj();
        }
    }
    Ok(m)
}

/// Full two-spin density matrix under Heisenberg coupling, component by
/// component as printed, lower triangle by Hermitian completion.
pub fn heis_density(p: &ModelParams, pops: &ThermalPopulations, t: f64) -> Result<DensityMatrix> {
    require(p, CouplingKind::Heisenberg)?;
    DensityMatrix::new(heis_density_matrix(p, pops, t)?)
}

pub(crate) fn heis_reduced_matrix(
    p: &ModelParams,
    pops: &ThermalPopulations,
    t: f64,
    keep: Subsystem,
) -> Result<CMatrix> {
    let HeisenbergAux { e12, w } = HeisenbergAux::new(p)?;
    let (f00, f11, j) = (pops.f00, pops.f11, p.j);
    let w2 = w * w;
    let c2tw = (2.0 * t * w).cos();
    let stw = (t * w).sin();
    let osc = 2.0 * (f00 - f11) * j * j * c2tw;
    let sum = p.e1 + p.e2 + 2.0 * j;

    let (d0, d1, off) = match keep {
        Subsystem::Thermal => {
            let b00 = 0.5 * f00 + (e12 * e12 * f00 + 2.0 * j * j + osc) / (2.0 * w2);
            let b11 = 0.5 * f11 + (e12 * e12 * f11 + 2.0 * j * j - osc) / (2.0 * w2);
            let b01 = I
                * j
                * Complex64::from_polar(1.0, -sum * t)
                * (f00 - Complex64::from_polar(f11, 4.0 * j * t))
                * stw
                / (2.0 * w);
            (b00, b11, b01)
        }
        Subsystem::Qubit => {
            let a00 = 0.5 * f00 + (e12 * e12 * f11 + 2.0 * j * j - osc) / (2.0 * w2);
            let a11 = 0.5 * f11 + (e12 * e12 * f00 + 2.0 * j * j + osc) / (2.0 * w2);
            let a01 = Complex64::from_polar(1.0, sum * t)
                * (f00 + Complex64::from_polar(f11, -4.0 * j * t))
                * Complex64::new(w * (t * w).cos(), e12 * stw)
                / (2.0 * w);
            (a00, a11, a01)
        }
    };
    Ok(CMatrix::from_rows([
        [Complex64::new(d0, 0.0), off],
        [off.conj(), Complex64::new(d1, 0.0)],
    ]))
}

/// Reduced thermal-spin (`b_ij`) or qubit (`a_ij`) matrix as printed.
pub fn heis_reduced(
    p: &ModelParams,
    pops: &ThermalPopulations,
    t: f64,
    keep: Subsystem,
) -> Result<DensityMatrix> {
    require(p, CouplingKind::Heisenberg)?;
    DensityMatrix::new(heis_reduced_matrix(p, pops, t, keep)?)
}

/// Which version of the thermal-spin entropy expression to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThermalEntropyForm {
    /// `½ ln 4 - ½ ln(1 - X2^2) + X2 ln((1-X2)/(1+X2))`
    Literal,
    /// Same with `½ X2 ln(...)`, the generic two-level entropy for
    /// eigenvalues `(1 ± X2)/2`.
    Repaired,
}

pub fn heis_thermal_entropy(
    p: &ModelParams,
    pops: &ThermalPopulations,
    t: f64,
    form: ThermalEntropyForm,
) -> Result<f64> {
    require(p, CouplingKind::Heisenberg)?;
    let x2 = EntropyAux::new(p, pops, t)?.x2;
    let one_minus_sq = (1.0 - x2) * (1.0 + x2);
    if one_minus_sq < DEGENERATE_THRESHOLD {
        return Ok(0.0);
    }
    let log_ratio = ((1.0 - x2) / (1.0 + x2)).ln();
    let coef = match form {
        ThermalEntropyForm::Literal => 1.0,
        ThermalEntropyForm::Repaired => 0.5,
    };
    Ok(0.5 * 4f64.ln() - 0.5 * one_minus_sq.ln() + coef * x2 * log_ratio)
}

/// Qubit entropy as printed, or the thermal-spin entropy in its literal
/// form (see [`heis_thermal_entropy`] for the repaired one).
pub fn heis_entropy(
    p: &ModelParams,
    pops: &ThermalPopulations,
    t: f64,
    which: Subsystem,
) -> Result<f64> {
    require(p, CouplingKind::Heisenberg)?;
    match which {
        Subsystem::Qubit => {
            let aux = EntropyAux::new(p, pops, t)?;
            if 4.0 * aux.y1 < DEGENERATE_THRESHOLD {
                return Ok(0.0);
            }
            // 1 - X1^2 = 4 Y1 - 4 K, formed directly to avoid cancellation.
            let w = HeisenbergAux::new(p)?.w;
            let four_q = 4.0 * aux.y1 - 4.0 * quartic_term(p, pops, t, w);
            let s = 0.5 * aux.x1 * ((four_q / (1.0 + aux.x1)) / (1.0 + aux.x1)).ln()
                - 0.5 * aux.y1.ln();
            Ok(s)
        }
        Subsystem::Thermal => heis_thermal_entropy(p, pops, t, ThermalEntropyForm::Literal),
    }
}

/// Transverse qubit polarization as printed:
///
/// ```text
/// (E12 + W) e^{-it(E1+E2)} [ (f00 e^{-it(2J+W)} + f11 e^{-it(-2J+W)})
///                          - (f00 e^{-it(2J-W)} + f11 e^{-it(-2J-W)}) ] / 2W
/// ```
pub fn heis_sigma_plus(p: &ModelParams, pops: &ThermalPopulations, t: f64) -> Result<Complex64> {
    require(p, CouplingKind::Heisenberg)?;
    let HeisenbergAux { e12, w } = HeisenbergAux::new(p)?;
    let (f00, f11, j) = (pops.f00, pops.f11, p.j);
    let e = |f: f64, freq: f64| Complex64::from_polar(f, -t * freq);
    let first = e(f00, 2.0 * j + w) + e(f11, -2.0 * j + w);
    let second = e(f00, 2.0 * j - w) + e(f11, -2.0 * j - w);
    Ok((e12 + w) * e(1.0, p.e1 + p.e2) * (first - second) / (2.0 * w))
}

/// `2 conj(a01)` from the printed reduced qubit matrix; equals
/// `Tr(sigma_+ rho_1)` in the `2q + s` basis.
pub fn heis_sigma_plus_from_a01(
    p: &ModelParams,
    pops: &ThermalPopulations,
    t: f64,
) -> Result<Complex64> {
    require(p, CouplingKind::Heisenberg)?;
    let a = heis_reduced_matrix(p, pops, t, Subsystem::Qubit)?;
    Ok(a[(0, 1)].conj() * 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{ising_density_matrix, ising_entropy};
    use crate::linalg::partial_trace;
    use crate::model::{initial_state, thermal_populations, Temperature};

    fn params() -> ModelParams {
        ModelParams::figure_params(CouplingKind::Heisenberg)
    }

    fn pops(t: Temperature) -> ThermalPopulations {
        thermal_populations(1.0, t).unwrap()
    }

    #[test]
    fn aux_invariants() {
        let aux = HeisenbergAux::new(&params()).unwrap();
        assert!(aux.w >= aux.e12.abs() && aux.w >= 0.02);
        let degenerate = ModelParams::new(1.0, 1.0, 0.0, CouplingKind::Heisenberg).unwrap();
        assert!(HeisenbergAux::new(&degenerate).is_err());
        let pp = pops(Temperature::Finite(1.0));
        for t in [0.0, 1.0, 33.3, 78.5, 250.0] {
            let e = EntropyAux::new(&params(), &pp, t).unwrap();
            for v in [e.x, e.x1, e.x2] {
                assert!((-1e-12..=1.0 + 1e-12).contains(&v), "{e:?}");
            }
        }
    }

    #[test]
    fn everything_reduces_to_initial_state_at_zero() {
        let pp = pops(Temperature::Finite(1.0));
        let p = params();
        let rho0 = initial_state(&pp).unwrap();
        assert!(
            heis_density(&p, &pp, 0.0)
                .unwrap()
                .matrix()
                .max_abs_diff(rho0.matrix())
                < 1e-15
        );
        let a = heis_reduced(&p, &pp, 0.0, Subsystem::Qubit).unwrap();
        assert!(
            a.matrix()
                .max_abs_diff(&CMatrix::from_real_rows([[0.5, 0.5], [0.5, 0.5]]))
                < 1e-15
        );
        let b = heis_reduced(&p, &pp, 0.0, Subsystem::Thermal).unwrap();
        assert!(
            b.matrix()
                .max_abs_diff(&CMatrix::from_real_diag(&[pp.f00, pp.f11]))
                < 1e-15
        );
        assert_eq!(heis_entropy(&p, &pp, 0.0, Subsystem::Qubit).unwrap(), 0.0);
        let s2 = heis_thermal_entropy(&p, &pp, 0.0, ThermalEntropyForm::Repaired).unwrap();
        assert!((s2 - pp.entropy()).abs() < 1e-14);
        let sp = heis_sigma_plus_from_a01(&p, &pp, 0.0).unwrap();
        assert!((sp - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn vanishing_coupling_is_free_precession() {
        let pp = pops(Temperature::Finite(1.0));
        let heis = ModelParams::new(1e-4, 1.0, 0.0, CouplingKind::Heisenberg).unwrap();
        let ising = heis.with_coupling(CouplingKind::Ising);
        for t in [0.0, 5.0, 77.7, 301.0] {
            let h = heis_density_matrix(&heis, &pp, t).unwrap();
            let i = ising_density_matrix(&ising, &pp, t);
            assert!(h.max_abs_diff(&i) < 1e-12, "t={t}");
        }
    }

    #[test]
    fn appendix_qubit_matrix_is_trace_of_full_matrix() {
        let pp = pops(Temperature::Finite(0.7));
        let p = ModelParams::new(0.05, 0.8, 0.13, CouplingKind::Heisenberg).unwrap();
        for t in [0.3, 4.0, 17.5] {
            let full = heis_density(&p, &pp, t).unwrap();
            let reduced = partial_trace(&full, Subsystem::Qubit).unwrap();
            let printed = heis_reduced_matrix(&p, &pp, t, Subsystem::Qubit).unwrap();
            assert!(reduced.matrix().max_abs_diff(&printed) < 1e-14);
        }
    }

    #[test]
    fn thermal_diagonal_oscillation_is_small() {
        let pp = pops(Temperature::Finite(1.0));
        let p = params();
        let b00: Vec<f64> = (0..=4000)
            .map(|k| {
                heis_reduced_matrix(&p, &pp, k as f64 * 0.1, Subsystem::Thermal).unwrap()[(0, 0)].re
            })
            .collect();
        let (lo, hi) = b00
            .iter()
            .fold((f64::MAX, f64::MIN), |(l, h), &v| (l.min(v), h.max(v)));
        assert!((hi - lo) / 2.0 <= 2.0 * (p.j / p.e2).powi(2));
    }

    #[test]
    fn literal_thermal_entropy_differs_from_repaired() {
        let pp = pops(Temperature::Finite(1.0));
        let p = params();
        let lit = heis_thermal_entropy(&p, &pp, 10.0, ThermalEntropyForm::Literal).unwrap();
        let rep = heis_thermal_entropy(&p, &pp, 10.0, ThermalEntropyForm::Repaired).unwrap();
        assert!(lit < 0.0);
        assert!((rep - pp.entropy()).abs() < 1e-3);
        assert_eq!(
            heis_entropy(&p, &pp, 10.0, Subsystem::Thermal).unwrap(),
            lit
        );
    }

    #[test]
    fn qubit_entropy_close_to_ising_in_weak_coupling() {
        let pp = pops(Temperature::Finite(1.0));
        let p = params();
        for k in 0..=400 {
            let t = k as f64;
            let h = heis_entropy(&p, &pp, t, Subsystem::Qubit).unwrap();
            let i = ising_entropy(&pp, p.j, t, Subsystem::Qubit);
            assert!((h - i).abs() <= 1e-3, "t={t}: {h} vs {i}");
        }
    }

    #[test]
    fn wrong_coupling_rejected() {
        let p = params().with_coupling(CouplingKind::Ising);
        let pp = pops(Temperature::Infinite);
        assert!(heis_density(&p, &pp, 1.0).is_err());
        assert!(heis_entropy(&p, &pp, 1.0, Subsystem::Qubit).is_err());
        assert!(heis_sigma_plus(&p, &pp, 1.0).is_err());
    }

    #[test]
    fn printed_sigma_plus_is_suppressed_in_weak_coupling() {
        // The (E12 + W) prefactor is ~2 J^2 / |E12| when E2 dominates.
        let pp = pops(Temperature::Finite(1.0));
        let sp = heis_sigma_plus(&params(), &pp, 10.0).unwrap();
        assert!(sp.norm() < 1e-3);
    }
}
