//! Model definition: coupling, energies, temperature and the initial state.
//!
//! Units are natural (`hbar = k_B = 1`). The Hamiltonian is
//!
//! ```text
//! H = -E1 sz(1) - E2 sz(2) - J sz(1) sz(2)                  (Ising)
//! H = -E1 sz(1) - E2 sz(2) - J (sx sx + sy sy + sz sz)      (Heisenberg)
//! ```
//!
//! where spin 1 is the qubit and spin 2 the thermal spin.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, CMatrix, DensityMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingKind {
    Ising,
    Heisenberg,
}

impl fmt::Display for CouplingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CouplingKind::Ising => "ising",
            CouplingKind::Heisenberg => "heisenberg",
        })
    }
}

impl FromStr for CouplingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ising" => Ok(CouplingKind::Ising),
            "heisenberg" => Ok(CouplingKind::Heisenberg),
            other => Err(Error::param(
                "interaction",
                format!("expected `ising` or `heisenberg`, got `{other}`"),
            )),
        }
    }
}

/// Zeeman energies of the qubit (`e1`) and thermal spin (`e2`), coupling `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub e1: f64,
    pub e2: f64,
    pub j: f64,
    pub coupling: CouplingKind,
}

impl ModelParams {
    pub fn new(e1: f64, e2: f64, j: f64, coupling: CouplingKind) -> Result<Self> {
        let p = ModelParams {
            e1,
            e2,
            j,
            coupling,
        };
        p.validate()?;
        Ok(p)
    }

    /// `E1 = 1e-4`, `E2 = 1`, `J = 1e-2`: the parameter set of the entropy
    /// and precession figures.
    pub fn figure_params(coupling: CouplingKind) -> Self {
        ModelParams {
            e1: 1e-4,
            e2: 1.0,
            j: 1e-2,
            coupling,
        }
    }

    pub fn with_coupling(self, coupling: CouplingKind) -> Self {
        ModelParams { coupling, ..self }
    }

    /// All energies finite. `e2 > 0` is checked where a thermal state is
    /// built, so a zero Hamiltonian is still constructible.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("e1", self.e1), ("e2", self.e2), ("j", self.j)] {
            if !v.is_finite() {
                return Err(Error::param(name, format!("must be finite, got {v}")));
            }
        }
        Ok(())
    }

    /// `0 <= E1 << J << E2`, read as `E1 <= J/10` and `J <= E2/10`.
    pub fn in_weak_coupling_regime(&self) -> bool {
        self.e1 >= 0.0 && self.e1 <= self.j / 10.0 && self.j <= self.e2 / 10.0
    }
}

/// Temperature of the thermal spin (`k_B = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Temperature {
    Zero,
    Finite(f64),
    Infinite,
}

impl Temperature {
    pub fn finite(t: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::param(
                "temperature",
                format!("finite temperature must be > 0, got {t}"),
            ));
        }
        Ok(Temperature::Finite(t))
    }

    /// Label used in file names and reports: `0`, `inf`, or the number.
    pub fn label(&self) -> String {
        match self {
            Temperature::Zero => "0".into(),
            Temperature::Infinite => "inf".into(),
            Temperature::Finite(t) => format!("{t}"),
        }
    }
}

impl fmt::Display for Temperature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Temperature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "+inf" => return Ok(Temperature::Infinite),
            _ => {}
        }
        let v: f64 = s.parse().map_err(|_| {
            Error::param(
                "temperature",
                format!("expected a number, `0` or `inf`, got `{s}`"),
            )
        })?;
        if v == 0.0 {
            Ok(Temperature::Zero)
        } else if v == f64::INFINITY {
            Ok(Temperature::Infinite)
        } else {
            Temperature::finite(v)
        }
    }
}

impl Serialize for Temperature {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Temperature::Zero => serializer.serialize_f64(0.0),
            Temperature::Finite(t) => serializer.serialize_f64(*t),
            Temperature::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Temperature {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        let parsed = match Raw::deserialize(deserializer)? {
            Raw::Num(v) => {
                if v == 0.0 {
                    Ok(Temperature::Zero)
                } else {
                    Temperature::finite(v)
                }
            }
            Raw::Str(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// Boltzmann weights of the thermal spin's two levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalPopulations {
    /// Ground state (`sigma_z = +1`, energy `-E2`).
    pub f00: f64,
    /// Excited state (energy `+E2`).
    pub f11: f64,
    /// Partition function `exp(E2/T) + exp(-E2/T)`; infinite at `T = 0`.
    pub z: f64,
}

impl ThermalPopulations {
    /// Entropy of `diag(f00, f11)`, i.e. of the thermal spin.
    pub fn entropy(&self) -> f64 {
        let term = |f: f64| if f > 0.0 { -f * f.ln() } else { 0.0 };
        term(self.f00) + term(self.f11)
    }

    /// Same weights with the levels exchanged. Not a thermal state of any
    /// positive temperature; used for symmetry checks.
    pub fn swapped(&self) -> Self {
        ThermalPopulations {
            f00: self.f11,
            f11: self.f00,
            z: self.z,
        }
    }

    /// Arbitrary pair of weights summing to one.
    pub fn from_weights(f00: f64, f11: f64) -> Result<Self> {
        if !(f00 >= 0.0 && f11 >= 0.0 && ((f00 + f11) - 1.0).abs() <= 1e-14) {
            return Err(Error::param(
                "populations",
                format!("need non-negative weights summing to 1, got ({f00}, {f11})"),
            ));
        }
        Ok(ThermalPopulations {
            f00,
            f11,
            z: f64::NAN,
        })
    }
}

pub fn thermal_populations(e2: f64, temp: Temperature) -> Result<ThermalPopulations> {
    if !(e2.is_finite() && e2 > 0.0) {
        return Err(Error::param("e2", format!("must be positive, got {e2}")));
    }
    match temp {
        Temperature::Zero => Ok(ThermalPopulations {
            f00: 1.0,
            f11: 0.0,
            z: f64::INFINITY,
        }),
        Temperature::Infinite => Ok(ThermalPopulations {
            f00: 0.5,
            f11: 0.5,
            z: 2.0,
        }),
        Temperature::Finite(t) => {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::param(
                    "temperature",
                    format!("finite temperature must be > 0, got {t}"),
                ));
            }
            let beta_e = e2 / t;
            // exp(-2 beta E) form stays finite for any beta E > 0.
            let w = (-2.0 * beta_e).exp();
            let f00 = 1.0 / (1.0 + w);
            let f11 = w / (1.0 + w);
            Ok(ThermalPopulations {
                f00,
                f11,
                z: 2.0 * beta_e.cosh(),
            })
        }
    }
}

/// Two-spin Hamiltonian in the `2 q + s` basis.
pub fn hamiltonian(p: &ModelParams) -> Result<CMatrix> {
    p.validate()?;
    let ModelParams { e1, e2, j, .. } = *p;
    let mut h = CMatrix::from_real_diag(&[-e1 - e2 - j, -e1 + e2 + j, e1 - e2 + j, e1 + e2 - j]);
    if p.coupling == CouplingKind::Heisenberg {
        // sx sx + sy sy = 2 (|01><10| + |10><01|)
        h[(1, 2)] = Complex64::new(-2.0 * j, 0.0);
        h[(2, 1)] = Complex64::new(-2.0 * j, 0.0);
    }
    Ok(h)
}

/// Qubit along +x, thermal spin in `diag(f00, f11)`.
pub fn initial_state(pops: &ThermalPopulations) -> Result<DensityMatrix> {
    let qubit = CMatrix::from_real_rows([[0.5, 0.5], [0.5, 0.5]]);
    let thermal = CMatrix::from_real_diag(&[pops.f00, pops.f11]);
    DensityMatrix::new(kron(&qubit, &thermal))
}
