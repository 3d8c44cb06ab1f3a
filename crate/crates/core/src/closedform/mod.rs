//! Direct evaluation of the closed-form solutions of the two-spin model.
//!
//! Everything here is a literal transcription of a printed expression and
//! never touches the propagator; agreement with the numerical reference is
//! established only by [`crate::audit`]. Where a printed expression is
//! singular but has a finite limit, the limit is returned.

mod heisenberg;
mod ising;

pub use heisenberg::{
    heis_density, heis_entropy, heis_reduced, heis_sigma_plus, heis_sigma_plus_from_a01,
    heis_thermal_entropy, EntropyAux, HeisenbergAux, ThermalEntropyForm,
};
pub(crate) use heisenberg::{heis_density_matrix, heis_reduced_matrix};
pub use ising::{ising_density, ising_entropy, ising_reduced, ising_sigma_plus};
pub(crate) use ising::{ising_density_matrix, ising_reduced_matrix};

use crate::error::{Error, Result};
use crate::model::{CouplingKind, ModelParams};

/// Below this value of `1 - X^2` a two-level entropy is reported as its
/// pure-state limit, 0.
pub const DEGENERATE_THRESHOLD: f64 = 1e-14;

fn require(p: &ModelParams, expected: CouplingKind) -> Result<()> {
    if p.coupling != expected {
        return Err(Error::WrongCoupling {
            expected,
            found: p.coupling,
        });
    }
    Ok(())
}

/// `½ X ln((1-X)/(1+X)) - ½ ln(q)` where `4 q = 1 - X^2`, the form shared by
/// the qubit entropies. `1 - X` is formed as `4q / (1 + X)` to avoid
/// cancellation near the pure state.
fn two_level_entropy_from_q(x: f64, four_q: f64) -> f64 {
    if four_q < DEGENERATE_THRESHOLD {
        return 0.0;
    }
    let one_minus_x = four_q / (1.0 + x);
    0.5 * x * (one_minus_x / (1.0 + x)).ln() - 0.5 * (four_q / 4.0).ln()
}
