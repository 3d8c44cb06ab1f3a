//! Single-spin operators in the `{|0>, |1>}` basis, where `|0>` is the
//! `sigma_z = +1` eigenstate.

use num_complex::Complex64;

use super::CMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn sigma_x() -> CMatrix {
    CMatrix::from_rows([[ZERO, ONE], [ONE, ZERO]])
}

pub fn sigma_y() -> CMatrix {
    CMatrix::from_rows([[ZERO, -I], [I, ZERO]])
}

pub fn sigma_z() -> CMatrix {
    CMatrix::from_rows([[ONE, ZERO], [ZERO, -ONE]])
}

/// `sigma_x + i sigma_y`; its only nonzero entry is 2 at (0, 1), so
/// `Tr(sigma_plus rho) = 2 rho[(1, 0)]`.
pub fn sigma_plus() -> CMatrix {
    &sigma_x() + &sigma_y().scale(I)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_plus_layout() {
        let sp = sigma_plus();
        assert_eq!(sp[(0, 1)], Complex64::new(2.0, 0.0));
        assert_eq!(sp[(0, 0)], ZERO);
        assert_eq!(sp[(1, 0)], ZERO);
        assert_eq!(sp[(1, 1)], ZERO);
    }

    #[test]
    fn pauli_algebra() {
        let xy = &sigma_x() * &sigma_y();
        assert!(xy.max_abs_diff(&sigma_z().scale(I)) < 1e-15);
        for p in [sigma_x(), sigma_y(), sigma_z()] {
            assert!((&p * &p).max_abs_diff(&CMatrix::identity(2)) < 1e-15);
            assert!(p.is_hermitian(0.0));
        }
    }
}
