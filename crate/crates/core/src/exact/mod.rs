//! Exact scalars and polynomials over the Gaussian rationals.

mod bipoly;
mod gauss;
mod scalar;
mod unipoly;

pub use bipoly::{BiPoly, Var};
pub use gauss::GaussRat;
pub use scalar::Scalar;
pub use unipoly::UniPoly;

use crate::Error;

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
///
/// The result is monic and lives in the other variable; it divides `p` exactly.
pub fn content_in(p: &BiPoly, var: Var) -> Result<UniPoly, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p
        .coeffs_in(var)
        .iter()
        .fold(UniPoly::zero(), |acc, c| acc.gcd(c));
    Ok(g)
}
