//! Exact arithmetic: ℚ and 𝔽_p scalars, dense polynomials in `y`, Laurent
//! polynomials in `y, y^-1`, matrices over all three, factorization, Smith
//! normal form and a text/JSON surface for polynomials and matrices.

mod factor;
mod laurent;
mod matrix;
mod parse;
mod poly;
mod scalar;
mod smith;

pub mod intmat;

pub use factor::{factor, is_irreducible, squarefree_decomposition};
pub use laurent::{laurent_unit, LaurentPoly};
pub use matrix::{is_unimodular, is_unimodular_poly, Echelon, Matrix, RingTag};
pub use parse::{
    laurent_matrix_from_json, laurent_matrix_to_json, parse_laurent, parse_poly, poly_matrix_from_json,
    poly_matrix_to_json, Entry, MatrixJson,
};
pub use poly::Poly;
pub use scalar::{parse_scalar, Field, Scalar, MAX_PRIME};
pub use smith::{invariant_factors, smith_normal_form, SmithForm};

use crate::error::{Error, Result};

/// Commutative ring with a field of definition; the three coefficient rings
/// of the crate implement it.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero(field: Field) -> Self;
    fn one(field: Field) -> Self;
    fn field_of(&self) -> Field;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `self / d` when `d` divides `self` exactly.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

/// Monic gcd of two polynomials over the same field.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.field() != b.field() {
        return Err(Error::MixedFields);
    }
    Ok(a.gcd(b))
}
