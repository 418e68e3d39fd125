//! Coherent sheaves on the projective line over `k`.
//!
//! Indecomposables are named by [`P1Label`]: line bundles `O(n)` and torsion
//! sheaves `O_{p,r}` of length `r` at a closed point `p`. Concrete sheaves are
//! given by a gluing matrix ([`BundleData`]) or a pair of torsion
//! presentations on the two affine charts ([`TorsionData`]).

mod birkhoff;
mod labels;
mod torsion;

pub use birkhoff::{birkhoff_split, random_unimodular, Splitting};
pub use labels::{
    ext_dim, hom_dim, is_tilting_p1, mutate, tau, tau_inverse, twist, ClosedPoint, DerivedLabel, Mutation, P1Label,
};
pub use torsion::{parse_inverse_poly, torsion_decompose, TorsionData};

use crate::error::{Error, Result};
use crate::exact::{is_unimodular, LaurentPoly, Matrix, RingTag};

/// A vector bundle given by its gluing matrix `μ` over `k[y, y^-1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleData {
    mu: Matrix<LaurentPoly>,
}

impl BundleData {
    pub fn new(mu: Matrix<LaurentPoly>) -> Result<BundleData> {
        if !is_unimodular(&mu, RingTag::Laurent) {
            return Err(Error::NotUnimodular("k[y, y^-1]"));
        }
        Ok(BundleData { mu })
    }

    pub fn mu(&self) -> &Matrix<LaurentPoly> {
        &self.mu
    }

    pub fn rank(&self) -> usize {
        self.mu.rows()
    }

    /// Exponent `e` of `det μ = c·y^e`.
    pub fn det_exponent(&self) -> i64 {
        self.mu.det().unit_parts().expect("unimodular").1
    }

    /// Gluing matrix of `F(n)`.
    pub fn twist(&self, n: i64) -> BundleData {
        BundleData { mu: self.mu.map(|e| e.shift(-n)) }
    }
}
