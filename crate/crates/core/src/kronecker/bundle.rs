use super::KroneckerRep;
use crate::error::{Error, Result};
use crate::exact::{Field, LaurentPoly, Matrix, Scalar};
use crate::p1::BundleData;

/// Global sections of the bundle glued by `mu`: vectors `v ∈ k[y]^r` of
/// degree `≤ bound` with `mu·v ∈ k[y^-1]^r`. Coefficient `t` of component `i`
/// sits at index `i·(bound+1) + t`.
struct Sections {
    bound: i64,
    basis: Vec<Vec<Scalar>>,
    free: Vec<usize>,
}

impl Sections {
    fn compute(mu: &Matrix<LaurentPoly>, bound: i64) -> Sections {
        let field = mu.field();
        let r = mu.rows();
        if bound < 0 || r == 0 {
            return Sections { bound, basis: vec![], free: vec![] };
        }
        let width = (bound + 1) as usize;
        let top = mu.entries().iter().filter_map(LaurentPoly::top).max().unwrap_or(0);
        let positive: Vec<i64> = (1..=top + bound).collect();
        let mut m = Matrix::zeros(field, r * positive.len(), r * width);
        for row in 0..r {
            for (k, &e) in positive.iter().enumerate() {
                for i in 0..r {
                    let entry = &mu[(row, i)];
                    for t in 0..width {
                        let c = entry.coeff(e - t as i64);
                        if !c.is_zero() {
                            m[(row * positive.len() + k, i * width + t)] = c;
                        }
                    }
                }
            }
        }
        Sections { bound, basis: m.nullspace(), free: m.free_columns() }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a section (in this layout) with respect to `basis`.
    fn coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.free.iter().map(|&f| v[f].clone()).collect()
    }
}

/// Largest exponent of `y` occurring in `mu^-1`.
fn inverse_top(mu: &Matrix<LaurentPoly>) -> i64 {
    let e = mu.det().unit_parts().expect("unimodular").1;
    mu.adjugate().entries().iter().filter_map(LaurentPoly::top).max().unwrap_or(0) - e
}

/// `dim H⁰(F)` for the bundle glued by `mu`.
pub fn global_sections(bundle: &BundleData) -> usize {
    let mu = bundle.mu();
    if mu.rows() == 0 {
        return 0;
    }
    Sections::compute(mu, inverse_top(mu)).dim()
}

/// Smallest `N` such that every summand of `F(N)` has nonnegative twist,
/// found from section counts alone: `h⁰(F(N-1)) = deg F + r·N` holds exactly
/// when all twists of `F(N)` are `≥ 0`.
pub fn nonnegative_twist(bundle: &BundleData) -> i64 {
    let r = bundle.rank() as i64;
    if r == 0 {
        return 0;
    }
    let deg = -bundle.det_exponent();
    let ok = |n: i64| global_sections(&bundle.twist(n - 1)) as i64 == deg + r * n;
    let mut n = 0;
    if ok(n) {
        while ok(n - 1) {
            n -= 1;
        }
    } else {
        while !ok(n) {
            n += 1;
        }
    }
    n
}

/// `Hom(O ⊕ O(1), F)` read directly off the gluing matrix.
///
/// `V0 = H⁰(F)` and `V1 = H⁰(F(-1))` are computed as kernels in the chart
/// `k[y]`; there `x0` acts as the inclusion `V1 → V0` and `x1` as
/// multiplication by `y`.
pub fn tilt_bundle(bundle: &BundleData) -> Result<KroneckerRep> {
    let mu = bundle.mu();
    let field: Field = mu.field();
    if mu.rows() == 0 {
        return Ok(KroneckerRep::zero(field));
    }
    let r = mu.rows();
    let b = inverse_top(mu);
    let s0 = Sections::compute(mu, b);
    let s1 = Sections::compute(&mu.map(|e| e.shift(1)), b - 1);
    if s1.dim() as i64 != -bundle.det_exponent() {
        return Err(Error::NegativeTwistPresent);
    }
    let w0 = (s0.bound + 1).max(0) as usize;
    let w1 = (s1.bound + 1).max(0) as usize;
    let embed = |v: &[Scalar], shift: usize| -> Vec<Scalar> {
        let mut out = vec![field.zero(); r * w0];
        for i in 0..r {
            for t in 0..w1 {
                out[i * w0 + t + shift] = v[i * w1 + t].clone();
            }
        }
        out
    };
    let (d1, d0) = (s1.dim(), s0.dim());
    let mut f0 = Matrix::zeros(field, d0, d1);
    let mut f1 = Matrix::zeros(field, d0, d1);
    for (j, v) in s1.basis.iter().enumerate() {
        for (m, shift) in [(&mut f0, 0), (&mut f1, 1)] {
            for (i, x) in s0.coords(&embed(v, shift)).into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
    }
    KroneckerRep::new(field, d1, d0, f0, f1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_laurent;
    use crate::kronecker::{pencil_decompose, KroneckerLabel};

    fn bundle(rows: &[&[&str]]) -> BundleData {
        let f = Field::Rationals;
        let rows = rows.iter().map(|r| r.iter().map(|s| parse_laurent(f, s).unwrap()).collect()).collect();
        BundleData::new(Matrix::from_rows(f, rows)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(tilt_bundle(&bundle(&[&["1"]])).unwrap().dims(), (0, 1));
        assert_eq!(tilt_bundle(&bundle(&[&["y^-1", "0"], &["0", "y^-1"]])).unwrap().dims(), (2, 4));
        let b = bundle(&[&["y^-1", "1"], &["0", "y^-1"]]);
        let rep = tilt_bundle(&b).unwrap();
        assert_eq!(rep.dims(), (2, 4));
        assert_eq!(pencil_decompose(&rep).unwrap(), vec![KroneckerLabel::Preproj(1), KroneckerLabel::Preproj(1)]);
    }

    #[test]
    fn single_line_bundles_match_tilt_label() {
        for n in 0..6 {
            let rep = tilt_bundle(&bundle(&[&[&format!("y^{}", -n)]])).unwrap();
            assert_eq!(rep, crate::kronecker::tilt_label(&crate::p1::P1Label::LB(n), Field::Rationals).0);
        }
    }

    #[test]
    fn refuses_negative_twists() {
        let b = bundle(&[&["y", "0"], &["0", "y^-1"]]);
        assert_eq!(tilt_bundle(&b), Err(Error::NegativeTwistPresent));
        assert_eq!(nonnegative_twist(&b), 1);
        assert_eq!(tilt_bundle(&b.twist(1)).unwrap().dims(), (2, 4));
        assert_eq!(nonnegative_twist(&bundle(&[&["y^-3"]])), -3);
    }
}
