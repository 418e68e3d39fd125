use super::subspace::{image, intersect, kernel, preimage};
use super::{KroneckerLabel, KroneckerRep};
use crate::error::{Error, Result};
use crate::exact::{factor, invariant_factors, Matrix, Poly, Scalar};
use crate::p1::ClosedPoint;

/// `K_k`, the dimension of the space of polynomial kernel vectors of degree
/// `≤ k` of the pencil `f1 − y·f0`, for `k = 0..=kmax`.
///
/// A kernel vector `Σ v_t y^t` is a chain with `f1 v_0 = 0`,
/// `f1 v_t = f0 v_{t-1}` and `f0 v_k = 0`. `C_t` is the space of chains of
/// length `t+1` satisfying the first two conditions and `L_t` its image under
/// `c ↦ v_t`.
fn kernel_counts(f0: &Matrix<Scalar>, f1: &Matrix<Scalar>, kmax: usize) -> Vec<usize> {
    let field = f0.field();
    let n = f0.cols();
    let ker_f0 = kernel(f0);
    let ker_f1 = kernel(f1);
    let im_f1 = image(f1, &identity_basis(field, n));
    let w = preimage(f0, &im_f1);
    let mut l = ker_f1.clone();
    let mut c = ker_f1.len();
    let mut out = Vec::with_capacity(kmax + 1);
    for _ in 0..=kmax {
        out.push(c - l.len() + intersect(field, n, &l, &ker_f0).len());
        let extendable = c - l.len() + intersect(field, n, &l, &w).len();
        c = ker_f1.len() + extendable;
        l = preimage(f1, &image(f0, &l));
    }
    out
}

fn identity_basis(field: crate::exact::Field, n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| (0..n).map(|j| field.from_i64((i == j) as i64)).collect()).collect()
}

/// Multiplicities of minimal indices `0..=kmax` read off the second
/// differences of `K_k`: `K_k = Σ_i max(0, k − ε_i + 1)`.
fn minimal_indices(f0: &Matrix<Scalar>, f1: &Matrix<Scalar>) -> Vec<(usize, usize)> {
    let kmax = f0.cols();
    let k = kernel_counts(f0, f1, kmax);
    let at = |i: isize| if i < 0 { 0 } else { k[i as usize] as isize };
    (0..=kmax)
        .map(|e| {
            let e = e as isize;
            (e as usize, (at(e) - 2 * at(e - 1) + at(e - 2)) as usize)
        })
        .filter(|&(_, m)| m > 0)
        .collect()
}

fn poly_pencil(a: &Matrix<Scalar>, b: &Matrix<Scalar>) -> Matrix<Poly> {
    // a − y·b
    let field = a.field();
    let data = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| Poly::from_coeffs(field, vec![x.clone(), -y]))
        .collect();
    Matrix::from_vec(field, a.rows(), a.cols(), data)
}

/// Kronecker canonical form of a representation, as a sorted multiset of
/// indecomposable labels.
///
/// Preinjective summands are the column minimal indices of `f1 − y·f0`
/// (`I(m)` has index `m−1`), preprojective ones the row minimal indices
/// (`P(n)` has index `n`). The regular part comes from the elementary
/// divisors of the pencil at finite `y` and, in the chart `z = 1/y`, at `z = 0`.
pub fn pencil_decompose(rep: &KroneckerRep) -> Result<Vec<KroneckerLabel>> {
    let mut out = Vec::new();
    for (e, m) in minimal_indices(&rep.f0, &rep.f1) {
        out.extend(std::iter::repeat_n(KroneckerLabel::Preinj(e as u32 + 1), m));
    }
    for (e, m) in minimal_indices(&rep.f0.transpose(), &rep.f1.transpose()) {
        out.extend(std::iter::repeat_n(KroneckerLabel::Preproj(e as u32), m));
    }
    let (s1, s0) = out.iter().fold((0, 0), |(a, b), l| {
        let (x, y) = l.dims();
        (a + x, b + y)
    });
    if s1 > rep.d1 || s0 > rep.d0 || rep.d1 - s1 != rep.d0 - s0 {
        return Err(Error::InternalInconsistency(format!(
            "singular blocks of size ({s1},{s0}) do not fit in ({},{})",
            rep.d1, rep.d0
        )));
    }
    let regular = rep.d1 - s1;
    if regular > 0 {
        let mut found = 0;
        for inv in invariant_factors(&poly_pencil(&rep.f1, &rep.f0)) {
            if inv.is_constant() {
                continue;
            }
            for (f, r) in factor(&inv)? {
                found += f.deg0() * r as usize;
                out.push(KroneckerLabel::Regular(ClosedPoint::Finite(f), r));
            }
        }
        // z·f1 − f0, up to sign.
        let neg_f0 = rep.f0.map(|x| -x);
        for inv in invariant_factors(&poly_pencil(&neg_f0, &rep.f1.map(|x| -x))) {
            let r = inv.low_order();
            if r > 0 {
                found += r;
                out.push(KroneckerLabel::Regular(ClosedPoint::Infinity, r as u32));
            }
        }
        if found != regular {
            return Err(Error::InternalInconsistency(format!(
                "regular part has dimension {regular} but elementary divisors account for {found}"
            )));
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Field;
    use crate::kronecker::tilt_label;
    use crate::p1::P1Label;

    fn q() -> Field {
        Field::Rationals
    }

    fn rep(d1: usize, d0: usize, f0: &[Vec<i64>], f1: &[Vec<i64>]) -> KroneckerRep {
        let m = |v: &[Vec<i64>]| {
            if v.is_empty() {
                Matrix::zeros(q(), d0, d1)
            } else {
                Matrix::from_i64(q(), v)
            }
        };
        KroneckerRep::new(q(), d1, d0, m(f0), m(f1)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(pencil_decompose(&rep(0, 1, &[], &[])).unwrap(), vec![KroneckerLabel::Preproj(0)]);
        let lam = rep(1, 1, &[vec![1]], &[vec![3]]);
        assert_eq!(
            pencil_decompose(&lam).unwrap(),
            vec![KroneckerLabel::Regular(ClosedPoint::at(&q().from_i64(3)), 1)]
        );
        let p1 = rep(1, 2, &[vec![1], vec![0]], &[vec![0], vec![1]]);
        assert_eq!(pencil_decompose(&p1).unwrap(), vec![KroneckerLabel::Preproj(1)]);
        assert_eq!(pencil_decompose(&rep(1, 0, &[], &[])).unwrap(), vec![KroneckerLabel::Preinj(1)]);
    }

    #[test]
    fn canonical_reps_decompose_to_themselves() {
        let pts = [
            ClosedPoint::Infinity,
            ClosedPoint::at(&q().zero()),
            ClosedPoint::parse(q(), "y^2+1").unwrap(),
        ];
        for n in 0..5u32 {
            let mut ls = vec![KroneckerLabel::Preproj(n), KroneckerLabel::Preinj(n + 1)];
            for p in &pts {
                ls.push(KroneckerLabel::Regular(p.clone(), n + 1));
            }
            for l in ls {
                assert_eq!(pencil_decompose(&l.rep(q())).unwrap(), vec![l.clone()], "{l}");
            }
        }
    }

    #[test]
    fn direct_sums_are_additive() {
        let parts = [
            tilt_label(&P1Label::LB(2), q()).0,
            tilt_label(&P1Label::LB(-2), q()).0,
            tilt_label(&P1Label::Tor(ClosedPoint::Infinity, 2), q()).0,
            tilt_label(&P1Label::Tor(ClosedPoint::at(&q().from_i64(1)), 3), q()).0,
            tilt_label(&P1Label::LB(0), q()).0,
        ];
        let mut sum = KroneckerRep::zero(q());
        let mut want = vec![];
        for p in &parts {
            sum = sum.direct_sum(p);
            want.extend(pencil_decompose(p).unwrap());
        }
        want.sort();
        assert_eq!(pencil_decompose(&sum).unwrap(), want);
    }
}
