use rand::Rng;

use super::BundleData;
use crate::exact::{Field, LaurentPoly, Matrix, Ring, Scalar};

/// `μ = U·D·V` with `U ∈ GL(k[y^-1])`, `V ∈ GL(k[y])` and
/// `D = diag(y^-n_1, …, y^-n_r)`, `n_1 ≤ … ≤ n_r`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub u: Matrix<LaurentPoly>,
    pub d: Matrix<LaurentPoly>,
    pub v: Matrix<LaurentPoly>,
    pub ty: Vec<i64>,
}

/// Splitting type of a vector bundle with explicit factors.
///
/// `P = y^N μ` is a polynomial matrix; it is column reduced over `k[y]`
/// (leading column coefficient matrix made invertible by degree-lowering
/// column operations), after which `P = U'·diag(y^{d_j})` with `U'` a unit
/// over `k[y^-1]`.
pub fn birkhoff_split(bundle: &BundleData) -> Splitting {
    let mu = bundle.mu();
    let field = mu.field();
    let r = mu.rows();
    if r == 0 {
        let e = Matrix::zeros(field, 0, 0);
        return Splitting { u: e.clone(), d: e.clone(), v: e, ty: vec![] };
    }
    let n = -mu.entries().iter().filter(|e| !e.is_zero()).map(LaurentPoly::valuation).min().unwrap();
    let mut p = mu.map(|e| e.shift(n));
    let mut v: Matrix<LaurentPoly> = Matrix::identity(field, r);
    loop {
        let degs: Vec<i64> = (0..r).map(|j| col_degree(&p, j)).collect();
        let lead = Matrix::from_vec(
            field,
            r,
            r,
            (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).map(|(i, j)| p[(i, j)].coeff(degs[j])).collect(),
        );
        let Some(c) = lead.nullspace().into_iter().next() else { break };
        let j0 = (0..r).filter(|&j| !c[j].is_zero()).max_by_key(|&j| (degs[j], std::cmp::Reverse(j))).unwrap();
        let inv = c[j0].inv().unwrap();
        for j in (0..r).filter(|&j| j != j0 && !c[j].is_zero()) {
            let a = LaurentPoly::monomial(&c[j] * &inv, degs[j0] - degs[j]);
            p.add_col_multiple(j0, j, &a);
            v.add_row_multiple(j, j0, &a.neg());
        }
    }
    let degs: Vec<i64> = (0..r).map(|j| col_degree(&p, j)).collect();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&j| (n - degs[j], j));
    let ty: Vec<i64> = order.iter().map(|&j| n - degs[j]).collect();
    let u = Matrix::from_vec(
        field,
        r,
        r,
        (0..r).flat_map(|i| order.iter().map(move |&j| (i, j))).map(|(i, j)| p[(i, j)].shift(-degs[j])).collect(),
    );
    let d = Matrix::diagonal(field, ty.iter().map(|&t| LaurentPoly::y_pow(field, -t)).collect());
    let v = v.select(&order, &(0..r).collect::<Vec<_>>());
    Splitting { u, d, v, ty }
}

fn col_degree(p: &Matrix<LaurentPoly>, j: usize) -> i64 {
    (0..p.rows()).filter_map(|i| p[(i, j)].top()).max().expect("nonzero column")
}

/// Product of `ops` random elementary operations over `k[y, y^-1]`
/// (row/column additions of `c·y^e` multiples, unit scalings, swaps),
/// applied to the identity.
pub fn random_unimodular<G: Rng + ?Sized>(rng: &mut G, field: Field, size: usize, ops: usize) -> Matrix<LaurentPoly> {
    let mut m: Matrix<LaurentPoly> = Matrix::identity(field, size);
    let nonzero = |rng: &mut G| -> Scalar {
        loop {
            let c = field.from_i64(rng.gen_range(-3..=3));
            if !c.is_zero() {
                return c;
            }
        }
    };
    for _ in 0..ops {
        let i = rng.gen_range(0..size);
        let mut j = rng.gen_range(0..size);
        if size > 1 {
            while j == i {
                j = rng.gen_range(0..size);
            }
        }
        let e = rng.gen_range(-2..=2);
        let on_rows = rng.gen_bool(0.5);
        match rng.gen_range(0..6) {
            0..=3 if size > 1 => {
                let c = LaurentPoly::monomial(nonzero(rng), e);
                if on_rows {
                    m.add_row_multiple(i, j, &c);
                } else {
                    m.add_col_multiple(i, j, &c);
                }
            }
            4 if size > 1 => {
                if on_rows {
                    m.swap_rows(i, j);
                } else {
                    m.swap_cols(i, j);
                }
            }
            _ => {
                let c = LaurentPoly::monomial(nonzero(rng), e);
                if on_rows {
                    m.scale_row(i, &c);
                } else {
                    m.scale_col(i, &c);
                }
            }
        }
    }
    m
}
