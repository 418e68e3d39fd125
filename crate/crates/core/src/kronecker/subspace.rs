//! Subspaces of `k^n` as lists of basis vectors.

use crate::exact::{Field, Matrix, Scalar};

pub(crate) type Basis = Vec<Vec<Scalar>>;

/// Matrix whose columns are the given blocks of column vectors, side by side.
fn columns(field: Field, rows: usize, blocks: &[&[Vec<Scalar>]]) -> Matrix<Scalar> {
    let cols: Vec<&Vec<Scalar>> = blocks.iter().flat_map(|b| b.iter()).collect();
    let data = (0..rows).flat_map(|i| cols.iter().map(move |c| c[i].clone())).collect();
    Matrix::from_vec(field, rows, cols.len(), data)
}

/// Linearly independent basis of the span.
pub(crate) fn span(field: Field, dim: usize, vecs: &[Vec<Scalar>]) -> Basis {
    if vecs.is_empty() {
        return vec![];
    }
    let m = Matrix::from_vec(field, vecs.len(), dim, vecs.iter().flatten().cloned().collect());
    let e = m.rref();
    (0..e.pivots.len()).map(|i| e.reduced.row(i).to_vec()).collect()
}

pub(crate) fn image(f: &Matrix<Scalar>, basis: &[Vec<Scalar>]) -> Basis {
    let imgs: Vec<Vec<Scalar>> = basis.iter().map(|v| f.mul_vec(v)).collect();
    span(f.field(), f.rows(), &imgs)
}

/// `{v : f v ∈ span(s)}`.
pub(crate) fn preimage(f: &Matrix<Scalar>, s: &[Vec<Scalar>]) -> Basis {
    let neg: Vec<Vec<Scalar>> = s.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
    let fcols: Vec<Vec<Scalar>> = (0..f.cols()).map(|j| (0..f.rows()).map(|i| f[(i, j)].clone()).collect()).collect();
    let m = columns(f.field(), f.rows(), &[&fcols, &neg]);
    let ker: Vec<Vec<Scalar>> = m.nullspace().into_iter().map(|v| v[..f.cols()].to_vec()).collect();
    span(f.field(), f.cols(), &ker)
}

pub(crate) fn intersect(field: Field, dim: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Basis {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let neg: Vec<Vec<Scalar>> = b.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
    let m = columns(field, dim, &[a, &neg]);
    let am = columns(field, dim, &[a]);
    let vecs: Vec<Vec<Scalar>> = m.nullspace().into_iter().map(|x| am.mul_vec(&x[..a.len()])).collect();
    span(field, dim, &vecs)
}

pub(crate) fn kernel(f: &Matrix<Scalar>) -> Basis {
    f.nullspace()
}
