use std::fmt;

use super::{Field, LaurentPoly, Poly, Ring, Scalar};

/// Dense row-major matrix over a ring with a field of definition.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<R>) -> Matrix<R> {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Matrix { field, rows, cols, data }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<R>>) -> Matrix<R> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::from_vec(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix<R> {
        Matrix { field, rows, cols, data: vec![R::zero(field); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix<R> {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = R::one(field);
        }
        m
    }

    pub fn diagonal(field: Field, entries: Vec<R>) -> Matrix<R> {
        let n = entries.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Matrix<R> {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out: Matrix<R> = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c · row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)].mul(c);
            if !v.is_zero() {
                self[(dst, j)] = self[(dst, j)].add(&v);
            }
        }
    }

    /// `col[dst] += c · col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)].mul(c);
            if !v.is_zero() {
                self[(i, dst)] = self[(i, dst)].add(&v);
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &R) {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)].mul(c);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &R) {
        for i in 0..self.rows {
            self[(i, j)] = self[(i, j)].mul(c);
        }
    }

    /// Submatrix keeping the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<R> {
        let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone())).collect();
        Matrix { field: self.field, rows: rows.len(), cols: cols.len(), data }
    }

    /// Determinant by fraction-free (Bareiss) elimination; needs exact division.
    pub fn det(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one(self.field);
        }
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = R::one(self.field);
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign_flip = !sign_flip;
                    }
                    None => return R::zero(self.field),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[(i, j)].mul(&m[(k, k)]).sub(&m[(i, k)].mul(&m[(k, j)]));
                    m[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[(i, k)] = R::zero(self.field);
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign_flip {
            d.neg()
        } else {
            d
        }
    }

    /// Determinant by cofactor expansion along the first row. Exponential; for
    /// cross-checking small matrices.
    pub fn det_cofactor(&self) -> R {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return R::one(self.field);
        }
        if n == 1 {
            return self[(0, 0)].clone();
        }
        let mut acc = R::zero(self.field);
        let rows: Vec<usize> = (1..n).collect();
        for j in 0..n {
            if self[(0, j)].is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = self[(0, j)].mul(&self.select(&rows, &cols).det_cofactor());
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// Adjugate matrix, so that `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Matrix<R> {
        assert!(self.is_square());
        let n = self.rows;
        let mut adj = Matrix::zeros(self.field, n, n);
        if n == 1 {
            adj[(0, 0)] = R::one(self.field);
            return adj;
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.select(&rows, &cols).det();
                adj[(i, j)] = if (i + j) % 2 == 0 { minor } else { minor.neg() };
            }
        }
        adj
    }
}

impl<R> std::ops::Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<R> std::ops::IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<R: fmt::Display> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "] over {}", self.field)
    }
}

/// Which coordinate ring a unimodularity check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingTag {
    Field,
    /// `k[y]` (also `k[y^-1]` when entries are read in the inverse variable).
    Polynomial,
    /// `k[y, y^-1]`.
    Laurent,
}

/// Determinant-is-a-unit test for matrices whose entries are Laurent polynomials,
/// interpreted in the ring named by `tag`. For `Polynomial` entries with negative
/// exponents are rejected unless every entry is a polynomial in `y^-1`, in which
/// case the check is performed over `k[y^-1]`.
pub fn is_unimodular(m: &Matrix<LaurentPoly>, tag: RingTag) -> bool {
    if !m.is_square() {
        return false;
    }
    let d = m.det();
    match tag {
        RingTag::Laurent => d.is_unit(),
        RingTag::Polynomial => {
            let in_y = m.entries().iter().all(LaurentPoly::is_polynomial);
            let in_inv = m.entries().iter().all(LaurentPoly::is_polynomial_in_inverse);
            (in_y || in_inv) && d.unit_parts().is_some_and(|(_, e)| e == 0)
        }
        RingTag::Field => {
            m.entries().iter().all(|e| e.is_zero() || e.unit_parts().is_some_and(|(_, x)| x == 0))
                && d.unit_parts().is_some_and(|(_, e)| e == 0)
        }
    }
}

/// Unimodularity of a polynomial matrix over `k[y]`.
pub fn is_unimodular_poly(m: &Matrix<Poly>) -> bool {
    m.is_square() && m.det().is_unit()
}

impl Ring for Scalar {
    fn zero(field: Field) -> Self {
        field.zero()
    }
    fn one(field: Field) -> Self {
        field.one()
    }
    fn field_of(&self) -> Field {
        self.field()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        !Scalar::is_zero(self)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self * &i)
    }
}

/// Reduced row echelon data of a matrix over a field.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix<Scalar>,
    pub pivots: Vec<usize>,
}

impl Matrix<Scalar> {
    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Matrix<Scalar> {
        Matrix::from_rows(field, rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect())
    }

    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(p, r);
            let inv = m[(r, c)].inv().unwrap();
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = -&m[(i, c)];
                    for j in c..m.cols {
                        if !m[(r, j)].is_zero() {
                            let v = &m[(r, j)] * &f;
                            m[(i, j)] = &m[(i, j)] + &v;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel `{x : M x = 0}`, one vector per free column.
    ///
    /// The basis vector attached to free column `f` has a 1 at position `f`
    /// and 0 at every other free position, so coordinates of a kernel vector
    /// are read off its free positions; see [`Matrix::free_columns`].
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let e = self.rref();
        let free = free_of(self.cols, &e.pivots);
        let zero = self.field.zero();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero.clone(); self.cols];
                v[f] = self.field.one();
                for (row, &p) in e.pivots.iter().enumerate() {
                    v[p] = -&e.reduced[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Non-pivot columns of the reduced echelon form, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        free_of(self.cols, &self.rref().pivots)
    }

    pub fn inverse(&self) -> Option<Matrix<Scalar>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = self.field.one();
        }
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(e.reduced.select(&rows, &cols))
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let e = aug.rref();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in e.pivots.iter().enumerate() {
            x[p] = e.reduced[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self[(i, j)].is_zero() {
                        acc = &acc + &(&self[(i, j)] * x);
                    }
                }
                acc
            })
            .collect()
    }
}

fn free_of(cols: usize, pivots: &[usize]) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(f: Field, v: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::new(f, v, c.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn unimodular_examples() {
        let f = Field::Rationals;
        let id: Matrix<LaurentPoly> = Matrix::identity(f, 2);
        assert!(is_unimodular(&id, RingTag::Polynomial));
        let d = Matrix::diagonal(f, vec![lp(f, 1, &[1]), lp(f, -1, &[1])]);
        assert!(is_unimodular(&d, RingTag::Laurent));
        assert!(!is_unimodular(&d, RingTag::Polynomial));
        let e = Matrix::diagonal(f, vec![lp(f, 1, &[1]), lp(f, 0, &[1])]);
        assert!(!is_unimodular(&e, RingTag::Polynomial));
        assert!(is_unimodular(&e, RingTag::Laurent));
    }

    #[test]
    fn nullspace_coordinates_at_free_positions() {
        let f = Field::Rationals;
        let m = Matrix::from_i64(f, &[vec![1, 2, 3], vec![2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        let free = m.free_columns();
        for (k, v) in ns.iter().enumerate() {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
            for (l, &fc) in free.iter().enumerate() {
                assert_eq!(v[fc].is_one(), k == l);
            }
        }
    }

    #[test]
    fn inverse_and_solve() {
        let f = Field::Prime(7);
        let m = Matrix::from_i64(f, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
        let x = m.solve(&[f.from_i64(3), f.from_i64(2)]).unwrap();
        assert_eq!(x, vec![f.from_i64(1), f.from_i64(1)]);
        let sing = Matrix::from_i64(f, &[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn adjugate_identity() {
        let f = Field::Rationals;
        let m: Matrix<Poly> = Matrix::from_rows(
            f,
            vec![
                vec![Poly::from_i64s(f, &[0, 1]), Poly::from_i64s(f, &[1])],
                vec![Poly::from_i64s(f, &[2]), Poly::from_i64s(f, &[1, 0, 1])],
            ],
        );
        let d = m.det();
        let prod = m.mul(&m.adjugate());
        assert_eq!(prod, Matrix::diagonal(f, vec![d.clone(), d]));
    }
}
