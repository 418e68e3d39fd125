use super::{Matrix, Poly, Ring};

/// `S · M · T = D` with `S`, `T` unimodular and `D` diagonal in divisor chain.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: Matrix<Poly>,
    pub d: Matrix<Poly>,
    pub t: Matrix<Poly>,
}

impl SmithForm {
    /// Nonzero diagonal entries of `D`, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<Poly> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).filter(|p| !p.is_zero()).collect()
    }
}

/// Smith normal form over `k[y]` with both transforms.
pub fn smith_normal_form(m: &Matrix<Poly>) -> SmithForm {
    let mut s = Matrix::identity(m.field(), m.rows());
    let mut t = Matrix::identity(m.field(), m.cols());
    let d = reduce(m.clone(), Some((&mut s, &mut t)));
    SmithForm { s, d, t }
}

/// Invariant factors only; cheaper than [`smith_normal_form`].
pub fn invariant_factors(m: &Matrix<Poly>) -> Vec<Poly> {
    let d = reduce(m.clone(), None);
    (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).filter(|p| !p.is_zero()).collect()
}

fn reduce(mut d: Matrix<Poly>, mut tr: Option<(&mut Matrix<Poly>, &mut Matrix<Poly>)>) -> Matrix<Poly> {
    let (m, n) = (d.rows(), d.cols());
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_degree_entry(&d, t) else { return d };
            d.swap_rows(t, pi);
            d.swap_cols(t, pj);
            if let Some((s, tt)) = tr.as_mut() {
                s.swap_rows(t, pi);
                tt.swap_cols(t, pj);
            }
            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].divrem(&pivot).0.neg();
                d.add_row_multiple(i, t, &q);
                if let Some((s, _)) = tr.as_mut() {
                    s.add_row_multiple(i, t, &q);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].divrem(&pivot).0.neg();
                d.add_col_multiple(j, t, &q);
                if let Some((_, tt)) = tr.as_mut() {
                    tt.add_col_multiple(j, t, &q);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].rem(&pivot).is_zero()));
            if let Some(i) = offending {
                let one = Poly::one(d.field());
                d.add_row_multiple(t, i, &one);
                if let Some((s, _)) = tr.as_mut() {
                    s.add_row_multiple(t, i, &one);
                }
                continue;
            }
            break;
        }
        let inv = Poly::constant(d[(t, t)].lead().unwrap().inv().unwrap());
        d.scale_row(t, &inv);
        if let Some((s, _)) = tr.as_mut() {
            s.scale_row(t, &inv);
        }
    }
    d
}

fn min_degree_entry(d: &Matrix<Poly>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, (usize, usize))> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            if let Some(deg) = d[(i, j)].degree() {
                if best.is_none_or(|(b, _)| deg < b) {
                    best = Some((deg, (i, j)));
                }
            }
        }
    }
    best.map(|(_, pos)| pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{is_unimodular_poly, Field};

    fn q(c: &[i64]) -> Poly {
        Poly::from_i64s(Field::Rationals, c)
    }

    fn mat(rows: Vec<Vec<Poly>>) -> Matrix<Poly> {
        Matrix::from_rows(Field::Rationals, rows)
    }

    fn check(m: &Matrix<Poly>) -> SmithForm {
        let sf = smith_normal_form(m);
        assert_eq!(sf.s.mul(m).mul(&sf.t), sf.d);
        assert!(is_unimodular_poly(&sf.s));
        assert!(is_unimodular_poly(&sf.t));
        let inv = sf.invariant_factors();
        for w in inv.windows(2) {
            assert!(w[1].rem(&w[0]).is_zero());
        }
        assert!(inv.iter().all(Poly::is_monic));
        sf
    }

    #[test]
    fn spec_examples() {
        let y = q(&[0, 1]);
        let y_ym1 = q(&[0, -1, 1]);
        let a = mat(vec![vec![y.clone(), q(&[])], vec![q(&[]), y_ym1.clone()]]);
        assert_eq!(check(&a).invariant_factors(), vec![y.clone(), y_ym1]);

        let b = mat(vec![vec![y.clone(), q(&[])], vec![q(&[]), q(&[1])]]);
        assert_eq!(check(&b).invariant_factors(), vec![q(&[1]), y.clone()]);

        let c = mat(vec![vec![y.clone(), y.clone()], vec![q(&[]), q(&[0, 0, 1])]]);
        assert_eq!(check(&c).invariant_factors(), vec![y, q(&[0, 0, 1])]);
    }

    #[test]
    fn coprime_diagonal_merges() {
        // diag(y, y - 1) has invariant factors 1, y(y - 1).
        let a = mat(vec![vec![q(&[0, 1]), q(&[])], vec![q(&[]), q(&[-1, 1])]]);
        assert_eq!(check(&a).invariant_factors(), vec![q(&[1]), q(&[0, -1, 1])]);
    }

    #[test]
    fn rectangular() {
        let a = mat(vec![vec![q(&[0, 1]), q(&[1])], vec![q(&[2]), q(&[0, 1])], vec![q(&[1]), q(&[])]]);
        let sf = check(&a);
        assert_eq!(sf.invariant_factors(), vec![q(&[1]), q(&[1])]);
        assert_eq!(invariant_factors(&a), sf.invariant_factors());
    }
}
