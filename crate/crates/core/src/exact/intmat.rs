//! Small dense integer matrices (Cartan, Gram, Coxeter, class lattices).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "shape mismatch");
            (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect()
        })
        .collect()
}

pub fn mul_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// `uᵀ · G · v`.
pub fn bilinear(g: &IntMatrix, u: &[i64], v: &[i64]) -> i64 {
    u.iter().zip(mul_vec(g, v)).map(|(a, b)| a * b).sum()
}

/// Exact determinant (Bareiss over arbitrary precision integers).
pub fn det(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    &a[n - 1][n - 1] * sign
}

/// Invariant factors (nonzero diagonal of the Smith form) of an integer matrix.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(BigInt, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.as_ref().is_none_or(|(b, _, _)| x.abs() < *b) {
                        best = Some((x.abs(), i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                out.sort();
                return out;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&p);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let v = &row[t] * &q;
                        row[j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
            if let Some(i) = bad {
                for j in t..cols {
                    let v = a[i][j].clone();
                    a[t][j] += v;
                }
                continue;
            }
            break;
        }
        out.push(a[t][t].abs());
    }
    out.sort();
    out
}

/// Rank of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    smith_invariants(m).len()
}

/// `det` as `i64`, if it fits.
pub fn det_i64(m: &IntMatrix) -> Option<i64> {
    det(m).to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_smith() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(det(&m), BigInt::from(-144));
        let inv: Vec<i64> = smith_invariants(&m).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(inv, vec![2, 6, 12]);
    }

    #[test]
    fn rank_of_rectangular() {
        let m = vec![vec![1, 0], vec![1, 1], vec![2, 1]];
        assert_eq!(rank(&m), 2);
        assert_eq!(smith_invariants(&m).iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>(), vec![1, 1]);
    }
}
