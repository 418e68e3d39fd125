use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Poly, Scalar};
use crate::p1::{ClosedPoint, DerivedLabel, P1Label};

/// Two parallel linear maps `f0, f1 : k^{d1} → k^{d0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct KroneckerRep {
    pub field: Field,
    pub d1: usize,
    pub d0: usize,
    pub f0: Matrix<Scalar>,
    pub f1: Matrix<Scalar>,
}

impl KroneckerRep {
    pub fn new(field: Field, d1: usize, d0: usize, f0: Matrix<Scalar>, f1: Matrix<Scalar>) -> Result<KroneckerRep> {
        for (name, f) in [("f0", &f0), ("f1", &f1)] {
            if (f.rows(), f.cols()) != (d0, d1) {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {d0}x{d1}",
                    f.rows(),
                    f.cols()
                )));
            }
            if d0 * d1 > 0 && f.field() != field {
                return Err(Error::MixedFields);
            }
        }
        Ok(KroneckerRep { field, d1, d0, f0, f1 })
    }

    pub fn zero(field: Field) -> KroneckerRep {
        let z = Matrix::zeros(field, 0, 0);
        KroneckerRep { field, d1: 0, d0: 0, f0: z.clone(), f1: z }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d1, self.d0)
    }

    /// Block direct sum.
    pub fn direct_sum(&self, other: &KroneckerRep) -> KroneckerRep {
        let block = |a: &Matrix<Scalar>, b: &Matrix<Scalar>| {
            let mut m = Matrix::zeros(self.field, self.d0 + other.d0, self.d1 + other.d1);
            for i in 0..self.d0 {
                for j in 0..self.d1 {
                    m[(i, j)] = a[(i, j)].clone();
                }
            }
            for i in 0..other.d0 {
                for j in 0..other.d1 {
                    m[(self.d0 + i, self.d1 + j)] = b[(i, j)].clone();
                }
            }
            m
        };
        KroneckerRep {
            field: self.field,
            d1: self.d1 + other.d1,
            d0: self.d0 + other.d0,
            f0: block(&self.f0, &other.f0),
            f1: block(&self.f1, &other.f1),
        }
    }

    /// Reads `{"d1":..,"d0":..,"f0":[[..]],"f1":[[..]],"field":..}`.
    pub fn from_json(text: &str) -> Result<KroneckerRep> {
        let raw: RepJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let field = match raw.field {
            Field::Prime(p) => Field::prime(p)?,
            f => f,
        };
        let read = |rows: &[Vec<crate::exact::Entry>]| -> Result<Matrix<Scalar>> {
            if rows.len() != raw.d0 || rows.iter().any(|r| r.len() != raw.d1) {
                return Err(Error::DimensionMismatch(format!("maps must be {}x{}", raw.d0, raw.d1)));
            }
            let data = rows
                .iter()
                .flatten()
                .map(|e| crate::exact::parse_scalar(field, &e.to_string()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_vec(field, raw.d0, raw.d1, data))
        };
        let f0 = read(&raw.f0)?;
        let f1 = read(&raw.f1)?;
        KroneckerRep::new(field, raw.d1, raw.d0, f0, f1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows = |m: &Matrix<Scalar>| -> Vec<Vec<String>> {
            m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
        };
        serde_json::json!({
            "field": self.field,
            "d1": self.d1,
            "d0": self.d0,
            "f0": rows(&self.f0),
            "f1": rows(&self.f1),
        })
    }
}

#[derive(Deserialize)]
struct RepJson {
    #[serde(default = "rationals")]
    field: Field,
    d1: usize,
    d0: usize,
    #[serde(default)]
    f0: Vec<Vec<crate::exact::Entry>>,
    #[serde(default)]
    f1: Vec<Vec<crate::exact::Entry>>,
}

fn rationals() -> Field {
    Field::Rationals
}

/// Indecomposable Kronecker representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KroneckerLabel {
    /// Dimensions `(n, n+1)`.
    Preproj(u32),
    /// Dimensions `(m, m-1)`, `m ≥ 1`.
    Preinj(u32),
    /// Dimensions `(r·deg p, r·deg p)`.
    Regular(ClosedPoint, u32),
}

impl KroneckerLabel {
    pub fn dims(&self) -> (usize, usize) {
        match self {
            KroneckerLabel::Preproj(n) => (*n as usize, *n as usize + 1),
            KroneckerLabel::Preinj(m) => (*m as usize, *m as usize - 1),
            KroneckerLabel::Regular(p, r) => {
                let d = (*r * p.degree()) as usize;
                (d, d)
            }
        }
    }

    /// The canonical representative over `field`.
    pub fn rep(&self, field: Field) -> KroneckerRep {
        match self {
            KroneckerLabel::Preproj(n) => tilt_label(&P1Label::LB(*n as i64), field).0,
            KroneckerLabel::Preinj(m) => tilt_label(&P1Label::LB(-(*m as i64)), field).0,
            KroneckerLabel::Regular(p, r) => tilt_label(&P1Label::Tor(p.clone(), *r), field).0,
        }
    }
}

impl fmt::Display for KroneckerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KroneckerLabel::Preproj(n) => write!(f, "P({n})"),
            KroneckerLabel::Preinj(m) => write!(f, "I({m})"),
            KroneckerLabel::Regular(p, r) => write!(f, "R({p},{r})"),
        }
    }
}

impl Serialize for KroneckerLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn shift_maps(field: Field, rows: usize, cols: usize, offset: usize) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(field, rows, cols);
    for k in 0..cols {
        if k + offset < rows {
            m[(k + offset, k)] = field.one();
        }
    }
    m
}

/// Multiplication by `y` on `k[y]/(g)` in the basis `1, y, …`.
fn companion(g: &Poly) -> Matrix<Scalar> {
    let field = g.field();
    let n = g.deg0();
    let mut m = Matrix::zeros(field, n, n);
    for k in 0..n {
        if k + 1 < n {
            m[(k + 1, k)] = field.one();
        } else {
            for i in 0..n {
                m[(i, k)] = -g.coeff(i);
            }
        }
    }
    m
}

/// `(Hom(T, F), 0)` for `F` in the tilting heart, `(Ext¹(T, F), 1)` otherwise,
/// with `T = O ⊕ O(1)`.
///
/// On `O(n)`, `n ≥ 0`, the maps are multiplication by `x0` and `x1` from forms
/// of degree `n-1` to forms of degree `n`, in the monomial basis
/// `x0^{d-k} x1^k`. At a finite point `f` the torsion sheaf of length `r`
/// is `k[y]/(f^r)` with `x0 = 1` and `x1 = y`; at infinity `x1 = 1` and `x0`
/// is the uniformizer.
pub fn tilt_label(label: &P1Label, field: Field) -> (KroneckerRep, i32) {
    match label {
        P1Label::LB(n) if *n >= 0 => {
            let n = *n as usize;
            let rep = KroneckerRep {
                field,
                d1: n,
                d0: n + 1,
                f0: shift_maps(field, n + 1, n, 0),
                f1: shift_maps(field, n + 1, n, 1),
            };
            (rep, 0)
        }
        P1Label::LB(n) => {
            let m = (-*n) as usize;
            let f0 = Matrix::from_vec(
                field,
                m - 1,
                m,
                (0..m - 1).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| field.from_i64((i == j) as i64)).collect(),
            );
            let f1 = Matrix::from_vec(
                field,
                m - 1,
                m,
                (0..m - 1)
                    .flat_map(|i| (0..m).map(move |j| (i, j)))
                    .map(|(i, j)| field.from_i64((j == i + 1) as i64))
                    .collect(),
            );
            (KroneckerRep { field, d1: m, d0: m - 1, f0, f1 }, 1)
        }
        P1Label::Tor(ClosedPoint::Finite(f), r) => {
            let g = f.pow(*r);
            let d = g.deg0();
            let rep = KroneckerRep { field, d1: d, d0: d, f0: Matrix::identity(field, d), f1: companion(&g) };
            (rep, 0)
        }
        P1Label::Tor(ClosedPoint::Infinity, r) => {
            let d = *r as usize;
            let rep = KroneckerRep {
                field,
                d1: d,
                d0: d,
                f0: shift_maps(field, d, d, 1),
                f1: Matrix::identity(field, d),
            };
            (rep, 0)
        }
    }
}

pub fn untilt(label: &KroneckerLabel) -> DerivedLabel {
    match label {
        KroneckerLabel::Preproj(n) => DerivedLabel { base: P1Label::LB(*n as i64), shift: 0 },
        KroneckerLabel::Preinj(m) => DerivedLabel { base: P1Label::LB(-(*m as i64)), shift: 1 },
        KroneckerLabel::Regular(p, r) => DerivedLabel { base: P1Label::Tor(p.clone(), *r), shift: 0 },
    }
}

/// `(dim Hom(a, b), dim Ext¹(a, b))`.
///
/// `Hom` is the space of pairs `(φ1, φ0)` with `φ0 fᵢ = fᵢ' φ1`; `Ext¹` is the
/// cokernel of the same linear map, so `hom − ext` is the Euler form
/// `d1 d1' + d0 d0' − 2 d1 d0'`.
pub fn rep_hom_ext(a: &KroneckerRep, b: &KroneckerRep) -> (u64, u64) {
    let field = a.field;
    let n1 = b.d1 * a.d1;
    let unknowns = n1 + b.d0 * a.d0;
    let eqs = 2 * b.d0 * a.d1;
    if eqs == 0 {
        return (unknowns as u64, 0);
    }
    // φ1 is b.d1 × a.d1 at offset 0, φ0 is b.d0 × a.d0 at offset n1, row-major.
    let mut m = Matrix::zeros(field, eqs, unknowns);
    for (k, (fa, fb)) in [(&a.f0, &b.f0), (&a.f1, &b.f1)].into_iter().enumerate() {
        for i in 0..b.d0 {
            for j in 0..a.d1 {
                let row = k * b.d0 * a.d1 + i * a.d1 + j;
                // (φ0 fa)[i][j] = Σ_t φ0[i][t] fa[t][j]
                for t in 0..a.d0 {
                    if !fa[(t, j)].is_zero() {
                        let col = n1 + i * a.d0 + t;
                        m[(row, col)] = &m[(row, col)] + &fa[(t, j)];
                    }
                }
                // − (fb φ1)[i][j] = − Σ_t fb[i][t] φ1[t][j]
                for t in 0..b.d1 {
                    if !fb[(i, t)].is_zero() {
                        let col = t * a.d1 + j;
                        m[(row, col)] = &m[(row, col)] - &fb[(i, t)];
                    }
                }
            }
        }
    }
    let rank = m.rank();
    ((unknowns - rank) as u64, (eqs - rank) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn t(l: P1Label) -> KroneckerRep {
        tilt_label(&l, q()).0
    }

    #[test]
    fn tilt_examples() {
        assert_eq!(t(P1Label::LB(0)).dims(), (0, 1));
        let r = t(P1Label::LB(2));
        assert_eq!(r.dims(), (2, 3));
        assert_eq!(r.f0, Matrix::from_i64(q(), &[vec![1, 0], vec![0, 1], vec![0, 0]]));
        assert_eq!(r.f1, Matrix::from_i64(q(), &[vec![0, 0], vec![1, 0], vec![0, 1]]));
        let lam = q().from_i64(5);
        let s = t(P1Label::Tor(ClosedPoint::at(&lam), 1));
        assert_eq!(s.f0, Matrix::from_i64(q(), &[vec![1]]));
        assert_eq!(s.f1, Matrix::from_i64(q(), &[vec![5]]));
        let (i, shift) = tilt_label(&P1Label::LB(-3), q());
        assert_eq!((i.dims(), shift), ((3, 2), 1));
    }

    #[test]
    fn hom_ext_examples() {
        assert_eq!(rep_hom_ext(&t(P1Label::LB(0)), &t(P1Label::LB(0))), (1, 0));
        assert_eq!(rep_hom_ext(&t(P1Label::LB(1)), &t(P1Label::LB(0))), (0, 0));
        assert_eq!(rep_hom_ext(&t(P1Label::LB(0)), &t(P1Label::LB(1))), (2, 0));
        let s = t(P1Label::Tor(ClosedPoint::at(&q().from_i64(2)), 1));
        assert_eq!(rep_hom_ext(&s, &s), (1, 1));
    }

    #[test]
    fn label_dims_match_reps() {
        let pts = [ClosedPoint::Infinity, ClosedPoint::at(&q().zero())];
        let mut labels = vec![];
        for n in 0..5 {
            labels.push(KroneckerLabel::Preproj(n));
            labels.push(KroneckerLabel::Preinj(n + 1));
            for p in &pts {
                labels.push(KroneckerLabel::Regular(p.clone(), n + 1));
            }
        }
        for l in labels {
            assert_eq!(l.rep(q()).dims(), l.dims(), "{l}");
        }
    }

    #[test]
    fn untilt_examples() {
        assert_eq!(untilt(&KroneckerLabel::Preproj(0)), DerivedLabel { base: P1Label::LB(0), shift: 0 });
        assert_eq!(untilt(&KroneckerLabel::Preinj(1)), DerivedLabel { base: P1Label::LB(-1), shift: 1 });
        assert_eq!(
            untilt(&KroneckerLabel::Regular(ClosedPoint::Infinity, 2)),
            DerivedLabel { base: P1Label::Tor(ClosedPoint::Infinity, 2), shift: 0 }
        );
    }

    #[test]
    fn json_round_trip() {
        let r = t(P1Label::LB(2));
        let back = KroneckerRep::from_json(&r.to_json().to_string()).unwrap();
        assert_eq!(back, r);
        assert!(KroneckerRep::from_json(r#"{"d1":1,"d0":1,"f0":[[1]],"f1":[[1,2]]}"#).is_err());
    }
}
