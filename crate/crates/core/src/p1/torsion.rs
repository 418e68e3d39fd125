use serde::Deserialize;

use super::ClosedPoint;
use crate::error::{Error, Result};
use crate::exact::{factor, invariant_factors, parse_laurent, Field, Matrix, MatrixJson, Poly, Ring};

/// A torsion sheaf presented on the two charts: `coker(finite)` over `k[y]`
/// and `coker(infinity)` over `k[y^-1]`.
///
/// The infinity part is stored as a polynomial matrix in `z = y^-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionData {
    finite: Matrix<Poly>,
    infinity: Matrix<Poly>,
}

impl TorsionData {
    pub fn new(finite: Matrix<Poly>, infinity: Matrix<Poly>) -> Result<TorsionData> {
        if finite.field() != infinity.field() && finite.rows() > 0 && infinity.rows() > 0 {
            return Err(Error::MixedFields);
        }
        for (name, m) in [("finite", &finite), ("infinity", &infinity)] {
            if !m.is_square() {
                return Err(Error::DimensionMismatch(format!("{name} part is not square")));
            }
            if m.rows() > 0 && m.det().is_zero() {
                return Err(Error::InvalidInput(format!("{name} part has zero determinant")));
            }
        }
        Ok(TorsionData { finite, infinity })
    }

    pub fn finite(&self) -> &Matrix<Poly> {
        &self.finite
    }

    /// Matrix in `z = y^-1`.
    pub fn infinity(&self) -> &Matrix<Poly> {
        &self.infinity
    }

    /// Reads `{"field":..,"finite":[[..]],"infinity":[[..]]}`; infinity entries
    /// are written with nonpositive powers of `y`.
    pub fn from_json(text: &str) -> Result<TorsionData> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default = "q")]
            field: Field,
            #[serde(default)]
            finite: Vec<Vec<crate::exact::Entry>>,
            #[serde(default)]
            infinity: Vec<Vec<crate::exact::Entry>>,
        }
        fn q() -> Field {
            Field::Rationals
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let finite = MatrixJson { field: raw.field, rows: raw.finite }.to_poly()?;
        let inf = MatrixJson { field: raw.field, rows: raw.infinity }.to_laurent()?;
        let infinity = inf
            .entries()
            .iter()
            .map(|e| e.to_poly_in_inverse().ok_or_else(|| Error::Parse(format!("`{e}` is not a polynomial in y^-1"))))
            .collect::<Result<Vec<_>>>()?;
        TorsionData::new(finite, Matrix::from_vec(raw.field, inf.rows(), inf.cols(), infinity))
    }
}

/// Splits a torsion sheaf into indecomposables `(point, length)`.
///
/// Finite points come from the elementary divisors of the `k[y]` part and the
/// point at infinity from the powers of `y^-1` in the `k[y^-1]` part. Any
/// other elementary divisor of the infinity part describes a finite point seen
/// from the other chart and must already occur in the finite part.
pub fn torsion_decompose(t: &TorsionData) -> Result<Vec<(ClosedPoint, u32)>> {
    let mut out = Vec::new();
    for inv in invariant_factors(&t.finite) {
        if inv.is_constant() {
            continue;
        }
        for (f, m) in factor(&inv)? {
            out.push((ClosedPoint::Finite(f), m));
        }
    }
    let finite_seen = out.clone();
    for inv in invariant_factors(&t.infinity) {
        if inv.is_constant() {
            continue;
        }
        for (g, m) in factor(&inv)? {
            if g.deg0() == 1 && g.coeff(0).is_zero() {
                out.push((ClosedPoint::Infinity, m));
                continue;
            }
            let pt = ClosedPoint::Finite(g.reversed().monic());
            if !finite_seen.contains(&(pt.clone(), m)) {
                return Err(Error::InconsistentGlue(format!(
                    "factor ({})^{m} at infinity has no counterpart {pt} in the finite part",
                    g.fmt_var("y^-1")
                )));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Reads a polynomial in `y^-1` written with nonpositive exponents.
pub fn parse_inverse_poly(field: Field, text: &str) -> Result<Poly> {
    parse_laurent(field, text)?
        .to_poly_in_inverse()
        .ok_or_else(|| Error::Parse(format!("`{text}` is not a polynomial in y^-1")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    fn q() -> Field {
        Field::Rationals
    }

    fn diag(ps: &[&str]) -> Matrix<Poly> {
        Matrix::diagonal(q(), ps.iter().map(|s| parse_poly(q(), s).unwrap()).collect())
    }

    fn pt(s: &str) -> ClosedPoint {
        ClosedPoint::parse(q(), s).unwrap()
    }

    #[test]
    fn crt_split() {
        let t = TorsionData::new(diag(&["y", "y^2-y"]), diag(&[])).unwrap();
        let d = torsion_decompose(&t).unwrap();
        let mut want = vec![(pt("y"), 1), (pt("y"), 1), (pt("y-1"), 1)];
        want.sort();
        assert_eq!(d, want);
    }

    #[test]
    fn irreducible_quadratic() {
        let t = TorsionData::new(diag(&["y^2+1"]), diag(&[])).unwrap();
        assert_eq!(torsion_decompose(&t).unwrap(), vec![(pt("y^2+1"), 1)]);
    }

    #[test]
    fn infinity_power() {
        let inf = Matrix::diagonal(q(), vec![parse_inverse_poly(q(), "y^-3").unwrap()]);
        let t = TorsionData::new(diag(&[]), inf).unwrap();
        assert_eq!(torsion_decompose(&t).unwrap(), vec![(ClosedPoint::Infinity, 3)]);
    }

    #[test]
    fn overlap_must_agree() {
        // (1 - y^-1) at infinity is the point y = 1.
        let inf = Matrix::diagonal(q(), vec![parse_inverse_poly(q(), "1-y^-1").unwrap()]);
        let ok = TorsionData::new(diag(&["y-1"]), inf.clone()).unwrap();
        assert_eq!(torsion_decompose(&ok).unwrap(), vec![(pt("y-1"), 1)]);
        let bad = TorsionData::new(diag(&["y"]), inf).unwrap();
        assert!(matches!(torsion_decompose(&bad), Err(Error::InconsistentGlue(_))));
    }

    #[test]
    fn json_input() {
        let t = TorsionData::from_json(r#"{"field":"Q","finite":[["y^2+1"]],"infinity":[["y^-2"]]}"#).unwrap();
        assert_eq!(torsion_decompose(&t).unwrap(), vec![(pt("y^2+1"), 1), (ClosedPoint::Infinity, 2)]);
        assert!(TorsionData::from_json(r#"{"infinity":[["y"]]}"#).is_err());
    }
}
