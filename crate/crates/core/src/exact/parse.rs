//! Text grammar for polynomials and the JSON matrix format.
//!
//! A polynomial is a sum of terms `c`, `c*y^e`, `c*y`, `y^e`, `y` joined by
//! `+` and `-`. Exponents may be negative (`y^-2`), coefficients are
//! integers or fractions `a/b`.

use serde::{Deserialize, Serialize};

use super::{parse_scalar, Field, LaurentPoly, Matrix, Poly, Ring, Scalar};
use crate::error::{Error, Result};

/// Parses a Laurent polynomial in `y`.
pub fn parse_laurent(field: Field, text: &str) -> Result<LaurentPoly> {
    parse_laurent_var(field, text, "y")
}

/// Parses a polynomial in `y`; negative exponents are rejected.
pub fn parse_poly(field: Field, text: &str) -> Result<Poly> {
    let l = parse_laurent(field, text)?;
    l.to_poly().ok_or_else(|| Error::Parse(format!("`{text}` has negative exponents")))
}

pub(crate) fn parse_laurent_var(field: Field, text: &str, var: &str) -> Result<LaurentPoly> {
    let src: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut acc = LaurentPoly::zero(field);
    for (neg, term) in split_terms(&src)? {
        let (c, e) = parse_term(field, term, var).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{m} in `{text}`")),
            other => other,
        })?;
        let c = if neg { -c } else { c };
        acc = &acc + &LaurentPoly::monomial(c, e);
    }
    Ok(acc)
}

fn split_terms(src: &str) -> Result<Vec<(bool, &str)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    let mut neg = false;
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if (b == b'+' || b == b'-') && !(i > 0 && bytes[i - 1] == b'^') {
            if i > start {
                out.push((neg, &src[start..i]));
            } else if i > 0 {
                return Err(Error::Parse(format!("dangling sign in `{src}`")));
            }
            neg = b == b'-';
            start = i + 1;
        }
        i += 1;
    }
    if start >= src.len() {
        return Err(Error::Parse(format!("dangling sign in `{src}`")));
    }
    out.push((neg, &src[start..]));
    Ok(out)
}

fn parse_term(field: Field, term: &str, var: &str) -> Result<(Scalar, i64)> {
    let (coef, mono) = match term.split_once('*') {
        Some((c, m)) => (Some(c), Some(m)),
        None if term.starts_with(var) => (None, Some(term)),
        None => (Some(term), None),
    };
    let c = match coef {
        Some(c) => parse_scalar(field, c)?,
        None => field.one(),
    };
    let e = match mono {
        None => 0,
        Some(m) => {
            let rest = m.strip_prefix(var).ok_or_else(|| Error::Parse(format!("bad monomial `{m}`")))?;
            if rest.is_empty() {
                1
            } else {
                let ex = rest.strip_prefix('^').ok_or_else(|| Error::Parse(format!("bad monomial `{m}`")))?;
                ex.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent `{ex}`")))?
            }
        }
    };
    Ok((c, e))
}

/// Matrix entry as read from JSON: a polynomial string or a bare integer.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn text(&self) -> String {
        self.to_string()
    }

    /// A JSON number when the scalar is an integer that fits, else its text.
    pub fn from_scalar(x: &Scalar) -> Entry {
        match x.to_i64() {
            Some(n) => Entry::Int(n),
            None => Entry::Text(x.to_string()),
        }
    }
}

impl std::fmt::Display for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Entry::Int(n) => write!(f, "{n}"),
            Entry::Text(s) => f.write_str(s),
        }
    }
}

/// `{"field":"Q"|{"Fp":7},"rows":[["y^-1+2*y","0"],["1","y"]]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    #[serde(default = "default_field")]
    pub field: Field,
    pub rows: Vec<Vec<Entry>>,
}

fn default_field() -> Field {
    Field::Rationals
}

impl MatrixJson {
    fn check_field(&self) -> Result<Field> {
        if let Field::Prime(p) = self.field {
            Field::prime(p)?;
        }
        let width = self.rows.first().map_or(0, Vec::len);
        if self.rows.iter().any(|r| r.len() != width) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(self.field)
    }

    fn build<R: Ring>(&self, parse: impl Fn(Field, &str) -> Result<R>) -> Result<Matrix<R>> {
        let field = self.check_field()?;
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| parse(field, &e.text())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Ok(Matrix::zeros(field, 0, 0));
        }
        Ok(Matrix::from_rows(field, rows))
    }

    pub fn to_laurent(&self) -> Result<Matrix<LaurentPoly>> {
        self.build(parse_laurent)
    }

    pub fn to_poly(&self) -> Result<Matrix<Poly>> {
        self.build(parse_poly)
    }

    pub fn to_scalar(&self) -> Result<Matrix<Scalar>> {
        self.build(parse_scalar)
    }

    pub fn from_matrix<R: Ring + std::fmt::Display>(m: &Matrix<R>) -> MatrixJson {
        MatrixJson {
            field: m.field(),
            rows: m.to_rows().iter().map(|r| r.iter().map(|e| Entry::Text(e.to_string())).collect()).collect(),
        }
    }
}

pub fn laurent_matrix_from_json(text: &str) -> Result<Matrix<LaurentPoly>> {
    let mj: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    mj.to_laurent()
}

pub fn poly_matrix_from_json(text: &str) -> Result<Matrix<Poly>> {
    let mj: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    mj.to_poly()
}

pub fn laurent_matrix_to_json(m: &Matrix<LaurentPoly>) -> serde_json::Value {
    serde_json::to_value(MatrixJson::from_matrix(m)).expect("matrix serializes")
}

pub fn poly_matrix_to_json(m: &Matrix<Poly>) -> serde_json::Value {
    serde_json::to_value(MatrixJson::from_matrix(m)).expect("matrix serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_display() {
        let q = Field::Rationals;
        for s in ["2*y+y^-1", "0", "-3/2*y^4-y+7", "y^-3", "1/3-y^-2"] {
            let p = parse_laurent(q, s).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(parse_laurent(q, &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn collects_like_terms_and_spaces() {
        let p = parse_poly(Field::Rationals, " y + y - 2 * y ").unwrap();
        assert!(p.is_zero());
        let p = parse_laurent(Field::Rationals, "-1+y^2").unwrap();
        assert_eq!(p.to_string(), "y^2-1");
    }

    #[test]
    fn prime_field_coefficients() {
        let f = Field::Prime(7);
        let p = parse_poly(f, "y-1").unwrap();
        assert_eq!(p.to_string(), "y+6");
        assert!(parse_poly(f, "9*y").is_err());
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "y^", "2*", "y+", "*y", "x", "y^1.5", "1//2"] {
            assert!(parse_laurent(Field::Rationals, s).is_err(), "{s}");
        }
        assert!(parse_poly(Field::Rationals, "y^-1").is_err());
    }

    #[test]
    fn matrix_json() {
        let m = laurent_matrix_from_json(r#"{"field":"Q","rows":[["y^-1+2*y","0"],["1","y"]]}"#).unwrap();
        assert_eq!(m.rows(), 2);
        let v = laurent_matrix_to_json(&m);
        assert_eq!(v.to_string(), r#"{"field":"Q","rows":[["2*y+y^-1","0"],["1","y"]]}"#);
        let f = laurent_matrix_from_json(r#"{"field":{"Fp":7},"rows":[[1,"y"]]}"#).unwrap();
        assert_eq!(f.field(), Field::Prime(7));
        assert!(laurent_matrix_from_json(r#"{"field":{"Fp":8},"rows":[["1"]]}"#).is_err());
        assert!(laurent_matrix_from_json(r#"{"rows":[["1"],["1","2"]]}"#).is_err());
    }
}
