use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::format_terms;
use super::{Field, Poly, Ring, Scalar};

/// Element of `k[y, y^-1]`, stored as `y^valuation · (c_0 + c_1 y + …)`.
///
/// Both the first and the last stored coefficients are nonzero; the zero
/// element has no coefficients and valuation 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    field: Field,
    valuation: i64,
    coeffs: Vec<Scalar>,
}

impl LaurentPoly {
    pub fn new(field: Field, valuation: i64, coeffs: Vec<Scalar>) -> LaurentPoly {
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return LaurentPoly::zero(field);
        }
        let mut coeffs: Vec<Scalar> = coeffs.into_iter().skip(lead_zeros).collect();
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        LaurentPoly { field, valuation: valuation + lead_zeros as i64, coeffs }
    }

    /// `c · y^e`.
    pub fn monomial(c: Scalar, e: i64) -> LaurentPoly {
        let field = c.field();
        LaurentPoly::new(field, e, vec![c])
    }

    pub fn y_pow(field: Field, e: i64) -> LaurentPoly {
        LaurentPoly::monomial(field.one(), e)
    }

    pub fn constant(c: Scalar) -> LaurentPoly {
        LaurentPoly::monomial(c, 0)
    }

    pub fn from_poly(p: &Poly) -> LaurentPoly {
        LaurentPoly::new(p.field(), 0, p.coeffs().to_vec())
    }

    /// Reads a polynomial in `y^-1` (coefficient `i` at `y^-i`).
    pub fn from_poly_in_inverse(p: &Poly) -> LaurentPoly {
        let mut c = p.coeffs().to_vec();
        c.reverse();
        let v = -(p.deg0() as i64);
        LaurentPoly::new(p.field(), v, c)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Lowest exponent; 0 for zero.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Highest exponent, `None` for zero.
    pub fn top(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.valuation + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `y^e`.
    pub fn coeff(&self, e: i64) -> Scalar {
        let i = e - self.valuation;
        if i < 0 {
            return self.field.zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `Some((c, e))` exactly when `self = c·y^e` with `c ≠ 0`.
    pub fn unit_parts(&self) -> Option<(Scalar, i64)> {
        (self.coeffs.len() == 1).then(|| (self.coeffs[0].clone(), self.valuation))
    }

    /// Multiplication by `y^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        if Ring::is_zero(self) {
            return self.clone();
        }
        LaurentPoly { field: self.field, valuation: self.valuation + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        LaurentPoly::new(self.field, self.valuation, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// The element as a polynomial in `y`, if it has no negative exponents.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.valuation < 0 {
            return None;
        }
        Some(Poly::from_coeffs(self.field, self.coeffs.clone()).shift(self.valuation as usize))
    }

    /// The element as a polynomial in `z = y^-1`, if it has no positive exponents.
    pub fn to_poly_in_inverse(&self) -> Option<Poly> {
        match self.top() {
            None => Some(Poly::zero(self.field)),
            Some(t) if t > 0 => None,
            Some(t) => {
                let mut c = self.coeffs.clone();
                c.reverse();
                Some(Poly::from_coeffs(self.field, c).shift((-t) as usize))
            }
        }
    }

    pub fn is_polynomial(&self) -> bool {
        Ring::is_zero(self) || self.valuation >= 0
    }

    pub fn is_polynomial_in_inverse(&self) -> bool {
        self.top().is_none_or(|t| t <= 0)
    }

    /// Normalized polynomial part `P` with `self = y^v · P`, `P(0) ≠ 0`.
    fn body(&self) -> Poly {
        Poly::from_coeffs(self.field, self.coeffs.clone())
    }

    pub fn fmt_var(&self, var: &str) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.valuation + i as i64, c.clone()));
        format_terms(terms, var)
    }
}

/// The unit decomposition `p = c·y^e`, or `None` if `p` is not a unit of `k[y, y^-1]`.
pub fn laurent_unit(p: &LaurentPoly) -> Option<(Scalar, i64)> {
    p.unit_parts()
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("y"))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        combine(self, rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        combine(self, rhs, |a, b| a - b)
    }
}

fn combine(a: &LaurentPoly, b: &LaurentPoly, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> LaurentPoly {
    assert_eq!(a.field, b.field, "laurent field mismatch");
    let zero = a.field.zero();
    if Ring::is_zero(a) && Ring::is_zero(b) {
        return a.clone();
    }
    let lo = match (a.top(), b.top()) {
        (None, _) => b.valuation,
        (_, None) => a.valuation,
        _ => a.valuation.min(b.valuation),
    };
    let hi = a.top().unwrap_or(i64::MIN).max(b.top().unwrap_or(i64::MIN));
    let coeffs = (lo..=hi)
        .map(|e| {
            let x = if Ring::is_zero(a) { zero.clone() } else { a.coeff(e) };
            let y = if Ring::is_zero(b) { zero.clone() } else { b.coeff(e) };
            op(&x, &y)
        })
        .collect();
    LaurentPoly::new(a.field, lo, coeffs)
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        assert_eq!(self.field, rhs.field, "laurent field mismatch");
        if Ring::is_zero(self) || Ring::is_zero(rhs) {
            return LaurentPoly::zero(self.field);
        }
        let p = &self.body() * &rhs.body();
        LaurentPoly::new(self.field, self.valuation + rhs.valuation, p.coeffs().to_vec())
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-&self.field.one())
    }
}

impl Ring for LaurentPoly {
    fn zero(field: Field) -> Self {
        LaurentPoly { field, valuation: 0, coeffs: Vec::new() }
    }
    fn one(field: Field) -> Self {
        LaurentPoly::y_pow(field, 0)
    }
    fn field_of(&self) -> Field {
        self.field
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
        self.coeffs.is_empty()
    }
    fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Ring::is_zero(d) {
            return None;
        }
        if Ring::is_zero(self) {
            return Some(self.clone());
        }
        let (q, r) = self.body().divrem(&d.body());
        r.is_zero().then(|| LaurentPoly::new(self.field, self.valuation - d.valuation, q.coeffs().to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_examples() {
        let f = Field::Rationals;
        let p = LaurentPoly::monomial(f.from_i64(3), -2);
        assert_eq!(laurent_unit(&p), Some((f.from_i64(3), -2)));
        assert_eq!(laurent_unit(&LaurentPoly::one(f)), Some((f.one(), 0)));
        let q = &LaurentPoly::y_pow(f, 1) + &LaurentPoly::one(f);
        assert_eq!(laurent_unit(&q), None);
        assert_eq!(laurent_unit(&LaurentPoly::zero(f)), None);
    }

    #[test]
    fn cancellation_renormalizes() {
        let f = Field::Prime(7);
        let a = &LaurentPoly::y_pow(f, -1) + &LaurentPoly::y_pow(f, 2);
        let b = LaurentPoly::y_pow(f, -1);
        let d = &a - &b;
        assert_eq!(d, LaurentPoly::y_pow(f, 2));
        assert_eq!(d.valuation(), 2);
        assert_eq!((&a - &a), LaurentPoly::zero(f));
    }

    #[test]
    fn exact_division() {
        let f = Field::Rationals;
        let a = &LaurentPoly::y_pow(f, -3) + &LaurentPoly::y_pow(f, -1);
        let b = &LaurentPoly::y_pow(f, 0) + &LaurentPoly::y_pow(f, 2);
        assert_eq!(a.div_exact(&b), Some(LaurentPoly::y_pow(f, -3)));
        assert_eq!(b.div_exact(&(&LaurentPoly::y_pow(f, 1) + &LaurentPoly::one(f))), None);
    }

    #[test]
    fn inverse_variable_round_trip() {
        let f = Field::Rationals;
        let z = Poly::from_i64s(f, &[1, 0, 2]); // 1 + 2 z^2
        let l = LaurentPoly::from_poly_in_inverse(&z);
        assert_eq!(l.to_string(), "1+2*y^-2");
        assert_eq!(l.to_poly_in_inverse().unwrap(), z);
    }
}
