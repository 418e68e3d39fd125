//! Rational points of ℙ¹, the Möbius action of PGL(2,k) and equivalence of
//! weight functions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{parse_scalar, Entry, Field, Scalar};
use crate::p1::ClosedPoint;
use crate::wpl::WPLSpec;

/// A point `[λ₀:λ₁]`, stored as `(1, λ)` or `(0, 1)`. The affine coordinate
/// is `λ = λ₁/λ₀`, so `[1:0]` is `0` and `[0:1]` is `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    l0: Scalar,
    l1: Scalar,
}

impl RationalPoint {
    pub fn new(l0: Scalar, l1: Scalar) -> Result<RationalPoint> {
        if l0.field() != l1.field() {
            return Err(Error::MixedFields);
        }
        let field = l0.field();
        if l0.is_zero() {
            if l1.is_zero() {
                return Err(Error::InvalidInput("[0:0] is not a point".into()));
            }
            return Ok(RationalPoint::infinity(field));
        }
        Ok(RationalPoint { l1: &l1 / &l0, l0: field.one() })
    }

    pub fn finite(lambda: Scalar) -> RationalPoint {
        RationalPoint { l0: lambda.field().one(), l1: lambda }
    }

    pub fn infinity(field: Field) -> RationalPoint {
        RationalPoint { l0: field.zero(), l1: field.one() }
    }

    pub fn from_i64(field: Field, n: i64) -> RationalPoint {
        RationalPoint::finite(field.from_i64(n))
    }

    /// `inf`, an integer or `a/b`.
    pub fn parse(field: Field, text: &str) -> Result<RationalPoint> {
        let t = text.trim();
        if t == "inf" || t == "∞" {
            return Ok(RationalPoint::infinity(field));
        }
        let x = match field {
            // Residues outside 0..p are fine here; points are read modulo p.
            Field::Prime(_) if !t.contains('/') => {
                field.from_i64(t.parse::<i64>().map_err(|_| Error::Parse(format!("invalid point `{text}`")))?)
            }
            _ => parse_scalar(field, t)?,
        };
        Ok(RationalPoint::finite(x))
    }

    pub fn field(&self) -> Field {
        self.l0.field()
    }

    pub fn coords(&self) -> (&Scalar, &Scalar) {
        (&self.l0, &self.l1)
    }

    pub fn is_infinity(&self) -> bool {
        self.l0.is_zero()
    }

    /// `λ`, or `None` at infinity.
    pub fn affine(&self) -> Option<&Scalar> {
        (!self.is_infinity()).then_some(&self.l1)
    }

    pub fn closed_point(&self) -> ClosedPoint {
        match self.affine() {
            Some(x) => ClosedPoint::at(x),
            None => ClosedPoint::Infinity,
        }
    }

    /// All `q + 1` points of ℙ¹ over a prime field, infinity last.
    pub fn all(field: Field) -> Vec<RationalPoint> {
        let mut v: Vec<_> = field.elements().into_iter().map(RationalPoint::finite).collect();
        v.push(RationalPoint::infinity(field));
        v
    }
}

impl Ord for RationalPoint {
    /// Finite points by coordinate, then infinity.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self.affine(), other.affine()) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        }
    }
}

impl PartialOrd for RationalPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine() {
            Some(x) => write!(f, "{x}"),
            None => f.write_str("inf"),
        }
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An invertible 2×2 matrix up to scalars, normalized so that its first
/// nonzero entry (row-major) is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PGL2 {
    m: [[Scalar; 2]; 2],
}

impl PGL2 {
    pub fn new(m: [[Scalar; 2]; 2]) -> Result<PGL2> {
        let field = m[0][0].field();
        if m.iter().flatten().any(|x| x.field() != field) {
            return Err(Error::MixedFields);
        }
        if (&(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])).is_zero() {
            return Err(Error::InvalidInput("matrix is not invertible".into()));
        }
        let lead = m.iter().flatten().find(|x| !x.is_zero()).unwrap().inv().unwrap();
        Ok(PGL2 { m: m.map(|r| r.map(|x| &x * &lead)) })
    }

    pub fn from_i64(field: Field, m: [[i64; 2]; 2]) -> Result<PGL2> {
        PGL2::new(m.map(|r| r.map(|x| field.from_i64(x))))
    }

    pub fn identity(field: Field) -> PGL2 {
        PGL2::from_i64(field, [[1, 0], [0, 1]]).unwrap()
    }

    pub fn matrix(&self) -> &[[Scalar; 2]; 2] {
        &self.m
    }

    pub fn field(&self) -> Field {
        self.m[0][0].field()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PGL2) -> PGL2 {
        let (a, b) = (&self.m, &other.m);
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        PGL2::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]).unwrap()
    }

    pub fn inverse(&self) -> PGL2 {
        let m = &self.m;
        PGL2::new([[m[1][1].clone(), -&m[0][1]], [-&m[1][0], m[0][0].clone()]]).unwrap()
    }

    /// `[[a,b],[c,d]]` with integer entries as numbers and fractions as text.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<Entry>> = self.m.iter().map(|r| r.iter().map(Entry::from_scalar).collect()).collect();
        serde_json::to_value(rows).unwrap()
    }

    /// Every element of PGL(2, 𝔽_p).
    pub fn all(field: Field) -> Vec<PGL2> {
        let el = field.elements();
        let mut out = Vec::new();
        for a in &el {
            for b in &el {
                for c in &el {
                    for d in &el {
                        let m = [[a.clone(), b.clone()], [c.clone(), d.clone()]];
                        let lead = m.iter().flatten().find(|x| !x.is_zero());
                        if lead.is_some_and(Scalar::is_one) {
                            if let Ok(g) = PGL2::new(m) {
                                out.push(g);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for PGL2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(f, "[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// `[λ₀:λ₁] ↦ [σ₀₀λ₀+σ₀₁λ₁ : σ₁₀λ₀+σ₁₁λ₁]`.
pub fn apply(sigma: &PGL2, x: &RationalPoint) -> RationalPoint {
    let m = &sigma.m;
    let y0 = &(&m[0][0] * &x.l0) + &(&m[0][1] * &x.l1);
    let y1 = &(&m[1][0] * &x.l0) + &(&m[1][1] * &x.l1);
    RationalPoint::new(y0, y1).expect("invertible matrix")
}

fn distinct(t: &[RationalPoint; 3]) -> bool {
    t[0] != t[1] && t[0] != t[2] && t[1] != t[2]
}

/// The map sending `(0, 1, ∞)` to `(a, b, c)`: columns `α·a` and `γ·c` with
/// `α·a + γ·c = b`.
fn from_standard(t: &[RationalPoint; 3]) -> PGL2 {
    let (a, b, c) = (&t[0], &t[1], &t[2]);
    let det = &(&a.l0 * &c.l1) - &(&c.l0 * &a.l1);
    let alpha = &(&(&b.l0 * &c.l1) - &(&c.l0 * &b.l1)) / &det;
    let gamma = &(&(&a.l0 * &b.l1) - &(&b.l0 * &a.l1)) / &det;
    PGL2::new([[&alpha * &a.l0, &gamma * &c.l0], [&alpha * &a.l1, &gamma * &c.l1]]).unwrap()
}

/// The unique `σ` with `σ(from[k]) = to[k]` for `k = 0, 1, 2`.
pub fn mobius_through(from: &[RationalPoint; 3], to: &[RationalPoint; 3]) -> Result<PGL2> {
    let field = from[0].field();
    if from.iter().chain(to).any(|p| p.field() != field) {
        return Err(Error::MixedFields);
    }
    if !distinct(from) || !distinct(to) {
        return Err(Error::DegenerateTriple);
    }
    Ok(from_standard(to).compose(&from_standard(from).inverse()))
}

/// Finitely many rational points with weight `≥ 2`; every other point has
/// weight 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightFunction {
    field: Field,
    weights: BTreeMap<RationalPoint, u32>,
}

impl WeightFunction {
    pub fn new(field: Field, pairs: impl IntoIterator<Item = (RationalPoint, u32)>) -> Result<WeightFunction> {
        let mut weights = BTreeMap::new();
        for (x, w) in pairs {
            if x.field() != field {
                return Err(Error::MixedFields);
            }
            if w < 2 {
                return Err(Error::WeightTooSmall(w));
            }
            if weights.insert(x, w).is_some() {
                return Err(Error::DuplicatePoints);
            }
        }
        Ok(WeightFunction { field, weights })
    }

    /// `"0:2,1:3,inf:5"`; the empty string is the trivial weight function.
    pub fn parse(field: Field, text: &str) -> Result<WeightFunction> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (x, w) = item
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("expected point:weight, got `{item}`")))?;
            let w = w.trim().parse().map_err(|_| Error::Parse(format!("invalid weight in `{item}`")))?;
            pairs.push((RationalPoint::parse(field, x)?, w));
        }
        WeightFunction::new(field, pairs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn weight(&self, x: &RationalPoint) -> u32 {
        self.weights.get(x).copied().unwrap_or(1)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RationalPoint, u32)> {
        self.weights.iter().map(|(x, &w)| (x, w))
    }

    /// Weighted points ordered by weight (descending), then coordinate.
    pub fn sorted_support(&self) -> Vec<(RationalPoint, u32)> {
        let mut v: Vec<_> = self.weights.iter().map(|(x, &w)| (x.clone(), w)).collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        v
    }

    fn weight_multiset(&self) -> Vec<u32> {
        self.sorted_support().into_iter().map(|(_, w)| w).collect()
    }
}

/// Checks `w2(x) = w(σx)` on the support of `w2` and the preimage of the support of `w`.
pub fn is_witness(w: &WeightFunction, w2: &WeightFunction, sigma: &PGL2) -> bool {
    let inv = sigma.inverse();
    w2.iter().all(|(x, k)| w.weight(&apply(sigma, x)) == k)
        && w.iter().all(|(y, k)| w2.weight(&apply(&inv, y)) == k)
}

/// Some `σ ∈ PGL(2,k)` with `w2(x) = w(σx)` for every point, if one exists.
///
/// With at most two weighted points the supports are matched in sorted order
/// and padded to triples by unweighted points. With three or more, the first
/// three points of `w2` are sent to every weight-matching ordered triple of
/// `w` in turn and the first map that carries the support correctly wins.
pub fn weights_equivalent(w: &WeightFunction, w2: &WeightFunction) -> Result<Option<PGL2>> {
    if w.field() != w2.field() {
        return Err(Error::MixedFields);
    }
    let field = w.field();
    if w.weight_multiset() != w2.weight_multiset() {
        return Ok(None);
    }
    let (s, s2) = (w.sorted_support(), w2.sorted_support());
    if s.len() <= 2 {
        let mut from: Vec<RationalPoint> = s2.iter().map(|(x, _)| x.clone()).collect();
        let mut to: Vec<RationalPoint> = s.iter().map(|(x, _)| x.clone()).collect();
        pad(field, &mut from);
        pad(field, &mut to);
        let sigma = mobius_through(&triple(&from), &triple(&to))?;
        return Ok(Some(sigma));
    }
    let from = [s2[0].0.clone(), s2[1].0.clone(), s2[2].0.clone()];
    let n = s.len();
    for i in 0..n {
        if s[i].1 != s2[0].1 {
            continue;
        }
        for j in (0..n).filter(|&j| j != i && s[j].1 == s2[1].1) {
            for k in (0..n).filter(|&k| k != i && k != j && s[k].1 == s2[2].1) {
                let to = [s[i].0.clone(), s[j].0.clone(), s[k].0.clone()];
                let sigma = mobius_through(&from, &to)?;
                if is_witness(w, w2, &sigma) {
                    return Ok(Some(sigma));
                }
            }
        }
    }
    Ok(None)
}

/// Extends a list of at most two points to three distinct points using
/// `0, 1, ∞, 2, 3, …` in that order.
fn pad(field: Field, pts: &mut Vec<RationalPoint>) {
    let candidates = [RationalPoint::from_i64(field, 0), RationalPoint::from_i64(field, 1), RationalPoint::infinity(field)]
        .into_iter()
        .chain((2..).map(|n| RationalPoint::from_i64(field, n)));
    for c in candidates {
        if pts.len() == 3 {
            break;
        }
        if !pts.contains(&c) {
            pts.push(c);
        }
    }
}

fn triple(v: &[RationalPoint]) -> [RationalPoint; 3] {
    [v[0].clone(), v[1].clone(), v[2].clone()]
}

/// `λᵢ ↦ pᵢ`.
pub fn weight_function_of(spec: &WPLSpec) -> WeightFunction {
    WeightFunction::new(spec.field(), spec.points().iter().cloned().zip(spec.weights().iter().copied()))
        .expect("spec points are distinct and weights at least 2")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn pt(s: &str) -> RationalPoint {
        RationalPoint::parse(q(), s).unwrap()
    }

    fn tri(a: &str, b: &str, c: &str) -> [RationalPoint; 3] {
        [pt(a), pt(b), pt(c)]
    }

    #[test]
    fn apply_examples() {
        let swap = PGL2::from_i64(q(), [[0, 1], [1, 0]]).unwrap();
        assert_eq!(apply(&swap, &pt("0")), pt("inf"));
        assert_eq!(apply(&swap, &pt("2")), pt("1/2"));
        assert_eq!(apply(&PGL2::identity(q()), &pt("3/7")), pt("3/7"));
    }

    #[test]
    fn normalization() {
        let g = PGL2::from_i64(q(), [[2, 4], [6, 2]]).unwrap();
        assert_eq!(g, PGL2::from_i64(q(), [[1, 2], [3, 1]]).unwrap());
        let g = PGL2::from_i64(q(), [[0, 3], [3, 0]]).unwrap();
        assert_eq!(g.to_string(), "[[0,1],[1,0]]");
        assert!(PGL2::from_i64(q(), [[1, 2], [2, 4]]).is_err());
    }

    #[test]
    fn mobius_examples() {
        let std = tri("0", "1", "inf");
        assert_eq!(mobius_through(&std, &std).unwrap(), PGL2::identity(q()));
        let s = mobius_through(&std, &tri("1", "0", "inf")).unwrap();
        for (x, y) in [("0", "1"), ("1", "0"), ("inf", "inf"), ("5", "-4"), ("1/3", "2/3")] {
            assert_eq!(apply(&s, &pt(x)), pt(y));
        }
        let t = tri("2", "-1", "1/2");
        let a = mobius_through(&std, &t).unwrap();
        let b = mobius_through(&t, &std).unwrap();
        assert_eq!(a.compose(&b), PGL2::identity(q()));
        assert_eq!(mobius_through(&tri("0", "0", "1"), &std), Err(Error::DegenerateTriple));
    }

    #[test]
    fn equivalence_examples() {
        let w = WeightFunction::parse(q(), "0:2,1:3").unwrap();
        let w2 = WeightFunction::parse(q(), "inf:2,5:3").unwrap();
        let s = weights_equivalent(&w, &w2).unwrap().unwrap();
        assert!(is_witness(&w, &w2, &s));
        assert_eq!(apply(&s, &pt("inf")), pt("0"));
        assert_eq!(apply(&s, &pt("5")), pt("1"));

        let w = WeightFunction::parse(q(), "0:2,1:2,inf:2,2:2").unwrap();
        let half = WeightFunction::parse(q(), "0:2,1:2,inf:2,1/2:2").unwrap();
        let three = WeightFunction::parse(q(), "0:2,1:2,inf:2,3:2").unwrap();
        assert!(weights_equivalent(&w, &half).unwrap().is_some_and(|s| is_witness(&w, &half, &s)));
        assert_eq!(weights_equivalent(&w, &three).unwrap(), None);

        let a = WeightFunction::parse(q(), "0:2").unwrap();
        let b = WeightFunction::parse(q(), "0:3").unwrap();
        assert_eq!(weights_equivalent(&a, &b).unwrap(), None);
    }

    #[test]
    fn weight_function_parsing() {
        assert_eq!(WeightFunction::parse(q(), "0:1"), Err(Error::WeightTooSmall(1)));
        assert_eq!(WeightFunction::parse(q(), "0:2,0:3"), Err(Error::DuplicatePoints));
        assert!(WeightFunction::parse(q(), "").unwrap().is_empty());
        let f5 = Field::prime(5).unwrap();
        assert_eq!(RationalPoint::parse(f5, "7").unwrap(), RationalPoint::from_i64(f5, 2));
    }

    #[test]
    fn pgl_f5_has_120_elements() {
        assert_eq!(PGL2::all(Field::prime(5).unwrap()).len(), 120);
        assert_eq!(PGL2::all(Field::prime(3).unwrap()).len(), 24);
    }
}
