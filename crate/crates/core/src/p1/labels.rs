use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{is_irreducible, parse_poly, parse_scalar, Field, Poly, Scalar};

/// Closed point of ℙ¹: a monic irreducible `f ∈ k[y]`, or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedPoint {
    Finite(Poly),
    Infinity,
}

impl ClosedPoint {
    /// Checks that `f` is monic irreducible.
    pub fn finite(f: Poly) -> Result<ClosedPoint> {
        if !is_irreducible(&f)? {
            return Err(Error::NotIrreducible(f.to_string()));
        }
        Ok(ClosedPoint::Finite(f))
    }

    /// The rational point `y = λ`.
    pub fn at(lambda: &Scalar) -> ClosedPoint {
        ClosedPoint::Finite(Poly::linear(lambda))
    }

    /// The rational point `[λ0:λ1]`, dehomogenized by `y = x1/x0`.
    pub fn rational(l0: &Scalar, l1: &Scalar) -> Result<ClosedPoint> {
        match (l0.is_zero(), l1.is_zero()) {
            (true, true) => Err(Error::InvalidInput("[0:0] is not a point".into())),
            (true, false) => Ok(ClosedPoint::Infinity),
            _ => Ok(ClosedPoint::at(&(l1 / l0))),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            ClosedPoint::Infinity => 1,
            ClosedPoint::Finite(f) => f.deg0() as u32,
        }
    }

    /// `"inf"` or a polynomial in the text grammar.
    pub fn parse(field: Field, text: &str) -> Result<ClosedPoint> {
        let t = text.trim();
        if t == "inf" {
            return Ok(ClosedPoint::Infinity);
        }
        ClosedPoint::finite(parse_poly(field, t)?)
    }

    /// A rational point written `a`, `a/b` (meaning `y = a/b`) or `inf`.
    pub fn parse_rational(field: Field, text: &str) -> Result<ClosedPoint> {
        let t = text.trim();
        if t == "inf" {
            return Ok(ClosedPoint::Infinity);
        }
        Ok(ClosedPoint::at(&parse_scalar(field, t)?))
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Infinity => f.write_str("inf"),
            ClosedPoint::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for ClosedPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Indecomposable coherent sheaf on ℙ¹.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P1Label {
    /// `O(n)`.
    LB(i64),
    /// Length `r` torsion sheaf supported at a point.
    Tor(ClosedPoint, u32),
}

impl P1Label {
    /// Reads `O(n)` or `T(point,r)`.
    pub fn parse(field: Field, text: &str) -> Result<P1Label> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid sheaf label `{text}`"));
        if let Some(inner) = t.strip_prefix("O(").and_then(|s| s.strip_suffix(')')) {
            return inner.parse().map(P1Label::LB).map_err(|_| bad());
        }
        let inner = t.strip_prefix("T(").and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
        let (pt, r) = inner.rsplit_once(',').ok_or_else(bad)?;
        let r: u32 = r.parse().map_err(|_| bad())?;
        if r == 0 {
            return Err(Error::InvalidInput("torsion length must be positive".into()));
        }
        Ok(P1Label::Tor(ClosedPoint::parse(field, pt)?, r))
    }

    pub fn is_torsion(&self) -> bool {
        matches!(self, P1Label::Tor(..))
    }
}

impl fmt::Display for P1Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Label::LB(n) => write!(f, "O({n})"),
            P1Label::Tor(p, r) => write!(f, "T({p},{r})"),
        }
    }
}

impl Serialize for P1Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A sheaf label placed in homological degree `-shift` of the derived category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DerivedLabel {
    pub base: P1Label,
    pub shift: i32,
}

impl fmt::Display for DerivedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shift {
            0 => write!(f, "{}", self.base),
            s => write!(f, "{}[{s}]", self.base),
        }
    }
}

pub fn hom_dim(f: &P1Label, g: &P1Label) -> u64 {
    use P1Label::*;
    match (f, g) {
        (LB(m), LB(n)) => (n - m + 1).max(0) as u64,
        (LB(_), Tor(p, r)) => *r as u64 * p.degree() as u64,
        (Tor(..), LB(_)) => 0,
        (Tor(p, r), Tor(q, s)) if p == q => p.degree() as u64 * (*r).min(*s) as u64,
        (Tor(..), Tor(..)) => 0,
    }
}

/// `dim Ext¹(F, G) = dim Hom(G, F(-2))`.
pub fn ext_dim(f: &P1Label, g: &P1Label) -> u64 {
    hom_dim(g, &twist(f, -2))
}

pub fn twist(f: &P1Label, n: i64) -> P1Label {
    match f {
        P1Label::LB(m) => P1Label::LB(m + n),
        t => t.clone(),
    }
}

/// Auslander-Reiten translate, which on ℙ¹ is the twist by −2.
pub fn tau(f: &P1Label) -> P1Label {
    twist(f, -2)
}

pub fn tau_inverse(f: &P1Label) -> P1Label {
    twist(f, 2)
}

/// True iff the labels generate `add(O(n) ⊕ O(n+1))` for some `n`.
pub fn is_tilting_p1(labels: &[P1Label]) -> bool {
    let mut twists = Vec::new();
    for l in labels {
        match l {
            P1Label::LB(n) => twists.push(*n),
            P1Label::Tor(..) => return false,
        }
    }
    twists.sort_unstable();
    twists.dedup();
    twists.len() == 2 && twists[1] == twists[0] + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// `ε_x`: raises line bundles by `deg x`.
    Epsilon,
    /// `δ_x`: inverse of `ε_x`.
    Delta,
}

/// Tubular mutation at `x` on a sheaf label. Torsion labels are fixed.
pub fn mutate(f: &P1Label, x: &ClosedPoint, direction: Mutation) -> P1Label {
    let d = x.degree() as i64;
    match direction {
        Mutation::Epsilon => twist(f, d),
        Mutation::Delta => twist(f, -d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn pt(s: &str) -> ClosedPoint {
        ClosedPoint::parse(q(), s).unwrap()
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_dim(&P1Label::LB(0), &P1Label::LB(3)), 4);
        assert_eq!(hom_dim(&P1Label::Tor(pt("y"), 2), &P1Label::LB(7)), 0);
        assert_eq!(hom_dim(&P1Label::LB(5), &P1Label::Tor(pt("y^2+1"), 2)), 4);
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ext_dim(&P1Label::LB(1), &P1Label::LB(-1)), 1);
        assert_eq!(ext_dim(&P1Label::LB(0), &P1Label::LB(0)), 0);
        let s = P1Label::Tor(pt("y-3"), 1);
        assert_eq!(ext_dim(&s, &s), 1);
    }

    #[test]
    fn twist_and_tau() {
        assert_eq!(twist(&P1Label::LB(2), -2), P1Label::LB(0));
        let t = P1Label::Tor(pt("y"), 3);
        assert_eq!(twist(&t, 5), t);
        assert_eq!(tau(&P1Label::LB(0)), P1Label::LB(-2));
        assert_eq!(tau(&t), t);
        assert_eq!(tau_inverse(&tau(&P1Label::LB(4))), P1Label::LB(4));
    }

    #[test]
    fn tilting() {
        use P1Label::LB;
        assert!(is_tilting_p1(&[LB(0), LB(1)]));
        assert!(!is_tilting_p1(&[LB(0), LB(2)]));
        assert!(is_tilting_p1(&[LB(3), LB(4), LB(4)]));
        assert!(!is_tilting_p1(&[LB(0), LB(1), P1Label::Tor(pt("y"), 1)]));
        assert!(!is_tilting_p1(&[LB(0)]));
    }

    #[test]
    fn mutations() {
        let x = pt("y-1");
        assert_eq!(mutate(&P1Label::LB(0), &x, Mutation::Epsilon), P1Label::LB(1));
        let x2 = pt("y^2+1");
        assert_eq!(mutate(&P1Label::LB(1), &x2, Mutation::Epsilon), P1Label::LB(3));
        for n in -5..5 {
            let l = P1Label::LB(n);
            assert_eq!(mutate(&mutate(&l, &x2, Mutation::Epsilon), &x2, Mutation::Delta), l);
        }
    }

    #[test]
    fn label_text() {
        for s in ["O(-3)", "T(inf,3)", "T(y^2+1,2)", "T(y-1/2,1)"] {
            assert_eq!(P1Label::parse(q(), s).unwrap().to_string(), s);
        }
        assert!(P1Label::parse(q(), "T(y^2-1,1)").is_err());
        assert!(P1Label::parse(q(), "T(y,0)").is_err());
        assert!(P1Label::parse(q(), "O(x)").is_err());
    }

    #[test]
    fn rational_points() {
        let f = q();
        assert_eq!(ClosedPoint::rational(&f.zero(), &f.one()).unwrap(), ClosedPoint::Infinity);
        assert_eq!(ClosedPoint::rational(&f.from_i64(2), &f.from_i64(1)).unwrap(), pt("y-1/2"));
        assert_eq!(ClosedPoint::parse_rational(f, "1/2").unwrap(), pt("y-1/2"));
    }
}
