//! Weighted projective lines: the grading group `L(p)`, line bundles and
//! torsion labels, classes in the Grothendieck group, the Euler form and the
//! Coxeter transformation.
//!
//! Classes are coordinates in the basis of the squid tilting object
//! `L ⊕ L' ⊕ S₁[1] ⊕ … ⊕ S₁[p₁-1] ⊕ …` where `L = O` and `L' = O(c)`.
//! Simples of the exceptional tube on arm `i` are `S_{ij}`, `j ∈ ℤ/pᵢ`, with
//! `τ S_{ij} = S_{i,j+1}` and `O` mapping onto `S_{i1}`; the torsion sheaf
//! `TorE(i, j, l)` is uniserial with top `S_{ij}` and factors `S_{ij}, S_{i,j+1}, …`.

use std::fmt;
use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebras::{self, coxeter_of_gram, integral};
use crate::error::{Error, Result};
use crate::exact::intmat::{self, IntMatrix};
use crate::exact::Field;
use crate::lengthcat::{tube_hom, TubeLabel};
use crate::p1::ClosedPoint;
use crate::weights::RationalPoint;

/// Weights `p₁, …, pₙ ≥ 2` at distinct rational points `λ₁, …, λₙ`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct WPLSpec {
    field: Field,
    weights: Vec<u32>,
    points: Vec<RationalPoint>,
    gram: OnceLock<IntMatrix>,
    coxeter: OnceLock<Result<IntMatrix>>,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    #[serde(default = "rationals")]
    field: Field,
    weights: Vec<u32>,
    points: Vec<String>,
}

fn rationals() -> Field {
    Field::Rationals
}

impl TryFrom<SpecJson> for WPLSpec {
    type Error = Error;
    fn try_from(j: SpecJson) -> Result<WPLSpec> {
        if let Field::Prime(p) = j.field {
            Field::prime(p)?;
        }
        let points = j.points.iter().map(|s| RationalPoint::parse(j.field, s)).collect::<Result<Vec<_>>>()?;
        WPLSpec::new(j.field, j.weights, points)
    }
}

impl From<WPLSpec> for SpecJson {
    fn from(s: WPLSpec) -> SpecJson {
        SpecJson { field: s.field, weights: s.weights, points: s.points.iter().map(|p| p.to_string()).collect() }
    }
}

impl PartialEq for WPLSpec {
    fn eq(&self, o: &Self) -> bool {
        (self.field, &self.weights, &self.points) == (o.field, &o.weights, &o.points)
    }
}

impl Eq for WPLSpec {}

impl WPLSpec {
    pub fn new(field: Field, weights: Vec<u32>, points: Vec<RationalPoint>) -> Result<WPLSpec> {
        if weights.len() != points.len() {
            return Err(Error::ArityMismatch { expected: weights.len(), got: points.len() });
        }
        if let Some(&w) = weights.iter().find(|&&w| w < 2) {
            return Err(Error::WeightTooSmall(w));
        }
        if points.iter().any(|x| x.field() != field) {
            return Err(Error::MixedFields);
        }
        for (i, x) in points.iter().enumerate() {
            if points[..i].contains(x) {
                return Err(Error::DuplicatePoints);
            }
        }
        Ok(WPLSpec { field, weights, points, gram: OnceLock::new(), coxeter: OnceLock::new() })
    }

    /// Weights at `0, 1, ∞, 2, 3, …` in order, over ℚ.
    pub fn standard(weights: &[u32]) -> Result<WPLSpec> {
        let f = Field::Rationals;
        let points = (0..weights.len())
            .map(|k| match k {
                0 => RationalPoint::from_i64(f, 0),
                1 => RationalPoint::from_i64(f, 1),
                2 => RationalPoint::infinity(f),
                k => RationalPoint::from_i64(f, k as i64 - 1),
            })
            .collect();
        WPLSpec::new(f, weights.to_vec(), points)
    }

    pub fn from_json(text: &str) -> Result<WPLSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn arms(&self) -> usize {
        self.weights.len()
    }

    /// `2 + Σ(pᵢ − 1)`.
    pub fn k0_rank(&self) -> usize {
        2 + self.weights.iter().map(|&p| p as usize - 1).sum::<usize>()
    }

    /// Position of `[S_i[1]]` in the class coordinates (arms numbered from 1).
    fn offset(&self, i: usize) -> usize {
        2 + self.weights[..i - 1].iter().map(|&p| p as usize - 1).sum::<usize>()
    }

    fn check_arm(&self, i: usize) -> Result<u32> {
        if i == 0 || i > self.arms() {
            return Err(Error::InvalidInput(format!("arm {i} outside 1..={}", self.arms())));
        }
        Ok(self.weights[i - 1])
    }

    /// Euler form Gram matrix in the squid basis (the squid Cartan matrix).
    pub fn gram(&self) -> &IntMatrix {
        self.gram.get_or_init(|| {
            let sq = algebras::squid(&self.weights, &self.points).expect("validated spec");
            algebras::cartan(&sq).expect("squid quiver is acyclic")
        })
    }
}

/// `l·c + Σ aᵢ·xᵢ` with `0 ≤ aᵢ < pᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LElem {
    pub l: i64,
    pub arm: Vec<u32>,
}

/// Normal form of `l·c + Σ rawᵢ·xᵢ`.
pub fn l_normal_form(spec: &WPLSpec, l: i64, raw: &[i64]) -> Result<LElem> {
    if raw.len() != spec.arms() {
        return Err(Error::ArityMismatch { expected: spec.arms(), got: raw.len() });
    }
    let mut l = l;
    let arm = raw
        .iter()
        .zip(&spec.weights)
        .map(|(&a, &p)| {
            let p = p as i64;
            l += a.div_euclid(p);
            a.rem_euclid(p) as u32
        })
        .collect();
    Ok(LElem { l, arm })
}

impl LElem {
    pub fn zero(spec: &WPLSpec) -> LElem {
        LElem { l: 0, arm: vec![0; spec.arms()] }
    }

    /// `c`.
    pub fn c(spec: &WPLSpec) -> LElem {
        LElem { l: 1, arm: vec![0; spec.arms()] }
    }

    /// `k·xᵢ` (arms numbered from 1).
    pub fn x(spec: &WPLSpec, i: usize, k: i64) -> Result<LElem> {
        spec.check_arm(i)?;
        let mut raw = vec![0; spec.arms()];
        raw[i - 1] = k;
        l_normal_form(spec, 0, &raw)
    }

    fn raw(&self) -> Vec<i64> {
        self.arm.iter().map(|&a| a as i64).collect()
    }

    pub fn add(&self, spec: &WPLSpec, o: &LElem) -> LElem {
        let raw: Vec<i64> = self.raw().iter().zip(o.raw()).map(|(a, b)| a + b).collect();
        l_normal_form(spec, self.l + o.l, &raw).expect("same arity")
    }

    pub fn neg(&self, spec: &WPLSpec) -> LElem {
        let raw: Vec<i64> = self.raw().iter().map(|a| -a).collect();
        l_normal_form(spec, -self.l, &raw).expect("same arity")
    }

    pub fn sub(&self, spec: &WPLSpec, o: &LElem) -> LElem {
        self.add(spec, &o.neg(spec))
    }

    /// `x ≥ 0` in the partial order of `L(p)`.
    pub fn is_nonnegative(&self) -> bool {
        self.l >= 0
    }

    /// `"l"` or `"l;a1,a2,…"`.
    pub fn parse(spec: &WPLSpec, text: &str) -> Result<LElem> {
        let bad = || Error::Parse(format!("expected `l` or `l;a1,…,an`, got `{text}`"));
        let (l, arm) = match text.split_once(';') {
            Some((l, a)) => (l, a),
            None => (text, ""),
        };
        let l: i64 = l.trim().parse().map_err(|_| bad())?;
        let raw: Vec<i64> = if arm.trim().is_empty() {
            vec![0; spec.arms()]
        } else {
            arm.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
        };
        l_normal_form(spec, l, &raw)
    }
}

impl fmt::Display for LElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.l)?;
        if !self.arm.is_empty() {
            let a: Vec<String> = self.arm.iter().map(u32::to_string).collect();
            write!(f, ";{}", a.join(","))?;
        }
        Ok(())
    }
}

/// Dimension of `S(p,λ)` in degree `x`, counted by listing the monomials
/// `u^a v^b ∏ xᵢ^{eᵢ}` (`0 ≤ eᵢ < pᵢ`) of that degree.
pub fn graded_dim(spec: &WPLSpec, x: &LElem) -> u64 {
    let mut exps = vec![0u32; spec.arms()];
    let mut count = 0;
    loop {
        if exps == x.arm {
            // u^a v^(l-a)
            for _a in 0..=x.l {
                count += 1;
            }
        }
        // next exponent vector
        let mut k = 0;
        while k < exps.len() {
            exps[k] += 1;
            if exps[k] < spec.weights[k] {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
        if k == exps.len() {
            break;
        }
    }
    count
}

/// `Hom(O(a), O(b)) = S_{b−a}`.
pub fn hom_dim_lb(spec: &WPLSpec, a: &LElem, b: &LElem) -> u64 {
    graded_dim(spec, &b.sub(spec, a))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WPLLabel {
    /// The line bundle `O(x)`.
    LB(LElem),
    /// Uniserial of length `r` at a point outside the weighted ones.
    TorH(ClosedPoint, u32),
    /// Uniserial in the tube of arm `i` (from 1) with top `S_{ij}` and length `l`.
    TorE(usize, u32, u32),
}

impl WPLLabel {
    pub fn is_torsion(&self) -> bool {
        !matches!(self, WPLLabel::LB(_))
    }

    /// `O(l;a1,…)`, `H(point,r)` or `E(i,j,l)`.
    pub fn parse(spec: &WPLSpec, text: &str) -> Result<WPLLabel> {
        let t = text.trim();
        let bad = || Error::Parse(format!("invalid label `{text}`"));
        let inner = |prefix: &str| t.strip_prefix(prefix).and_then(|s| s.strip_suffix(')'));
        let label = if let Some(x) = inner("O(") {
            WPLLabel::LB(LElem::parse(spec, x)?)
        } else if let Some(s) = inner("H(") {
            let (q, r) = s.rsplit_once(',').ok_or_else(bad)?;
            WPLLabel::TorH(ClosedPoint::parse(spec.field, q)?, r.trim().parse().map_err(|_| bad())?)
        } else if let Some(s) = inner("E(") {
            let v: Vec<i64> = s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
            let [i, j, l] = v[..] else { return Err(bad()) };
            if i < 1 || l < 1 {
                return Err(bad());
            }
            let p = spec.check_arm(i as usize)? as i64;
            WPLLabel::TorE(i as usize, j.rem_euclid(p) as u32, l as u32)
        } else {
            return Err(bad());
        };
        check_label(spec, &label)?;
        Ok(label)
    }
}

impl fmt::Display for WPLLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WPLLabel::LB(x) => write!(f, "O({x})"),
            WPLLabel::TorH(q, r) => write!(f, "H({q},{r})"),
            WPLLabel::TorE(i, j, l) => write!(f, "E({i},{j},{l})"),
        }
    }
}

impl Serialize for WPLLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Checks arities, arm indices and that homogeneous points avoid the weighted ones.
pub fn check_label(spec: &WPLSpec, label: &WPLLabel) -> Result<()> {
    match label {
        WPLLabel::LB(x) => {
            if x.arm.len() != spec.arms() {
                return Err(Error::ArityMismatch { expected: spec.arms(), got: x.arm.len() });
            }
            if x.arm.iter().zip(&spec.weights).any(|(a, p)| a >= p) {
                return Err(Error::InvalidInput(format!("{x} is not in normal form")));
            }
        }
        WPLLabel::TorH(q, r) => {
            if *r == 0 {
                return Err(Error::InvalidInput("torsion length must be positive".into()));
            }
            if spec.points.iter().any(|x| &x.closed_point() == q) {
                return Err(Error::InvalidInput(format!("{q} is a weighted point")));
            }
        }
        WPLLabel::TorE(i, j, l) => {
            let p = spec.check_arm(*i)?;
            if *j >= p || *l == 0 {
                return Err(Error::InvalidInput(format!("invalid exceptional torsion E({i},{j},{l})")));
            }
        }
    }
    Ok(())
}

/// `[O, O(c), E(i,1,l) for l = 1..pᵢ-1]`: the summands of the squid tilting
/// object, in class-coordinate order.
pub fn squid_basis(spec: &WPLSpec) -> Vec<WPLLabel> {
    let mut out = vec![WPLLabel::LB(LElem::zero(spec)), WPLLabel::LB(LElem::c(spec))];
    for (i, &p) in spec.weights.iter().enumerate() {
        out.extend((1..p).map(|l| WPLLabel::TorE(i + 1, 1, l)));
    }
    out
}

pub type K0Vector = Vec<i64>;

fn unit(spec: &WPLSpec, k: usize) -> K0Vector {
    let mut v = vec![0; spec.k0_rank()];
    v[k] = 1;
    v
}

fn add_into(acc: &mut [i64], v: &[i64], times: i64) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += times * b;
    }
}

/// `[L'] − [L]`, the class of a simple sheaf at a rational point off the weighted ones.
fn homogeneous_simple(spec: &WPLSpec) -> K0Vector {
    let mut v = vec![0; spec.k0_rank()];
    v[0] = -1;
    v[1] = 1;
    v
}

/// `[S_{ij}]` from `[S_i[m]] = Σ_{t<m} [S_{i,1+t}]` and the full period
/// summing to `[L'] − [L]`.
pub fn simple_class(spec: &WPLSpec, i: usize, j: i64) -> Result<K0Vector> {
    let p = spec.check_arm(i)? as i64;
    let off = spec.offset(i);
    let s = |m: i64| unit(spec, off + m as usize - 1);
    let mut v = vec![0; spec.k0_rank()];
    match j.rem_euclid(p) {
        0 => {
            add_into(&mut v, &homogeneous_simple(spec), 1);
            add_into(&mut v, &s(p - 1), -1);
        }
        1 => add_into(&mut v, &s(1), 1),
        m => {
            add_into(&mut v, &s(m), 1);
            add_into(&mut v, &s(m - 1), -1);
        }
    }
    Ok(v)
}

/// Class of a label in the squid basis.
///
/// `O(l·c + Σ aᵢxᵢ)` is filtered by `O(l·c) ⊂ … ` with one step per arm
/// unit; the cokernel of `O(x) → O(x + xᵢ)` is the simple that `O(x + xᵢ)`
/// maps onto, `S_{i, 1−aᵢ(x+xᵢ)}`.
pub fn class_of(spec: &WPLSpec, label: &WPLLabel) -> Result<K0Vector> {
    check_label(spec, label)?;
    let mut v = vec![0; spec.k0_rank()];
    match label {
        WPLLabel::LB(x) => {
            v[0] = 1 - x.l;
            v[1] = x.l;
            for (i, &a) in x.arm.iter().enumerate() {
                for m in 1..=a as i64 {
                    add_into(&mut v, &simple_class(spec, i + 1, 1 - m)?, 1);
                }
            }
        }
        WPLLabel::TorH(q, r) => add_into(&mut v, &homogeneous_simple(spec), (*r * q.degree()) as i64),
        WPLLabel::TorE(i, j, l) => {
            for t in 0..*l {
                add_into(&mut v, &simple_class(spec, *i, (*j + t) as i64)?, 1);
            }
        }
    }
    Ok(v)
}

/// `⟨u, v⟩ = uᵀ·G·v`.
pub fn euler(spec: &WPLSpec, u: &[i64], v: &[i64]) -> Result<i64> {
    let m = spec.k0_rank();
    if u.len() != m || v.len() != m {
        return Err(Error::DimensionMismatch(format!("expected vectors of length {m}, got {} and {}", u.len(), v.len())));
    }
    Ok(intmat::bilinear(spec.gram(), u, v))
}

/// Rank: 1 on `[L]` and `[L']`, 0 on torsion.
pub fn rank(x: &[i64]) -> i64 {
    x[0] + x[1]
}

/// Degree with `deg O = 0`, `deg([L'] − [L]) = 1` and `deg S_{ij} = 1/pᵢ`.
pub fn degree(spec: &WPLSpec, x: &[i64]) -> Ratio<i64> {
    let mut d = Ratio::from_integer(x[1]);
    for (i, &p) in spec.weights.iter().enumerate() {
        let off = spec.offset(i + 1);
        for m in 1..p as usize {
            d += Ratio::new(m as i64 * x[off + m - 1], p as i64);
        }
    }
    d
}

/// `lcm(p₁, …, pₙ)`, the denominator that makes [`degree`] integral.
pub fn degree_scale(spec: &WPLSpec) -> i64 {
    spec.weights.iter().fold(1i64, |a, &p| num_integer::lcm(a, p as i64))
}

/// `degree_scale · degree`.
pub fn degree_int(spec: &WPLSpec, x: &[i64]) -> i64 {
    (degree(spec, x) * degree_scale(spec)).to_integer()
}

/// `dim Hom(O(x), S_{ij}) = ⟨[O(x)], [S_{ij}]⟩`; the extension group vanishes.
pub fn hom_line_to_simple(spec: &WPLSpec, x: &LElem, i: usize, j: i64) -> Result<u64> {
    let a = class_of(spec, &WPLLabel::LB(x.clone()))?;
    let v = euler(spec, &a, &simple_class(spec, i, j)?)?;
    match v {
        0 | 1 => Ok(v as u64),
        _ => Err(Error::InternalInconsistency(format!("Hom(O({x}), S_({i},{j})) evaluates to {v}"))),
    }
}

/// `Φ = −G⁻¹Gᵀ` on class coordinates; `Φ[X] = [τX]`.
pub fn coxeter_action(spec: &WPLSpec) -> Result<IntMatrix> {
    spec.coxeter
        .get_or_init(|| {
            let g = spec.gram();
            if intmat::det_i64(g).is_none_or(|d| d.abs() != 1) {
                return Err(Error::DegenerateForm);
            }
            integral(&coxeter_of_gram(g)?).ok_or(Error::DegenerateForm)
        })
        .clone()
}

/// The line bundle with a given class: each arm block fixes `aᵢ`, then the
/// `L, L'` coordinates fix `l`.
pub fn line_bundle_with_class(spec: &WPLSpec, v: &[i64]) -> Result<LElem> {
    let missing = || Error::NoLineBundleWithClass(format!("{v:?}"));
    if v.len() != spec.k0_rank() {
        return Err(missing());
    }
    let mut rest = v.to_vec();
    let mut arm = Vec::with_capacity(spec.arms());
    for (i, &p) in spec.weights.iter().enumerate() {
        let off = spec.offset(i + 1);
        let block = off..off + p as usize - 1;
        let mut contrib = vec![0; spec.k0_rank()];
        let mut found = None;
        for a in 0..p {
            if contrib[block.clone()] == v[block.clone()] {
                found = Some((a, contrib.clone()));
                break;
            }
            add_into(&mut contrib, &simple_class(spec, i + 1, -(a as i64))?, 1);
        }
        let (a, c) = found.ok_or_else(missing)?;
        arm.push(a);
        add_into(&mut rest, &c, -1);
    }
    let l = rest[1];
    if rest[0] != 1 - l || rest[2..].iter().any(|&x| x != 0) {
        return Err(missing());
    }
    Ok(LElem { l, arm })
}

/// Auslander-Reiten translate of a label. Tubes rotate; line bundles are
/// found from their class `Φ·[O(x)]`.
pub fn tau_label(spec: &WPLSpec, label: &WPLLabel) -> Result<WPLLabel> {
    check_label(spec, label)?;
    Ok(match label {
        WPLLabel::TorE(i, j, l) => WPLLabel::TorE(*i, (j + 1) % spec.weights[i - 1], *l),
        WPLLabel::TorH(..) => label.clone(),
        WPLLabel::LB(_) => {
            let phi = coxeter_action(spec)?;
            let v = intmat::mul_vec(&phi, &class_of(spec, label)?);
            WPLLabel::LB(line_bundle_with_class(spec, &v)?)
        }
    })
}

/// `dim Hom(a, b)` between labels.
pub fn hom_label(spec: &WPLSpec, a: &WPLLabel, b: &WPLLabel) -> Result<u64> {
    check_label(spec, a)?;
    check_label(spec, b)?;
    Ok(match (a, b) {
        (WPLLabel::LB(x), WPLLabel::LB(y)) => hom_dim_lb(spec, x, y),
        (WPLLabel::LB(_), WPLLabel::TorH(q, r)) => (*r * q.degree()) as u64,
        (WPLLabel::LB(_), WPLLabel::TorE(..)) => {
            let v = euler(spec, &class_of(spec, a)?, &class_of(spec, b)?)?;
            u64::try_from(v).map_err(|_| Error::InternalInconsistency(format!("Hom({a}, {b}) evaluates to {v}")))?
        }
        (_, WPLLabel::LB(_)) => 0,
        (WPLLabel::TorH(q, r), WPLLabel::TorH(q2, s)) => {
            if q == q2 {
                (q.degree() * r.min(s)) as u64
            } else {
                0
            }
        }
        (WPLLabel::TorE(i, j, l), WPLLabel::TorE(i2, j2, l2)) => {
            if i != i2 {
                0
            } else {
                let p = spec.weights[i - 1];
                tube_hom(&TubeLabel { rank: p, top: *j, length: *l }, &TubeLabel { rank: p, top: *j2, length: *l2 })?
            }
        }
        _ => 0,
    })
}

/// `Ext¹(a, b) = D Hom(b, τa)`.
pub fn ext_label(spec: &WPLSpec, a: &WPLLabel, b: &WPLLabel) -> Result<u64> {
    hom_label(spec, b, &tau_label(spec, a)?)
}

/// `0 ≤ x ≤ c`: `O`, then `O(j·xᵢ)` arm by arm, then `O(c)`, matching the
/// vertex order of the canonical algebra.
pub fn canonical_tilting(spec: &WPLSpec) -> Vec<WPLLabel> {
    let mut out = vec![WPLLabel::LB(LElem::zero(spec))];
    for (i, &p) in spec.weights.iter().enumerate() {
        out.extend((1..p).map(|j| WPLLabel::LB(LElem::x(spec, i + 1, j as i64).unwrap())));
    }
    out.push(WPLLabel::LB(LElem::c(spec)));
    out
}

/// No self-extensions among the labels and their classes generate the
/// Grothendieck group.
pub fn is_tilting_wpl(spec: &WPLSpec, labels: &[WPLLabel]) -> Result<bool> {
    let classes = labels.iter().map(|l| class_of(spec, l)).collect::<Result<Vec<_>>>()?;
    let mut gram = Vec::new();
    let mut ext = Vec::new();
    for a in labels {
        let mut g = Vec::new();
        let mut e = Vec::new();
        for b in labels {
            let x = ext_label(spec, a, b)? as i64;
            g.push(hom_label(spec, a, b)? as i64 - x);
            e.push(x);
        }
        gram.push(g);
        ext.push(e);
    }
    Ok(algebras::is_tilting_data(&gram, &ext, &classes, spec.k0_rank()))
}

pub fn is_homogeneous(spec: &WPLSpec) -> bool {
    spec.arms() == 0
}

/// Specs from `spec` down to ℙ¹, lowering the last remaining weight by one
/// at each step (an arm of weight 1 is dropped). There are `Σ(pᵢ − 1)`
/// steps, so the list has one more entry than that.
pub fn expansion_chain(spec: &WPLSpec) -> Vec<WPLSpec> {
    let mut out = vec![spec.clone()];
    let (mut w, mut pts) = (spec.weights.clone(), spec.points.clone());
    while let Some(last) = w.last_mut() {
        *last -= 1;
        if *last == 1 {
            w.pop();
            pts.pop();
        }
        out.push(WPLSpec::new(spec.field, w.clone(), pts.clone()).expect("sub-spec of a valid spec"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(w: &[u32]) -> WPLSpec {
        WPLSpec::standard(w).unwrap()
    }

    fn lb(spec: &WPLSpec, l: i64, a: &[i64]) -> WPLLabel {
        WPLLabel::LB(l_normal_form(spec, l, a).unwrap())
    }

    #[test]
    fn normal_forms() {
        let s = sp(&[3]);
        assert_eq!(l_normal_form(&s, 0, &[5]).unwrap(), LElem { l: 1, arm: vec![2] });
        assert_eq!(l_normal_form(&s, 0, &[-1]).unwrap(), LElem { l: -1, arm: vec![2] });
        assert_eq!(l_normal_form(&sp(&[2]), 0, &[2]).unwrap(), LElem { l: 1, arm: vec![0] });
        assert_eq!(l_normal_form(&sp(&[2, 2]), -1, &[0, 0]).unwrap(), LElem { l: -1, arm: vec![0, 0] });
        assert_eq!(l_normal_form(&s, 0, &[1, 1]), Err(Error::ArityMismatch { expected: 1, got: 2 }));
    }

    #[test]
    fn graded_dims() {
        let s = sp(&[2, 3]);
        assert_eq!(graded_dim(&s, &LElem::c(&s)), 2);
        assert_eq!(graded_dim(&s, &LElem::x(&s, 1, 1).unwrap()), 1);
        assert_eq!(graded_dim(&s, &LElem { l: -1, arm: vec![1, 2] }), 0);
        let o = LElem::zero(&s);
        assert_eq!(hom_dim_lb(&s, &o, &LElem::c(&s)), 2);
        assert_eq!(hom_dim_lb(&s, &LElem::c(&s), &o), 0);
    }

    #[test]
    fn squid_basis_and_classes() {
        assert_eq!(squid_basis(&sp(&[])).len(), 2);
        assert_eq!(squid_basis(&sp(&[2, 2])).len(), 4);
        let s = sp(&[2, 3]);
        for (k, l) in squid_basis(&s).iter().enumerate() {
            assert_eq!(class_of(&s, l).unwrap(), unit(&s, k), "{l}");
        }
        let q = ClosedPoint::parse(Field::Rationals, "y-5").unwrap();
        assert_eq!(class_of(&s, &WPLLabel::TorH(q, 1)).unwrap(), vec![-1, 1, 0, 0, 0]);
        let zero = ClosedPoint::parse(Field::Rationals, "y").unwrap();
        assert!(class_of(&s, &WPLLabel::TorH(zero, 1)).is_err());
    }

    #[test]
    fn euler_examples() {
        let s = sp(&[2, 3]);
        let (l, l2) = (unit(&s, 0), unit(&s, 1));
        assert_eq!(euler(&s, &l, &l2).unwrap(), 2);
        assert_eq!(euler(&s, &l, &l).unwrap(), 1);
        let h = homogeneous_simple(&s);
        assert_eq!(euler(&s, &h, &h).unwrap(), 0);
        assert!(matches!(euler(&s, &l[..2], &l), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn rank_and_degree() {
        let s = sp(&[2, 3]);
        let o = class_of(&s, &lb(&s, 2, &[1, 1])).unwrap();
        assert_eq!(rank(&o), 1);
        assert_eq!(degree(&s, &o), Ratio::new(2 * 6 + 3 + 2, 6));
        assert_eq!(degree_int(&s, &o), 17);
        let e = class_of(&s, &WPLLabel::TorE(2, 0, 2)).unwrap();
        assert_eq!(rank(&e), 0);
        assert_eq!(degree(&s, &e), Ratio::new(2, 3));
    }

    #[test]
    fn line_to_simple() {
        let s = sp(&[2, 3, 5]);
        let o = LElem::zero(&s);
        for i in 1..=3 {
            for j in 0..s.weights()[i - 1] as i64 {
                assert_eq!(hom_line_to_simple(&s, &o, i, j).unwrap(), (j == 1) as u64);
            }
        }
        let x2 = LElem::x(&s, 2, 1).unwrap();
        assert_eq!(hom_line_to_simple(&s, &x2, 2, 0).unwrap(), 1);
        assert_eq!(hom_line_to_simple(&s, &x2, 1, 1).unwrap(), 1);
    }

    #[test]
    fn tau_examples() {
        let s = sp(&[]);
        for n in -3..3 {
            assert_eq!(tau_label(&s, &lb(&s, n, &[])).unwrap(), lb(&s, n - 2, &[]));
        }
        let s = sp(&[2, 3]);
        assert_eq!(tau_label(&s, &WPLLabel::TorE(2, 2, 1)).unwrap(), WPLLabel::TorE(2, 0, 1));
        // τ O(x) = O(x + (n−2)c − Σ xᵢ).
        let omega = l_normal_form(&s, 0, &[-1, -1]).unwrap();
        for l in -2..2 {
            for a in 0..2 {
                for b in 0..3 {
                    let x = l_normal_form(&s, l, &[a, b]).unwrap();
                    let want = WPLLabel::LB(x.add(&s, &omega));
                    assert_eq!(tau_label(&s, &WPLLabel::LB(x)).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn tilting_objects() {
        let s = sp(&[2, 3]);
        assert_eq!(canonical_tilting(&s).len(), 5);
        for w in [&[][..], &[2, 3], &[2, 2, 2], &[3, 4]] {
            let s = sp(w);
            assert!(is_tilting_wpl(&s, &squid_basis(&s)).unwrap());
            assert!(is_tilting_wpl(&s, &canonical_tilting(&s)).unwrap());
        }
        let s = sp(&[2]);
        assert!(!is_tilting_wpl(&s, &[lb(&s, 0, &[0]), lb(&s, 2, &[0]), WPLLabel::TorE(1, 1, 1)]).unwrap());
    }

    #[test]
    fn chain() {
        let s = sp(&[2, 2]);
        let c = expansion_chain(&s);
        assert_eq!(c.iter().map(|x| x.weights().to_vec()).collect::<Vec<_>>(), vec![vec![2, 2], vec![2], vec![]]);
        assert!(is_homogeneous(c.last().unwrap()));
        assert!(!is_homogeneous(&s));
        let c = expansion_chain(&sp(&[2, 3]));
        assert_eq!(c.len() - 1, 3);
        for w in c.windows(2) {
            assert_eq!(w[0].k0_rank(), w[1].k0_rank() + 1);
        }
    }

    #[test]
    fn json_round_trip() {
        let s = WPLSpec::from_json(r#"{"field":"Q","weights":[2,3,5],"points":["0","1","inf"]}"#).unwrap();
        assert_eq!(s, sp(&[2, 3, 5]));
        assert_eq!(WPLSpec::from_json(&s.to_json().to_string()).unwrap(), s);
        assert!(WPLSpec::from_json(r#"{"weights":[2,2],"points":["0","0"]}"#).is_err());
    }

    #[test]
    fn label_text() {
        let s = sp(&[2, 3]);
        for t in ["O(1;1,2)", "H(y-5,2)", "E(2,1,4)", "H(y^2+1,1)"] {
            assert_eq!(WPLLabel::parse(&s, t).unwrap().to_string(), t);
        }
        assert_eq!(WPLLabel::parse(&s, "O(0;3,0)").unwrap().to_string(), "O(1;1,0)");
        assert!(WPLLabel::parse(&s, "E(3,0,1)").is_err());
        assert!(WPLLabel::parse(&s, "H(y,1)").is_err());
        assert!(WPLLabel::parse(&s, "H(inf,1)").is_ok());
    }
}
