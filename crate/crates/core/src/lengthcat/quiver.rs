use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ValuedArrow {
    pub from: String,
    pub to: String,
    /// `(s, t)`.
    pub val: (u32, u32),
}

/// Quiver with at most one arrow per ordered pair of vertices, each carrying a
/// valuation `(s, t)` with positive entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawQuiver")]
pub struct ValuedQuiver {
    vertices: Vec<String>,
    arrows: Vec<ValuedArrow>,
}

#[derive(Deserialize)]
struct RawQuiver {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<ValuedArrow>,
}

impl TryFrom<RawQuiver> for ValuedQuiver {
    type Error = Error;
    fn try_from(r: RawQuiver) -> Result<ValuedQuiver> {
        ValuedQuiver::new(r.vertices, r.arrows)
    }
}

impl ValuedQuiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<ValuedArrow>) -> Result<ValuedQuiver> {
        let set: BTreeSet<&String> = vertices.iter().collect();
        if set.len() != vertices.len() {
            return Err(Error::InvalidInput("duplicate vertex names".into()));
        }
        let mut pairs = BTreeSet::new();
        for a in &arrows {
            for end in [&a.from, &a.to] {
                if !set.contains(end) {
                    return Err(Error::VertexNotFound(end.clone()));
                }
            }
            if a.val.0 == 0 || a.val.1 == 0 {
                return Err(Error::InvalidInput(format!("arrow {}->{} has a zero valuation", a.from, a.to)));
            }
            if !pairs.insert((&a.from, &a.to)) {
                return Err(Error::InvalidInput(format!("two arrows {}->{}", a.from, a.to)));
            }
        }
        Ok(ValuedQuiver { vertices, arrows })
    }

    /// Oriented cycle `0 → 1 → … → n-1 → 0` with all valuations `(1,1)`;
    /// a loop when `n = 1`.
    pub fn cyclic(n: usize) -> ValuedQuiver {
        let vertices: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let arrows = (0..n)
            .map(|i| ValuedArrow { from: vertices[i].clone(), to: vertices[(i + 1) % n].clone(), val: (1, 1) })
            .collect();
        ValuedQuiver { vertices, arrows }
    }

    pub fn from_json(text: &str) -> Result<ValuedQuiver> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "arrows": self.arrows.iter().map(|a| serde_json::json!({
                "from": a.from, "to": a.to, "val": [a.val.0, a.val.1]
            })).collect::<Vec<_>>(),
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[ValuedArrow] {
        &self.arrows
    }

    pub fn arrow(&self, from: &str, to: &str) -> Option<&ValuedArrow> {
        self.arrows.iter().find(|a| a.from == from && a.to == to)
    }

    /// Same vertex set and arrows, ignoring list order.
    pub fn same_as(&self, other: &ValuedQuiver) -> bool {
        let sv = |q: &ValuedQuiver| q.vertices.iter().cloned().collect::<BTreeSet<_>>();
        let sa = |q: &ValuedQuiver| q.arrows.iter().cloned().collect::<BTreeSet<_>>();
        sv(self) == sv(other) && sa(self) == sa(other)
    }

    /// Equal up to renaming vertices (backtracking search over bijections).
    pub fn isomorphic(&self, other: &ValuedQuiver) -> bool {
        let n = self.vertices.len();
        if n != other.vertices.len() || self.arrows.len() != other.arrows.len() {
            return false;
        }
        let index = |q: &ValuedQuiver| -> BTreeMap<(usize, usize), (u32, u32)> {
            let pos: BTreeMap<&String, usize> = q.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
            q.arrows.iter().map(|a| ((pos[&a.from], pos[&a.to]), a.val)).collect()
        };
        let (a, b) = (index(self), index(other));
        let degree = |m: &BTreeMap<(usize, usize), (u32, u32)>, v: usize| {
            let mut d: Vec<(u8, (u32, u32))> = m
                .iter()
                .filter(|((s, t), _)| *s == v || *t == v)
                .map(|((s, t), val)| (u8::from(*s == v) + 2 * u8::from(*t == v), *val))
                .collect();
            d.sort();
            d
        };
        let da: Vec<_> = (0..n).map(|v| degree(&a, v)).collect();
        let db: Vec<_> = (0..n).map(|v| degree(&b, v)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            i: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            a: &BTreeMap<(usize, usize), (u32, u32)>,
            b: &BTreeMap<(usize, usize), (u32, u32)>,
            da: &[Vec<(u8, (u32, u32))>],
            db: &[Vec<(u8, (u32, u32))>],
        ) -> bool {
            let n = map.len();
            if i == n {
                return true;
            }
            for j in 0..n {
                if used[j] || da[i] != db[j] {
                    continue;
                }
                let consistent = (0..i).chain(std::iter::once(i)).all(|k| {
                    let mk = if k == i { j } else { map[k] };
                    a.get(&(i, k)) == b.get(&(j, mk)) && a.get(&(k, i)) == b.get(&(mk, j))
                });
                if !consistent {
                    continue;
                }
                map[i] = j;
                used[j] = true;
                if go(i + 1, map, used, a, b, da, db) {
                    return true;
                }
                used[j] = false;
            }
            map[i] = usize::MAX;
            false
        }
        go(0, &mut map, &mut used, &a, &b, &da, &db)
    }

    fn fresh_name(&self, base: String) -> String {
        let mut name = base;
        while self.vertices.contains(&name) {
            name.push('\'');
        }
        name
    }
}

/// Gabriel's criterion on the Ext-quiver: at every vertex the `s`-components
/// of incoming arrows and the `t`-components of outgoing arrows each sum to
/// at most one.
pub fn check_uniserial(q: &ValuedQuiver) -> bool {
    q.vertices.iter().all(|v| {
        let incoming: u32 = q.arrows.iter().filter(|a| &a.to == v).map(|a| a.val.0).sum();
        let outgoing: u32 = q.arrows.iter().filter(|a| &a.from == v).map(|a| a.val.1).sum();
        incoming <= 1 && outgoing <= 1
    })
}

/// Replaces `v` by an arrow `v_l → v_r` of valuation `(1,1)`. Arrows into `v`
/// now end at `v_l`, arrows out of `v` start at `v_r`, and a loop at `v`
/// becomes `v_r → v_l`.
pub fn expand_quiver(q: &ValuedQuiver, v: &str) -> Result<ValuedQuiver> {
    let pos = q.vertices.iter().position(|x| x == v).ok_or_else(|| Error::VertexNotFound(v.into()))?;
    let l = q.fresh_name(format!("{v}_l"));
    let r = q.fresh_name(format!("{v}_r"));
    let mut vertices = q.vertices.clone();
    vertices.splice(pos..=pos, [l.clone(), r.clone()]);
    let mut arrows: Vec<ValuedArrow> = q
        .arrows
        .iter()
        .map(|a| {
            let from = if a.from == v { r.clone() } else { a.from.clone() };
            let to = if a.to == v { l.clone() } else { a.to.clone() };
            ValuedArrow { from, to, val: a.val }
        })
        .collect();
    arrows.push(ValuedArrow { from: l, to: r, val: (1, 1) });
    ValuedQuiver::new(vertices, arrows)
}

/// Inverse of [`expand_quiver`]: merges the ends of a `(1,1)` arrow `a → b`
/// whose source has no other outgoing and whose target has no other incoming
/// arrow. The merged vertex is named `x` when the ends are `x_l` and `x_r`,
/// otherwise after the source.
pub fn contract_quiver(q: &ValuedQuiver, from: &str, to: &str) -> Result<ValuedQuiver> {
    let arrow = q.arrow(from, to).ok_or_else(|| Error::NotContractible(format!("no arrow {from}->{to}")))?;
    if from == to {
        return Err(Error::NotContractible("arrow is a loop".into()));
    }
    if arrow.val != (1, 1) {
        return Err(Error::NotContractible(format!("valuation {:?} is not (1,1)", arrow.val)));
    }
    if q.arrows.iter().any(|a| a.from == from && a.to != to) {
        return Err(Error::NotContractible(format!("{from} has another outgoing arrow")));
    }
    if q.arrows.iter().any(|a| a.to == to && a.from != from) {
        return Err(Error::NotContractible(format!("{to} has another incoming arrow")));
    }
    let merged = match (from.strip_suffix("_l"), to.strip_suffix("_r")) {
        (Some(x), Some(y)) if x == y && !q.vertices.iter().any(|v| v == x) => x.to_string(),
        _ => from.to_string(),
    };
    let pos = q.vertices.iter().position(|x| x == from).unwrap();
    let mut vertices: Vec<String> = Vec::with_capacity(q.vertices.len() - 1);
    for (i, v) in q.vertices.iter().enumerate() {
        if i == pos {
            vertices.push(merged.clone());
        } else if v != to {
            vertices.push(v.clone());
        }
    }
    let rename = |x: &String| if x == from || x == to { merged.clone() } else { x.clone() };
    let arrows = q
        .arrows
        .iter()
        .filter(|a| !(a.from == from && a.to == to))
        .map(|a| ValuedArrow { from: rename(&a.from), to: rename(&a.to), val: a.val })
        .collect();
    ValuedQuiver::new(vertices, arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(f: &str, t: &str, val: (u32, u32)) -> ValuedArrow {
        ValuedArrow { from: f.into(), to: t.into(), val }
    }

    fn quiver(vs: &[&str], arrows: Vec<ValuedArrow>) -> ValuedQuiver {
        ValuedQuiver::new(vs.iter().map(|s| s.to_string()).collect(), arrows).unwrap()
    }

    #[test]
    fn uniserial_examples() {
        assert!(check_uniserial(&ValuedQuiver::cyclic(4)));
        assert!(!check_uniserial(&quiver(&["a"], vec![arrow("a", "a", (2, 2))])));
        let fork = quiver(&["a", "b", "c"], vec![arrow("a", "b", (1, 1)), arrow("a", "c", (1, 1))]);
        assert!(!check_uniserial(&fork));
    }

    #[test]
    fn expand_examples() {
        let loop1 = ValuedQuiver::cyclic(1);
        let e = expand_quiver(&loop1, "0").unwrap();
        assert!(e.isomorphic(&ValuedQuiver::cyclic(2)));
        for n in 2..6 {
            let e = expand_quiver(&ValuedQuiver::cyclic(n), "1").unwrap();
            assert!(e.isomorphic(&ValuedQuiver::cyclic(n + 1)));
        }
        let single = quiver(&["v"], vec![]);
        let e = expand_quiver(&single, "v").unwrap();
        assert!(e.same_as(&quiver(&["v_l", "v_r"], vec![arrow("v_l", "v_r", (1, 1))])));
        assert_eq!(expand_quiver(&single, "w"), Err(Error::VertexNotFound("w".into())));
    }

    #[test]
    fn contract_examples() {
        let two = ValuedQuiver::cyclic(2);
        let c = contract_quiver(&two, "0", "1").unwrap();
        assert!(c.same_as(&quiver(&["0"], vec![arrow("0", "0", (1, 1))])));
        let a2 = quiver(&["a", "b"], vec![arrow("a", "b", (1, 1))]);
        assert!(contract_quiver(&a2, "a", "b").unwrap().same_as(&quiver(&["a"], vec![])));
        let bad = quiver(&["a", "b"], vec![arrow("a", "b", (1, 2))]);
        assert!(matches!(contract_quiver(&bad, "a", "b"), Err(Error::NotContractible(_))));
        let fork = quiver(&["a", "b", "c"], vec![arrow("a", "b", (1, 1)), arrow("a", "c", (1, 1))]);
        assert!(matches!(contract_quiver(&fork, "a", "b"), Err(Error::NotContractible(_))));
    }

    #[test]
    fn contract_undoes_expand() {
        let q = quiver(
            &["a", "b", "c"],
            vec![arrow("a", "b", (1, 2)), arrow("b", "b", (2, 1)), arrow("b", "c", (1, 1)), arrow("c", "a", (3, 1))],
        );
        for v in ["a", "b", "c"] {
            let e = expand_quiver(&q, v).unwrap();
            assert_eq!(e.vertices().len(), 4);
            let back = contract_quiver(&e, &format!("{v}_l"), &format!("{v}_r")).unwrap();
            assert!(back.same_as(&q), "{v}");
            assert_eq!(back.vertices(), q.vertices());
        }
    }

    #[test]
    fn json_round_trip() {
        let q = ValuedQuiver::from_json(r#"{"vertices":["a","b"],"arrows":[{"from":"a","to":"b","val":[1,1]}]}"#)
            .unwrap();
        assert_eq!(ValuedQuiver::from_json(&q.to_json().to_string()).unwrap(), q);
        assert!(ValuedQuiver::from_json(r#"{"vertices":["a"],"arrows":[{"from":"a","to":"z","val":[1,1]}]}"#).is_err());
    }
}
