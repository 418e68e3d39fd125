use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix};

/// Indecomposable object of a tube of rank `p`: the uniserial module of
/// length `length` whose top is the simple at vertex `top`.
///
/// Its canonical representation has basis `e_0, …, e_{l-1}` with `e_t` at
/// vertex `top + t (mod p)` and the cyclic arrows acting by `e_t ↦ e_{t+1}`,
/// so the composition factors read from top to socle are
/// `top, top+1, …, top+l-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TubeLabel {
    pub rank: u32,
    pub top: u32,
    pub length: u32,
}

impl TubeLabel {
    pub fn new(rank: u32, top: i64, length: u32) -> Result<TubeLabel> {
        if rank == 0 || length == 0 {
            return Err(Error::InvalidInput("tube rank and length must be positive".into()));
        }
        Ok(TubeLabel { rank, top: top.rem_euclid(rank as i64) as u32, length })
    }

    fn vertex(&self, t: u32) -> u32 {
        (self.top + t) % self.rank
    }

    /// Parses `(j,l)` in a tube of the given rank.
    pub fn parse(rank: u32, text: &str) -> Result<TubeLabel> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("expected (top,length), got `{text}`"));
        let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
        let (j, l) = inner.split_once(',').ok_or_else(bad)?;
        TubeLabel::new(rank, j.parse().map_err(|_| bad())?, l.parse().map_err(|_| bad())?)
    }
}

impl fmt::Display for TubeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.top, self.length)
    }
}

fn same_rank(a: &TubeLabel, b: &TubeLabel) -> Result<()> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch(a.rank, b.rank));
    }
    Ok(())
}

/// Dimension of the space of quiver maps between the canonical representations.
///
/// A map is a vertex-preserving linear map `φ` with `φ·A = B·φ`, where `A` and
/// `B` are the shift operators; unknowns are the entries `φ[s][t]` joining
/// basis vectors at the same vertex.
pub fn tube_hom(a: &TubeLabel, b: &TubeLabel) -> Result<u64> {
    same_rank(a, b)?;
    let field = Field::Rationals;
    let unknowns: Vec<(u32, u32)> = (0..b.length)
        .flat_map(|s| (0..a.length).map(move |t| (s, t)))
        .filter(|&(s, t)| b.vertex(s) == a.vertex(t))
        .collect();
    if unknowns.is_empty() {
        return Ok(0);
    }
    let col = |s: u32, t: u32| unknowns.iter().position(|&u| u == (s, t));
    // Entry (s, t) of φA − Bφ: φ[s][t-1] (A e_{t-1} = e_t) minus φ[s-1][t].
    let (la, lb) = (a.length, b.length);
    let mut m = Matrix::zeros(field, (la * lb) as usize, unknowns.len());
    for s in 0..lb {
        for t in 0..la {
            let row = (s * la + t) as usize;
            // (φA)[s][t] = Σ_u φ[s][u] A[u][t] = φ[s][t+1]
            if t + 1 < la {
                if let Some(c) = col(s, t + 1) {
                    m[(row, c)] = &m[(row, c)] + &field.one();
                }
            }
            // (Bφ)[s][t] = φ[s-1][t]
            if s >= 1 {
                if let Some(c) = col(s - 1, t) {
                    m[(row, c)] = &m[(row, c)] - &field.one();
                }
            }
        }
    }
    Ok((unknowns.len() - m.rank()) as u64)
}

/// `Ext¹(a, b) = Hom(b, τa)`.
pub fn tube_ext(a: &TubeLabel, b: &TubeLabel) -> Result<u64> {
    same_rank(a, b)?;
    tube_hom(b, &tube_tau(a))
}

/// The Auslander-Reiten translate moves the top one step along the cycle.
pub fn tube_tau(a: &TubeLabel) -> TubeLabel {
    TubeLabel { top: (a.top + 1) % a.rank, ..*a }
}

/// Composition factor multiplicities per vertex.
pub fn tube_class(a: &TubeLabel) -> Vec<u32> {
    let mut c = vec![0; a.rank as usize];
    for t in 0..a.length {
        c[a.vertex(t) as usize] += 1;
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArSequence {
    pub left: TubeLabel,
    pub middle: Vec<TubeLabel>,
    pub right: TubeLabel,
}

/// The almost split sequence `0 → τa → E → a → 0`.
pub fn ar_sequence(a: &TubeLabel) -> ArSequence {
    let mut middle = vec![TubeLabel { length: a.length + 1, ..*a }];
    if a.length > 1 {
        middle.push(TubeLabel { top: (a.top + 1) % a.rank, length: a.length - 1, rank: a.rank });
    }
    ArSequence { left: tube_tau(a), middle, right: *a }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: u32, j: i64, l: u32) -> TubeLabel {
        TubeLabel::new(p, j, l).unwrap()
    }

    #[test]
    fn hom_examples() {
        for a in 1..=4 {
            for b in 1..=4 {
                assert_eq!(tube_hom(&t(1, 0, a), &t(1, 0, b)).unwrap(), a.min(b) as u64);
            }
        }
        for p in 2..5 {
            for j in 0..p as i64 {
                assert_eq!(tube_hom(&t(p, j, 1), &t(p, j, 1)).unwrap(), 1);
            }
        }
        assert_eq!(tube_hom(&t(2, 0, 1), &t(2, 1, 1)).unwrap(), 0);
        assert_eq!(tube_hom(&t(2, 0, 1), &t(3, 0, 1)), Err(Error::RankMismatch(2, 3)));
    }

    #[test]
    fn hom_respects_top_and_socle() {
        // (0,2) in rank 2 has top 0 and socle 1.
        assert_eq!(tube_hom(&t(2, 0, 2), &t(2, 0, 1)).unwrap(), 1);
        assert_eq!(tube_hom(&t(2, 0, 2), &t(2, 1, 1)).unwrap(), 0);
        assert_eq!(tube_hom(&t(2, 1, 1), &t(2, 0, 2)).unwrap(), 1);
        assert_eq!(tube_hom(&t(2, 0, 1), &t(2, 0, 2)).unwrap(), 0);
    }

    #[test]
    fn ext_examples() {
        for p in 2..=5u32 {
            for j in 0..p as i64 {
                assert_eq!(tube_ext(&t(p, j, 1), &t(p, j + 1, 1)).unwrap(), 1);
                assert_eq!(tube_ext(&t(p, j, 1), &t(p, j, 1)).unwrap(), 0);
            }
        }
        assert_eq!(tube_ext(&t(1, 0, 1), &t(1, 0, 1)).unwrap(), 1);
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tube_tau(&t(3, 0, 2)), t(3, 1, 2));
        assert_eq!(tube_tau(&t(1, 0, 5)), t(1, 0, 5));
        let a = t(4, 3, 2);
        assert_eq!(tube_tau(&tube_tau(&tube_tau(&tube_tau(&a)))), a);
    }

    #[test]
    fn ar_examples() {
        let s = ar_sequence(&t(3, 1, 1));
        assert_eq!(s.middle, vec![t(3, 1, 2)]);
        let s = ar_sequence(&t(2, 0, 2));
        assert_eq!(s.middle, vec![t(2, 0, 3), t(2, 1, 1)]);
        assert_eq!(s.left, t(2, 1, 2));
    }

    #[test]
    fn parse_labels() {
        assert_eq!(TubeLabel::parse(3, "(4, 2)").unwrap(), t(3, 1, 2));
        assert!(TubeLabel::parse(3, "(0,0)").is_err());
        assert!(TubeLabel::parse(3, "0,1").is_err());
    }
}
