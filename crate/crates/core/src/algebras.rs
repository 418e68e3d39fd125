//! Path algebras of acyclic quivers modulo linear relations among parallel
//! paths: Kronecker, squid and canonical algebras, with their Cartan, Euler
//! and Coxeter matrices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::intmat::{self, IntMatrix};
use crate::exact::{Field, Matrix, Scalar};
use crate::weights::RationalPoint;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// A path is a list of arrow names in the order they are traversed.
pub type Path = Vec<String>;

/// `Σ cₖ·pathₖ = 0` over parallel paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathAlgebraSpec {
    field: Field,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
}

impl PathAlgebraSpec {
    pub fn new(field: Field, vertices: Vec<String>, arrows: Vec<Arrow>, relations: Vec<Relation>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::InvalidInput(format!("duplicate vertex `{v}`")));
            }
        }
        let mut names = BTreeMap::new();
        for a in &arrows {
            for end in [&a.from, &a.to] {
                if !seen.contains(end) {
                    return Err(Error::VertexNotFound(end.clone()));
                }
            }
            if names.insert(a.name.clone(), a).is_some() {
                return Err(Error::InvalidInput(format!("duplicate arrow `{}`", a.name)));
            }
        }
        let spec = PathAlgebraSpec { field, vertices, arrows, relations };
        for r in &spec.relations {
            let mut ends = None;
            for (c, p) in &r.terms {
                if c.field() != field {
                    return Err(Error::MixedFields);
                }
                let e = spec.endpoints(p)?;
                if *ends.get_or_insert(e.clone()) != e {
                    return Err(Error::InvalidInput("relation paths are not parallel".into()));
                }
            }
        }
        Ok(spec)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    fn arrow(&self, name: &str) -> Result<&Arrow> {
        self.arrows.iter().find(|a| a.name == name).ok_or_else(|| Error::InvalidInput(format!("unknown arrow `{name}`")))
    }

    /// Source and target of a nonempty composable path.
    fn endpoints(&self, p: &Path) -> Result<(String, String)> {
        let first = self.arrow(p.first().ok_or_else(|| Error::InvalidInput("empty path in relation".into()))?)?;
        let mut at = &first.to;
        for name in &p[1..] {
            let a = self.arrow(name)?;
            if &a.from != at {
                return Err(Error::InvalidInput(format!("path is not composable at `{name}`")));
            }
            at = &a.to;
        }
        Ok((first.from.clone(), at.clone()))
    }

    fn index(&self, v: &str) -> usize {
        self.vertices.iter().position(|w| w == v).unwrap()
    }
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn arrow(name: impl Into<String>, from: impl Into<String>, to: impl Into<String>) -> Arrow {
    Arrow { name: name.into(), from: from.into(), to: to.into() }
}

/// `L ⇉ L′` with arrows `b0`, `b1`.
pub fn kronecker_algebra() -> PathAlgebraSpec {
    PathAlgebraSpec::new(
        Field::Rationals,
        names(&["L", "L'"]),
        vec![arrow("b0", "L", "L'"), arrow("b1", "L", "L'")],
        vec![],
    )
    .unwrap()
}

fn check_arms(p: &[u32], lambda: &[RationalPoint]) -> Result<Field> {
    if p.len() != lambda.len() {
        return Err(Error::ArityMismatch { expected: p.len(), got: lambda.len() });
    }
    if let Some(&w) = p.iter().find(|&&w| w < 2) {
        return Err(Error::WeightTooSmall(w));
    }
    for (i, x) in lambda.iter().enumerate() {
        if lambda[..i].contains(x) {
            return Err(Error::DuplicatePoints);
        }
    }
    let field = lambda.first().map_or(Field::Rationals, RationalPoint::field);
    if lambda.iter().any(|x| x.field() != field) {
        return Err(Error::MixedFields);
    }
    Ok(field)
}

/// Squid algebra `Sq(p, λ)`.
///
/// Vertices `L, L', S{i}[1..p_i-1]` (arms numbered from 1); arrows `b0, b1:
/// L → L'`, `c{i}: L' → S{i}[p_i-1]` and `s{i}_{j}: S{i}[j] → S{i}[j-1]`;
/// relations `c_i(λ_{i0}·b1 − λ_{i1}·b0) = 0`.
pub fn squid(p: &[u32], lambda: &[RationalPoint]) -> Result<PathAlgebraSpec> {
    let field = check_arms(p, lambda)?;
    let mut vertices = names(&["L", "L'"]);
    let mut arrows = vec![arrow("b0", "L", "L'"), arrow("b1", "L", "L'")];
    let mut relations = Vec::new();
    for (i, (&pi, x)) in p.iter().zip(lambda).enumerate() {
        let i = i + 1;
        let s = |j: u32| format!("S{i}[{j}]");
        vertices.extend((1..pi).map(s));
        let c = format!("c{i}");
        arrows.push(arrow(&c, "L'", s(pi - 1)));
        for j in (2..pi).rev() {
            arrows.push(arrow(format!("s{i}_{j}"), s(j), s(j - 1)));
        }
        let (l0, l1) = x.coords();
        relations.push(Relation {
            terms: vec![(l0.clone(), vec!["b1".into(), c.clone()]), (-l1, vec!["b0".into(), c.clone()])],
        });
    }
    PathAlgebraSpec::new(field, vertices, arrows, relations)
}

/// Canonical algebra `C(p, λ)`.
///
/// Vertices `L, L{i}(1..p_i-1), L'` (arms in input order, each listed
/// outward from `L`); arm `i` is the chain `x{i}_1, …, x{i}_{p_i}` from `L` to
/// `L'`; relations `x_i^{p_i} − λ_{i0}·b1 + λ_{i1}·b0 = 0`.
pub fn canonical(p: &[u32], lambda: &[RationalPoint]) -> Result<PathAlgebraSpec> {
    let field = check_arms(p, lambda)?;
    let mut vertices = names(&["L"]);
    let mut arrows = vec![arrow("b0", "L", "L'"), arrow("b1", "L", "L'")];
    let mut relations = Vec::new();
    for (i, (&pi, x)) in p.iter().zip(lambda).enumerate() {
        let i = i + 1;
        let v = |j: u32| match j {
            0 => "L".to_string(),
            j if j == pi => "L'".to_string(),
            j => format!("L{i}({j})"),
        };
        vertices.extend((1..pi).map(v));
        let chain: Path = (1..=pi).map(|j| format!("x{i}_{j}")).collect();
        for j in 1..=pi {
            arrows.push(arrow(&chain[j as usize - 1], v(j - 1), v(j)));
        }
        let (l0, l1) = x.coords();
        relations.push(Relation {
            terms: vec![
                (field.one(), chain),
                (-l0, vec!["b1".into()]),
                (l1.clone(), vec!["b0".into()]),
            ],
        });
    }
    vertices.push("L'".into());
    PathAlgebraSpec::new(field, vertices, arrows, relations)
}

/// All paths between each ordered pair of vertices, trivial paths included
/// (as empty lists). Fails on an oriented cycle.
fn all_paths(spec: &PathAlgebraSpec) -> Result<Vec<Vec<Vec<Path>>>> {
    let n = spec.vertices.len();
    let out_arrows: Vec<Vec<&Arrow>> =
        spec.vertices.iter().map(|v| spec.arrows.iter().filter(|a| &a.from == v).collect()).collect();
    // Kahn's algorithm for acyclicity.
    let mut indeg = vec![0usize; n];
    for a in &spec.arrows {
        indeg[spec.index(&a.to)] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = stack.pop() {
        seen += 1;
        for a in &out_arrows[i] {
            let j = spec.index(&a.to);
            indeg[j] -= 1;
            if indeg[j] == 0 {
                stack.push(j);
            }
        }
    }
    if seen != n {
        return Err(Error::NonAcyclic);
    }
    let mut paths = vec![vec![Vec::new(); n]; n];
    for s in 0..n {
        let mut frontier = vec![(s, Path::new())];
        while let Some((at, p)) = frontier.pop() {
            for a in &out_arrows[at] {
                let mut q = p.clone();
                q.push(a.name.clone());
                frontier.push((spec.index(&a.to), q));
            }
            paths[s][at].push(p);
        }
        for row in paths[s].iter_mut() {
            row.sort();
        }
    }
    Ok(paths)
}

/// `C[i][j] = dim e_i Λ e_j`: the number of paths from vertex `i` to vertex
/// `j` minus the dimension of the span of `u·r·w` over relations `r` and
/// paths `u`, `w` (traversal order: `u` first).
pub fn cartan(spec: &PathAlgebraSpec) -> Result<IntMatrix> {
    cartan_with(spec, |_, _| {})
}

/// Same as [`cartan`], letting the caller permute each path basis first.
fn cartan_with(spec: &PathAlgebraSpec, mut reorder: impl FnMut(usize, &mut Vec<Path>)) -> Result<IntMatrix> {
    let n = spec.vertices.len();
    let paths = all_paths(spec)?;
    let rel_ends: Vec<(usize, usize)> = spec
        .relations
        .iter()
        .map(|r| {
            let (s, t) = spec.endpoints(&r.terms[0].1).unwrap();
            (spec.index(&s), spec.index(&t))
        })
        .collect();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut basis = paths[i][j].clone();
            if basis.is_empty() {
                continue;
            }
            reorder(i * n + j, &mut basis);
            let pos: BTreeMap<&Path, usize> = basis.iter().enumerate().map(|(k, p)| (p, k)).collect();
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for (r, &(s, t)) in spec.relations.iter().zip(&rel_ends) {
                for u in &paths[i][s] {
                    for w in &paths[t][j] {
                        let mut row = vec![spec.field.zero(); basis.len()];
                        for (coef, p) in &r.terms {
                            let full: Path = u.iter().chain(p).chain(w).cloned().collect();
                            let k = pos[&full];
                            row[k] = &row[k] + coef;
                        }
                        rows.push(row);
                    }
                }
            }
            let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(spec.field, rows).rank() };
            c[i][j] = (basis.len() - rank) as i64;
        }
    }
    Ok(c)
}

/// Gram matrix of the Euler form in the basis of indecomposable projectives.
/// Projectives have no higher extensions, so this is the Cartan matrix.
pub fn euler_gram(spec: &PathAlgebraSpec) -> Result<IntMatrix> {
    cartan(spec)
}

/// Whether the Euler form is unimodular: `|det G| = 1`.
#[allow(non_snake_case)]
pub fn check_H5(spec: &PathAlgebraSpec) -> bool {
    euler_gram(spec).is_ok_and(|g| intmat::det_i64(&g).is_some_and(|d| d.abs() == 1))
}

/// `Φ = −G⁻¹·Gᵀ`, satisfying `⟨x, y⟩ = −⟨y, Φx⟩`.
pub fn coxeter_of_gram(g: &IntMatrix) -> Result<Matrix<Scalar>> {
    let field = Field::Rationals;
    let gm = Matrix::from_i64(field, g);
    let inv = gm.inverse().ok_or(Error::DegenerateForm)?;
    Ok(inv.mul(&gm.transpose()).map(|x| -x))
}

pub fn coxeter(spec: &PathAlgebraSpec) -> Result<Matrix<Scalar>> {
    coxeter_of_gram(&euler_gram(spec)?)
}

/// Integer entries of a rational matrix, if it has only integers.
pub fn integral(m: &Matrix<Scalar>) -> Option<IntMatrix> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.as_rational().filter(|q| q.is_integer()).and_then(|_| x.to_i64())).collect()).collect()
}

/// Tilting criterion on numerical data: no self-extensions and the classes of
/// the summands generate `ℤ^k0_rank` (full rank, all Smith invariants 1).
pub fn is_tilting_data(gram: &IntMatrix, ext_matrix: &IntMatrix, classes: &[Vec<i64>], k0_rank: usize) -> bool {
    let k = classes.len();
    let square = |m: &IntMatrix| m.len() == k && m.iter().all(|r| r.len() == k);
    if !square(gram) || !square(ext_matrix) || classes.iter().any(|c| c.len() != k0_rank) {
        return false;
    }
    if ext_matrix.iter().flatten().any(|&e| e != 0) {
        return false;
    }
    if k0_rank == 0 {
        return true;
    }
    let inv = intmat::smith_invariants(&classes.to_vec());
    inv.len() == k0_rank && inv.iter().all(num_traits::One::is_one)
}
