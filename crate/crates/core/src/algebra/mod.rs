//! Bound quiver algebras `KQ/I` with `I` generated by paths.
//!
//! Paths are stored in traversal order: `Path { start, arrows: [a1, a2] }`
//! walks `a1` first. A relation written `ba = 0` in composition notation is
//! therefore the traversal `a b`.

mod parse;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::PrimeField;

pub use parse::{parse_algebra, parse_algebra_with};

/// Longest relation-free path accepted before an algebra is declared
/// infinite-dimensional.
pub const DEFAULT_LENGTH_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("relation `{0}` is not a composable path")]
    NonComposable(String),
    #[error("relation `{0}` has length < 2")]
    RelationTooShort(String),
    #[error("quiver has no vertices")]
    NoVertices,
    #[error(
        "not admissible: relation-free paths longer than {0} exist (infinite-dimensional algebra)"
    )]
    NotAdmissible(usize),
    #[error("line {line}, column {column}: {source}")]
    At {
        line: usize,
        column: usize,
        #[source]
        source: Box<AlgebraError>,
    },
}

impl AlgebraError {
    pub(crate) fn at(self, line: usize, column: usize) -> Self {
        AlgebraError::At {
            line,
            column,
            source: Box::new(self),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, AlgebraError> {
        if vertices.is_empty() {
            return Err(AlgebraError::NoVertices);
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(AlgebraError::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for a in &arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(AlgebraError::DuplicateArrow(a.name.clone()));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(AlgebraError::UnknownVertex(format!(
                    "#{}",
                    a.source.max(a.target)
                )));
            }
        }
        Ok(Self { vertices, arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }
}

/// A path in traversal order. A trivial path has no arrows and sits at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Self {
            start: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows
            .last()
            .map_or(self.start, |&a| q.arrow(a).target)
    }

    /// Ordering key: length, then arrow sequence, then start vertex.
    fn sort_key(&self) -> (usize, &[usize], usize) {
        (self.arrows.len(), &self.arrows, self.start)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertex_name(self.start))
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrow(a).name.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

/// `A = KQ/I` for a monomial ideal `I`, with its finite path basis.
#[derive(Clone, Debug)]
pub struct MonomialAlgebra {
    name: String,
    quiver: Quiver,
    relations: Vec<Path>,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    field: PrimeField,
}

impl MonomialAlgebra {
    pub fn new(
        name: impl Into<String>,
        quiver: Quiver,
        relations: Vec<Path>,
        field: PrimeField,
    ) -> Result<Self, AlgebraError> {
        Self::with_length_cap(name, quiver, relations, field, DEFAULT_LENGTH_CAP)
    }

    pub fn with_length_cap(
        name: impl Into<String>,
        quiver: Quiver,
        relations: Vec<Path>,
        field: PrimeField,
        cap: usize,
    ) -> Result<Self, AlgebraError> {
        let mut rels: Vec<Path> = Vec::new();
        for r in relations {
            let shown = r.display(&quiver);
            if r.arrows.len() < 2 {
                return Err(AlgebraError::RelationTooShort(shown));
            }
            if r.arrows.iter().any(|&a| a >= quiver.arrows.len()) {
                return Err(AlgebraError::UnknownArrow(shown));
            }
            let start = quiver.arrow(r.arrows[0]).source;
            if start != r.start
                || r.arrows
                    .windows(2)
                    .any(|w| quiver.arrow(w[0]).target != quiver.arrow(w[1]).source)
            {
                return Err(AlgebraError::NonComposable(shown));
            }
            if !rels.contains(&r) {
                rels.push(r);
            }
        }
        let basis = enumerate_basis(&quiver, &rels, cap)?;
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Ok(Self {
            name: name.into(),
            quiver,
            relations: rels,
            basis,
            index,
            field,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Same algebra over another prime field.
    pub fn with_field(&self, field: PrimeField) -> Self {
        Self {
            field,
            ..self.clone()
        }
    }

    /// Number of vertices (= number of simple modules).
    pub fn n(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Relation-free paths ordered by (length, lexicographic arrow sequence).
    pub fn path_basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn path_end(&self, i: usize) -> usize {
        self.basis[i].end(&self.quiver)
    }

    /// Basis path indices starting at `v` and ending at `w`, in basis order.
    pub fn paths_between(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].start == v && self.path_end(i) == w)
            .collect()
    }

    /// Traversal concatenation `p` then `q` as a basis index, or `None` if the
    /// paths do not compose or the product contains a relation.
    pub fn concat(&self, p: usize, q: usize) -> Option<usize> {
        let (pp, qp) = (&self.basis[p], &self.basis[q]);
        if pp.end(&self.quiver) != qp.start {
            return None;
        }
        let mut arrows = pp.arrows.clone();
        arrows.extend_from_slice(&qp.arrows);
        self.basis_index(&Path {
            start: pp.start,
            arrows,
        })
    }

    /// Whether the arrow sequence contains some relation as a consecutive block.
    pub fn contains_relation(&self, arrows: &[usize]) -> bool {
        contains_relation(&self.relations, arrows)
    }

    /// Arrows reversed, relations reversed; vertex names kept.
    pub fn opposite(&self) -> MonomialAlgebra {
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        let quiver = Quiver {
            vertices: self.quiver.vertices.clone(),
            arrows,
        };
        let relations = self
            .relations
            .iter()
            .map(|r| Path {
                start: r.end(&self.quiver),
                arrows: r.arrows.iter().rev().copied().collect(),
            })
            .collect();
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        // Reversal preserves relation-freeness, so the basis stays finite.
        MonomialAlgebra::new(name, quiver, relations, self.field)
            .expect("opposite of a valid algebra")
    }

    /// Special biserial test with a list of the violated conditions.
    pub fn is_special_biserial(&self) -> (bool, Vec<String>) {
        let q = &self.quiver;
        let mut problems = Vec::new();
        for v in 0..q.vertex_count() {
            let ins = q.incoming(v).count();
            let outs = q.outgoing(v).count();
            if ins > 2 {
                problems.push(format!(
                    "vertex {} has {} incoming arrows",
                    q.vertex_name(v),
                    ins
                ));
            }
            if outs > 2 {
                problems.push(format!(
                    "vertex {} has {} outgoing arrows",
                    q.vertex_name(v),
                    outs
                ));
            }
        }
        let zero2 = |x: usize, y: usize| self.relations.iter().any(|r| r.arrows == [x, y]);
        for b in 0..q.arrows.len() {
            let after: Vec<usize> = q
                .outgoing(q.arrow(b).target)
                .filter(|&c| !zero2(b, c))
                .collect();
            if after.len() > 1 {
                problems.push(format!(
                    "arrow {} is followed by {} arrows without relation",
                    q.arrow(b).name,
                    after.len()
                ));
            }
            let before: Vec<usize> = q
                .incoming(q.arrow(b).source)
                .filter(|&a| !zero2(a, b))
                .collect();
            if before.len() > 1 {
                problems.push(format!(
                    "arrow {} is preceded by {} arrows without relation",
                    q.arrow(b).name,
                    before.len()
                ));
            }
        }
        (problems.is_empty(), problems)
    }

    /// Searches for a renaming of vertices and arrows carrying `self` onto
    /// `other` (quiver and relation set). Returns `(vertex_map, arrow_map)`.
    pub fn isomorphism_to(&self, other: &MonomialAlgebra) -> Option<(Vec<usize>, Vec<usize>)> {
        let (q1, q2) = (&self.quiver, &other.quiver);
        let n = q1.vertex_count();
        if n != q2.vertex_count()
            || q1.arrows.len() != q2.arrows.len()
            || self.relations.len() != other.relations.len()
            || self.basis.len() != other.basis.len()
        {
            return None;
        }
        let target_rels: BTreeSet<(usize, Vec<usize>)> = other
            .relations
            .iter()
            .map(|r| (r.start, r.arrows.clone()))
            .collect();
        let mut vmap = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.search_vertex_map(other, 0, &mut vmap, &mut used, &target_rels)
    }

    fn search_vertex_map(
        &self,
        other: &MonomialAlgebra,
        v: usize,
        vmap: &mut Vec<usize>,
        used: &mut Vec<bool>,
        target_rels: &BTreeSet<(usize, Vec<usize>)>,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = vmap.len();
        if v == n {
            let mut amap = vec![usize::MAX; self.quiver.arrows.len()];
            let mut aused = vec![false; amap.len()];
            return self
                .search_arrow_map(other, 0, vmap, &mut amap, &mut aused, target_rels)
                .map(|a| (vmap.clone(), a));
        }
        for w in 0..n {
            if used[w] {
                continue;
            }
            vmap[v] = w;
            used[w] = true;
            let consistent = (0..=v).all(|u| {
                let count1 = |x: usize, y: usize, q: &Quiver| {
                    q.arrows
                        .iter()
                        .filter(|a| a.source == x && a.target == y)
                        .count()
                };
                count1(u, v, &self.quiver) == count1(vmap[u], vmap[v], &other.quiver)
                    && count1(v, u, &self.quiver) == count1(vmap[v], vmap[u], &other.quiver)
            });
            if consistent {
                if let Some(found) = self.search_vertex_map(other, v + 1, vmap, used, target_rels) {
                    return Some(found);
                }
            }
            used[w] = false;
        }
        vmap[v] = usize::MAX;
        None
    }

    fn search_arrow_map(
        &self,
        other: &MonomialAlgebra,
        a: usize,
        vmap: &[usize],
        amap: &mut Vec<usize>,
        aused: &mut Vec<bool>,
        target_rels: &BTreeSet<(usize, Vec<usize>)>,
    ) -> Option<Vec<usize>> {
        if a == amap.len() {
            let mapped: BTreeSet<(usize, Vec<usize>)> = self
                .relations
                .iter()
                .map(|r| (vmap[r.start], r.arrows.iter().map(|&x| amap[x]).collect()))
                .collect();
            return (&mapped == target_rels).then(|| amap.clone());
        }
        let arrow = self.quiver.arrow(a);
        for b in 0..amap.len() {
            let cand = other.quiver.arrow(b);
            if aused[b] || cand.source != vmap[arrow.source] || cand.target != vmap[arrow.target] {
                continue;
            }
            amap[a] = b;
            aused[b] = true;
            if let Some(found) = self.search_arrow_map(other, a + 1, vmap, amap, aused, target_rels)
            {
                return Some(found);
            }
            aused[b] = false;
        }
        None
    }
}

fn contains_relation(relations: &[Path], arrows: &[usize]) -> bool {
    relations.iter().any(|r| {
        let k = r.arrows.len();
        k <= arrows.len() && arrows.windows(k).any(|w| w == r.arrows.as_slice())
    })
}

/// Breadth-first enumeration of relation-free paths. Since relation-freeness
/// is closed under taking subpaths, right-extension of the previous layer
/// reaches every basis path.
fn enumerate_basis(q: &Quiver, relations: &[Path], cap: usize) -> Result<Vec<Path>, AlgebraError> {
    let mut basis: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    let mut layer: VecDeque<Path> = basis.iter().cloned().collect();
    let mut length = 0;
    while !layer.is_empty() {
        length += 1;
        let mut next = Vec::new();
        for p in layer.drain(..) {
            let end = p.end(q);
            for a in q.outgoing(end) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                // only the suffixes ending at the new arrow can be new relations
                if contains_relation(relations, &arrows) {
                    continue;
                }
                next.push(Path {
                    start: p.start,
                    arrows,
                });
            }
        }
        if !next.is_empty() && length > cap {
            return Err(AlgebraError::NotAdmissible(cap));
        }
        next.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
        basis.extend(next.iter().cloned());
        layer.extend(next);
    }
    Ok(basis)
}

impl fmt::Display for MonomialAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algebra {}: {} vertices, {} arrows, {} relations, dim {} over {}",
            self.name,
            self.n(),
            self.quiver.arrows.len(),
            self.relations.len(),
            self.dim(),
            self.field
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(a: &MonomialAlgebra) -> Vec<String> {
        a.path_basis()
            .iter()
            .map(|p| p.display(a.quiver()))
            .collect()
    }

    #[test]
    fn ex1_basis_is_vertices_and_arrows() {
        let a = fixtures::load("ex1").unwrap();
        assert_eq!(names(&a), ["e1", "e2", "e3", "a", "b", "c"]);
    }

    #[test]
    fn ex6_basis_n3() {
        let a = fixtures::load("ex6").unwrap();
        assert_eq!(names(&a), ["e1", "e2", "a", "b", "b b"]);
    }

    #[test]
    fn free_loop_is_not_admissible() {
        let q = Quiver::new(
            vec!["1".into()],
            vec![Arrow {
                name: "x".into(),
                source: 0,
                target: 0,
            }],
        )
        .unwrap();
        let err = MonomialAlgebra::new("loop", q, vec![], PrimeField::default()).unwrap_err();
        assert_eq!(err, AlgebraError::NotAdmissible(DEFAULT_LENGTH_CAP));
    }

    #[test]
    fn basis_closed_under_subpaths() {
        for name in fixtures::NAMES {
            let a = fixtures::load(name).unwrap();
            for p in a.path_basis() {
                for i in 0..p.len() {
                    for j in i + 1..=p.len() {
                        let start = if i == 0 {
                            p.start
                        } else {
                            a.quiver().arrow(p.arrows[i - 1]).target
                        };
                        let sub = Path {
                            start,
                            arrows: p.arrows[i..j].to_vec(),
                        };
                        assert!(a.basis_index(&sub).is_some(), "{name}: subpath missing");
                    }
                }
                assert!(!a.contains_relation(&p.arrows));
            }
        }
    }

    #[test]
    fn opposite_preserves_dimension_and_is_involutive() {
        for name in fixtures::NAMES {
            let a = fixtures::load(name).unwrap();
            let op = a.opposite();
            assert_eq!(a.dim(), op.dim(), "{name}");
            let back = op.opposite();
            assert_eq!(back.dim(), a.dim());
            assert!(back.isomorphism_to(&a).is_some());
        }
    }

    #[test]
    fn ex7a_opposite_is_ex7b() {
        let a = fixtures::load("ex7a").unwrap();
        let b = fixtures::load("ex7b").unwrap();
        assert!(a.opposite().isomorphism_to(&b).is_some());
        assert!(a.isomorphism_to(&b).is_none());
    }

    #[test]
    fn one_vertex_opposite_is_itself() {
        let src = "algebra pt\nvertices 1\n";
        let a = parse_algebra(src).unwrap();
        assert!(a.opposite().isomorphism_to(&a).is_some());
        assert_eq!(a.opposite().dim(), 1);
    }

    #[test]
    fn special_biserial_checks() {
        assert!(fixtures::load("ex2").unwrap().is_special_biserial().0);
        assert!(fixtures::load("ex10").unwrap().is_special_biserial().0);
        let src = "algebra kron3\nvertices 1 2\narrow x 1 2\narrow y 1 2\narrow z 1 2\n";
        let (ok, why) = parse_algebra(src).unwrap().is_special_biserial();
        assert!(!ok);
        assert!(why.iter().any(|w| w.contains("3 outgoing")));
    }
}
