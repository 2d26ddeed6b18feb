//! Finite-dimensional left modules as quiver representations.
//!
//! An arrow `a: x -> y` acts as a matrix `M_y x M_x`. A path `(a1, .., ak)` in
//! traversal order acts as `M_ak ... M_a1`, so every relation must compose to
//! zero; [`Representation::new`] enforces that.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::MonomialAlgebra;
use crate::linalg::{span_basis, FieldElement, Matrix, PrimeField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReprError {
    #[error("expected {expected} {what}, found {found}")]
    Count {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("arrow `{arrow}` matrix has shape {found:?}, expected {expected:?}")]
    Shape {
        arrow: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("relation `{0}` does not act as zero")]
    RelationViolated(String),
    #[error("matrix over the wrong field")]
    Field,
}

/// A representation: one space per vertex (by dimension), one matrix per arrow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    field: PrimeField,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation{:?}", self.dims)
    }
}

/// A module homomorphism `M -> N`, one block `N_v x M_v` per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub blocks: Vec<Matrix>,
}

impl Morphism {
    pub fn zero(field: PrimeField, from: &Representation, to: &Representation) -> Self {
        Morphism {
            blocks: from
                .dims
                .iter()
                .zip(&to.dims)
                .map(|(&m, &n)| Matrix::zeros(field, n, m))
                .collect(),
        }
    }

    pub fn identity(m: &Representation) -> Self {
        Morphism {
            blocks: m
                .dims
                .iter()
                .map(|&d| Matrix::identity(m.field, d))
                .collect(),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Morphism) -> Morphism {
        Morphism {
            blocks: self
                .blocks
                .iter()
                .zip(&first.blocks)
                .map(|(g, f)| g.dot(f))
                .collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: FieldElement) -> Morphism {
        Morphism {
            blocks: self.blocks.iter().map(|a| a.scale(s)).collect(),
        }
    }

    /// Concatenated entries of all blocks.
    pub fn flatten(&self) -> Vec<FieldElement> {
        self.blocks
            .iter()
            .flat_map(|b| b.entries().iter().copied())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    /// Invertible iff every block is square of full rank.
    pub fn is_invertible(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.is_square() && b.rank() == b.rows())
    }

    /// Whether this is a module map `from -> to` (all intertwining equations).
    pub fn intertwines(
        &self,
        alg: &MonomialAlgebra,
        from: &Representation,
        to: &Representation,
    ) -> bool {
        alg.quiver().arrows().iter().enumerate().all(|(a, arr)| {
            let lhs = self.blocks[arr.target].dot(&from.maps[a]);
            let rhs = to.maps[a].dot(&self.blocks[arr.source]);
            lhs == rhs
        })
    }
}

/// Radical layers, each a multiset of vertices, top first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoewyLabel {
    pub layers: Vec<Vec<String>>,
}

impl fmt::Display for LoewyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.layers.is_empty() {
            return write!(f, "0");
        }
        let sep = if self.layers.iter().flatten().all(|v| v.chars().count() == 1) {
            ""
        } else {
            ","
        };
        let rendered: Vec<String> = self.layers.iter().map(|l| l.join(sep)).collect();
        write!(f, "{}", rendered.join("/"))
    }
}

/// Per vertex, a list of column vectors spanning a subspace of `M_v`.
pub type VertexSubspaces = Vec<Vec<Vec<FieldElement>>>;

impl Representation {
    pub fn new(
        alg: &MonomialAlgebra,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self, ReprError> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count() {
            return Err(ReprError::Count {
                what: "vertex dimensions",
                expected: q.vertex_count(),
                found: dims.len(),
            });
        }
        if maps.len() != q.arrows().len() {
            return Err(ReprError::Count {
                what: "arrow matrices",
                expected: q.arrows().len(),
                found: maps.len(),
            });
        }
        for (arr, m) in q.arrows().iter().zip(&maps) {
            if m.field() != alg.field() {
                return Err(ReprError::Field);
            }
            let expected = (dims[arr.target], dims[arr.source]);
            if m.shape() != expected {
                return Err(ReprError::Shape {
                    arrow: arr.name.clone(),
                    expected,
                    found: m.shape(),
                });
            }
        }
        let rep = Self {
            field: alg.field(),
            dims,
            maps,
        };
        for r in alg.relations() {
            let mut acc = Matrix::identity(rep.field, rep.dims[r.start]);
            for &a in &r.arrows {
                acc = rep.maps[a].dot(&acc);
            }
            if !acc.is_zero() {
                return Err(ReprError::RelationViolated(r.display(q)));
            }
        }
        Ok(rep)
    }

    pub fn zero(alg: &MonomialAlgebra) -> Self {
        let dims = vec![0; alg.n()];
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(alg.field(), 0, 0))
            .collect();
        Self {
            field: alg.field(),
            dims,
            maps,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        self.dims.clone()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn is_sincere(&self) -> bool {
        self.dims.iter().all(|&d| d > 0)
    }

    /// Action of basis path `i` as a matrix `M_end x M_start`.
    pub fn act_path(&self, alg: &MonomialAlgebra, i: usize) -> Matrix {
        let p = &alg.path_basis()[i];
        let mut acc = Matrix::identity(self.field, self.dims[p.start]);
        for &a in &p.arrows {
            acc = self.maps[a].dot(&acc);
        }
        acc
    }

    /// Subspaces `Σ_a M_a(sub_source(a))` landing at each vertex.
    pub fn arrow_images(&self, alg: &MonomialAlgebra, sub: &VertexSubspaces) -> VertexSubspaces {
        let mut gens: VertexSubspaces = vec![Vec::new(); self.dims.len()];
        for (a, arr) in alg.quiver().arrows().iter().enumerate() {
            for v in &sub[arr.source] {
                gens[arr.target].push(self.maps[a].apply(v).expect("shape"));
            }
        }
        gens.into_iter()
            .enumerate()
            .map(|(v, g)| span_basis(self.field, self.dims[v], &g))
            .collect()
    }

    pub fn full_subspaces(&self) -> VertexSubspaces {
        self.dims
            .iter()
            .map(|&d| {
                (0..d)
                    .map(|i| {
                        let mut e = vec![0; d];
                        e[i] = 1;
                        e
                    })
                    .collect()
            })
            .collect()
    }

    /// The radical `rad M = Σ_a im(M_a)`, vertexwise.
    pub fn radical(&self, alg: &MonomialAlgebra) -> VertexSubspaces {
        self.arrow_images(alg, &self.full_subspaces())
    }

    /// Top dimensions `dim (M / rad M)_v`.
    pub fn top_dims(&self, alg: &MonomialAlgebra) -> Vec<usize> {
        let rad = self.radical(alg);
        self.dims
            .iter()
            .zip(&rad)
            .map(|(&d, r)| d - r.len())
            .collect()
    }

    pub fn loewy_label(&self, alg: &MonomialAlgebra) -> LoewyLabel {
        let q = alg.quiver();
        let mut layers = Vec::new();
        let mut current = self.full_subspaces();
        while current.iter().any(|s| !s.is_empty()) {
            let next = self.arrow_images(alg, &current);
            let mut layer = Vec::new();
            for v in 0..self.dims.len() {
                for _ in 0..current[v].len() - next[v].len() {
                    layer.push(q.vertex_name(v).to_string());
                }
            }
            layers.push(layer);
            current = next;
        }
        LoewyLabel { layers }
    }

    /// Submodule spanned vertexwise by `sub` (which must be arrow-stable), with
    /// its inclusion into `self`.
    pub fn submodule(
        &self,
        alg: &MonomialAlgebra,
        sub: &VertexSubspaces,
    ) -> (Representation, Morphism) {
        let f = self.field;
        let incl: Vec<Matrix> = sub
            .iter()
            .enumerate()
            .map(|(v, basis)| Matrix::from_columns(f, self.dims[v], basis))
            .collect();
        let dims: Vec<usize> = sub.iter().map(Vec::len).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let image = self.maps[a].dot(&incl[arr.source]);
                incl[arr.target]
                    .solve_matrix(&image)
                    .expect("subspace is not a submodule")
            })
            .collect();
        let rep = Representation {
            field: f,
            dims,
            maps,
        };
        (rep, Morphism { blocks: incl })
    }

    /// Annihilator `{x ∈ A : x·M = 0}` as coefficient vectors over the path basis.
    pub fn annihilator(&self, alg: &MonomialAlgebra) -> Vec<Vec<FieldElement>> {
        self.action_matrix(alg).kernel_basis()
    }

    pub fn annihilator_dim(&self, alg: &MonomialAlgebra) -> usize {
        alg.dim() - self.action_matrix(alg).rank()
    }

    pub fn is_faithful(&self, alg: &MonomialAlgebra) -> bool {
        self.annihilator_dim(alg) == 0
    }

    /// Columns: each basis path's action flattened into `End_K(⊕ M_v)`.
    fn action_matrix(&self, alg: &MonomialAlgebra) -> Matrix {
        let total = self.total_dim();
        let offsets = self.offsets();
        let mut cols = Vec::with_capacity(alg.dim());
        for i in 0..alg.dim() {
            let p = &alg.path_basis()[i];
            let (s, t) = (p.start, alg.path_end(i));
            let act = self.act_path(alg, i);
            let mut col = vec![0; total * total];
            for r in 0..act.rows() {
                for c in 0..act.cols() {
                    col[(offsets[t] + r) * total + offsets[s] + c] = act.get(r, c);
                }
            }
            cols.push(col);
        }
        Matrix::from_columns(self.field, total * total, &cols)
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|&d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }
}

pub fn simple(alg: &MonomialAlgebra, v: usize) -> Representation {
    let mut dims = vec![0; alg.n()];
    dims[v] = 1;
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(alg.field(), dims[a.target], dims[a.source]))
        .collect();
    Representation::new(alg, dims, maps).expect("simple module")
}

/// `P_v`: at vertex `w`, basis = basis paths from `v` to `w` (in basis order);
/// arrows act by appending.
pub fn projective(alg: &MonomialAlgebra, v: usize) -> Representation {
    let per_vertex: Vec<Vec<usize>> = (0..alg.n()).map(|w| alg.paths_between(v, w)).collect();
    let q = alg.quiver();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let src = &per_vertex[arr.source];
            let tgt = &per_vertex[arr.target];
            let arrow_path = alg
                .basis_index(&crate::algebra::Path {
                    start: arr.source,
                    arrows: vec![a],
                })
                .expect("arrows are basis paths");
            let mut m = Matrix::zeros(alg.field(), tgt.len(), src.len());
            for (c, &p) in src.iter().enumerate() {
                if let Some(pa) = alg.concat(p, arrow_path) {
                    let r = tgt.iter().position(|&x| x == pa).expect("target path");
                    m.set(r, c, 1);
                }
            }
            m
        })
        .collect();
    let dims = per_vertex.iter().map(Vec::len).collect();
    Representation::new(alg, dims, maps).expect("projective module")
}

/// `I_v = D(e_v A)`: at vertex `z`, basis = duals of basis paths from `z` to `v`;
/// an arrow `α` sends `p*` to `q*` when `p = α q` in traversal order, else 0.
pub fn injective(alg: &MonomialAlgebra, v: usize) -> Representation {
    let per_vertex: Vec<Vec<usize>> = (0..alg.n()).map(|z| alg.paths_between(z, v)).collect();
    let q = alg.quiver();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let src = &per_vertex[arr.source];
            let tgt = &per_vertex[arr.target];
            let mut m = Matrix::zeros(alg.field(), tgt.len(), src.len());
            for (c, &p) in src.iter().enumerate() {
                let path = &alg.path_basis()[p];
                if path.arrows.first() == Some(&a) {
                    let rest = crate::algebra::Path {
                        start: arr.target,
                        arrows: path.arrows[1..].to_vec(),
                    };
                    let ri = alg.basis_index(&rest).expect("subpath of basis path");
                    let r = tgt.iter().position(|&x| x == ri).expect("target path");
                    m.set(r, c, 1);
                }
            }
            m
        })
        .collect();
    let dims = per_vertex.iter().map(Vec::len).collect();
    Representation::new(alg, dims, maps).expect("injective module")
}

pub fn direct_sum(alg: &MonomialAlgebra, ms: &[&Representation]) -> Representation {
    if ms.is_empty() {
        return Representation::zero(alg);
    }
    let n = alg.n();
    let dims: Vec<usize> = (0..n).map(|v| ms.iter().map(|m| m.dims[v]).sum()).collect();
    let maps = (0..alg.quiver().arrows().len())
        .map(|a| {
            let blocks: Vec<&Matrix> = ms.iter().map(|m| &m.maps[a]).collect();
            Matrix::block_diagonal(alg.field(), &blocks)
        })
        .collect();
    Representation {
        field: alg.field(),
        dims,
        maps,
    }
}

/// The regular module `A = ⊕_v P_v`.
pub fn regular(alg: &MonomialAlgebra) -> Representation {
    let ps: Vec<Representation> = (0..alg.n()).map(|v| projective(alg, v)).collect();
    direct_sum(alg, &ps.iter().collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ex10_projectives_have_dimension_seven() {
        let a = fixtures::load("ex10").unwrap();
        for v in 0..6 {
            let p = projective(&a, v);
            assert_eq!(p.total_dim(), 7);
            assert_eq!(p.loewy_label(&a).layers.len(), 7);
        }
    }

    #[test]
    fn ex1_projective_label() {
        let a = fixtures::load("ex1").unwrap();
        let p1 = projective(&a, 0);
        assert_eq!(p1.dim_vector(), vec![1, 1, 0]);
        assert_eq!(p1.loewy_label(&a).to_string(), "1/2");
    }

    #[test]
    fn labels_of_ex2_and_ex3_projectives() {
        let a = fixtures::load("ex2").unwrap();
        assert_eq!(simple(&a, 1).loewy_label(&a).to_string(), "2");
        let p3 = projective(&a, 2);
        assert_eq!(p3.loewy_label(&a).to_string(), "3/3");
        assert_eq!(p3.dim_vector(), vec![0, 0, 2]);
        assert_eq!(injective(&a, 2).loewy_label(&a).to_string(), "23/3");
        let b = fixtures::load("ex3").unwrap();
        assert_eq!(projective(&b, 0).loewy_label(&b).to_string(), "1/12");
        assert_eq!(Representation::zero(&b).loewy_label(&b).to_string(), "0");
    }

    #[test]
    fn dimension_of_algebra_is_sum_of_projectives() {
        for name in fixtures::NAMES {
            let a = fixtures::load(name).unwrap();
            let total: usize = (0..a.n()).map(|v| projective(&a, v).total_dim()).sum();
            assert_eq!(total, a.dim(), "{name}");
            let inj: usize = (0..a.n()).map(|v| injective(&a, v).total_dim()).sum();
            assert_eq!(inj, a.dim(), "{name}");
            assert!(regular(&a).is_faithful(&a), "{name}");
            assert_eq!(regular(&a).annihilator_dim(&a), 0);
        }
    }

    #[test]
    fn direct_sum_examples() {
        let a = fixtures::load("ex2").unwrap();
        assert!(direct_sum(&a, &[]).is_zero());
        let s1 = simple(&a, 0);
        assert_eq!(direct_sum(&a, &[&s1, &s1]).dim_vector(), vec![2, 0, 0]);
        let x = regular(&a);
        assert_eq!(x.total_dim(), 6);
        assert!(x.is_faithful(&a));
    }

    #[test]
    fn sincere_examples() {
        let a = fixtures::load("ex6").unwrap();
        assert!(!simple(&a, 0).is_sincere());
        let pt = crate::algebra::parse_algebra("algebra pt\nvertices 1\n").unwrap();
        assert!(!Representation::zero(&pt).is_sincere());
        assert!(simple(&pt, 0).is_sincere());
    }

    #[test]
    fn relation_violation_rejected() {
        let a = fixtures::load("ex1").unwrap();
        let k = a.field();
        let one = Matrix::identity(k, 1);
        let z = |r, c| Matrix::zeros(k, r, c);
        // a and b both nonzero on 1 -> 2 -> 3 violates ba = 0
        let err = Representation::new(&a, vec![1, 1, 1], vec![one.clone(), one.clone(), z(1, 1)])
            .unwrap_err();
        assert_eq!(err, ReprError::RelationViolated("a b".into()));
        let err = Representation::new(&a, vec![1, 1], vec![]).unwrap_err();
        assert!(matches!(err, ReprError::Count { .. }));
    }
}
