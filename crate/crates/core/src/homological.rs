//! Hom spaces, projective covers, minimal presentations, the Nakayama functor,
//! the Auslander–Reiten translate, `Ext^1`, isomorphism tests and projective
//! dimension.
//!
//! The translate is computed as `τM = ker(νP1 -> νP0)` for a minimal
//! projective presentation `P1 -> P0 -> M -> 0`. Maps between indecomposable
//! projectives `P_y -> P_x` are elements of `e_y A e_x`, i.e. combinations of
//! paths from `x` to `y`; the Nakayama functor turns such a path `π` into the
//! map `I_y -> I_x` sending `p*` to `w*` whenever `p = w π` (traversal order).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::MonomialAlgebra;
use crate::linalg::{complement_basis, span_rank, FieldElement, Matrix};
use crate::repr::{direct_sum, injective, projective, Morphism, Representation, VertexSubspaces};

pub const DEFAULT_PD_CUTOFF: usize = 20;
const RANDOM_ISO_SAMPLES: usize = 64;
const ISO_SEED: u64 = 0x0074_6175_5f69_736f;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologicalError {
    #[error("operation needs a nonzero module")]
    ZeroModule,
    #[error("catalog is not known to be complete")]
    CatalogIncomplete,
}

/// Basis of `Hom_A(M, N)`.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub maps: Vec<Morphism>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }
}

/// Solves `f_y M_a = N_a f_x` for all arrows `a: x -> y`.
pub fn hom_basis(alg: &MonomialAlgebra, m: &Representation, n: &Representation) -> HomBasis {
    let field = alg.field();
    let nv = alg.n();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dim_at(v) * m.dim_at(v);
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return HomBasis { maps: Vec::new() };
    }
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dim_at(v) + c;
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for (a, arr) in alg.quiver().arrows().iter().enumerate() {
        let (x, y) = (arr.source, arr.target);
        let (ma, na) = (m.map(a), n.map(a));
        for i in 0..n.dim_at(y) {
            for j in 0..m.dim_at(x) {
                let mut eq = vec![0; unknowns];
                // (f_y M_a)[i][j] = Σ_k f_y[i][k] M_a[k][j]
                for k in 0..m.dim_at(y) {
                    let c = ma.get(k, j);
                    if c != 0 {
                        let slot = &mut eq[var(y, i, k)];
                        *slot = field.add(*slot, c);
                    }
                }
                // − (N_a f_x)[i][j] = − Σ_k N_a[i][k] f_x[k][j]
                for k in 0..n.dim_at(x) {
                    let c = na.get(i, k);
                    if c != 0 {
                        let slot = &mut eq[var(x, k, j)];
                        *slot = field.sub(*slot, c);
                    }
                }
                if eq.iter().any(|&e| e != 0) {
                    rows.push(eq);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::zeros(field, 0, unknowns).kernel_basis()
    } else {
        let mut sys = Matrix::zeros(field, rows.len(), unknowns);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                sys.set(r, c, v);
            }
        }
        sys.kernel_basis()
    };
    let maps = kernel
        .into_iter()
        .map(|vec| Morphism {
            blocks: (0..nv)
                .map(|v| {
                    let mut b = Matrix::zeros(field, n.dim_at(v), m.dim_at(v));
                    for r in 0..n.dim_at(v) {
                        for c in 0..m.dim_at(v) {
                            b.set(r, c, vec[var(v, r, c)]);
                        }
                    }
                    b
                })
                .collect(),
        })
        .collect();
    HomBasis { maps }
}

pub fn hom_dim(alg: &MonomialAlgebra, m: &Representation, n: &Representation) -> usize {
    hom_basis(alg, m, n).dim()
}

/// The map `⊕_j P_{tops[j]} -> target` sending the j-th generator `e_{tops[j]}`
/// to `images[j] ∈ target_{tops[j]}`, together with its domain.
pub fn map_from_projectives(
    alg: &MonomialAlgebra,
    tops: &[usize],
    images: &[Vec<FieldElement>],
    target: &Representation,
) -> (Representation, Morphism) {
    let field = alg.field();
    let ps: Vec<Representation> = tops.iter().map(|&x| projective(alg, x)).collect();
    let domain = direct_sum(alg, &ps.iter().collect::<Vec<_>>());
    let blocks = (0..alg.n())
        .map(|w| {
            let mut cols = Vec::new();
            for (j, &x) in tops.iter().enumerate() {
                for p in alg.paths_between(x, w) {
                    cols.push(
                        target
                            .act_path(alg, p)
                            .apply(&images[j])
                            .expect("generator lives at its top"),
                    );
                }
            }
            Matrix::from_columns(field, target.dim_at(w), &cols)
        })
        .collect();
    (domain, Morphism { blocks })
}

/// Vertexwise kernel of `f: domain -> _` as a submodule of `domain`.
pub fn kernel_submodule(
    alg: &MonomialAlgebra,
    f: &Morphism,
    domain: &Representation,
) -> (Representation, Morphism) {
    let sub: VertexSubspaces = f.blocks.iter().map(Matrix::kernel_basis).collect();
    domain.submodule(alg, &sub)
}

/// A projective cover `P0 = ⊕ P_{tops[j]} -> M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub tops: Vec<usize>,
    pub generators: Vec<Vec<FieldElement>>,
    pub module: Representation,
    pub map: Morphism,
}

/// Lifts a basis of `top M = M / rad M` (chosen as the standard-vector
/// complement of the radical) to generators.
pub fn projective_cover(
    alg: &MonomialAlgebra,
    m: &Representation,
) -> Result<ProjectiveCover, HomologicalError> {
    if m.is_zero() {
        return Err(HomologicalError::ZeroModule);
    }
    let rad = m.radical(alg);
    let mut tops = Vec::new();
    let mut generators = Vec::new();
    for v in 0..alg.n() {
        for g in complement_basis(alg.field(), m.dim_at(v), &rad[v]) {
            tops.push(v);
            generators.push(g);
        }
    }
    let (module, map) = map_from_projectives(alg, &tops, &generators, m);
    Ok(ProjectiveCover {
        tops,
        generators,
        module,
        map,
    })
}

/// `0 -> ΩM -> P0 -> M -> 0` from the projective cover.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub cover: ProjectiveCover,
    pub module: Representation,
    pub inclusion: Morphism,
}

pub fn syzygy(alg: &MonomialAlgebra, m: &Representation) -> Result<Syzygy, HomologicalError> {
    let cover = projective_cover(alg, m)?;
    let (module, inclusion) = kernel_submodule(alg, &cover.map, &cover.module);
    Ok(Syzygy {
        cover,
        module,
        inclusion,
    })
}

/// A combination of basis paths: `(basis index, coefficient)`.
pub type PathCombination = Vec<(usize, FieldElement)>;

/// Minimal presentation `P1 = ⊕ P_{p1[k]} -> P0 = ⊕ P_{p0[j]} -> M -> 0`.
/// `entries[k][j]` is the component `P_{p1[k]} -> P_{p0[j]}`, a combination of
/// paths from `p0[j]` to `p1[k]`.
#[derive(Clone, Debug)]
pub struct ProjPresentation {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub entries: Vec<Vec<PathCombination>>,
    pub syzygy: Syzygy,
}

impl ProjPresentation {
    /// Both maps radical: no component uses a trivial path.
    pub fn is_radical(&self, alg: &MonomialAlgebra) -> bool {
        self.entries
            .iter()
            .flatten()
            .flatten()
            .all(|&(p, _)| !alg.path_basis()[p].is_empty())
    }

    /// The map `P1 -> P0` as a module homomorphism, with its domain.
    pub fn map(&self, alg: &MonomialAlgebra) -> (Representation, Morphism) {
        let p0 = &self.syzygy.cover.module;
        let images: Vec<Vec<FieldElement>> = self
            .entries
            .iter()
            .zip(&self.p1)
            .map(|(row, &y)| {
                let mut v = Vec::new();
                for (j, &x) in self.p0.iter().enumerate() {
                    let paths = alg.paths_between(x, y);
                    let mut block = vec![0; paths.len()];
                    for &(p, c) in &row[j] {
                        let pos = paths.iter().position(|&q| q == p).expect("entry path");
                        block[pos] = c;
                    }
                    v.extend(block);
                }
                v
            })
            .collect();
        map_from_projectives(alg, &self.p1, &images, p0)
    }
}

pub fn min_presentation(
    alg: &MonomialAlgebra,
    m: &Representation,
) -> Result<ProjPresentation, HomologicalError> {
    let syz = syzygy(alg, m)?;
    let p0 = syz.cover.tops.clone();
    if syz.module.is_zero() {
        return Ok(ProjPresentation {
            p0,
            p1: Vec::new(),
            entries: Vec::new(),
            syzygy: syz,
        });
    }
    let cover1 = projective_cover(alg, &syz.module)?;
    let mut entries = Vec::with_capacity(cover1.tops.len());
    for (&y, g) in cover1.tops.iter().zip(&cover1.generators) {
        let image = syz.inclusion.blocks[y].apply(g).expect("shape");
        let mut row = Vec::with_capacity(p0.len());
        let mut pos = 0;
        for &x in &p0 {
            let paths = alg.paths_between(x, y);
            let comb: PathCombination = paths
                .iter()
                .enumerate()
                .filter(|&(i, _)| image[pos + i] != 0)
                .map(|(i, &p)| (p, image[pos + i]))
                .collect();
            pos += paths.len();
            row.push(comb);
        }
        entries.push(row);
    }
    Ok(ProjPresentation {
        p0,
        p1: cover1.tops,
        entries,
        syzygy: syz,
    })
}

/// `ν` applied to the map `⊕_k P_{sources[k]} -> ⊕_j P_{targets[j]}` with
/// components `entries[k][j]`: returns `(⊕ I_{sources}, ⊕ I_{targets}, map)`.
pub fn nakayama_map(
    alg: &MonomialAlgebra,
    sources: &[usize],
    targets: &[usize],
    entries: &[Vec<PathCombination>],
) -> (Representation, Representation, Morphism) {
    let field = alg.field();
    let is: Vec<Representation> = sources.iter().map(|&y| injective(alg, y)).collect();
    let it: Vec<Representation> = targets.iter().map(|&x| injective(alg, x)).collect();
    let dom = direct_sum(alg, &is.iter().collect::<Vec<_>>());
    let cod = direct_sum(alg, &it.iter().collect::<Vec<_>>());
    let blocks = (0..alg.n())
        .map(|z| {
            let col_paths: Vec<Vec<usize>> =
                sources.iter().map(|&y| alg.paths_between(z, y)).collect();
            let row_paths: Vec<Vec<usize>> =
                targets.iter().map(|&x| alg.paths_between(z, x)).collect();
            let mut b = Matrix::zeros(field, cod.dim_at(z), dom.dim_at(z));
            let mut col0 = 0;
            for (k, cps) in col_paths.iter().enumerate() {
                let mut row0 = 0;
                for (j, rps) in row_paths.iter().enumerate() {
                    for &(pi, c) in &entries[k][j] {
                        for (ri, &w) in rps.iter().enumerate() {
                            let Some(p) = alg.concat(w, pi) else { continue };
                            if let Some(ci) = cps.iter().position(|&q| q == p) {
                                let cur = b.get(row0 + ri, col0 + ci);
                                b.set(row0 + ri, col0 + ci, field.add(cur, c));
                            }
                        }
                    }
                    row0 += rps.len();
                }
                col0 += cps.len();
            }
            b
        })
        .collect();
    (dom, cod, Morphism { blocks })
}

/// `ν(P1) -> ν(P0)` for a presentation.
pub fn nakayama(
    alg: &MonomialAlgebra,
    pres: &ProjPresentation,
) -> (Representation, Representation, Morphism) {
    nakayama_map(alg, &pres.p1, &pres.p0, &pres.entries)
}

/// The Auslander–Reiten translate.
pub fn tau(alg: &MonomialAlgebra, m: &Representation) -> Representation {
    if m.is_zero() {
        return Representation::zero(alg);
    }
    let pres = min_presentation(alg, m).expect("nonzero module");
    if pres.p1.is_empty() {
        return Representation::zero(alg);
    }
    let (dom, _, map) = nakayama(alg, &pres);
    kernel_submodule(alg, &map, &dom).0
}

/// `dim Ext^1(M, N)` from a precomputed syzygy of `M`: the cokernel of
/// restriction `Hom(P0, N) -> Hom(ΩM, N)`.
pub fn ext1_dim_with(alg: &MonomialAlgebra, syz: &Syzygy, n: &Representation) -> usize {
    if syz.module.is_zero() {
        return 0;
    }
    let hom_omega = hom_dim(alg, &syz.module, n);
    if hom_omega == 0 {
        return 0;
    }
    // Hom(P0, N) ≅ ⊕_j N_{x_j}: send generator j to a basis vector of N_{x_j}.
    let tops = &syz.cover.tops;
    let mut restricted = Vec::new();
    for (j, &x) in tops.iter().enumerate() {
        for e in 0..n.dim_at(x) {
            let images: Vec<Vec<FieldElement>> = tops
                .iter()
                .enumerate()
                .map(|(i, &y)| {
                    let mut v = vec![0; n.dim_at(y)];
                    if i == j {
                        v[e] = 1;
                    }
                    v
                })
                .collect();
            let (_, f) = map_from_projectives(alg, tops, &images, n);
            restricted.push(f.compose(&syz.inclusion).flatten());
        }
    }
    let len = restricted.first().map_or(0, Vec::len);
    hom_omega - span_rank(alg.field(), len, &restricted)
}

pub fn ext1_dim(alg: &MonomialAlgebra, m: &Representation, n: &Representation) -> usize {
    match syzygy(alg, m) {
        Ok(s) => ext1_dim_with(alg, &s, n),
        Err(_) => 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsoResult {
    Isomorphic,
    NotIsomorphic,
    /// No invertible map found by the randomized search, no obstruction found.
    Unknown,
}

/// Dimension-vector and Hom-dimension gates, then a search for an invertible
/// element of `Hom(M, N)`: basis elements, sums of two, then seeded random
/// combinations.
pub fn is_isomorphic(alg: &MonomialAlgebra, m: &Representation, n: &Representation) -> IsoResult {
    if m.dims() != n.dims() {
        return IsoResult::NotIsomorphic;
    }
    if m.is_zero() {
        return IsoResult::Isomorphic;
    }
    let hom = hom_basis(alg, m, n);
    let end_m = hom_dim(alg, m, m);
    if hom.dim() != end_m || hom_dim(alg, n, m) != end_m || hom_dim(alg, n, n) != end_m {
        return IsoResult::NotIsomorphic;
    }
    find_invertible(alg, &hom).map_or(IsoResult::Unknown, |_| IsoResult::Isomorphic)
}

/// An invertible element of the span of `hom`, if the search finds one.
pub fn find_invertible(alg: &MonomialAlgebra, hom: &HomBasis) -> Option<Morphism> {
    let maps = &hom.maps;
    for f in maps {
        if f.is_invertible() {
            return Some(f.clone());
        }
    }
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            let f = maps[i].add(&maps[j]);
            if f.is_invertible() {
                return Some(f);
            }
        }
    }
    if maps.is_empty() {
        return None;
    }
    let p = alg.field().characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    for _ in 0..RANDOM_ISO_SAMPLES {
        let mut f = maps[0].scale(rng.gen_range(0..p));
        for g in &maps[1..] {
            f = f.add(&g.scale(rng.gen_range(0..p)));
        }
        if f.is_invertible() {
            return Some(f);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProjDim {
    Finite {
        value: usize,
    },
    /// `Ω^{start+period} M ≅ Ω^{start} M ≠ 0`.
    InfinitePeriodic {
        start: usize,
        period: usize,
    },
    AtLeast {
        value: usize,
    },
}

impl ProjDim {
    pub fn finite(&self) -> Option<usize> {
        match self {
            ProjDim::Finite { value } => Some(*value),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjDim::InfinitePeriodic { .. })
    }

    /// Whether this certifies `pd ≤ 1`.
    pub fn at_most_one(&self) -> bool {
        matches!(self, ProjDim::Finite { value } if *value <= 1)
    }
}

impl std::fmt::Display for ProjDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjDim::Finite { value } => write!(f, "{value}"),
            ProjDim::InfinitePeriodic { .. } => write!(f, "inf"),
            ProjDim::AtLeast { value } => write!(f, ">={value}"),
        }
    }
}

/// Iterates minimal syzygies until one vanishes, repeats an earlier one up to
/// isomorphism, or `cutoff` steps pass.
pub fn proj_dimension(alg: &MonomialAlgebra, m: &Representation, cutoff: usize) -> ProjDim {
    if m.is_zero() {
        return ProjDim::Finite { value: 0 };
    }
    let mut history: Vec<Representation> = vec![m.clone()];
    let mut current = m.clone();
    for k in 1..=cutoff {
        let omega = syzygy(alg, &current).expect("nonzero").module;
        if omega.is_zero() {
            return ProjDim::Finite { value: k - 1 };
        }
        for (j, earlier) in history.iter().enumerate() {
            if earlier.dims() == omega.dims()
                && is_isomorphic(alg, earlier, &omega) == IsoResult::Isomorphic
            {
                return ProjDim::InfinitePeriodic {
                    start: j,
                    period: k - j,
                };
            }
        }
        history.push(omega.clone());
        current = omega;
    }
    ProjDim::AtLeast { value: cutoff }
}

/// Eigenvalue of a matrix with a single eigenvalue (a block of an element of
/// a local endomorphism ring).
fn single_eigenvalue(alg: &MonomialAlgebra, g: &Matrix) -> FieldElement {
    let field = alg.field();
    let d = g.rows();
    let p = field.characteristic() as usize;
    if !d.is_multiple_of(p) {
        let tr = (0..d).fold(0, |s, i| field.add(s, g.get(i, i)));
        return field.mul(tr, field.inv(field.reduce(d as i64)));
    }
    // p divides d, so p <= d is small: scan the field
    (0..p as u32)
        .find(|&l| g.sub(&Matrix::identity(field, d).scale(l)).rank() < d)
        .expect("matrix has an eigenvalue in the field")
}

/// Basis of the radical of `End(M)` for indecomposable `M` (local
/// endomorphism ring with residue field `K`): the non-invertible
/// endomorphisms.
pub fn radical_endomorphisms(alg: &MonomialAlgebra, m: &Representation) -> Vec<Morphism> {
    let end = hom_basis(alg, m, m);
    let Some(v) = (0..alg.n()).find(|&v| m.dim_at(v) > 0) else {
        return Vec::new();
    };
    let lambdas: Vec<FieldElement> = end
        .maps
        .iter()
        .map(|f| single_eigenvalue(alg, &f.blocks[v]))
        .collect();
    let functional = Matrix::from_columns(
        alg.field(),
        1,
        &lambdas.iter().map(|&l| vec![l]).collect::<Vec<_>>(),
    );
    functional
        .kernel_basis()
        .into_iter()
        .map(|coeffs| {
            let mut acc = Morphism::zero(alg.field(), m, m);
            for (c, f) in coeffs.iter().zip(&end.maps) {
                if *c != 0 {
                    acc = acc.add(&f.scale(*c));
                }
            }
            acc
        })
        .collect()
}
