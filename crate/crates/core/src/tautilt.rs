//! τ-rigid modules, τ-tilting modules as cliques of the compatibility graph,
//! support τ-tilting pairs and mutation.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Catalog;
use crate::homological::{hom_dim, proj_dimension, tau, ProjDim};
use crate::repr::{direct_sum, Representation};

/// Whether `⊕ summands` is τ-rigid, computing τ summandwise.
pub fn is_tau_rigid(alg: &crate::algebra::MonomialAlgebra, summands: &[&Representation]) -> bool {
    let taus: Vec<Representation> = summands.iter().map(|m| tau(alg, m)).collect();
    summands
        .iter()
        .all(|m| taus.iter().all(|t| t.is_zero() || hom_dim(alg, m, t) == 0))
}

/// Whether the sum of the given catalog modules is τ-rigid.
pub fn is_tau_rigid_indices(cat: &Catalog, idx: &[usize]) -> bool {
    idx.iter()
        .all(|&i| idx.iter().all(|&j| cat.hom_tau[i][j] == 0))
}

#[derive(Clone, Debug)]
pub struct TauRigidCatalog {
    /// Catalog indices of the indecomposable τ-rigid modules.
    pub indices: Vec<usize>,
    /// Compatibility over positions in `indices`.
    pub compatible: Vec<Vec<bool>>,
}

impl TauRigidCatalog {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn position(&self, catalog_index: usize) -> Option<usize> {
        self.indices.iter().position(|&i| i == catalog_index)
    }
}

pub fn compatible(cat: &Catalog, i: usize, j: usize) -> bool {
    cat.hom_tau[i][j] == 0 && cat.hom_tau[j][i] == 0
}

pub fn indec_tau_rigid(cat: &Catalog) -> TauRigidCatalog {
    let indices: Vec<usize> = (0..cat.len()).filter(|&i| cat.hom_tau[i][i] == 0).collect();
    let compatible = indices
        .iter()
        .map(|&i| indices.iter().map(|&j| compatible(cat, i, j)).collect())
        .collect();
    TauRigidCatalog {
        indices,
        compatible,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TauTiltingModule {
    /// Sorted catalog indices.
    pub summands: Vec<usize>,
    pub dim: usize,
    pub faithful: bool,
    pub sincere: bool,
    pub projective: bool,
    pub pd: ProjDim,
    pub partial_tilting: bool,
}

impl TauTiltingModule {
    pub fn contains(&self, i: usize) -> bool {
        self.summands.binary_search(&i).is_ok()
    }
}

/// Projective dimension of a direct sum from those of its summands.
pub fn combine_pd(pds: impl IntoIterator<Item = ProjDim>) -> ProjDim {
    let mut out = ProjDim::Finite { value: 0 };
    for p in pds {
        out = match (out, p) {
            (ProjDim::InfinitePeriodic { .. }, _) => out,
            (_, ProjDim::InfinitePeriodic { .. }) => p,
            (ProjDim::AtLeast { value: a }, ProjDim::AtLeast { value: b }) => {
                ProjDim::AtLeast { value: a.max(b) }
            }
            (ProjDim::AtLeast { .. }, _) => out,
            (_, ProjDim::AtLeast { .. }) => p,
            (ProjDim::Finite { value: a }, ProjDim::Finite { value: b }) => {
                ProjDim::Finite { value: a.max(b) }
            }
        };
    }
    out
}

/// Per-module projective dimensions of a catalog.
pub fn catalog_pds(cat: &Catalog, cutoff: usize) -> Vec<ProjDim> {
    cat.modules
        .par_iter()
        .map(|m| proj_dimension(&cat.algebra, &m.module, cutoff))
        .collect()
}

/// Flags of the basic module with summands `idx`.
pub fn describe(cat: &Catalog, idx: &[usize], pds: &[ProjDim]) -> TauTiltingModule {
    let mut summands = idx.to_vec();
    summands.sort_unstable();
    let alg = &cat.algebra;
    let parts: Vec<&Representation> = summands.iter().map(|&i| cat.module(i)).collect();
    let sum = direct_sum(alg, &parts);
    let pd = combine_pd(summands.iter().map(|&i| pds[i]));
    let ext_free = summands
        .iter()
        .all(|&i| summands.iter().all(|&j| cat.ext[i][j] == 0));
    TauTiltingModule {
        dim: sum.total_dim(),
        faithful: sum.is_faithful(alg),
        sincere: sum.is_sincere(),
        projective: summands.iter().all(|&i| cat.modules[i].is_projective()),
        partial_tilting: pd.at_most_one() && ext_free,
        pd,
        summands,
    }
}

/// Maximal cliques (Bron–Kerbosch with pivoting), each sorted.
pub fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn bk(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| v != u && adj[u][v]).count())
            .expect("p is nonempty");
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| v == pivot || !adj[pivot][v])
            .collect();
        for v in candidates {
            let np = p.iter().copied().filter(|&w| w != v && adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| w != v && adj[v][w]).collect();
            r.push(v);
            bk(adj, r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    bk(
        adj,
        &mut Vec::new(),
        (0..adj.len()).collect(),
        Vec::new(),
        &mut out,
    );
    out.sort();
    out
}

/// All cliques of size exactly `k`, sorted lexicographically: the `k`-subsets
/// of the maximal cliques.
pub fn k_cliques(adj: &[Vec<bool>], k: usize) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for c in maximal_cliques(adj) {
        if c.len() == k {
            out.insert(c);
        } else if c.len() > k {
            out.extend(k_subsets(&c, k));
        }
    }
    out.into_iter().collect()
}

/// Reference enumeration of all `k`-subsets that are cliques.
pub fn k_cliques_bruteforce(adj: &[Vec<bool>], k: usize) -> Vec<Vec<usize>> {
    fn rec(
        adj: &[Vec<bool>],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..adj.len() {
            if cur.iter().all(|&u| adj[u][v]) {
                cur.push(v);
                rec(adj, k, v + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(adj, k, 0, &mut Vec::new(), &mut out);
    out
}

/// The τ-tilting modules: cliques of size `n` in the compatibility graph.
pub fn tau_tilting_modules(
    cat: &Catalog,
    rigid: &TauRigidCatalog,
    pds: &[ProjDim],
) -> Vec<TauTiltingModule> {
    let cliques = k_cliques(&rigid.compatible, cat.algebra.n());
    let mut out: Vec<TauTiltingModule> = cliques
        .par_iter()
        .map(|c| {
            let idx: Vec<usize> = c.iter().map(|&p| rigid.indices[p]).collect();
            describe(cat, &idx, pds)
        })
        .collect();
    out.sort_by(|a, b| a.summands.cmp(&b.summands));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AirViolation {
    pub tilting: usize,
    pub extra: usize,
}

/// For each τ-tilting `T` and τ-rigid indecomposable `S` not a summand of
/// `T`, `T ⊕ S` must fail to be τ-rigid.
pub fn check_air_maximality(
    cat: &Catalog,
    rigid: &TauRigidCatalog,
    tilting: &[TauTiltingModule],
) -> Vec<AirViolation> {
    let mut out = Vec::new();
    for (t, tm) in tilting.iter().enumerate() {
        for &s in &rigid.indices {
            if tm.contains(s) {
                continue;
            }
            let mut idx = tm.summands.clone();
            idx.push(s);
            if is_tau_rigid_indices(cat, &idx) {
                out.push(AirViolation {
                    tilting: t,
                    extra: s,
                });
            }
        }
    }
    out
}

/// A τ-rigid pair `(M, P)`: `M` a basic τ-rigid module (catalog indices),
/// `P` the vertices of the projective part, with `Hom(P, M) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SupportPair {
    pub module: Vec<usize>,
    pub projectives: Vec<usize>,
}

impl SupportPair {
    pub fn size(&self) -> usize {
        self.module.len() + self.projectives.len()
    }
}

/// Vertices at which every listed module vanishes.
fn zero_support(cat: &Catalog, idx: &[usize]) -> Vec<usize> {
    (0..cat.algebra.n())
        .filter(|&v| idx.iter().all(|&i| cat.module(i).dim_at(v) == 0))
        .collect()
}

fn all_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn rec(adj: &[Vec<bool>], start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for v in start..adj.len() {
            if cur.iter().all(|&u| adj[u][v]) {
                cur.push(v);
                rec(adj, v + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(adj, 0, &mut Vec::new(), &mut out);
    out
}

/// All support τ-tilting pairs: τ-rigid `M` with `|M| + |{v : M_v = 0}| = n`,
/// taking `P` to be all such `v`.
pub fn support_pairs(cat: &Catalog, rigid: &TauRigidCatalog) -> Vec<SupportPair> {
    let n = cat.algebra.n();
    let mut out: Vec<SupportPair> = all_cliques(&rigid.compatible)
        .into_iter()
        .filter_map(|c| {
            let module: Vec<usize> = c.iter().map(|&p| rigid.indices[p]).collect();
            let projectives = zero_support(cat, &module);
            (module.len() + projectives.len() == n).then_some(SupportPair {
                module,
                projectives,
            })
        })
        .collect();
    out.sort();
    out
}

/// Support τ-tilting pairs completing the almost complete pair `partial`,
/// found by adding one τ-rigid indecomposable or one projective vertex.
pub fn completions(
    cat: &Catalog,
    rigid: &TauRigidCatalog,
    partial: &SupportPair,
) -> Vec<SupportPair> {
    let mut out = Vec::new();
    for &s in &rigid.indices {
        if partial.module.contains(&s) {
            continue;
        }
        if !partial.module.iter().all(|&i| compatible(cat, i, s)) {
            continue;
        }
        if partial
            .projectives
            .iter()
            .any(|&v| cat.module(s).dim_at(v) > 0)
        {
            continue;
        }
        let mut module = partial.module.clone();
        module.push(s);
        module.sort_unstable();
        out.push(SupportPair {
            module,
            projectives: partial.projectives.clone(),
        });
    }
    for v in zero_support(cat, &partial.module) {
        if partial.projectives.contains(&v) {
            continue;
        }
        let mut projectives = partial.projectives.clone();
        projectives.push(v);
        projectives.sort_unstable();
        out.push(SupportPair {
            module: partial.module.clone(),
            projectives,
        });
    }
    out.sort();
    out
}

/// All almost complete τ-rigid pairs (`n − 1` summands in total).
pub fn almost_complete_pairs(cat: &Catalog, rigid: &TauRigidCatalog) -> Vec<SupportPair> {
    let n = cat.algebra.n();
    let mut out = BTreeSet::new();
    for c in all_cliques(&rigid.compatible) {
        let module: Vec<usize> = c.iter().map(|&p| rigid.indices[p]).collect();
        if module.len() >= n {
            continue;
        }
        let zs = zero_support(cat, &module);
        let need = n - 1 - module.len();
        for ps in k_subsets(&zs, need) {
            out.insert(SupportPair {
                module: module.clone(),
                projectives: ps,
            });
        }
    }
    out.into_iter().collect()
}

fn k_subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in k_subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Support τ-tilting pairs reachable from `(A, ∅)` by mutation.
pub fn mutation_walk(cat: &Catalog, rigid: &TauRigidCatalog) -> Vec<SupportPair> {
    let n = cat.algebra.n();
    let mut start: Vec<usize> = (0..n).map(|v| cat.projective_index(v)).collect();
    start.sort_unstable();
    let start = SupportPair {
        module: start,
        projectives: Vec::new(),
    };
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        let mut drops = Vec::new();
        for k in 0..pair.module.len() {
            let mut m = pair.module.clone();
            m.remove(k);
            drops.push(SupportPair {
                module: m,
                projectives: pair.projectives.clone(),
            });
        }
        for k in 0..pair.projectives.len() {
            let mut p = pair.projectives.clone();
            p.remove(k);
            drops.push(SupportPair {
                module: pair.module.clone(),
                projectives: p,
            });
        }
        for partial in drops {
            for next in completions(cat, rigid, &partial) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Catalog modules `N` generated by `⊕ summands`: the images of all maps
/// from the summands into `N` span `N`.
pub fn generated_indecs(cat: &Catalog, summands: &[usize]) -> Vec<usize> {
    let alg = &cat.algebra;
    (0..cat.len())
        .into_par_iter()
        .filter(|&j| {
            let target = cat.module(j);
            let maps: Vec<_> = summands
                .iter()
                .flat_map(|&t| crate::homological::hom_basis(alg, cat.module(t), target).maps)
                .collect();
            (0..alg.n()).all(|v| {
                let d = target.dim_at(v);
                if d == 0 {
                    return true;
                }
                let cols: Vec<Vec<u32>> = maps
                    .iter()
                    .flat_map(|f| (0..f.blocks[v].cols()).map(move |c| f.blocks[v].column(c)))
                    .collect();
                crate::linalg::span_rank(alg.field(), d, &cols) == d
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homological::DEFAULT_PD_CUTOFF;
    use crate::strings::Caps;

    fn setup(name: &str) -> (Catalog, TauRigidCatalog, Vec<TauTiltingModule>) {
        let cat = Catalog::build(&fixtures::load(name).unwrap(), Caps::default()).unwrap();
        let rigid = indec_tau_rigid(&cat);
        let pds = catalog_pds(&cat, DEFAULT_PD_CUTOFF);
        let tt = tau_tilting_modules(&cat, &rigid, &pds);
        (cat, rigid, tt)
    }

    fn labels(cat: &Catalog, idx: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = idx.iter().map(|&i| cat.modules[i].label.clone()).collect();
        v.sort();
        v
    }

    #[test]
    fn ex2_lists() {
        let (cat, rigid, tt) = setup("ex2");
        assert_eq!(
            labels(&cat, &rigid.indices),
            ["1", "1/2", "2", "2/3", "3/3"]
        );
        assert_eq!(tt.len(), 3);
        let faithful: Vec<bool> = tt.iter().map(|t| t.faithful).collect();
        assert_eq!(faithful.iter().filter(|&&f| f).count(), 1);
        for bad in [["1", "2"], ["1", "2/3"], ["2", "3/3"]] {
            assert!(!is_tau_rigid_indices(&cat, &cat.indices(&bad)));
        }
    }

    #[test]
    fn direct_rigidity_agrees_with_tables() {
        let (cat, _, tt) = setup("ex3");
        let alg = &cat.algebra;
        for t in &tt {
            let parts: Vec<&Representation> = t.summands.iter().map(|&i| cat.module(i)).collect();
            assert!(is_tau_rigid(alg, &parts));
        }
        let bad = cat.indices(&["1/1", "2"]);
        assert!(!is_tau_rigid(
            alg,
            &[cat.module(bad[0]), cat.module(bad[1])]
        ));
        for v in 0..alg.n() {
            assert!(is_tau_rigid(alg, &[cat.module(cat.projective_index(v))]));
        }
    }

    #[test]
    fn cliques_match_bruteforce() {
        for name in fixtures::NAMES {
            let (cat, rigid, _) = setup(name);
            let n = cat.algebra.n();
            assert_eq!(
                k_cliques(&rigid.compatible, n),
                k_cliques_bruteforce(&rigid.compatible, n),
                "{name}"
            );
        }
    }

    #[test]
    fn clique_search_on_small_graphs() {
        let tri = vec![vec![true; 3]; 3];
        assert_eq!(k_cliques(&tri, 2).len(), 3);
        assert_eq!(k_cliques(&tri, 3), vec![vec![0, 1, 2]]);
        assert_eq!(k_cliques(&tri, 4), Vec::<Vec<usize>>::new());
        let path = vec![
            vec![true, true, false],
            vec![true, true, true],
            vec![false, true, true],
        ];
        assert_eq!(k_cliques(&path, 2), vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn air_maximality_holds() {
        for name in ["ex1", "ex2", "ex3", "ex7a", "ex7b"] {
            let (cat, rigid, tt) = setup(name);
            assert!(check_air_maximality(&cat, &rigid, &tt).is_empty(), "{name}");
        }
    }

    #[test]
    fn support_pairs_and_mutation() {
        for name in ["ex2", "ex3", "ex7a"] {
            let (cat, rigid, tt) = setup(name);
            let pairs = support_pairs(&cat, &rigid);
            let n = cat.algebra.n();
            assert!(pairs.contains(&SupportPair {
                module: Vec::new(),
                projectives: (0..n).collect()
            }));
            assert_eq!(
                pairs.iter().filter(|p| p.projectives.is_empty()).count(),
                tt.len()
            );
            for partial in almost_complete_pairs(&cat, &rigid) {
                let c = completions(&cat, &rigid, &partial);
                assert_eq!(c.len(), 2, "{name} {partial:?}");
                assert!(c.iter().all(|p| pairs.contains(p)));
            }
            assert_eq!(mutation_walk(&cat, &rigid), pairs);
        }
    }

    #[test]
    fn projectives_generate_everything() {
        let (cat, _, _) = setup("ex7b");
        let ps: Vec<usize> = (0..cat.algebra.n())
            .map(|v| cat.projective_index(v))
            .collect();
        assert_eq!(generated_indecs(&cat, &ps).len(), cat.len());
    }

    #[test]
    fn pd_combination() {
        let f = |v| ProjDim::Finite { value: v };
        assert_eq!(combine_pd([f(0), f(2), f(1)]), f(2));
        assert!(combine_pd([
            f(0),
            ProjDim::InfinitePeriodic {
                start: 0,
                period: 1
            }
        ])
        .is_infinite());
        assert_eq!(
            combine_pd([ProjDim::AtLeast { value: 5 }, f(1)]),
            ProjDim::AtLeast { value: 5 }
        );
    }
}
