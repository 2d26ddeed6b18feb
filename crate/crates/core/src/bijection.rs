//! Summand matchings between two τ-tilting modules, exchange permutations of
//! the τ-rigid catalog, and conjugacy of such permutations across two
//! algebras.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::Catalog;
use crate::homological::{ext1_dim, hom_dim, is_isomorphic, IsoResult};
use crate::tautilt::{TauRigidCatalog, TauTiltingModule};

pub const DEFAULT_PERMUTATION_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BijectionError {
    #[error("summand lists have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("search space too large: {size} τ-rigid modules exceeds the cap {cap}")]
    SearchTooLarge { size: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMode {
    Ext,
    TauHom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Justification {
    Iso,
    ExtNonzero,
    TauHomNonzero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchedPair {
    pub x: usize,
    pub y: usize,
    pub why: Justification,
}

/// `X_i ↔ Y_{s(i)}` in the order of `X`'s summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub pairs: Vec<MatchedPair>,
}

fn linked(cat: &Catalog, mode: MatchMode, i: usize, j: usize) -> bool {
    match mode {
        MatchMode::Ext => cat.ext[i][j] + cat.ext[j][i] > 0,
        MatchMode::TauHom => cat.hom_tau[i][j] + cat.hom_tau[j][i] > 0,
    }
}

/// A perfect matching between the summands of `x` and `y` in which every pair
/// is isomorphic or linked (by `Ext^1` or by `Hom(-, τ-)` in either
/// direction). With `strict_iso`, isomorphic summands are paired with each
/// other before the search.
pub fn theorem5_matching(
    cat: &Catalog,
    x: &[usize],
    y: &[usize],
    mode: MatchMode,
    strict_iso: bool,
) -> Result<Option<Matching>, BijectionError> {
    if x.len() != y.len() {
        return Err(BijectionError::SizeMismatch(x.len(), y.len()));
    }
    let n = x.len();
    // Catalog modules are pairwise non-isomorphic, so iso means equal index.
    let mut assigned: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    if strict_iso {
        for i in 0..n {
            if let Some(j) = (0..n).find(|&j| !used[j] && y[j] == x[i]) {
                assigned[i] = Some(j);
                used[j] = true;
            }
        }
    }
    let admissible: Vec<Vec<usize>> = (0..n)
        .map(|i| match assigned[i] {
            Some(j) => vec![j],
            None => (0..n)
                .filter(|&j| {
                    !used[j] && ((!strict_iso && x[i] == y[j]) || linked(cat, mode, x[i], y[j]))
                })
                .collect(),
        })
        .collect();

    fn search(i: usize, adm: &[Vec<usize>], taken: &mut [bool], s: &mut Vec<usize>) -> bool {
        if i == adm.len() {
            return true;
        }
        for &j in &adm[i] {
            if !taken[j] {
                taken[j] = true;
                s.push(j);
                if search(i + 1, adm, taken, s) {
                    return true;
                }
                s.pop();
                taken[j] = false;
            }
        }
        false
    }
    let mut taken = vec![false; n];
    let mut s = Vec::with_capacity(n);
    if !search(0, &admissible, &mut taken, &mut s) {
        return Ok(None);
    }
    let pairs = (0..n)
        .map(|i| {
            let (xi, yj) = (x[i], y[s[i]]);
            let why = if xi == yj {
                Justification::Iso
            } else if mode == MatchMode::Ext {
                Justification::ExtNonzero
            } else {
                Justification::TauHomNonzero
            };
            MatchedPair { x: xi, y: yj, why }
        })
        .collect();
    Ok(Some(Matching { pairs }))
}

/// Recomputes matching justifications from the modules themselves rather than
/// the catalog tables; results are memoized per `(mode, x, y)`.
pub struct Verifier<'a> {
    cat: &'a Catalog,
    memo: Mutex<HashMap<(Justification, usize, usize), bool>>,
}

impl<'a> Verifier<'a> {
    pub fn new(cat: &'a Catalog) -> Self {
        Self {
            cat,
            memo: Mutex::new(HashMap::new()),
        }
    }

    fn holds(&self, why: Justification, i: usize, j: usize) -> bool {
        if let Some(&v) = self.memo.lock().expect("memo").get(&(why, i, j)) {
            return v;
        }
        let alg = &self.cat.algebra;
        let (m, n) = (self.cat.module(i), self.cat.module(j));
        let v = match why {
            Justification::Iso => is_isomorphic(alg, m, n) == IsoResult::Isomorphic,
            Justification::ExtNonzero => ext1_dim(alg, m, n) + ext1_dim(alg, n, m) > 0,
            Justification::TauHomNonzero => {
                let (tm, tn) = (
                    crate::homological::tau(alg, m),
                    crate::homological::tau(alg, n),
                );
                hom_dim(alg, m, &tn) + hom_dim(alg, n, &tm) > 0
            }
        };
        self.memo.lock().expect("memo").insert((why, i, j), v);
        v
    }

    /// Whether `matching` is a bijection `x -> y` whose every pair is justified.
    pub fn verify(&self, x: &[usize], y: &[usize], matching: &Matching) -> bool {
        let mut xs: Vec<usize> = matching.pairs.iter().map(|p| p.x).collect();
        let mut ys: Vec<usize> = matching.pairs.iter().map(|p| p.y).collect();
        let (mut x, mut y) = (x.to_vec(), y.to_vec());
        xs.sort_unstable();
        ys.sort_unstable();
        x.sort_unstable();
        y.sort_unstable();
        xs == x && ys == y && matching.pairs.iter().all(|p| self.holds(p.why, p.x, p.y))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub x: usize,
    pub y: usize,
    pub ext_strict: Option<Matching>,
    pub ext_relaxed: bool,
    pub tau_strict: Option<Matching>,
    pub tau_relaxed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem5Report {
    /// Unordered pairs `x < y` of τ-tilting module positions.
    pub pairs: Vec<PairRecord>,
    /// Faithful–faithful pairs without an Ext matching.
    pub faithful_failures: Vec<(usize, usize)>,
    /// Pairs without a τ-Hom matching.
    pub tau_failures: Vec<(usize, usize)>,
    /// Whether Ext matchings exist only between faithful modules.
    pub ext_implies_faithful: bool,
    /// Matchings that failed direct re-verification.
    pub unverified: usize,
}

impl Theorem5Report {
    pub fn part_i_holds(&self) -> bool {
        self.faithful_failures.is_empty()
    }

    pub fn tau_version_holds(&self) -> bool {
        self.tau_failures.is_empty()
    }
}

/// The matching table over all unordered pairs of distinct τ-tilting modules.
pub fn verify_theorem5(cat: &Catalog, tilting: &[TauTiltingModule]) -> Theorem5Report {
    let verifier = Verifier::new(cat);
    let index_pairs: Vec<(usize, usize)> = (0..tilting.len())
        .flat_map(|a| (a + 1..tilting.len()).map(move |b| (a, b)))
        .collect();
    let unverified = Mutex::new(0usize);
    let pairs: Vec<PairRecord> = index_pairs
        .par_iter()
        .map(|&(a, b)| {
            let (x, y) = (&tilting[a].summands, &tilting[b].summands);
            let run =
                |mode, strict| theorem5_matching(cat, x, y, mode, strict).expect("equal sizes");
            let ext_strict = run(MatchMode::Ext, true);
            let tau_strict = run(MatchMode::TauHom, true);
            for m in ext_strict.iter().chain(&tau_strict) {
                if !verifier.verify(x, y, m) {
                    *unverified.lock().expect("counter") += 1;
                }
            }
            PairRecord {
                x: a,
                y: b,
                ext_relaxed: run(MatchMode::Ext, false).is_some(),
                tau_relaxed: run(MatchMode::TauHom, false).is_some(),
                ext_strict,
                tau_strict,
            }
        })
        .collect();
    let faithful = |k: usize| tilting[k].faithful;
    let faithful_failures = pairs
        .iter()
        .filter(|p| faithful(p.x) && faithful(p.y) && p.ext_strict.is_none())
        .map(|p| (p.x, p.y))
        .collect();
    let tau_failures = pairs
        .iter()
        .filter(|p| p.tau_strict.is_none())
        .map(|p| (p.x, p.y))
        .collect();
    let ext_implies_faithful = pairs
        .iter()
        .all(|p| p.ext_strict.is_none() || (faithful(p.x) && faithful(p.y)));
    Theorem5Report {
        pairs,
        faithful_failures,
        tau_failures,
        ext_implies_faithful,
        unverified: unverified.into_inner().expect("counter"),
    }
}

/// A permutation of the τ-rigid catalog: `map[k]` is the position of the
/// image of the module at position `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Permutation {
    pub map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    /// As catalog indices: `(module, image)`.
    pub fn catalog_pairs(&self, rigid: &TauRigidCatalog) -> Vec<(usize, usize)> {
        self.map
            .iter()
            .enumerate()
            .map(|(k, &v)| (rigid.indices[k], rigid.indices[v]))
            .collect()
    }
}

fn positions(rigid: &TauRigidCatalog, t: &TauTiltingModule) -> Vec<usize> {
    let mut v: Vec<usize> = t
        .summands
        .iter()
        .map(|&i| rigid.position(i).expect("τ-tilting summands are τ-rigid"))
        .collect();
    v.sort_unstable();
    v
}

/// Whether replacing each summand of `U` not in `W` by its image yields `W`,
/// for every ordered pair of τ-tilting modules.
pub fn is_exchange_permutation(
    rigid: &TauRigidCatalog,
    tilting: &[TauTiltingModule],
    t: &Permutation,
) -> bool {
    let sets: Vec<Vec<usize>> = tilting.iter().map(|m| positions(rigid, m)).collect();
    sets.iter().all(|u| {
        sets.iter().all(|w| {
            let mut out: Vec<usize> = u
                .iter()
                .map(|&k| if w.contains(&k) { k } else { t.map[k] })
                .collect();
            out.sort_unstable();
            out == *w
        })
    })
}

/// All exchange permutations of the τ-rigid catalog.
pub fn global_permutation(
    rigid: &TauRigidCatalog,
    tilting: &[TauTiltingModule],
    cap: usize,
) -> Result<Vec<Permutation>, BijectionError> {
    let n = rigid.len();
    if n > cap {
        return Err(BijectionError::SearchTooLarge { size: n, cap });
    }
    let sets: Vec<Vec<usize>> = tilting.iter().map(|m| positions(rigid, m)).collect();
    let mut domain: Vec<Vec<bool>> = vec![vec![true; n]; n];
    for u in &sets {
        for w in &sets {
            for &k in u.iter().filter(|k| !w.contains(k)) {
                for (v, ok) in domain[k].iter_mut().enumerate() {
                    *ok &= w.contains(&v) && !u.contains(&v);
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        k: usize,
        domain: &[Vec<bool>],
        map: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Permutation>,
        check: &dyn Fn(&Permutation) -> bool,
    ) {
        if k == domain.len() {
            let p = Permutation { map: map.clone() };
            if check(&p) {
                out.push(p);
            }
            return;
        }
        for v in 0..domain.len() {
            if domain[k][v] && !used[v] {
                used[v] = true;
                map.push(v);
                rec(k + 1, domain, map, used, out, check);
                map.pop();
                used[v] = false;
            }
        }
    }
    let check = |p: &Permutation| is_exchange_permutation(rigid, tilting, p);
    rec(0, &domain, &mut map, &mut used, &mut out, &check);
    out.sort();
    Ok(out)
}

/// Structural comparison of `V` and `s(V)` over all τ-rigid `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub projective_flip: bool,
    pub simple_preserved: bool,
    pub sincere_preserved: bool,
    pub dim_growth_at_most_two: bool,
}

impl StructuralReport {
    pub fn all(&self) -> bool {
        self.projective_flip
            && self.simple_preserved
            && self.sincere_preserved
            && self.dim_growth_at_most_two
    }
}

pub fn structural_report(
    cat_a: &Catalog,
    rigid_a: &TauRigidCatalog,
    cat_b: &Catalog,
    rigid_b: &TauRigidCatalog,
    s: &Permutation,
) -> StructuralReport {
    let pairs: Vec<(
        &crate::catalog::CatalogModule,
        &crate::catalog::CatalogModule,
    )> = s
        .map
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            (
                &cat_a.modules[rigid_a.indices[k]],
                &cat_b.modules[rigid_b.indices[v]],
            )
        })
        .collect();
    StructuralReport {
        projective_flip: pairs
            .iter()
            .all(|(v, w)| w.is_projective() != v.is_projective()),
        simple_preserved: pairs.iter().all(|(v, w)| w.simple == v.simple),
        sincere_preserved: pairs.iter().all(|(v, w)| w.sincere == v.sincere),
        dim_growth_at_most_two: pairs
            .iter()
            .all(|(v, w)| v.dim <= w.dim && w.dim <= v.dim + 2),
    }
}

/// `s` (positions in A's catalog to positions in B's) with `β s = s α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjugacy {
    pub s: Permutation,
    pub alpha: usize,
    pub beta: usize,
    pub structure: StructuralReport,
}

/// All bijections `s` between the τ-rigid catalogs with `β = s α s^{-1}` for
/// some exchange permutations `α` of A and `β` of B. With `structural`, only
/// those satisfying every property of [`StructuralReport`] are kept.
#[allow(clippy::too_many_arguments)]
pub fn conjugacy_search(
    cat_a: &Catalog,
    rigid_a: &TauRigidCatalog,
    alphas: &[Permutation],
    cat_b: &Catalog,
    rigid_b: &TauRigidCatalog,
    betas: &[Permutation],
    cap: usize,
    structural: bool,
) -> Result<Vec<Conjugacy>, BijectionError> {
    let n = rigid_a.len();
    if n != rigid_b.len() {
        return Err(BijectionError::SizeMismatch(n, rigid_b.len()));
    }
    if n > cap {
        return Err(BijectionError::SearchTooLarge { size: n, cap });
    }
    let mut out = Vec::new();
    for (ai, alpha) in alphas.iter().enumerate() {
        for (bi, beta) in betas.iter().enumerate() {
            // s(α(k)) = β(s(k)): assigning s(k) forces s on the α-orbit of k.
            let mut s = vec![usize::MAX; n];
            let mut found = Vec::new();
            extend(alpha, beta, &mut s, &mut found);
            for s in found {
                let s = Permutation { map: s };
                let structure = structural_report(cat_a, rigid_a, cat_b, rigid_b, &s);
                if !structural || structure.all() {
                    out.push(Conjugacy {
                        s,
                        alpha: ai,
                        beta: bi,
                        structure,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn extend(
    alpha: &Permutation,
    beta: &Permutation,
    s: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    let n = s.len();
    let Some(k) = s.iter().position(|&v| v == usize::MAX) else {
        found.push(s.clone());
        return;
    };
    'candidates: for v in 0..n {
        if s.contains(&v) {
            continue;
        }
        let saved = s.clone();
        let (mut a, mut b) = (k, v);
        loop {
            if s[a] == usize::MAX {
                if s.contains(&b) {
                    *s = saved;
                    continue 'candidates;
                }
                s[a] = b;
            } else if s[a] != b {
                *s = saved;
                continue 'candidates;
            } else {
                break;
            }
            a = alpha.map[a];
            b = beta.map[b];
        }
        extend(alpha, beta, s, found);
        *s = saved;
    }
}

/// Name of a catalog module as `P<v>`, `I<v>` or `S<v>` (in that priority),
/// falling back to the Loewy label.
pub fn standard_name(cat: &Catalog, i: usize) -> String {
    let m = &cat.modules[i];
    let q = cat.algebra.quiver();
    if let Some(v) = m.projective {
        format!("P{}", q.vertex_name(v))
    } else if let Some(v) = m.injective {
        format!("I{}", q.vertex_name(v))
    } else if m.simple {
        let v = (0..cat.algebra.n())
            .find(|&v| m.module.dim_at(v) == 1)
            .expect("simple");
        format!("S{}", q.vertex_name(v))
    } else {
        m.label.clone()
    }
}

/// A permutation written as sorted `(name, image name)` pairs.
pub fn named_permutation(
    cat: &Catalog,
    rigid: &TauRigidCatalog,
    t: &Permutation,
) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = t
        .catalog_pairs(rigid)
        .into_iter()
        .map(|(a, b)| (standard_name(cat, a), standard_name(cat, b)))
        .collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homological::DEFAULT_PD_CUTOFF;
    use crate::strings::Caps;
    use crate::tautilt::{catalog_pds, indec_tau_rigid, tau_tilting_modules};

    struct Setup {
        cat: Catalog,
        rigid: TauRigidCatalog,
        tt: Vec<TauTiltingModule>,
    }

    fn setup(name: &str) -> Setup {
        let cat = Catalog::build(&fixtures::load(name).unwrap(), Caps::default()).unwrap();
        let rigid = indec_tau_rigid(&cat);
        let pds = catalog_pds(&cat, DEFAULT_PD_CUTOFF);
        let tt = tau_tilting_modules(&cat, &rigid, &pds);
        Setup { cat, rigid, tt }
    }

    #[test]
    fn ex2_matchings() {
        let s = setup("ex2");
        let c = &s.cat;
        let x = c.indices(&["1/2", "2/3", "3/3"]);
        let y = c.indices(&["1/2", "2/3", "2"]);
        let z = c.indices(&["1/2", "3/3", "1"]);
        let m = theorem5_matching(c, &x, &y, MatchMode::Ext, true)
            .unwrap()
            .unwrap();
        let got: Vec<(usize, usize)> = m.pairs.iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(got, vec![(x[0], y[0]), (x[1], y[1]), (x[2], y[2])]);
        assert!(Verifier::new(c).verify(&x, &y, &m));
        assert!(theorem5_matching(c, &x, &z, MatchMode::Ext, true)
            .unwrap()
            .is_none());
        let t = theorem5_matching(c, &x, &z, MatchMode::TauHom, true)
            .unwrap()
            .unwrap();
        assert!(Verifier::new(c).verify(&x, &z, &t));
        assert_eq!(
            theorem5_matching(c, &x, &y[..2], MatchMode::Ext, true).unwrap_err(),
            BijectionError::SizeMismatch(3, 2)
        );
    }

    #[test]
    fn strict_iso_pairs_equal_summands() {
        let s = setup("ex7b");
        for a in &s.tt {
            for b in &s.tt {
                for mode in [MatchMode::Ext, MatchMode::TauHom] {
                    if let Some(m) =
                        theorem5_matching(&s.cat, &a.summands, &b.summands, mode, true).unwrap()
                    {
                        for p in &m.pairs {
                            if b.summands.contains(&p.x) {
                                assert_eq!(p.x, p.y);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ex2_exchange_permutation_by_standard_names() {
        let s = setup("ex2");
        let perms = global_permutation(&s.rigid, &s.tt, DEFAULT_PERMUTATION_CAP).unwrap();
        let named: Vec<Vec<(String, String)>> = perms
            .iter()
            .map(|p| named_permutation(&s.cat, &s.rigid, p))
            .collect();
        let expected: Vec<(String, String)> = [
            ("I1", "P2"),
            ("P1", "P1"),
            ("P2", "I1"),
            ("P3", "S2"),
            ("S2", "P3"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        assert!(named.contains(&expected), "{named:?}");
    }

    #[test]
    fn permutation_cap() {
        let s = setup("ex2");
        assert_eq!(
            global_permutation(&s.rigid, &s.tt, 4).unwrap_err(),
            BijectionError::SearchTooLarge { size: 5, cap: 4 }
        );
    }

    #[test]
    fn self_conjugacy_contains_identity() {
        let s = setup("ex3");
        let perms = global_permutation(&s.rigid, &s.tt, DEFAULT_PERMUTATION_CAP).unwrap();
        let found = conjugacy_search(
            &s.cat, &s.rigid, &perms, &s.cat, &s.rigid, &perms, 10, false,
        )
        .unwrap();
        let id = Permutation::identity(s.rigid.len());
        assert!(found.iter().any(|c| c.s == id && c.alpha == c.beta));
    }
}
