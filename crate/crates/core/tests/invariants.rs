//! Structural invariants checked exhaustively over the bundled fixtures.

use tauq::algebra::{MonomialAlgebra, Path};
use tauq::bijection::{
    global_permutation, named_permutation, theorem5_matching, MatchMode, DEFAULT_PERMUTATION_CAP,
};
use tauq::catalog::Catalog;
use tauq::fixtures;
use tauq::homological::{
    ext1_dim, hom_dim, is_isomorphic, nakayama_map, proj_dimension, radical_endomorphisms, syzygy,
    IsoResult, ProjDim, DEFAULT_PD_CUTOFF,
};
use tauq::linalg::span_rank;
use tauq::report::{Analysis, Options};
use tauq::repr::{direct_sum, injective, projective, regular, Morphism};
use tauq::strings::string_module;

fn algebras() -> Vec<MonomialAlgebra> {
    fixtures::NAMES
        .iter()
        .map(|n| fixtures::load(n).expect("fixture parses"))
        .collect()
}

fn analysis(alg: &MonomialAlgebra) -> Analysis {
    Analysis::new(alg, &Options::default()).expect("catalog builds")
}

#[test]
fn projectives_and_injectives_count_paths() {
    for alg in algebras() {
        for v in 0..alg.n() {
            let (p, i) = (projective(&alg, v), injective(&alg, v));
            for x in 0..alg.n() {
                assert_eq!(
                    p.dim_at(x),
                    alg.paths_between(v, x).len(),
                    "{} P{v}",
                    alg.name()
                );
                assert_eq!(
                    i.dim_at(x),
                    alg.paths_between(x, v).len(),
                    "{} I{v}",
                    alg.name()
                );
            }
            let ev = alg.basis_index(&Path::trivial(v)).expect("vertex path");
            let (dom, cod, map) = nakayama_map(&alg, &[v], &[v], &[vec![vec![(ev, 1)]]]);
            assert_eq!(dom.dim_vector(), i.dim_vector());
            assert_eq!(cod, i);
            assert_eq!(map, Morphism::identity(&dom));
        }
        assert!(regular(&alg).is_faithful(&alg), "{}", alg.name());
    }
}

/// Right or left multiplication of a path-basis vector by an arrow.
fn times_arrow(alg: &MonomialAlgebra, x: &[u32], arrow: usize, on_right: bool) -> Vec<u32> {
    let f = alg.field();
    let q = alg.quiver();
    let a = alg
        .basis_index(&Path {
            start: q.arrow(arrow).source,
            arrows: vec![arrow],
        })
        .expect("arrow is a basis path");
    let mut out = vec![0; x.len()];
    for (i, &c) in x.iter().enumerate().filter(|(_, &c)| c != 0) {
        let prod = if on_right {
            alg.concat(i, a)
        } else {
            alg.concat(a, i)
        };
        if let Some(k) = prod {
            out[k] = f.add(out[k], c);
        }
    }
    out
}

#[test]
fn annihilators_are_two_sided_ideals() {
    for alg in algebras().into_iter().filter(|a| a.dim() <= 30) {
        let an = analysis(&alg);
        let mut modules: Vec<_> = an
            .catalog
            .modules
            .iter()
            .map(|m| m.module.clone())
            .collect();
        modules.extend(an.tilting.iter().map(|t| {
            let ms: Vec<_> = t.summands.iter().map(|&i| an.catalog.module(i)).collect();
            direct_sum(&alg, &ms)
        }));
        for m in modules {
            let ann = m.annihilator(&alg);
            let r = span_rank(alg.field(), alg.dim(), &ann);
            for x in &ann {
                for arrow in 0..alg.quiver().arrows().len() {
                    for side in [true, false] {
                        let mut v = ann.clone();
                        v.push(times_arrow(&alg, x, arrow, side));
                        assert_eq!(span_rank(alg.field(), alg.dim(), &v), r, "{}", alg.name());
                    }
                }
            }
        }
    }
}

#[test]
fn catalog_modules_are_indecomposable_and_distinct() {
    for alg in algebras() {
        let cat = Catalog::build(&alg, Default::default()).expect("catalog builds");
        for (i, m) in cat.modules.iter().enumerate() {
            let end = hom_dim(&alg, &m.module, &m.module);
            let rad = radical_endomorphisms(&alg, &m.module).len();
            assert_eq!(end - rad, 1, "{} {}: End is not local", alg.name(), m.label);
            let back = string_module(&alg, &m.word.inverse(&alg));
            assert_eq!(
                is_isomorphic(&alg, &back, &m.module),
                IsoResult::Isomorphic,
                "{}",
                m.label
            );
            if cat.len() <= 14 {
                for n in &cat.modules[i + 1..] {
                    assert_eq!(
                        is_isomorphic(&alg, &m.module, &n.module),
                        IsoResult::NotIsomorphic,
                        "{} {} vs {}",
                        alg.name(),
                        m.label,
                        n.label
                    );
                }
            }
        }
    }
}

#[test]
fn finite_projective_dimension_agrees_with_syzygies() {
    for alg in algebras() {
        let cat = Catalog::build(&alg, Default::default()).expect("catalog builds");
        for m in &cat.modules {
            let ProjDim::Finite { value } = proj_dimension(&alg, &m.module, DEFAULT_PD_CUTOFF)
            else {
                continue;
            };
            let mut omega = m.module.clone();
            for _ in 0..value.saturating_sub(1) {
                omega = syzygy(&alg, &omega).expect("nonzero syzygy").module;
            }
            if value == 0 {
                assert!(m.is_projective(), "{}", m.label);
                continue;
            }
            let last = syzygy(&alg, &omega).expect("nonzero syzygy").module;
            for n in &cat.modules {
                assert_eq!(
                    ext1_dim(&alg, &last, &n.module),
                    0,
                    "{}: Ω^{value} is not projective",
                    m.label
                );
            }
            assert!(
                ext1_dim(&alg, &omega, &last) > 0,
                "{}: pd below {value}",
                m.label
            );
        }
    }
}

#[test]
fn strict_matchings_pair_isomorphic_summands() {
    for alg in algebras().into_iter().filter(|a| a.n() <= 3) {
        let an = analysis(&alg);
        for x in &an.tilting {
            for y in &an.tilting {
                for mode in [MatchMode::Ext, MatchMode::TauHom] {
                    let Some(m) =
                        theorem5_matching(&an.catalog, &x.summands, &y.summands, mode, true)
                            .expect("sizes")
                    else {
                        continue;
                    };
                    for p in &m.pairs {
                        if y.contains(p.x) {
                            assert_eq!(p.x, p.y, "{}", alg.name());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn ex3_exchange_permutation_and_shared_names() {
    let named = |name: &str| {
        let an = analysis(&fixtures::load(name).expect("fixture parses"));
        let perms =
            global_permutation(&an.rigid, &an.tilting, DEFAULT_PERMUTATION_CAP).expect("small");
        let cat = &an.catalog;
        let labelled: Vec<Vec<(String, String)>> = perms
            .iter()
            .map(|p| {
                let mut v: Vec<(String, String)> = p
                    .catalog_pairs(&an.rigid)
                    .into_iter()
                    .map(|(a, b)| (cat.modules[a].label.clone(), cat.modules[b].label.clone()))
                    .collect();
                v.sort();
                v
            })
            .collect();
        let names: Vec<_> = perms
            .iter()
            .map(|p| named_permutation(cat, &an.rigid, p))
            .collect();
        (labelled, names)
    };
    let (ex3_labels, ex3_names) = named("ex3");
    let mut t: Vec<(String, String)> = [
        ("1/12", "1/12"),
        ("2/3", "1/1"),
        ("3", "2"),
        ("1/1", "2/3"),
        ("2", "3"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    t.sort();
    assert!(ex3_labels.contains(&t), "{ex3_labels:?}");
    let (_, ex2_names) = named("ex2");
    let remark: Vec<(String, String)> = [
        ("I1", "P2"),
        ("P1", "P1"),
        ("P2", "I1"),
        ("P3", "S2"),
        ("S2", "P3"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    assert!(ex2_names.contains(&remark), "{ex2_names:?}");
    assert!(ex3_names.contains(&remark), "{ex3_names:?}");
}
