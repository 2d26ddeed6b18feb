//! The indexed list of indecomposable modules of a representation-finite
//! string algebra, with cached τ, Hom and Ext tables.

use rayon::prelude::*;

use crate::algebra::MonomialAlgebra;
use crate::homological::{
    ext1_dim_with, hom_basis, hom_dim, is_isomorphic, radical_endomorphisms, syzygy, tau,
    HomologicalError, IsoResult, Syzygy,
};
use crate::linalg::span_rank;
use crate::repr::{injective, projective, Morphism, Representation};
use crate::strings::{enumerate_strings, string_module, Caps, StringError, StringWord};

#[derive(Clone, Debug)]
pub struct CatalogModule {
    pub index: usize,
    pub word: StringWord,
    /// Word in report syntax, e.g. `a b-`.
    pub word_text: String,
    pub label: String,
    pub module: Representation,
    pub dim: usize,
    pub projective: Option<usize>,
    pub injective: Option<usize>,
    pub simple: bool,
    pub sincere: bool,
}

impl CatalogModule {
    pub fn is_projective(&self) -> bool {
        self.projective.is_some()
    }

    pub fn is_injective(&self) -> bool {
        self.injective.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub algebra: MonomialAlgebra,
    pub modules: Vec<CatalogModule>,
    /// Whether `modules` is known to contain every indecomposable.
    pub complete: bool,
    /// `tau[j]`: catalog index of `τ M_j`, `None` when `M_j` is projective.
    pub tau: Vec<Option<usize>>,
    pub tau_modules: Vec<Representation>,
    /// `hom[i][j] = dim Hom(M_i, M_j)`.
    pub hom: Vec<Vec<usize>>,
    /// `hom_tau[i][j] = dim Hom(M_i, τ M_j)`.
    pub hom_tau: Vec<Vec<usize>>,
    /// `ext[i][j] = dim Ext^1(M_i, M_j)`.
    pub ext: Vec<Vec<usize>>,
    pub syzygies: Vec<Syzygy>,
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error(transparent)]
    Strings(#[from] StringError),
    #[error("τ of module {0} is not isomorphic to any catalog module")]
    TauNotFound(usize),
}

fn pair_table<F>(n: usize, f: F) -> Vec<Vec<usize>>
where
    F: Fn(usize, usize) -> usize + Sync,
{
    let flat: Vec<usize> = (0..n * n)
        .into_par_iter()
        .map(|k| f(k / n, k % n))
        .collect();
    flat.chunks(n.max(1))
        .map(<[usize]>::to_vec)
        .take(n)
        .collect()
}

impl Catalog {
    /// Enumerates the string modules of `alg`; complete when enumeration
    /// finishes without hitting a cap or a band.
    pub fn build(alg: &MonomialAlgebra, caps: Caps) -> Result<Catalog, CatalogError> {
        let words = enumerate_strings(alg, caps)?;
        let modules = words
            .iter()
            .map(|w| (w.clone(), string_module(alg, w)))
            .collect();
        Self::from_modules(alg, modules, true)
    }

    /// Catalog of the given pairwise non-isomorphic indecomposables.
    pub fn from_modules(
        alg: &MonomialAlgebra,
        modules: Vec<(StringWord, Representation)>,
        complete: bool,
    ) -> Result<Catalog, CatalogError> {
        let projs: Vec<Representation> = (0..alg.n()).map(|v| projective(alg, v)).collect();
        let injs: Vec<Representation> = (0..alg.n()).map(|v| injective(alg, v)).collect();
        let find = |m: &Representation, list: &[Representation]| {
            list.iter().position(|p| {
                p.dims() == m.dims() && is_isomorphic(alg, m, p) == IsoResult::Isomorphic
            })
        };
        let modules: Vec<CatalogModule> = modules
            .into_par_iter()
            .enumerate()
            .map(|(index, (word, module))| CatalogModule {
                index,
                word_text: word.display(alg),
                label: module.loewy_label(alg).to_string(),
                dim: module.total_dim(),
                projective: find(&module, &projs),
                injective: find(&module, &injs),
                simple: module.total_dim() == 1,
                sincere: module.is_sincere(),
                word,
                module,
            })
            .collect();
        let n = modules.len();
        let tau_modules: Vec<Representation> =
            modules.par_iter().map(|m| tau(alg, &m.module)).collect();
        let syzygies: Vec<Syzygy> = modules
            .par_iter()
            .map(|m| syzygy(alg, &m.module).expect("catalog modules are nonzero"))
            .collect();
        let hom = pair_table(n, |i, j| {
            hom_dim(alg, &modules[i].module, &modules[j].module)
        });
        let hom_tau = pair_table(n, |i, j| hom_dim(alg, &modules[i].module, &tau_modules[j]));
        let ext = pair_table(n, |i, j| {
            ext1_dim_with(alg, &syzygies[i], &modules[j].module)
        });

        // τM_j is indecomposable or zero; locate it by the Hom column, then confirm.
        let mut tau_idx = Vec::with_capacity(n);
        for (j, t) in tau_modules.iter().enumerate() {
            if t.is_zero() {
                tau_idx.push(None);
                continue;
            }
            let found = (0..n).find(|&k| {
                modules[k].module.dims() == t.dims()
                    && (0..n).all(|i| hom[i][k] == hom_tau[i][j])
                    && is_isomorphic(alg, &modules[k].module, t) == IsoResult::Isomorphic
            });
            match found {
                Some(k) => tau_idx.push(Some(k)),
                None if complete => return Err(CatalogError::TauNotFound(j)),
                None => tau_idx.push(None),
            }
        }
        Ok(Catalog {
            algebra: alg.clone(),
            modules,
            complete,
            tau: tau_idx,
            tau_modules,
            hom,
            hom_tau,
            ext,
            syzygies,
        })
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn module(&self, i: usize) -> &Representation {
        &self.modules[i].module
    }

    /// The unique module with this Loewy label.
    pub fn find_by_label(&self, label: &str) -> Option<usize> {
        let mut hits = self.modules.iter().filter(|m| m.label == label);
        let first = hits.next()?;
        hits.next().is_none().then_some(first.index)
    }

    /// Indices for a list of labels; panics on unknown or ambiguous labels.
    pub fn indices(&self, labels: &[&str]) -> Vec<usize> {
        labels
            .iter()
            .map(|l| {
                self.find_by_label(l)
                    .unwrap_or_else(|| panic!("no unique module labelled {l}"))
            })
            .collect()
    }

    pub fn projective_index(&self, v: usize) -> usize {
        self.modules
            .iter()
            .position(|m| m.projective == Some(v))
            .expect("projectives are catalogued")
    }

    pub fn injective_index(&self, v: usize) -> usize {
        self.modules
            .iter()
            .position(|m| m.injective == Some(v))
            .expect("injectives are catalogued")
    }

    /// Catalog index of a module isomorphic to `m`.
    pub fn locate(&self, m: &Representation) -> Option<usize> {
        self.modules.iter().position(|c| {
            c.module.dims() == m.dims()
                && is_isomorphic(&self.algebra, &c.module, m) == IsoResult::Isomorphic
        })
    }

    /// Multiplicity of the arrow `M_i -> M_j` in the Auslander–Reiten
    /// quiver: `dim rad(M_i, M_j) / rad^2(M_i, M_j)`.
    pub fn irreducible_dims(&self) -> Result<Vec<Vec<usize>>, HomologicalError> {
        if !self.complete {
            return Err(HomologicalError::CatalogIncomplete);
        }
        let alg = &self.algebra;
        let n = self.len();
        let rad: Vec<Vec<Vec<Morphism>>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            radical_endomorphisms(alg, self.module(i))
                        } else if self.hom[i][j] == 0 {
                            Vec::new()
                        } else {
                            hom_basis(alg, self.module(i), self.module(j)).maps
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(pair_table(n, |i, j| {
            let r = &rad[i][j];
            if r.is_empty() {
                return 0;
            }
            let mut products = Vec::new();
            for z in 0..n {
                for f in &rad[i][z] {
                    for g in &rad[z][j] {
                        products.push(g.compose(f).flatten());
                    }
                }
            }
            let len = r[0].flatten().len();
            r.len() - span_rank(alg.field(), len, &products)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cat(name: &str) -> Catalog {
        Catalog::build(&fixtures::load(name).unwrap(), Caps::default()).unwrap()
    }

    #[test]
    fn ex2_tau_of_s1_is_s2() {
        let c = cat("ex2");
        let s1 = c.find_by_label("1").unwrap();
        let s2 = c.find_by_label("2").unwrap();
        assert_eq!(c.tau[s1], Some(s2));
    }

    #[test]
    fn tau_vanishes_exactly_on_projectives() {
        for name in fixtures::NAMES {
            let c = cat(name);
            for m in &c.modules {
                assert_eq!(
                    c.tau[m.index].is_none(),
                    m.is_projective(),
                    "{name} {}",
                    m.label
                );
            }
        }
    }

    #[test]
    fn ex6_tau_of_injective_simple() {
        let a = fixtures::ex6(3).unwrap();
        let c = Catalog::build(&a, Caps::default()).unwrap();
        let i = c.find_by_label("1").unwrap();
        assert_eq!(c.tau[i], Some(c.projective_index(1)));
        assert_eq!(c.modules[c.projective_index(1)].label, "2/2/2");
    }

    #[test]
    fn ex1_ar_quiver_is_a_six_cycle() {
        let c = cat("ex1");
        let irr = c.irreducible_dims().unwrap();
        let total: usize = irr.iter().flatten().sum();
        assert_eq!(total, 6);
        for i in 0..c.len() {
            assert_eq!(irr[i][i], 0);
            assert_eq!(irr[i].iter().sum::<usize>(), 1);
            assert_eq!((0..c.len()).map(|k| irr[k][i]).sum::<usize>(), 1);
        }
        let s3 = c.find_by_label("3").unwrap();
        let p2 = c.find_by_label("2/3").unwrap();
        assert_eq!(irr[s3][p2], 1);
    }

    #[test]
    fn ex3_projective_injective_arrows() {
        let c = cat("ex3");
        let irr = c.irreducible_dims().unwrap();
        let p = c.find_by_label("2/3").unwrap();
        let s3 = c.find_by_label("3").unwrap();
        let s2 = c.find_by_label("2").unwrap();
        assert_eq!(irr[s3][p], 1);
        assert_eq!(irr[p][s2], 1);
        assert_eq!(irr.iter().map(|r| r[p]).sum::<usize>(), 1);
        assert_eq!(irr[p].iter().sum::<usize>(), 1);
    }

    #[test]
    fn no_loops_in_ar_quivers() {
        for name in fixtures::NAMES {
            let c = cat(name);
            let irr = c.irreducible_dims().unwrap();
            assert!((0..c.len()).all(|i| irr[i][i] == 0), "{name}");
        }
    }

    #[test]
    fn ex2_examples() {
        let c = cat("ex2");
        let [s1, s2, p2, p3] = [
            c.find_by_label("1"),
            c.find_by_label("2"),
            c.find_by_label("2/3"),
            c.find_by_label("3/3"),
        ]
        .map(Option::unwrap);
        assert!(c.ext[s2][p3] >= 1);
        assert_eq!(c.ext[s1][p2], 0);
        assert_eq!(c.hom[p2][s2], 1);
    }

    #[test]
    fn incomplete_catalog_refuses_ar_quiver() {
        let a = fixtures::load("ex2").unwrap();
        let w = StringWord::trivial(0);
        let m = string_module(&a, &w);
        let c = Catalog::from_modules(&a, vec![(w, m)], false).unwrap();
        assert_eq!(
            c.irreducible_dims().unwrap_err(),
            HomologicalError::CatalogIncomplete
        );
    }
}
