//! Whole-algebra analysis and its JSON report.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::MonomialAlgebra;
use crate::bijection::{
    global_permutation, verify_theorem5, BijectionError, Permutation, Theorem5Report,
};
use crate::catalog::{Catalog, CatalogError};
use crate::homological::{ProjDim, DEFAULT_PD_CUTOFF};
use crate::strings::Caps;
use crate::tautilt::{
    almost_complete_pairs, catalog_pds, check_air_maximality, completions, indec_tau_rigid,
    support_pairs, tau_tilting_modules, AirViolation, SupportPair, TauRigidCatalog,
    TauTiltingModule,
};

pub const SCHEMA_VERSION: u32 = 1;
/// Matching tables with more pairs than this are reported as counts only.
pub const PAIR_TABLE_LIMIT: usize = 2000;

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub caps: Caps,
    pub pd_cutoff: usize,
    pub permutation_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            caps: Caps::default(),
            pd_cutoff: DEFAULT_PD_CUTOFF,
            permutation_cap: crate::bijection::DEFAULT_PERMUTATION_CAP,
        }
    }
}

/// The catalog-level computations shared by most commands.
pub struct Analysis {
    pub catalog: Catalog,
    pub pds: Vec<ProjDim>,
    pub rigid: TauRigidCatalog,
    pub tilting: Vec<TauTiltingModule>,
}

impl Analysis {
    pub fn new(alg: &MonomialAlgebra, opts: &Options) -> Result<Self, CatalogError> {
        let catalog = Catalog::build(alg, opts.caps)?;
        let pds = catalog_pds(&catalog, opts.pd_cutoff);
        let rigid = indec_tau_rigid(&catalog);
        let tilting = tau_tilting_modules(&catalog, &rigid, &pds);
        Ok(Self {
            catalog,
            pds,
            rigid,
            tilting,
        })
    }

    pub fn labels(&self, idx: &[usize]) -> Vec<String> {
        idx.iter()
            .map(|&i| self.catalog.modules[i].label.clone())
            .collect()
    }

    pub fn permutations(&self, cap: usize) -> Result<Vec<Permutation>, BijectionError> {
        global_permutation(&self.rigid, &self.tilting, cap)
    }
}

#[derive(Serialize)]
pub struct ArrowEntry {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Serialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub field: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowEntry>,
    pub relations: Vec<String>,
    pub dim: usize,
}

#[derive(Serialize)]
pub struct ModuleEntry {
    pub index: usize,
    pub word: String,
    pub label: String,
    pub dim_vector: Vec<usize>,
    pub dim: usize,
    pub projective: bool,
    pub injective: bool,
    pub simple: bool,
    pub sincere: bool,
    pub tau: Option<usize>,
    pub pd: String,
    pub tau_rigid: bool,
}

#[derive(Serialize)]
pub struct IrreducibleEntry {
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
}

#[derive(Serialize)]
pub struct TiltingEntry {
    pub summands: Vec<usize>,
    pub labels: Vec<String>,
    pub dim: usize,
    pub faithful: bool,
    pub sincere: bool,
    pub projective: bool,
    pub pd: String,
    pub partial_tilting: bool,
}

#[derive(Serialize)]
pub struct PairEntry {
    pub x: usize,
    pub y: usize,
    pub ext: Option<Vec<[usize; 2]>>,
    pub ext_relaxed: bool,
    pub tau_hom: Option<Vec<[usize; 2]>>,
    pub tau_hom_relaxed: bool,
}

#[derive(Serialize)]
pub struct Theorem5Summary {
    pub pair_count: usize,
    pub ext_matchings: usize,
    pub ext_relaxed_matchings: usize,
    pub tau_hom_matchings: usize,
    pub faithful_pairs_without_ext_matching: Vec<(usize, usize)>,
    pub pairs_without_tau_hom_matching: Vec<(usize, usize)>,
    pub ext_matching_implies_both_faithful: bool,
    pub unverified_matchings: usize,
    /// Omitted above the table limit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<PairEntry>>,
}

#[derive(Serialize)]
pub struct PermutationSummary {
    pub status: String,
    pub count: usize,
    /// Each witness as `[module, image]` catalog-index pairs.
    pub witnesses: Vec<Vec<[usize; 2]>>,
}

#[derive(Serialize)]
pub struct SupportSummary {
    pub support_pairs: usize,
    pub almost_complete_pairs: usize,
    pub almost_complete_with_two_completions: usize,
}

#[derive(Serialize)]
pub struct Timing {
    pub total_ms: u128,
}

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub algebra: AlgebraSummary,
    pub catalog: Vec<ModuleEntry>,
    pub ar_quiver: Vec<IrreducibleEntry>,
    pub tau_rigid: Vec<usize>,
    pub tau_tilting: Vec<TiltingEntry>,
    pub air_violations: Vec<AirViolation>,
    pub support: SupportSummary,
    pub theorem5: Theorem5Summary,
    pub global_permutations: PermutationSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    /// Whether every exhaustive check recorded in the report passed.
    pub fn verified(&self) -> bool {
        self.air_violations.is_empty()
            && self.support.almost_complete_pairs
                == self.support.almost_complete_with_two_completions
            && self.theorem5.faithful_pairs_without_ext_matching.is_empty()
            && self.theorem5.pairs_without_tau_hom_matching.is_empty()
            && self.theorem5.unverified_matchings == 0
    }
}

pub fn algebra_summary(alg: &MonomialAlgebra) -> AlgebraSummary {
    let q = alg.quiver();
    AlgebraSummary {
        name: alg.name().to_string(),
        field: alg.field().characteristic(),
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowEntry {
                name: a.name.clone(),
                source: q.vertex_name(a.source).to_string(),
                target: q.vertex_name(a.target).to_string(),
            })
            .collect(),
        relations: alg.relations().iter().map(|r| r.display(q)).collect(),
        dim: alg.dim(),
    }
}

fn pairs_of(m: &Option<crate::bijection::Matching>) -> Option<Vec<[usize; 2]>> {
    m.as_ref()
        .map(|m| m.pairs.iter().map(|p| [p.x, p.y]).collect())
}

pub fn theorem5_summary(t5: &Theorem5Report, full_table: bool) -> Theorem5Summary {
    Theorem5Summary {
        pair_count: t5.pairs.len(),
        ext_matchings: t5.pairs.iter().filter(|p| p.ext_strict.is_some()).count(),
        ext_relaxed_matchings: t5.pairs.iter().filter(|p| p.ext_relaxed).count(),
        tau_hom_matchings: t5.pairs.iter().filter(|p| p.tau_strict.is_some()).count(),
        faithful_pairs_without_ext_matching: t5.faithful_failures.clone(),
        pairs_without_tau_hom_matching: t5.tau_failures.clone(),
        ext_matching_implies_both_faithful: t5.ext_implies_faithful,
        unverified_matchings: t5.unverified,
        pairs: (full_table || t5.pairs.len() <= PAIR_TABLE_LIMIT).then(|| {
            t5.pairs
                .iter()
                .map(|p| PairEntry {
                    x: p.x,
                    y: p.y,
                    ext: pairs_of(&p.ext_strict),
                    ext_relaxed: p.ext_relaxed,
                    tau_hom: pairs_of(&p.tau_strict),
                    tau_hom_relaxed: p.tau_relaxed,
                })
                .collect()
        }),
    }
}

/// Almost complete pairs with exactly two completions, out of all of them.
pub fn completion_counts(an: &Analysis) -> (usize, usize) {
    let partials = almost_complete_pairs(&an.catalog, &an.rigid);
    let good = partials
        .iter()
        .filter(|p| completions(&an.catalog, &an.rigid, p).len() == 2)
        .count();
    (partials.len(), good)
}

pub fn build_report(
    alg: &MonomialAlgebra,
    opts: &Options,
    timing: bool,
) -> Result<Report, CatalogError> {
    let start = Instant::now();
    let an = Analysis::new(alg, opts)?;
    let cat = &an.catalog;
    let catalog = cat
        .modules
        .iter()
        .map(|m| ModuleEntry {
            index: m.index,
            word: m.word_text.clone(),
            label: m.label.clone(),
            dim_vector: m.module.dim_vector(),
            dim: m.dim,
            projective: m.is_projective(),
            injective: m.is_injective(),
            simple: m.simple,
            sincere: m.sincere,
            tau: cat.tau[m.index],
            pd: an.pds[m.index].to_string(),
            tau_rigid: an.rigid.indices.contains(&m.index),
        })
        .collect();
    let irr = cat.irreducible_dims().expect("built catalogs are complete");
    let mut ar_quiver = Vec::new();
    for (i, row) in irr.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            if k > 0 {
                ar_quiver.push(IrreducibleEntry {
                    from: i,
                    to: j,
                    multiplicity: k,
                });
            }
        }
    }
    let tau_tilting = an
        .tilting
        .iter()
        .map(|t| TiltingEntry {
            labels: an.labels(&t.summands),
            summands: t.summands.clone(),
            dim: t.dim,
            faithful: t.faithful,
            sincere: t.sincere,
            projective: t.projective,
            pd: t.pd.to_string(),
            partial_tilting: t.partial_tilting,
        })
        .collect();
    let air_violations = check_air_maximality(cat, &an.rigid, &an.tilting);
    let (partials, good) = completion_counts(&an);
    let support = SupportSummary {
        support_pairs: support_pairs(cat, &an.rigid).len(),
        almost_complete_pairs: partials,
        almost_complete_with_two_completions: good,
    };
    let t5 = verify_theorem5(cat, &an.tilting);
    let global_permutations = match an.permutations(opts.permutation_cap) {
        Ok(ps) => PermutationSummary {
            status: if ps.is_empty() {
                "none".into()
            } else {
                "found".into()
            },
            count: ps.len(),
            witnesses: ps
                .iter()
                .map(|p| {
                    p.catalog_pairs(&an.rigid)
                        .into_iter()
                        .map(|(a, b)| [a, b])
                        .collect()
                })
                .collect(),
        },
        Err(e) => PermutationSummary {
            status: format!("skipped: {e}"),
            count: 0,
            witnesses: Vec::new(),
        },
    };
    Ok(Report {
        schema: SCHEMA_VERSION,
        algebra: algebra_summary(alg),
        catalog,
        ar_quiver,
        tau_rigid: an.rigid.indices.clone(),
        tau_tilting,
        air_violations,
        support,
        theorem5: theorem5_summary(&t5, false),
        global_permutations,
        timing: timing.then(|| Timing {
            total_ms: start.elapsed().as_millis(),
        }),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// A support pair as text, writing the projective part as `P<v>[1]`.
pub fn pair_labels(an: &Analysis, p: &SupportPair) -> String {
    let mut parts: Vec<String> = an.labels(&p.module);
    parts.extend(
        p.projectives
            .iter()
            .map(|&v| format!("P{}[1]", an.catalog.algebra.quiver().vertex_name(v))),
    );
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
