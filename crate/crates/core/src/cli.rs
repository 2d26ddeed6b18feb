//! The `tauq` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{parse_algebra_with, AlgebraError, MonomialAlgebra};
use crate::bijection::{conjugacy_search, theorem5_matching, MatchMode, Verifier};
use crate::catalog::CatalogError;
use crate::homological::DEFAULT_PD_CUTOFF;
use crate::linalg::{PrimeField, DEFAULT_PRIME};
use crate::report::{build_report, to_json, Analysis, Options};
use crate::strings::{Caps, DEFAULT_MAX_INDECS, DEFAULT_MAX_STRING_LENGTH};
use crate::tautilt::is_tau_rigid_indices;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "tauq",
    version,
    about = "τ-tilting theory of monomial bound quiver algebras"
)]
struct Cli {
    /// Prime characteristic of the ground field.
    #[arg(long, global = true, default_value_t = u64::from(DEFAULT_PRIME))]
    field: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STRING_LENGTH)]
    max_string_length: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_INDECS)]
    max_indecs: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_PD_CUTOFF)]
    pd_cutoff: usize,
    /// Override a `param` of the algebra file, e.g. `--param n=5`.
    #[arg(long = "param", global = true, value_parser = parse_param)]
    params: Vec<(String, i64)>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Ext,
    Tau,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an algebra file and print its dimension.
    Check { file: PathBuf },
    /// List the indecomposable modules.
    Indec { file: PathBuf },
    /// τ table and irreducible-map multiplicities.
    ArQuiver {
        file: PathBuf,
        /// Print the quiver in Graphviz DOT syntax.
        #[arg(long)]
        dot: bool,
    },
    /// List the indecomposable τ-rigid modules.
    TauRigid { file: PathBuf },
    /// List the τ-tilting modules.
    TauTilting { file: PathBuf },
    /// Summand matchings for every pair of τ-tilting modules.
    Theorem5 {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ext")]
        mode: Mode,
        /// Do not force isomorphic summands to be paired.
        #[arg(long)]
        no_strict_iso: bool,
        /// Print every pair even for large tables.
        #[arg(long)]
        all: bool,
    },
    /// Exchange permutations of the τ-rigid modules.
    GlobalPerm {
        file: PathBuf,
        #[arg(long, default_value_t = crate::bijection::DEFAULT_PERMUTATION_CAP)]
        cap: usize,
    },
    /// Conjugate the exchange permutations of the algebra and its opposite.
    CompareOpposite {
        file: PathBuf,
        #[arg(long, default_value_t = crate::bijection::DEFAULT_PERMUTATION_CAP)]
        cap: usize,
        /// Keep only bijections with the structural properties.
        #[arg(long)]
        structural: bool,
    },
    /// Write the full JSON report.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: PathBuf,
        /// Include wall-clock timing (makes the output non-deterministic).
        #[arg(long)]
        timing: bool,
    },
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=INT, got `{s}`"))?;
    let v = v
        .trim()
        .parse()
        .map_err(|_| format!("`{v}` is not an integer"))?;
    Ok((k.trim().to_string(), v))
}

struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn located(file: &Path, e: &AlgebraError) -> String {
    match e {
        AlgebraError::At {
            line,
            column,
            source,
        } => format!("{}:{line}:{column}: {source}", file.display()),
        other => format!("{}: {other}", file.display()),
    }
}

fn load(cli: &Cli, file: &Path) -> Result<MonomialAlgebra, Failure> {
    let field = PrimeField::new(cli.field).map_err(|e| input_error(e.to_string()))?;
    let text = std::fs::read_to_string(file)
        .map_err(|e| input_error(format!("{}: {e}", file.display())))?;
    let params: BTreeMap<String, i64> = cli.params.iter().cloned().collect();
    parse_algebra_with(&text, &params, field).map_err(|e| input_error(located(file, &e)))
}

fn options(cli: &Cli) -> Options {
    Options {
        caps: Caps {
            max_string_length: cli.max_string_length,
            max_indecs: cli.max_indecs,
        },
        pd_cutoff: cli.pd_cutoff,
        ..Options::default()
    }
}

fn analyse(cli: &Cli, alg: &MonomialAlgebra, file: &Path) -> Result<Analysis, Failure> {
    Analysis::new(alg, &options(cli))
        .map_err(|e: CatalogError| input_error(format!("{}: {e}", file.display())))
}

fn flag(b: bool, yes: &'static str, no: &'static str) -> &'static str {
    if b {
        yes
    } else {
        no
    }
}

fn sum_label(an: &Analysis, idx: &[usize]) -> String {
    an.labels(idx).join(" + ")
}

/// Runs the CLI, writing normal output to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn w(out: &mut dyn Write, s: impl AsRef<str>) -> Result<(), Failure> {
    writeln!(out, "{}", s.as_ref()).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: e.to_string(),
    })
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Check { file } => {
            let alg = load(cli, file)?;
            let (sb, why) = alg.is_special_biserial();
            w(out, alg.to_string())?;
            if sb {
                w(out, "special biserial: yes")?;
            } else {
                w(out, format!("special biserial: no ({})", why.join("; ")))?;
            }
            Ok(EXIT_OK)
        }
        Command::Indec { file } => {
            let alg = load(cli, file)?;
            let an = analyse(cli, &alg, file)?;
            w(out, format!("{} indecomposable modules", an.catalog.len()))?;
            w(
                out,
                "idx  label        dimvec        word                flags",
            )?;
            for m in &an.catalog.modules {
                let mut flags = Vec::new();
                if let Some(v) = m.projective {
                    flags.push(format!("P{}", alg.quiver().vertex_name(v)));
                }
                if let Some(v) = m.injective {
                    flags.push(format!("I{}", alg.quiver().vertex_name(v)));
                }
                if m.simple {
                    flags.push("simple".into());
                }
                w(
                    out,
                    format!(
                        "{:<4} {:<12} {:<13} {:<19} {}",
                        m.index,
                        m.label,
                        format!("{:?}", m.module.dim_vector()),
                        m.word_text,
                        flags.join(" ")
                    ),
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::ArQuiver { file, dot } => {
            let alg = load(cli, file)?;
            let an = analyse(cli, &alg, file)?;
            let cat = &an.catalog;
            let irr = cat
                .irreducible_dims()
                .map_err(|e| input_error(e.to_string()))?;
            if *dot {
                w(out, format!("digraph \"{}\" {{", alg.name()))?;
                for m in &cat.modules {
                    w(out, format!("  m{} [label=\"{}\"];", m.index, m.label))?;
                }
                for (i, row) in irr.iter().enumerate() {
                    for (j, &k) in row.iter().enumerate() {
                        for _ in 0..k {
                            w(out, format!("  m{i} -> m{j};"))?;
                        }
                    }
                }
                for (j, t) in cat.tau.iter().enumerate() {
                    if let Some(t) = t {
                        w(out, format!("  m{j} -> m{t} [style=dashed];"))?;
                    }
                }
                w(out, "}")?;
                return Ok(EXIT_OK);
            }
            w(out, "tau:")?;
            for m in &cat.modules {
                let t = match cat.tau[m.index] {
                    Some(t) => cat.modules[t].label.clone(),
                    None => "0".into(),
                };
                w(out, format!("  tau({}) = {}", m.label, t))?;
            }
            w(out, "irreducible maps:")?;
            for (i, row) in irr.iter().enumerate() {
                for (j, &k) in row.iter().enumerate() {
                    if k > 0 {
                        w(
                            out,
                            format!(
                                "  {} -> {}  x{}",
                                cat.modules[i].label, cat.modules[j].label, k
                            ),
                        )?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::TauRigid { file } => {
            let alg = load(cli, file)?;
            let an = analyse(cli, &alg, file)?;
            w(
                out,
                format!("{} indecomposable τ-rigid modules", an.rigid.len()),
            )?;
            for &i in &an.rigid.indices {
                let m = &an.catalog.modules[i];
                w(out, format!("{:<4} {:<12} dim {}", i, m.label, m.dim))?;
            }
            Ok(EXIT_OK)
        }
        Command::TauTilting { file } => {
            let alg = load(cli, file)?;
            let an = analyse(cli, &alg, file)?;
            w(out, format!("{} τ-tilting modules", an.tilting.len()))?;
            let mut code = EXIT_OK;
            for (k, t) in an.tilting.iter().enumerate() {
                if !is_tau_rigid_indices(&an.catalog, &t.summands) {
                    code = EXIT_VERIFICATION;
                }
                w(
                    out,
                    format!(
                        "T{:<3} {}  {}  dim {}  pd {}{}",
                        k + 1,
                        flag(t.faithful, "F", "N"),
                        sum_label(&an, &t.summands),
                        t.dim,
                        t.pd,
                        flag(t.sincere, "", "  not sincere")
                    ),
                )?;
            }
            Ok(code)
        }
        Command::Theorem5 {
            file,
            mode,
            no_strict_iso,
            all,
        } => {
            let alg = load(cli, file)?;
            let an = analyse(cli, &alg, file)?;
            let cat = &an.catalog;
            let mode = match mode {
                Mode::Ext => MatchMode::Ext,
                Mode::Tau => MatchMode::TauHom,
            };
            let strict = !no_strict_iso;
            let n = an.tilting.len();
            let pairs = n * n.saturating_sub(1) / 2;
            let verbose = *all || pairs <= crate::report::PAIR_TABLE_LIMIT;
            let verifier = Verifier::new(cat);
            let mut missing = Vec::new();
            let mut unverified = 0;
            for a in 0..n {
                for b in a + 1..n {
                    let (x, y) = (&an.tilting[a].summands, &an.tilting[b].summands);
                    let m = theorem5_matching(cat, x, y, mode, strict).expect("equal sizes");
                    let text = match &m {
                        Some(m) => {
                            if !verifier.verify(x, y, m) {
                                unverified += 1;
                            }
                            m.pairs
                                .iter()
                                .map(|p| {
                                    format!(
                                        "{}->{}",
                                        cat.modules[p.x].label, cat.modules[p.y].label
                                    )
                                })
                                .collect::<Vec<_>>()
                                .join(", ")
                        }
                        None => {
                            missing.push((a, b));
                            "NONE".into()
                        }
                    };
                    if verbose {
                        w(out, format!("(T{}, T{}) = {}", a + 1, b + 1, text))?;
                    }
                }
            }
            let faithful_missing = missing
                .iter()
                .filter(|&&(a, b)| an.tilting[a].faithful && an.tilting[b].faithful)
                .count();
            w(
                out,
                format!(
                    "{} pairs, {} without a matching ({} of them faithful-faithful)",
                    pairs,
                    missing.len(),
                    faithful_missing
                ),
            )?;
            let failed = unverified > 0
                || (strict && mode == MatchMode::TauHom && !missing.is_empty())
                || (strict && mode == MatchMode::Ext && faithful_missing > 0);
            Ok(if failed { EXIT_VERIFICATION } else { EXIT_OK })
        }
        Command::GlobalPerm { file, cap } => {
            let alg = load(cli, file)?;
            let an = analyse(cli, &alg, file)?;
            let perms = an
                .permutations(*cap)
                .map_err(|e| input_error(e.to_string()))?;
            w(out, format!("{} exchange permutations", perms.len()))?;
            for (k, p) in perms.iter().enumerate() {
                let text: Vec<String> = p
                    .catalog_pairs(&an.rigid)
                    .iter()
                    .map(|&(a, b)| {
                        format!(
                            "{}->{}",
                            an.catalog.modules[a].label, an.catalog.modules[b].label
                        )
                    })
                    .collect();
                w(out, format!("t{}: {}", k + 1, text.join(", ")))?;
            }
            Ok(EXIT_OK)
        }
        Command::CompareOpposite {
            file,
            cap,
            structural,
        } => {
            let alg = load(cli, file)?;
            let op = alg.opposite();
            let an = analyse(cli, &alg, file)?;
            let bn = analyse(cli, &op, file)?;
            let alphas = an
                .permutations(*cap)
                .map_err(|e| input_error(e.to_string()))?;
            let betas = bn
                .permutations(*cap)
                .map_err(|e| input_error(e.to_string()))?;
            let found = match conjugacy_search(
                &an.catalog,
                &an.rigid,
                &alphas,
                &bn.catalog,
                &bn.rigid,
                &betas,
                *cap,
                *structural,
            ) {
                Ok(f) => f,
                Err(e) => return Err(input_error(e.to_string())),
            };
            w(
                out,
                format!(
                    "{}: {} τ-tilting, {} exchange permutations; {}: {} τ-tilting, {} exchange permutations",
                    alg.name(),
                    an.tilting.len(),
                    alphas.len(),
                    op.name(),
                    bn.tilting.len(),
                    betas.len()
                ),
            )?;
            w(out, format!("{} conjugating bijections", found.len()))?;
            for c in &found {
                let text: Vec<String> =
                    c.s.map
                        .iter()
                        .enumerate()
                        .map(|(k, &v)| {
                            format!(
                                "{}->{}",
                                an.catalog.modules[an.rigid.indices[k]].label,
                                bn.catalog.modules[bn.rigid.indices[v]].label
                            )
                        })
                        .collect();
                let st = &c.structure;
                w(
                    out,
                    format!(
                        "s: {}  [proj-flip {} simple {} sincere {} dim+2 {}]",
                        text.join(", "),
                        flag(st.projective_flip, "y", "n"),
                        flag(st.simple_preserved, "y", "n"),
                        flag(st.sincere_preserved, "y", "n"),
                        flag(st.dim_growth_at_most_two, "y", "n"),
                    ),
                )?;
            }
            Ok(if found.is_empty() {
                EXIT_VERIFICATION
            } else {
                EXIT_OK
            })
        }
        Command::Report { file, json, timing } => {
            let alg = load(cli, file)?;
            let report = build_report(&alg, &options(cli), *timing)
                .map_err(|e| input_error(format!("{}: {e}", file.display())))?;
            std::fs::write(json, to_json(&report))
                .map_err(|e| input_error(format!("{}: {e}", json.display())))?;
            w(
                out,
                format!(
                    "wrote {} ({} modules, {} τ-tilting)",
                    json.display(),
                    report.catalog.len(),
                    report.tau_tilting.len()
                ),
            )?;
            Ok(if report.verified() {
                EXIT_OK
            } else {
                EXIT_VERIFICATION
            })
        }
    }
}
