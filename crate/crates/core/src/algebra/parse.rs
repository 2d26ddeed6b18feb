//! Line-oriented description language for monomial algebras.
//!
//! ```text
//! algebra ex6
//! param n = 3
//! vertices 1 2
//! arrow a 1 2
//! arrow b 2 2
//! rel a b        # traversal order: a first, then b
//! rel b^n
//! ```

use std::collections::BTreeMap;

use super::{AlgebraError, Arrow, MonomialAlgebra, Path, Quiver};
use crate::linalg::PrimeField;

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &code[s..i],
                    column: code[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &code[s..],
            column: code[..s].chars().count() + 1,
        });
    }
    out
}

fn valid_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

pub fn parse_algebra(text: &str) -> Result<MonomialAlgebra, AlgebraError> {
    parse_algebra_with(text, &BTreeMap::new(), PrimeField::default())
}

/// Parses with parameter overrides (`n = 5` replacing the file's `param n`)
/// over the given field.
pub fn parse_algebra_with(
    text: &str,
    overrides: &BTreeMap<String, i64>,
    field: PrimeField,
) -> Result<MonomialAlgebra, AlgebraError> {
    let syntax =
        |msg: &str, line: usize, col: usize| AlgebraError::Syntax(msg.to_string()).at(line, col);

    let mut name: Option<String> = None;
    let mut params: BTreeMap<String, i64> = BTreeMap::new();
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relations: Vec<(Path, usize, usize)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        if name.is_none() && head.text != "algebra" {
            return Err(syntax(
                "expected `algebra <name>` declaration first",
                line,
                head.column,
            ));
        }
        match head.text {
            "algebra" => {
                if name.is_some() {
                    return Err(syntax("duplicate `algebra` declaration", line, head.column));
                }
                match toks.as_slice() {
                    [_, n] if valid_ident(n.text) => name = Some(n.text.to_string()),
                    _ => return Err(syntax("usage: algebra <name>", line, head.column)),
                }
            }
            "param" => {
                let (key, value) = match toks.as_slice() {
                    [_, k, eq, v] if eq.text == "=" => (k, v),
                    _ => return Err(syntax("usage: param <name> = <int>", line, head.column)),
                };
                if !valid_ident(key.text) {
                    return Err(syntax("invalid parameter name", line, key.column));
                }
                let parsed: i64 = value.text.parse().map_err(|_| {
                    syntax("parameter value must be an integer", line, value.column)
                })?;
                let v = overrides.get(key.text).copied().unwrap_or(parsed);
                params.insert(key.text.to_string(), v);
            }
            "vertices" => {
                if toks.len() < 2 {
                    return Err(syntax("usage: vertices <v1> <v2> ...", line, head.column));
                }
                for t in &toks[1..] {
                    if !valid_ident(t.text) {
                        return Err(syntax("invalid vertex name", line, t.column));
                    }
                    if vertices.iter().any(|v| v == t.text) {
                        return Err(AlgebraError::DuplicateVertex(t.text.into()).at(line, t.column));
                    }
                    vertices.push(t.text.to_string());
                }
            }
            "arrow" => {
                let [_, n, s, t] = toks.as_slice() else {
                    return Err(syntax(
                        "usage: arrow <name> <source> <target>",
                        line,
                        head.column,
                    ));
                };
                if !valid_ident(n.text) {
                    return Err(syntax("invalid arrow name", line, n.column));
                }
                if arrows.iter().any(|a| a.name == n.text) {
                    return Err(AlgebraError::DuplicateArrow(n.text.into()).at(line, n.column));
                }
                let find = |tok: &Token| {
                    vertices.iter().position(|v| v == tok.text).ok_or_else(|| {
                        AlgebraError::UnknownVertex(tok.text.into()).at(line, tok.column)
                    })
                };
                let (source, target) = (find(s)?, find(t)?);
                arrows.push(Arrow {
                    name: n.text.to_string(),
                    source,
                    target,
                });
            }
            "rel" => {
                if toks.len() < 2 {
                    return Err(syntax("usage: rel <arrow> <arrow> ...", line, head.column));
                }
                if toks[1..]
                    .iter()
                    .any(|t| t.text.contains('+') || t.text.contains('-'))
                {
                    return Err(syntax(
                        "only monomial relations (single paths) are supported",
                        line,
                        head.column,
                    ));
                }
                let mut seq = Vec::new();
                for t in &toks[1..] {
                    let (base, reps) = match t.text.split_once('^') {
                        None => (t.text, 1),
                        Some((b, e)) => {
                            let reps = match e.parse::<i64>() {
                                Ok(k) => k,
                                Err(_) => *params.get(e).ok_or_else(|| {
                                    syntax(&format!("unknown parameter `{e}`"), line, t.column)
                                })?,
                            };
                            (b, reps)
                        }
                    };
                    if reps < 1 {
                        return Err(syntax("exponent must be positive", line, t.column));
                    }
                    let a = arrows.iter().position(|a| a.name == base).ok_or_else(|| {
                        AlgebraError::UnknownArrow(base.into()).at(line, t.column)
                    })?;
                    seq.extend(std::iter::repeat_n(a, reps as usize));
                }
                let shown = toks[1..]
                    .iter()
                    .map(|t| t.text)
                    .collect::<Vec<_>>()
                    .join(" ");
                if seq.len() < 2 {
                    return Err(AlgebraError::RelationTooShort(shown).at(line, head.column));
                }
                if seq
                    .windows(2)
                    .any(|w| arrows[w[0]].target != arrows[w[1]].source)
                {
                    return Err(AlgebraError::NonComposable(shown).at(line, head.column));
                }
                let path = Path {
                    start: arrows[seq[0]].source,
                    arrows: seq,
                };
                relations.push((path, line, head.column));
            }
            other => {
                return Err(syntax(
                    &format!("unknown directive `{other}`"),
                    line,
                    head.column,
                ))
            }
        }
    }

    let Some(name) = name else {
        return Err(AlgebraError::Syntax("empty input: expected `algebra <name>`".into()).at(1, 1));
    };
    if let Some(k) = overrides.keys().find(|k| !params.contains_key(*k)) {
        return Err(AlgebraError::Syntax(format!(
            "parameter `{k}` is not declared by this algebra"
        ))
        .at(1, 1));
    }
    if vertices.is_empty() {
        return Err(AlgebraError::NoVertices.at(1, 1));
    }
    let quiver = Quiver::new(vertices, arrows)?;
    let rels = relations.into_iter().map(|(p, _, _)| p).collect();
    MonomialAlgebra::new(name, quiver, rels, field)
}
