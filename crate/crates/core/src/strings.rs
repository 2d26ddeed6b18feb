//! String modules over special biserial monomial algebras.
//!
//! A string is a reduced walk of arrows and formal inverses avoiding the
//! relations in either direction. Over a representation-finite special
//! biserial algebra the string modules are exactly the indecomposables, and
//! two strings give isomorphic modules iff they agree up to inversion.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::MonomialAlgebra;
use crate::linalg::Matrix;
use crate::repr::Representation;

pub const DEFAULT_MAX_STRING_LENGTH: usize = 64;
pub const DEFAULT_MAX_INDECS: usize = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StringError {
    #[error("algebra is not special biserial: {0}")]
    NotSpecialBiserial(String),
    #[error(
        "string enumeration exceeded {what} cap {cap}: algebra is possibly representation-infinite"
    )]
    CapExceeded { what: &'static str, cap: usize },
    #[error(
        "band `{0}` detected: algebra is representation-infinite (band modules are not supported)"
    )]
    BandDetected(String),
    #[error("invalid string `{0}`")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: usize) -> Self {
        Self {
            arrow,
            inverse: false,
        }
    }

    pub fn inv(arrow: usize) -> Self {
        Self {
            arrow,
            inverse: true,
        }
    }

    pub fn flipped(self) -> Self {
        Self {
            arrow: self.arrow,
            inverse: !self.inverse,
        }
    }

    pub fn start(self, alg: &MonomialAlgebra) -> usize {
        let a = alg.quiver().arrow(self.arrow);
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn end(self, alg: &MonomialAlgebra) -> usize {
        let a = alg.quiver().arrow(self.arrow);
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }
}

/// A walk anchored at `start`; empty words are the trivial strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringWord {
    pub start: usize,
    pub letters: Vec<Letter>,
}

impl Ord for StringWord {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.letters.len(), &self.letters, self.start).cmp(&(
            other.letters.len(),
            &other.letters,
            other.start,
        ))
    }
}

impl PartialOrd for StringWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl StringWord {
    pub fn trivial(v: usize) -> Self {
        Self {
            start: v,
            letters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn end(&self, alg: &MonomialAlgebra) -> usize {
        self.letters.last().map_or(self.start, |l| l.end(alg))
    }

    /// Vertices visited by the walk, one per basis vector of the string module.
    pub fn walk(&self, alg: &MonomialAlgebra) -> Vec<usize> {
        let mut out = vec![self.start];
        out.extend(self.letters.iter().map(|l| l.end(alg)));
        out
    }

    pub fn inverse(&self, alg: &MonomialAlgebra) -> StringWord {
        StringWord {
            start: self.end(alg),
            letters: self.letters.iter().rev().map(|l| l.flipped()).collect(),
        }
    }

    /// The smaller of the word and its inverse in (length, letters) order.
    pub fn canonical(&self, alg: &MonomialAlgebra) -> StringWord {
        let inv = self.inverse(alg);
        if inv.letters < self.letters {
            inv
        } else {
            self.clone()
        }
    }

    pub fn is_valid(&self, alg: &MonomialAlgebra) -> bool {
        let n = alg.n();
        if self.start >= n
            || self
                .letters
                .iter()
                .any(|l| l.arrow >= alg.quiver().arrows().len())
        {
            return false;
        }
        let mut at = self.start;
        for (i, l) in self.letters.iter().enumerate() {
            if l.start(alg) != at {
                return false;
            }
            if i > 0 && !junction_ok(alg, &self.letters[..i], *l) {
                return false;
            }
            at = l.end(alg);
        }
        true
    }

    /// Serialized as space-separated letters, `-` marking inverses; trivial
    /// strings as `e<vertex>`.
    pub fn display(&self, alg: &MonomialAlgebra) -> String {
        if self.letters.is_empty() {
            return format!("e{}", alg.quiver().vertex_name(self.start));
        }
        self.letters
            .iter()
            .map(|l| {
                let name = &alg.quiver().arrow(l.arrow).name;
                if l.inverse {
                    format!("{name}-")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(alg: &MonomialAlgebra, text: &str) -> Result<StringWord, StringError> {
        let q = alg.quiver();
        let toks: Vec<&str> = text.split_whitespace().collect();
        if let [single] = toks.as_slice() {
            if let Some(v) = single.strip_prefix('e').and_then(|v| q.vertex_index(v)) {
                if q.arrow_index(single).is_none() {
                    return Ok(StringWord::trivial(v));
                }
            }
        }
        let mut letters = Vec::new();
        for t in &toks {
            let (name, inverse) = match t.strip_suffix('-') {
                Some(n) => (n, true),
                None => (*t, false),
            };
            let arrow = q
                .arrow_index(name)
                .ok_or_else(|| StringError::Invalid(text.into()))?;
            letters.push(Letter { arrow, inverse });
        }
        let Some(first) = letters.first() else {
            return Err(StringError::Invalid(text.into()));
        };
        let w = StringWord {
            start: first.start(alg),
            letters,
        };
        if w.is_valid(alg) {
            Ok(w)
        } else {
            Err(StringError::Invalid(text.into()))
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}{}", self.arrow, if self.inverse { "-" } else { "" })
    }
}

/// Whether appending `next` to a valid `prefix` keeps it a string.
fn junction_ok(alg: &MonomialAlgebra, prefix: &[Letter], next: Letter) -> bool {
    let last = *prefix.last().expect("nonempty prefix");
    if last.arrow == next.arrow && last.inverse != next.inverse {
        return false;
    }
    if last.inverse != next.inverse {
        return true;
    }
    // trailing run of same-direction letters, ending in `next`
    let mut run: Vec<usize> = prefix
        .iter()
        .rev()
        .take_while(|l| l.inverse == next.inverse)
        .map(|l| l.arrow)
        .collect();
    run.reverse();
    run.push(next.arrow);
    if next.inverse {
        // an inverse run read backwards is a direct path
        run.reverse();
    }
    !alg.contains_relation(&run)
}

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub max_string_length: usize,
    pub max_indecs: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_string_length: DEFAULT_MAX_STRING_LENGTH,
            max_indecs: DEFAULT_MAX_INDECS,
        }
    }
}

/// All canonical strings, breadth-first by length and then letter order.
pub fn enumerate_strings(
    alg: &MonomialAlgebra,
    caps: Caps,
) -> Result<Vec<StringWord>, StringError> {
    let (ok, why) = alg.is_special_biserial();
    if !ok {
        return Err(StringError::NotSpecialBiserial(why.join("; ")));
    }
    let max_rel = alg.relations().iter().map(|r| r.len()).max().unwrap_or(1);
    let mut out: Vec<StringWord> = (0..alg.n()).map(StringWord::trivial).collect();
    let mut seen: BTreeSet<StringWord> = BTreeSet::new();

    let mut layer: Vec<StringWord> = Vec::new();
    for a in 0..alg.quiver().arrows().len() {
        for l in [Letter::direct(a), Letter::inv(a)] {
            layer.push(StringWord {
                start: l.start(alg),
                letters: vec![l],
            });
        }
    }
    let mut length = 1;
    while !layer.is_empty() {
        if length > caps.max_string_length {
            return Err(StringError::CapExceeded {
                what: "string length",
                cap: caps.max_string_length,
            });
        }
        let mut fresh: Vec<StringWord> = Vec::new();
        for w in &layer {
            if w.start == w.end(alg) && is_band(alg, w, max_rel) {
                return Err(StringError::BandDetected(w.display(alg)));
            }
            let c = w.canonical(alg);
            if seen.insert(c.clone()) {
                fresh.push(c);
            }
        }
        fresh.sort();
        out.extend(fresh);
        if out.len() > caps.max_indecs {
            return Err(StringError::CapExceeded {
                what: "catalog size",
                cap: caps.max_indecs,
            });
        }
        let mut next = Vec::new();
        for w in &layer {
            let end = w.end(alg);
            for a in 0..alg.quiver().arrows().len() {
                for l in [Letter::direct(a), Letter::inv(a)] {
                    if l.start(alg) == end && junction_ok(alg, &w.letters, l) {
                        let mut letters = w.letters.clone();
                        letters.push(l);
                        next.push(StringWord {
                            start: w.start,
                            letters,
                        });
                    }
                }
            }
        }
        layer = next;
        length += 1;
    }
    Ok(out)
}

/// A closed walk whose powers are all strings.
fn is_band(alg: &MonomialAlgebra, w: &StringWord, max_rel: usize) -> bool {
    let reps = max_rel / w.len() + 2;
    let letters: Vec<Letter> = w
        .letters
        .iter()
        .copied()
        .cycle()
        .take(reps * w.len())
        .collect();
    StringWord {
        start: w.start,
        letters,
    }
    .is_valid(alg)
}

/// The string module: one basis vector per walk vertex; a direct letter sends
/// the vector before it to the one after, an inverse letter the other way.
pub fn string_module(alg: &MonomialAlgebra, w: &StringWord) -> Representation {
    let walk = w.walk(alg);
    let mut dims = vec![0usize; alg.n()];
    let local: Vec<usize> = walk
        .iter()
        .map(|&v| {
            dims[v] += 1;
            dims[v] - 1
        })
        .collect();
    let q = alg.quiver();
    let mut maps: Vec<Matrix> = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(alg.field(), dims[a.target], dims[a.source]))
        .collect();
    for (i, l) in w.letters.iter().enumerate() {
        let (from, to) = if l.inverse { (i + 1, i) } else { (i, i + 1) };
        maps[l.arrow].set(local[to], local[from], 1);
    }
    Representation::new(alg, dims, maps).expect("valid string yields a module")
}
