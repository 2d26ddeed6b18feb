//! The bundled example algebras, embedded at compile time.

use std::collections::BTreeMap;

use crate::algebra::{parse_algebra_with, AlgebraError, MonomialAlgebra};
use crate::linalg::PrimeField;

pub const NAMES: [&str; 7] = ["ex1", "ex2", "ex3", "ex6", "ex7a", "ex7b", "ex10"];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "ex1" => include_str!("../../../fixtures/ex1.alg"),
        "ex2" => include_str!("../../../fixtures/ex2.alg"),
        "ex3" => include_str!("../../../fixtures/ex3.alg"),
        "ex6" => include_str!("../../../fixtures/ex6.alg"),
        "ex7a" => include_str!("../../../fixtures/ex7a.alg"),
        "ex7b" => include_str!("../../../fixtures/ex7b.alg"),
        "ex10" => include_str!("../../../fixtures/ex10.alg"),
        _ => return None,
    })
}

pub fn load(name: &str) -> Result<MonomialAlgebra, AlgebraError> {
    load_with(name, &BTreeMap::new(), PrimeField::default())
}

pub fn load_with(
    name: &str,
    params: &BTreeMap<String, i64>,
    field: PrimeField,
) -> Result<MonomialAlgebra, AlgebraError> {
    let src =
        source(name).ok_or_else(|| AlgebraError::Syntax(format!("no bundled fixture `{name}`")))?;
    parse_algebra_with(src, params, field)
}

/// `ex6` with `n` overridden.
pub fn ex6(n: i64) -> Result<MonomialAlgebra, AlgebraError> {
    let mut p = BTreeMap::new();
    p.insert("n".to_string(), n);
    load_with("ex6", &p, PrimeField::default())
}
