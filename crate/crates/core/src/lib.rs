//! Computations with the module categories of finite-dimensional monomial
//! algebras over prime fields: string modules, Auslander–Reiten translates,
//! τ-rigid and τ-tilting modules, and matchings between the τ-tilting theory
//! of an algebra and its opposite.

pub mod algebra;
pub mod bijection;
pub mod catalog;
pub mod cli;
pub mod fixtures;
pub mod homological;
pub mod linalg;
pub mod report;
pub mod repr;
pub mod strings;
pub mod tautilt;
