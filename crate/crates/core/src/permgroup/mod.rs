//! Finite permutation groups held as exhaustively closed element sets.
//!
//! Everything here is desk scale: groups are closed by breadth-first search
//! up to an element cap, and subgroup questions are answered by scanning
//! elements.

mod catalog;
mod group;
mod lemmas;
mod perm;

pub use catalog::{builtin_catalog, parse_catalog, CatalogEntry, BUILTIN_CATALOG};
pub use group::{
    GroupShape, PermGroup, Quotient, TorsionSelector, DEFAULT_ELEMENT_CAP, DEFAULT_NORMAL_SUBGROUP_CAP,
};
pub use lemmas::{
    is_quasiprimitive, normal_sylow_quotient, verify_odd_lemma, verify_quasiprimitive_odd,
    verify_struc_lemma, OddLemmaEntry, OddLemmaReport, QuasiprimitiveReport, StrucOutcome, SylowReport,
};
pub use perm::Permutation;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group too large: more than {cap} elements")]
    TooLarge { cap: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("|G| = {order} is not in NP_{p}")]
    NotInNp { order: u64, p: u64 },
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Parses a single generator in 1-based cycle notation on `degree` points.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation, PermError> {
    let entries = parse_catalog(&format!("g: {text}"))?;
    let g = entries[0].group.generators()[0].clone();
    if g.degree() > degree {
        return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
    }
    Ok(g.extend_to(degree))
}
