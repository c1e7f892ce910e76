//! Finitely presented groups: parsing, coset enumeration, low-index
//! subgroup search, abelianization and the density classification of the
//! set of finite quotient orders.

mod classify;
mod coset_table;
mod low_index;
mod presentation;
mod quotients;
mod rewrite;
mod snf;
mod todd_coxeter;
mod word;

pub use classify::{
    classify_density, has_infinite_cyclic_quotient, has_infinite_dihedral_quotient, index_two_subgroups,
    CyclicWitness, DensityClass, DihedralWitness, NegativeChecks,
};
pub use coset_table::CosetTable;
pub use low_index::{low_index_subgroups, SearchConfig, SearchMode, SubgroupSearch, DEFAULT_NODE_BUDGET};
pub use presentation::Presentation;
pub use quotients::{fq_up_to, oq_up_to, smooth_quotients, CertifiedOrder, QuotientOrders};
pub use rewrite::{reidemeister_schreier, SubgroupPresentation};
pub use snf::{abelianization, smith_normal_form, SmithForm};
pub use todd_coxeter::{todd_coxeter, DEFAULT_MAX_COSETS};
pub use word::{Letter, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: undeclared generator `{name}`")]
    UndeclaredGenerator { name: String, line: usize, column: usize },
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("invalid generator name: {0}")]
    InvalidName(String),
    #[error("coset enumeration undecided after {cosets} cosets")]
    Undecided { cosets: usize },
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("coset table check failed: {0}")]
    BadTable(String),
    #[error("word does not lie in the subgroup")]
    NotInSubgroup,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
