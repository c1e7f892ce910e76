//! Finite quotient orders of finitely presented groups, the number-theoretic
//! sieves that control their density, and desk-scale censuses of symmetric
//! graph orders.
//!
//! The crate is organised by subject:
//!
//! * [`numtheory`]: factorisation, the sets `NP_p`, `PP_a`, `SP_a` and
//!   segmented density counting.
//! * [`permgroup`]: exhaustive finite permutation groups and the structural
//!   lemma checks that run on them.
//! * [`fpgroup`]: presentations, coset enumeration, low-index search,
//!   Smith normal form and the three-way density classification.
//! * [`graphs`]: witness graph families, transitivity reports and the cubic
//!   arc-regular order census.
//!
//! Data-parallel loops go through [`exec::Execution`]; with the `parallel`
//! feature disabled every mode runs sequentially and produces identical
//! results.

pub mod exec;
pub mod fpgroup;
pub mod graphs;
pub mod numtheory;
pub mod permgroup;

pub use exec::Execution;
