//! Graphs with group actions: the `W(k, r)` and `SW(k, r)` families,
//! transitivity reports, odd-order edge cores and the cubic arc-regular
//! census.

mod action;
mod census;
mod families;
mod graph;

pub use action::{
    local_action, odd_edge_core, transitivity_report, GraphAction, LocalActionSummary, OddEdgeCore,
    TransitivityReport,
};
pub use census::{coset_graph_orders, cubic_arc_regular_orders, w_order_density, Census, CensusEntry};
pub use families::{
    build_sw, build_w, complete_bipartite, complete_graph, cube, cycle, fixture_corpus, petersen, star, Fixture,
};
pub use graph::Graph;

use thiserror::Error;

use crate::fpgroup::FpError;
use crate::permgroup::PermError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("generator {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("{0} is not an edge")]
    NotAnEdge(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Fp(#[from] FpError),
}
