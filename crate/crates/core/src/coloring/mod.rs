//! Constructive schedules from bipartite matchings and edge colourings.

pub mod edge_coloring;
pub mod graph;
pub mod matching;
pub mod order_fair;
pub mod simple;

pub use edge_coloring::{konig_edge_coloring, EdgeColoring};
pub use graph::{portfolio_graph, BipartiteGraph, PortfolioGraph};
pub use matching::{max_matching, Matching};
pub use order_fair::assign_order_fair;
pub use simple::{
    find_fine_quadruple, fine_quadruple_among, is_fine, is_special_profile, simple_schedule,
    NoSimpleSchedule, SpecialProfile,
};
