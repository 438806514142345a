//! Scheduling engine for Young Physicists' Tournament style competitions.
//!
//! Teams announce three-problem portfolios; the engine assigns problems,
//! rooms and presenter stages over three rounds so that the requested
//! fairness properties hold. Schedules can be built constructively
//! ([`coloring`]) or searched for ([`solver`]), and audited with
//! [`model::validate`].

pub mod coloring;
pub mod error;
pub mod generator;
pub mod model;
pub mod solver;

pub use error::{Error, Result};
pub use model::*;
