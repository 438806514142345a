//! Exact search for schedules meeting a set of criteria.

mod decode;
mod engine;
mod lp;
mod model;

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

pub use decode::decode;
pub use engine::SearchStats;
pub use lp::{export_lp, row_name};
pub use model::{build_model, Constraint, ConstraintModel, Sense, Tag, Var};

use crate::coloring::assign_order_fair;
use crate::error::Result;
use crate::model::Schedule;
use engine::SearchResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Satisfiable,
    Infeasible,
    Timeout,
}

impl SolveStatus {
    pub fn name(self) -> &'static str {
        match self {
            SolveStatus::Satisfiable => "satisfiable",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub propagations: u64,
    pub backtracks: u64,
    pub wall_time: Duration,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Present iff `status` is `Satisfiable`.
    pub schedule: Option<Schedule>,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub time_limit: Duration,
    /// Seed 0 keeps teams in input order when breaking branching ties.
    pub seed: u64,
    /// Treat empty rooms of equal size as interchangeable.
    pub symmetry_breaking: bool,
    /// Restart with a new branching order on a growing node budget.
    pub restarts: bool,
    /// Independent searches with seeds `seed, seed+1, ...`; the first
    /// conclusive answer wins.
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            time_limit: Duration::from_secs(300),
            seed: 0,
            symmetry_breaking: true,
            restarts: true,
            threads: 1,
        }
    }
}

/// Searches with default options apart from the time limit and seed.
pub fn solve(model: &ConstraintModel, time_limit: Duration, seed: u64) -> Result<SolveOutcome> {
    solve_with(
        model,
        &SolveOptions {
            time_limit,
            seed,
            ..SolveOptions::default()
        },
    )
}

pub fn solve_with(model: &ConstraintModel, options: &SolveOptions) -> Result<SolveOutcome> {
    let started = Instant::now();
    let stop = AtomicBool::new(false);
    let threads = options.threads.max(1);
    let (result, assignment, search) = if threads == 1 {
        engine::run(
            model,
            options.seed,
            options.symmetry_breaking,
            options.restarts,
            options.time_limit,
            &stop,
        )
    } else {
        let winner = Mutex::new(None);
        let mut total = SearchStats::default();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    let (stop, winner) = (&stop, &winner);
                    scope.spawn(move || {
                        let (r, a, st) = engine::run(
                            model,
                            options.seed.wrapping_add(t),
                            options.symmetry_breaking,
                            options.restarts,
                            options.time_limit,
                            stop,
                        );
                        if r != SearchResult::Timeout && !stop.swap(true, Ordering::SeqCst) {
                            *winner.lock().expect("winner lock") = Some((r, a));
                        }
                        st
                    })
                })
                .collect();
            for h in handles {
                let st = h.join().expect("search thread panicked");
                total.nodes += st.nodes;
                total.propagations += st.propagations;
                total.backtracks += st.backtracks;
            }
        });
        let (r, a) = winner
            .into_inner()
            .expect("winner lock")
            .unwrap_or((SearchResult::Timeout, None));
        (r, a, total)
    };

    let status = match result {
        SearchResult::Satisfiable => SolveStatus::Satisfiable,
        SearchResult::Infeasible => SolveStatus::Infeasible,
        SearchResult::Timeout | SearchResult::Restart => SolveStatus::Timeout,
    };
    let schedule = match assignment {
        Some(a) => {
            let s = decode(model, &a)?;
            Some(if model.criteria().order_fair {
                assign_order_fair(model.instance(), &s)?
            } else {
                s
            })
        }
        None => None,
    };
    log::debug!(
        "search {} after {} nodes, {} propagations",
        status.name(),
        search.nodes,
        search.propagations
    );
    Ok(SolveOutcome {
        status,
        schedule,
        stats: SolveStats {
            nodes: search.nodes,
            propagations: search.propagations,
            backtracks: search.backtracks,
            wall_time: started.elapsed(),
        },
    })
}
