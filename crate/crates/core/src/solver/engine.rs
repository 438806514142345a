//! Propagate-and-branch search over the 0-1 model.
//!
//! Every row is kept as `Σ a·v ≤ b` together with its minimum activity
//! under the current partial assignment. A row whose slack drops below a
//! coefficient forces that variable; negative slack is a conflict. Search
//! picks the unplaced (team, round) with the fewest remaining (room,
//! position) options, tries each option as `x = 1`, and backtracks
//! chronologically, asserting `x = 0` after a refuted branch.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{Fairness, ROUNDS};
use crate::solver::model::{ConstraintModel, Sense};

const FREE: i8 = -1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SearchResult {
    Satisfiable,
    Infeasible,
    Timeout,
    /// Node budget used up; only seen between restarts.
    Restart,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Branching decisions taken.
    pub nodes: u64,
    /// Values forced by propagation.
    pub propagations: u64,
    /// Refuted branches.
    pub backtracks: u64,
}

#[derive(Debug, Clone, Copy)]
struct Row {
    start: usize,
    end: usize,
    rhs: i64,
    max_abs: i64,
}

#[derive(Debug, Clone, Copy)]
struct Level {
    trail_len: usize,
    var: usize,
    value: i8,
    /// Set when the decision put a team into an empty room.
    empty_room: bool,
}

pub(crate) struct Engine<'m> {
    model: &'m ConstraintModel,
    rooms: usize,
    x_count: usize,
    rows: Vec<Row>,
    terms: Vec<(usize, i64)>,
    occurs: Vec<Vec<(usize, i64)>>,
    value: Vec<i8>,
    min_activity: Vec<i64>,
    trail: Vec<usize>,
    qhead: usize,
    levels: Vec<Level>,
    room_ones: Vec<u32>,
    slot_ones: Vec<u32>,
    team_order: Vec<usize>,
    symmetry_breaking: bool,
    pub(crate) stats: SearchStats,
}

impl<'m> Engine<'m> {
    pub(crate) fn new(model: &'m ConstraintModel, seed: u64, symmetry_breaking: bool) -> Self {
        let n_vars = model.var_count();
        let mut rows = Vec::new();
        let mut terms: Vec<(usize, i64)> = Vec::new();
        let mut push_row = |coefs: &mut dyn Iterator<Item = (usize, i64)>, rhs: i64| {
            let start = terms.len();
            terms.extend(coefs);
            let end = terms.len();
            let max_abs = terms[start..end].iter().map(|t| t.1.abs()).max().unwrap_or(0);
            rows.push(Row {
                start,
                end,
                rhs,
                max_abs,
            });
        };
        for c in model.constraints() {
            let rhs = i64::from(c.rhs);
            if matches!(c.sense, Sense::Le | Sense::Eq) {
                push_row(&mut c.terms.iter().map(|&(v, a)| (v, i64::from(a))), rhs);
            }
            if matches!(c.sense, Sense::Ge | Sense::Eq) {
                push_row(&mut c.terms.iter().map(|&(v, a)| (v, -i64::from(a))), -rhs);
            }
        }
        let mut occurs = vec![Vec::new(); n_vars];
        let mut min_activity = vec![0i64; rows.len()];
        for (r, row) in rows.iter().enumerate() {
            for &(v, a) in &terms[row.start..row.end] {
                occurs[v].push((r, a));
                min_activity[r] += a.min(0);
            }
        }

        let instance = model.instance();
        let mut team_order: Vec<usize> = (0..instance.team_count()).collect();
        if seed != 0 {
            team_order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }

        Engine {
            model,
            rooms: instance.room_count(),
            x_count: model.x_count(),
            rows,
            terms,
            occurs,
            value: vec![FREE; n_vars],
            min_activity,
            trail: Vec::new(),
            qhead: 0,
            levels: Vec::new(),
            room_ones: vec![0; ROUNDS * instance.room_count()],
            slot_ones: vec![0; ROUNDS * instance.team_count()],
            team_order,
            // Linking rooms across rounds breaks the per-round room symmetry.
            symmetry_breaking: symmetry_breaking && !model.criteria().simple,
            stats: SearchStats::default(),
        }
    }

    /// Final values; only meaningful after a satisfiable search.
    pub(crate) fn assignment(&self) -> Vec<bool> {
        self.value.iter().map(|&v| v == 1).collect()
    }

    // x ids are ((team * ROUNDS + round) * rooms + room) * 3 + pos.
    fn x_parts(&self, v: usize) -> (usize, usize, usize, usize) {
        let pos = v % 3;
        let room = (v / 3) % self.rooms;
        let round = (v / (3 * self.rooms)) % ROUNDS;
        let team = v / (3 * self.rooms * ROUNDS);
        (team, round, room, pos)
    }

    fn x_id(&self, team: usize, round: usize, room: usize, pos: usize) -> usize {
        ((team * ROUNDS + round) * self.rooms + room) * 3 + pos
    }

    fn assign(&mut self, v: usize, val: i8) {
        debug_assert_eq!(self.value[v], FREE);
        self.value[v] = val;
        for &(r, a) in &self.occurs[v] {
            self.min_activity[r] += a * i64::from(val) - a.min(0);
        }
        if val == 1 && v < self.x_count {
            let (team, round, room, _) = self.x_parts(v);
            self.room_ones[round * self.rooms + room] += 1;
            self.slot_ones[team * ROUNDS + round] += 1;
        }
        self.trail.push(v);
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let v = self.trail.pop().expect("trail longer than len");
            let val = self.value[v];
            for &(r, a) in &self.occurs[v] {
                self.min_activity[r] -= a * i64::from(val) - a.min(0);
            }
            if val == 1 && v < self.x_count {
                let (team, round, room, _) = self.x_parts(v);
                self.room_ones[round * self.rooms + room] -= 1;
                self.slot_ones[team * ROUNDS + round] -= 1;
            }
            self.value[v] = FREE;
        }
        self.qhead = self.qhead.min(len);
    }

    /// Forces implied values of one row; false on conflict.
    fn propagate_row(&mut self, r: usize) -> bool {
        let row = self.rows[r];
        let slack = row.rhs - self.min_activity[r];
        if slack < 0 {
            return false;
        }
        if slack >= row.max_abs {
            return true;
        }
        for t in row.start..row.end {
            let (u, a) = self.terms[t];
            if self.value[u] == FREE && a.abs() > slack {
                self.assign(u, if a > 0 { 0 } else { 1 });
                self.stats.propagations += 1;
            }
        }
        true
    }

    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let v = self.trail[self.qhead];
            self.qhead += 1;
            for o in 0..self.occurs[v].len() {
                let r = self.occurs[v][o].0;
                if !self.propagate_row(r) {
                    return false;
                }
            }
        }
        true
    }

    fn initial_propagation(&mut self) -> bool {
        if self.symmetry_breaking {
            self.fix_round_order();
        }
        (0..self.rows.len()).all(|r| self.propagate_row(r)) && self.propagate()
    }

    /// Rounds are interchangeable except for the last one under weak
    /// fairness, so the first team's presentation order can be fixed.
    fn fix_round_order(&mut self) {
        let Some(&team) = self.team_order.first() else {
            return;
        };
        // (round, position) pairs excluded for that team.
        let excluded: &[(usize, usize)] = match self.model.criteria().fairness {
            Fairness::Weak => &[(1, 0), (0, 2)],
            _ => &[(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)],
        };
        for &(round, pos) in excluded {
            for room in 0..self.rooms {
                let v = self.x_id(team, round, room, pos);
                if self.value[v] == FREE {
                    self.assign(v, 0);
                }
            }
        }
    }

    fn room_is_empty(&self, round: usize, room: usize) -> bool {
        self.room_ones[round * self.rooms + room] == 0
    }

    /// Next decision variable, or `None` when complete. Placement variables
    /// are tried at 1 first, auxiliary ones at 0.
    fn choose(&self) -> Option<(usize, bool)> {
        let instance = self.model.instance();
        let mut best: Option<(usize, usize, usize)> = None;
        for &i in &self.team_order {
            for j in 0..ROUNDS {
                if self.slot_ones[i * ROUNDS + j] > 0 {
                    continue;
                }
                let base = self.x_id(i, j, 0, 0);
                let options = (base..base + 3 * self.rooms)
                    .filter(|&v| self.value[v] == FREE)
                    .count();
                if options > 0 && best.is_none_or(|(b, _, _)| options < b) {
                    best = Some((options, i, j));
                }
            }
        }
        if let Some((_, i, j)) = best {
            // Fill partly occupied rooms first; among empty rooms of one
            // size only the lowest-numbered one is distinct.
            let mut pick: Option<(bool, usize, usize)> = None;
            for k in 0..self.rooms {
                let empty = self.room_is_empty(j, k);
                if empty
                    && self.symmetry_breaking
                    && (0..k).any(|e| {
                        self.room_is_empty(j, e) && instance.room_size(e) == instance.room_size(k)
                    })
                {
                    continue;
                }
                for q in 0..3 {
                    let v = self.x_id(i, j, k, q);
                    if self.value[v] == FREE && pick.is_none_or(|(e, _, _)| empty < e) {
                        pick = Some((empty, k, q));
                    }
                }
            }
            if let Some((empty, k, q)) = pick {
                return Some((self.x_id(i, j, k, q), empty));
            }
        }
        (0..self.value.len())
            .find(|&v| self.value[v] == FREE)
            .map(|v| (v, false))
    }

    /// Excludes the refuted (team, position) from every other empty room of
    /// the same size in that round.
    fn exclude_symmetric(&mut self, v: usize) {
        let (team, round, room, pos) = self.x_parts(v);
        let size = self.model.instance().room_size(room);
        for k in 0..self.rooms {
            if k != room
                && self.room_is_empty(round, k)
                && self.model.instance().room_size(k) == size
            {
                let u = self.x_id(team, round, k, pos);
                if self.value[u] == FREE {
                    self.assign(u, 0);
                }
            }
        }
    }

    pub(crate) fn search(&mut self, deadline: Instant, stop: &AtomicBool, budget: u64) -> SearchResult {
        if !self.initial_propagation() {
            return SearchResult::Infeasible;
        }
        let mut ok = true;
        loop {
            if !ok {
                // Chronological backtracking: flip the latest decision.
                loop {
                    let Some(level) = self.levels.pop() else {
                        return SearchResult::Infeasible;
                    };
                    self.stats.backtracks += 1;
                    self.undo_to(level.trail_len);
                    let flip = self.value[level.var] == FREE;
                    if flip {
                        self.assign(level.var, 1 - level.value);
                        if self.symmetry_breaking && level.empty_room {
                            self.exclude_symmetric(level.var);
                        }
                    }
                    if flip && self.propagate() {
                        break;
                    }
                }
            }
            if self.stats.nodes % 512 == 0
                && (Instant::now() >= deadline || stop.load(Ordering::Relaxed))
            {
                return SearchResult::Timeout;
            }
            if self.stats.nodes >= budget {
                return SearchResult::Restart;
            }
            let Some((var, empty_room)) = self.choose() else {
                return SearchResult::Satisfiable;
            };
            self.stats.nodes += 1;
            let value = if var < self.x_count { 1 } else { 0 };
            self.levels.push(Level {
                trail_len: self.trail.len(),
                var,
                value,
                empty_room,
            });
            self.assign(var, value);
            ok = self.propagate();
        }
    }
}

/// Term `i` (from 0) of the Luby sequence 1, 1, 2, 1, 1, 2, 4, ...
fn luby(mut i: u64) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < i + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i {
        size = (size - 1) / 2;
        seq -= 1;
        i %= size;
    }
    1 << seq
}

const RESTART_UNIT: u64 = 2048;

/// Runs the search, restarting with a fresh branching order whenever a
/// Luby-scheduled node budget runs out. Budgets grow without bound, so
/// an answer is still reached on every instance given time.
pub(crate) fn run(
    model: &ConstraintModel,
    seed: u64,
    symmetry_breaking: bool,
    restarts: bool,
    time_limit: Duration,
    stop: &AtomicBool,
) -> (SearchResult, Option<Vec<bool>>, SearchStats) {
    let deadline = Instant::now() + time_limit;
    let mut total = SearchStats::default();
    for attempt in 0u64.. {
        let attempt_seed = if attempt == 0 {
            seed
        } else {
            seed ^ attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        };
        let budget = if restarts {
            luby(attempt).saturating_mul(RESTART_UNIT)
        } else {
            u64::MAX
        };
        let mut engine = Engine::new(model, attempt_seed, symmetry_breaking);
        let result = engine.search(deadline, stop, budget);
        total.nodes += engine.stats.nodes;
        total.propagations += engine.stats.propagations;
        total.backtracks += engine.stats.backtracks;
        if result != SearchResult::Restart {
            let assignment = (result == SearchResult::Satisfiable).then(|| engine.assignment());
            return (result, assignment, total);
        }
    }
    unreachable!("attempt counter is unbounded")
}
