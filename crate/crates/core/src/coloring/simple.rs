//! Simple schedules: every team keeps its room for all three rounds.
//!
//! A room's problem-to-round assignment is a 3-edge-colouring of its
//! team-problem graph, which exists whenever the graph has maximum degree 3.
//! Three teams always qualify; four teams qualify when they form a *fine*
//! quadruple. With one 4-room a fine quadruple exists iff every announced
//! problem is avoided by some team; with two 4-rooms two disjoint ones are
//! needed, which exist iff every problem is avoided by at least two teams
//! and the profile is not *special*.

use std::collections::BTreeMap;
use std::fmt;

use crate::coloring::edge_coloring::konig_edge_coloring;
use crate::coloring::graph::portfolio_graph;
use crate::model::{Instance, Problem, Schedule, Slot, Stage, ROUNDS};

/// Why no simple schedule was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoSimpleSchedule {
    /// Some announced problem is avoided by too few teams.
    Avoidance,
    /// The profile has the special structure that blocks two disjoint fine quadruples.
    SpecialProfile,
    /// No pair of disjoint fine quadruples was found.
    SearchExhausted,
    /// Three or more 4-rooms; no existence criterion is known, use the solver.
    UnsupportedRoomPlan,
}

impl fmt::Display for NoSimpleSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoSimpleSchedule::Avoidance => "avoidance: a problem is avoided by too few teams",
            NoSimpleSchedule::SpecialProfile => "special-profile",
            NoSimpleSchedule::SearchExhausted => "search exhausted",
            NoSimpleSchedule::UnsupportedRoomPlan => {
                "unsupported room plan: three or more 4-rooms"
            }
        })
    }
}

impl std::error::Error for NoSimpleSchedule {}

/// Whether the four teams have a team-problem graph of maximum degree 3.
pub fn is_fine(instance: &Instance, teams: &[usize]) -> bool {
    teams.len() == 4 && portfolio_graph(instance, teams).graph.max_degree() == 3
}

/// A fine quadruple among all teams, if any.
pub fn find_fine_quadruple(instance: &Instance) -> Option<[usize; 4]> {
    let all: Vec<usize> = (0..instance.team_count()).collect();
    fine_quadruple_among(instance, &all)
}

/// A fine quadruple drawn from `teams`.
///
/// Starts from the first team `t1` and a team `t2` avoiding its first
/// problem, then completes the set according to how many problems the two
/// share. Returns `None` exactly when some problem of `t1` is held by every
/// team of the pool, in which case no fine quadruple exists.
pub fn fine_quadruple_among(instance: &Instance, teams: &[usize]) -> Option<[usize; 4]> {
    if teams.len() < 4 {
        return None;
    }
    let avoiding = |p: Problem, taken: &[usize]| {
        teams
            .iter()
            .copied()
            .find(|&t| !taken.contains(&t) && !instance.holds(t, p))
    };
    let any_other = |taken: &[usize]| teams.iter().copied().find(|t| !taken.contains(t));

    let t1 = teams[0];
    let p1 = instance.problem_at(t1, 0);
    let t2 = avoiding(p1, &[t1])?;
    let shared: Vec<Problem> = instance
        .portfolio(t1)
        .iter()
        .copied()
        .filter(|&p| instance.holds(t2, p))
        .collect();

    let quad = match shared.as_slice() {
        [] => {
            let t3 = any_other(&[t1, t2])?;
            let t4 = any_other(&[t1, t2, t3])?;
            [t1, t2, t3, t4]
        }
        [c] => {
            let t3 = avoiding(*c, &[t1, t2])?;
            let t4 = any_other(&[t1, t2, t3])?;
            [t1, t2, t3, t4]
        }
        [c1, c2] => {
            let t3 = avoiding(*c1, &[t1, t2])?;
            let t4 = if instance.holds(t3, *c2) {
                avoiding(*c2, &[t1, t2, t3])?
            } else {
                any_other(&[t1, t2, t3])?
            };
            [t1, t2, t3, t4]
        }
        _ => unreachable!("t2 avoids p1"),
    };
    debug_assert!(is_fine(instance, &quad));
    Some(quad)
}

/// Witness of a special profile: the common triple and the three exceptional
/// teams, ordered so that `exceptions[x]` holds `triple[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialProfile {
    pub triple: [Problem; 3],
    pub exceptions: [usize; 3],
}

/// Detects the special structure: `n - 3` identical portfolios `{a, b, c}`
/// and three others `{a, ..}`, `{b, ..}`, `{c, ..}` whose remaining problems
/// are all outside the triple.
pub fn is_special_profile(instance: &Instance) -> Option<SpecialProfile> {
    let n = instance.team_count();
    if n < 8 {
        return None;
    }
    let mut counts: BTreeMap<[Problem; 3], Vec<usize>> = BTreeMap::new();
    for t in 0..n {
        let mut key: [Problem; 3] = instance.portfolio(t).try_into().expect("3 problems");
        key.sort_unstable();
        counts.entry(key).or_default().push(t);
    }
    let (triple, members) = counts.into_iter().find(|(_, m)| m.len() == n - 3)?;
    let mut exceptions = [usize::MAX; 3];
    for t in (0..n).filter(|t| !members.contains(t)) {
        let inside: Vec<usize> = (0..3).filter(|&x| instance.holds(t, triple[x])).collect();
        let [x] = inside.as_slice() else { return None };
        if exceptions[*x] != usize::MAX {
            return None;
        }
        exceptions[*x] = t;
    }
    Some(SpecialProfile { triple, exceptions })
}

/// Builds a simple schedule when the constructive criteria allow one.
///
/// Four-rooms take fine quadruples, three-rooms take the remaining teams in
/// input order. Each room's problems are spread over the rounds by a
/// König colouring of its team-problem graph; stages follow team order
/// inside the room.
pub fn simple_schedule(instance: &Instance) -> Result<Schedule, NoSimpleSchedule> {
    let n = instance.team_count();
    let fours: Vec<usize> = (0..instance.room_count())
        .filter(|&k| instance.room_size(k) == 4)
        .collect();
    let announced: Vec<Problem> = instance
        .problems()
        .filter(|&p| !instance.holders(p).is_empty())
        .collect();
    let all: Vec<usize> = (0..n).collect();

    let quads: Vec<[usize; 4]> = match fours.len() {
        0 => Vec::new(),
        1 => {
            if announced.iter().any(|&p| instance.avoiders(p) < 1) {
                return Err(NoSimpleSchedule::Avoidance);
            }
            vec![fine_quadruple_among(instance, &all).ok_or(NoSimpleSchedule::SearchExhausted)?]
        }
        2 => {
            if announced.iter().any(|&p| instance.avoiders(p) < 2) {
                return Err(NoSimpleSchedule::Avoidance);
            }
            if is_special_profile(instance).is_some() {
                return Err(NoSimpleSchedule::SpecialProfile);
            }
            let (a, b) = disjoint_fine_pair(instance).ok_or(NoSimpleSchedule::SearchExhausted)?;
            vec![a, b]
        }
        _ => return Err(NoSimpleSchedule::UnsupportedRoomPlan),
    };

    let mut rest: Vec<usize> = all
        .iter()
        .copied()
        .filter(|t| !quads.iter().any(|q| q.contains(t)))
        .collect();
    let mut quads = quads.into_iter();
    let mut rooms: Vec<Vec<usize>> = Vec::with_capacity(instance.room_count());
    for k in 0..instance.room_count() {
        if instance.room_size(k) == 4 {
            let mut q = quads.next().expect("one quadruple per 4-room").to_vec();
            q.sort_unstable();
            rooms.push(q);
        } else {
            rooms.push(rest.drain(..3).collect());
        }
    }

    let mut slots: [Vec<Option<Slot>>; ROUNDS] = std::array::from_fn(|_| vec![None; n]);
    for (k, members) in rooms.iter().enumerate() {
        let g = portfolio_graph(instance, members);
        assert_eq!(g.graph.max_degree(), 3, "room graph must have maximum degree 3");
        let coloring = konig_edge_coloring(&g.graph);
        for (e, &(u, v)) in g.graph.edges().iter().enumerate() {
            let round = coloring.colors[e];
            slots[round][members[u]] = Some(Slot {
                problem: g.problems[v],
                room: k,
                stage: Stage::from_index(u).expect("at most four teams"),
            });
        }
    }
    let rounds = slots.map(|r| r.into_iter().map(|s| s.expect("every team colored")).collect());
    Ok(Schedule::new(rounds).expect("rounds cover all teams"))
}

/// Two disjoint fine quadruples. Tries the constructive quadruple first,
/// then every fine quadruple in lexicographic order.
fn disjoint_fine_pair(instance: &Instance) -> Option<([usize; 4], [usize; 4])> {
    let n = instance.team_count();
    let all: Vec<usize> = (0..n).collect();
    let complete = |first: [usize; 4]| {
        let rest: Vec<usize> = all.iter().copied().filter(|t| !first.contains(t)).collect();
        fine_quadruple_among(instance, &rest).map(|second| (first, second))
    };
    if let Some(pair) = fine_quadruple_among(instance, &all).and_then(complete) {
        return Some(pair);
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let quad = [a, b, c, d];
                    if is_fine(instance, &quad) {
                        if let Some(pair) = complete(quad) {
                            return Some(pair);
                        }
                    }
                }
            }
        }
    }
    None
}
