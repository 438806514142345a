//! Linear 0-1 model of the scheduling problem.
//!
//! `x(i,j,k,q) = 1` when team `i` presents the `q`-th problem of its
//! portfolio in round `j`, room `k`. Strong fairness adds `y(i,j,k,l)`,
//! forced to 1 when team `i` meets problem `l` in Fight `(j,k)`.

use std::fmt;

use crate::model::{Fairness, FairnessCriteria, Instance, Problem, ROUNDS};

/// Which family a constraint belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    /// Each portfolio position is presented exactly once.
    Feas2,
    /// One presentation per team and round.
    Feas3,
    /// Room occupancy equals room size.
    Feas4,
    /// No problem twice in one Fight.
    Feas6,
    /// Nobody watches a problem from its own portfolio.
    Fair7,
    /// `y` switches on when a team meets a problem.
    Sfair8,
    /// Each problem is met at most once.
    Sfair9,
    /// At most one team per school in a Fight.
    Noncoop10,
    /// Same room in every round.
    Simple,
}

impl Tag {
    pub const ALL: [Tag; 9] = [
        Tag::Feas2,
        Tag::Feas3,
        Tag::Feas4,
        Tag::Feas6,
        Tag::Fair7,
        Tag::Sfair8,
        Tag::Sfair9,
        Tag::Noncoop10,
        Tag::Simple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::Feas2 => "feas-2",
            Tag::Feas3 => "feas-3",
            Tag::Feas4 => "feas-4",
            Tag::Feas6 => "feas-6",
            Tag::Fair7 => "fair-7",
            Tag::Sfair8 => "sfair-8",
            Tag::Sfair9 => "sfair-9",
            Tag::Noncoop10 => "noncoop-10",
            Tag::Simple => "simple",
        }
    }

    pub fn is_feasibility(self) -> bool {
        matches!(self, Tag::Feas2 | Tag::Feas3 | Tag::Feas4 | Tag::Feas6)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

/// `Σ coef·var  (≤|=|≥)  rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub tag: Tag,
    /// 1-based indices naming the row, e.g. `[i, q]` for `feas-2`.
    pub index: Vec<usize>,
    pub terms: Vec<(usize, i32)>,
    pub sense: Sense,
    pub rhs: i32,
}

impl Constraint {
    pub fn is_satisfied(&self, value: impl Fn(usize) -> i32) -> bool {
        let lhs: i32 = self.terms.iter().map(|&(v, a)| a * value(v)).sum();
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Eq => lhs == self.rhs,
            Sense::Ge => lhs >= self.rhs,
        }
    }
}

/// A variable's role, decoded from its id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X { team: usize, round: usize, room: usize, pos: usize },
    Y { team: usize, round: usize, room: usize, problem: Problem },
}

/// The satisfiability model of one instance under one set of criteria.
#[derive(Debug, Clone)]
pub struct ConstraintModel {
    instance: Instance,
    criteria: FairnessCriteria,
    y_count: usize,
    constraints: Vec<Constraint>,
}

impl ConstraintModel {
    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn criteria(&self) -> &FairnessCriteria {
        &self.criteria
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn x_count(&self) -> usize {
        9 * self.instance.team_count() * self.instance.room_count()
    }

    pub fn y_count(&self) -> usize {
        self.y_count
    }

    pub fn var_count(&self) -> usize {
        self.x_count() + self.y_count
    }

    pub fn count(&self, tag: Tag) -> usize {
        self.constraints.iter().filter(|c| c.tag == tag).count()
    }

    /// Id of `x(team, round, room, pos)`, all zero-based.
    pub fn x(&self, team: usize, round: usize, room: usize, pos: usize) -> usize {
        ((team * ROUNDS + round) * self.instance.room_count() + room) * 3 + pos
    }

    /// Id of `y(team, round, room, problem)`; only present under strong fairness.
    pub fn y(&self, team: usize, round: usize, room: usize, problem: Problem) -> usize {
        debug_assert!(self.y_count > 0);
        let m = usize::from(self.instance.problem_count());
        self.x_count() + ((team * ROUNDS + round) * self.instance.room_count() + room) * m + problem.index()
    }

    pub fn var(&self, id: usize) -> Var {
        let s = self.instance.room_count();
        if id < self.x_count() {
            let pos = id % 3;
            let room = (id / 3) % s;
            let round = (id / (3 * s)) % ROUNDS;
            let team = id / (3 * s * ROUNDS);
            Var::X { team, round, room, pos }
        } else {
            let m = usize::from(self.instance.problem_count());
            let rel = id - self.x_count();
            let problem = Problem::from_index(rel % m);
            let room = (rel / m) % s;
            let round = (rel / (m * s)) % ROUNDS;
            let team = rel / (m * s * ROUNDS);
            Var::Y { team, round, room, problem }
        }
    }

    /// Variable name as used in the LP export, with 1-based indices.
    pub fn var_name(&self, id: usize) -> String {
        match self.var(id) {
            Var::X { team, round, room, pos } => {
                format!("x_{}_{}_{}_{}", team + 1, round + 1, room + 1, pos + 1)
            }
            Var::Y { team, round, room, problem } => {
                format!("y_{}_{}_{}_{}", team + 1, round + 1, room + 1, problem)
            }
        }
    }
}

/// Emits the feasibility rows plus the rows for each requested criterion.
///
/// Fairness rows are only emitted where the watching team actually holds the
/// presented problem; elsewhere the inequality can never bind. Order
/// fairness is not part of the model: it is always achievable afterwards by
/// re-assigning stages.
pub fn build_model(instance: &Instance, criteria: &FairnessCriteria) -> ConstraintModel {
    let n = instance.team_count();
    let s = instance.room_count();
    let m = usize::from(instance.problem_count());
    let strong = criteria.fairness == Fairness::Strong;
    let mut model = ConstraintModel {
        instance: instance.clone(),
        criteria: *criteria,
        y_count: if strong { 3 * n * s * m } else { 0 },
        constraints: Vec::new(),
    };
    let mut rows = Vec::new();
    let row = |tag: Tag, index: &[usize], terms: Vec<(usize, i32)>, sense: Sense, rhs: i32| Constraint {
        tag,
        index: index.iter().map(|x| x + 1).collect(),
        terms,
        sense,
        rhs,
    };

    for i in 0..n {
        for q in 0..3 {
            let terms = (0..ROUNDS)
                .flat_map(|j| (0..s).map(move |k| (j, k)))
                .map(|(j, k)| (model.x(i, j, k, q), 1))
                .collect();
            rows.push(row(Tag::Feas2, &[i, q], terms, Sense::Eq, 1));
        }
    }
    for i in 0..n {
        for j in 0..ROUNDS {
            let terms = (0..s)
                .flat_map(|k| (0..3).map(move |q| (k, q)))
                .map(|(k, q)| (model.x(i, j, k, q), 1))
                .collect();
            rows.push(row(Tag::Feas3, &[i, j], terms, Sense::Eq, 1));
        }
    }
    for j in 0..ROUNDS {
        for k in 0..s {
            let terms = (0..n)
                .flat_map(|i| (0..3).map(move |q| (i, q)))
                .map(|(i, q)| (model.x(i, j, k, q), 1))
                .collect();
            rows.push(row(Tag::Feas4, &[j, k], terms, Sense::Eq, instance.room_size(k) as i32));
        }
    }
    for j in 0..ROUNDS {
        for k in 0..s {
            for p in instance.problems() {
                let holders = instance.holders(p);
                if holders.is_empty() {
                    continue;
                }
                let terms = holders.iter().map(|&(i, q)| (model.x(i, j, k, q), 1)).collect();
                rows.push(row(Tag::Feas6, &[j, k, p.index()], terms, Sense::Le, 1));
            }
        }
    }

    let fair_rounds = match criteria.fairness {
        Fairness::Weak => 2,
        Fairness::Fair => ROUNDS,
        _ => 0,
    };
    for j in 0..fair_rounds {
        for k in 0..s {
            for q in 0..3 {
                for i in 0..n {
                    let p = instance.problem_at(i, q);
                    for &(alpha, _) in instance.holders(p) {
                        if alpha == i {
                            continue;
                        }
                        let mut terms = vec![(model.x(i, j, k, q), 1)];
                        terms.extend((0..3).map(|w| (model.x(alpha, j, k, w), 1)));
                        // x + Σ x_alpha + c ≤ 2 with c = 1
                        rows.push(row(Tag::Fair7, &[j, k, q, i, alpha], terms, Sense::Le, 1));
                    }
                }
            }
        }
    }

    if strong {
        for i in 0..n {
            for j in 0..ROUNDS {
                for k in 0..s {
                    for l in 0..m {
                        let p = Problem::from_index(l);
                        let mut terms: Vec<(usize, i32)> = vec![(model.y(i, j, k, p), 1)];
                        for w in 0..3 {
                            add_term(&mut terms, model.x(i, j, k, w), -1);
                        }
                        for &(alpha, q) in instance.holders(p) {
                            add_term(&mut terms, model.x(alpha, j, k, q), -1);
                        }
                        rows.push(row(Tag::Sfair8, &[i, j, k, l], terms, Sense::Ge, -1));
                    }
                }
            }
        }
        for i in 0..n {
            for l in 0..m {
                let p = Problem::from_index(l);
                let terms = (0..ROUNDS)
                    .flat_map(|j| (0..s).map(move |k| (j, k)))
                    .map(|(j, k)| (model.y(i, j, k, p), 1))
                    .collect();
                rows.push(row(Tag::Sfair9, &[i, l], terms, Sense::Le, 1));
            }
        }
    }

    if criteria.non_cooperative {
        for j in 0..ROUNDS {
            for k in 0..s {
                for (lambda, school) in instance.schools().iter().enumerate() {
                    if school.len() < 2 {
                        continue;
                    }
                    let terms = school
                        .iter()
                        .flat_map(|&i| (0..3).map(move |q| (i, q)))
                        .map(|(i, q)| (model.x(i, j, k, q), 1))
                        .collect();
                    rows.push(row(Tag::Noncoop10, &[j, k, lambda], terms, Sense::Le, 1));
                }
            }
        }
    }

    if criteria.simple {
        for i in 0..n {
            for j in 1..ROUNDS {
                for k in 0..s {
                    let mut terms: Vec<(usize, i32)> = (0..3).map(|q| (model.x(i, j, k, q), 1)).collect();
                    terms.extend((0..3).map(|q| (model.x(i, 0, k, q), -1)));
                    rows.push(row(Tag::Simple, &[i, j, k], terms, Sense::Eq, 0));
                }
            }
        }
    }

    model.constraints = rows;
    model
}

fn add_term(terms: &mut Vec<(usize, i32)>, var: usize, coef: i32) {
    match terms.iter_mut().find(|(v, _)| *v == var) {
        Some(t) => t.1 += coef,
        None => terms.push((var, coef)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_instance;

    fn trio() -> Instance {
        parse_instance("teams=3 problems=9 rooms=3\na s 1 2 3\nb t 4 5 6\nc u 7 8 9\n").unwrap()
    }

    #[test]
    fn trivial_model_shape() {
        let m = build_model(&trio(), &FairnessCriteria::NONE);
        assert_eq!(m.var_count(), 27);
        assert_eq!(m.count(Tag::Feas2), 9);
        assert_eq!(m.count(Tag::Feas3), 9);
        assert_eq!(m.count(Tag::Feas4), 3);
        assert_eq!(m.count(Tag::Feas6), 27);
        assert_eq!(m.constraints().len(), 48);
    }

    #[test]
    fn var_ids_decode() {
        let inst = trio();
        let m = build_model(&inst, &FairnessCriteria::new(Fairness::Strong));
        for id in 0..m.var_count() {
            let back = match m.var(id) {
                Var::X { team, round, room, pos } => m.x(team, round, room, pos),
                Var::Y { team, round, room, problem } => m.y(team, round, room, problem),
            };
            assert_eq!(back, id);
        }
        assert_eq!(m.y_count(), 3 * 3 * 9);
    }

    #[test]
    fn strong_rows_merge_own_problem() {
        let inst = trio();
        let m = build_model(&inst, &FairnessCriteria::new(Fairness::Strong));
        let row = m
            .constraints()
            .iter()
            .find(|c| c.tag == Tag::Sfair8 && c.index == vec![1, 1, 1, 1])
            .unwrap();
        // x(1,1,1,1) is both "team 1 in room" and "problem 1 presented".
        assert!(row.terms.contains(&(m.x(0, 0, 0, 0), -2)));
        assert_eq!(row.terms.len(), 4);
    }

    #[test]
    fn every_row_references_declared_vars() {
        let inst = trio();
        let m = build_model(&inst, &FairnessCriteria::new(Fairness::Strong).non_cooperative());
        assert!(m
            .constraints()
            .iter()
            .all(|c| c.terms.iter().all(|&(v, _)| v < m.var_count())));
    }
}
