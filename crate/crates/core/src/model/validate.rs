//! Ground-truth checks for feasibility and every fairness property.
//!
//! Every check runs independently and reports concrete witnesses, so a
//! schedule that breaks feasibility still gets a full fairness audit.

use std::fmt;

use serde::Serialize;

use crate::model::criteria::{Criterion, FairnessCriteria};
use crate::model::instance::{Instance, Problem};
use crate::model::schedule::{Schedule, Stage, ROUNDS};

/// The individual rule a witness violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// A team presents something other than its portfolio, once each.
    Coverage,
    /// A problem is presented twice in one Fight.
    RepeatedProblem,
    /// Room occupancy differs from the room size.
    Occupancy,
    /// Stage labels of a Fight are not exactly A-C or A-D.
    StageSet,
    NonCooperative,
    OrderFair,
    WeaklyFair,
    Fair,
    StronglyFair,
    Simple,
}

impl Rule {
    pub fn criterion(self) -> Criterion {
        match self {
            Rule::Coverage | Rule::RepeatedProblem | Rule::Occupancy | Rule::StageSet => {
                Criterion::Feasible
            }
            Rule::NonCooperative => Criterion::NonCooperative,
            Rule::OrderFair => Criterion::OrderFair,
            Rule::WeaklyFair => Criterion::WeaklyFair,
            Rule::Fair => Criterion::Fair,
            Rule::StronglyFair => Criterion::StronglyFair,
            Rule::Simple => Criterion::Simple,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::Coverage => "coverage",
            Rule::RepeatedProblem => "repeated-problem",
            Rule::Occupancy => "occupancy",
            Rule::StageSet => "stage-set",
            other => other.criterion().name(),
        }
    }
}

/// A concrete witness of a violated rule. Rounds and rooms are zero-based.
///
/// For fairness rules `team` is the team that sees the problem and `other`
/// the team presenting it; for [`Rule::RepeatedProblem`] and
/// [`Rule::NonCooperative`] both are members of the same Fight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub round: usize,
    pub room: usize,
    pub team: Option<usize>,
    pub other: Option<usize>,
    pub problem: Option<Problem>,
    pub stage: Option<Stage>,
}

impl Violation {
    fn new(rule: Rule, round: usize, room: usize) -> Self {
        Violation {
            rule,
            round,
            room,
            team: None,
            other: None,
            problem: None,
            stage: None,
        }
    }

    fn team(mut self, t: usize) -> Self {
        self.team = Some(t);
        self
    }

    fn other(mut self, t: usize) -> Self {
        self.other = Some(t);
        self
    }

    fn problem(mut self, p: Problem) -> Self {
        self.problem = Some(p);
        self
    }

    fn stage(mut self, s: Stage) -> Self {
        self.stage = Some(s);
        self
    }

    /// Human-readable description using team ids.
    pub fn describe(&self, instance: &Instance) -> String {
        let name = |t: Option<usize>| t.map(|t| instance.team(t).id.clone());
        let mut s = format!(
            "{}: round {}, room {}",
            self.rule.name(),
            self.round + 1,
            self.room + 1
        );
        if let Some(t) = name(self.team) {
            s.push_str(&format!(", team {t}"));
        }
        if let Some(p) = self.problem {
            s.push_str(&format!(", problem {p}"));
        }
        if let Some(o) = name(self.other) {
            s.push_str(&format!(" (with {o})"));
        }
        if let Some(st) = self.stage {
            s.push_str(&format!(", stage {st}"));
        }
        s
    }

    /// Re-derives the violation from the schedule; true when the witness is sound.
    pub fn confirm(&self, instance: &Instance, schedule: &Schedule) -> bool {
        let j = self.round;
        let slot = |t: usize| schedule.slot(j, t);
        match self.rule {
            Rule::Coverage => {
                let Some(t) = self.team else { return false };
                let p = slot(t).problem;
                Some(p) == self.problem
                    && (!instance.holds(t, p)
                        || (0..j).any(|e| schedule.slot(e, t).problem == p))
            }
            Rule::RepeatedProblem => match (self.team, self.other, self.problem) {
                (Some(t), Some(o), Some(p)) => {
                    t != o
                        && slot(t).room == self.room
                        && slot(o).room == self.room
                        && slot(t).problem == p
                        && slot(o).problem == p
                }
                _ => false,
            },
            Rule::Occupancy => {
                let count = schedule.fight(j, self.room).len();
                self.room >= instance.room_count() || count != instance.room_size(self.room)
            }
            Rule::StageSet => {
                let fight = schedule.fight(j, self.room);
                let size = instance.rooms().get(self.room).copied().unwrap_or(0);
                let mut stages: Vec<Stage> = fight.iter().map(|&t| slot(t).stage).collect();
                stages.sort();
                let expected: Vec<Stage> = Stage::ALL[..size.min(4)].to_vec();
                stages != expected
            }
            Rule::NonCooperative => match (self.team, self.other) {
                (Some(t), Some(o)) => {
                    t != o
                        && instance.same_school(t, o)
                        && slot(t).room == self.room
                        && slot(o).room == self.room
                }
                _ => false,
            },
            Rule::OrderFair => match (self.team, self.stage) {
                (Some(t), Some(st)) => {
                    slot(t).stage == st && (0..j).any(|e| schedule.slot(e, t).stage == st)
                }
                _ => false,
            },
            Rule::Fair | Rule::WeaklyFair => match (self.team, self.other, self.problem) {
                (Some(t), Some(o), Some(p)) => {
                    (self.rule == Rule::Fair || j < 2)
                        && t != o
                        && slot(t).room == self.room
                        && slot(o).room == self.room
                        && slot(o).problem == p
                        && instance.holds(t, p)
                }
                _ => false,
            },
            Rule::StronglyFair => match (self.team, self.other, self.problem) {
                (Some(t), Some(o), Some(p)) => {
                    let now = slot(o).room == self.room
                        && slot(t).room == self.room
                        && slot(o).problem == p;
                    let seen_before = (0..=j).any(|e| {
                        let room = schedule.slot(e, t).room;
                        schedule
                            .fight(e, room)
                            .into_iter()
                            .filter(|&x| !(e == j && x == o))
                            .filter(|&x| e < j || x < o)
                            .any(|x| schedule.slot(e, x).problem == p)
                    });
                    now && seen_before
                }
                _ => false,
            },
            Rule::Simple => match self.team {
                Some(t) => slot(t).room != schedule.slot(0, t).room,
                None => false,
            },
        }
    }
}

/// Verdicts for the checked criteria plus every witness found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub verdicts: Vec<(Criterion, bool)>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// `None` when the criterion was not checked.
    pub fn verdict(&self, criterion: Criterion) -> Option<bool> {
        self.verdicts
            .iter()
            .find(|(c, _)| *c == criterion)
            .map(|&(_, v)| v)
    }

    /// All checked criteria hold.
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|&(_, v)| v)
    }

    pub fn witnesses(&self, criterion: Criterion) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(move |v| v.rule.criterion() == criterion)
    }

    /// Verdict lines followed by one line per witness.
    pub fn lines(&self, instance: &Instance) -> Vec<String> {
        let mut out: Vec<String> = self
            .verdicts
            .iter()
            .map(|(c, v)| format!("{c}: {}", if *v { "yes" } else { "no" }))
            .collect();
        out.extend(self.violations.iter().map(|v| v.describe(instance)));
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, v) in &self.verdicts {
            writeln!(f, "{c}: {}", if *v { "yes" } else { "no" })?;
        }
        writeln!(f, "{} violation(s)", self.violations.len())
    }
}

/// Checks feasibility plus every criterion requested.
pub fn validate(
    instance: &Instance,
    schedule: &Schedule,
    criteria: &FairnessCriteria,
) -> ValidationReport {
    check(instance, schedule, &criteria.checks())
}

/// Checks every known criterion.
pub fn audit(instance: &Instance, schedule: &Schedule) -> ValidationReport {
    check(instance, schedule, &Criterion::ALL)
}

/// Runs the listed checks. Fails with a single dimension witness only when
/// the schedule does not cover the instance's teams.
pub fn check(instance: &Instance, schedule: &Schedule, criteria: &[Criterion]) -> ValidationReport {
    let mut violations = Vec::new();
    if schedule.team_count() != instance.team_count() {
        return ValidationReport {
            verdicts: criteria.iter().map(|&c| (c, false)).collect(),
            violations: vec![Violation::new(Rule::Occupancy, 0, 0)],
        };
    }
    for &c in criteria {
        match c {
            Criterion::Feasible => feasibility(instance, schedule, &mut violations),
            Criterion::NonCooperative => non_cooperative(instance, schedule, &mut violations),
            Criterion::OrderFair => order_fair(schedule, &mut violations),
            Criterion::WeaklyFair => fairness(instance, schedule, Rule::WeaklyFair, &mut violations),
            Criterion::Fair => fairness(instance, schedule, Rule::Fair, &mut violations),
            Criterion::StronglyFair => strong(instance, schedule, &mut violations),
            Criterion::Simple => simple(schedule, &mut violations),
        }
    }
    let verdicts = criteria
        .iter()
        .map(|&c| (c, !violations.iter().any(|v| v.rule.criterion() == c)))
        .collect();
    ValidationReport {
        verdicts,
        violations,
    }
}

fn fights(instance: &Instance, schedule: &Schedule, round: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); instance.room_count()];
    for t in 0..schedule.team_count() {
        let room = schedule.slot(round, t).room;
        if room < out.len() {
            out[room].push(t);
        }
    }
    out
}

fn feasibility(instance: &Instance, schedule: &Schedule, out: &mut Vec<Violation>) {
    for j in 0..ROUNDS {
        for t in 0..instance.team_count() {
            let s = schedule.slot(j, t);
            let repeated = (0..j).any(|e| schedule.slot(e, t).problem == s.problem);
            if !instance.holds(t, s.problem) || repeated {
                out.push(Violation::new(Rule::Coverage, j, s.room).team(t).problem(s.problem));
            }
            if s.room >= instance.room_count() {
                out.push(Violation::new(Rule::Occupancy, j, s.room).team(t));
            }
        }
        for (k, fight) in fights(instance, schedule, j).iter().enumerate() {
            for (a, &t) in fight.iter().enumerate() {
                let p = schedule.slot(j, t).problem;
                if let Some(&o) = fight[..a].iter().find(|&&o| schedule.slot(j, o).problem == p) {
                    out.push(
                        Violation::new(Rule::RepeatedProblem, j, k)
                            .team(t)
                            .other(o)
                            .problem(p),
                    );
                }
            }
            let size = instance.room_size(k);
            if fight.len() != size {
                out.push(Violation::new(Rule::Occupancy, j, k));
            }
            let allowed = &Stage::ALL[..size];
            for (a, &t) in fight.iter().enumerate() {
                let st = schedule.slot(j, t).stage;
                let dup = fight[..a].iter().any(|&o| schedule.slot(j, o).stage == st);
                if dup || !allowed.contains(&st) {
                    out.push(Violation::new(Rule::StageSet, j, k).team(t).stage(st));
                }
            }
            for &st in allowed {
                if !fight.iter().any(|&t| schedule.slot(j, t).stage == st) {
                    out.push(Violation::new(Rule::StageSet, j, k).stage(st));
                }
            }
        }
    }
}

fn non_cooperative(instance: &Instance, schedule: &Schedule, out: &mut Vec<Violation>) {
    for j in 0..ROUNDS {
        for (k, fight) in fights(instance, schedule, j).iter().enumerate() {
            for (a, &t) in fight.iter().enumerate() {
                for &o in &fight[a + 1..] {
                    if instance.same_school(t, o) {
                        out.push(Violation::new(Rule::NonCooperative, j, k).team(t).other(o));
                    }
                }
            }
        }
    }
}

fn order_fair(schedule: &Schedule, out: &mut Vec<Violation>) {
    for t in 0..schedule.team_count() {
        for j in 1..ROUNDS {
            let s = schedule.slot(j, t);
            if (0..j).any(|e| schedule.slot(e, t).stage == s.stage) {
                out.push(Violation::new(Rule::OrderFair, j, s.room).team(t).stage(s.stage));
            }
        }
    }
}

fn fairness(instance: &Instance, schedule: &Schedule, rule: Rule, out: &mut Vec<Violation>) {
    let rounds = if rule == Rule::WeaklyFair { 2 } else { ROUNDS };
    for j in 0..rounds {
        for (k, fight) in fights(instance, schedule, j).iter().enumerate() {
            for &presenter in fight {
                let p = schedule.slot(j, presenter).problem;
                for &t in fight {
                    if t != presenter && instance.holds(t, p) {
                        out.push(Violation::new(rule, j, k).team(t).other(presenter).problem(p));
                    }
                }
            }
        }
    }
}

fn strong(instance: &Instance, schedule: &Schedule, out: &mut Vec<Violation>) {
    let rounds: Vec<Vec<Vec<usize>>> = (0..ROUNDS).map(|j| fights(instance, schedule, j)).collect();
    for t in 0..instance.team_count() {
        let mut seen: Vec<Problem> = Vec::new();
        for (j, fights) in rounds.iter().enumerate() {
            let k = schedule.slot(j, t).room;
            let Some(fight) = fights.get(k) else { continue };
            for &presenter in fight {
                let p = schedule.slot(j, presenter).problem;
                if seen.contains(&p) {
                    out.push(
                        Violation::new(Rule::StronglyFair, j, k)
                            .team(t)
                            .other(presenter)
                            .problem(p),
                    );
                }
                seen.push(p);
            }
        }
    }
}

fn simple(schedule: &Schedule, out: &mut Vec<Violation>) {
    for t in 0..schedule.team_count() {
        for j in 1..ROUNDS {
            let s = schedule.slot(j, t);
            if s.room != schedule.slot(0, t).room {
                out.push(Violation::new(Rule::Simple, j, s.room).team(t));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::instance::parse_instance;
    use crate::model::schedule::Slot;
    use crate::Fairness;

    fn trio() -> (Instance, Schedule) {
        let inst =
            parse_instance("teams=3 problems=9 rooms=3\na s 1 2 3\nb t 4 5 6\nc u 7 8 9\n").unwrap();
        let rounds = std::array::from_fn(|j| {
            (0..3)
                .map(|i| Slot {
                    problem: inst.problem_at(i, j),
                    room: 0,
                    stage: Stage::from_index(i).unwrap(),
                })
                .collect()
        });
        (inst, Schedule::new(rounds).unwrap())
    }

    #[test]
    fn disjoint_trio_is_strongly_fair() {
        let (inst, s) = trio();
        let r = validate(&inst, &s, &FairnessCriteria::new(Fairness::Strong).non_cooperative());
        assert!(r.passed(), "{:?}", r.violations);
        // Same stage every round.
        assert_eq!(audit(&inst, &s).verdict(Criterion::OrderFair), Some(false));
        assert_eq!(audit(&inst, &s).verdict(Criterion::Simple), Some(true));
    }

    #[test]
    fn repeated_problem_and_coverage() {
        let (inst, s) = trio();
        let mut rounds: [Vec<Slot>; 3] = std::array::from_fn(|j| s.round(j).to_vec());
        rounds[1][0].problem = Problem(1);
        let bad = Schedule::new(rounds).unwrap();
        let r = audit(&inst, &bad);
        assert_eq!(r.verdict(Criterion::Feasible), Some(false));
        let w: Vec<_> = r.witnesses(Criterion::Feasible).collect();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].rule, Rule::Coverage);
        assert!(w.iter().all(|v| v.confirm(&inst, &bad)));
    }

    #[test]
    fn stage_d_in_three_room() {
        let (inst, s) = trio();
        let mut rounds: [Vec<Slot>; 3] = std::array::from_fn(|j| s.round(j).to_vec());
        rounds[2][2].stage = Stage::D;
        let bad = Schedule::new(rounds).unwrap();
        let r = audit(&inst, &bad);
        let rules: Vec<_> = r.witnesses(Criterion::Feasible).map(|v| v.rule).collect();
        assert_eq!(rules, vec![Rule::StageSet, Rule::StageSet]);
        assert!(r.violations.iter().all(|v| v.confirm(&inst, &bad)));
    }
}
