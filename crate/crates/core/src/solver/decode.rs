use crate::error::{Error, Result};
use crate::model::{Schedule, Slot, Stage, ROUNDS};
use crate::solver::model::ConstraintModel;

/// Turns a 0-1 assignment into a schedule.
///
/// Every (team, round) must have exactly one `x` set and the assignment must
/// satisfy all feasibility rows. Stages follow team index within each Fight.
pub fn decode(model: &ConstraintModel, assignment: &[bool]) -> Result<Schedule> {
    if assignment.len() < model.x_count() {
        return Err(Error::DimensionMismatch {
            expected: model.var_count(),
            found: assignment.len(),
        });
    }
    let instance = model.instance();
    let n = instance.team_count();
    let s = instance.room_count();
    let mut rounds: [Vec<Slot>; ROUNDS] = std::array::from_fn(|_| Vec::with_capacity(n));
    for (j, round) in rounds.iter_mut().enumerate() {
        for i in 0..n {
            let set: Vec<(usize, usize)> = (0..s)
                .flat_map(|k| (0..3).map(move |q| (k, q)))
                .filter(|&(k, q)| assignment[model.x(i, j, k, q)])
                .collect();
            let [(k, q)] = set.as_slice() else {
                return Err(Error::MalformedAssignment(format!(
                    "team {} has {} presentations in round {}",
                    instance.team(i).id,
                    set.len(),
                    j + 1
                )));
            };
            round.push(Slot {
                problem: instance.problem_at(i, *q),
                room: *k,
                stage: Stage::A,
            });
        }
    }
    let value = |v: usize| i32::from(assignment.get(v).copied().unwrap_or(false));
    if let Some(c) = model
        .constraints()
        .iter()
        .find(|c| c.tag.is_feasibility() && !c.is_satisfied(value))
    {
        return Err(Error::MalformedAssignment(format!(
            "violates {}{:?}",
            c.tag, c.index
        )));
    }
    Ok(Schedule::new(rounds)?.with_index_order_stages())
}
