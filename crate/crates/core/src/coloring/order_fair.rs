use crate::coloring::edge_coloring::konig_edge_coloring;
use crate::coloring::graph::BipartiteGraph;
use crate::coloring::matching::max_matching;
use crate::error::{Error, Result};
use crate::model::{Instance, Schedule, Stage, ROUNDS};

/// Re-assigns presenter stages so that every team presents at three
/// different stages, keeping problems and rooms untouched.
///
/// Works on the team-Fight incidence graph: a matching covering all
/// four-team Fights receives stage D, and a 3-edge-colouring of the
/// remaining edges (every Fight then has degree 3) supplies A, B and C.
pub fn assign_order_fair(instance: &Instance, schedule: &Schedule) -> Result<Schedule> {
    let n = instance.team_count();
    let s = instance.room_count();
    if schedule.team_count() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: schedule.team_count(),
        });
    }
    for j in 0..ROUNDS {
        for k in 0..s {
            let size = schedule.fight(j, k).len();
            if size != instance.room_size(k) {
                return Err(Error::Infeasible(format!(
                    "round {} room {} hosts {size} teams, expected {}",
                    j + 1,
                    k + 1,
                    instance.room_size(k)
                )));
            }
        }
    }

    // Fight (j, k) is left vertex j * s + k; each incidence is one edge.
    let fight_of = |j: usize, t: usize| j * s + schedule.slot(j, t).room;
    let mut incidences: Vec<(usize, usize)> = (0..ROUNDS)
        .flat_map(|j| (0..n).map(move |t| (j, t)))
        .map(|(j, t)| (fight_of(j, t), t))
        .collect();
    incidences.sort_unstable();

    let four_fights: Vec<usize> = (0..ROUNDS * s)
        .filter(|&f| instance.room_size(f % s) == 4)
        .collect();
    let d_graph = BipartiteGraph::new(
        four_fights.len(),
        n,
        incidences
            .iter()
            .filter_map(|&(f, t)| four_fights.binary_search(&f).ok().map(|x| (x, t)))
            .collect(),
    )?;
    let m_d = max_matching(&d_graph);
    assert_eq!(
        m_d.len(),
        four_fights.len(),
        "Hall's condition guarantees a matching covering every 4-Fight"
    );
    let stage_d: Vec<(usize, usize)> = m_d
        .pairs
        .iter()
        .map(|&(x, t)| (four_fights[x], t))
        .collect();

    let rest: Vec<(usize, usize)> = incidences
        .iter()
        .copied()
        .filter(|e| !stage_d.contains(e))
        .collect();
    let rest_graph = BipartiteGraph::new(ROUNDS * s, n, rest)?;
    debug_assert!(rest_graph.max_degree() <= 3);
    let coloring = konig_edge_coloring(&rest_graph);

    let mut stages: [Vec<Stage>; ROUNDS] = std::array::from_fn(|_| vec![Stage::A; n]);
    for &(f, t) in &stage_d {
        stages[f / s][t] = Stage::D;
    }
    for (e, &(f, t)) in rest_graph.edges().iter().enumerate() {
        stages[f / s][t] = Stage::from_index(coloring.colors[e]).expect("three colours");
    }
    Ok(schedule.with_stages(stages))
}
