//! Random instances in the style of regional tournaments.
//!
//! A region has big and small schools. Each school nominates a random number
//! of teams and every team draws three distinct problems, weighted by how
//! popular the problem's class is.

mod batch;
mod profile;

pub use batch::{run_batch, BatchConfig, BatchReport, BatchRow};
pub use profile::{parse_profile, Distribution, PopularityClass, RegionProfile};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution as _;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{room_plan_for, Instance, Problem, RoomPolicy, Team};

/// Draws one team count per school and three problems per team.
pub fn sample_teams<R: Rng>(region: &RegionProfile, rng: &mut R) -> Vec<Team> {
    let mut teams = Vec::new();
    let schools = (0..region.big_schools)
        .map(|s| (format!("Big{}", school_letter(s)), &region.big_sizes))
        .chain((0..region.small_schools).map(|s| (format!("Small{}", school_letter(s)), &region.small_sizes)));
    for (school, sizes) in schools {
        let count = sizes.sample(rng);
        for t in 0..count {
            let id = if count == 1 {
                school.clone()
            } else {
                format!("{school}{}", t + 1)
            };
            teams.push(Team {
                id,
                school: school.clone(),
                portfolio: draw_portfolio(region, rng),
            });
        }
    }
    teams
}

fn school_letter(s: usize) -> String {
    let mut s = s;
    let mut out = Vec::new();
    loop {
        out.push(b'A' + (s % 26) as u8);
        if s < 26 {
            break;
        }
        s = s / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

/// One problem drawn by popularity weight.
pub fn draw_problem<R: Rng>(region: &RegionProfile, rng: &mut R) -> Problem {
    let weights = region.problem_weights();
    let dist = WeightedIndex::new(&weights).expect("positive weights");
    Problem::from_index(dist.sample(rng))
}

/// Three distinct problems, drawn one at a time with the chosen ones removed,
/// listed in increasing order.
pub fn draw_portfolio<R: Rng>(region: &RegionProfile, rng: &mut R) -> Vec<Problem> {
    let mut weights = region.problem_weights();
    let mut out = Vec::with_capacity(3);
    for _ in 0..3 {
        let dist = WeightedIndex::new(&weights).expect("at least three problems");
        let p = dist.sample(rng);
        weights[p] = 0.0;
        out.push(Problem::from_index(p));
    }
    out.sort_unstable();
    out
}

/// A random instance with the room plan of `policy`.
///
/// Fails with [`Error::NoRoomPlan`] when the sampled team count admits no
/// plan; `resample` instead keeps drawing from the same stream until one
/// does.
pub fn generate_instance(
    region: &RegionProfile,
    seed: u64,
    policy: RoomPolicy,
    resample: bool,
) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    loop {
        let teams = sample_teams(region, &mut rng);
        match room_plan_for(teams.len(), policy) {
            Ok(rooms) => return Instance::new(teams, region.problem_count(), rooms),
            Err(e) if !resample => return Err(e),
            Err(e) => {
                attempts += 1;
                if attempts >= 10_000 {
                    return Err(Error::Config(format!("no constructible team count sampled: {e}")));
                }
            }
        }
    }
}
