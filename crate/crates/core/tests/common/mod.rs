//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

pub mod lp;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use fight_scheduler::{parse_instance, parse_schedule, Fairness, Instance, Problem, Schedule, Team};

pub const BA2018: &str = include_str!("../../fixtures/ba2018.txt");
pub const BA2018_REAL: &str = include_str!("../../fixtures/ba2018_real.txt");
pub const BA2018_FAIR: &str = include_str!("../../fixtures/ba2018_fair.txt");
pub const BA2018_ORDER_FAIR: &str = include_str!("../../fixtures/ba2018_order_fair.txt");
pub const FIG2_SPECIAL: &str = include_str!("../../fixtures/special_profile.txt");

pub fn ba2018() -> Instance {
    parse_instance(BA2018).unwrap()
}

pub fn schedule(instance: &Instance, text: &str) -> Schedule {
    parse_schedule(instance, text).unwrap()
}

pub fn team(instance: &Instance, id: &str) -> usize {
    instance.team_index(id).unwrap_or_else(|| panic!("no team {id}"))
}

/// Builds an instance from portfolios; `schools[i]` names team `i`'s school.
pub fn instance(rooms: &[usize], problems: u16, portfolios: &[[u16; 3]], schools: &[usize]) -> Instance {
    let teams = portfolios
        .iter()
        .zip(schools)
        .enumerate()
        .map(|(i, (p, s))| Team {
            id: format!("t{}", i + 1),
            school: format!("s{s}"),
            portfolio: p.iter().map(|&x| Problem(x)).collect(),
        })
        .collect();
    Instance::new(teams, problems, rooms.to_vec()).unwrap()
}

/// Random portfolio of three distinct problems from `1..=m`.
pub fn random_portfolio<R: Rng>(rng: &mut R, m: u16) -> [u16; 3] {
    let all: Vec<u16> = (1..=m).collect();
    let picked: Vec<u16> = all.choose_multiple(rng, 3).copied().collect();
    [picked[0], picked[1], picked[2]]
}

/// Random instance with `n` teams spread over at most `schools` schools.
pub fn random_instance<R: Rng>(rng: &mut R, rooms: &[usize], m: u16, schools: usize) -> Instance {
    let n: usize = rooms.iter().sum();
    let portfolios: Vec<[u16; 3]> = (0..n).map(|_| random_portfolio(rng, m)).collect();
    let school_of: Vec<usize> = (0..n).map(|_| rng.random_range(0..schools)).collect();
    instance(rooms, m, &portfolios, &school_of)
}

/// All ways to split `teams` into groups of the given sizes, ignoring the
/// order of equally sized groups.
pub fn partitions(teams: &[usize], sizes: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn rec(rest: &[usize], sizes: &[usize], acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&size, more)) = sizes.split_first() else {
            out.push(acc.clone());
            return;
        };
        // The smallest remaining team goes into the next group.
        let (&first, others) = rest.split_first().expect("sizes add up");
        for combo in combinations(others, size - 1) {
            let mut group = vec![first];
            group.extend(&combo);
            let left: Vec<usize> = others.iter().copied().filter(|t| !combo.contains(t)).collect();
            acc.push(group);
            rec(&left, more, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(teams, sizes, &mut Vec::new(), &mut out);
    out
}

/// Like [`partitions`] but every group is labelled with its room.
pub fn labelled_partitions(teams: &[usize], sizes: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn rec(rest: &[usize], sizes: &[usize], acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&size, more)) = sizes.split_first() else {
            out.push(acc.clone());
            return;
        };
        for combo in combinations(rest, size) {
            let left: Vec<usize> = rest.iter().copied().filter(|t| !combo.contains(t)).collect();
            acc.push(combo);
            rec(&left, more, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(teams, sizes, &mut Vec::new(), &mut out);
    out
}

pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

pub const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Criteria checked by the brute-force oracle.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub fairness: Fairness,
    pub non_cooperative: bool,
    pub simple: bool,
}

/// Whether some schedule meets the criteria, by exhaustive enumeration of
/// every problem order per team and every room split per round.
pub fn brute_force_exists(inst: &Instance, want: Oracle) -> bool {
    let n = inst.team_count();
    let teams: Vec<usize> = (0..n).collect();
    let mut order = vec![0usize; n];
    let splits = if want.simple {
        labelled_partitions(&teams, inst.rooms())
    } else {
        partitions(&teams, inst.rooms())
    };
    let mut counter = vec![0usize; n];
    loop {
        for i in 0..n {
            order[i] = counter[i];
        }
        let presents = |i: usize, j: usize| inst.problem_at(i, PERMS[order[i]][j]);
        if orders_admit(inst, &splits, &presents, want) {
            return true;
        }
        // Next combination of per-team orders.
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            counter[i] += 1;
            if counter[i] < 6 {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}

fn group_ok(
    inst: &Instance,
    group: &[usize],
    round: usize,
    presents: &dyn Fn(usize, usize) -> Problem,
    want: Oracle,
) -> bool {
    for (x, &a) in group.iter().enumerate() {
        for &b in &group[x + 1..] {
            if presents(a, round) == presents(b, round) {
                return false;
            }
            if want.non_cooperative && inst.team(a).school == inst.team(b).school {
                return false;
            }
        }
    }
    let fair_round = match want.fairness {
        Fairness::Weak => round < 2,
        Fairness::Fair => true,
        _ => false,
    };
    if fair_round {
        for &watcher in group {
            for &presenter in group {
                if watcher != presenter && inst.portfolio(watcher).contains(&presents(presenter, round)) {
                    return false;
                }
            }
        }
    }
    true
}

fn orders_admit(
    inst: &Instance,
    splits: &[Vec<Vec<usize>>],
    presents: &dyn Fn(usize, usize) -> Problem,
    want: Oracle,
) -> bool {
    if want.simple {
        return splits.iter().any(|split| {
            let rounds = [split.clone(), split.clone(), split.clone()];
            (0..3).all(|j| split.iter().all(|g| group_ok(inst, g, j, presents, want)))
                && strong_ok(inst, &rounds, presents, want)
        });
    }
    let per_round: Vec<Vec<&Vec<Vec<usize>>>> = (0..3)
        .map(|j| {
            splits
                .iter()
                .filter(|split| split.iter().all(|g| group_ok(inst, g, j, presents, want)))
                .collect()
        })
        .collect();
    if want.fairness != Fairness::Strong {
        return per_round.iter().all(|r| !r.is_empty());
    }
    for a in &per_round[0] {
        for b in &per_round[1] {
            for c in &per_round[2] {
                let rounds = [(*a).clone(), (*b).clone(), (*c).clone()];
                if strong_ok(inst, &rounds, presents, want) {
                    return true;
                }
            }
        }
    }
    false
}

/// Every team meets each problem at most once over all its Fights.
fn strong_ok(
    inst: &Instance,
    rounds: &[Vec<Vec<usize>>; 3],
    presents: &dyn Fn(usize, usize) -> Problem,
    want: Oracle,
) -> bool {
    if want.fairness != Fairness::Strong {
        return true;
    }
    let n = inst.team_count();
    let m = usize::from(inst.problem_count());
    let mut seen = vec![vec![false; m]; n];
    for (j, split) in rounds.iter().enumerate() {
        for group in split {
            for &t in group {
                for &u in group {
                    let p = presents(u, j).index();
                    if std::mem::replace(&mut seen[t][p], true) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether a simple schedule exists: every room's team-problem graph can be
/// spread over three rounds without repeating a problem in a round.
pub fn brute_force_simple(inst: &Instance) -> bool {
    let teams: Vec<usize> = (0..inst.team_count()).collect();
    partitions(&teams, inst.rooms())
        .iter()
        .any(|split| split.iter().all(|g| room_schedulable(inst, g)))
}

pub fn room_schedulable(inst: &Instance, group: &[usize]) -> bool {
    let k = group.len();
    let mut counter = vec![0usize; k];
    loop {
        let ok = (0..3).all(|j| {
            let mut ps: Vec<Problem> = (0..k).map(|x| inst.problem_at(group[x], PERMS[counter[x]][j])).collect();
            ps.sort();
            ps.windows(2).all(|w| w[0] != w[1])
        });
        if ok {
            return true;
        }
        let mut i = 0;
        loop {
            if i == k {
                return false;
            }
            counter[i] += 1;
            if counter[i] < 6 {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}

/// Maximum matching size by trying every subset of left vertices' choices.
pub fn brute_force_matching(left: usize, edges: &[(usize, usize)]) -> usize {
    fn rec(u: usize, left: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
        if u == left {
            return 0;
        }
        let mut best = rec(u + 1, left, adj, used);
        for &v in &adj[u] {
            if !used[v] {
                used[v] = true;
                best = best.max(1 + rec(u + 1, left, adj, used));
                used[v] = false;
            }
        }
        best
    }
    let right = edges.iter().map(|e| e.1 + 1).max().unwrap_or(0);
    let mut adj = vec![Vec::new(); left];
    for &(u, v) in edges {
        adj[u].push(v);
    }
    rec(0, left, &adj, &mut vec![false; right])
}

/// Random simple bipartite graph with maximum degree at most `max_degree`.
pub fn random_bipartite<R: Rng>(rng: &mut R, max_degree: usize, max_edges: usize) -> (usize, usize, Vec<(usize, usize)>) {
    let left = rng.random_range(1..=12);
    let right = rng.random_range(1..=12);
    let mut pairs: Vec<(usize, usize)> = (0..left).flat_map(|u| (0..right).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let target = rng.random_range(1..=max_edges);
    let mut dl = vec![0; left];
    let mut dr = vec![0; right];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if edges.len() == target {
            break;
        }
        if dl[u] < max_degree && dr[v] < max_degree {
            dl[u] += 1;
            dr[v] += 1;
            edges.push((u, v));
        }
    }
    (left, right, edges)
}
