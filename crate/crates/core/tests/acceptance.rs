//! Acceptance checks, one line per criterion.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::lp::parse_lp;
use common::*;
use fight_scheduler::coloring::*;
use fight_scheduler::generator::{run_batch, BatchConfig, RegionProfile};
use fight_scheduler::solver::*;
use fight_scheduler::*;

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// CLI run on the 2018 Bratislava instance with fairness and non-cooperation.
fn c1() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out_path = dir.path().join("schedule.txt");
    let inst_path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ba2018.txt");
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_fight-scheduler"))
        .args(["schedule", inst_path, "--fair", "--non-coop", "-o"])
        .arg(&out_path)
        .output()
        .map_err(|e| e.to_string())?;
    let took = started.elapsed();
    ensure(out.status.code() == Some(0), format!("exit {:?}", out.status.code()))?;
    ensure(took <= Duration::from_secs(300), format!("took {took:?}"))?;
    let inst = ba2018();
    let text = std::fs::read_to_string(&out_path).map_err(|e| e.to_string())?;
    let s = parse_schedule(&inst, &text).map_err(|e| e.to_string())?;
    let r = validate(&inst, &s, &FairnessCriteria::new(Fairness::Fair).non_cooperative());
    ensure(r.passed(), format!("output fails validation: {r}"))?;
    Ok(format!("exit 0 in {:.2}s, output validates", took.as_secs_f64()))
}

/// Audit of the published fair schedule.
fn c2() -> Check {
    let inst = ba2018();
    let s = schedule(&inst, BA2018_FAIR);
    let r = audit(&inst, &s);
    for (c, want) in [
        (Criterion::Feasible, true),
        (Criterion::Fair, true),
        (Criterion::NonCooperative, true),
        (Criterion::OrderFair, false),
        (Criterion::StronglyFair, false),
    ] {
        ensure(r.verdict(c) == Some(want), format!("{c} should be {want}"))?;
    }
    let lions = team(&inst, "Lions");
    let whales1 = team(&inst, "Whales1");
    ensure(
        r.witnesses(Criterion::OrderFair).any(|v| v.team == Some(lions) && v.stage == Some(Stage::A)),
        "no order-fair witness for Lions at stage A",
    )?;
    ensure(
        r.witnesses(Criterion::StronglyFair).any(|v| v.team == Some(whales1) && v.problem == Some(Problem(4))),
        "no strong witness for Whales1 meeting problem 4",
    )?;
    ensure(r.violations.iter().all(|v| v.confirm(&inst, &s)), "unsound witness")?;
    Ok("verdicts and witnesses as published".into())
}

/// Audit of the schedule actually used in 2018.
fn c3() -> Check {
    let inst = ba2018();
    let s = schedule(&inst, BA2018_REAL);
    let r = audit(&inst, &s);
    ensure(r.verdict(Criterion::Feasible) == Some(true), "not feasible")?;
    ensure(r.verdict(Criterion::Fair) == Some(false), "unexpectedly fair")?;
    let lions = team(&inst, "Lions");
    for (round, p, by) in [(0, 4, "Sharks1"), (1, 10, "Sharks2")] {
        let other = team(&inst, by);
        ensure(
            r.witnesses(Criterion::Fair).any(|v| {
                v.team == Some(lions) && v.round == round && v.problem == Some(Problem(p)) && v.other == Some(other)
            }),
            format!("missing witness: Lions, round {}, problem {p} via {by}", round + 1),
        )?;
    }
    ensure(r.violations.iter().all(|v| v.confirm(&inst, &s)), "unsound witness")?;
    Ok(format!("{} witnesses, all confirmed", r.violations.len()))
}

/// Order-fair stage assignment on random feasible schedules.
fn c4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut done = 0;
    let mut slowest = Duration::ZERO;
    let mut attempts = 0;
    while done < 200 {
        attempts += 1;
        ensure(attempts < 2000, "too few feasible instances")?;
        let n = rng.random_range(6..=20);
        let fours = n % 3 + 3 * rng.random_range(0..=(n / 12));
        if 4 * fours > n {
            continue;
        }
        let mut rooms = vec![4; fours];
        rooms.extend(std::iter::repeat_n(3, (n - 4 * fours) / 3));
        if rooms.iter().sum::<usize>() != n {
            continue;
        }
        rooms.shuffle(&mut rng);
        let inst = random_instance(&mut rng, &rooms, 17, 8);
        let out = solve(&build_model(&inst, &FairnessCriteria::NONE), Duration::from_secs(10), attempts)
            .map_err(|e| e.to_string())?;
        let Some(s) = out.schedule else { continue };
        let started = Instant::now();
        let of = assign_order_fair(&inst, &s).map_err(|e| format!("n={n} rooms={rooms:?}: {e}"))?;
        let took = started.elapsed();
        slowest = slowest.max(took);
        ensure(took < Duration::from_millis(10), format!("took {took:?} for n={n}"))?;
        let r = validate(&inst, &of, &FairnessCriteria::NONE.order_fair());
        ensure(r.passed(), format!("n={n}: {r}"))?;
        done += 1;
    }
    Ok(format!("{done} schedules, slowest {:.3} ms", slowest.as_secs_f64() * 1e3))
}

fn avoidance(inst: &Instance, need: usize) -> bool {
    inst.problems().filter(|&p| !inst.holders(p).is_empty()).all(|p| inst.avoiders(p) >= need)
}

/// Simple schedules against the avoidance condition and brute force.
fn c5() -> Check {
    let mut checked = 0;
    let mut simple = 0;
    for m in 3..=6u16 {
        let all: Vec<usize> = (1..=m as usize).collect();
        let triples: Vec<[u16; 3]> =
            combinations(&all, 3).iter().map(|c| [c[0] as u16, c[1] as u16, c[2] as u16]).collect();
        let t = triples.len();
        for a in 0..t {
            for b in a..t {
                for c in b..t {
                    for d in c..t {
                        let ps = [triples[a], triples[b], triples[c], triples[d]];
                        let inst = instance(&[4], m, &ps, &[0, 1, 2, 3]);
                        let built = simple_schedule(&inst);
                        let cond = avoidance(&inst, 1);
                        let brute = room_schedulable(&inst, &[0, 1, 2, 3]);
                        ensure(
                            built.is_ok() == cond && cond == brute,
                            format!("n=4 {ps:?}: built {:?} cond {cond} brute {brute}", built.is_ok()),
                        )?;
                        if let Ok(s) = built {
                            ensure(validate(&inst, &s, &FairnessCriteria::NONE.simple()).passed(), "invalid")?;
                            simple += 1;
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let m = rng.random_range(4..=9);
        let inst = random_instance(&mut rng, &[4, 3], m, 7);
        let built = simple_schedule(&inst);
        let cond = avoidance(&inst, 1);
        let brute = brute_force_simple(&inst);
        ensure(
            built.is_ok() == cond && cond == brute,
            format!("n=7: built {:?} cond {cond} brute {brute}\n{}", built.as_ref().err(), render_instance(&inst)),
        )?;
        if let Ok(s) = built {
            ensure(validate(&inst, &s, &FairnessCriteria::NONE.simple()).passed(), "invalid")?;
            simple += 1;
        }
        checked += 1;
    }
    Ok(format!("{checked} instances agree, {simple} admit a simple schedule"))
}

/// The special profile blocks simple schedules.
fn c6() -> Check {
    let inst = parse_instance(FIG2_SPECIAL).map_err(|e| e.to_string())?;
    ensure(is_special_profile(&inst).is_some(), "not detected")?;
    ensure(avoidance(&inst, 2), "avoidance should hold")?;
    ensure(simple_schedule(&inst) == Err(NoSimpleSchedule::SpecialProfile), "wrong result")?;
    ensure(!brute_force_simple(&inst), "brute force finds a simple schedule")?;
    Ok("detected, refused, brute force agrees".into())
}

/// Solver against exhaustive search on small instances.
fn c7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut runs = 0;
    for (rooms, count, m) in [(&[3][..], 40, 5u16), (&[4][..], 30, 6), (&[3, 3][..], 6, 8)] {
        for i in 0..count {
            let inst = random_instance(&mut rng, rooms, m, rooms.iter().sum::<usize>() - 1);
            for fairness in [Fairness::None, Fairness::Weak, Fairness::Fair, Fairness::Strong] {
                for non_cooperative in [false, true] {
                    let want = Oracle { fairness, non_cooperative, simple: false };
                    let mut c = FairnessCriteria::new(fairness);
                    c.non_cooperative = non_cooperative;
                    let out = solve(&build_model(&inst, &c), Duration::from_secs(60), i)
                        .map_err(|e| e.to_string())?;
                    let brute = brute_force_exists(&inst, want);
                    let ok = match out.status {
                        SolveStatus::Satisfiable => {
                            brute && validate(&inst, out.schedule.as_ref().unwrap(), &c).passed()
                        }
                        SolveStatus::Infeasible => !brute,
                        SolveStatus::Timeout => false,
                    };
                    ensure(ok, format!("{want:?}: solver {} vs brute {brute}", out.status.name()))?;
                    runs += 1;
                }
            }
        }
    }
    Ok(format!("{runs} solver runs agree"))
}

/// König colourings of random bipartite graphs.
fn c8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let delta = rng.random_range(1..=4);
        let (l, r, edges) = random_bipartite(&mut rng, delta, 40);
        let g = BipartiteGraph::new(l, r, edges).map_err(|e| e.to_string())?;
        let c = konig_edge_coloring(&g);
        ensure(c.is_proper(&g), "improper colouring")?;
        ensure(c.color_count == g.max_degree(), format!("{} colours for degree {}", c.color_count, g.max_degree()))?;
    }
    Ok("1000 proper colourings with max-degree colours".into())
}

/// Weakly fair non-cooperative schedules on generated Bratislava instances.
fn c9() -> Check {
    let config = BatchConfig {
        region: RegionProfile::bratislava(),
        count: 50,
        criteria: FairnessCriteria::new(Fairness::Weak).non_cooperative(),
        policy: RoomPolicy::International,
        time_limit: Duration::from_secs(300),
        seed: 0,
        resample: false,
        jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let report = run_batch(&config).map_err(|e| e.to_string())?;
    let ratio = report.ratio(SolveStatus::Satisfiable);
    ensure((0.5..=1.0).contains(&ratio), format!("feasible ratio {ratio:.2}"))?;
    Ok(format!(
        "feasible {:.0}%, infeasible {}, undecided {}",
        100.0 * ratio,
        report.tally(SolveStatus::Infeasible),
        report.tally(SolveStatus::Timeout)
    ))
}

/// LP export shape and stability.
fn c10() -> Check {
    let inst = ba2018();
    let mut rows = 0;
    for c in [
        FairnessCriteria::new(Fairness::Fair).non_cooperative(),
        FairnessCriteria::new(Fairness::Weak),
        FairnessCriteria::new(Fairness::Strong).non_cooperative(),
    ] {
        let model = build_model(&inst, &c);
        let text = export_lp(&model);
        let lp = parse_lp(&text)?;
        ensure(lp.rows.len() == model.constraints().len(), "row count differs")?;
        ensure(lp.binary.len() == model.x_count(), "binary count differs")?;
        ensure(lp.general.len() == model.y_count(), "general count differs")?;
        ensure(export_lp(&build_model(&inst, &c)) == text, "output not byte-stable")?;
        rows += lp.rows.len();
    }
    Ok(format!("{rows} rows parsed, output stable"))
}

fn main() -> ExitCode {
    let checks: [(&str, fn() -> Check); 10] = [
        ("CLI schedule of the 2018 Bratislava instance", c1),
        ("audit of the published fair schedule", c2),
        ("audit of the 2018 schedule", c3),
        ("order-fair stages on random schedules", c4),
        ("simple schedules vs avoidance and brute force", c5),
        ("special profile", c6),
        ("solver vs brute force", c7),
        ("König edge colouring", c8),
        ("generated Bratislava batch, weak and non-cooperative", c9),
        ("LP export", c10),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let id = format!("criterion {}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| id == *f || id.ends_with(&format!(" {f}"))) {
            continue;
        }
        let started = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("{id}: PASS  {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("{id}: FAIL  {name}: {why} ({secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
