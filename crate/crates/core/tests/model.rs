mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use fight_scheduler::solver::{build_model, solve, SolveStatus};
use fight_scheduler::*;

#[test]
fn ba2018_portfolios() {
    let inst = ba2018();
    assert_eq!(inst.team_count(), 13);
    assert_eq!(inst.rooms(), &[3, 3, 3, 4]);
    let p = |id: &str| inst.portfolio(team(&inst, id)).iter().map(|p| p.0).collect::<Vec<_>>();
    assert_eq!(p("Sharks1"), [4, 6, 14]);
    assert_eq!(p("Lions"), [4, 9, 10]);
    assert_eq!(inst.schools().len(), 7);
}

#[test]
fn instance_round_trips_through_both_formats() {
    let inst = ba2018();
    assert_eq!(parse_instance(&render_instance(&inst)).unwrap(), inst);
    assert_eq!(parse_instance(&render_instance_json(&inst)).unwrap(), inst);
}

#[test]
fn missing_rooms_default_to_international_plan() {
    let text = BA2018.replace(" rooms=3,3,3,4", "");
    let inst = parse_instance(&text).unwrap();
    assert_eq!(inst.rooms(), &[4, 3, 3, 3]);
}

#[test]
fn malformed_instances_are_rejected() {
    for (text, what) in [
        ("teams=3 problems=17 rooms=3\na s 1 2 2\nb t 4 5 6\nc u 7 8 9\n", "duplicate"),
        ("teams=3 problems=17 rooms=3\na s 1 2\nb t 4 5 6\nc u 7 8 9\n", "size"),
        ("teams=3 problems=5 rooms=3\na s 1 2 9\nb t 1 2 3\nc u 1 2 3\n", "universe"),
        ("teams=3 problems=17 rooms=4\na s 1 2 3\nb t 4 5 6\nc u 7 8 9\n", "plan"),
        ("teams=4 problems=17 rooms=3\na s 1 2 3\nb t 4 5 6\nc u 7 8 9\n", "count"),
        ("teams=3 problems=17 rooms=3\na s 1 2 3\na t 4 5 6\nc u 7 8 9\n", "duplicate team"),
        ("teams=3 problems=17 rooms=3\na s x 2 3\nb t 4 5 6\nc u 7 8 9\n", "number"),
    ] {
        assert!(parse_instance(text).is_err(), "{what} accepted");
    }
}

#[test]
fn schedules_round_trip_in_machine_and_json() {
    let inst = ba2018();
    let s = schedule(&inst, BA2018_FAIR);
    for format in [ScheduleFormat::Machine, ScheduleFormat::Json] {
        let text = render_schedule(&inst, &s, format, &[]);
        assert_eq!(parse_schedule(&inst, &text).unwrap(), s);
    }
}

#[test]
fn schedule_parse_errors() {
    let inst = ba2018();
    let missing: String = BA2018_FAIR.lines().filter(|l| !l.starts_with("3 ")).collect::<Vec<_>>().join("\n");
    assert!(parse_schedule(&inst, &missing).is_err());
    let dup = format!("{BA2018_FAIR}1 1 A Sharks1 6\n");
    assert!(parse_schedule(&inst, &dup).is_err());
    let unknown = BA2018_FAIR.replace("Sharks1", "Sharks9");
    assert!(parse_schedule(&inst, &unknown).is_err());
    let stage = BA2018_FAIR.replacen(" A ", " E ", 1);
    assert!(parse_schedule(&inst, &stage).is_err());
}

#[test]
fn table4_verdicts() {
    let inst = ba2018();
    let r = audit(&inst, &schedule(&inst, BA2018_FAIR));
    assert_eq!(r.verdict(Criterion::Feasible), Some(true));
    assert_eq!(r.verdict(Criterion::NonCooperative), Some(true));
    assert_eq!(r.verdict(Criterion::WeaklyFair), Some(true));
    assert_eq!(r.verdict(Criterion::Fair), Some(true));
    assert_eq!(r.verdict(Criterion::OrderFair), Some(false));
    assert_eq!(r.verdict(Criterion::StronglyFair), Some(false));
}

#[test]
fn order_fair_table_verdicts() {
    let inst = ba2018();
    let r = audit(&inst, &schedule(&inst, BA2018_ORDER_FAIR));
    for c in [Criterion::Feasible, Criterion::NonCooperative, Criterion::OrderFair, Criterion::Fair] {
        assert_eq!(r.verdict(c), Some(true), "{c}");
    }
    assert_eq!(r.verdict(Criterion::StronglyFair), Some(false));
}

#[test]
fn stage_d_in_three_room_is_a_violation() {
    let inst = ba2018();
    let text = BA2018_FAIR.replace("1 1 C Bears2 9", "1 1 D Bears2 9");
    let r = audit(&inst, &schedule(&inst, &text));
    assert_eq!(r.verdict(Criterion::Feasible), Some(false));
    assert!(r.violations.iter().any(|v| v.rule == Rule::StageSet && v.round == 0 && v.room == 0));
}

#[test]
fn every_witness_replays() {
    let inst = ba2018();
    for text in [BA2018_REAL, BA2018_FAIR, BA2018_ORDER_FAIR] {
        let s = schedule(&inst, text);
        let r = audit(&inst, &s);
        for v in &r.violations {
            assert!(v.confirm(&inst, &s), "{}", v.describe(&inst));
        }
    }
}

fn solved(seed: u64, criteria: FairnessCriteria) -> Option<(Instance, Schedule)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rooms: &[&[usize]] = &[&[3, 3], &[4, 3], &[3, 3, 3], &[4, 4], &[4, 3, 3]];
    let plan = rooms[(seed % rooms.len() as u64) as usize];
    let inst = random_instance(&mut rng, plan, 12, 4);
    let out = solve(&build_model(&inst, &criteria), std::time::Duration::from_secs(20), seed).unwrap();
    out.schedule.map(|s| (inst, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Strong implies fair implies weak, on feasible schedules.
    #[test]
    fn fairness_hierarchy(seed in 0u64..10_000) {
        if let Some((inst, s)) = solved(seed, FairnessCriteria::NONE) {
            let r = audit(&inst, &s);
            prop_assert_eq!(r.verdict(Criterion::Feasible), Some(true));
            let strong = r.verdict(Criterion::StronglyFair).unwrap();
            let fair = r.verdict(Criterion::Fair).unwrap();
            let weak = r.verdict(Criterion::WeaklyFair).unwrap();
            prop_assert!(!strong || fair);
            prop_assert!(!fair || weak);
            for v in &r.violations {
                prop_assert!(v.confirm(&inst, &s));
            }
        }
    }

    /// Rendering then parsing gives back the same schedule.
    #[test]
    fn machine_round_trip(seed in 0u64..10_000) {
        if let Some((inst, s)) = solved(seed, FairnessCriteria::NONE) {
            let text = render_schedule(&inst, &s, ScheduleFormat::Machine, &["note".into()]);
            prop_assert_eq!(parse_schedule(&inst, &text).unwrap(), s);
        }
    }

    /// Any validator output is unchanged by re-running it.
    #[test]
    fn audit_is_deterministic(seed in 0u64..10_000) {
        if let Some((inst, s)) = solved(seed, FairnessCriteria::NONE) {
            prop_assert_eq!(audit(&inst, &s), audit(&inst, &s));
        }
    }
}

#[test]
fn solver_hierarchy_on_random_instances() {
    // A strongly fair answer is also fair, and any infeasible weak instance
    // is infeasible for stronger levels.
    for seed in 0..30 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng, &[3, 3], 8, 6);
        let status = |f| {
            solve(&build_model(&inst, &FairnessCriteria::new(f)), std::time::Duration::from_secs(20), 0)
                .unwrap()
                .status
        };
        let [weak, fair, strong] = [Fairness::Weak, Fairness::Fair, Fairness::Strong].map(status);
        if weak == SolveStatus::Infeasible {
            assert_eq!(fair, SolveStatus::Infeasible);
        }
        if fair == SolveStatus::Infeasible {
            assert_eq!(strong, SolveStatus::Infeasible);
        }
    }
}
