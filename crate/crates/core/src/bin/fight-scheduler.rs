use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use fight_scheduler::coloring::{assign_order_fair, simple_schedule};
use fight_scheduler::generator::{generate_instance, parse_profile, run_batch, BatchConfig, RegionProfile};
use fight_scheduler::solver::{build_model, export_lp, solve_with, SolveOptions, SolveOutcome, SolveStatus};
use fight_scheduler::{
    audit, parse_instance, parse_schedule, render_instance, render_instance_json, render_schedule,
    room_plan_for, validate, Criterion, Fairness, FairnessCriteria, Instance, RoomPolicy,
    ScheduleFormat,
};

const EXIT_USAGE: u8 = 3;
const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(name = "fight-scheduler", version, about = "Builds and checks fair tournament schedules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a schedule meeting the requested criteria.
    Schedule {
        instance: PathBuf,
        #[command(flatten)]
        criteria: CriteriaArgs,
        #[command(flatten)]
        rooms: RoomArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Try strong, then fair, then weak fairness and keep the first that succeeds.
        #[arg(long)]
        best_effort: bool,
    },
    /// Check a schedule and list every violation found.
    Validate {
        instance: PathBuf,
        schedule: PathBuf,
        #[command(flatten)]
        criteria: CriteriaArgs,
        #[command(flatten)]
        rooms: RoomArgs,
    },
    /// Sample a random instance.
    Generate {
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "international")]
        policy: RoomPolicy,
        /// Redraw until the team count has a room plan.
        #[arg(long)]
        resample: bool,
        /// Write JSON instead of the line format.
        #[arg(long)]
        json: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate and solve a batch of random instances.
    Bench {
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[command(flatten)]
        criteria: CriteriaArgs,
        #[arg(long, default_value = "international")]
        policy: RoomPolicy,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        resample: bool,
        /// Summary CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Per-instance CSV.
        #[arg(long)]
        instances_csv: Option<PathBuf>,
    },
    /// Write the 0-1 model in LP format.
    ExportLp {
        instance: PathBuf,
        #[command(flatten)]
        criteria: CriteriaArgs,
        #[command(flatten)]
        rooms: RoomArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-assign stages so every team presents at three different stages.
    OrderFair {
        instance: PathBuf,
        schedule: PathBuf,
        #[command(flatten)]
        rooms: RoomArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build a schedule where every team stays in one room.
    Simple {
        instance: PathBuf,
        #[command(flatten)]
        rooms: RoomArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct CriteriaArgs {
    #[arg(long, group = "level")]
    fair: bool,
    /// Fairness in rounds 1 and 2 only.
    #[arg(long, group = "level")]
    weak: bool,
    /// No problem met twice in any role.
    #[arg(long, group = "level")]
    strong: bool,
    #[arg(long, group = "level")]
    no_fairness: bool,
    /// No two teams of one school in a Fight.
    #[arg(long)]
    non_coop: bool,
    #[arg(long)]
    order_fair: bool,
    /// Every team keeps its room in all rounds.
    #[arg(long)]
    simple: bool,
}

impl CriteriaArgs {
    /// Without a level or `--non-coop` the default is fair and non-cooperative.
    fn criteria(&self) -> FairnessCriteria {
        let level = if self.weak {
            Some(Fairness::Weak)
        } else if self.strong {
            Some(Fairness::Strong)
        } else if self.no_fairness {
            Some(Fairness::None)
        } else if self.fair {
            Some(Fairness::Fair)
        } else {
            None
        };
        let mut c = FairnessCriteria::new(level.unwrap_or(Fairness::Fair));
        c.non_cooperative = self.non_coop || level.is_none();
        c.order_fair = self.order_fair;
        c.simple = self.simple;
        c
    }

    fn explicit(&self) -> bool {
        self.fair || self.weak || self.strong || self.no_fairness || self.non_coop || self.order_fair || self.simple
    }
}

#[derive(Args)]
struct RoomArgs {
    /// Explicit room sizes, e.g. 4,4,4,3.
    #[arg(long, value_delimiter = ',', conflicts_with = "policy")]
    rooms: Option<Vec<usize>>,
    /// Derive the room plan from the team count.
    #[arg(long)]
    policy: Option<RoomPolicy>,
}

#[derive(Args)]
struct SearchArgs {
    /// Seconds before giving up.
    #[arg(long, default_value_t = 300.0)]
    time_limit: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Treat empty rooms of equal size as interchangeable.
    #[arg(long, default_value = "on", value_parser = parse_switch, action = clap::ArgAction::Set, value_name = "on|off")]
    symmetry_breaking: bool,
    /// Restart the search on a growing node budget.
    #[arg(long, default_value = "on", value_parser = parse_switch, action = clap::ArgAction::Set, value_name = "on|off")]
    restarts: bool,
    /// Parallel searches (schedule) or parallel instances (bench).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct OutputArgs {
    /// table, machine or json; table is for reading only and is the default on a terminal.
    #[arg(long)]
    format: Option<ScheduleFormat>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RegionArgs {
    /// bratislava or kosice.
    #[arg(long, default_value = "bratislava", conflicts_with = "profile")]
    region: String,
    /// Region profile file.
    #[arg(long)]
    profile: Option<PathBuf>,
}

fn parse_switch(s: &str) -> Result<bool, String> {
    match s {
        "on" | "true" | "yes" => Ok(true),
        "off" | "false" | "no" => Ok(false),
        _ => Err(format!("expected on or off, found `{s}`")),
    }
}

/// Error carrying its exit code.
struct Failure(u8, String);

impl From<fight_scheduler::Error> for Failure {
    fn from(e: fight_scheduler::Error) -> Self {
        Failure(EXIT_INPUT, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", p.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) just ends the output.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: stdout: {e}");
        }
    }
}

fn load_instance(path: &Path, rooms: &RoomArgs) -> CliResult<Instance> {
    let inst = parse_instance(&read(path)?)?;
    let plan = match (&rooms.rooms, rooms.policy) {
        (Some(r), _) => r.clone(),
        (None, Some(policy)) => room_plan_for(inst.team_count(), policy)?,
        (None, None) => return Ok(inst),
    };
    Ok(inst.with_rooms(plan)?)
}

fn load_region(args: &RegionArgs) -> CliResult<RegionProfile> {
    match &args.profile {
        Some(p) => Ok(parse_profile(&read(p)?)?),
        None => RegionProfile::by_name(&args.region)
            .ok_or_else(|| usage(format!("unknown region `{}`", args.region))),
    }
}

fn output_format(args: &OutputArgs) -> CliResult<ScheduleFormat> {
    match (args.format, &args.output) {
        (Some(ScheduleFormat::Table), Some(_)) => Err(usage(
            "table format is display-only; write files as machine or json",
        )),
        (Some(f), _) => Ok(f),
        (None, Some(_)) => Ok(ScheduleFormat::Machine),
        (None, None) => Ok(ScheduleFormat::Table),
    }
}

fn status_code(status: SolveStatus) -> u8 {
    match status {
        SolveStatus::Satisfiable => 0,
        SolveStatus::Infeasible => 1,
        SolveStatus::Timeout => 2,
    }
}

fn cmd_schedule(
    instance: &Instance,
    criteria: FairnessCriteria,
    search: &SearchArgs,
    output: &OutputArgs,
    best_effort: bool,
) -> CliResult<u8> {
    let format = output_format(output)?;
    if !(search.time_limit > 0.0 && search.time_limit.is_finite()) {
        return Err(usage("--time-limit must be positive"));
    }
    let options = SolveOptions {
        time_limit: Duration::from_secs_f64(search.time_limit),
        seed: search.seed,
        symmetry_breaking: search.symmetry_breaking,
        restarts: search.restarts,
        threads: search.jobs.max(1),
    };
    let ladder: Vec<FairnessCriteria> = if best_effort {
        [Fairness::Strong, Fairness::Fair, Fairness::Weak]
            .iter()
            .map(|&level| FairnessCriteria { fairness: level, ..criteria })
            .collect()
    } else {
        vec![criteria]
    };

    let mut last: Option<(FairnessCriteria, SolveOutcome)> = None;
    let mut timed_out = false;
    for c in ladder {
        let model = build_model(instance, &c);
        log::info!("{c}: {} variables, {} rows", model.var_count(), model.constraints().len());
        let outcome = solve_with(&model, &options)?;
        eprintln!(
            "{c}: {} ({} nodes, {:.3} s)",
            outcome.status.name(),
            outcome.stats.nodes,
            outcome.stats.wall_time.as_secs_f64()
        );
        timed_out |= outcome.status == SolveStatus::Timeout;
        let done = outcome.status == SolveStatus::Satisfiable;
        last = Some((c, outcome));
        if done {
            break;
        }
    }
    let (c, outcome) = last.expect("ladder is never empty");
    let Some(schedule) = &outcome.schedule else {
        let status = if timed_out { SolveStatus::Timeout } else { outcome.status };
        return Ok(status_code(status));
    };
    let report = validate(instance, schedule, &c);
    let footer = vec![format!("criteria: {c}"), format!("seed: {}", search.seed)];
    write_or_print(output.output.as_deref(), &render_schedule(instance, schedule, format, &footer))?;
    eprint!("{report}");
    if !report.passed() {
        return Err(Failure(EXIT_INPUT, "internal error: solver output failed validation".into()));
    }
    Ok(0)
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Schedule {
            instance,
            criteria,
            rooms,
            search,
            output,
            best_effort,
        } => {
            let inst = load_instance(&instance, &rooms)?;
            cmd_schedule(&inst, criteria.criteria(), &search, &output, best_effort)
        }
        Command::Validate {
            instance,
            schedule,
            criteria,
            rooms,
        } => {
            let inst = load_instance(&instance, &rooms)?;
            let sched = parse_schedule(&inst, &read(&schedule)?)?;
            let wanted = criteria.criteria();
            let full = audit(&inst, &sched);
            let mut text: String = full.lines(&inst).iter().map(|l| format!("{l}\n")).collect();
            let required = validate(&inst, &sched, &wanted);
            let ok = required.passed();
            text.push_str(&format!(
                "required ({}{wanted}): {}\n",
                if criteria.explicit() { "" } else { "default " },
                if ok { "pass" } else { "fail" }
            ));
            emit(&text);
            Ok(if ok { 0 } else { 1 })
        }
        Command::Generate {
            region,
            seed,
            policy,
            resample,
            json,
            output,
        } => {
            let region = load_region(&region)?;
            let inst = generate_instance(&region, seed, policy, resample)?;
            let text = if json {
                render_instance_json(&inst)
            } else {
                format!("# region {} seed {seed}\n{}", region.name, render_instance(&inst))
            };
            write_or_print(output.as_deref(), &text)?;
            Ok(0)
        }
        Command::Bench {
            region,
            count,
            criteria,
            policy,
            search,
            resample,
            csv,
            instances_csv,
        } => {
            let config = BatchConfig {
                region: load_region(&region)?,
                count,
                criteria: criteria.criteria(),
                policy,
                time_limit: Duration::from_secs_f64(search.time_limit),
                seed: search.seed,
                resample,
                jobs: search.jobs,
            };
            let report = run_batch(&config)?;
            emit(&report.render_table());
            if let Some(p) = csv {
                write_or_print(Some(&p), &report.summary_csv())?;
            }
            if let Some(p) = instances_csv {
                write_or_print(Some(&p), &report.instances_csv())?;
            }
            Ok(0)
        }
        Command::ExportLp {
            instance,
            criteria,
            rooms,
            output,
        } => {
            let inst = load_instance(&instance, &rooms)?;
            let model = build_model(&inst, &criteria.criteria());
            write_or_print(output.as_deref(), &export_lp(&model))?;
            Ok(0)
        }
        Command::OrderFair {
            instance,
            schedule,
            rooms,
            output,
        } => {
            let format = output_format(&output)?;
            let inst = load_instance(&instance, &rooms)?;
            let sched = parse_schedule(&inst, &read(&schedule)?)?;
            let fair = assign_order_fair(&inst, &sched)?;
            let report = audit(&inst, &fair);
            write_or_print(output.output.as_deref(), &render_schedule(&inst, &fair, format, &[]))?;
            Ok(if report.verdict(Criterion::OrderFair) == Some(true) { 0 } else { 1 })
        }
        Command::Simple {
            instance,
            rooms,
            output,
        } => {
            let format = output_format(&output)?;
            let inst = load_instance(&instance, &rooms)?;
            match simple_schedule(&inst) {
                Ok(s) => {
                    write_or_print(output.output.as_deref(), &render_schedule(&inst, &s, format, &[]))?;
                    Ok(0)
                }
                Err(reason) => {
                    eprintln!("no simple schedule: {reason}");
                    Ok(1)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FIGHT_SCHEDULER_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
