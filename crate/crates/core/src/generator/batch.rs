use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::generator::{generate_instance, RegionProfile};
use crate::model::{FairnessCriteria, RoomPolicy};
use crate::solver::{build_model, solve_with, SolveOptions, SolveStatus};

#[derive(Debug, Clone)]
pub struct BatchConfig {
    pub region: RegionProfile,
    pub count: usize,
    pub criteria: FairnessCriteria,
    pub policy: RoomPolicy,
    pub time_limit: Duration,
    /// Instance `i` is generated from `seed + i`.
    pub seed: u64,
    pub resample: bool,
    /// Instances solved at the same time.
    pub jobs: usize,
}

/// Outcome for one generated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchRow {
    pub index: usize,
    pub seed: u64,
    pub teams: usize,
    pub rooms: Vec<usize>,
    pub status: SolveStatus,
    pub time: Duration,
}

#[derive(Debug, Clone)]
pub struct BatchReport {
    pub criteria: FairnessCriteria,
    pub rows: Vec<BatchRow>,
}

/// Generates and solves `count` instances.
///
/// A sampled team count without a room plan is reported as infeasible
/// with zero time unless `resample` is set.
pub fn run_batch(config: &BatchConfig) -> Result<BatchReport> {
    if config.count == 0 {
        return Err(Error::Config("batch count must be at least 1".into()));
    }
    let next = AtomicUsize::new(0);
    let rows = Mutex::new(Vec::with_capacity(config.count));
    let first_error = Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..config.jobs.clamp(1, config.count) {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::SeqCst);
                if index >= config.count {
                    break;
                }
                match run_one(config, index) {
                    Ok(row) => rows.lock().expect("rows lock").push(row),
                    Err(e) => {
                        first_error.lock().expect("error lock").get_or_insert((index, e));
                    }
                }
            });
        }
    });
    if let Some((_, e)) = first_error.into_inner().expect("error lock") {
        return Err(e);
    }
    let mut rows = rows.into_inner().expect("rows lock");
    rows.sort_by_key(|r| r.index);
    Ok(BatchReport {
        criteria: config.criteria,
        rows,
    })
}

fn run_one(config: &BatchConfig, index: usize) -> Result<BatchRow> {
    let seed = config.seed.wrapping_add(index as u64);
    let instance = match generate_instance(&config.region, seed, config.policy, config.resample) {
        Ok(i) => i,
        Err(Error::NoRoomPlan { teams, .. }) => {
            log::info!("instance {index}: {teams} teams have no room plan");
            return Ok(BatchRow {
                index,
                seed,
                teams,
                rooms: Vec::new(),
                status: SolveStatus::Infeasible,
                time: Duration::ZERO,
            });
        }
        Err(e) => return Err(e),
    };
    let model = build_model(&instance, &config.criteria);
    let outcome = solve_with(
        &model,
        &SolveOptions {
            time_limit: config.time_limit,
            seed,
            ..SolveOptions::default()
        },
    )?;
    log::info!(
        "instance {index}: n={} {} in {:.2?}",
        instance.team_count(),
        outcome.status.name(),
        outcome.stats.wall_time
    );
    Ok(BatchRow {
        index,
        seed,
        teams: instance.team_count(),
        rooms: instance.rooms().to_vec(),
        status: outcome.status,
        time: outcome.stats.wall_time,
    })
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    Some(if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2.0
    })
}

impl BatchReport {
    pub fn count(&self) -> usize {
        self.rows.len()
    }

    pub fn tally(&self, status: SolveStatus) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    pub fn ratio(&self, status: SolveStatus) -> f64 {
        self.tally(status) as f64 / self.count() as f64
    }

    fn times(&self, status: SolveStatus) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.status == status)
            .map(|r| r.time.as_secs_f64())
            .collect()
    }

    /// Median solve time in seconds over instances with this status.
    pub fn median_time(&self, status: SolveStatus) -> Option<f64> {
        median(self.times(status))
    }

    pub fn max_time(&self, status: SolveStatus) -> Option<f64> {
        self.times(status).into_iter().max_by(f64::total_cmp)
    }

    fn label(&self) -> String {
        let mut parts = vec![self.criteria.fairness.to_string()];
        if self.criteria.non_cooperative {
            parts.push("non-coop".into());
        }
        parts.join("+")
    }

    /// One summary line: counts and ratios per status, then median and
    /// maximum time for feasible and infeasible instances.
    pub fn summary_csv(&self) -> String {
        let fmt_t = |t: Option<f64>| t.map(|t| format!("{t:.3}")).unwrap_or_default();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut record = vec![self.label()];
        for s in [SolveStatus::Satisfiable, SolveStatus::Infeasible, SolveStatus::Timeout] {
            record.push(self.tally(s).to_string());
            record.push(format!("{:.1}", 100.0 * self.ratio(s)));
        }
        for s in [SolveStatus::Satisfiable, SolveStatus::Infeasible] {
            record.push(fmt_t(self.median_time(s)));
            record.push(fmt_t(self.max_time(s)));
        }
        w.write_record([
            "criteria",
            "feasible",
            "feasible_pct",
            "infeasible",
            "infeasible_pct",
            "undecided",
            "undecided_pct",
            "feasible_median_s",
            "feasible_max_s",
            "infeasible_median_s",
            "infeasible_max_s",
        ])
        .and_then(|_| w.write_record(&record))
        .expect("in-memory write");
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    /// One line per instance.
    pub fn instances_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "seed", "teams", "rooms", "status", "time_s"])
            .expect("in-memory write");
        for r in &self.rows {
            let rooms: Vec<String> = r.rooms.iter().map(|x| x.to_string()).collect();
            w.write_record([
                r.index.to_string(),
                r.seed.to_string(),
                r.teams.to_string(),
                rooms.join(" "),
                r.status.name().to_string(),
                format!("{:.3}", r.time.as_secs_f64()),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn render_table(&self) -> String {
        let cell = |s: SolveStatus| {
            format!("{} ({:.0}%)", self.tally(s), 100.0 * self.ratio(s))
        };
        let time = |s: SolveStatus| match (self.median_time(s), self.max_time(s)) {
            (Some(m), Some(x)) => format!("{m:.2} / {x:.2}"),
            _ => "-".to_string(),
        };
        let header = [
            "criteria",
            "feasible",
            "infeasible",
            "undecided",
            "feasible s (med/max)",
            "infeasible s (med/max)",
        ];
        let row = [
            self.label(),
            cell(SolveStatus::Satisfiable),
            cell(SolveStatus::Infeasible),
            cell(SolveStatus::Timeout),
            time(SolveStatus::Satisfiable),
            time(SolveStatus::Infeasible),
        ];
        let widths: Vec<usize> = header
            .iter()
            .zip(&row)
            .map(|(h, r)| h.len().max(r.len()))
            .collect();
        let mut out = String::new();
        for line in [header.map(String::from).to_vec(), row.to_vec()] {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Fairness;

    fn config(count: usize) -> BatchConfig {
        BatchConfig {
            region: RegionProfile::bratislava(),
            count,
            criteria: FairnessCriteria::new(Fairness::None),
            policy: RoomPolicy::International,
            time_limit: Duration::from_secs(30),
            seed: 3,
            resample: false,
            jobs: 2,
        }
    }

    #[test]
    fn zero_count_rejected() {
        assert!(run_batch(&config(0)).is_err());
    }

    #[test]
    fn counts_sum_to_count() {
        let r = run_batch(&config(4)).unwrap();
        let total: usize = [SolveStatus::Satisfiable, SolveStatus::Infeasible, SolveStatus::Timeout]
            .iter()
            .map(|&s| r.tally(s))
            .sum();
        assert_eq!(total, 4);
        assert_eq!(r.summary_csv().lines().count(), 2);
        assert_eq!(r.instances_csv().lines().count(), 5);
    }
}
