use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::instance::{parse_num, strip_comment, Instance, Problem};

pub const ROUNDS: usize = 3;

/// Presenter stage inside a Fight: A presents first, D (four-rooms only) last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Stage {
    A,
    B,
    C,
    D,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::A, Stage::B, Stage::C, Stage::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Stage> {
        Stage::ALL.get(i).copied()
    }

    pub fn letter(self) -> char {
        (b'A' + self as u8) as char
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" => Ok(Stage::A),
            "B" => Ok(Stage::B),
            "C" => Ok(Stage::C),
            "D" => Ok(Stage::D),
            other => Err(format!("`{other}` is not a stage label (A-D)")),
        }
    }
}

/// What one team does in one round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slot {
    pub problem: Problem,
    /// Zero-based room index.
    pub room: usize,
    pub stage: Stage,
}

/// Problems, rooms and stages of every team in each of the three rounds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schedule {
    rounds: [Vec<Slot>; ROUNDS],
}

impl Schedule {
    /// `rounds[j][i]` is the slot of team `i` in round `j`.
    pub fn new(rounds: [Vec<Slot>; ROUNDS]) -> Result<Self> {
        let n = rounds[0].len();
        if let Some(r) = rounds.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        Ok(Schedule { rounds })
    }

    pub fn team_count(&self) -> usize {
        self.rounds[0].len()
    }

    pub fn slot(&self, round: usize, team: usize) -> &Slot {
        &self.rounds[round][team]
    }

    pub fn round(&self, round: usize) -> &[Slot] {
        &self.rounds[round]
    }

    /// Teams in room `room` during `round`, ordered by team index.
    pub fn fight(&self, round: usize, room: usize) -> Vec<usize> {
        self.rounds[round]
            .iter()
            .enumerate()
            .filter(|(_, s)| s.room == room)
            .map(|(i, _)| i)
            .collect()
    }

    /// Teams of a Fight ordered by stage.
    pub fn fight_by_stage(&self, round: usize, room: usize) -> Vec<usize> {
        let mut teams = self.fight(round, room);
        teams.sort_by_key(|&t| (self.rounds[round][t].stage, t));
        teams
    }

    /// Same problems and rooms, stages replaced.
    pub fn with_stages(&self, stages: [Vec<Stage>; ROUNDS]) -> Schedule {
        let mut rounds = self.rounds.clone();
        for (round, stages) in rounds.iter_mut().zip(stages) {
            for (slot, stage) in round.iter_mut().zip(stages) {
                slot.stage = stage;
            }
        }
        Schedule { rounds }
    }

    /// Stages by increasing team index within each Fight.
    pub fn with_index_order_stages(&self) -> Schedule {
        let mut rounds = self.rounds.clone();
        for round in rounds.iter_mut() {
            let mut seen: Vec<usize> = Vec::new();
            for slot in round.iter_mut() {
                if slot.room >= seen.len() {
                    seen.resize(slot.room + 1, 0);
                }
                slot.stage = Stage::from_index(seen[slot.room]).unwrap_or(Stage::D);
                seen[slot.room] += 1;
            }
        }
        Schedule { rounds }
    }
}

/// Output layout for [`render_schedule`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleFormat {
    /// Grid per round, one column per room, stage rows A-D.
    Table,
    /// `round room stage team problem` lines.
    Machine,
    Json,
}

impl FromStr for ScheduleFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(ScheduleFormat::Table),
            "machine" => Ok(ScheduleFormat::Machine),
            "json" => Ok(ScheduleFormat::Json),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct EntryJson {
    round: usize,
    room: usize,
    stage: Stage,
    team: String,
    problem: Problem,
}

#[derive(Debug, Serialize, Deserialize)]
struct ScheduleJson {
    entries: Vec<EntryJson>,
}

fn entries(instance: &Instance, schedule: &Schedule) -> Vec<EntryJson> {
    let mut out = Vec::with_capacity(ROUNDS * schedule.team_count());
    for j in 0..ROUNDS {
        let mut teams: Vec<usize> = (0..schedule.team_count()).collect();
        teams.sort_by_key(|&t| {
            let s = schedule.slot(j, t);
            (s.room, s.stage, t)
        });
        for t in teams {
            let s = schedule.slot(j, t);
            out.push(EntryJson {
                round: j + 1,
                room: s.room + 1,
                stage: s.stage,
                team: instance.team(t).id.clone(),
                problem: s.problem,
            });
        }
    }
    out
}

/// Renders a schedule. `footer` lines are appended as `#` comments in the
/// machine format and verbatim below the table format; JSON ignores them.
pub fn render_schedule(
    instance: &Instance,
    schedule: &Schedule,
    format: ScheduleFormat,
    footer: &[String],
) -> String {
    match format {
        ScheduleFormat::Machine => {
            let mut out = String::from("# round room stage team problem\n");
            for e in entries(instance, schedule) {
                let _ = writeln!(out, "{} {} {} {} {}", e.round, e.room, e.stage, e.team, e.problem);
            }
            for line in footer {
                let _ = writeln!(out, "# {line}");
            }
            out
        }
        ScheduleFormat::Json => {
            let doc = ScheduleJson {
                entries: entries(instance, schedule),
            };
            serde_json::to_string_pretty(&doc).expect("schedule serializes")
        }
        ScheduleFormat::Table => {
            let mut out = render_table(instance, schedule);
            for line in footer {
                out.push_str(line);
                out.push('\n');
            }
            out
        }
    }
}

fn render_table(instance: &Instance, schedule: &Schedule) -> String {
    let width = instance
        .teams()
        .iter()
        .map(|t| t.id.len())
        .max()
        .unwrap_or(4)
        .max(4);
    let cell = width + 5;
    let mut out = String::new();
    for j in 0..ROUNDS {
        let _ = write!(out, "Round {:<3}", j + 1);
        for k in 0..instance.room_count() {
            let _ = write!(out, "| {:<cell$}", format!("Room {}", k + 1));
        }
        out.push('\n');
        let fights: Vec<Vec<usize>> = (0..instance.room_count())
            .map(|k| schedule.fight_by_stage(j, k))
            .collect();
        let rows = fights.iter().map(Vec::len).max().unwrap_or(0);
        for row in 0..rows {
            let label = fights
                .iter()
                .filter_map(|f| f.get(row))
                .map(|&t| schedule.slot(j, t).stage.letter())
                .next()
                .unwrap_or(' ');
            let _ = write!(out, "  {label:<7}");
            for fight in &fights {
                match fight.get(row) {
                    Some(&t) => {
                        let s = schedule.slot(j, t);
                        let _ = write!(
                            out,
                            "| {:<width$} {:>3} ",
                            instance.team(t).id,
                            s.problem.0
                        );
                    }
                    None => {
                        let _ = write!(out, "| {:<cell$}", "");
                    }
                }
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

/// Parses the machine format (or its JSON mirror) against an instance.
pub fn parse_schedule(instance: &Instance, text: &str) -> Result<Schedule> {
    let items: Vec<(usize, EntryJson)> = if text.trim_start().starts_with('{') {
        let doc: ScheduleJson =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        doc.entries.into_iter().map(|e| (0, e)).collect()
    } else {
        let mut items = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 5 {
                return Err(Error::Syntax {
                    line: line_no,
                    message: "expected `round room stage team problem`".into(),
                });
            }
            let stage = f[2].parse::<Stage>().map_err(|message| Error::Syntax {
                line: line_no,
                message,
            })?;
            items.push((
                line_no,
                EntryJson {
                    round: parse_num(f[0], line_no)?,
                    room: parse_num(f[1], line_no)?,
                    stage,
                    team: f[3].to_string(),
                    problem: Problem(parse_num(f[4], line_no)?),
                },
            ));
        }
        items
    };

    let n = instance.team_count();
    let mut rounds: [Vec<Option<Slot>>; ROUNDS] = std::array::from_fn(|_| vec![None; n]);
    for (line, e) in items {
        let bad = |message: String| Error::Syntax { line, message };
        if !(1..=ROUNDS).contains(&e.round) {
            return Err(bad(format!("round {} is not in 1..=3", e.round)));
        }
        if !(1..=instance.room_count()).contains(&e.room) {
            return Err(bad(format!(
                "room {} is not in 1..={}",
                e.room,
                instance.room_count()
            )));
        }
        if e.problem.0 == 0 || e.problem.0 > instance.problem_count() {
            return Err(bad(format!("problem {} is outside the universe", e.problem)));
        }
        let t = instance
            .team_index(&e.team)
            .ok_or_else(|| Error::UnknownTeam(e.team.clone()))?;
        let cell = &mut rounds[e.round - 1][t];
        if cell.is_some() {
            return Err(Error::DuplicateEntry {
                team: e.team,
                round: e.round,
            });
        }
        *cell = Some(Slot {
            problem: e.problem,
            room: e.room - 1,
            stage: e.stage,
        });
    }

    let mut out: [Vec<Slot>; ROUNDS] = Default::default();
    for (j, round) in rounds.into_iter().enumerate() {
        for (t, slot) in round.into_iter().enumerate() {
            out[j].push(slot.ok_or_else(|| Error::MissingEntry {
                team: instance.team(t).id.clone(),
                round: j + 1,
            })?);
        }
    }
    Schedule::new(out)
}
