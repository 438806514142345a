use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::rooms::{room_plan_for, RoomPolicy};

/// Default size of the published problem set.
pub const DEFAULT_PROBLEM_COUNT: u16 = 17;

/// A problem label, 1-based as in published problem sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Problem(pub u16);

impl Problem {
    /// Zero-based index into the problem universe.
    pub fn index(self) -> usize {
        usize::from(self.0) - 1
    }

    pub fn from_index(index: usize) -> Self {
        Problem(index as u16 + 1)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One participating team and the three problems it announced, in announcement order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Team {
    pub id: String,
    pub school: String,
    pub portfolio: Vec<Problem>,
}

/// A tournament instance: teams grouped into schools, their portfolios and the room plan.
///
/// Teams are addressed by their position in the input; positions inside a
/// portfolio are preserved, so `problem_at(i, q)` is the `q`-th announced
/// problem of team `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    teams: Vec<Team>,
    problem_count: u16,
    rooms: Vec<usize>,
    schools: Vec<Vec<usize>>,
    school_of: Vec<usize>,
    holders: Vec<Vec<(usize, usize)>>,
    index: HashMap<String, usize>,
}

impl Instance {
    pub fn new(teams: Vec<Team>, problem_count: u16, rooms: Vec<usize>) -> Result<Self> {
        if teams.len() < 3 {
            return Err(Error::TooFewTeams(teams.len()));
        }
        if let Some(&bad) = rooms.iter().find(|&&r| r != 3 && r != 4) {
            return Err(Error::BadRoomSize(bad));
        }
        let rooms_total: usize = rooms.iter().sum();
        if rooms_total != teams.len() {
            return Err(Error::RoomPlanMismatch {
                rooms_total,
                teams: teams.len(),
            });
        }

        let mut index = HashMap::new();
        let mut school_index: HashMap<&str, usize> = HashMap::new();
        let mut schools: Vec<Vec<usize>> = Vec::new();
        let mut school_of = Vec::with_capacity(teams.len());
        let mut holders = vec![Vec::new(); usize::from(problem_count)];

        for (i, team) in teams.iter().enumerate() {
            for name in [&team.id, &team.school] {
                if name.is_empty() || name.contains('#') || name.contains(char::is_whitespace) {
                    return Err(Error::BadName(name.clone()));
                }
            }
            if index.insert(team.id.clone(), i).is_some() {
                return Err(Error::DuplicateTeam(team.id.clone()));
            }
            if team.portfolio.len() != 3 {
                return Err(Error::PortfolioSize {
                    team: team.id.clone(),
                    found: team.portfolio.len(),
                });
            }
            for (q, &p) in team.portfolio.iter().enumerate() {
                if p.0 == 0 || p.0 > problem_count {
                    return Err(Error::UnknownProblem {
                        team: team.id.clone(),
                        problem: p.0,
                        universe: problem_count,
                    });
                }
                if team.portfolio[..q].contains(&p) {
                    return Err(Error::DuplicateProblem {
                        team: team.id.clone(),
                        problem: p.0,
                    });
                }
                holders[p.index()].push((i, q));
            }
            let next = schools.len();
            let s = *school_index.entry(team.school.as_str()).or_insert(next);
            if s == next {
                schools.push(Vec::new());
            }
            schools[s].push(i);
            school_of.push(s);
        }

        Ok(Instance {
            teams,
            problem_count,
            rooms,
            schools,
            school_of,
            holders,
            index,
        })
    }

    pub fn teams(&self) -> &[Team] {
        &self.teams
    }

    pub fn team(&self, i: usize) -> &Team {
        &self.teams[i]
    }

    pub fn team_count(&self) -> usize {
        self.teams.len()
    }

    pub fn team_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn problem_count(&self) -> u16 {
        self.problem_count
    }

    pub fn problems(&self) -> impl Iterator<Item = Problem> {
        (1..=self.problem_count).map(Problem)
    }

    pub fn rooms(&self) -> &[usize] {
        &self.rooms
    }

    pub fn room_count(&self) -> usize {
        self.rooms.len()
    }

    pub fn room_size(&self, k: usize) -> usize {
        self.rooms[k]
    }

    /// Same teams and portfolios, different room plan.
    pub fn with_rooms(&self, rooms: Vec<usize>) -> Result<Instance> {
        Instance::new(self.teams.clone(), self.problem_count, rooms)
    }

    pub fn portfolio(&self, i: usize) -> &[Problem] {
        &self.teams[i].portfolio
    }

    /// Problem at position `q` (0-based) of team `i`'s portfolio.
    pub fn problem_at(&self, i: usize, q: usize) -> Problem {
        self.teams[i].portfolio[q]
    }

    /// All `(team, position)` pairs whose portfolio contains `p`.
    pub fn holders(&self, p: Problem) -> &[(usize, usize)] {
        &self.holders[p.index()]
    }

    /// Whether `p` belongs to team `i`'s portfolio.
    pub fn holds(&self, i: usize, p: Problem) -> bool {
        self.teams[i].portfolio.contains(&p)
    }

    pub fn avoiders(&self, p: Problem) -> usize {
        self.team_count() - self.holders(p).len()
    }

    /// School groups in order of first appearance; each lists team indices.
    pub fn schools(&self) -> &[Vec<usize>] {
        &self.schools
    }

    pub fn school_of(&self, i: usize) -> usize {
        self.school_of[i]
    }

    pub fn same_school(&self, a: usize, b: usize) -> bool {
        self.school_of[a] == self.school_of[b]
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    teams: Vec<Team>,
    problems: u16,
    rooms: Vec<usize>,
}

/// Parses the line-oriented instance format, or its JSON mirror when the
/// text starts with `{`.
pub fn parse_instance(text: &str) -> Result<Instance> {
    if text.trim_start().starts_with('{') {
        let doc: InstanceJson =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        return Instance::new(doc.teams, doc.problems, doc.rooms);
    }

    let mut header: Option<(usize, u16, Option<Vec<usize>>)> = None;
    let mut teams = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if header.is_none() {
            header = Some(parse_header(line, line_no)?);
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 2 {
            return Err(Error::Syntax {
                line: line_no,
                message: "expected `id school p q r`".into(),
            });
        }
        let portfolio = fields[2..]
            .iter()
            .map(|f| parse_num::<u16>(f, line_no).map(Problem))
            .collect::<Result<Vec<_>>>()?;
        teams.push(Team {
            id: fields[0].to_string(),
            school: fields[1].to_string(),
            portfolio,
        });
    }

    let (declared, problems, rooms) = header.ok_or(Error::Syntax {
        line: 1,
        message: "missing header `teams=<n> problems=<m> [rooms=<s1,s2,...>]`".into(),
    })?;
    if declared != teams.len() {
        return Err(Error::TeamCountMismatch {
            declared,
            found: teams.len(),
        });
    }
    let rooms = match rooms {
        Some(r) => r,
        None => room_plan_for(teams.len(), RoomPolicy::International)?,
    };
    Instance::new(teams, problems, rooms)
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, u16, Option<Vec<usize>>)> {
    let mut teams = None;
    let mut problems = None;
    let mut rooms = None;
    for token in line.split_whitespace() {
        let (key, value) = token.split_once('=').ok_or_else(|| Error::Syntax {
            line: line_no,
            message: format!("expected key=value, found `{token}`"),
        })?;
        match key {
            "teams" => teams = Some(parse_num::<usize>(value, line_no)?),
            "problems" => problems = Some(parse_num::<u16>(value, line_no)?),
            "rooms" => rooms = Some(parse_list(value, line_no)?),
            _ => {
                return Err(Error::Syntax {
                    line: line_no,
                    message: format!("unknown header key `{key}`"),
                })
            }
        }
    }
    let missing = |what: &str| Error::Syntax {
        line: line_no,
        message: format!("header is missing `{what}=`"),
    };
    Ok((
        teams.ok_or_else(|| missing("teams"))?,
        problems.ok_or_else(|| missing("problems"))?,
        rooms,
    ))
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}

pub(crate) fn parse_num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse().map_err(|_| Error::Syntax {
        line,
        message: format!("`{s}` is not a valid number"),
    })
}

pub(crate) fn parse_list(s: &str, line: usize) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| parse_num(t.trim(), line))
        .collect()
}

/// Serializes an instance to the line-oriented format.
pub fn render_instance(instance: &Instance) -> String {
    let rooms: Vec<String> = instance.rooms().iter().map(|r| r.to_string()).collect();
    let mut out = format!(
        "teams={} problems={} rooms={}\n",
        instance.team_count(),
        instance.problem_count(),
        rooms.join(",")
    );
    for team in instance.teams() {
        out.push_str(&team.id);
        out.push(' ');
        out.push_str(&team.school);
        for p in &team.portfolio {
            out.push_str(&format!(" {p}"));
        }
        out.push('\n');
    }
    out
}

pub fn render_instance_json(instance: &Instance) -> String {
    let doc = InstanceJson {
        teams: instance.teams().to_vec(),
        problems: instance.problem_count(),
        rooms: instance.rooms().to_vec(),
    };
    serde_json::to_string_pretty(&doc).expect("instance serializes")
}
