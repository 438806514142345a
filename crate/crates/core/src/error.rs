use thiserror::Error;

/// Errors raised while reading or constructing instances and schedules.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("invalid JSON: {0}")]
    Json(String),

    #[error("team {team}: problem {problem} appears more than once in the portfolio")]
    DuplicateProblem { team: String, problem: u16 },

    #[error("team {team}: portfolio has {found} problems, expected 3")]
    PortfolioSize { team: String, found: usize },

    #[error("team {team}: problem {problem} is outside the universe 1..={universe}")]
    UnknownProblem {
        team: String,
        problem: u16,
        universe: u16,
    },

    #[error("room sizes sum to {rooms_total} but there are {teams} teams")]
    RoomPlanMismatch { rooms_total: usize, teams: usize },

    #[error("room size {0} is not 3 or 4")]
    BadRoomSize(usize),

    #[error("at least 3 teams are required, found {0}")]
    TooFewTeams(usize),

    #[error("header declares {declared} teams but {found} team lines follow")]
    TeamCountMismatch { declared: usize, found: usize },

    #[error("`{0}` is not a valid name: use a non-empty word without `#`")]
    BadName(String),

    #[error("duplicate team id {0}")]
    DuplicateTeam(String),

    #[error("unknown team id {0}")]
    UnknownTeam(String),

    #[error("no {{3,4}}-room plan exists for {teams} teams under the {policy} policy")]
    NoRoomPlan { teams: usize, policy: &'static str },

    #[error("schedule has no entry for team {team} in round {round}")]
    MissingEntry { team: String, round: usize },

    #[error("team {team} appears twice in round {round}")]
    DuplicateEntry { team: String, round: usize },

    #[error("schedule covers {found} teams, instance has {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed assignment: {0}")]
    MalformedAssignment(String),

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("schedule is not feasible: {0}")]
    Infeasible(String),

    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
