use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How rooms are sized for a given number of teams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RoomPolicy {
    /// `n mod 3` four-rooms, everything else three-rooms.
    International,
    /// As many four-rooms as possible, so the fewest rooms overall.
    MinRooms,
}

impl RoomPolicy {
    pub fn name(self) -> &'static str {
        match self {
            RoomPolicy::International => "international",
            RoomPolicy::MinRooms => "min-rooms",
        }
    }
}

impl fmt::Display for RoomPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RoomPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "international" => Ok(RoomPolicy::International),
            "min-rooms" | "min_rooms" => Ok(RoomPolicy::MinRooms),
            other => Err(Error::Config(format!("unknown room policy `{other}`"))),
        }
    }
}

/// Room sizes for `n` teams, four-rooms first.
pub fn room_plan_for(n: usize, policy: RoomPolicy) -> Result<Vec<usize>> {
    let err = Error::NoRoomPlan {
        teams: n,
        policy: policy.name(),
    };
    if n < 3 {
        return Err(err);
    }
    let fours = match policy {
        RoomPolicy::International => n % 3,
        RoomPolicy::MinRooms => (0..=n / 4)
            .rev()
            .find(|&a| (n - 4 * a) % 3 == 0)
            .ok_or(err.clone())?,
    };
    if 4 * fours > n {
        return Err(err);
    }
    let threes = (n - 4 * fours) / 3;
    let mut plan = vec![4; fours];
    plan.extend(std::iter::repeat_n(3, threes));
    Ok(plan)
}
