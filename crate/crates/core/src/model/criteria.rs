use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// How strictly teams must be kept away from presentations of their own problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fairness {
    None,
    /// Rounds 1 and 2 only.
    Weak,
    Fair,
    /// No problem is met twice in any role.
    Strong,
}

impl fmt::Display for Fairness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fairness::None => "none",
            Fairness::Weak => "weak",
            Fairness::Fair => "fair",
            Fairness::Strong => "strong",
        })
    }
}

impl FromStr for Fairness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "none" => Ok(Fairness::None),
            "weak" => Ok(Fairness::Weak),
            "fair" => Ok(Fairness::Fair),
            "strong" => Ok(Fairness::Strong),
            other => Err(Error::Config(format!("unknown fairness level `{other}`"))),
        }
    }
}

/// Requested combination of schedule properties on top of feasibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FairnessCriteria {
    pub non_cooperative: bool,
    pub order_fair: bool,
    /// Every team keeps one room for all rounds.
    pub simple: bool,
    pub fairness: Fairness,
}

impl FairnessCriteria {
    pub const NONE: FairnessCriteria = FairnessCriteria {
        non_cooperative: false,
        order_fair: false,
        simple: false,
        fairness: Fairness::None,
    };

    pub fn new(fairness: Fairness) -> Self {
        FairnessCriteria {
            fairness,
            ..Self::NONE
        }
    }

    pub fn non_cooperative(mut self) -> Self {
        self.non_cooperative = true;
        self
    }

    pub fn order_fair(mut self) -> Self {
        self.order_fair = true;
        self
    }

    pub fn simple(mut self) -> Self {
        self.simple = true;
        self
    }

    /// The checks `validate` runs for these criteria, feasibility first.
    pub fn checks(&self) -> Vec<Criterion> {
        let mut out = vec![Criterion::Feasible];
        if self.non_cooperative {
            out.push(Criterion::NonCooperative);
        }
        if self.order_fair {
            out.push(Criterion::OrderFair);
        }
        match self.fairness {
            Fairness::None => {}
            Fairness::Weak => out.push(Criterion::WeaklyFair),
            Fairness::Fair => out.push(Criterion::Fair),
            Fairness::Strong => out.push(Criterion::StronglyFair),
        }
        if self.simple {
            out.push(Criterion::Simple);
        }
        out
    }
}

impl Default for FairnessCriteria {
    fn default() -> Self {
        FairnessCriteria::new(Fairness::Fair).non_cooperative()
    }
}

impl fmt::Display for FairnessCriteria {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.checks().iter().map(|c| c.name()).collect();
        f.write_str(&names.join("+"))
    }
}

/// A verdict-bearing property of a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    Feasible,
    NonCooperative,
    OrderFair,
    WeaklyFair,
    Fair,
    StronglyFair,
    Simple,
}

impl Criterion {
    pub const ALL: [Criterion; 7] = [
        Criterion::Feasible,
        Criterion::NonCooperative,
        Criterion::OrderFair,
        Criterion::WeaklyFair,
        Criterion::Fair,
        Criterion::StronglyFair,
        Criterion::Simple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Feasible => "feasible",
            Criterion::NonCooperative => "non-cooperative",
            Criterion::OrderFair => "order-fair",
            Criterion::WeaklyFair => "weakly-fair",
            Criterion::Fair => "fair",
            Criterion::StronglyFair => "strongly-fair",
            Criterion::Simple => "simple",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
