use std::fmt;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution as _;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::instance::{parse_list, parse_num, strip_comment};
use crate::model::Problem;

/// A finite distribution over team counts.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    pub outcomes: Vec<(usize, f64)>,
}

impl Distribution {
    pub fn new(outcomes: Vec<(usize, f64)>) -> Result<Self> {
        if outcomes.is_empty() || outcomes.iter().any(|&(_, p)| !(0.0..=1.0).contains(&p)) {
            return Err(Error::Config("probabilities must lie in [0, 1]".into()));
        }
        let total: f64 = outcomes.iter().map(|o| o.1).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Distribution { outcomes })
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        let dist = WeightedIndex::new(self.outcomes.iter().map(|o| o.1)).expect("valid distribution");
        self.outcomes[dist.sample(rng)].0
    }

    pub fn min(&self) -> usize {
        self.outcomes.iter().filter(|o| o.1 > 0.0).map(|o| o.0).min().unwrap_or(0)
    }

    pub fn max(&self) -> usize {
        self.outcomes.iter().filter(|o| o.1 > 0.0).map(|o| o.0).max().unwrap_or(0)
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.outcomes.iter().map(|(v, p)| format!("{v}:{p}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Problems sharing one selection weight.
#[derive(Debug, Clone, PartialEq)]
pub struct PopularityClass {
    pub problems: Vec<Problem>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionProfile {
    pub name: String,
    pub big_schools: usize,
    pub small_schools: usize,
    pub big_sizes: Distribution,
    pub small_sizes: Distribution,
    /// Low, medium and high popularity; together they cover `1..=m`.
    pub classes: Vec<PopularityClass>,
}

impl RegionProfile {
    fn standard(name: &str, big: usize, small: usize) -> Self {
        let class = |lo: u16, hi: u16, weight: f64| PopularityClass {
            problems: (lo..=hi).map(Problem).collect(),
            weight,
        };
        RegionProfile {
            name: name.to_string(),
            big_schools: big,
            small_schools: small,
            big_sizes: Distribution::new(vec![(2, 0.5), (3, 0.3), (4, 0.2)]).expect("valid"),
            small_sizes: Distribution::new(vec![(1, 0.75), (2, 0.25)]).expect("valid"),
            classes: vec![class(1, 8, 1.0), class(9, 14, 2.0), class(15, 17, 4.0)],
        }
    }

    /// Three big and three small schools.
    pub fn bratislava() -> Self {
        Self::standard("bratislava", 3, 3)
    }

    /// Two big and six small schools.
    pub fn kosice() -> Self {
        Self::standard("kosice", 2, 6)
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "bratislava" => Some(Self::bratislava()),
            "kosice" => Some(Self::kosice()),
            _ => None,
        }
    }

    pub fn problem_count(&self) -> u16 {
        self.classes.iter().map(|c| c.problems.len() as u16).sum()
    }

    /// Selection weight of every problem, indexed by `Problem::index`.
    pub fn problem_weights(&self) -> Vec<f64> {
        let mut w = vec![0.0; usize::from(self.problem_count())];
        for c in &self.classes {
            for p in &c.problems {
                w[p.index()] = c.weight;
            }
        }
        w
    }

    fn check(self) -> Result<Self> {
        let m = usize::from(self.problem_count());
        let mut seen = vec![false; m];
        for c in &self.classes {
            if c.weight.is_nan() || c.weight <= 0.0 {
                return Err(Error::Config("class weights must be positive".into()));
            }
            for p in &c.problems {
                if p.0 == 0 || p.index() >= m || std::mem::replace(&mut seen[p.index()], true) {
                    return Err(Error::Config(format!(
                        "popularity classes must partition problems 1..{m}; offending problem {p}"
                    )));
                }
            }
        }
        if m < 3 {
            return Err(Error::Config("need at least three problems".into()));
        }
        if self.big_schools + self.small_schools == 0 {
            return Err(Error::Config("region has no schools".into()));
        }
        if self.big_sizes.min() == 0 || self.small_sizes.min() == 0 {
            return Err(Error::Config("every school nominates at least one team".into()));
        }
        Ok(self)
    }
}

/// Reads `key=value` lines; omitted keys keep the Bratislava defaults.
///
/// Keys: `name`, `big-schools`, `small-schools`, `big-sizes` and
/// `small-sizes` as `count:probability` lists, `low`, `medium`, `high` as
/// problem lists or ranges (`1-8`), and `weights` for the three classes.
pub fn parse_profile(text: &str) -> Result<RegionProfile> {
    let mut profile = RegionProfile::bratislava();
    let mut weights: Vec<f64> = profile.classes.iter().map(|c| c.weight).collect();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| Error::Syntax {
            line: line_no,
            message,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| syntax(format!("expected key=value, found `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "name" => profile.name = value.to_string(),
            "big-schools" => profile.big_schools = parse_num(value, line_no)?,
            "small-schools" => profile.small_schools = parse_num(value, line_no)?,
            "big-sizes" => profile.big_sizes = parse_distribution(value, line_no)?,
            "small-sizes" => profile.small_sizes = parse_distribution(value, line_no)?,
            "low" | "medium" | "high" => {
                let idx = ["low", "medium", "high"].iter().position(|k| *k == key).expect("known");
                profile.classes[idx].problems = parse_problems(value, line_no)?;
            }
            "weights" => {
                weights = value
                    .split(',')
                    .map(|w| w.trim().parse::<f64>().map_err(|_| syntax(format!("bad weight `{w}`"))))
                    .collect::<Result<_>>()?;
                if weights.len() != 3 {
                    return Err(syntax("expected three weights".into()));
                }
            }
            other => return Err(syntax(format!("unknown key `{other}`"))),
        }
    }
    for (c, w) in profile.classes.iter_mut().zip(weights) {
        c.weight = w;
    }
    profile.check()
}

fn parse_distribution(value: &str, line: usize) -> Result<Distribution> {
    let outcomes = value
        .split(',')
        .map(|part| {
            let (v, p) = part.split_once(':').ok_or_else(|| Error::Syntax {
                line,
                message: format!("expected count:probability, found `{part}`"),
            })?;
            let p = p.trim().parse::<f64>().map_err(|_| Error::Syntax {
                line,
                message: format!("bad probability `{p}`"),
            })?;
            Ok((parse_num(v.trim(), line)?, p))
        })
        .collect::<Result<Vec<_>>>()?;
    Distribution::new(outcomes)
}

fn parse_problems(value: &str, line: usize) -> Result<Vec<Problem>> {
    if let Some((lo, hi)) = value.split_once('-') {
        let lo: u16 = parse_num(lo.trim(), line)?;
        let hi: u16 = parse_num(hi.trim(), line)?;
        return Ok((lo..=hi).map(Problem).collect());
    }
    Ok(parse_list(value, line)?.into_iter().map(|p| Problem(p as u16)).collect())
}

impl fmt::Display for RegionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name={}", self.name)?;
        writeln!(f, "big-schools={}", self.big_schools)?;
        writeln!(f, "small-schools={}", self.small_schools)?;
        writeln!(f, "big-sizes={}", self.big_sizes)?;
        writeln!(f, "small-sizes={}", self.small_sizes)?;
        for (key, c) in ["low", "medium", "high"].iter().zip(&self.classes) {
            let ps: Vec<String> = c.problems.iter().map(|p| p.to_string()).collect();
            writeln!(f, "{key}={}", ps.join(","))?;
        }
        let ws: Vec<String> = self.classes.iter().map(|c| c.weight.to_string()).collect();
        writeln!(f, "weights={}", ws.join(","))
    }
}
