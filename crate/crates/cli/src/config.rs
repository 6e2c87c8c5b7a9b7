//! Run configuration: file format, flag overrides and job expansion.

use std::time::Duration;

use polyreplay::replay::ReplayConfig;
use polyreplay::{
    default_jobs, rat, CaseTag, Error, Job, Param, PipelineName, Rat, Result, SamplePlan,
    ScenarioProfile, DEFAULT_TERM_LIMIT,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// A parameter as written in a config file: an integer, a rational
/// string such as `"3/2"`, or `null` / a name for symbolic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamText {
    Int(i64),
    Text(String),
}

impl ParamText {
    fn to_param(opt: &Option<ParamText>) -> Result<Param> {
        match opt {
            None => Ok(Param::Symbolic),
            Some(ParamText::Int(k)) => Ok(Param::int(*k)),
            Some(ParamText::Text(t)) => parse_param(t),
        }
    }
}

/// `3`, `-1`, `3/2` are values; an identifier keeps the parameter symbolic.
pub fn parse_param(text: &str) -> Result<Param> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Config("empty parameter".into()));
    }
    if t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && t.starts_with(|c: char| c.is_ascii_alphabetic()) {
        return Ok(Param::Symbolic);
    }
    let bad = || Error::Config(format!("`{t}` is neither a rational number nor a name"));
    let r = match t.split_once('/') {
        Some((a, b)) => {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            Rat::new(a.into(), b.into())
        }
        None => rat(t.parse::<i64>().map_err(|_| bad())?),
    };
    Ok(Param::Value(r))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileText {
    #[serde(default)]
    pub multiplicities: Option<Vec<Option<ParamText>>>,
    #[serde(default)]
    pub c: Option<ParamText>,
    #[serde(default)]
    pub beta: Option<ParamText>,
    #[serde(default)]
    pub n: Option<ParamText>,
}

impl ProfileText {
    /// The profile this text describes for `pipeline`; omitted
    /// multiplicities are symbolic.
    pub fn for_pipeline(&self, pipeline: PipelineName) -> Result<ScenarioProfile> {
        let case = pipeline.case();
        let ms = match &self.multiplicities {
            Some(ms) => ms.iter().map(ParamText::to_param).collect::<Result<Vec<_>>>()?,
            None => {
                let arity = match case {
                    CaseTag::FourA | CaseTag::FourB => 3,
                    CaseTag::Three => 1,
                    CaseTag::Two => 0,
                };
                vec![Param::Symbolic; arity]
            }
        };
        let c = ParamText::to_param(&self.c)?;
        let beta = ParamText::to_param(&self.beta)?;
        let n = ParamText::to_param(&self.n)?;
        let profile = ScenarioProfile {
            case,
            multiplicities: ms,
            c,
            beta,
            n,
        };
        profile.validate()?;
        Ok(profile)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanText {
    pub bound: u32,
    pub trials: u32,
}

/// The run-configuration file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Pipeline names, or `["all"]`.
    #[serde(default = "all")]
    pub pipelines: Vec<String>,
    /// Empty means the default profiles of each pipeline.
    #[serde(default)]
    pub profiles: Vec<ProfileText>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub residual: Option<PlanText>,
    #[serde(default)]
    pub witness: Option<PlanText>,
    #[serde(default)]
    pub output: OutputFormat,
    #[serde(default = "default_terms")]
    pub max_terms: usize,
    #[serde(default)]
    pub budget_secs: Option<u64>,
    #[serde(default)]
    pub workers: Option<usize>,
}

fn all() -> Vec<String> {
    vec!["all".into()]
}

fn default_seed() -> u64 {
    ReplayConfig::default().seed
}

fn default_terms() -> usize {
    DEFAULT_TERM_LIMIT
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            pipelines: all(),
            profiles: Vec::new(),
            seed: default_seed(),
            residual: None,
            witness: None,
            output: OutputFormat::Text,
            max_terms: default_terms(),
            budget_secs: None,
            workers: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn check(&self) -> Result<()> {
        if self.pipelines.is_empty() {
            return Err(Error::Config("at least one pipeline is required".into()));
        }
        if self.budget_secs == Some(0) {
            return Err(Error::Config("budget must be positive".into()));
        }
        if self.max_terms == 0 {
            return Err(Error::Config("term limit must be positive".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("at least one worker is required".into()));
        }
        for p in [self.residual, self.witness].into_iter().flatten() {
            SamplePlan::new(0, p.bound, p.trials)?;
        }
        self.pipeline_names()?;
        Ok(())
    }

    /// `None` for the full default set.
    pub fn pipeline_names(&self) -> Result<Option<Vec<PipelineName>>> {
        if self.pipelines.iter().any(|p| p == "all") {
            if self.pipelines.len() > 1 {
                return Err(Error::Config("`all` cannot be combined with other pipelines".into()));
            }
            return Ok(None);
        }
        let mut out: Vec<PipelineName> = Vec::new();
        for p in &self.pipelines {
            let name: PipelineName = p.parse()?;
            if !out.contains(&name) {
                out.push(name);
            }
        }
        Ok(Some(out))
    }

    /// Whether this is the default full verification (coverage is checked).
    pub fn is_full(&self) -> Result<bool> {
        Ok(self.pipeline_names()?.is_none() && self.profiles.is_empty())
    }

    pub fn jobs(&self) -> Result<Vec<Job>> {
        let names = self.pipeline_names()?;
        if self.profiles.is_empty() {
            let defaults = default_jobs();
            return Ok(match names {
                None => defaults,
                Some(names) => names
                    .iter()
                    .flat_map(|n| defaults.iter().filter(move |j| j.pipeline == *n).cloned())
                    .collect(),
            });
        }
        let names = names.unwrap_or_else(|| PipelineName::ALL.to_vec());
        let mut jobs = Vec::new();
        for n in &names {
            for p in &self.profiles {
                jobs.push(Job {
                    pipeline: *n,
                    profile: p.for_pipeline(*n)?,
                });
            }
        }
        Ok(jobs)
    }

    pub fn replay_config(&self) -> ReplayConfig {
        let mut cfg = ReplayConfig::with_seed(self.seed);
        if let Some(p) = self.residual {
            cfg.residual.bound = p.bound;
            cfg.residual.trials = p.trials;
        }
        if let Some(p) = self.witness {
            cfg.witness.bound = p.bound;
            cfg.witness.trials = p.trials;
        }
        cfg.max_terms = self.max_terms;
        cfg.budget = self.budget_secs.map(Duration::from_secs);
        cfg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params() {
        assert_eq!(parse_param("3").unwrap(), Param::int(3));
        assert_eq!(parse_param("-1").unwrap(), Param::int(-1));
        assert_eq!(parse_param("3/2").unwrap(), Param::Value(Rat::new(3.into(), 2.into())));
        assert_eq!(parse_param("p").unwrap(), Param::Symbolic);
        assert!(parse_param("1/0").is_err());
        assert!(parse_param("2x").is_err());
    }

    #[test]
    fn file_round_trip() {
        let text = r#"{
            "pipelines": ["case1A"],
            "profiles": [{"multiplicities": [1, 2, 3], "c": -1, "beta": "7"}],
            "seed": 5,
            "witness": {"bound": 30, "trials": 8},
            "output": "json"
        }"#;
        let cfg = RunConfig::from_json(text).unwrap();
        let jobs = cfg.jobs().unwrap();
        assert_eq!(jobs.len(), 1);
        assert_eq!(jobs[0].profile.label(), "FourA(1,2,3; c=-1, beta=7)");
        assert_eq!(cfg.replay_config().witness.trials, 8);
        let again = RunConfig::from_json(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(RunConfig::from_json(r#"{"pipelines": []}"#).is_err());
        assert!(RunConfig::from_json(r#"{"budget_secs": 0}"#).is_err());
        assert!(RunConfig::from_json(r#"{"pipelines": ["all", "case3"]}"#).is_err());
        assert!(RunConfig::from_json(r#"{"pipelines": ["case9"]}"#).is_err());
        assert!(RunConfig::from_json(r#"{"colour": 1}"#).is_err());
    }

    #[test]
    fn default_is_full() {
        let cfg = RunConfig::default();
        assert!(cfg.is_full().unwrap());
        assert_eq!(cfg.jobs().unwrap(), default_jobs());
    }
}
