//! Pipeline registry, per-run certificates and the bounded worker pool.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::context::{summarize, Replay, ReplayConfig};
use super::fixtures::FixtureSet;
use super::report::{Certificate, ErrorRecord, PipelineReport, RunReport, StepStatus, Verdict, WitnessRecord, SCHEMA};
use super::{case1, case2, case3, lemma41, lemma42, StepKind};
use crate::error::{Error, Result};
use crate::oracle::{specialization_witness, SamplePlan, Tower};
use crate::poly::MultiPoly;
use crate::scenario::{CaseTag, Param, ScenarioProfile, Vocab};
use crate::symbol::{Symbol, SymbolTable};

/// What a pipeline body concludes, before bookkeeping.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub verdict: Verdict,
    pub final_poly: Option<String>,
    pub witness: Option<WitnessRecord>,
    pub degeneracy: Option<String>,
}

impl Outcome {
    pub fn inconclusive(final_poly: String) -> Self {
        Outcome {
            verdict: Verdict::Inconclusive,
            final_poly: Some(final_poly),
            witness: None,
            degeneracy: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PipelineName {
    Lemma41,
    Lemma42a,
    Lemma42b,
    Case1A,
    Case1B,
    Case2,
    Case3,
}

impl PipelineName {
    pub const ALL: [PipelineName; 7] = [
        PipelineName::Lemma41,
        PipelineName::Lemma42a,
        PipelineName::Lemma42b,
        PipelineName::Case1A,
        PipelineName::Case1B,
        PipelineName::Case2,
        PipelineName::Case3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PipelineName::Lemma41 => "lemma4_1",
            PipelineName::Lemma42a => "lemma4_2a",
            PipelineName::Lemma42b => "lemma4_2b",
            PipelineName::Case1A => "case1A",
            PipelineName::Case1B => "case1B",
            PipelineName::Case2 => "case2",
            PipelineName::Case3 => "case3",
        }
    }

    /// The curvature case each pipeline runs in.
    pub fn case(self) -> CaseTag {
        match self {
            PipelineName::Lemma41 | PipelineName::Lemma42a | PipelineName::Case1A => CaseTag::FourA,
            PipelineName::Lemma42b | PipelineName::Case1B => CaseTag::FourB,
            PipelineName::Case2 => CaseTag::Three,
            PipelineName::Case3 => CaseTag::Two,
        }
    }
}

impl fmt::Display for PipelineName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PipelineName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PipelineName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::UnknownProfile(format!("no pipeline named `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub pipeline: PipelineName,
    pub profile: ScenarioProfile,
}

/// FNV-1a over the run seed, pipeline and profile label.
pub fn mix_seed(seed: u64, pipeline: PipelineName, profile: &ScenarioProfile) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let label = profile.label();
    for b in seed
        .to_le_bytes()
        .iter()
        .chain(pipeline.as_str().as_bytes())
        .chain(label.as_bytes())
    {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn point_record(point: impl IntoIterator<Item = (Symbol, crate::poly::Rat)>, table: &SymbolTable) -> std::collections::BTreeMap<String, String> {
    point
        .into_iter()
        .map(|(s, x)| (table.name(s).to_string(), x.to_string()))
        .collect()
}

/// Nonvanishing of a resultant tower's final polynomial by specialization.
pub fn final_nonvanishing(
    tower: &Tower,
    survivor: Symbol,
    plan: &SamplePlan,
    table: &SymbolTable,
) -> Result<WitnessRecord> {
    let w = specialization_witness(tower, survivor, plan)?;
    Ok(WitnessRecord {
        point: point_record(w.point, table),
        value: w.value.to_string(),
        method: "specialization".into(),
    })
}

/// Nonvanishing of an explicit polynomial: its leading coefficient in
/// `survivor` is the certificate.
pub fn direct_witness(p: &MultiPoly, survivor: Symbol, v: &Vocab) -> Result<WitnessRecord> {
    if p.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let d = p.degree_in(survivor);
    let lc = p.coefficient(survivor, d as u16);
    Ok(WitnessRecord {
        point: Default::default(),
        value: format!("{} (degree {d})", summarize(&lc, v)),
        method: "direct".into(),
    })
}

/// Runs one pipeline. Errors only for a profile that does not fit the
/// pipeline; failures inside the chain are recorded in the report.
pub fn run_pipeline(
    name: PipelineName,
    profile: &ScenarioProfile,
    fixtures: &FixtureSet,
    v: &Vocab,
    cfg: &ReplayConfig,
) -> Result<PipelineReport> {
    profile.validate()?;
    if profile.case != name.case() {
        return Err(Error::InvalidProfile(format!(
            "{name} runs on {:?} profiles, got {}",
            name.case(),
            profile.label()
        )));
    }
    let seed = mix_seed(cfg.seed, name, profile);
    let mut local = cfg.clone();
    local.seed = seed;
    local.residual.seed = seed;
    local.witness.seed = seed.rotate_left(17);
    let mut rp = Replay::new(v, fixtures, profile.clone(), local);
    let res = match name {
        PipelineName::Lemma41 => lemma41::run(&mut rp),
        PipelineName::Lemma42a => lemma42::run_a(&mut rp),
        PipelineName::Lemma42b => lemma42::run_b(&mut rp),
        PipelineName::Case1A => case1::run_a(&mut rp),
        PipelineName::Case1B => case1::run_b(&mut rp),
        PipelineName::Case2 => case2::run(&mut rp),
        PipelineName::Case3 => case3::run(&mut rp),
    };
    let elapsed = rp.elapsed().as_millis() as u64;
    let parts = rp.into_parts();
    let mismatch = parts
        .steps
        .iter()
        .any(|s| s.status == StepStatus::Failed && s.kind == StepKind::MatchFixture);
    let failed = parts.steps.iter().any(|s| s.status == StepStatus::Failed);
    let (mut outcome, error) = match res {
        Ok(o) => (o, None),
        Err(e) => (
            Outcome {
                verdict: Verdict::Inconclusive,
                final_poly: None,
                witness: None,
                degeneracy: None,
            },
            Some(ErrorRecord {
                message: e.to_string(),
                resource: e.is_resource(),
            }),
        ),
    };
    if mismatch {
        outcome.verdict = Verdict::FixtureMismatch;
    } else if failed && outcome.verdict.is_success() {
        outcome.verdict = Verdict::Inconclusive;
    }
    Ok(PipelineReport {
        pipeline: name.to_string(),
        profile: profile.label(),
        seed,
        side_conditions: parts.conditions.clone(),
        fixtures_touched: parts.touched,
        certificate: Certificate {
            pipeline: name.to_string(),
            profile: profile.label(),
            verdict: outcome.verdict,
            final_poly: outcome.final_poly,
            witness: outcome.witness,
            side_conditions: parts.conditions,
            degeneracy: outcome.degeneracy,
            notes: parts.notes,
        },
        steps: parts.steps,
        error,
        elapsed_ms: Some(elapsed),
    })
}

/// The default verification set.
pub fn default_jobs() -> Vec<Job> {
    let mut jobs = vec![
        Job { pipeline: PipelineName::Lemma41, profile: ScenarioProfile::four(CaseTag::FourA) },
        Job { pipeline: PipelineName::Lemma42a, profile: ScenarioProfile::four(CaseTag::FourA) },
        Job { pipeline: PipelineName::Lemma42b, profile: ScenarioProfile::four(CaseTag::FourB) },
    ];
    for (name, case) in [(PipelineName::Case1A, CaseTag::FourA), (PipelineName::Case1B, CaseTag::FourB)] {
        jobs.push(Job { pipeline: name, profile: ScenarioProfile::four(case) });
        for pqr in [(1, 1, 1), (2, 1, 1), (1, 2, 3)] {
            for c in [-1, 0, 1] {
                jobs.push(Job { pipeline: name, profile: ScenarioProfile::four_concrete(case, pqr, c, 7) });
            }
        }
    }
    for p in [1, 2] {
        jobs.push(Job {
            pipeline: PipelineName::Case2,
            profile: ScenarioProfile::three(Param::Symbolic, Param::int(p), Param::Symbolic, Param::Symbolic),
        });
    }
    for (n, p) in [(5, 2), (6, 3)] {
        for c in [-1, 0, 1] {
            jobs.push(Job {
                pipeline: PipelineName::Case2,
                profile: ScenarioProfile::three(Param::int(n), Param::int(p), Param::int(c), Param::int(7)),
            });
        }
    }
    jobs.push(Job {
        pipeline: PipelineName::Case3,
        profile: ScenarioProfile::two(Param::Symbolic, Param::Symbolic, Param::int(7)),
    });
    jobs
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub report: RunReport,
    pub passed: usize,
    pub failed: usize,
    pub resource_errors: usize,
}

/// Runs `jobs` on at most `workers` threads; reports keep input order.
/// Fixture coverage is computed when `full` is set.
pub fn run_all(
    jobs: &[Job],
    fixtures: &FixtureSet,
    v: &Vocab,
    cfg: &ReplayConfig,
    workers: usize,
    full: bool,
) -> Result<RunSummary> {
    for j in jobs {
        j.profile.validate()?;
        if j.profile.case != j.pipeline.case() {
            return Err(Error::InvalidProfile(format!(
                "{} runs on {:?} profiles, got {}",
                j.pipeline,
                j.pipeline.case(),
                j.profile.label()
            )));
        }
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<PipelineReport>>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let workers = workers.clamp(1, jobs.len().max(1));
    std::thread::scope(|sc| {
        for _ in 0..workers {
            std::thread::Builder::new()
                .stack_size(64 << 20)
                .spawn_scoped(sc, || loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    if i >= jobs.len() {
                        break;
                    }
                    let r = run_pipeline(jobs[i].pipeline, &jobs[i].profile, fixtures, v, cfg);
                    *slots[i].lock().expect("slot lock") = Some(r);
                })
                .expect("spawn worker");
        }
    });
    let mut runs = Vec::with_capacity(jobs.len());
    for s in slots {
        runs.push(s.into_inner().expect("slot lock").expect("every job ran")?);
    }
    let untouched = full.then(|| {
        let touched: BTreeSet<&str> = runs
            .iter()
            .flat_map(|r| r.fixtures_touched.iter().map(String::as_str))
            .collect();
        fixtures
            .ids()
            .filter(|id| !touched.contains(id))
            .map(str::to_string)
            .collect::<Vec<_>>()
    });
    let passed = runs.iter().filter(|r| r.passed()).count();
    let resource_errors = runs
        .iter()
        .filter(|r| r.error.as_ref().is_some_and(|e| e.resource))
        .count();
    let failed = runs.len() - passed;
    let covered = untouched.as_ref().is_none_or(|u| u.is_empty());
    let exit_code = if resource_errors > 0 {
        3
    } else if failed > 0 || !covered {
        1
    } else {
        0
    };
    Ok(RunSummary {
        report: RunReport {
            schema: SCHEMA,
            seed: cfg.seed,
            residual_plan: (cfg.residual.bound, cfg.residual.trials),
            witness_plan: (cfg.witness.bound, cfg.witness.trials),
            max_terms: cfg.max_terms,
            runs,
            untouched_fixtures: untouched,
            exit_code,
        },
        passed,
        failed,
        resource_errors,
    })
}
