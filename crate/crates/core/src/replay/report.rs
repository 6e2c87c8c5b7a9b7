//! Report records and their JSON and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::StepKind;
use crate::error::{Error, Result};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepStatus {
    Ok,
    Failed,
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub index: usize,
    pub name: String,
    pub kind: StepKind,
    pub status: StepStatus,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub side_conditions: Vec<String>,
    /// Present only in raw reports; stripped from the stable rendering.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// The final polynomial is univariate in `λ₁` and not identically zero.
    ForcesConstancy,
    /// Lemma pipelines: all fixtures matched and the contradiction was reached.
    LemmaEstablished,
    FixtureMismatch,
    Inconclusive,
}

impl Verdict {
    pub fn is_success(self) -> bool {
        matches!(self, Verdict::ForcesConstancy | Verdict::LemmaEstablished)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    /// Sampled values by symbol name; empty for a symbolic witness.
    pub point: BTreeMap<String, String>,
    /// Nonzero value at the point, or a nonzero coefficient for a direct
    /// certificate.
    pub value: String,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub pipeline: String,
    pub profile: String,
    pub verdict: Verdict,
    /// Canonical text, or a size summary for large polynomials.
    pub final_poly: Option<String>,
    pub witness: Option<WitnessRecord>,
    pub side_conditions: Vec<String>,
    /// Set when the chain's final polynomial is identically zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracy: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub message: String,
    pub resource: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub pipeline: String,
    pub profile: String,
    pub seed: u64,
    pub steps: Vec<StepRecord>,
    pub side_conditions: Vec<String>,
    pub fixtures_touched: Vec<String>,
    pub certificate: Certificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.certificate.verdict.is_success()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &StepRecord> {
        self.steps
            .iter()
            .filter(|s| s.status == StepStatus::Failed)
    }

    fn strip_timing(&mut self) {
        self.elapsed_ms = None;
        for s in &mut self.steps {
            s.elapsed_ms = None;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub seed: u64,
    pub residual_plan: (u32, u32),
    pub witness_plan: (u32, u32),
    pub max_terms: usize,
    pub runs: Vec<PipelineReport>,
    /// Fixtures no pipeline touched; only computed for full runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub untouched_fixtures: Option<Vec<String>>,
    pub exit_code: i32,
}

impl RunReport {
    /// JSON without timing fields; byte-identical across reruns.
    pub fn to_stable_json(&self) -> String {
        let mut r = self.clone();
        for p in &mut r.runs {
            p.strip_timing();
        }
        let mut s = serde_json::to_string_pretty(&r).expect("report serializes");
        s.push('\n');
        s
    }

    /// JSON including timings, for later rendering with `report`.
    pub fn to_raw_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: RunReport = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if r.schema != SCHEMA {
            return Err(Error::Config(format!("unsupported report schema {}", r.schema)));
        }
        Ok(r)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "polyreplay report (schema {}) seed={} residual=({}, {}) witness=({}, {}) max_terms={}",
            self.schema,
            self.seed,
            self.residual_plan.0,
            self.residual_plan.1,
            self.witness_plan.0,
            self.witness_plan.1,
            self.max_terms
        );
        let _ = writeln!(out, "runs: {}  exit: {}", self.runs.len(), self.exit_code);
        for r in &self.runs {
            render_pipeline(&mut out, r);
        }
        if let Some(missing) = &self.untouched_fixtures {
            if missing.is_empty() {
                let _ = writeln!(out, "\nfixture coverage: complete");
            } else {
                let _ = writeln!(out, "\nfixture coverage: {} untouched", missing.len());
                for id in missing {
                    let _ = writeln!(out, "  {id}");
                }
            }
        }
        out
    }
}

fn ms(v: Option<u64>) -> String {
    v.map(|m| format!("{m} ms")).unwrap_or_else(|| "-".into())
}

fn render_pipeline(out: &mut String, r: &PipelineReport) {
    let _ = writeln!(
        out,
        "\n== {} {} seed={} ({})",
        r.pipeline,
        r.profile,
        r.seed,
        ms(r.elapsed_ms)
    );
    for s in &r.steps {
        let mark = match s.status {
            StepStatus::Ok => "ok  ",
            StepStatus::Failed => "FAIL",
            StepStatus::Info => "info",
        };
        let mut line = format!(
            "  [{:>3}] {} {:<16} {}",
            s.index,
            mark,
            format!("{:?}", s.kind),
            s.name
        );
        if let Some(o) = &s.outcome {
            let _ = write!(line, "  -> {o}");
        }
        let _ = write!(line, "  ({})", ms(s.elapsed_ms));
        let _ = writeln!(out, "{line}");
        if let Some(d) = &s.detail {
            let _ = writeln!(out, "         {d}");
        }
        if let Some(o) = &s.output {
            if s.status == StepStatus::Failed || s.kind != StepKind::MatchFixture {
                let _ = writeln!(out, "         = {o}");
            }
        }
    }
    if !r.side_conditions.is_empty() {
        let _ = writeln!(out, "  side conditions:");
        for c in &r.side_conditions {
            let _ = writeln!(out, "    {c}");
        }
    }
    let c = &r.certificate;
    let _ = writeln!(out, "  verdict: {:?}", c.verdict);
    if let Some(f) = &c.final_poly {
        let _ = writeln!(out, "  final: {f}");
    }
    if let Some(w) = &c.witness {
        let pt: Vec<String> = w.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "  witness ({}): [{}] value {}", w.method, pt.join(", "), w.value);
    }
    if let Some(d) = &c.degeneracy {
        let _ = writeln!(out, "  degeneracy: {d}");
    }
    for n in &c.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    if let Some(e) = &r.error {
        let _ = writeln!(
            out,
            "  error{}: {}",
            if e.resource { " (resource guard)" } else { "" },
            e.message
        );
    }
}
