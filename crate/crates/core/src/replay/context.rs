//! Step recording, fixture matching and guards for one pipeline run.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use super::fixtures::{match_poly, FixtureSet, MatchOutcome};
use super::report::{StepRecord, StepStatus};
use super::StepKind;
use crate::elimination::{clear_denominators, resultant_with_limit, sylvester_matrix, SideCondition};
use crate::rational_expr::RationalExpr;
use crate::symbol::Symbol;
use crate::error::{Error, Result};
use crate::oracle::SamplePlan;
use crate::poly::{MultiPoly, DEFAULT_TERM_LIMIT};
use crate::scenario::{CaseTag, ScenarioProfile, Vocab};

#[derive(Debug, Clone)]
pub struct ReplayConfig {
    pub seed: u64,
    pub residual: SamplePlan,
    pub witness: SamplePlan,
    pub max_terms: usize,
    /// Wall-clock budget per pipeline, checked between steps.
    pub budget: Option<Duration>,
}

impl ReplayConfig {
    pub fn with_seed(seed: u64) -> Self {
        ReplayConfig {
            seed,
            residual: SamplePlan::residual(seed),
            witness: SamplePlan::witness(seed),
            max_terms: DEFAULT_TERM_LIMIT,
            budget: None,
        }
    }
}

impl Default for ReplayConfig {
    fn default() -> Self {
        Self::with_seed(20_240_917)
    }
}

/// Short, deterministic description of a polynomial for reports.
pub(crate) fn summarize(p: &MultiPoly, v: &Vocab) -> String {
    if p.len() <= 12 {
        p.to_text(&v.table)
    } else {
        format!(
            "<{} terms, total degree {}>",
            p.len(),
            p.total_degree().unwrap_or(0)
        )
    }
}

pub struct Replay<'a> {
    pub v: &'a Vocab,
    pub fixtures: &'a FixtureSet,
    pub profile: ScenarioProfile,
    pub cfg: ReplayConfig,
    steps: Vec<StepRecord>,
    conditions: Vec<String>,
    touched: BTreeSet<String>,
    notes: Vec<String>,
    start: Instant,
}

impl<'a> Replay<'a> {
    pub fn new(
        v: &'a Vocab,
        fixtures: &'a FixtureSet,
        profile: ScenarioProfile,
        cfg: ReplayConfig,
    ) -> Self {
        Replay {
            v,
            fixtures,
            profile,
            cfg,
            steps: Vec::new(),
            conditions: Vec::new(),
            touched: BTreeSet::new(),
            notes: Vec::new(),
            start: Instant::now(),
        }
    }

    /// Parses built-in text and instantiates the profile's parameters.
    pub fn p(&self, text: &str) -> MultiPoly {
        self.sp(&self.v.poly(text))
    }

    /// Instantiates the profile; for four curvatures a symbolic `n` becomes
    /// `p + q + r + 1`.
    pub fn sp(&self, e: &MultiPoly) -> MultiPoly {
        let out = self.profile.specialize(self.v, e);
        match self.profile.case {
            CaseTag::FourA | CaseTag::FourB if out.contains(self.v.n) => {
                let n = self.profile.specialize(self.v, &self.v.poly("p + q + r + 1"));
                out.substitute(self.v.n, &n)
            }
            _ => out,
        }
    }

    pub fn limit(&self) -> usize {
        self.cfg.max_terms
    }

    fn guard(&self, name: &str) -> Result<()> {
        if let Some(b) = self.cfg.budget {
            if self.start.elapsed() > b {
                return Err(Error::Budget {
                    step: name.to_string(),
                    secs: b.as_secs(),
                });
            }
        }
        Ok(())
    }

    fn push(&mut self, name: &str, kind: StepKind, status: StepStatus) -> &mut StepRecord {
        let index = self.steps.len();
        self.steps.push(StepRecord {
            index,
            name: name.to_string(),
            kind,
            status,
            inputs: Vec::new(),
            fixture: None,
            outcome: None,
            output: None,
            detail: None,
            side_conditions: Vec::new(),
            elapsed_ms: None,
        });
        self.steps.last_mut().expect("just pushed")
    }

    /// Runs one computational step and records it.
    pub fn step(
        &mut self,
        name: &str,
        kind: StepKind,
        inputs: &[&str],
        f: impl FnOnce() -> Result<MultiPoly>,
    ) -> Result<MultiPoly> {
        self.guard(name)?;
        let t = Instant::now();
        let limit = self.cfg.max_terms;
        let res = f().and_then(|p| {
            if p.len() > limit {
                Err(Error::TermLimit {
                    step: name.to_string(),
                    terms: p.len(),
                    limit,
                })
            } else {
                Ok(p)
            }
        });
        let elapsed = t.elapsed().as_millis() as u64;
        let index = self.steps.len();
        let v = self.v;
        let rec = self.push(name, kind, StepStatus::Ok);
        rec.inputs = inputs.iter().map(|s| s.to_string()).collect();
        rec.elapsed_ms = Some(elapsed);
        match res {
            Ok(p) => {
                rec.output = Some(summarize(&p, v));
                Ok(p)
            }
            Err(e) => {
                rec.status = StepStatus::Failed;
                rec.detail = Some(e.to_string());
                Err(match e {
                    Error::TermLimit { terms, limit, .. } => Error::TermLimit {
                        step: name.to_string(),
                        terms,
                        limit,
                    },
                    e if e.is_resource() => e,
                    e => Error::StepFailure {
                        index,
                        name: name.to_string(),
                        msg: e.to_string(),
                    },
                })
            }
        }
    }

    /// Attaches a nonvanishing assumption to the last step and the ledger.
    pub fn assume(&mut self, expr: &MultiPoly, reason: &str) {
        let Some(sc) = SideCondition::new(expr.clone(), reason) else {
            return;
        };
        let text = if sc.expr.len() > 12 {
            format!("{} != 0  [{}]", summarize(&sc.expr, self.v), sc.reason)
        } else {
            sc.to_text(&self.v.table)
        };
        if let Some(last) = self.steps.last_mut() {
            if !last.side_conditions.contains(&text) {
                last.side_conditions.push(text.clone());
            }
        }
        if !self.conditions.contains(&text) {
            self.conditions.push(text);
        }
    }

    pub fn assume_all(&mut self, conds: &[SideCondition]) {
        for c in conds {
            self.assume(&c.expr, &c.reason);
        }
    }

    /// Divides `e` by the product of `factors`, assuming each nonzero.
    pub fn cancel(
        &mut self,
        name: &str,
        e: &MultiPoly,
        factors: &[MultiPoly],
        reason: &str,
    ) -> Result<MultiPoly> {
        let prod = factors.iter().fold(MultiPoly::one(), |a, f| a.mul(f));
        let out = self.step(name, StepKind::CancelFactor, &[], || e.exact_divide(&prod))?;
        for f in factors {
            self.assume(f, reason);
        }
        Ok(out)
    }

    /// Step producing a rational expression whose denominator is cleared
    /// and assumed nonzero.
    pub fn clear(
        &mut self,
        name: &str,
        inputs: &[&str],
        f: impl FnOnce() -> Result<RationalExpr>,
    ) -> Result<MultiPoly> {
        let mut cond = None;
        let out = self.step(name, StepKind::ClearDenominators, inputs, || {
            let (num, c) = clear_denominators(&f()?);
            cond = c;
            Ok(num)
        })?;
        if let Some(c) = cond {
            self.assume(&c.expr, &c.reason);
        }
        Ok(out)
    }

    /// `Res_x(f, g)` under the term guard; leading coefficients are logged.
    pub fn resultant(
        &mut self,
        name: &str,
        inputs: &[&str],
        f: &MultiPoly,
        g: &MultiPoly,
        x: Symbol,
    ) -> Result<MultiPoly> {
        let limit = self.limit();
        let mut conds = Vec::new();
        let out = self.step(name, StepKind::Resultant, inputs, || {
            conds = sylvester_matrix(f, g, x)?.side_conditions;
            resultant_with_limit(f, g, x, limit)
        })?;
        self.assume_all(&conds);
        Ok(out)
    }

    /// Premise transcribed from its display; checked against the fixture.
    pub fn premise(&mut self, id: &str, text: &str) -> Result<MultiPoly> {
        let e = self.p(text);
        self.matches(id, &e)?;
        Ok(e)
    }

    /// Compares `e` with a fixture instantiated at the profile.
    pub fn matches(&mut self, id: &str, e: &MultiPoly) -> Result<MatchOutcome> {
        self.guard(id)?;
        let fx = self.fixtures.get(id)?;
        let fpoly = self.sp(&fx.poly).normalize();
        let err = fx.erratum.as_ref().map(|er| super::fixtures::Erratum {
            corrected: self.sp(&er.corrected).normalize(),
            note: er.note.clone(),
        });
        let outcome = match_poly(e, &fpoly, err.as_ref());
        self.touched.insert(id.to_string());
        let v = self.v;
        let rec = self.push(id, StepKind::MatchFixture, StepStatus::Ok);
        rec.fixture = Some(id.to_string());
        rec.outcome = Some(outcome.label().to_string());
        match &outcome {
            MatchOutcome::MatchesErratum(note) => rec.detail = Some(format!("erratum: {note}")),
            MatchOutcome::Mismatch { diff, cofactor } => {
                rec.status = StepStatus::Failed;
                rec.output = Some(summarize(diff, v));
                rec.detail = Some(match cofactor {
                    Some(c) => format!("difference shown; cofactor {}", summarize(c, v)),
                    None => "difference shown".to_string(),
                });
            }
            _ => {}
        }
        Ok(outcome)
    }

    /// Comparison that is reported but never fails the run; used for
    /// displays stated only for particular parameter values.
    pub fn compare_info(&mut self, id: &str, e: &MultiPoly) -> Result<bool> {
        let fx = self.fixtures.get(id)?;
        let fpoly = self.sp(&fx.poly).normalize();
        let outcome = match_poly(e, &fpoly, None);
        self.touched.insert(id.to_string());
        let agree = outcome.passed();
        let rec = self.push(id, StepKind::MatchFixture, StepStatus::Info);
        rec.fixture = Some(id.to_string());
        rec.outcome = Some(if agree { "Agrees" } else { "Differs" }.to_string());
        rec.detail = Some(format!("informational; {}", outcome.label()));
        Ok(agree)
    }

    /// Marks a fixture as exercised without a match step (definitions).
    pub fn touch(&mut self, id: &str) {
        self.touched.insert(id.to_string());
    }

    /// Records a boolean check.
    pub fn check(&mut self, name: &str, kind: StepKind, ok: bool, detail: impl Into<String>) -> bool {
        let rec = self.push(name, kind, if ok { StepStatus::Ok } else { StepStatus::Failed });
        rec.detail = Some(detail.into());
        ok
    }

    /// Timing for the last recorded step.
    pub fn set_elapsed(&mut self, d: Duration) {
        if let Some(last) = self.steps.last_mut() {
            last.elapsed_ms = Some(d.as_millis() as u64);
        }
    }

    /// Residual must normalize to zero.
    pub fn assert_zero(&mut self, name: &str, residual: &MultiPoly) -> bool {
        let z = residual.normalize().is_zero();
        let detail = if z {
            "residual is 0".to_string()
        } else {
            format!("residual {}", summarize(residual, self.v))
        };
        self.check(name, StepKind::AssertZero, z, detail)
    }

    pub fn info(&mut self, name: &str, detail: impl Into<String>) {
        let rec = self.push(name, StepKind::Note, StepStatus::Info);
        rec.detail = Some(detail.into());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn any_failed(&self) -> bool {
        self.steps.iter().any(|s| s.status == StepStatus::Failed)
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub(crate) fn into_parts(self) -> ReplayParts {
        ReplayParts {
            steps: self.steps,
            conditions: self.conditions,
            touched: self.touched.into_iter().collect(),
            notes: self.notes,
        }
    }
}

pub(crate) struct ReplayParts {
    pub steps: Vec<StepRecord>,
    pub conditions: Vec<String>,
    pub touched: Vec<String>,
    pub notes: Vec<String>,
}
