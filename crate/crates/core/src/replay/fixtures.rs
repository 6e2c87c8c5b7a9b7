//! Displayed identities stored as canonical polynomial text.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::parse_poly;
use crate::poly::MultiPoly;
use crate::scenario::Vocab;

const BUILTIN: &str = include_str!("../../data/fixtures.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FixtureFile {
    schema: u32,
    symbols: Vec<String>,
    fixtures: BTreeMap<String, String>,
    #[serde(default)]
    errata: BTreeMap<String, ErratumEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ErratumEntry {
    corrected: String,
    note: String,
}

/// A displayed form that disagrees with the derivation, with the form the
/// replay reproduces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Erratum {
    pub corrected: MultiPoly,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub id: String,
    /// Normalized.
    pub poly: MultiPoly,
    pub erratum: Option<Erratum>,
}

#[derive(Debug, Clone, Default)]
pub struct FixtureSet {
    fixtures: BTreeMap<String, Fixture>,
}

impl FixtureSet {
    /// The fixtures compiled into the crate.
    pub fn builtin(v: &Vocab) -> Result<Self> {
        Self::from_json(BUILTIN, v)
    }

    pub fn from_json(text: &str, v: &Vocab) -> Result<Self> {
        let file: FixtureFile =
            serde_json::from_str(text).map_err(|e| Error::FixtureFile(e.to_string()))?;
        if file.schema != 1 {
            return Err(Error::FixtureFile(format!("unsupported schema {}", file.schema)));
        }
        for s in &file.symbols {
            if v.table.get(s).is_none() {
                return Err(Error::FixtureFile(format!("symbol `{s}` is not in the vocabulary")));
            }
        }
        let parse = |id: &str, t: &str| {
            parse_poly(t, &v.table).map_err(|e| Error::FixtureFile(format!("{id}: {e}")))
        };
        let mut fixtures = BTreeMap::new();
        for (id, t) in &file.fixtures {
            fixtures.insert(
                id.clone(),
                Fixture {
                    id: id.clone(),
                    poly: parse(id, t)?.normalize(),
                    erratum: None,
                },
            );
        }
        for (id, e) in &file.errata {
            let corrected = parse(id, &e.corrected)?.normalize();
            let f = fixtures
                .get_mut(id)
                .ok_or_else(|| Error::FixtureFile(format!("erratum for unknown fixture `{id}`")))?;
            f.erratum = Some(Erratum {
                corrected,
                note: e.note.clone(),
            });
        }
        Ok(FixtureSet { fixtures })
    }

    pub fn get(&self, id: &str) -> Result<&Fixture> {
        self.fixtures
            .get(id)
            .ok_or_else(|| Error::UnknownFixture(id.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.fixtures.keys().map(|s| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.fixtures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixtures.is_empty()
    }

    /// Replaces one fixture polynomial; used to inject failures in tests.
    pub fn override_poly(&mut self, id: &str, poly: MultiPoly) -> Result<()> {
        let f = self
            .fixtures
            .get_mut(id)
            .ok_or_else(|| Error::UnknownFixture(id.to_string()))?;
        f.poly = poly.normalize();
        Ok(())
    }
}

/// Rewrites a fixture file with every polynomial in canonical normalized
/// text. Ids and notes are kept; output order is deterministic.
pub fn canonicalize(text: &str, v: &Vocab) -> Result<String> {
    let mut file: FixtureFile =
        serde_json::from_str(text).map_err(|e| Error::FixtureFile(e.to_string()))?;
    let canon = |id: &str, t: &str| -> Result<String> {
        let p = parse_poly(t, &v.table).map_err(|e| Error::FixtureFile(format!("{id}: {e}")))?;
        Ok(p.normalize().to_text(&v.table))
    };
    for (id, t) in file.fixtures.iter_mut() {
        *t = canon(id, t)?;
    }
    for (id, e) in file.errata.iter_mut() {
        e.corrected = canon(id, &e.corrected)?;
    }
    let mut out =
        serde_json::to_string_pretty(&file).map_err(|e| Error::FixtureFile(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    Exact,
    UpToUnitContent,
    /// Agrees with the recorded correction of a displayed form.
    MatchesErratum(String),
    Mismatch {
        /// `normalize(e) − fixture`.
        diff: MultiPoly,
        /// Nonconstant factor relating the two sides, when one divides the other.
        cofactor: Option<MultiPoly>,
    },
}

impl MatchOutcome {
    pub fn passed(&self) -> bool {
        !matches!(self, MatchOutcome::Mismatch { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            MatchOutcome::Exact => "Exact",
            MatchOutcome::UpToUnitContent => "UpToUnitContent",
            MatchOutcome::MatchesErratum(_) => "MatchesErratum",
            MatchOutcome::Mismatch { .. } => "Mismatch",
        }
    }
}

/// Compares `e` with a normalized fixture polynomial and optional erratum.
pub fn match_poly(e: &MultiPoly, fixture: &MultiPoly, erratum: Option<&Erratum>) -> MatchOutcome {
    if e == fixture {
        return MatchOutcome::Exact;
    }
    let ne = e.normalize();
    if &ne == fixture {
        return MatchOutcome::UpToUnitContent;
    }
    if let Some(err) = erratum {
        if ne == err.corrected {
            return MatchOutcome::MatchesErratum(err.note.clone());
        }
    }
    let cofactor = [ne.exact_divide(fixture), fixture.exact_divide(&ne)]
        .into_iter()
        .flatten()
        .find(|q| !q.is_constant());
    MatchOutcome::Mismatch {
        diff: ne.sub(fixture),
        cofactor,
    }
}

pub fn match_fixture(e: &MultiPoly, set: &FixtureSet, id: &str) -> Result<MatchOutcome> {
    let f = set.get(id)?;
    Ok(match_poly(e, &f.poly, f.erratum.as_ref()))
}

/// True iff `target − Σ multiplier·premise` is zero.
pub fn check_combination(target: &MultiPoly, parts: &[(MultiPoly, MultiPoly)]) -> bool {
    let mut acc = target.clone();
    for (m, p) in parts {
        acc = acc.sub(&m.mul(p));
    }
    acc.normalize().is_zero()
}
