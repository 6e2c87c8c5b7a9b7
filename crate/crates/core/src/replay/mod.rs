//! Named pipelines that replay each elimination chain step by step.

mod algebra;
mod case1;
mod case2;
mod case3;
mod context;
pub mod fixtures;
mod lemma41;
mod lemma42;
pub mod report;
pub mod run;

use serde::{Deserialize, Serialize};

pub use algebra::{eliminate_leading, reduce_product};
pub use context::{Replay, ReplayConfig};
pub use fixtures::{check_combination, match_fixture, Fixture, FixtureSet, MatchOutcome};
pub use report::{Certificate, PipelineReport, StepRecord, Verdict, WitnessRecord};
pub use run::{
    default_jobs, final_nonvanishing, run_all, run_pipeline, Job, PipelineName, RunSummary,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StepKind {
    Differentiate,
    Combine,
    Substitute,
    DependencyDet,
    CancelFactor,
    Resultant,
    EliminateTrace,
    MatchFixture,
    AssertZero,
    ClearDenominators,
    SpecializeCheck,
    Note,
}
