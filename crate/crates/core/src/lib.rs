//! Exact polynomial algebra and elimination-chain replay.

pub mod elimination;
pub mod error;
pub mod frame;
pub mod gcd;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod rational_expr;
pub mod replay;
pub mod scenario;
pub mod symbol;

pub use elimination::{
    clear_denominators, dependency_determinant, determinant, resultant, sylvester_matrix,
    PolyMatrix, SideCondition, SylvesterMatrix,
};
pub use error::{Error, Result};
pub use frame::{Derivation, Rule};
pub use monomial::Monomial;
pub use oracle::{gcd_oracle, specialization_witness, zero_test, SamplePlan, Tower, Witness, ZeroTest};
pub use parse::{parse_poly, parse_poly_interning};
pub use poly::{rat, ratio, MultiPoly, Rat, DEFAULT_TERM_LIMIT};
pub use rational_expr::{substitute_rational, RationalExpr};
pub use symbol::{Symbol, SymbolTable};
pub use scenario::{
    build_constraints, eliminate_by_trace, scalar_curvature, standard_derivations, CaseTag,
    ConstraintSet, Param, ScenarioProfile, Vocab, STANDARD_SYMBOLS,
};
pub use replay::{
    default_jobs, run_all, run_pipeline, FixtureSet, Job, PipelineName, PipelineReport, ReplayConfig,
    RunSummary, Verdict,
};
