//! Command-line runner: `verify`, `resultant`, `report`, `fixtures`.
//!
//! Exit codes: 0 success, 1 failed certificates or mismatches, 2 usage,
//! configuration or input errors, 3 resource-guard aborts.

pub mod config;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use polyreplay::elimination::resultant_with_limit;
use polyreplay::replay::fixtures::canonicalize;
use polyreplay::replay::report::RunReport;
use polyreplay::{parse_poly_interning, run_all, Error, FixtureSet, Vocab, DEFAULT_TERM_LIMIT};

pub use config::{OutputFormat, ProfileText, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "polyreplay", version, about = "Replay elimination chains with exact polynomial arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Run pipelines and print their certificates.
    Verify(VerifyArgs),
    /// Exact resultant of two polynomials.
    Resultant(ResultantArgs),
    /// Render a saved report.
    Report(ReportArgs),
    /// Fixture file utilities.
    #[command(subcommand)]
    Fixtures(FixturesCommand),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `all`, or nothing when `--pipeline` is given.
    #[arg(value_parser = ["all"])]
    pub target: Option<String>,
    /// Pipeline to run; repeatable.
    #[arg(long = "pipeline", env = "POLYREPLAY_PIPELINE", value_delimiter = ',')]
    pub pipelines: Vec<String>,
    /// `p,q,r` (four curvatures) or `p` (three); names stay symbolic.
    #[arg(long, env = "POLYREPLAY_MULTIPLICITIES", allow_hyphen_values = true)]
    pub multiplicities: Option<String>,
    /// Ambient curvature `c`.
    #[arg(long, env = "POLYREPLAY_CURVATURE", allow_hyphen_values = true)]
    pub curvature: Option<String>,
    /// Squared norm `beta` of the shape operator.
    #[arg(long, env = "POLYREPLAY_NORM", allow_hyphen_values = true)]
    pub norm: Option<String>,
    /// Dimension `n` (three- and two-curvature pipelines).
    #[arg(long, env = "POLYREPLAY_DIMENSION")]
    pub dimension: Option<String>,
    #[arg(long, env = "POLYREPLAY_SEED")]
    pub seed: Option<u64>,
    #[arg(long, value_enum, env = "POLYREPLAY_FORMAT")]
    pub format: Option<OutputFormat>,
    /// Term-count guard for intermediate polynomials.
    #[arg(long, env = "POLYREPLAY_MAX_TERMS")]
    pub max_terms: Option<usize>,
    /// Wall-clock budget per pipeline.
    #[arg(long, env = "POLYREPLAY_BUDGET_SECS")]
    pub budget_secs: Option<u64>,
    #[arg(long, env = "POLYREPLAY_WORKERS")]
    pub workers: Option<usize>,
    /// Fixture file replacing the built-in set.
    #[arg(long, env = "POLYREPLAY_FIXTURES")]
    pub fixtures: Option<PathBuf>,
    /// Run-configuration file; flags override its fields.
    #[arg(long, env = "POLYREPLAY_CONFIG")]
    pub config: Option<PathBuf>,
    /// Write the report with timings here, for `report`.
    #[arg(long)]
    pub save_raw: Option<PathBuf>,
    /// Write the rendered report here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ResultantArgs {
    pub f: String,
    pub g: String,
    /// Variable to eliminate.
    pub var: String,
    /// Print the determinant as computed.
    #[arg(long, conflicts_with = "primitive")]
    pub raw: bool,
    /// Also divide out the integer content.
    #[arg(long)]
    pub primitive: bool,
    #[arg(long, env = "POLYREPLAY_MAX_TERMS", default_value_t = DEFAULT_TERM_LIMIT)]
    pub max_terms: usize,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Debug, Subcommand)]
pub enum FixturesCommand {
    /// Rewrite every polynomial in canonical normalized text.
    Canonicalize {
        path: PathBuf,
        /// Overwrite the file instead of printing.
        #[arg(long, conflicts_with = "check")]
        write: bool,
        /// Exit 1 if the file is not already canonical.
        #[arg(long)]
        check: bool,
    },
}

/// A failure with its exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_resource() { EXIT_RESOURCE } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| io_failure(path, e))
}

/// Runs a parsed command; output goes to `out`, diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let res = match cli.command {
        Command::Verify(a) => verify(a, out, err),
        Command::Resultant(a) => resultant_cmd(a, out),
        Command::Report(a) => report_cmd(a, out),
        Command::Fixtures(FixturesCommand::Canonicalize { path, write, check }) => {
            canonicalize_cmd(&path, write, check, out, err)
        }
    };
    match res {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Merges the config file, environment and flags.
pub fn resolve_config(a: &VerifyArgs) -> Result<RunConfig, Failure> {
    let mut cfg = match &a.config {
        Some(p) => RunConfig::from_json(&read(p)?)?,
        None => RunConfig::default(),
    };
    if !a.pipelines.is_empty() {
        if a.target.is_some() {
            return Err(Failure {
                code: EXIT_USAGE,
                message: "give either `all` or --pipeline, not both".into(),
            });
        }
        cfg.pipelines = a.pipelines.clone();
    } else if a.target.is_some() {
        cfg.pipelines = vec!["all".into()];
    }
    let profile_flags = a.multiplicities.is_some() || a.curvature.is_some() || a.norm.is_some() || a.dimension.is_some();
    if profile_flags {
        let text = |s: &Option<String>| s.clone().map(config::ParamText::Text);
        let ms = a.multiplicities.as_ref().map(|m| {
            m.split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| Some(config::ParamText::Text(s.trim().to_string())))
                .collect()
        });
        cfg.profiles = vec![ProfileText {
            multiplicities: ms,
            c: text(&a.curvature),
            beta: text(&a.norm),
            n: text(&a.dimension),
        }];
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(f) = a.format {
        cfg.output = f;
    }
    if let Some(m) = a.max_terms {
        cfg.max_terms = m;
    }
    if let Some(b) = a.budget_secs {
        cfg.budget_secs = Some(b);
    }
    if let Some(w) = a.workers {
        cfg.workers = Some(w);
    }
    cfg.check()?;
    Ok(cfg)
}

fn load_fixtures(path: Option<&Path>, v: &Vocab) -> Result<FixtureSet, Failure> {
    Ok(match path {
        Some(p) => FixtureSet::from_json(&read(p)?, v)?,
        None => FixtureSet::builtin(v)?,
    })
}

fn render(report: &RunReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => report.to_stable_json(),
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = resolve_config(&a)?;
    let v = Vocab::standard();
    let fixtures = load_fixtures(a.fixtures.as_deref(), &v)?;
    let jobs = cfg.jobs()?;
    let workers = cfg
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let summary = run_all(&jobs, &fixtures, &v, &cfg.replay_config(), workers, cfg.is_full()?)?;
    let report = summary.report;
    if let Some(p) = &a.save_raw {
        write_file(p, &report.to_raw_json())?;
    }
    let text = render(&report, cfg.output);
    match &a.output {
        Some(p) => write_file(p, &text)?,
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    for r in report.runs.iter().filter(|r| !r.passed()) {
        let why = match &r.error {
            Some(e) => e.message.clone(),
            None => {
                let bad: Vec<&str> = r.mismatches().map(|s| s.name.as_str()).collect();
                let mut s = format!("{:?}", r.certificate.verdict);
                if let Some(d) = &r.certificate.degeneracy {
                    s.push_str(&format!(" ({d})"));
                } else if let Some(n) = r.certificate.notes.last() {
                    s.push_str(&format!(" ({n})"));
                }
                if !bad.is_empty() {
                    s.push_str(&format!("; failed steps: {}", bad.join(", ")));
                }
                s
            }
        };
        let _ = writeln!(err, "FAILED {} {}: {}", r.pipeline, r.profile, why);
    }
    if let Some(u) = &report.untouched_fixtures {
        if !u.is_empty() {
            let _ = writeln!(err, "untouched fixtures: {}", u.join(", "));
        }
    }
    Ok(report.exit_code)
}

/// Resultant text in the standard symbol order; new names follow it.
pub fn resultant_text(f: &str, g: &str, var: &str, raw: bool, primitive: bool, limit: usize) -> Result<String, Error> {
    let mut table = Vocab::standard().table;
    let fp = parse_poly_interning(f, &mut table)?;
    let gp = parse_poly_interning(g, &mut table)?;
    let x = table.intern(var)?;
    if !fp.contains(x) && !gp.contains(x) {
        return Err(Error::BothConstant(var.to_string()));
    }
    let r = resultant_with_limit(&fp, &gp, x, limit)?;
    let r = if raw {
        r
    } else if primitive {
        r.normalize()
    } else if r.leading_coefficient() < polyreplay::rat(0) {
        r.neg()
    } else {
        r
    };
    Ok(r.to_text(&table))
}

fn resultant_cmd(a: ResultantArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = resultant_text(&a.f, &a.g, &a.var, a.raw, a.primitive, a.max_terms)?;
    let _ = writeln!(out, "{text}");
    Ok(EXIT_OK)
}

fn report_cmd(a: ReportArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let report = RunReport::from_json(&read(&a.path)?)?;
    let _ = out.write_all(render(&report, a.format).as_bytes());
    Ok(EXIT_OK)
}

fn canonicalize_cmd(path: &Path, write: bool, check: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let text = read(path)?;
    let canon = canonicalize(&text, &Vocab::standard())?;
    if check {
        if canon == text {
            return Ok(EXIT_OK);
        }
        let _ = writeln!(err, "{} is not canonical", path.display());
        return Ok(EXIT_FAILED);
    }
    if write {
        write_file(path, &canon)?;
    } else {
        let _ = out.write_all(canon.as_bytes());
    }
    Ok(EXIT_OK)
}
