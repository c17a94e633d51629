//! Front end for the `superharm` command and the acceptance run.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod documents;
pub mod suites;

use std::ffi::OsString;

use clap::Parser;
use serde::Serialize;
use superharm::linalg::Superspace;
use superharm::SuperspaceConfig;

use args::{Cli, Command, Format, Space, MAX_M, MAX_N};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, passed: bool) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: if passed { EXIT_OK } else { EXIT_FAILED },
        }
    }

    fn usage(message: String) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: message,
            code: EXIT_USAGE,
        }
    }
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn config(cli: &Cli, space: Space) -> Result<SuperspaceConfig, CliError> {
    if !cli.unsafe_bounds && (space.m > MAX_M || space.n > MAX_N) {
        return Err(CliError::Usage(format!(
            "(m, n) = ({}, {}) exceeds the bounds m <= {MAX_M}, n <= {MAX_N} (use --unsafe-bounds)",
            space.m, space.n
        )));
    }
    Ok(if cli.corrupt_metric {
        SuperspaceConfig::with_metric_defect(space.m, space.n)
    } else {
        SuperspaceConfig::new(space.m, space.n)
    })
}

/// Worker pool with `jobs` threads, or the available parallelism.
pub fn pool(jobs: Option<usize>) -> rayon::ThreadPool {
    let n = jobs
        .filter(|&j| j > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .expect("thread pool")
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let text = cli.format == Format::Text;
    let emit = |t: String, j: String, passed: bool| Outcome::ok(if text { t } else { j }, passed);
    let workers = pool(cli.jobs);
    workers.install(|| match &cli.command {
        Command::Dims { space, kmax } => {
            commands::check_degree(*kmax, cli.unsafe_bounds)?;
            let s = Superspace::new(config(cli, *space)?);
            let doc = commands::dims(&s, *kmax);
            Ok(emit(commands::dims_text(&doc), json(&doc), true))
        }
        Command::Decompose {
            space,
            polynomial,
            file,
            dump_matrix,
        } => {
            let cfg = config(cli, *space)?;
            let input = match (polynomial, file) {
                (Some(p), _) => p.clone(),
                (None, Some(path)) => std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?,
                (None, None) => return Err(CliError::Usage("no polynomial given".into())),
            };
            let (p, k) = commands::parse_polynomial(cfg, &input)?;
            commands::check_degree(k, cli.unsafe_bounds)?;
            let s = Superspace::new(cfg);
            let mut doc = commands::decompose(&s, &input, &p, k)?;
            if let Some(op) = dump_matrix {
                doc.matrix = Some(commands::matrix_dump(&s, op, k)?);
            }
            let passed = doc.resum_ok;
            Ok(emit(commands::decompose_text(&doc), json(&doc), passed))
        }
        Command::Diagram { space, kmax } => {
            commands::check_degree(*kmax, cli.unsafe_bounds)?;
            let s = Superspace::new(config(cli, *space)?);
            let doc = commands::diagram_doc(&s, *kmax);
            Ok(emit(commands::diagram_text(&doc.diagram), json(&doc), true))
        }
        Command::Verify { space, kmax, suite } => {
            commands::check_degree(*kmax, cli.unsafe_bounds)?;
            let s = Superspace::new(config(cli, *space)?);
            let doc = commands::verify(&s, *kmax, *suite, cli.probes, cli.seed);
            let passed = doc.passed;
            Ok(emit(commands::verify_text(&doc), json(&doc), passed))
        }
        Command::Structure {
            space,
            k,
            dump_matrix,
        } => {
            commands::check_degree(*k, cli.unsafe_bounds)?;
            let s = Superspace::new(config(cli, *space)?);
            let mut doc = commands::structure(&s, *k, cli.probes, cli.seed);
            if let Some(op) = dump_matrix {
                doc.matrix = Some(commands::matrix_dump(&s, op, *k)?);
            }
            let passed = doc.report.verdict != superharm::repthy::Verdict::Fails;
            Ok(emit(commands::structure_text(&doc), json(&doc), passed))
        }
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(rendered)
            } else {
                Outcome::ok(rendered, true)
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(CliError::Usage(m)) => Outcome::usage(format!("error: {m}\n")),
    }
}
