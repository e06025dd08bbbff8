//! `revdist` command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{bound_bg, bound_genus, bound_plane, check_equivalence};
use crate::fatgraph::{export, fatgraph_from_signed, ExportFormat};
use crate::oracle::{self, exact_distance, greedy_sort, survey, validate, SurveyMode};
use crate::signed_perm::{parse, parse_many, SignedPermutation};
use crate::verify::{render_table, run_battery, VerifyConfig};

#[derive(Debug, Parser)]
#[command(
    name = "revdist",
    version,
    about = "Reversal-distance lower bounds for signed permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Plane,
    Bg,
    Genus,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lower bound(s) on the reversal distance.
    Bound {
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        #[arg(long)]
        json: bool,
        /// Treat INPUT as a file path.
        #[arg(long)]
        file: bool,
        /// A permutation such as "-5 1 -3 2 4", a file (one per line), or - for stdin.
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Exact distance by breadth-first search.
    Exact {
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        file: bool,
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Greedy sorting certificate.
    Sort {
        #[arg(long)]
        show_steps: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        file: bool,
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Export the fatgraph of a signed permutation.
    Fatgraph {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Run the invariant battery and print a pass/fail table.
    Verify {
        #[arg(long, default_value_t = 3)]
        exhaustive_n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Compare the lower bound with exact distances.
    Survey {
        #[arg(long = "n")]
        n: usize,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Parsed input plus whether it came from a batch source (file or stdin).
fn read_input(
    input: &str,
    force_file: bool,
    stdin: &mut dyn Read,
) -> Result<(Vec<SignedPermutation>, bool), CliError> {
    if input == "-" {
        let mut text = String::new();
        stdin.read_to_string(&mut text).map_err(usage)?;
        return Ok((parse_many(&text).map_err(usage)?, true));
    }
    if force_file || Path::new(input).is_file() {
        let text = std::fs::read_to_string(input).map_err(|e| usage(format!("{input}: {e}")))?;
        return Ok((parse_many(&text).map_err(usage)?, true));
    }
    Ok((vec![parse(input).map_err(usage)?], false))
}

fn cap(max_n: Option<usize>) -> Result<usize, CliError> {
    match max_n {
        Some(m) => Ok(m),
        None => oracle::max_n_from_env().map_err(usage),
    }
}

fn emit_json(
    out: &mut dyn Write,
    values: Vec<serde_json::Value>,
    batch: bool,
) -> std::io::Result<()> {
    let doc = if batch {
        serde_json::Value::Array(values)
    } else {
        values.into_iter().next().unwrap_or(serde_json::Value::Null)
    };
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&doc).expect("serializable")
    )
}

fn run_command(
    command: Command,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let io = |e: std::io::Error| usage(e);
    match command {
        Command::Bound {
            method,
            json,
            file,
            input,
        } => {
            let (perms, batch) = read_input(&input, file, stdin)?;
            let mut values = Vec::new();
            for a in &perms {
                let failure = |e: crate::bounds::BoundError| CliError::Failure(format!("{a}: {e}"));
                let (bound, value) = match method {
                    Method::All => {
                        let report = check_equivalence(a).map_err(failure)?;
                        (
                            report.bound,
                            serde_json::to_value(report).expect("serializable"),
                        )
                    }
                    single => {
                        let (name, b) = match single {
                            Method::Plane => ("plane", bound_plane(a)),
                            Method::Bg => ("bg", bound_bg(a)),
                            _ => ("genus", bound_genus(a)),
                        };
                        let b = b.map_err(failure)?;
                        (b, json!({ "n": a.len(), "method": name, "bound": b }))
                    }
                };
                if json {
                    values.push(value);
                } else {
                    writeln!(out, "{bound}").map_err(io)?;
                }
            }
            if json {
                emit_json(out, values, batch).map_err(io)?;
            }
        }
        Command::Exact {
            max_n,
            json,
            file,
            input,
        } => {
            let cap = cap(max_n)?;
            let (perms, batch) = read_input(&input, file, stdin)?;
            let mut values = Vec::new();
            for a in &perms {
                let d = exact_distance(a, cap).map_err(usage)?;
                if json {
                    values.push(json!({ "perm": a, "n": a.len(), "distance": d }));
                } else {
                    writeln!(out, "{d}").map_err(io)?;
                }
            }
            if json {
                emit_json(out, values, batch).map_err(io)?;
            }
        }
        Command::Sort {
            show_steps,
            json,
            file,
            input,
        } => {
            let (perms, batch) = read_input(&input, file, stdin)?;
            let mut values = Vec::new();
            for a in &perms {
                let cert = greedy_sort(a).map_err(|e| CliError::Failure(e.to_string()))?;
                if !validate(&cert) {
                    return Err(CliError::Failure(format!(
                        "certificate for {a} does not sort it"
                    )));
                }
                if json {
                    values.push(json!({
                        "start": cert.start,
                        "length": cert.len(),
                        "steps": cert.steps.iter().map(|s| [s.i, s.j]).collect::<Vec<_>>(),
                    }));
                    continue;
                }
                writeln!(out, "{}", cert.len()).map_err(io)?;
                if show_steps {
                    let trace = cert.trace().expect("validated certificate");
                    writeln!(out, "  {}", trace[0]).map_err(io)?;
                    for (step, after) in cert.steps.iter().zip(&trace[1..]) {
                        writeln!(out, "  {step}: {after}").map_err(io)?;
                    }
                }
            }
            if json {
                emit_json(out, values, batch).map_err(io)?;
            }
        }
        Command::Fatgraph {
            format,
            output,
            input,
        } => {
            let (perms, _) = read_input(&input, false, stdin)?;
            let [a] = perms.as_slice() else {
                return Err(usage("fatgraph takes exactly one permutation"));
            };
            let format = match format {
                Format::Json => ExportFormat::Json,
                Format::Dot => ExportFormat::Dot,
            };
            let text = export(&fatgraph_from_signed(a), format)
                .map_err(|e| CliError::Failure(e.to_string()))?;
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?,
                None => write!(out, "{text}").map_err(io)?,
            }
        }
        Command::Verify {
            exhaustive_n,
            samples,
            seed,
            max_n,
            json,
        } => {
            if exhaustive_n > crate::signed_perm::MAX_ENUMERATE_N {
                return Err(usage(format!(
                    "--exhaustive-n must be at most {}",
                    crate::signed_perm::MAX_ENUMERATE_N
                )));
            }
            let config = VerifyConfig {
                exhaustive_n,
                samples,
                seed,
                max_n,
            };
            let results = run_battery(&config);
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&results).expect("serializable")
                )
                .map_err(io)?;
            } else {
                write!(out, "{}", render_table(&results)).map_err(io)?;
            }
            let failed = results.iter().filter(|r| !r.passed()).count();
            if failed > 0 {
                return Err(CliError::Failure(format!("{failed} check(s) failed")));
            }
        }
        Command::Survey {
            n,
            exhaustive,
            samples,
            seed,
            max_n,
            csv,
            json,
        } => {
            let mode = match (exhaustive, samples) {
                (true, _) => SurveyMode::Exhaustive,
                (false, Some(count)) => SurveyMode::Sampled { count, seed },
                (false, None) => return Err(usage("survey needs --exhaustive or --samples N")),
            };
            let report = survey(n, mode, cap(max_n)?).map_err(|e| match e {
                oracle::OracleError::Unsound { .. } => CliError::Failure(e.to_string()),
                other => usage(other),
            })?;
            if let Some(path) = csv {
                std::fs::write(&path, report.to_csv())
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                )
                .map_err(io)?;
            } else {
                writeln!(
                    out,
                    "n={} total={} tight={} ({:.4}) runtime_ms={}",
                    report.n, report.total, report.tight, report.tight_fraction, report.runtime_ms
                )
                .map_err(io)?;
                for (gap, count) in &report.histogram {
                    writeln!(out, "  gap {gap}: {count}").map_err(io)?;
                }
            }
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match run_command(cli.command, stdin, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}
