use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aut_blowup::cone::{extremality_table, EffectiveCone};
use aut_blowup::fieldgeom::{generate_config, validate_config, ConfigFile};
use aut_blowup::report::{run_all, sweep, RunOptions, SweepSpec};
use aut_blowup::rigidity::{build_graph, verify_rigidity};
use aut_blowup::vectorfields::{assemble_system, derivation_kernel, system_json, verify_vanishing};
use aut_blowup::Blowup;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a String")
    };
}

macro_rules! outstr {
    ($out:expr, $($arg:tt)*) => {
        write!($out, $($arg)*).expect("writing to a String")
    };
}

#[derive(Parser)]
#[command(
    name = "aut-blowup",
    version,
    about = "Exact checks on blow-ups of (P^1)^r at mu_n-stable points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check and print the report.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Second prime for the vector-field check.
        #[arg(long)]
        q_extra: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Search cap for the cone (default 10 N).
        #[arg(long)]
        cap: Option<i64>,
        /// Random draws per expansion identity.
        #[arg(long, default_value_t = 1000)]
        draws: usize,
        /// Skip the extremality brute force.
        #[arg(long)]
        no_extremality: bool,
        /// Include per-stage wall-clock times (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Generate a generic configuration and print it as JSON.
    GenConfig {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<usize>,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the curve/divisor pairing table as CSV.
    PairingTable {
        #[arg(long)]
        config: PathBuf,
    },
    /// Extremality of every cone generator.
    Extremal {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        cap: Option<i64>,
    },
    /// Print the incidence graph as JSON, optionally writing DOT.
    Graph {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Census, pinning and the automorphism group.
    Rigidity {
        #[arg(long)]
        config: PathBuf,
    },
    /// Kernel of the vector-field constraint system.
    VectorFields {
        #[arg(long)]
        config: PathBuf,
        /// Write the full constraint matrix as JSON.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Run many configurations in parallel.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, env = "AUT_BLOWUP_JOBS")]
        jobs: Option<usize>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("invalid configuration: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Invalid(_) | CliError::Failed(_) => 1,
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load(path: &Path) -> Result<Blowup, CliError> {
    let file: ConfigFile = read_json(path)?;
    let v = validate_config(&file);
    v.blowup.ok_or(CliError::Invalid(v.reasons))
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("value serializes")
}

fn run(cli: Cli, out: &mut String) -> Result<u8, CliError> {
    match cli.command {
        Command::Verify {
            config,
            q_extra,
            format,
            cap,
            draws,
            no_extremality,
            timings,
        } => {
            let file: ConfigFile = read_json(&config)?;
            let opts = RunOptions {
                cap,
                q_extra,
                draws,
                extremality: !no_extremality,
                timings,
            };
            let report = run_all(&file, &opts);
            match format {
                Format::Json => outstr!(out, "{}", report.to_canonical_json()),
                Format::Md => outstr!(out, "{}", report.to_markdown()),
            }
            Ok(report.exit_code() as u8)
        }
        Command::GenConfig { n, r, s, q, seed } => {
            let cfg =
                generate_config(n, r, &s, q, seed).map_err(|e| CliError::Failed(e.to_string()))?;
            let value = serde_json::to_value(cfg.to_file()).expect("config serializes");
            outln!(out, "{}", pretty(&value));
            Ok(0)
        }
        Command::PairingTable { config } => {
            outstr!(out, "{}", load(&config)?.pairing_table_csv());
            Ok(0)
        }
        Command::Extremal { config, cap } => {
            let b = load(&config)?;
            let cone = match cap {
                Some(c) => EffectiveCone::with_cap(&b, c),
                None => EffectiveCone::new(&b),
            };
            let rows = extremality_table(&cone).map_err(|e| CliError::Failed(e.to_string()))?;
            outln!(
                out,
                "{:<16} {:>8} {:>12}  class",
                "generator",
                "extremal",
                "2c splits"
            );
            for row in &rows {
                outln!(
                    out,
                    "{:<16} {:>8} {:>12}  {}",
                    row.label,
                    if row.extremal { "yes" } else { "no" },
                    row.double_splits,
                    serde_json::to_string(&row.class).expect("class serializes"),
                );
            }
            Ok(if rows.iter().all(|r| r.extremal) {
                0
            } else {
                1
            })
        }
        Command::Graph { config, dot } => {
            let b = load(&config)?;
            let graph = build_graph(&b);
            if let Some(path) = dot {
                write_file(&path, &graph.to_dot(&b))?;
            }
            outln!(out, "{}", pretty(&graph.to_json(&b)));
            Ok(0)
        }
        Command::Rigidity { config } => {
            let b = load(&config)?;
            let outcome = verify_rigidity(&b);
            let elements: Vec<_> = outcome
                .group
                .iter()
                .flat_map(|g| &g.elements)
                .map(|g| {
                    json!({
                        "maps": g.maps,
                        "permutation": g.permutation.iter().map(|&i| b.point(i).label()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let failed = outcome
                .records
                .iter()
                .any(|r| r.status == aut_blowup::report::Status::Fail);
            let value = json!({
                "checks": outcome.records,
                "certificate": outcome.certificate,
                "elements": elements,
            });
            outln!(out, "{}", pretty(&value));
            Ok(u8::from(failed))
        }
        Command::VectorFields { config, matrix } => {
            let b = load(&config)?;
            if let Some(path) = matrix {
                write_file(&path, &pretty(&system_json(&b)))?;
            }
            let rows = assemble_system(&b);
            let k = derivation_kernel(&b);
            outln!(out, "rows: {}  columns: {}", rows.len(), 4 * b.r());
            outln!(out, "rank: {}", k.rank);
            outln!(out, "kernel dimension: {}", k.dimension);
            for (idx, v) in k.basis.iter().enumerate() {
                let blocks: Vec<String> = (0..b.r())
                    .map(|i| {
                        let [a, bb, c, d] = v.block(i);
                        format!("[[{a},{bb}],[{c},{d}]]")
                    })
                    .collect();
                outln!(out, "basis {}: {}", idx + 1, blocks.join(" "));
            }
            let ok = verify_vanishing(&b).iter().all(|r| r.passed());
            outln!(
                out,
                "{}",
                if ok {
                    "PASS: kernel is the scalar tuples"
                } else {
                    "FAIL: nonscalar kernel"
                }
            );
            Ok(u8::from(!ok))
        }
        Command::Sweep { spec, jobs } => {
            let spec: SweepSpec = read_json(&spec)?;
            let jobs =
                jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let summary = sweep(&spec, jobs);
            outstr!(out, "{}", summary.to_canonical_json());
            Ok(u8::from(!summary.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    match stdout
        .write_all(out.as_bytes())
        .and_then(|()| stdout.flush())
    {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        _ => {}
    }
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
