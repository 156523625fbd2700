//! `pph`: build, query, draw and fuzz parameterized position heaps.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ppheap::fuzz::{self, FuzzConfig};
use ppheap::random::{alphabet, random_pstring};
use ppheap::{Alphabet, DotOptions, Heap, IndexError};
use serde::Serialize;
use thiserror::Error;

#[derive(Parser)]
#[command(name = "pph", version, about = "Parameterized pattern matching with position heaps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index and write it to a file or stdout.
    Build {
        #[arg(long, value_name = "FILE")]
        text: PathBuf,
        /// Parameterized characters; every other character is static.
        #[arg(long, value_name = "CHARS", allow_hyphen_values = true)]
        pi: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Also store maximal reach pointers.
        #[arg(long)]
        augment: bool,
    },
    /// Print the start positions of all parameterized occurrences.
    Query {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
        /// Print only the number of occurrences.
        #[arg(long)]
        count: bool,
    },
    /// Print the heap as a Graphviz digraph.
    Dot {
        #[command(flatten)]
        source: Source,
        /// Draw reversed suffix links.
        #[arg(long)]
        rslinks: bool,
        /// Draw maximal reach pointers.
        #[arg(long)]
        mrp: bool,
    },
    /// Compare the heap against brute force on random inputs.
    Verify {
        /// Largest text length.
        #[arg(long = "n", default_value_t = 200)]
        n: usize,
        /// Largest pattern length.
        #[arg(long = "m", default_value_t = 20)]
        m: usize,
        /// Number of static characters.
        #[arg(long, default_value_t = 4)]
        sigma: usize,
        /// Number of parameterized characters.
        #[arg(long = "pi-size", default_value_t = 4)]
        pi_size: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Time construction and queries on doubling text lengths; prints JSON.
    Bench {
        #[arg(long = "min-n")]
        min_n: usize,
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        sigma: usize,
        #[arg(long = "pi-size", default_value_t = 8)]
        pi_size: usize,
    },
}

/// Where the heap comes from: a stored index, or a text to build from.
#[derive(Args)]
struct Source {
    #[arg(long, value_name = "FILE", conflicts_with_all = ["text", "pi"])]
    index: Option<PathBuf>,
    #[arg(long, value_name = "FILE", requires = "pi")]
    text: Option<PathBuf>,
    #[arg(long, value_name = "CHARS", requires = "text", allow_hyphen_values = true)]
    pi: Option<String>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// File contents with one trailing line break removed.
fn read_text(path: &Path) -> Result<Vec<char>> {
    let raw = read(path)?;
    let body = raw
        .strip_suffix("\r\n")
        .or_else(|| raw.strip_suffix('\n'))
        .unwrap_or(&raw);
    Ok(body.chars().collect())
}

fn load(source: &Source) -> Result<Heap> {
    match (&source.index, &source.text, &source.pi) {
        (Some(index), _, _) => Ok(Heap::from_index_str(&read(index)?)?),
        (None, Some(text), Some(pi)) => Ok(Heap::from_chars(&read_text(text)?, Alphabet::new(pi.chars()))),
        _ => Err(CliError::Usage("either --index or --text with --pi is required".into())),
    }
}

fn emit(out: &mut impl Write, s: &str) -> Result<()> {
    out.write_all(s.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

#[derive(Serialize)]
struct BenchRow {
    n: usize,
    nodes: usize,
    build_ms: f64,
    augment_ms: f64,
    climb_visits: u64,
    descent_visits: u64,
    patterns: usize,
    pattern_len: usize,
    query_us_per_pattern: f64,
    occurrences: usize,
}

#[derive(Serialize)]
struct BenchReport {
    seed: u64,
    sigma: usize,
    pi_size: usize,
    rows: Vec<BenchRow>,
}

const BENCH_PATTERNS: usize = 100;
const BENCH_PATTERN_LEN: usize = 16;

fn bench(min_n: usize, max_n: usize, seed: u64, sigma: usize, pi_size: usize) -> Result<BenchReport> {
    if min_n == 0 || min_n > max_n {
        return Err(CliError::Usage("need 0 < --min-n <= --max-n".into()));
    }
    if sigma + pi_size == 0 {
        return Err(CliError::Usage("need at least one character".into()));
    }
    let mut rows = Vec::new();
    let mut n = min_n;
    while n <= max_n {
        let text = random_pstring(seed, n, sigma, pi_size);
        let start = Instant::now();
        let mut heap = Heap::from_chars(&text, alphabet(pi_size));
        let build = start.elapsed();
        let start = Instant::now();
        heap.augment();
        let augment = start.elapsed();

        let m = BENCH_PATTERN_LEN.min(n);
        let patterns: Vec<&[char]> = (0..BENCH_PATTERNS)
            .map(|k| {
                let s = k * (n - m) / BENCH_PATTERNS;
                &text[s..s + m]
            })
            .collect();
        let start = Instant::now();
        let mut occurrences = 0;
        for p in &patterns {
            occurrences += heap.find(p).expect("augmented, non-empty").len();
        }
        let query = start.elapsed();

        rows.push(BenchRow {
            n,
            nodes: heap.node_count(),
            build_ms: build.as_secs_f64() * 1e3,
            augment_ms: augment.as_secs_f64() * 1e3,
            climb_visits: heap.climb_visits(),
            descent_visits: heap.descent_visits(),
            patterns: patterns.len(),
            pattern_len: m,
            query_us_per_pattern: query.as_secs_f64() * 1e6 / patterns.len() as f64,
            occurrences,
        });
        n = match n.checked_mul(2) {
            Some(next) => next,
            None => break,
        };
    }
    Ok(BenchReport {
        seed,
        sigma,
        pi_size,
        rows,
    })
}

fn run(cli: Cli) -> Result<()> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Build {
            text,
            pi,
            out: path,
            augment,
        } => {
            let mut heap = Heap::from_chars(&read_text(&text)?, Alphabet::new(pi.chars()));
            if augment {
                heap.augment();
            }
            let index = heap.to_index_string().map_err(|e| match e {
                IndexError::UnserializableAlphabet => CliError::Usage(e.to_string()),
                e => e.into(),
            })?;
            match path {
                Some(p) => fs::write(&p, index).map_err(|source| CliError::Io { path: p, source })?,
                None => emit(&mut out, &index)?,
            }
        }
        Command::Query { source, pattern, count } => {
            if pattern.is_empty() {
                return Err(CliError::Usage("--pattern must not be empty".into()));
            }
            let mut heap = load(&source)?;
            let pattern: Vec<char> = pattern.chars().collect();
            let hits = heap.query(&pattern).map_err(|e| CliError::Usage(e.to_string()))?;
            if count {
                emit(&mut out, &format!("{}\n", hits.len()))?;
            } else {
                let lines: String = hits.iter().map(|i| format!("{i}\n")).collect();
                emit(&mut out, &lines)?;
            }
        }
        Command::Dot { source, rslinks, mrp } => {
            let mut heap = load(&source)?;
            if mrp {
                heap.augment();
            }
            emit(&mut out, &heap.to_dot(DotOptions { rslinks, mrp }))?;
        }
        Command::Verify {
            n,
            m,
            sigma,
            pi_size,
            samples,
            seed,
        } => {
            if sigma + pi_size == 0 {
                return Err(CliError::Usage("--sigma and --pi-size cannot both be 0".into()));
            }
            if m == 0 {
                return Err(CliError::Usage("--m must be positive".into()));
            }
            let cfg = FuzzConfig {
                max_n: n,
                max_m: m,
                sigma_size: sigma,
                pi_size,
                samples,
                seed,
            };
            match fuzz::run(&cfg) {
                Ok(report) => emit(
                    &mut out,
                    &format!(
                        "ok: {} samples, {} occurrences, 0 divergences\n",
                        report.samples, report.occurrences
                    ),
                )?,
                Err(div) => return Err(CliError::Failed(div.to_string())),
            }
        }
        Command::Bench {
            min_n,
            max_n,
            seed,
            sigma,
            pi_size,
        } => {
            let report = bench(min_n, max_n, seed, sigma, pi_size)?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            emit(&mut out, &format!("{json}\n"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Failed(msg) => println!("{msg}"),
                e => eprintln!("pph: {e}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
