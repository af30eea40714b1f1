use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homing_core::firings::{
    apply_word, canonicalize, g_ratios, g_recurrence_default, generate_wn, partition_to_word,
    word_to_partition, CountTable, GROWTH_CSV_HEADER,
};
use homing_core::height::{height_capped, members_of_mn, DEFAULT_HEIGHT_CAP};
use homing_core::strategies::{
    min_placements_capped, random_homing_mean, run_strategy, DEFAULT_SEARCH_CAP,
};
use homing_core::{
    verify, Code, FiringWord, HeightTable, Permutation, RestrictedWord, SetPartition, Strategy,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "homing",
    version,
    about = "Homing permutations: sorting by placement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result to FILE instead of stdout (atomically, via a temp file).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Home a permutation with a strategy and print one line per placement.
    Sort(StrategyArgs),
    /// Like sort, with a leading step-0 line for the starting permutation.
    Trace(StrategyArgs),
    /// Longest placement sequence to the identity. With --n, the height
    /// histogram of all of S_n (and the binary table with --out).
    Height {
        #[arg(
            long,
            value_name = "PERM",
            conflicts_with = "n",
            required_unless_present = "n"
        )]
        perm: Option<Permutation>,
        #[arg(long)]
        n: Option<usize>,
        /// Largest n for exhaustive searches.
        #[arg(long, default_value_t = DEFAULT_HEIGHT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Shortest placement sequence to the identity.
    MinSteps {
        #[arg(long, value_name = "PERM")]
        perm: Permutation,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Every permutation of maximal height in S_n, as JSON arrays.
    EnumMn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_HEIGHT_CAP)]
        cap: usize,
        #[command(flatten)]
        output: Output,
    },
    /// |M_n| for n = 2..=nmax from the counting recurrence, as CSV.
    CountMn {
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[command(flatten)]
        output: Output,
    },
    /// List the canonical words of W_n, or apply one word with --word.
    Words {
        #[arg(long, required_unless_present = "word")]
        n: Option<usize>,
        #[arg(long, value_name = "WORD")]
        word: Option<FiringWord>,
        #[command(flatten)]
        output: Output,
    },
    /// Canonical form of a firing word.
    Canon {
        #[arg(long, value_name = "WORD")]
        word: FiringWord,
        #[command(flatten)]
        output: Output,
    },
    /// Convert a restricted word to a set partition or back.
    BellBijection {
        #[arg(
            long,
            value_name = "WORD",
            conflicts_with = "partition",
            required_unless_present = "partition"
        )]
        word: Option<RestrictedWord>,
        #[arg(long, value_name = "PARTITION")]
        partition: Option<SetPartition>,
        #[command(flatten)]
        output: Output,
    },
    /// n-th roots of (n-1)!, |M_n| and B_(n-1), as CSV.
    Growth {
        #[arg(long, default_value_t = 80)]
        nmax: usize,
        /// Print the g-recurrence values and ratios instead.
        #[arg(long)]
        g_recurrence: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo mean length of random homing on random permutations.
    RandomSim {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Run a property suite exhaustively up to --nmax.
    Verify {
        /// One of perm, code, strategies, height, firings, all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        nmax: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct StrategyArgs {
    #[arg(long, value_name = "PERM")]
    perm: Permutation,
    /// smallest-first, largest-first, alternating-extremal, leftmost or random:<seed>.
    #[arg(long, default_value = "smallest-first")]
    strategy: Strategy,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Usage(String),
    Verify,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Sort(args) => trace(args, false),
        Command::Trace(args) => trace(args, true),
        Command::Height {
            perm: Some(p),
            cap,
            output,
            ..
        } => {
            let h = height_capped(&p, cap)?;
            emit_scalar(&output, "height", h as u64)
        }
        Command::Height {
            n: Some(n),
            cap,
            output,
            ..
        } => {
            eprintln!("building height table for n = {n}");
            let table = HeightTable::build(n, cap)?;
            if let Some(path) = &output.out {
                let mut bytes = Vec::new();
                table.write_binary(&mut bytes)?;
                return write_atomic(path, &bytes);
            }
            let hist = table.histogram();
            let body = match output.format {
                Format::Json => json!({ "n": n, "histogram": hist }).to_string() + "\n",
                Format::Text | Format::Csv => {
                    let sep = if output.format == Format::Csv {
                        ','
                    } else {
                        '\t'
                    };
                    let mut s = format!("height{sep}count\n");
                    for (h, c) in hist.iter().enumerate().filter(|(_, &c)| c > 0) {
                        writeln!(s, "{h}{sep}{c}").unwrap();
                    }
                    s
                }
            };
            emit(&output, body)
        }
        Command::Height { .. } => unreachable!("clap requires --perm or --n"),
        Command::MinSteps { perm, cap, output } => {
            let m = min_placements_capped(&perm, cap)?;
            emit_scalar(&output, "min_steps", m as u64)
        }
        Command::EnumMn { n, cap, output } => {
            eprintln!("enumerating worst-case permutations for n = {n}");
            let members = members_of_mn(n, cap)?;
            eprintln!("{} permutations", members.len());
            let mut body = serde_json::to_string(&members)?;
            body.push('\n');
            emit(&output, body)
        }
        Command::CountMn { nmax, output } => {
            if nmax < 2 {
                return Err(Failure::Usage(format!(
                    "--nmax must be at least 2, got {nmax}"
                )));
            }
            let counts = CountTable::new(nmax);
            let body = match output.format {
                Format::Json => {
                    let rows: Vec<_> = (2..=nmax)
                        .map(|n| json!({ "n": n, "mn": counts.mn(n).to_string() }))
                        .collect();
                    serde_json::to_string(&rows)? + "\n"
                }
                Format::Text | Format::Csv => {
                    let mut s = String::from("n,mn\n");
                    for n in 2..=nmax {
                        writeln!(s, "{n},{}", counts.mn(n)).unwrap();
                    }
                    s
                }
            };
            emit(&output, body)
        }
        Command::Words {
            word: Some(w),
            output,
            n,
        } => {
            let len = n.map(|n| n.saturating_sub(2)).unwrap_or(w.len());
            if len != w.len() {
                return Err(Failure::Usage(format!(
                    "word {w} has length {}, expected {len}",
                    w.len()
                )));
            }
            let p = apply_word(&w, w.len() + 2)?;
            let canon = canonicalize(&w)?;
            let body = match output.format {
                Format::Json => {
                    json!({ "word": w, "canonical": canon, "permutation": p }).to_string() + "\n"
                }
                _ => format!("{p}\n"),
            };
            emit(&output, body)
        }
        Command::Words {
            n: Some(n), output, ..
        } => {
            let words = generate_wn(n)?;
            eprintln!("{} canonical words", words.len());
            let body = match output.format {
                Format::Json => serde_json::to_string(&words)? + "\n",
                _ => words.iter().map(|w| format!("{w}\n")).collect(),
            };
            emit(&output, body)
        }
        Command::Words { .. } => unreachable!("clap requires --n or --word"),
        Command::Canon { word, output } => {
            let c = canonicalize(&word)?;
            let body = match output.format {
                Format::Json => json!({ "word": word, "canonical": c }).to_string() + "\n",
                _ => format!("{c}\n"),
            };
            emit(&output, body)
        }
        Command::BellBijection {
            word: Some(w),
            output,
            ..
        } => {
            let q = word_to_partition(&w)?;
            emit(&output, format!("{q}\n"))
        }
        Command::BellBijection {
            partition: Some(q),
            output,
            ..
        } => {
            let w = partition_to_word(&q)?;
            emit(&output, format!("{w}\n"))
        }
        Command::BellBijection { .. } => unreachable!("clap requires --word or --partition"),
        Command::Growth {
            nmax,
            g_recurrence: false,
            output,
        } => {
            let rows = homing_core::firings::growth_table(nmax)?;
            let body = match output.format {
                Format::Json => serde_json::to_string(&rows)? + "\n",
                _ => {
                    let mut s = format!("{GROWTH_CSV_HEADER}\n");
                    for r in &rows {
                        s.push_str(&r.to_csv());
                        s.push('\n');
                    }
                    s
                }
            };
            emit(&output, body)
        }
        Command::Growth {
            nmax,
            g_recurrence: true,
            output,
        } => {
            let g = g_recurrence_default(nmax)?;
            let ratios = g_ratios(&g);
            let mut s = String::from("n,g,ratio,half_n\n");
            for (idx, gn) in g.iter().enumerate() {
                let ratio = ratios
                    .get(idx)
                    .and_then(|r| r.ratio)
                    .map(|r| format!("{r:.12}"))
                    .unwrap_or_default();
                writeln!(s, "{},{},{ratio},{}", idx + 1, gn, (idx + 1) as f64 / 2.0).unwrap();
            }
            emit(&output, s)
        }
        Command::RandomSim {
            n,
            trials,
            seed,
            output,
        } => {
            let est = random_homing_mean(n, trials, seed)?;
            let bound = est.bound();
            let body = match output.format {
                Format::Json => {
                    json!({
                        "n": n,
                        "mean": est.mean_f64(),
                        "mean_exact": est.mean().to_string(),
                        "bound": bound.to_string(),
                        "trials": trials,
                        "seed": seed,
                    })
                    .to_string()
                        + "\n"
                }
                Format::Csv => format!(
                    "n,mean,bound,trials,seed\n{n},{:.6},{bound},{trials},{seed}\n",
                    est.mean_f64()
                ),
                Format::Text => format!(
                    "mean\t{:.6}\nbound\t{bound}\ntrials\t{trials}\nseed\t{seed}\n",
                    est.mean_f64()
                ),
            };
            emit(&output, body)
        }
        Command::Verify {
            suite,
            nmax,
            output,
        } => {
            let results = verify::run_suite(&suite, nmax).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown suite `{suite}`; expected one of {} or all",
                    verify::SUITES.join(", ")
                ))
            })?;
            let body = match output.format {
                Format::Json => {
                    let rows: Vec<_> = results
                        .iter()
                        .map(|r| json!({ "suite": r.suite, "property": r.name, "passed": r.passed, "detail": r.detail }))
                        .collect();
                    serde_json::to_string(&rows)? + "\n"
                }
                _ => results.iter().map(|r| format!("{r}\n")).collect(),
            };
            emit(&output, body)?;
            if results.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn trace(args: StrategyArgs, with_start: bool) -> Result<(), Failure> {
    let t = run_strategy(&args.perm, args.strategy);
    let body = match args.output.format {
        Format::Json => serde_json::to_string(&t)? + "\n",
        _ => {
            let mut s = String::new();
            if with_start {
                let code = Code::of(&t.initial);
                writeln!(s, "0\t-\t-\t-\t{}\t{code}\t{}", t.initial, code.weight()).unwrap();
            }
            for line in t.lines() {
                s.push_str(&line);
                s.push('\n');
            }
            s
        }
    };
    emit(&args.output, body)
}

fn emit_scalar(output: &Output, key: &str, value: u64) -> Result<(), Failure> {
    let body = match output.format {
        Format::Json => json!({ key: value }).to_string() + "\n",
        _ => format!("{value}\n"),
    };
    emit(output, body)
}

fn emit(output: &Output, body: String) -> Result<(), Failure> {
    match &output.out {
        Some(path) => write_atomic(path, body.as_bytes()),
        None => {
            let mut stdout = io::stdout().lock();
            match stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
            {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                other => Ok(other?),
            }
        }
    }
}

/// Writes to a temp file beside `path` and renames it into place, so an
/// interrupted run never leaves a truncated file.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
