//! `dsm`: solve, enumerate, verify, generate and benchmark stable marriage
//! instances.
//!
//! Exit codes: 0 success (or decision true), 1 decision false or a failed
//! verification, 2 bad input.

use std::fs;
use std::io::{self, Read, Write};
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use disjoint_sm::scaling::{run_bench, time_slope};
use disjoint_sm::{
    disjoint_stable_matchings, enumerate_stable, gale_shapley, gen_random, verify_instance, BenchRecord, GenKind,
    GenSpec, Instance, MatchingJson, Side, VerifyReport, Workload,
};

#[derive(Parser)]
#[command(name = "dsm", version, about = "Disjoint stable matchings toolkit")]
struct Cli {
    /// Emit JSON instead of plain text where both exist
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Proposer-optimal stable matching
    Solve {
        #[arg(long, value_enum, default_value_t = SideArg::Men)]
        side: SideArg,
        /// Instance file, `-` for stdin
        file: PathBuf,
    },
    /// Maximum chain of pairwise disjoint stable matchings
    Disjoint {
        /// Exit 0 iff at least K disjoint stable matchings exist
        #[arg(long)]
        k: Option<NonZeroUsize>,
        file: PathBuf,
    },
    /// All stable matchings by exhaustive search (n <= 9)
    Enumerate { file: PathBuf },
    /// Check the engine against the brute-force oracle
    Verify {
        /// Number of random instances to check with --random
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        /// Check seeded random instances (n from 2 to 7) instead of a file
        #[arg(long, conflicts_with = "file")]
        random: bool,
        #[arg(required_unless_present = "random")]
        file: Option<PathBuf>,
    },
    /// Write an instance in the canonical text format
    Gen {
        #[arg(long)]
        kind: GenKind,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the disjoint-matchings algorithm over a range of sizes
    Bench {
        #[arg(long, value_enum)]
        kind: BenchKind,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// Base seed for random workloads
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Men,
    Women,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Men => Side::Men,
            SideArg::Women => Side::Women,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchKind {
    Cyclic,
    Random,
}

/// Failure that maps to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<ExitCode, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let json = cli.json;
    match cli.command {
        Command::Solve { side, file } => {
            let inst = load(&file)?;
            print_json(&gale_shapley(&inst, side.into()).to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Disjoint { k, file } => {
            let inst = load(&file)?;
            let chain = disjoint_stable_matchings(&inst);
            print_json(&chain.to_json())?;
            Ok(exit_for(k.is_none_or(|k| chain.len() >= k.get())))
        }
        Command::Enumerate { file } => {
            let inst = load(&file)?;
            let all = enumerate_stable(&inst)?;
            #[derive(Serialize)]
            struct Out {
                count: usize,
                matchings: Vec<MatchingJson>,
            }
            print_json(&Out {
                count: all.len(),
                matchings: all.iter().map(|m| m.to_json()).collect(),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { seeds, random, file } => {
            if random {
                verify_random(seeds, json)
            } else {
                let file = file.expect("clap requires a file without --random");
                let report = verify_instance(&load(&file)?)?;
                emit_report(None, &report, json)?;
                Ok(exit_for(report.passed()))
            }
        }
        Command::Gen { kind, n, seed } => {
            let inst = GenSpec { kind, n, seed }.generate()?;
            io::stdout().write_all(inst.serialize().as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            kind,
            sizes,
            repeats,
            seed,
        } => {
            let workload = match kind {
                BenchKind::Cyclic => Workload::Cyclic,
                BenchKind::Random => Workload::Random { base_seed: seed },
            };
            let records = run_bench(workload, &sizes, repeats)?;
            emit_bench(&records, json)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_for(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load(path: &PathBuf) -> Result<Instance, InputError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?
    };
    Ok(Instance::parse(&text)?)
}

fn print_json<T: Serialize>(value: &T) -> io::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)
}

fn verify_random(seeds: u64, json: bool) -> CmdResult {
    let mut all_passed = true;
    for seed in 0..seeds {
        let n = 2 + (seed % 6) as usize;
        let report = verify_instance(&gen_random(n, seed)?)?;
        all_passed &= report.passed();
        emit_report(Some(seed), &report, json)?;
    }
    if !json {
        println!("{} {seeds} random instances", if all_passed { "PASS" } else { "FAIL" });
    }
    Ok(exit_for(all_passed))
}

fn emit_report(seed: Option<u64>, report: &VerifyReport, json: bool) -> io::Result<()> {
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            #[serde(skip_serializing_if = "Option::is_none")]
            seed: Option<u64>,
            passed: bool,
            #[serde(flatten)]
            report: &'a VerifyReport,
        }
        return print_json(&Out {
            seed,
            passed: report.passed(),
            report,
        });
    }
    let mut out = io::stdout().lock();
    match seed {
        Some(seed) => {
            let status = if report.passed() { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{status} seed {seed} (n = {}, {} stable, chain {})",
                report.n, report.stable_matchings, report.chain_length
            )?;
            for c in report.failures() {
                writeln!(out, "  {c}")?;
            }
        }
        None => {
            writeln!(
                out,
                "n = {}, {} stable matchings, chain length {}",
                report.n, report.stable_matchings, report.chain_length
            )?;
            for c in &report.checks {
                writeln!(out, "{c}")?;
            }
        }
    }
    Ok(())
}

fn emit_bench(records: &[BenchRecord], json: bool) -> io::Result<()> {
    let slope = time_slope(records);
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            records: &'a [BenchRecord],
            loglog_slope_vs_n: Option<f64>,
        }
        return print_json(&Out {
            records,
            loglog_slope_vs_n: slope,
        });
    }
    let mut out = io::stdout().lock();
    writeln!(out, "{}", BenchRecord::CSV_HEADER)?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    match slope {
        Some(s) => eprintln!("log-log slope of wall time vs n: {s:.3} (input size is 2n^2, so 2.0 is linear)"),
        None => eprintln!("log-log slope of wall time vs n: n/a (need at least two sizes)"),
    }
    Ok(())
}
