//! Command-line front end: replay a substitution trace over a text, verify
//! the index against the brute-force oracle, or benchmark dynamic maintenance
//! against full recomputation.
//!
//! Exit codes follow sysexits where they apply: 64 usage, 65 bad trace data,
//! 66 unreadable input, 2 verify mismatch.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use dynpal::{oracle, Error, PalindromeIndex};

const EX_OK: u8 = 0;
const EX_VERIFY_MISMATCH: u8 = 2;
const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_NOINPUT: u8 = 66;

const USAGE: &str = "\
Usage: dynpal <apply|verify|bench> --input FILE --trace FILE [options]

Subcommands:
  apply    run the trace; every Q command prints \"<start> <len>\"
  verify   run the trace, cross-checking each command against the oracle
  bench    run the trace and emit one CSV row of timing/instrumentation

Options:
  --input FILE   initial text, read as raw bytes (required)
  --trace FILE   line-oriented trace: S <pos> <symbol> | Q | C (required)
  --seed N       hash seed, default 0
  --csv FILE     bench: write the CSV there instead of stdout
  --mode M       bench: dynamic (default) or recompute
";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TraceCommand {
    Substitute(usize, u8),
    Query,
    Check,
}

struct Options {
    command: String,
    input: String,
    trace: String,
    seed: u64,
    csv: Option<String>,
    mode: String,
}

fn parse_args(args: &[String]) -> Result<Options, String> {
    if args.is_empty() {
        return Err("missing subcommand".into());
    }
    let command = args[0].clone();
    if !matches!(command.as_str(), "apply" | "verify" | "bench") {
        return Err(format!("unknown subcommand: {command}"));
    }
    let mut input = None;
    let mut trace = None;
    let mut seed = 0u64;
    let mut csv = None;
    let mut mode = "dynamic".to_string();
    let mut i = 1;
    while i < args.len() {
        let flag = args[i].as_str();
        let value = args.get(i + 1).ok_or_else(|| format!("{flag} needs a value"))?;
        match flag {
            "--input" => input = Some(value.clone()),
            "--trace" => trace = Some(value.clone()),
            "--seed" => seed = value.parse().map_err(|_| format!("bad seed: {value}"))?,
            "--csv" => csv = Some(value.clone()),
            "--mode" => {
                if value != "dynamic" && value != "recompute" {
                    return Err(format!("bad mode: {value}"));
                }
                mode = value.clone();
            }
            other => return Err(format!("unknown flag: {other}")),
        }
        i += 2;
    }
    Ok(Options {
        command,
        input: input.ok_or("--input is required")?,
        trace: trace.ok_or("--trace is required")?,
        seed,
        csv,
        mode,
    })
}

fn parse_trace(src: &str) -> Result<Vec<TraceCommand>, String> {
    let mut out = Vec::new();
    for (lineno, line) in src.lines().enumerate() {
        let mut tokens = line.split_whitespace();
        let Some(head) = tokens.next() else { continue };
        let cmd = match head {
            "Q" => TraceCommand::Query,
            "C" => TraceCommand::Check,
            "S" => {
                let pos = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| format!("line {}: bad position", lineno + 1))?;
                let sym = tokens
                    .next()
                    .filter(|t| t.len() == 1)
                    .map(|t| t.as_bytes()[0])
                    .ok_or_else(|| format!("line {}: bad symbol", lineno + 1))?;
                TraceCommand::Substitute(pos, sym)
            }
            other => return Err(format!("line {}: unknown command {other}", lineno + 1)),
        };
        if tokens.next().is_some() {
            return Err(format!("line {}: trailing tokens", lineno + 1));
        }
        out.push(cmd);
    }
    Ok(out)
}

fn print_longest(longest: Option<(usize, usize)>) {
    match longest {
        Some((start, len)) => println!("{start} {len}"),
        None => println!("0 0"),
    }
}

/// Full consistency check of the index against the oracle; the palindrome set
/// is compared exhaustively on small texts, the longest match always.
fn oracle_check(idx: &PalindromeIndex, step: usize) -> Result<(), String> {
    let bytes = idx.text().as_bytes();
    let want_longest = oracle::longest_palindrome_linear(bytes);
    let mut problems = String::new();
    if idx.longest() != want_longest {
        let _ = writeln!(
            problems,
            "longest: index {:?}, oracle {:?}",
            idx.longest(),
            want_longest
        );
    }
    if bytes.len() <= 2048 {
        let report = oracle::all_maximal_palindromes(bytes);
        let got = idx.all_maximal_palindromes();
        if got != report.palindromes {
            let missing: Vec<_> = report.palindromes.difference(&got).take(8).collect();
            let extra: Vec<_> = got.difference(&report.palindromes).take(8).collect();
            let _ = writeln!(problems, "palindrome set: missing {missing:?}, extra {extra:?}");
        }
    }
    if let Err(e) = idx.validate() {
        let _ = writeln!(problems, "structure: {e}");
    }
    if idx.collisions() > 0 {
        let _ = writeln!(problems, "{} hash collisions detected", idx.collisions());
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(format!(
            "verify mismatch after command #{step}:\n{problems}--- index state ---\n{}",
            idx.dump_state()
        ))
    }
}

fn run_index_trace(
    text: &[u8],
    trace: &[TraceCommand],
    seed: u64,
    verify_every: bool,
) -> Result<(), u8> {
    let mut idx = PalindromeIndex::build(text, seed);
    if verify_every {
        idx.set_verify(true);
        if let Err(msg) = oracle_check(&idx, 0) {
            eprintln!("{msg}");
            return Err(EX_VERIFY_MISMATCH);
        }
    }
    for (step, cmd) in trace.iter().enumerate() {
        match *cmd {
            TraceCommand::Substitute(pos, sym) => {
                if let Err(e) = idx.substitute(pos, sym) {
                    match e {
                        Error::OutOfRange { .. } => {
                            eprintln!("trace command {}: {e}", step + 1);
                            return Err(EX_DATAERR);
                        }
                        Error::Internal(_) => {
                            eprintln!("trace command {}: {e}\n{}", step + 1, idx.dump_state());
                            return Err(EX_VERIFY_MISMATCH);
                        }
                    }
                }
            }
            TraceCommand::Query => print_longest(idx.longest()),
            TraceCommand::Check => {
                if let Err(msg) = oracle_check(&idx, step + 1) {
                    eprintln!("{msg}");
                    return Err(EX_VERIFY_MISMATCH);
                }
            }
        }
        if verify_every {
            if let Err(msg) = oracle_check(&idx, step + 1) {
                eprintln!("{msg}");
                return Err(EX_VERIFY_MISMATCH);
            }
        }
    }
    Ok(())
}

fn run_bench(opts: &Options, text: &[u8], trace: &[TraceCommand]) -> Result<(), u8> {
    let n = text.len();
    let num_updates = trace
        .iter()
        .filter(|c| matches!(c, TraceCommand::Substitute(..)))
        .count();
    let (total_s, queue_ops, lce_ops) = if opts.mode == "dynamic" {
        let mut idx = PalindromeIndex::build(text, opts.seed);
        idx.reset_counters();
        let started = Instant::now();
        for cmd in trace {
            match *cmd {
                TraceCommand::Substitute(pos, sym) => {
                    if let Err(e) = idx.substitute(pos, sym) {
                        eprintln!("trace: {e}");
                        return Err(EX_DATAERR);
                    }
                }
                TraceCommand::Query | TraceCommand::Check => {
                    std::hint::black_box(idx.longest());
                }
            }
        }
        let total = started.elapsed().as_secs_f64();
        (total, idx.queue_ops(), idx.lce_ops())
    } else {
        let mut bytes = text.to_vec();
        let started = Instant::now();
        for cmd in trace {
            match *cmd {
                TraceCommand::Substitute(pos, sym) => {
                    if pos == 0 || pos > bytes.len() {
                        eprintln!("trace: position {pos} out of range");
                        return Err(EX_DATAERR);
                    }
                    bytes[pos - 1] = sym;
                    std::hint::black_box(oracle::longest_palindrome_linear(&bytes));
                }
                TraceCommand::Query | TraceCommand::Check => {
                    std::hint::black_box(oracle::longest_palindrome_linear(&bytes));
                }
            }
        }
        (started.elapsed().as_secs_f64(), 0, 0)
    };

    let per_update_us = if num_updates > 0 {
        total_s * 1e6 / num_updates as f64
    } else {
        0.0
    };
    let mean = |ops: u64| if num_updates > 0 { ops as f64 / num_updates as f64 } else { 0.0 };
    let mut csv = String::from("n,updates,mode,total_s,per_update_us,queue_ops,lce_ops\n");
    let _ = writeln!(
        csv,
        "{},{},{},{:.6},{:.3},{:.2},{:.2}",
        n,
        num_updates,
        opts.mode,
        total_s,
        per_update_us,
        mean(queue_ops),
        mean(lce_ops)
    );
    match &opts.csv {
        Some(path) => std::fs::write(path, csv).map_err(|e| {
            eprintln!("writing {path}: {e}");
            EX_NOINPUT
        })?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn run() -> u8 {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let opts = match parse_args(&args) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}\n\n{USAGE}");
            return EX_USAGE;
        }
    };
    let text = match std::fs::read(&opts.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("reading {}: {e}", opts.input);
            return EX_NOINPUT;
        }
    };
    let trace_src = match std::fs::read_to_string(&opts.trace) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("reading {}: {e}", opts.trace);
            return EX_NOINPUT;
        }
    };
    let trace = match parse_trace(&trace_src) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}\n\n{USAGE}");
            return EX_USAGE;
        }
    };
    let outcome = match opts.command.as_str() {
        "apply" => run_index_trace(&text, &trace, opts.seed, false),
        "verify" => run_index_trace(&text, &trace, opts.seed, true),
        "bench" => run_bench(&opts, &text, &trace),
        _ => unreachable!(),
    };
    match outcome {
        Ok(()) => EX_OK,
        Err(code) => code,
    }
}

fn main() -> ExitCode {
    ExitCode::from(run())
}
