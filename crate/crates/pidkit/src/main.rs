//! Command-line front end: capacity reports, scheme construction,
//! simulation, verification, converse certification, and capacity sweeps.
//!
//! Exit codes are a stable contract: 0 success, 1 verification or decode
//! failure, 2 usage or parse errors. `PIDKIT_BUDGET` overrides the default
//! enumeration budgets (exhaustive privacy states and converse designs)
//! when the corresponding flag is absent.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pidkit::capacity::{capacity_report, min_servers, threshold_n, CapacityReport};
use pidkit::converse::{converse_rate, DEFAULT_DESIGN_BUDGET};
use pidkit::error::Error;
use pidkit::ratio::{frac_string, Frac};
use pidkit::scheme::Scheme;
use pidkit::sim::{random_messages, run_delivery};
use pidkit::verify::{verify_scheme, ExhaustiveOutcome, DEFAULT_STATE_BUDGET};
use pidkit::{build_basic, build_full_rate, build_intermediate};

#[derive(Parser)]
#[command(
    name = "pidkit",
    version,
    about = "Private information delivery toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report exact capacity bounds for (K, M, N)
    Capacity(CapacityArgs),
    /// Construct a scheme, verify it, and emit its JSON document
    Build(BuildArgs),
    /// Run deliveries from a scheme file and report decode success
    Simulate(SimulateArgs),
    /// Check correctness, privacy, and randomness accounting of a scheme file
    Verify(VerifyArgs),
    /// Search storage designs for a certified rate upper bound
    Converse(ConverseArgs),
    /// Emit a CSV of capacity bounds over a range of server counts
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CapacityArgs {
    k: usize,
    m: usize,
    n: usize,
    /// Emit the full report as JSON
    #[arg(long)]
    json: bool,
    /// Render bounds as decimals instead of fractions
    #[arg(long)]
    decimal: bool,
}

#[derive(Args)]
struct BuildArgs {
    k: usize,
    m: usize,
    /// Server count (default: the full-rate threshold)
    #[arg(long)]
    servers: Option<usize>,
    /// Write the scheme document here instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Scheme document produced by `build`
    scheme: String,
    /// Deliver this message index on every trial (default: rotate randomly)
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    /// Write the transcript document(s) here
    #[arg(long)]
    emit_transcript: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Scheme document produced by `build`
    scheme: String,
    /// Cap on enumerated states p^(D_sigma) for the exhaustive privacy check
    #[arg(long)]
    exhaustive_budget: Option<u128>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConverseArgs {
    k: usize,
    m: usize,
    n: usize,
    /// Cap on enumerated design candidates
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long = "K")]
    k: usize,
    #[arg(long = "M")]
    m: usize,
    /// Inclusive server-count range, e.g. 3..6
    #[arg(long = "N-range")]
    n_range: String,
    /// Write CSV here instead of stdout
    #[arg(long)]
    csv: Option<String>,
    /// Report closed-form bounds only; do not run the converse search
    #[arg(long)]
    no_search: bool,
    /// Cap on enumerated design candidates per searched cell
    #[arg(long)]
    budget: Option<u64>,
    /// Render bounds as decimals instead of fractions
    #[arg(long)]
    decimal: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Capacity(args) => cmd_capacity(args),
        Command::Build(args) => cmd_build(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Converse(args) => cmd_converse(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// 2 for bad input (parameters, files, regimes, budgets); 1 for artifacts
/// that fail their own checks.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::ConstructionFailure(_) | Error::StorageViolation { .. } => 1,
        _ => 2,
    }
}

fn env_budget() -> Option<u64> {
    std::env::var("PIDKIT_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
}

fn state_budget(flag: Option<u128>) -> u128 {
    flag.or_else(|| env_budget().map(u128::from))
        .unwrap_or(DEFAULT_STATE_BUDGET)
}

fn design_budget(flag: Option<u64>) -> u64 {
    flag.or_else(env_budget).unwrap_or(DEFAULT_DESIGN_BUDGET)
}

fn render(r: &Frac, decimal: bool) -> String {
    if decimal {
        format!("{:.6}", *r.numer() as f64 / *r.denom() as f64)
    } else {
        frac_string(r)
    }
}

fn cmd_capacity(args: CapacityArgs) -> Result<ExitCode, Error> {
    let report = capacity_report(args.k, args.m, args.n)?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        print_capacity_line(&report, args.decimal);
    }
    Ok(ExitCode::SUCCESS)
}

fn print_capacity_line(report: &CapacityReport, decimal: bool) {
    let point = format!("K={} M={} N={}", report.k, report.m, report.n);
    match report.exact_value() {
        Some(c) if !report.feasible => {
            println!("{point}: infeasible (capacity {})", render(&c, decimal))
        }
        Some(c) => println!("{point}: capacity = {}", render(&c, decimal)),
        None => println!(
            "{point}: capacity in [{}, {}] (open regime)",
            render(&report.lower, decimal),
            render(&report.upper, decimal)
        ),
    }
}

fn cmd_build(args: BuildArgs) -> Result<ExitCode, Error> {
    let threshold = threshold_n(args.k, args.m)?;
    let n = args.servers.unwrap_or(threshold);
    let floor = min_servers(args.k, args.m);
    if n < floor {
        return Err(Error::RegimeViolation(format!(
            "N={n} cannot store {} messages at {} per server; need at least {floor}",
            args.k, args.m
        )));
    }
    if n > threshold {
        return Err(Error::RegimeViolation(format!(
            "N={n} exceeds the threshold {threshold}; rate M/K is already achievable there"
        )));
    }
    let scheme = if n == floor {
        build_basic(args.k, args.m)?
    } else if n == threshold {
        build_full_rate(args.k, args.m)?
    } else {
        build_intermediate(args.k, args.m, n)?
    };
    let report = verify_scheme(&scheme, state_budget(None));
    if !report.all_ok() {
        for finding in &report.details {
            eprintln!("verification: {finding}");
        }
        return Ok(ExitCode::from(1));
    }
    let json = scheme.to_json();
    match &args.out {
        Some(path) => {
            fs::write(path, &json).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            eprintln!(
                "wrote K={} M={} N={} scheme (rate {}) to {path}",
                scheme.k(),
                scheme.m(),
                scheme.n(),
                frac_string(&scheme.rate()),
            );
        }
        None => print!("{json}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn load_scheme(path: &str) -> Result<Scheme, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    Scheme::from_json(&text)
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode, Error> {
    let scheme = load_scheme(&args.scheme)?;
    if let Some(k) = args.k {
        if k == 0 || k > scheme.k() {
            return Err(Error::IndexOutOfRange {
                index: k,
                bound: scheme.k(),
            });
        }
    }
    let mut index_rng = ChaCha8Rng::seed_from_u64(args.seed);
    index_rng.set_stream(2);
    let mut transcripts = Vec::new();
    let mut ok = 0u64;
    for trial in 0..args.trials {
        let seed = args.seed.wrapping_add(trial);
        let k = args
            .k
            .unwrap_or_else(|| index_rng.gen_range(1..=scheme.k()));
        let messages = random_messages(&scheme, seed);
        let transcript = run_delivery(&scheme, k, &messages, seed)?;
        if transcript.decode_ok() {
            ok += 1;
        } else {
            eprintln!("decode failure: trial {trial}, k={k}");
        }
        transcripts.push(transcript);
    }
    println!(
        "decoded {ok}/{} deliveries (download {} symbols each)",
        args.trials,
        scheme.d_sigma()
    );
    if let Some(path) = &args.emit_transcript {
        let json = if transcripts.len() == 1 {
            serde_json::to_string_pretty(&transcripts[0].to_document())
        } else {
            let docs: Vec<_> = transcripts.iter().map(|t| t.to_document()).collect();
            serde_json::to_string_pretty(&docs)
        }
        .expect("serializable");
        fs::write(path, json + "\n").map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    Ok(if ok == args.trials {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let scheme = load_scheme(&args.scheme)?;
    let report = verify_scheme(&scheme, state_budget(args.exhaustive_budget));
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        let flag = |ok: bool| if ok { "ok" } else { "FAILED" };
        println!("correctness:        {}", flag(report.correctness_ok));
        println!("privacy (rank):     {}", flag(report.rank_privacy_ok));
        match &report.exhaustive_privacy {
            ExhaustiveOutcome::Passed => println!("privacy (exhaustive): passed"),
            ExhaustiveOutcome::Skipped { states } => {
                println!("privacy (exhaustive): skipped ({states} states)")
            }
            ExhaustiveOutcome::Failed { k, detail } => {
                println!("privacy (exhaustive): FAILED at k={k} ({detail})")
            }
        }
        println!("security:           {}", flag(report.security_ok));
        println!("randomness size:    {}", flag(report.eta_ok));
        for finding in &report.details {
            println!("  - {finding}");
        }
    }
    Ok(if report.all_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_converse(args: ConverseArgs) -> Result<ExitCode, Error> {
    let cert = converse_rate(args.k, args.m, args.n, design_budget(args.budget))?;
    if args.json {
        print!("{}", cert.to_json());
    } else {
        println!(
            "K={} M={} N={}: rate <= {} (min download {}, {} designs examined{})",
            cert.k,
            cert.m,
            cert.n,
            frac_string(&cert.rate_bound),
            frac_string(&cert.lp_value),
            cert.designs_examined,
            if cert.cap_attained {
                ", ceiling attained"
            } else {
                ""
            },
        );
        println!("best design: {:?}", cert.best_design.sets());
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_range(text: &str) -> Result<(usize, usize), Error> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("N range {text:?} is not of the form a..b")))?;
    let lo = a
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad range start {a:?}")))?;
    let hi = b
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad range end {b:?}")))?;
    Ok((lo, hi))
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, Error> {
    let (lo, hi) = parse_range(&args.n_range)?;
    let budget = design_budget(args.budget);
    let mut csv = String::from("K,M,N,lower,upper,exact,source\n");
    for n in lo..=hi {
        let report = capacity_report(args.k, args.m, n)?;
        let (lower, upper, exact, source);
        if let Some(c) = report.exact_value() {
            lower = c;
            upper = c;
            exact = true;
            source = "closed-form";
        } else if !args.no_search {
            match converse_rate(args.k, args.m, n, budget) {
                Ok(cert) => {
                    lower = report.lower;
                    upper = cert.rate_bound;
                    exact = lower == upper;
                    source = "search-certified";
                }
                Err(Error::BudgetExceeded { .. }) => {
                    lower = report.lower;
                    upper = report.upper;
                    exact = false;
                    source = "closed-form";
                }
                Err(e) => return Err(e),
            }
        } else {
            lower = report.lower;
            upper = report.upper;
            exact = false;
            source = "closed-form";
        }
        csv.push_str(&format!(
            "{},{},{n},{},{},{exact},{source}\n",
            args.k,
            args.m,
            render(&lower, args.decimal),
            render(&upper, args.decimal),
        ));
    }
    match &args.csv {
        Some(path) => fs::write(path, &csv).map_err(|e| Error::Parse(format!("{path}: {e}")))?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}
