//! Command-line front end for exact Fock-space computations.
//!
//! Exit codes: 0 on success, 1 when a verification or identity check fails,
//! 2 on usage or parse errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use focklab::clifford;
use focklab::fock::FockVector;
use focklab::maya::{black_positions, maya_of, maya_to_partition, MayaSpec};
use focklab::partition::Partition;
use focklab::qfock;
use focklab::scalar::{LaurentQ, Rat};
use focklab::symfunc::{char_poly, schur};
use focklab::verify::{run_suite, SuiteReport, VerifyOptions};
use focklab::vertex::{fermion_from_bosons, fermion_star_from_bosons};
use focklab::{ChargedPartition, HalfInt};

use focklab_cli::eval::{eval_expr, EvalRing};
use focklab_cli::expr;
use focklab_cli::output::{boson_poly_json, fock_json, state_json, sym_poly_json, CoeffJson};

#[derive(Parser)]
#[command(
    name = "focklab",
    version,
    about = "Exact computations in fermionic/bosonic Fock space",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert between ket, Maya-window and wedge indexings.
    Convert(ConvertArgs),
    /// Apply an operator expression to a basis ket.
    Act(ActArgs),
    /// Print the character polynomial of a partition.
    Chi(ChiArgs),
    /// Print a Schur polynomial in finitely many variables.
    Schur(SchurArgs),
    /// Compare a creation/annihilation operator with its series form.
    BfCheck(BfCheckArgs),
    /// Apply a q-deformed generator to a basis ket.
    MmAct(MmActArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ConvertArgs {
    /// A ket like '(4,3,3,1,1);-1'.
    #[arg(long, conflicts_with = "maya")]
    state: Option<String>,
    /// A Maya window as JSON with doubled positions.
    #[arg(long)]
    maya: Option<String>,
    /// Target indexing.
    #[arg(long, value_enum)]
    to: ConvertTarget,
    /// Number of wedge indices to print.
    #[arg(long, default_value_t = 8)]
    count: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum ConvertTarget {
    State,
    Maya,
    Wedge,
}

#[derive(Args)]
struct ActArgs {
    /// Operator expression, e.g. 'alpha(2)' or '[alpha(1), alpha(-1)]'.
    #[arg(long)]
    expr: String,
    /// The basis ket acted on.
    #[arg(long)]
    state: String,
    /// Level for E/F/Eq/Fq/K/d atoms.
    #[arg(long)]
    level: Option<u32>,
    /// Coefficient ring.
    #[arg(long, value_enum, default_value_t = RingChoice::Rat)]
    ring: RingChoice,
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RingChoice {
    Rat,
    Q,
}

#[derive(Args)]
struct ChiArgs {
    /// Comma-separated parts, e.g. '2,1'; empty for the empty partition.
    #[arg(long, default_value = "")]
    partition: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SchurArgs {
    #[arg(long, default_value = "")]
    partition: String,
    /// Number of variables.
    #[arg(long)]
    vars: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BfCheckArgs {
    /// The mode, a half-integer like '7/2'.
    #[arg(long)]
    m: String,
    /// The basis ket.
    #[arg(long)]
    state: String,
    /// Check the annihilation side instead of the creation side.
    #[arg(long)]
    star: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MmActArgs {
    #[arg(long)]
    level: u32,
    /// Generator name: E0, F1, K0 and so on.
    #[arg(long)]
    op: String,
    #[arg(long)]
    state: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name; see the error message for the list.
    #[arg(long)]
    suite: String,
    /// Bound on |λ| where applicable.
    #[arg(long)]
    max_size: Option<u32>,
    /// Number of random cases where applicable.
    #[arg(long)]
    cases: Option<u64>,
    /// Total degree for the series relations.
    #[arg(long)]
    degree: Option<i64>,
    #[arg(long, default_value_t = 0xF0C1AB)]
    seed: u64,
    /// Worker count; FOCKLAB_THREADS or the core count by default.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    json: bool,
}

/// A usage-level failure: reported on stderr with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.command {
        Command::Convert(args) => cmd_convert(args),
        Command::Act(args) => cmd_act(args),
        Command::Chi(args) => cmd_chi(args),
        Command::Schur(args) => cmd_schur(args),
        Command::BfCheck(args) => cmd_bf_check(args),
        Command::MmAct(args) => cmd_mm_act(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn parse_state(s: &str) -> Result<ChargedPartition, UsageError> {
    Ok(s.parse::<ChargedPartition>()?)
}

fn parse_partition(s: &str) -> Result<Partition, UsageError> {
    let mut parts = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        parts.push(
            tok.parse::<u32>()
                .map_err(|_| UsageError(format!("bad part {tok:?}")))?,
        );
    }
    Ok(Partition::new(parts)?)
}

fn cmd_convert(args: ConvertArgs) -> Result<ExitCode, UsageError> {
    let state = match (&args.state, &args.maya) {
        (Some(s), None) => parse_state(s)?,
        (None, Some(j)) => {
            let maya: MayaSpec = serde_json::from_str(j)?;
            maya_to_partition(&maya)?
        }
        _ => {
            return Err(UsageError(
                "provide exactly one of --state or --maya".into(),
            ))
        }
    };
    match args.to {
        ConvertTarget::State => {
            if args.json {
                println!("{}", state_json(&state));
            } else {
                println!("{state}");
            }
        }
        ConvertTarget::Maya => {
            println!("{}", serde_json::to_string(&maya_of(&state))?);
        }
        ConvertTarget::Wedge => {
            if args.count == 0 {
                return Err(UsageError("--count must be positive".into()));
            }
            let beads = black_positions(&state, args.count);
            if args.json {
                let doubled: Vec<i64> = beads.iter().map(|b| b.twice()).collect();
                println!("{}", serde_json::to_string(&doubled)?);
            } else {
                let text: Vec<String> = beads.iter().map(|b| b.to_string()).collect();
                println!("[{}]", text.join(", "));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn act_in_ring<R: EvalRing + CoeffJson>(args: &ActArgs) -> Result<ExitCode, UsageError> {
    let parsed = expr::parse(&args.expr)?;
    let op = eval_expr::<R>(&parsed, args.level)?;
    let state = parse_state(&args.state)?;
    let out = op.apply_basis(&state);
    if args.json {
        println!("{}", fock_json(&out));
    } else {
        println!("{out}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_act(args: ActArgs) -> Result<ExitCode, UsageError> {
    match args.ring {
        RingChoice::Rat => act_in_ring::<Rat>(&args),
        RingChoice::Q => act_in_ring::<LaurentQ>(&args),
    }
}

fn cmd_chi(args: ChiArgs) -> Result<ExitCode, UsageError> {
    let lam = parse_partition(&args.partition)?;
    let chi = char_poly(&lam);
    if args.json {
        println!("{}", boson_poly_json(&chi));
    } else {
        println!("{chi}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_schur(args: SchurArgs) -> Result<ExitCode, UsageError> {
    if args.vars == 0 {
        return Err(UsageError("--vars must be positive".into()));
    }
    let lam = parse_partition(&args.partition)?;
    let s = schur(&lam, args.vars);
    if args.json {
        println!("{}", sym_poly_json(&s));
    } else {
        println!("{s}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bf_check(args: BfCheckArgs) -> Result<ExitCode, UsageError> {
    let m: HalfInt = args.m.parse()?;
    let state = parse_state(&args.state)?;
    let (direct, series, label) = if args.star {
        (
            clifford::psi_star_apply::<Rat>(m, &state),
            fermion_star_from_bosons(m, &state),
            "psis",
        )
    } else {
        (
            clifford::psi_apply::<Rat>(m, &state),
            fermion_from_bosons(m, &state),
            "psi",
        )
    };
    let matches = direct == series;
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "operator": format!("{label}({m})"),
                "state": state_json(&state),
                "direct": fock_json(&direct),
                "series": fock_json(&series),
                "match": matches,
            })
        );
    } else {
        println!("{label}({m}) |{state}>");
        println!("  direct: {direct}");
        println!("  series: {series}");
        println!("  {}", if matches { "MATCH" } else { "MISMATCH" });
    }
    Ok(if matches {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_mm_act(args: MmActArgs) -> Result<ExitCode, UsageError> {
    let state = parse_state(&args.state)?;
    let (kind, idx) = args
        .op
        .split_at_checked(1)
        .ok_or_else(|| UsageError("empty --op".into()))?;
    let i: u32 = idx
        .parse()
        .map_err(|_| UsageError(format!("bad generator index in {:?}", args.op)))?;
    if i >= args.level {
        return Err(UsageError(format!(
            "residue {i} outside [0, {})",
            args.level
        )));
    }
    let out: FockVector<LaurentQ> = match kind {
        "E" => qfock::e_q(i, args.level).apply_basis(&state),
        "F" => qfock::f_q(i, args.level).apply_basis(&state),
        "K" => qfock::k_q(i, args.level).apply_basis(&state),
        other => {
            return Err(UsageError(format!(
                "unknown generator kind {other:?}; use E<i>, F<i> or K<i>"
            )))
        }
    };
    if args.json {
        println!("{}", fock_json(&out));
    } else {
        println!("{out}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, UsageError> {
    let opts = VerifyOptions {
        max_size: args.max_size,
        random_cases: args.cases,
        degree: args.degree,
        seed: args.seed,
        threads: args.threads,
    };
    let report: SuiteReport = run_suite(&args.suite, &opts)?;
    if args.json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        print!("{}", report.render_text());
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
