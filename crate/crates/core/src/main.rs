use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hh1_core::algebra::{
    kronecker, quiver_algebra, smash_product, split_semisimple, trivial_extension,
    truncated_polynomial, u0_borel, Algebra, AlgebraJson, QuiverPresentation,
};
use hh1_core::hochschild::{hh1_seeded, DEFAULT_SEED};
use hh1_core::lie::{fingerprint, RestrictedLie};
use hh1_core::linalg::Fp;
use hh1_core::suite::{all_passed, markdown_table, reproduce, SuiteConfig, SUITE_PRIMES};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INVALID_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hh1",
    about = "First Hochschild cohomology of finite-dimensional algebras over GF(p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the structure constants of a named algebra as JSON.
    Build(AlgebraArgs),
    /// Compute HH¹ as a restricted Lie algebra and print its report.
    Hh1(AlgebraArgs),
    /// Run every check of the reproduction suite.
    ReproducePaper(SuiteArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    /// A(n, r) = k[x]/(x^{p^n}) smash (Z/p^r)^*
    Smash,
    /// k[x_1..x_m]/(x_i^{p^{a_i}})
    Trunc,
    /// bound quiver presentation of the trivial extension of the Kronecker algebra
    Quiver,
    /// trivial extension of the Kronecker algebra
    Trivext,
    /// restricted enveloping algebra of the Borel subalgebra of sl2
    U0borel,
    /// algebra read from --file
    Json,
    /// the Kronecker algebra
    Kronecker,
    /// GF(p)^n
    Split,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 3)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Comma-separated exponents a_i.
    #[arg(long, value_delimiter = ',')]
    exps: Vec<u32>,
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Also write the JSON output to this file.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, default_value_t = 3)]
    p: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the JSON array of check results here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the markdown table here.
    #[arg(long)]
    md: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

enum Failure {
    Usage(String),
    Invalid(String),
}

fn field(p: u32) -> Result<Fp, Failure> {
    if p < 3 {
        return Err(Failure::Usage(format!(
            "--p {p} is not allowed: characteristic Char(k):=p≥3 is required"
        )));
    }
    Fp::new(p).map_err(|e| Failure::Usage(format!("--p {p}: {e}")))
}

fn build_algebra(args: &AlgebraArgs) -> Result<Algebra, Failure> {
    let usage = |e: &dyn std::fmt::Display| Failure::Usage(e.to_string());
    if let Kind::Json = args.kind {
        let path = args
            .file
            .as_ref()
            .ok_or_else(|| Failure::Usage("--kind json needs --file".into()))?;
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
        return AlgebraJson::parse(&text).map_err(|e| Failure::Invalid(e.to_string()));
    }
    let f = field(args.p)?;
    match args.kind {
        Kind::Smash => smash_product(f, args.n, args.r)
            .map(|(a, _)| a)
            .map_err(|e| usage(&e)),
        Kind::Trunc => {
            if args.exps.is_empty() {
                return Err(Failure::Usage("--kind trunc needs --exps".into()));
            }
            truncated_polynomial(f, &args.exps).map_err(|e| usage(&e))
        }
        Kind::Quiver => quiver_algebra(f, &QuiverPresentation::trivial_extension_kronecker())
            .map_err(|e| usage(&e)),
        Kind::Trivext => kronecker(f)
            .and_then(|k| trivial_extension(&k))
            .map_err(|e| usage(&e)),
        Kind::U0borel => u0_borel(f, args.n).map_err(|e| usage(&e)),
        Kind::Kronecker => kronecker(f).map_err(|e| usage(&e)),
        Kind::Split => split_semisimple(f, args.n as usize).map_err(|e| usage(&e)),
        Kind::Json => unreachable!("handled above"),
    }
}

/// Serializing through `Value` sorts object keys.
fn canonical(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("JSON value serializes")
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), Failure> {
    println!("{text}");
    if let Some(path) = path {
        std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_build(args: &AlgebraArgs) -> Result<u8, Failure> {
    let a = build_algebra(args)?;
    let v = serde_json::to_value(AlgebraJson::from(&a)).expect("algebra JSON serializes");
    emit(&canonical(v), args.json.as_ref())?;
    Ok(0)
}

fn cmd_hh1(args: &AlgebraArgs) -> Result<u8, Failure> {
    let a = build_algebra(args)?;
    let h = hh1_seeded(&a, args.seed).map_err(|e| Failure::Invalid(e.to_string()))?;
    let l = RestrictedLie::from_hh1(&h).map_err(|e| Failure::Invalid(e.to_string()))?;
    let fp = fingerprint(&l).map_err(|e| Failure::Invalid(e.to_string()))?;
    let v = json!({
        "dim": a.dim(),
        "report": h.report(),
        "lie": l.to_json(),
        "fingerprint": fp,
    });
    emit(&canonical(v), args.json.as_ref())?;
    Ok(0)
}

fn cmd_reproduce(args: &SuiteArgs) -> Result<u8, Failure> {
    field(args.p)?;
    if !SUITE_PRIMES.contains(&args.p) {
        return Err(Failure::Usage(format!(
            "the suite has parameter sets for p in {SUITE_PRIMES:?} only"
        )));
    }
    let cfg = SuiteConfig {
        p: args.p,
        seed: args.seed,
        inject_fault: args.inject_fault,
    };
    let results = reproduce(&cfg);
    let table = markdown_table(args.p, &results);
    print!("{table}");
    let write = |path: &PathBuf, text: String| {
        std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    };
    if let Some(path) = &args.json {
        let v = serde_json::to_value(&results).expect("results serialize");
        write(path, canonical(v) + "\n")?;
    }
    if let Some(path) = &args.md {
        write(path, table)?;
    }
    Ok(if all_passed(&results) {
        0
    } else {
        EXIT_CHECK_FAILED
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Hh1(a) => cmd_hh1(a),
        Command::ReproducePaper(s) => cmd_reproduce(s),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("invalid input: {msg}");
            ExitCode::from(EXIT_INVALID_INPUT)
        }
    }
}
