mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use cbrauer_core::criterion::{
    bar_delta, bar_delta_symbolic, brauer_z, decide, g_mu, z_set, CriterionVariant, SetVariant,
};
use cbrauer_core::diagram::{basis_size, enumerate_basis, verify_relations, BrauerAlgebra, DEFAULT_BASIS_CAP};
use cbrauer_core::gram::{
    cell_gram_numeric, cell_gram_symbolic, equivariance_check, gram_big, random_symmetric_delta, single_box_gram,
    DEFAULT_GRAM_CAP,
};
use cbrauer_core::oracle::{concordance_sweep, semisimple_verdict, GridSpec, StructureTable, DEFAULT_TABLE_CAP};
use cbrauer_core::partition::{admissible_set, t_set, Multipartition, DEFAULT_TSET_CAP};
use cbrauer_core::scalar::{Field, FieldSpec, Scalar};
use cbrauer_core::wreath::{enumerate_group, group_order, verify_prop_eta, DEFAULT_GROUP_CAP};
use cbrauer_core::Error;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use config::RunConfig;

const DEFAULT_SEED: u64 = 20240229;

/// Exact computations in the cyclotomic Brauer algebra B_{m,n}(delta).
///
/// Output is JSON on stdout (or --out). Exit codes: 0 success, 1 usage error,
/// 2 computational failure (cap exceeded, no root of unity of order m),
/// 3 a verification found failures.
#[derive(Parser, Debug)]
#[command(name = "cbrauer", version, verbatim_doc_comment)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the seventeen defining relations (braid, tangle, loop and dot relations) on dotted diagrams.
    Relations(MnArgs),
    /// Count the dotted-diagram basis (m^n (2n-1)!!) and the wreath product W_{m,n} (m^n n!).
    Dim(CapArgs),
    /// Enumerate the complex reflection group W_{m,n} = Z_m wr S_n.
    Group(GroupArgs),
    /// The set of integers k for which bar_delta_i = eps_{i,0} m - k is a non-semisimple hyperplane.
    Zset(ZsetArgs),
    /// Admissible pairs (lambda, mu) with lambda obtained from mu by adding two boxes.
    Admissible(MuArgs),
    /// The scalar g_mu through which the cell-module Gram form acts, numerically or symbolically.
    Gmu(GmuArgs),
    /// The discrete Fourier transform bar_delta_i = sum_j delta_j xi^{ij}.
    BarDelta(DeltaArgs),
    /// Semisimplicity verdict from the hyperplane criterion.
    Decide(DecideArgs),
    /// Gram matrix of the iota-invariant pairing on the one-arc module V.
    Gram(GramArgs),
    /// Gram matrix of the cell module with one horizontal arc and through-shape mu.
    CellGram(CellGramArgs),
    /// Cell Gram matrix for mu with a single box in the last component.
    SingleBox(MArgs),
    /// Brute-force semisimplicity by the rank of the trace form on the structure table.
    Oracle(OracleArgs),
    /// Sweep a parameter grid comparing every criterion variant against the oracle.
    Concord(ConcordArgs),
    /// Check the explicit splitting of the induced module for two boxes.
    PropEta(MArgs),
    /// Contents of single boxes addable to partitions of a, against the closed form.
    Tset(TsetArgs),
    /// Run the subcommand described by a TOML configuration file.
    Run(RunArgs),
}

#[derive(Args, Debug)]
struct Output {
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MnArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct MArgs {
    #[arg(long)]
    m: u32,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CapArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: usize,
    /// Largest basis that is enumerated explicitly.
    #[arg(long, default_value_t = DEFAULT_BASIS_CAP)]
    cap: u128,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    cap: u128,
    /// Include every element in the output.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ZsetArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// printed, combinatorial, or brauer (m = 1 only).
    #[arg(long, default_value = "printed")]
    variant: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct MuArgs {
    /// Multipartition as JSON ([[2,1],[],[1]]) or bar form (2,1||1).
    #[arg(long)]
    mu: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct Scalars {
    /// Characteristic: 0, or a prime p (values are then residues in the splitting field of x^m - 1).
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Loop parameters delta_0,...,delta_{m-1}. Each value is a rational or
    /// power-basis coordinates joined by ':'.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
}

#[derive(Args, Debug)]
struct GmuArgs {
    #[arg(long)]
    mu: String,
    #[command(flatten)]
    scalars: Scalars,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DeltaArgs {
    #[arg(long)]
    m: u32,
    #[command(flatten)]
    scalars: Scalars,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DecideArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    scalars: Scalars,
    /// printed-Z, combinatorial-rho or gmu-route.
    #[arg(long, default_value = "combinatorial-rho")]
    variant: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct GramArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    scalars: Scalars,
    #[arg(long, default_value_t = DEFAULT_GRAM_CAP)]
    cap: u128,
    /// Also check equivariance at seeded random symmetric parameters.
    #[arg(long)]
    equivariance: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct CellGramArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    mu: String,
    #[command(flatten)]
    scalars: Scalars,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    scalars: Scalars,
    #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
    cap: u128,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ConcordArgs {
    /// Grid file (JSON, or TOML by extension). Defaults to the standard grid.
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    cap: Option<u128>,
    /// Also write a CSV table.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct TsetArgs {
    #[arg(long)]
    a: usize,
    #[arg(long, default_value_t = DEFAULT_TSET_CAP)]
    cap: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Mismatch(_) | Error::OutOfRange(_) | Error::InvalidField(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn emit<T: Serialize>(value: &T, output: &Output) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Compute(e.to_string()))? + "\n";
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Compute(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn field_for(characteristic: u64, m: u32) -> Result<Field, Failure> {
    Ok(if characteristic == 0 {
        Field::cyclotomic(m as u64)?
    } else {
        Field::new(FieldSpec::prime_splitting(characteristic, m as u64)?)?
    })
}

fn parse_delta(field: &Field, m: u32, text: &str) -> Result<Vec<Scalar>, Failure> {
    let values = text.split(',').map(|v| field.parse(&v.replace(':', ","))).collect::<Result<Vec<_>, _>>()?;
    if values.len() != m as usize {
        return Err(Failure::Usage(format!("expected {m} loop parameters, got {}", values.len())));
    }
    Ok(values)
}

fn required_delta(field: &Field, m: u32, scalars: &Scalars) -> Result<Vec<Scalar>, Failure> {
    match &scalars.delta {
        Some(text) => parse_delta(field, m, text),
        None => Err(Failure::Usage("--delta is required".into())),
    }
}

fn load_grid(path: &PathBuf) -> Result<GridSpec, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let parsed = if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str(&text).map_err(|e| e.to_string())
    } else {
        serde_json::from_str(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Relations(a) => {
            let report = verify_relations(a.m, a.n)?;
            emit(&report, &a.output)?;
            Ok(report.passed())
        }
        Command::Dim(a) => {
            let expected = basis_size(a.m, a.n);
            let enumerated = enumerate_basis(a.m, a.n, a.cap)?.len() as u128;
            let order = group_order(a.m, a.n);
            emit(
                &json!({"m": a.m, "n": a.n, "basis_size": expected.to_string(), "enumerated": enumerated.to_string(), "group_order": order.to_string()}),
                &a.output,
            )?;
            Ok(enumerated == expected)
        }
        Command::Group(a) => {
            let elements = enumerate_group(a.m, a.n, a.cap)?;
            let order = group_order(a.m, a.n);
            let mut v = json!({"m": a.m, "n": a.n, "order": order.to_string(), "enumerated": elements.len()});
            if a.list {
                v["elements"] = serde_json::to_value(&elements).map_err(|e| Failure::Compute(e.to_string()))?;
            }
            emit(&v, &a.output)?;
            Ok(elements.len() as u128 == order)
        }
        Command::Zset(a) => {
            let set = match a.variant.as_str() {
                "printed" | "printed-Z" | "printed-z" => z_set(a.m, a.n, SetVariant::Printed)?,
                "combinatorial" | "combinatorial-rho" | "rho" => z_set(a.m, a.n, SetVariant::Combinatorial)?,
                "brauer" if a.m == 1 => brauer_z(a.n)?,
                other => return Err(Failure::Usage(format!("unknown set variant {other:?} for m = {}", a.m))),
            };
            emit(&set, &a.output)?;
            Ok(true)
        }
        Command::Admissible(a) => {
            let mu = Multipartition::parse(&a.mu)?;
            emit(&admissible_set(&mu), &a.output)?;
            Ok(true)
        }
        Command::Gmu(a) => {
            let mu = Multipartition::parse(&a.mu)?;
            let m = mu.m() as u32;
            let field = field_for(a.scalars.characteristic, m)?;
            let value = match &a.scalars.delta {
                Some(text) => {
                    let bars = bar_delta(&parse_delta(&field, m, text)?)?;
                    g_mu(&mu, &bars)?.to_string()
                }
                None => g_mu(&mu, &bar_delta_symbolic(&field, m as usize)?)?.to_string(),
            };
            emit(&json!({"mu": mu.to_string(), "field": field.spec().to_string(), "g_mu": value}), &a.output)?;
            Ok(true)
        }
        Command::BarDelta(a) => {
            let field = field_for(a.scalars.characteristic, a.m)?;
            let delta = required_delta(&field, a.m, &a.scalars)?;
            let bars: Vec<String> = bar_delta(&delta)?.iter().map(ToString::to_string).collect();
            emit(&json!({"m": a.m, "field": field.spec().to_string(), "bar_delta": bars}), &a.output)?;
            Ok(true)
        }
        Command::Decide(a) => {
            let variant: CriterionVariant = a.variant.parse()?;
            let field = field_for(a.scalars.characteristic, a.m)?;
            let delta = required_delta(&field, a.m, &a.scalars)?;
            emit(&decide(a.n, &delta, variant)?, &a.output)?;
            Ok(true)
        }
        Command::Gram(a) => {
            let field = field_for(a.scalars.characteristic, a.m)?;
            let mut v = match &a.scalars.delta {
                Some(text) => {
                    let alg = BrauerAlgebra::numeric(a.m, a.n, parse_delta(&field, a.m, text)?)?;
                    serde_json::to_value(gram_big(&alg, a.cap)?.with_exact_det())
                }
                None => serde_json::to_value(gram_big(&BrauerAlgebra::symbolic(&field, a.m, a.n)?, a.cap)?.with_det()),
            }
            .map_err(|e| Failure::Compute(e.to_string()))?;
            let mut passed = true;
            if a.equivariance {
                let delta = random_symmetric_delta(&field, a.m, a.seed);
                let report = equivariance_check(&BrauerAlgebra::numeric(a.m, a.n, delta)?, a.cap)?;
                passed = report.passed();
                v["equivariance"] = serde_json::to_value(&report).map_err(|e| Failure::Compute(e.to_string()))?;
            }
            emit(&v, &a.output)?;
            Ok(passed)
        }
        Command::CellGram(a) => {
            let mu = Multipartition::parse(&a.mu)?;
            let m = mu.m() as u32;
            let field = field_for(a.scalars.characteristic, m)?;
            match &a.scalars.delta {
                Some(text) => emit(&cell_gram_numeric(a.n, &mu, &parse_delta(&field, m, text)?)?, &a.output)?,
                None => emit(&cell_gram_symbolic(&field, m, a.n, &mu)?, &a.output)?,
            }
            Ok(true)
        }
        Command::SingleBox(a) => {
            let report = single_box_gram(a.m)?;
            emit(&report, &a.output)?;
            Ok(report.printed_holds_at_zero)
        }
        Command::Oracle(a) => {
            let field = field_for(a.scalars.characteristic, a.m)?;
            let delta = required_delta(&field, a.m, &a.scalars)?;
            let table = StructureTable::build(a.m, a.n, a.cap)?;
            emit(&semisimple_verdict(&table, &delta)?, &a.output)?;
            Ok(true)
        }
        Command::Concord(a) => {
            let mut grid = match &a.grid {
                Some(path) => load_grid(path)?,
                None => GridSpec::standard(DEFAULT_SEED),
            };
            if let Some(seed) = a.seed {
                grid.seed = seed;
            }
            if let Some(cap) = a.cap {
                grid.table_cap = cap;
            }
            let report = concordance_sweep(&grid, a.jobs)?;
            if let Some(path) = &a.csv {
                std::fs::write(path, report.to_csv())
                    .map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))?;
            }
            emit(&report, &a.output)?;
            Ok(report.summary.disagreements.is_empty() && report.summary.cell_inconsistencies.is_empty())
        }
        Command::PropEta(a) => {
            let report = verify_prop_eta(a.m)?;
            emit(&report, &a.output)?;
            Ok(report.passed())
        }
        Command::Tset(a) => {
            let report = t_set(a.a, a.cap)?;
            emit(&report, &a.output)?;
            Ok(report.equal)
        }
        Command::Run(a) => {
            let config = RunConfig::load(&a.config).map_err(Failure::Usage)?;
            if config.command == "run" {
                return Err(Failure::Usage("a configuration cannot invoke run".into()));
            }
            let cli = Cli::try_parse_from(config.to_args()).map_err(|e| Failure::Usage(e.to_string()))?;
            run(cli.command)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failures found");
            ExitCode::from(3)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
