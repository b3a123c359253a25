//! `tropbell`: classical bounds of Bell inequalities from JSON spec files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use tropical_bell::bell::{
    build_transfer_matrix, classical_bound_chain, modular_bound, thermodynamic_bound, BoundaryCondition,
    ChainBellSpec, ChainLength, DEFAULT_SCHEDULE,
};
use tropical_bell::format::{format_decimal, format_rational, ScaledNetwork, SpecFile};
use tropical_bell::oracle::{brute_force_min, brute_force_modular, DEFAULT_CAP};
use tropical_bell::{backtrack_optimum, random, Boundary, ContractOptions, EliminationPlan, TropError};

#[derive(Parser)]
#[command(name = "tropbell", version, about = "Exact classical bounds of Bell inequalities via min-plus contraction")]
struct Cli {
    /// Include wall-clock timing in the result (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Obc,
    Pbc,
}

impl From<BoundaryArg> for BoundaryCondition {
    fn from(b: BoundaryArg) -> Self {
        match b {
            BoundaryArg::Obc => BoundaryCondition::Open,
            BoundaryArg::Pbc => BoundaryCondition::Periodic,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classical bound of a finite chain or a factor network.
    Bound {
        spec: PathBuf,
        /// Number of parties, overriding the input file.
        #[arg(long)]
        n: Option<usize>,
        /// Boundary condition, overriding the input file.
        #[arg(long, value_enum)]
        boundary: Option<BoundaryArg>,
        /// Report an optimal deterministic strategy per party.
        #[arg(long)]
        witness: bool,
    },
    /// Per-party bound of the infinite translation-invariant chain.
    Limit {
        spec: PathBuf,
        /// Power budget for the stabilization search (default 4 n^2).
        #[arg(long)]
        kmax: Option<usize>,
        /// Tabulate beta(n)/n for periodic chains of increasing length.
        #[arg(long)]
        table: bool,
    },
    /// Bound of a modular two-party inequality by recursion.
    Modular { spec: PathBuf },
    /// Contract a factor network and print the elimination trace.
    Contract {
        spec: PathBuf,
        /// `greedy` or a comma-separated variable list such as `0,2,4`.
        #[arg(long, default_value = "greedy")]
        order: String,
        #[arg(long)]
        witness: bool,
    },
    /// Exhaustive bound for small inputs of any kind.
    Oracle {
        spec: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        boundary: Option<BoundaryArg>,
        /// Maximum number of enumerated assignments.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Print a random factor network in the input format.
    RandomNetwork {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        domain: usize,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, default_value_t = -9, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 9, allow_hyphen_values = true)]
        hi: i64,
    },
}

#[derive(Serialize)]
struct Number {
    exact: String,
    decimal: String,
}

impl From<Ratio<i64>> for Number {
    fn from(r: Ratio<i64>) -> Self {
        Number {
            exact: format_rational(r),
            decimal: format_decimal(r),
        }
    }
}

#[derive(Serialize, Default)]
struct RunResult {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<Number>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_particle: Option<Number>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stabilization: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    assignment: Option<Vec<usize>>,
    #[serde(flatten)]
    extra: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

type CliResult<T> = std::result::Result<T, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(cli.command) {
        Ok(Some(mut result)) => {
            if cli.timing {
                result.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            println!("{}", serde_json::to_string_pretty(&result).expect("serializable"));
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> CliResult<Option<RunResult>> {
    let result = match command {
        Command::Bound {
            spec,
            n,
            boundary,
            witness,
        } => cmd_bound(&spec, n, boundary, witness)?,
        Command::Limit { spec, kmax, table } => cmd_limit(&spec, kmax, table)?,
        Command::Modular { spec } => cmd_modular(&spec)?,
        Command::Contract { spec, order, witness } => cmd_contract(&spec, &order, witness)?,
        Command::Oracle {
            spec,
            n,
            boundary,
            cap,
        } => cmd_oracle(&spec, n, boundary, cap)?,
        Command::RandomNetwork {
            seed,
            n,
            domain,
            arity,
            lo,
            hi,
        } => {
            let net = random_network(seed, n, domain, arity, lo, hi)?;
            println!("{}", serde_json::to_string_pretty(&net).expect("serializable"));
            return Ok(None);
        }
    };
    Ok(Some(result))
}

fn load(path: &Path) -> CliResult<(SpecFile, String)> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| format!("{}: not valid UTF-8", path.display()))?;
    let spec = SpecFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((spec, digest))
}

fn err(e: TropError) -> String {
    e.to_string()
}

fn infinite() -> String {
    "every configuration is forbidden; the bound is infinite".into()
}

/// Applies `--n` and `--boundary` overrides to a chain spec.
fn finite_chain(mut spec: ChainBellSpec, n: Option<usize>, boundary: Option<BoundaryArg>) -> CliResult<ChainBellSpec> {
    if let Some(n) = n {
        spec.n = ChainLength::Finite(n);
    }
    if let Some(b) = boundary {
        spec.boundary = b.into();
    }
    if spec.n == ChainLength::Infinite {
        return Err("the input describes an infinite chain; pass --n or use `limit`".into());
    }
    spec.validate().map_err(err)?;
    Ok(spec)
}

fn cmd_bound(path: &Path, n: Option<usize>, boundary: Option<BoundaryArg>, witness: bool) -> CliResult<RunResult> {
    let (spec, digest) = load(path)?;
    let mut result = RunResult {
        command: "bound",
        input_digest: Some(digest),
        ..Default::default()
    };
    match spec {
        SpecFile::Chain(spec) => {
            let spec = finite_chain(spec, n, boundary)?;
            let n = spec.finite_n().map_err(err)?;
            if spec.translation_invariant {
                let model = build_transfer_matrix(&spec).map_err(err)?;
                let b = classical_bound_chain(&model, n, spec.boundary).map_err(err)?;
                result.bound = Some(b.beta.ok_or_else(infinite)?.into());
                if witness {
                    result.assignment = b.assignment;
                }
                result.extra.insert("pipeline".into(), json!("transfer"));
            } else {
                let scale = spec.scale();
                let net = spec.to_factor_network().map_err(err)?;
                let scaled = ScaledNetwork { network: net, scale };
                network_bound(&scaled, &mut result, &scaled.network.greedy_order(), witness)?;
                result.extra.insert("pipeline".into(), json!("network"));
            }
            result.extra.insert("n".into(), json!(n));
            result.extra.insert("boundary".into(), json!(spec.boundary));
        }
        SpecFile::Network(net) => {
            if n.is_some() || boundary.is_some() {
                return Err("--n and --boundary apply to chain specs only".into());
            }
            network_bound(&net, &mut result, &net.network.greedy_order(), witness)?;
            result.extra.insert("pipeline".into(), json!("network"));
        }
        SpecFile::Modular(_) => return Err("modular specs are handled by the `modular` subcommand".into()),
    }
    Ok(result)
}

/// Contracts with `plan`, filling `bound`, `assignment` and `trace`.
fn network_bound(net: &ScaledNetwork, result: &mut RunResult, plan: &EliminationPlan, witness: bool) -> CliResult<()> {
    let opts = if witness {
        ContractOptions::with_witness()
    } else {
        ContractOptions::default()
    };
    let (z, trace) = net.network.contract_full(plan, Boundary::OpenClosure, &opts).map_err(err)?;
    let value = z
        .as_scalar()
        .expect("closed contraction yields a scalar")
        .value()
        .ok_or_else(infinite)?;
    result.bound = Some(net.unscale(value).into());
    if witness {
        result.assignment = Some(backtrack_optimum(&trace, &z).map_err(err)?);
    }
    result.extra.insert("order".into(), json!(plan.order));
    result.extra.insert("max_open_legs".into(), json!(trace.max_open_legs()));
    result
        .extra
        .insert("trace".into(), serde_json::to_value(&trace.entries).expect("serializable"));
    Ok(())
}

fn cmd_limit(path: &Path, kmax: Option<usize>, table: bool) -> CliResult<RunResult> {
    let (spec, digest) = load(path)?;
    let SpecFile::Chain(spec) = spec else {
        return Err(format!("`limit` needs a chain spec, got a {} spec", spec.kind()));
    };
    if kmax.is_some_and(|k| k < 2) {
        return Err("--kmax must be at least 2".into());
    }
    let model = build_transfer_matrix(&spec).map_err(err)?;
    let schedule: &[usize] = if table { &DEFAULT_SCHEDULE } else { &[] };
    let t = thermodynamic_bound(&model, kmax, schedule).map_err(err)?;
    let mut result = RunResult {
        command: "limit",
        input_digest: Some(digest),
        per_particle: Some(t.lambda.into()),
        ..Default::default()
    };
    match t.stabilization {
        Some(s) => result.stabilization = Some(json!({ "k0": s.k0, "sigma": s.sigma })),
        None => {
            eprintln!("note: no stabilization found within the power budget; lambda is still exact");
            result.stabilization = Some(Value::Null);
        }
    }
    result.extra.insert("block".into(), json!(model.block));
    result.extra.insert("transfer_size".into(), json!(model.size()));
    result.extra.insert("critical_cycle".into(), json!(t.critical_cycle));
    if table {
        let rows: Vec<Value> = t
            .table
            .iter()
            .map(|row| {
                json!({
                    "n": row.n,
                    "beta": row.beta.map(Number::from),
                    "per_particle": row.per_particle.map(Number::from),
                    "gap": row.gap.map(Number::from),
                })
            })
            .collect();
        result.extra.insert("table".into(), Value::Array(rows));
        result.extra.insert("fitted_c".into(), json!(t.fitted_c.map(Number::from)));
        result.extra.insert("envelope_c".into(), json!(t.envelope_c.map(Number::from)));
    }
    Ok(result)
}

fn cmd_modular(path: &Path) -> CliResult<RunResult> {
    let (spec, digest) = load(path)?;
    let SpecFile::Modular(spec) = spec else {
        return Err(format!("`modular` needs a modular spec, got a {} spec", spec.kind()));
    };
    let beta = modular_bound(&spec).map_err(err)?;
    let mut result = RunResult {
        command: "modular",
        input_digest: Some(digest),
        bound: Some(beta.into()),
        ..Default::default()
    };
    result.extra.insert("d".into(), json!(spec.d()));
    result.extra.insert("m".into(), json!(spec.m()));
    Ok(result)
}

fn parse_order(order: &str, net: &ScaledNetwork) -> CliResult<EliminationPlan> {
    if order == "greedy" {
        return Ok(net.network.greedy_order());
    }
    let vars = order
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| format!("--order: `{v}` is not a variable index"))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(EliminationPlan::new(vars))
}

fn cmd_contract(path: &Path, order: &str, witness: bool) -> CliResult<RunResult> {
    let (spec, digest) = load(path)?;
    let net = match spec {
        SpecFile::Network(net) => net,
        SpecFile::Chain(spec) => {
            let spec = finite_chain(spec, None, None)?;
            let scale = spec.scale();
            ScaledNetwork {
                network: spec.to_factor_network().map_err(err)?,
                scale,
            }
        }
        SpecFile::Modular(_) => return Err("`contract` needs a network or chain spec".into()),
    };
    let plan = parse_order(order, &net)?;
    let mut result = RunResult {
        command: "contract",
        input_digest: Some(digest),
        ..Default::default()
    };
    network_bound(&net, &mut result, &plan, witness)?;
    Ok(result)
}

fn cmd_oracle(path: &Path, n: Option<usize>, boundary: Option<BoundaryArg>, cap: u64) -> CliResult<RunResult> {
    let (spec, digest) = load(path)?;
    let mut result = RunResult {
        command: "oracle",
        input_digest: Some(digest),
        ..Default::default()
    };
    let net = match spec {
        SpecFile::Modular(spec) => {
            let o = brute_force_modular(&spec, cap).map_err(err)?;
            result.bound = Some(o.beta.into());
            result.extra.insert("minimizers".into(), json!(o.minimizers));
            result.extra.insert("redundancy_holds".into(), json!(o.redundancy_holds));
            return Ok(result);
        }
        SpecFile::Network(net) => net,
        SpecFile::Chain(spec) => {
            let spec = finite_chain(spec, n, boundary)?;
            let scale = spec.scale();
            ScaledNetwork {
                network: spec.to_factor_network().map_err(err)?,
                scale,
            }
        }
    };
    let o = brute_force_min(&net.network, cap).map_err(err)?;
    result.bound = Some(net.unscale(o.beta.ok_or_else(infinite)?).into());
    result.assignment = o.minimizers.first().cloned();
    result.extra.insert("minimizers".into(), json!(o.minimizers.len()));
    Ok(result)
}

/// A random network in the input file format.
fn random_network(seed: u64, n: usize, domain: usize, arity: usize, lo: i64, hi: i64) -> CliResult<Value> {
    if n == 0 || domain == 0 || lo > hi {
        return Err("need n >= 1, domain >= 1 and lo <= hi".into());
    }
    let mut rng = random::seeded(seed);
    let network = random::network(&mut rng, n, domain, arity, lo, hi);
    Ok(ScaledNetwork { network, scale: 1 }.to_json())
}
