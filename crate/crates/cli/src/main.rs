use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use surgery_core::code::{find_low_weight_logical, load_code, serialize_code, StabilizerCode};
use surgery_core::cycles::RemovalRule;
use surgery_core::gf2::PauliVector;
use surgery_core::pipeline::{
    bench, bench_csv, compile, compile_joint, trace_csv, LogicalSelector, Mode, PipelineConfig, Suite,
};
use surgery_core::Error;

#[derive(Parser)]
#[command(name = "surgery", version, about = "Ancilla-system compiler for logical measurements by code surgery")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile the measurement of one logical operator.
    Compile {
        /// Code file, `.toml` family file, or inline `family:key=value,...`.
        #[arg(long)]
        code: String,
        /// `index:X|Z` from the computed basis, or `pauli:XZI...`.
        #[arg(long, default_value = "0:X")]
        logical: String,
        #[command(flatten)]
        opts: Options,
    },
    /// Compile a joint measurement across two codes.
    CompileJoint {
        #[arg(long)]
        code: String,
        #[arg(long, default_value = "0:X")]
        logical: String,
        #[arg(long)]
        code_b: String,
        #[arg(long, default_value = "0:X")]
        logical_b: String,
        #[command(flatten)]
        opts: Options,
    },
    /// Run every (code, mode) row of a TOML suite and write a results table.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[command(flatten)]
        opts: Options,
    },
    /// Check a code file: commutation, logical count, optional promotion of
    /// an operator and an exhaustive low-weight search.
    Verify {
        #[arg(long)]
        code: String,
        /// Operator expected to lie in the stabilizer group.
        #[arg(long)]
        logical: Option<String>,
        #[arg(long)]
        distance_check: Option<usize>,
    },
    /// Write a code family instance in the code file format.
    Gen {
        #[arg(long)]
        code: String,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct Options {
    #[arg(long, default_value = "full-opt")]
    mode: String,
    #[arg(long, default_value_t = 0.34)]
    beta: f64,
    #[arg(long, default_value_t = 12)]
    dq: usize,
    #[arg(long, default_value_t = 12)]
    dc: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum random matching layers.
    #[arg(long, default_value_t = 20)]
    tau: usize,
    /// Insertions between spanning-forest resets.
    #[arg(long, default_value_t = 25)]
    reset: usize,
    /// Load reserved per edge for non-cycle checks in full-opt.
    #[arg(long, default_value_t = 4)]
    reserve: usize,
    /// Forest edge swapped out per new cycle: least-loaded, most-loaded or random.
    #[arg(long, default_value = "least-loaded")]
    removal: String,
    /// Edge retired per cycle in static decongestion, same choices.
    #[arg(long, default_value = "most-loaded")]
    retire: String,
    /// Split product squares into triangles when faces are triangles.
    #[arg(long)]
    split_squares: bool,
    /// Output directory for the deformed code, report and tables.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the per-insertion trace of the best trial.
    #[arg(long)]
    trace: bool,
    /// Exhaustively rule out logicals below this weight on the best result.
    #[arg(long)]
    distance_check: Option<usize>,
}

impl Options {
    fn config(&self) -> Result<PipelineConfig, Error> {
        let rule = |s: &str| match s {
            "least-loaded" => Ok(RemovalRule::LeastLoaded),
            "most-loaded" => Ok(RemovalRule::MostLoaded),
            "random" => Ok(RemovalRule::Random),
            other => Err(Error::Parameter(format!("unknown edge rule `{other}`"))),
        };
        let cfg = PipelineConfig {
            mode: self.mode.parse::<Mode>()?,
            beta: self.beta,
            dq: self.dq,
            dc: self.dc,
            trials: self.trials,
            seed: self.seed,
            tau_iterations: self.tau,
            tau_reset: self.reset,
            reserve: self.reserve,
            retire: rule(&self.retire)?,
            removal: rule(&self.removal)?,
            split_squares: self.split_squares,
            gauge_degree: 3,
            distance_check: self.distance_check,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), Error> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), text)?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Compile { code, logical, opts } => {
            let cfg = opts.config()?;
            let code = load_code(&code)?;
            let sel: LogicalSelector = logical.parse()?;
            let out = compile(&code, &sel, &cfg)?;
            let json = out.report.to_json()?;
            match &opts.out {
                Some(dir) => {
                    let deformed = out.best.to_code(format!("{}-deformed", code.name()))?;
                    write(dir, "deformed.code", &serialize_code(&deformed))?;
                    write(dir, "report.json", &json)?;
                    write(dir, "trials.csv", &out.report.to_csv()?)?;
                    if opts.trace {
                        write(dir, "trace.csv", &trace_csv(&out.trace)?)?;
                    }
                    let b = &out.report.best;
                    println!(
                        "{} {} best trial {}: {} qubits, {} checks, degrees {}/{}",
                        code.name(),
                        cfg.mode,
                        b.trial,
                        b.qubits,
                        b.checks,
                        b.deg_q,
                        b.deg_c
                    );
                }
                None => {
                    println!("{json}");
                    if opts.trace {
                        print!("{}", trace_csv(&out.trace)?);
                    }
                }
            }
        }
        Command::CompileJoint {
            code,
            logical,
            code_b,
            logical_b,
            opts,
        } => {
            let cfg = opts.config()?;
            let a = load_code(&code)?;
            let b = load_code(&code_b)?;
            let out = compile_joint(&a, &logical.parse()?, &b, &logical_b.parse()?, &cfg)?;
            let json = serde_json::to_string_pretty(&out.report)?;
            match &opts.out {
                Some(dir) => {
                    let deformed = out.best.to_code(format!("{}+{}-deformed", a.name(), b.name()))?;
                    write(dir, "deformed.code", &serialize_code(&deformed))?;
                    write(dir, "report.json", &json)?;
                    write(dir, "trials.csv", &out.report.report.to_csv()?)?;
                    let best = &out.report.report.best;
                    println!(
                        "{} {} best trial {}: {} qubits, {} checks, degrees {}/{}",
                        out.report.report.code, cfg.mode, best.trial, best.qubits, best.checks, best.deg_q, best.deg_c
                    );
                }
                None => println!("{json}"),
            }
        }
        Command::Bench { suite, opts } => {
            let cfg = opts.config()?;
            let suite = Suite::read(&suite)?;
            let rows = bench(&suite, &cfg);
            let table = bench_csv(&rows)?;
            match &opts.out {
                Some(dir) => {
                    write(dir, "bench.csv", &table)?;
                    write(dir, "bench.json", &serde_json::to_string_pretty(&rows)?)?;
                }
                None => print!("{table}"),
            }
        }
        Command::Verify {
            code,
            logical,
            distance_check,
        } => verify_file(&load_code(&code)?, logical.as_deref(), distance_check)?,
        Command::Gen { code, out } => {
            let text = serialize_code(&load_code(&code)?);
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn verify_file(code: &StabilizerCode, logical: Option<&str>, distance_check: Option<usize>) -> Result<(), Error> {
    // Loading already rejected anticommuting generators.
    let promoted = match logical {
        Some(s) => {
            let p: PauliVector = s.strip_prefix("pauli:").unwrap_or(s).parse()?;
            if p.n() != code.n() {
                return Err(Error::Dimension {
                    expected: code.n(),
                    got: p.n(),
                });
            }
            Some(code.is_stabilizer(&p))
        }
        None => None,
    };
    let low = match distance_check {
        Some(w) => Some(find_low_weight_logical(code.n(), code.generators(), w)?.map(|p| p.weight())),
        None => None,
    };
    let summary = serde_json::json!({
        "code": code.name(),
        "n": code.n(),
        "generators": code.num_generators(),
        "k": code.k(),
        "commutation": true,
        "promoted": promoted,
        "distance_check": distance_check,
        "low_weight_logical": low.flatten(),
    });
    println!("{}", serde_json::to_string_pretty(&summary)?);
    if promoted == Some(false) {
        return Err(Error::Verification("operator is not in the stabilizer group".into()));
    }
    if let Some(Some(w)) = low {
        return Err(Error::Verification(format!("nontrivial logical of weight {w} found")));
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parameter(_) | Error::Parse { .. } | Error::Dimension { .. } | Error::Serde(_) => 2,
        Error::Verification(_) | Error::Commutation(..) | Error::Invariant(_) | Error::ExpansionUnreachable { .. } => 3,
        Error::Capacity(_) => 4,
        Error::Io(_) => 1,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
