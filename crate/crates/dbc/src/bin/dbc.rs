//! Thin command-line front end over the dbc library: factorization,
//! bracket evaluation, groupoid operations, leaf classification, and the
//! verification engine. All payloads are JSON (stdin or --input); reports
//! and results print as JSON.

use clap::{Args, Parser, Subcommand};
use dbc::cli::{cmd_verify, dispatch, exit_code_for, resolve_tolerance};
use dbc::verify::{RunConfig, Suite};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dbc",
    about = "Double Bruhat cells of SL(n, C): factorizations, Poisson brackets, groupoid maps, symplectic leaves, and a verification suite"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ComputeArgs {
    /// Path to the JSON payload ("-" or omitted reads stdin)
    #[arg(long)]
    input: Option<String>,
    /// Relative comparison tolerance (overrides DBC_TOL)
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a cell point as c·b and b_-·c′ through the slices
    Factor(ComputeArgs),
    /// Poisson bracket of two observables (g{i}{j} or minor{k}) at a point
    Bracket(ComputeArgs),
    /// Groupoid product of two composable points of G^{v,v}
    Mul(ComputeArgs),
    /// The twist map G^{u,v} -> G^{v,u}
    Twist(ComputeArgs),
    /// Symplectic-leaf invariants of a cell point
    Leaf(ComputeArgs),
    /// Run the verification suites and emit a JSON report
    Verify {
        /// Matrix size n of SL(n)
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Master seed for all sampling
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Samples per check
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Relative comparison tolerance (overrides DBC_TOL)
        #[arg(long)]
        tol: Option<f64>,
        /// Suite selection: all|factorize|poisson|groupoid|leaves|golden
        #[arg(long, default_value = "all")]
        suite: String,
        /// Write the report to this path instead of stdout
        #[arg(long)]
        out: Option<String>,
    },
}

fn read_payload(input: &Option<String>) -> Result<serde_json::Value, String> {
    let raw = match input.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("reading stdin: {}", e))?;
            buf
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("reading {}: {}", path, e))?,
    };
    serde_json::from_str(&raw).map_err(|e| format!("payload is not valid JSON: {}", e))
}

fn run_compute(verb: &str, args: &ComputeArgs) -> ExitCode {
    let tol = match resolve_tolerance(args.tol) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}", serde_json::json!({"error": e, "exit": 2}));
            return ExitCode::from(2);
        }
    };
    let payload = match read_payload(&args.input) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{}", serde_json::json!({"error": e, "exit": 2}));
            return ExitCode::from(2);
        }
    };
    match dispatch(verb, &payload, &tol) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(err) => {
            let code = exit_code_for(&err);
            eprintln!(
                "{}",
                serde_json::json!({"error": err.to_string(), "exit": code})
            );
            ExitCode::from(code as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Factor(a) => run_compute("factor", a),
        Command::Bracket(a) => run_compute("bracket", a),
        Command::Mul(a) => run_compute("mul", a),
        Command::Twist(a) => run_compute("twist", a),
        Command::Leaf(a) => run_compute("leaf", a),
        Command::Verify {
            n,
            seed,
            samples,
            tol,
            suite,
            out,
        } => {
            let tol = match resolve_tolerance(*tol) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}", serde_json::json!({"error": e, "exit": 2}));
                    return ExitCode::from(2);
                }
            };
            let Some(suites) = Suite::parse(suite) else {
                eprintln!(
                    "{}",
                    serde_json::json!({"error": format!("unknown suite '{}'", suite), "exit": 2})
                );
                return ExitCode::from(2);
            };
            let cfg = RunConfig {
                n: *n,
                seed: *seed,
                samples: *samples,
                tol,
                suites,
            };
            if let Err(e) = cfg.validate() {
                eprintln!("{}", serde_json::json!({"error": e, "exit": 2}));
                return ExitCode::from(2);
            }
            let (report, pass) = cmd_verify(&cfg);
            let body = report.to_json();
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &body) {
                        eprintln!(
                            "{}",
                            serde_json::json!({"error": format!("writing {}: {}", path, e), "exit": 2})
                        );
                        return ExitCode::from(2);
                    }
                }
                None => println!("{}", body),
            }
            for c in &report.checks {
                if !c.pass {
                    eprintln!("FAIL {} (dev {:.3e}, tol {:.1e})", c.id, c.max_dev, c.tol);
                }
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
