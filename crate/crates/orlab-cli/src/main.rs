//! `or-lab`: classification, coefficient export, operator evaluation, and
//! verification suites for the exact operator laboratory.
//!
//! All numeric input and output is in reduced `p/q` form; no floating point
//! crosses this boundary. Output for identical flags is byte-identical
//! across runs. Exit codes: 0 on success or an all-pass report, 1 when a
//! verification suite reports a failure (the report is still printed),
//! 2 on usage or parse errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orlab_core::verify;
use orlab_core::{
    basis_tables, classify, evaluate_or_operator, format_rational, parse_rational,
    tables_to_json, Rational, SphereFunction, WeightConfig,
};

#[derive(Parser)]
#[command(
    name = "or-lab",
    about = "Exact lab for conformally invariant bidifferential operators on the round sphere",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a weight configuration and print the space dimension and case.
    Classify(ConfigArgs),
    /// Print the exact coefficient tables of every basis operator.
    Coeffs {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Apply a basis operator to two functions read from JSON files.
    Eval {
        #[command(flatten)]
        config: ConfigArgs,
        /// 1-based index into the basis.
        #[arg(long, default_value_t = 1)]
        basis: u32,
        #[arg(long, value_enum, default_value_t = Engine::Spectral)]
        engine: Engine,
        /// Path to the first input (sphere-function JSON).
        #[arg(long)]
        u: String,
        /// Path to the second input (sphere-function JSON).
        #[arg(long)]
        v: String,
    },
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    /// First density weight, `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    w1: String,
    /// Second density weight, `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    w2: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, allow_hyphen_values = true)]
    w1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    w2: Option<String>,
    /// Scalar weight parameter for the linear-fsa suite, `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    ell: Option<String>,
    /// Maximum harmonic degree of generated inputs.
    #[arg(long, default_value_t = 2)]
    degree: u32,
    #[arg(long, default_value_t = 20)]
    trials: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Allow suites beyond their proven range (self-adjointness at k >= 4).
    #[arg(long, default_value_t = false)]
    exploratory: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Spectral,
    Ambient,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Tangentiality,
    TangentialityConverse,
    CrossAgreement,
    Commutator,
    SelfAdjointness,
    LinearFsa,
    GjmsReduction,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("or-lab: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Classify(args) => {
            let config = parse_config(&args)?;
            let cls = classify(&config).map_err(|e| e.to_string())?;
            let mut out = config.to_json();
            let obj = out.as_object_mut().unwrap();
            for (key, value) in cls.to_json().as_object().unwrap() {
                obj.insert(key.clone(), value.clone());
            }
            println!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Coeffs { config, format } => {
            let config = parse_config(&config)?;
            let tables = basis_tables(&config).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", tables_to_json(&config, &tables)),
                Format::Csv => print!("{}", tables_to_csv(&tables)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval {
            config,
            basis,
            engine,
            u,
            v,
        } => {
            let config = parse_config(&config)?;
            let tables = basis_tables(&config).map_err(|e| e.to_string())?;
            if basis == 0 || basis as usize > tables.len() {
                return Err(format!(
                    "basis index {basis} out of range (the space has dimension {})",
                    tables.len()
                ));
            }
            let table = &tables[basis as usize - 1];
            let fu = read_sphere_function(&u, config.n)?;
            let fv = read_sphere_function(&v, config.n)?;
            let combined = fu.max_degree() + fv.max_degree();
            if combined > 16 {
                eprintln!(
                    "or-lab: warning: combined input degree {combined} exceeds 16; \
                     exact evaluation cost grows combinatorially"
                );
            }
            let result = match engine {
                Engine::Spectral => evaluate_or_operator(table, &fu, &fv),
                Engine::Ambient => {
                    orlab_core::apply_bidifferential_ambient(table, &fu, &fv)
                }
            };
            println!("{}", result.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => run_verify(args),
    }
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    if args.n < 2 {
        return Err("verification suites require n >= 2".into());
    }
    let weight = |field: &Option<String>, name: &str| -> Result<Rational, String> {
        field
            .as_ref()
            .ok_or_else(|| format!("--{name} is required for this suite"))
            .and_then(|s| parse_rational(s).map_err(|e| e.to_string()))
    };
    let symmetric_config = |args: &VerifyArgs| -> Result<WeightConfig, String> {
        Ok(WeightConfig::new(
            args.n,
            args.k,
            weight(&args.w1, "w1")?,
            weight(&args.w2, "w2")?,
        ))
    };
    let report = match args.suite {
        Suite::Tangentiality => {
            let config = symmetric_config(&args)?;
            verify::verify_tangentiality(&config, args.degree).map_err(|e| e.to_string())?
        }
        Suite::TangentialityConverse => {
            let config = symmetric_config(&args)?;
            verify::verify_tangentiality_converse(&config, args.degree)
                .map_err(|e| e.to_string())?
        }
        Suite::CrossAgreement => {
            let config = symmetric_config(&args)?;
            verify::verify_cross_agreement(&config, args.degree).map_err(|e| e.to_string())?
        }
        Suite::Commutator => {
            if args.n <= 2 * args.k {
                return Err("commutator suite requires n > 2k".into());
            }
            verify::verify_commutator_identity(args.n, args.k, args.degree)
                .map_err(|e| e.to_string())?
        }
        Suite::SelfAdjointness => {
            if args.k >= 4 && !args.exploratory {
                return Err(
                    "self-adjointness at k >= 4 is conjecture-exploration; pass --exploratory to run it"
                        .into(),
                );
            }
            let config = symmetric_config(&args)?;
            verify::verify_formal_self_adjointness(&config, args.trials, args.degree, args.seed)
                .map_err(|e| e.to_string())?
        }
        Suite::LinearFsa => {
            let ell = weight(&args.ell, "ell")?;
            verify::verify_linear_fsa(args.n, args.k, &ell, args.trials, args.degree, args.seed)
        }
        Suite::GjmsReduction => {
            if args.n <= 2 * args.k {
                return Err("gjms-reduction suite requires n > 2k".into());
            }
            verify::verify_gjms_reduction(args.n, args.k, args.degree)
                .map_err(|e| e.to_string())?
        }
    };
    println!("{}", report.to_json());
    Ok(if report.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn parse_config(args: &ConfigArgs) -> Result<WeightConfig, String> {
    if args.n == 0 {
        return Err("n must be positive".into());
    }
    let w1 = parse_rational(&args.w1).map_err(|e| e.to_string())?;
    let w2 = parse_rational(&args.w2).map_err(|e| e.to_string())?;
    Ok(WeightConfig::new(args.n, args.k, w1, w2))
}

fn read_sphere_function(path: &str, n: u32) -> Result<SphereFunction, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("`{path}` is not JSON: {e}"))?;
    let f = SphereFunction::from_json(&value).map_err(|e| format!("`{path}`: {e}"))?;
    if f.n() != n {
        return Err(format!(
            "`{path}` is a function on S^{} but the configuration has n = {n}",
            f.n()
        ));
    }
    Ok(f)
}

/// CSV schema: header `s,t,value`, one section per basis index. The rational
/// strings are identical to the JSON encoding.
fn tables_to_csv(tables: &[orlab_core::CoeffTable]) -> String {
    let mut out = String::new();
    for table in tables {
        out.push_str(&format!(
            "# basis {} normalization={}\n",
            table.basis_index,
            table.normalization.as_str()
        ));
        out.push_str("s,t,value\n");
        for (&(s, t), v) in &table.entries {
            out.push_str(&format!("{s},{t},{}\n", format_rational(v)));
        }
    }
    out
}
