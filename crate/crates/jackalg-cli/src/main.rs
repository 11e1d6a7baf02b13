//! `jackalg`: command-line access to Jack characters, structure constants,
//! Jack measure and the Monte-Carlo statistics.
//!
//! Exit codes: 0 on success, 1 on a failed verification or computation,
//! 2 on a usage error.

mod args;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jackalg::algebra::{AlphaField, Basis, GammaPoly, Q};
use jackalg::asymptotics::{monte_carlo, monte_carlo_timed, parse_statistics, MonteCarloConfig};
use jackalg::lassalle::{character_polynomial, theta};
use jackalg::measure::{
    distribution, pmf, sample_many, sampler_by_name, EXACT_SAMPLER_MAX_N, SAMPLER_NAMES,
};
use jackalg::oracle::{count_factorizations, count_matchings, theta_oracle};
use jackalg::partitions::Partition;
use jackalg::profiles::{profile, sup_distance_to_limit};
use jackalg::structure::{c_symbolic, g_table};
use serde_json::{json, Map, Value};

use args::{exact_alpha, float_alpha, partition, ExactAlpha, FloatAlpha};

const SCHEMA: &str = "jackalg/1";

#[derive(Parser)]
#[command(name = "jackalg", version, about = "Jack characters and Jack measure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Character Ch_mu in the free cumulants (default) or another basis.
    Kerov {
        /// Partition such as "[2,2]".
        #[arg(long, value_parser = partition)]
        mu: Partition,
        #[arg(long, value_enum, default_value = "R")]
        basis: BasisArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Character Ch_mu in the moments M_k.
    Lmu {
        #[arg(long, value_parser = partition)]
        mu: Partition,
        /// Use the shifted moments M'_k instead.
        #[arg(long)]
        shifted: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coefficients g_{mu,nu;pi} of Ch_mu Ch_nu in the Ch basis.
    Gconst {
        #[arg(long, value_parser = partition)]
        mu: Partition,
        #[arg(long, value_parser = partition)]
        nu: Partition,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structure constant c_{mu 1^*, nu 1^*; pi 1^*} of the Jack class algebra at size n.
    Cconst {
        /// Reduced shape; ones are appended up to size n.
        #[arg(long, value_parser = partition)]
        mu: Partition,
        #[arg(long, value_parser = partition)]
        nu: Partition,
        #[arg(long, value_parser = partition)]
        pi: Partition,
        #[arg(long)]
        n: u32,
        /// Exact rational "p/q".
        #[arg(long, value_parser = exact_alpha)]
        alpha: ExactAlpha,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// theta_mu(lambda) from the character polynomial; mu is padded with ones.
    Theta {
        #[arg(long, value_parser = partition)]
        mu: Partition,
        #[arg(long, value_parser = partition)]
        lambda: Partition,
        #[arg(long, value_parser = exact_alpha)]
        alpha: ExactAlpha,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Independent reference computations.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Jack measure of lambda, or the whole distribution on partitions of n.
    Pmf {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_parser = exact_alpha)]
        alpha: ExactAlpha,
        #[arg(long, value_parser = partition)]
        lambda: Option<Partition>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw partitions from Jack measure; CSV rows `replica,partition`.
    Sample {
        #[arg(long)]
        n: u32,
        /// Rational "p/q" or decimal.
        #[arg(long, value_parser = float_alpha)]
        alpha: FloatAlpha,
        #[arg(long, default_value_t = 1)]
        reps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "growth")]
        sampler: String,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo summary of the selected statistics.
    Mc {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = float_alpha)]
        alpha: FloatAlpha,
        #[arg(long)]
        reps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated names: w<k>, u<k>, t<k>, r<k>, sup.
        #[arg(long, default_value = "w2,w3,u1,u2,t3")]
        stats: String,
        #[arg(long, default_value = "growth")]
        sampler: String,
        #[arg(long)]
        threads: Option<usize>,
        /// Record wall-clock time in the report (breaks byte-identical output).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Profile of a diagram as CSV `x,omega`, or JSON with the distance to the limit shape.
    Shape {
        /// The diagram; if absent one is sampled with --n and --seed.
        #[arg(long, value_parser = partition)]
        lambda: Option<Partition>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = float_alpha)]
        alpha: FloatAlpha,
        /// Scaling of both axes; defaults to 1/sqrt(|lambda|).
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: ShapeFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        level: verify::Level,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// theta_mu(lambda) from Jack polynomials built by Gram-Schmidt.
    Theta {
        #[arg(long, value_parser = partition)]
        mu: Partition,
        #[arg(long, value_parser = partition)]
        lambda: Partition,
        #[arg(long, value_parser = exact_alpha)]
        alpha: ExactAlpha,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of factorizations (permutations) or matching pairs realizing a triple.
    Count {
        #[arg(long, value_parser = partition)]
        mu: Partition,
        #[arg(long, value_parser = partition)]
        nu: Partition,
        #[arg(long, value_parser = partition)]
        pi: Partition,
        #[arg(long, value_enum)]
        kind: CountKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    #[value(name = "R")]
    R,
    #[value(name = "M")]
    M,
    #[value(name = "Mprime")]
    MPrime,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::R => Basis::R,
            BasisArg::M => Basis::M,
            BasisArg::MPrime => Basis::MPrime,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    Factorizations,
    Matchings,
}

/// Largest size accepted by the brute-force counters.
const COUNT_MAX_N: u32 = 6;

#[derive(Debug)]
enum CliError {
    /// A flag has an unusable value.
    Usage { flag: &'static str, msg: String },
    /// The verification suite found a failure.
    Verification,
    /// A computation or I/O step failed.
    Runtime(String),
}

fn usage(flag: &'static str, msg: impl Into<String>) -> CliError {
    CliError::Usage {
        flag,
        msg: msg.into(),
    }
}

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage { flag, msg }) => {
            eprintln!("error: invalid value for '{flag}': {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Verification) => {
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn field(alpha: &ExactAlpha) -> AlphaField {
    AlphaField::new(alpha.0.clone()).expect("parser admits only positive alpha")
}

/// A JSON object carrying the schema tag.
fn document(fields: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    for (k, v) in fields {
        m.insert(k.into(), v);
    }
    Value::Object(m)
}

fn emit_json(v: &Value, out: Option<&PathBuf>) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(runtime)?;
    s.push('\n');
    emit(&s, out)
}

fn emit(s: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, s).map_err(|e| runtime(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(s.as_bytes())
            .map_err(runtime),
    }
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(usage("--threads", "must be at least 1")),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(runtime)?;
            Ok(pool.install(f))
        }
    }
}

fn check_sampler(name: &str, n: u32) -> Result<(), CliError> {
    if sampler_by_name(name).is_none() {
        return Err(usage(
            "--sampler",
            format!("unknown sampler '{name}', expected one of {SAMPLER_NAMES:?}"),
        ));
    }
    if name == "exact" && n > EXACT_SAMPLER_MAX_N {
        return Err(usage(
            "--n",
            format!("the exact sampler supports n <= {EXACT_SAMPLER_MAX_N}"),
        ));
    }
    Ok(())
}

fn check_n(n: u32) -> Result<(), CliError> {
    if n == 0 {
        return Err(usage("--n", "must be at least 1"));
    }
    Ok(())
}

fn polynomial_document(mu: &Partition, basis: Basis) -> Value {
    let ch = character_polynomial(mu, basis);
    document(vec![
        ("mu", json!(mu)),
        ("polynomial", ch.body.to_json()),
        ("text", json!(ch.body.render())),
    ])
}

fn gamma_map(entries: impl IntoIterator<Item = (String, GammaPoly)>) -> Value {
    let m: Map<String, Value> = entries
        .into_iter()
        .map(|(k, v)| (k, serde_json::to_value(v).expect("serializable")))
        .collect();
    Value::Object(m)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Kerov { mu, basis, out } => {
            emit_json(&polynomial_document(&mu, basis.into()), out.as_ref())
        }
        Command::Lmu { mu, shifted, out } => {
            let basis = if shifted { Basis::MPrime } else { Basis::M };
            emit_json(&polynomial_document(&mu, basis), out.as_ref())
        }
        Command::Gconst { mu, nu, out } => {
            let g = g_table(&mu, &nu).map_err(runtime)?;
            let doc = document(vec![
                ("mu", json!(mu)),
                ("nu", json!(nu)),
                (
                    "entries",
                    gamma_map(g.entries.iter().map(|(p, c)| (p.to_string(), c.clone()))),
                ),
            ]);
            emit_json(&doc, out.as_ref())
        }
        Command::Cconst {
            mu,
            nu,
            pi,
            n,
            alpha,
            out,
        } => {
            for (flag, p) in [("--mu", &mu), ("--nu", &nu), ("--pi", &pi)] {
                if p.size() > n {
                    return Err(usage(flag, format!("{p} does not fit in size n = {n}")));
                }
            }
            let c = c_symbolic(&mu, &nu, &pi).map_err(runtime)?;
            let f = field(&alpha);
            let pad = |p: &Partition| p.with_ones(n - p.size());
            let poly: Vec<Value> = c
                .poly
                .iter()
                .map(|g| serde_json::to_value(g).expect("serializable"))
                .collect();
            let doc = document(vec![
                ("mu", json!(pad(&mu))),
                ("nu", json!(pad(&nu))),
                ("pi", json!(pad(&pi))),
                ("n", json!(n)),
                ("alpha", json!(alpha.0.to_string())),
                ("d", json!(c.d)),
                ("poly_in_n", Value::Array(poly)),
                ("value", json!(c.value(n, &f).render())),
            ]);
            emit_json(&doc, out.as_ref())
        }
        Command::Theta {
            mu,
            lambda,
            alpha,
            out,
        } => {
            let mu = padded_mu(&mu, &lambda)?;
            let v = theta(&mu, &lambda, &field(&alpha)).map_err(runtime)?;
            emit_json(
                &theta_document(&mu, &lambda, &alpha.0, v.render()),
                out.as_ref(),
            )
        }
        Command::Oracle { command } => run_oracle(command),
        Command::Pmf {
            n,
            alpha,
            lambda,
            out,
        } => {
            let doc = match (n, lambda) {
                (_, Some(l)) => {
                    if let Some(n) = n {
                        if l.size() != n {
                            return Err(usage(
                                "--lambda",
                                format!("{l} is not a partition of {n}"),
                            ));
                        }
                    }
                    if l.size() == 0 {
                        return Err(usage("--lambda", "must be nonempty"));
                    }
                    document(vec![
                        ("n", json!(l.size())),
                        ("alpha", json!(alpha.0.to_string())),
                        ("lambda", json!(l)),
                        ("pmf", json!(pmf(&l, &alpha.0).to_string())),
                    ])
                }
                (Some(n), None) => {
                    check_n(n)?;
                    let rows: Vec<Value> = distribution(n, &alpha.0)
                        .into_iter()
                        .map(|(l, p)| json!({"lambda": l, "pmf": p.to_string()}))
                        .collect();
                    document(vec![
                        ("n", json!(n)),
                        ("alpha", json!(alpha.0.to_string())),
                        ("distribution", Value::Array(rows)),
                    ])
                }
                (None, None) => return Err(usage("--n", "give --n or --lambda")),
            };
            emit_json(&doc, out.as_ref())
        }
        Command::Sample {
            n,
            alpha,
            reps,
            seed,
            sampler,
            threads,
            out,
        } => {
            check_n(n)?;
            check_sampler(&sampler, n)?;
            let s = sampler_by_name(&sampler).expect("checked");
            let samples = with_threads(threads, || sample_many(&*s, n, alpha.0, reps, seed))?;
            let mut text = String::from("replica,partition\n");
            for (i, l) in samples.iter().enumerate() {
                text.push_str(&format!("{i},\"{l}\"\n"));
            }
            emit(&text, out.as_ref())
        }
        Command::Mc {
            n,
            alpha,
            reps,
            seed,
            stats,
            sampler,
            threads,
            timing,
            out,
        } => {
            check_n(n)?;
            check_sampler(&sampler, n)?;
            let parsed = parse_statistics(&stats).map_err(|e| usage("--stats", e.to_string()))?;
            if parsed.is_empty() {
                return Err(usage("--stats", "no statistic selected"));
            }
            if reps < jackalg::asymptotics::MIN_REPLICAS {
                return Err(usage(
                    "--reps",
                    format!(
                        "at least {} replicas are needed",
                        jackalg::asymptotics::MIN_REPLICAS
                    ),
                ));
            }
            let config = MonteCarloConfig {
                n,
                alpha: alpha.0,
                reps,
                seed,
                sampler,
                stats: parsed.iter().map(|s| s.name()).collect(),
            };
            let report = with_threads(threads, || {
                if timing {
                    monte_carlo_timed(&config)
                } else {
                    monte_carlo(&config)
                }
            })?
            .map_err(runtime)?;
            let doc = document(vec![(
                "report",
                serde_json::to_value(&report).map_err(runtime)?,
            )]);
            emit_json(&doc, out.as_ref())
        }
        Command::Shape {
            lambda,
            n,
            seed,
            alpha,
            scale,
            format,
            out,
        } => {
            let lambda = match (lambda, n) {
                (Some(l), _) => l,
                (None, Some(n)) => {
                    check_n(n)?;
                    sample_many(&jackalg::measure::GrowthSampler, n, alpha.0, 1, seed)
                        .pop()
                        .expect("one sample")
                }
                (None, None) => return Err(usage("--lambda", "give --lambda or --n")),
            };
            if lambda.size() == 0 {
                return Err(usage("--lambda", "must be nonempty"));
            }
            let scale = match scale {
                Some(s) if s > 0.0 && s.is_finite() => s,
                Some(_) => return Err(usage("--scale", "must be a positive number")),
                None => 1.0 / (lambda.size() as f64).sqrt(),
            };
            let w = profile(&lambda, alpha.0, scale);
            match format {
                ShapeFormat::Csv => emit(&w.to_csv(), out.as_ref()),
                ShapeFormat::Json => {
                    let doc = document(vec![
                        ("lambda", json!(lambda)),
                        ("alpha", json!(alpha.0)),
                        ("scale", json!(scale)),
                        ("breakpoints", json!(w.breakpoints())),
                        (
                            "sup_distance_to_limit",
                            json!(sup_distance_to_limit(&lambda, alpha.0)),
                        ),
                    ]);
                    emit_json(&doc, out.as_ref())
                }
            }
        }
        Command::Verify { level, out } => {
            let checks = verify::run(level);
            let passed = checks.iter().all(|c| c.passed);
            for c in &checks {
                eprintln!(
                    "{}: {} ({})",
                    c.name,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.detail
                );
            }
            let doc = document(vec![
                ("level", json!(level.name())),
                ("passed", json!(passed)),
                ("checks", serde_json::to_value(&checks).map_err(runtime)?),
            ]);
            emit_json(&doc, out.as_ref())?;
            if passed {
                Ok(())
            } else {
                Err(CliError::Verification)
            }
        }
    }
}

fn run_oracle(command: OracleCommand) -> Result<(), CliError> {
    match command {
        OracleCommand::Theta {
            mu,
            lambda,
            alpha,
            out,
        } => {
            let mu = padded_mu(&mu, &lambda)?;
            let v = theta_oracle(&mu, &lambda, &alpha.0);
            emit_json(
                &theta_document(&mu, &lambda, &alpha.0, v.to_string()),
                out.as_ref(),
            )
        }
        OracleCommand::Count {
            mu,
            nu,
            pi,
            kind,
            out,
        } => {
            let n = mu.size();
            if n == 0 || n > COUNT_MAX_N {
                return Err(usage("--mu", format!("size must be in 1..={COUNT_MAX_N}")));
            }
            for (flag, p) in [("--nu", &nu), ("--pi", &pi)] {
                if p.size() != n {
                    return Err(usage(flag, format!("{p} is not a partition of {n}")));
                }
            }
            let (name, count) = match kind {
                CountKind::Factorizations => {
                    ("factorizations", count_factorizations(&mu, &nu, &pi))
                }
                CountKind::Matchings => ("matchings", count_matchings(&mu, &nu, &pi)),
            };
            let doc = document(vec![
                ("mu", json!(mu)),
                ("nu", json!(nu)),
                ("pi", json!(pi)),
                ("kind", json!(name)),
                ("count", json!(count.to_string())),
            ]);
            emit_json(&doc, out.as_ref())
        }
    }
}

/// Appends ones to `mu` up to the size of `lambda`.
fn padded_mu(mu: &Partition, lambda: &Partition) -> Result<Partition, CliError> {
    if lambda.size() == 0 {
        return Err(usage("--lambda", "must be nonempty"));
    }
    if mu.size() > lambda.size() {
        return Err(usage(
            "--mu",
            format!("{mu} is larger than lambda = {lambda}"),
        ));
    }
    Ok(mu.with_ones(lambda.size() - mu.size()))
}

fn theta_document(mu: &Partition, lambda: &Partition, alpha: &Q, value: String) -> Value {
    document(vec![
        ("mu", json!(mu)),
        ("lambda", json!(lambda)),
        ("alpha", json!(alpha.to_string())),
        ("theta", json!(value)),
    ])
}
