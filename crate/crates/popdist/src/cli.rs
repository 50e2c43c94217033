//! Command-line interface: enumeration, statistics, distribution tables,
//! closed forms, the functional-equation solver, and the verification
//! suites.
//!
//! Conventions: data goes to stdout, diagnostics to stderr. Output is
//! deterministic (canonical monomial order, no timestamps), so identical
//! invocations are byte-identical. Exit codes: 0 success, 1 verification
//! mismatch, 2 usage error, 3 enumeration limit exceeded. The JSON schema is
//! versioned via a "schema": "popdist/1" field; `POPDIST_MAX_N` overrides
//! the enumeration bounds.

use clap::{Parser, Subcommand, ValueEnum};

use crate::closed_forms::{self, ClosedFormId};
use crate::error::Error;
use crate::oracle;
use crate::perm::{Permutation, PopPattern};
use crate::separable::schroder;
use crate::series::{Monomial, TruncSeries, Var};
use crate::solver;
use crate::stats;
use crate::verify;

pub const SCHEMA: &str = "popdist/1";

const EXIT_OK: i32 = 0;
const EXIT_MISMATCH: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_LIMITS: i32 = 3;

#[derive(Parser)]
#[command(
    name = "popdist",
    version,
    about = "Exact statistics distributions on separable permutations avoiding flat POPs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum ClosedFormat {
    #[default]
    Series,
    Ratfun,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum SolveMode {
    #[default]
    Full,
    Uv,
    Counting,
}

#[derive(Subcommand)]
enum Command {
    /// List the separable permutations of length n, optionally restricted to
    /// those avoiding a flat POP of length k or an explicit POP
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Flat POP length (mutually exclusive with --pop)
        #[arg(long, conflicts_with = "pop")]
        k: Option<usize>,
        /// POP as JSON: {"size": k, "relations": [[a,b], ...]}
        #[arg(long)]
        pop: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The six statistics of one permutation
    Stats {
        /// One-line notation: digits for n <= 9, comma-separated above
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Statistic multiplicity table of the class at one length
    Dist {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "pop")]
        k: Option<usize>,
        #[arg(long)]
        pop: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print a closed form, by name, as a rational function or expansion
    Closed {
        /// One of: F2 F3 F4 F3_counting F4_counting F3_xv F3_xu F3_xt F4_xu
        /// F4_xt Lmax_separable S_tpq
        #[arg(long)]
        id: String,
        /// Expansion order (default 8)
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: ClosedFormat,
        /// Set every tracking variable to 1 and print the coefficient
        /// sequence
        #[arg(long)]
        ones: bool,
    },
    /// Solve the functional-equation system for F_k
    Solve {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t)]
        mode: SolveMode,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a cross-validation suite
    Verify {
        /// One of: closed-vs-oracle thm4-vs-oracle thm4-vs-closed symmetry
        /// structure all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Schröder numbers
    Schroder {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::EnumerationLimit { .. } | Error::LengthLimit { .. } => EXIT_LIMITS,
        _ => EXIT_USAGE,
    }
}

/// Parse the process arguments and run; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn parse_pop(k: Option<usize>, pop: Option<&str>) -> crate::Result<Option<PopPattern>> {
    match (k, pop) {
        (Some(k), None) => Ok(Some(PopPattern::flat(k)?)),
        (None, Some(text)) => Ok(Some(PopPattern::from_json(text)?)),
        (None, None) => Ok(None),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    }
}

fn dispatch(command: Command) -> crate::Result<i32> {
    match command {
        Command::Enumerate { n, k, pop, format } => {
            let pop = parse_pop(k, pop.as_deref())?;
            let class = oracle::enumerate_class(n, pop.as_ref())?;
            match format {
                Format::Text => {
                    for p in &class {
                        println!("{p}");
                    }
                }
                Format::Json => {
                    let perms: Vec<String> = class.iter().map(|p| p.to_string()).collect();
                    println!(
                        "{}",
                        serde_json::json!({
                            "schema": SCHEMA,
                            "n": n,
                            "pop": pop.as_ref().map(|p| p.to_json()),
                            "count": class.len(),
                            "perms": perms,
                        })
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::Stats { perm, format } => {
            let p = Permutation::parse(&perm)?;
            let sv = stats::stat_vector(&p);
            match format {
                Format::Text => println!(
                    "perm={p} asc={} des={} lrmax={} rlmax={} lrmin={} rlmin={}",
                    sv.asc, sv.des, sv.lrmax, sv.rlmax, sv.lrmin, sv.rlmin
                ),
                Format::Json => {
                    let mut json = stats::to_json(&p);
                    json["schema"] = serde_json::json!(SCHEMA);
                    println!("{json}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Dist { n, k, pop, format } => {
            let pop = parse_pop(k, pop.as_deref())?;
            let table = oracle::distribution_table(n, pop.as_ref())?;
            match format {
                Format::Text => print!("{}", table.to_text()),
                Format::Json => {
                    let mut json = table.to_json();
                    json["schema"] = serde_json::json!(SCHEMA);
                    json["generator"] = serde_json::json!("oracle");
                    println!("{json}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Closed { id, order, format, ones } => {
            let id = ClosedFormId::parse(&id)?;
            let order = order.unwrap_or(8);
            match format {
                ClosedFormat::Ratfun => {
                    let gf = closed_forms::rational_gf(id)?;
                    println!("numerator: {}", gf.num());
                    println!("denominator: {}", gf.den());
                }
                ClosedFormat::Series => {
                    let series = expanded(id, order, ones)?;
                    if ones {
                        println!("{}", coefficient_csv(&series, id));
                    } else {
                        println!("{series}");
                    }
                }
                ClosedFormat::Json => {
                    let series = expanded(id, order, ones)?;
                    println!(
                        "{}",
                        serde_json::json!({
                            "schema": SCHEMA,
                            "id": id.name(),
                            "order": order,
                            "generator": "closed",
                            "terms": series.to_json_terms(),
                        })
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::Solve { k, order, mode, format } => {
            let (mode_name, series) = match mode {
                SolveMode::Full => ("full", solver::solve_fk(k, order)?.full),
                SolveMode::Uv => ("uv", solver::solve_fk_uv(k, order)?),
                SolveMode::Counting => ("counting", solver::solve_fk_counting(k, order)?),
            };
            match format {
                Format::Text => {
                    if mode == SolveMode::Counting {
                        println!("{}", x_coefficient_csv(&series, 0));
                    } else {
                        println!("{series}");
                    }
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "schema": SCHEMA,
                            "k": k,
                            "order": order,
                            "mode": mode_name,
                            "generator": "thm4",
                            "terms": series.to_json_terms(),
                        })
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite, max_n } => {
            let checks = verify::run_suite(&suite, max_n)?;
            let mut failures = 0;
            for check in &checks {
                let status = if check.passed { "ok  " } else { "FAIL" };
                println!("{status} {} — {}", check.name, check.detail);
                if !check.passed {
                    failures += 1;
                }
            }
            println!("{} checks, {failures} failures", checks.len());
            Ok(if failures == 0 { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Schroder { n, format } => {
            let value = schroder(n);
            match format {
                Format::Text => println!("{value}"),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "schema": SCHEMA,
                        "n": n,
                        "count": value.to_string(),
                    })
                ),
            }
            Ok(EXIT_OK)
        }
    }
}

fn expanded(id: ClosedFormId, order: usize, ones: bool) -> crate::Result<TruncSeries> {
    let series = closed_forms::expand(id, order)?;
    if ones {
        // marginalize every variable except the expansion variable
        let keep = if id == ClosedFormId::STpq { Var::T } else { Var::X };
        let drop: Vec<Var> = Var::ALL.into_iter().filter(|&v| v != keep).collect();
        Ok(series.specialize(&drop))
    } else {
        Ok(series)
    }
}

/// Comma-separated coefficient sequence of a single-variable series. The
/// cubic and square-root series have no constant term, so their sequences
/// start at degree 1.
fn coefficient_csv(series: &TruncSeries, id: ClosedFormId) -> String {
    match id {
        ClosedFormId::STpq => {
            let in_x = series.swap_vars(Var::X, Var::T);
            x_coefficient_csv(&in_x, 1)
        }
        ClosedFormId::LmaxSeparable => x_coefficient_csv(series, 1),
        _ => x_coefficient_csv(series, 0),
    }
}

fn x_coefficient_csv(series: &TruncSeries, from: usize) -> String {
    (from..=series.order())
        .map(|d| {
            let c = series.coeff(&Monomial::var(Var::X, d as u16));
            crate::series::format_coeff(&c)
        })
        .collect::<Vec<_>>()
        .join(",")
}
