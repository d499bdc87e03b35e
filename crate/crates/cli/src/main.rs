//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification or route comparison
//! fails, 2 on usage errors, 3 when a computation is rejected (domain,
//! hypothesis, iteration cap).

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hypereuler::coeff_engine::{a_table, b_table};
use hypereuler::conjecture_lab::{check_all, DEFAULT_R_MAX};
use hypereuler::decomposer::{decompose, decompose_normalized};
use hypereuler::exact_arith::{bernoulli_range, format_rational, latex_rational};
use hypereuler::hyperharmonic::h_closed;
use hypereuler::numerics::{verify_with, NumericConfig, TailMethod};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    A,
    B,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TailArg {
    EulerMaclaurin,
    Comparison,
}

/// Exact Euler-sum decompositions of generalized hyperharmonic zeta series.
///
/// Nothing here is randomized: identical arguments give identical output.
#[derive(Debug, Parser)]
#[command(name = "hypereuler", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Requested decimal digits for numerical results.
    #[arg(long, global = true, env = "HYPEREULER_DIGITS", default_value_t = 8,
          value_parser = clap::value_parser!(u32).range(1..=200))]
    digits: u32,

    /// Cap on explicitly summed series terms.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_terms: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bernoulli numbers B_0^+ .. B_n^+ (B_1^+ = +1/2).
    Bernoulli { n_max: u32 },
    /// Coefficient triangle a(r, m, j).
    Coeffs {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        /// Which recurrence to use; `both` compares them.
        #[arg(long, value_enum, default_value = "a")]
        route: RouteArg,
    },
    /// Generalized hyperharmonic number H_n^{(p,r)}.
    Hh {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        p: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        n: u64,
    },
    /// Euler-sum decomposition of zeta_{H^{(p,r)}}(m).
    Decompose {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        p: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        m: i64,
        /// Rewrite non-positive orders as zeta values.
        #[arg(long)]
        normalize: bool,
        /// Also reduce every S(1,q) to zeta values (implies --normalize).
        #[arg(long)]
        reduce_s1: bool,
    },
    /// Compare direct summation with the evaluated decomposition.
    Verify {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        p: u32,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        m: i64,
        /// Tail bounding strategy.
        #[arg(long, value_enum, default_value = "euler-maclaurin")]
        tail: TailArg,
    },
    /// Check the four coefficient conjectures for r = 1..r_max.
    Conjectures {
        #[arg(default_value_t = DEFAULT_R_MAX, value_parser = clap::value_parser!(u32).range(1..))]
        r_max: u32,
    },
}

struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(cli: &Cli) -> hypereuler::Result<Output> {
    let format = cli.format;
    match &cli.command {
        Command::Bernoulli { n_max } => {
            let values = bernoulli_range(*n_max as usize);
            Ok(Output::ok(match format {
                Format::Text => values.iter().map(format_rational).collect::<Vec<_>>().join(", "),
                Format::Json => serde_json::to_string(
                    &values
                        .iter()
                        .enumerate()
                        .map(|(n, v)| json!({"n": n, "value": format_rational(v)}))
                        .collect::<Vec<_>>(),
                )
                .expect("serializable"),
                Format::Latex => values
                    .iter()
                    .enumerate()
                    .map(|(n, v)| format!("B_{{{n}}}^{{+}} = {}\\\\", latex_rational(v)))
                    .collect::<Vec<_>>()
                    .join("\n"),
            }))
        }
        Command::Coeffs { r, route } => {
            let render = |t: &hypereuler::CoeffTable| match format {
                Format::Text => t.to_text().trim_end().to_string(),
                Format::Json => pretty(&t.to_json()),
                Format::Latex => t.to_latex().trim_end().to_string(),
            };
            match route {
                RouteArg::A => Ok(Output::ok(render(&*a_table(*r)?))),
                RouteArg::B => Ok(Output::ok(render(&*b_table(*r)?))),
                RouteArg::Both => {
                    let a = a_table(*r)?;
                    let b = b_table(*r)?;
                    let verdict = match a.first_mismatch(&b) {
                        None => "MATCH".to_string(),
                        Some((m, j, x, y)) => format!(
                            "MISMATCH at a({r},{m},{j}): {} vs {}",
                            format_rational(&x),
                            format_rational(&y)
                        ),
                    };
                    let ok = a.same_entries(&b);
                    let text = match format {
                        Format::Json => pretty(&json!({
                            "a": a.to_json(),
                            "b": b.to_json(),
                            "match": ok,
                        })),
                        Format::Text => format!("route a:\n{}\nroute b:\n{}\n{verdict}", render(&a), render(&b)),
                        Format::Latex => format!("{}\n{}\n% {verdict}", render(&a), render(&b)),
                    };
                    Ok(Output { text, ok })
                }
            }
        }
        Command::Hh { p, r, n } => {
            let v = h_closed(*p, *r, *n)?;
            Ok(Output::ok(match format {
                Format::Text => format_rational(&v),
                Format::Json => serde_json::to_string(&json!({
                    "p": p, "r": r, "n": n, "value": format_rational(&v),
                }))
                .expect("serializable"),
                Format::Latex => format!("H_{{{n}}}^{{({p},{r})}} = {}", latex_rational(&v)),
            }))
        }
        Command::Decompose { p, r, m, normalize, reduce_s1 } => {
            let e = if *normalize || *reduce_s1 {
                decompose_normalized(*p, *r, *m, *reduce_s1)?
            } else {
                decompose(*p, *r, *m)?
            };
            Ok(Output::ok(match format {
                Format::Text => e.to_string(),
                Format::Json => pretty(&e.to_json()),
                Format::Latex => format!("\\zeta_{{H^{{({p},{r})}}}}({m}) = {}", e.to_latex()),
            }))
        }
        Command::Verify { p, r, m, tail } => {
            let cfg = NumericConfig {
                max_terms: cli.max_terms,
                method: match tail {
                    TailArg::EulerMaclaurin => TailMethod::EulerMaclaurin,
                    TailArg::Comparison => TailMethod::Comparison,
                },
                ..NumericConfig::default()
            };
            let rep = verify_with(*p, *r, *m, cli.digits, &cfg)?;
            let text = match format {
                Format::Text => rep.to_text().trim_end().to_string(),
                Format::Json => pretty(&rep.to_json()),
                Format::Latex => format!(
                    "\\zeta_{{H^{{({p},{r})}}}}({m}) = {} \\approx {}",
                    rep.expression.to_latex(),
                    rep.direct.value_string()
                ),
            };
            Ok(Output { text, ok: rep.pass })
        }
        Command::Conjectures { r_max } => {
            let reports = check_all(*r_max)?;
            // Violations are findings, not failures: exit 0 either way.
            Ok(Output::ok(match format {
                Format::Json => pretty(&reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()),
                Format::Text | Format::Latex => {
                    reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
                }
            }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout(), "{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
