use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parkfn::verify::{Bounds, Suite, SuiteReport};
use parkfn::{Error, PreferenceList};
use rayon::prelude::*;

mod commands;

/// Exact counts, enumeration and verification for restricted parking functions.
#[derive(Debug, Parser)]
#[command(name = "parkfn", version)]
struct Cli {
    /// Output format; `enum` defaults to one list per line.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Largest brute-force search space, in candidate lists (e.g. 1e7).
    #[arg(long, global = true, value_parser = parse_budget, default_value = "1e7")]
    budget: u128,

    /// Worker threads for parallel checks.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Lines,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Pf,
    Ppf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Brute,
    Subtractive,
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    PfRestricted,
    PpfRestricted,
    CatalanTriangle,
    Ones,
}

/// Which preference set to restrict to.
#[derive(Debug, Clone, Args)]
struct RestrictionArgs {
    /// Number of cars (and spots).
    #[arg(long)]
    n: Option<usize>,
    /// Initial segment `[s]`; with --g, the number of rows.
    #[arg(long)]
    s: Option<usize>,
    /// Explicit set, e.g. 1,3,4.
    #[arg(long, conflicts_with_all = ["g", "k"])]
    set: Option<String>,
    /// Row size for the modular set {1, g+1, 2g+1, ...}.
    #[arg(long, requires_all = ["s", "k"])]
    g: Option<usize>,
    /// Number of spots removed from g*s.
    #[arg(long, requires = "g")]
    k: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count restricted (prime) parking functions.
    Count {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        restriction: RestrictionArgs,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
    },
    /// List restricted (prime) parking functions in lexicographic order.
    Enum {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        restriction: RestrictionArgs,
    },
    /// Park a preference list on a street or around a circle.
    Simulate {
        /// Comma-separated preferences, e.g. 1,4,4,1.
        prefs: String,
        #[arg(
            long,
            conflicts_with = "circular",
            required_unless_present = "circular"
        )]
        spots: Option<usize>,
        /// Circle of g*s spots, given as g,s.
        #[arg(long)]
        circular: Option<String>,
    },
    /// Run invariant suites against brute force.
    Verify {
        /// One of totals, formulas, bijections, involution, abel, orbits,
        /// fibers, modular, defect, or all.
        suite: String,
        /// Largest size to enumerate (largest circumference for modular).
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Print count tables.
    Table {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Length, for the ones table.
        #[arg(long)]
        n: Option<usize>,
        /// Segment bound, for the ones table.
        #[arg(long)]
        s: Option<usize>,
    },
}

fn parse_budget(text: &str) -> Result<u128, String> {
    if let Ok(v) = text.parse::<u128>() {
        return Ok(v);
    }
    let v: f64 = text
        .parse()
        .map_err(|_| format!("not a number: {text:?}"))?;
    if !(v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v < 1e38) {
        return Err(format!(
            "budget must be a nonnegative integer, got {text:?}"
        ));
    }
    Ok(v as u128)
}

/// A failed invocation and the exit status it maps to.
#[derive(Debug)]
enum Failure {
    Domain(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn run_suites(
    suites: &[Suite],
    n_max: Option<usize>,
    budget: u128,
) -> Result<Vec<SuiteReport>, Failure> {
    let reports: Vec<Result<SuiteReport, Error>> = suites
        .par_iter()
        .map(|&suite| {
            let mut bounds = Bounds::for_suite(suite);
            bounds.budget = budget;
            if let Some(n) = n_max {
                bounds.n_max = n;
            }
            parkfn::verify::run(suite, &bounds)
        })
        .collect();
    reports
        .into_iter()
        .map(|r| r.map_err(Failure::from))
        .collect()
}

fn verify(suite: &str, n_max: Option<usize>, budget: u128, format: Format) -> Outcome {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let reports = run_suites(&suites, n_max, budget)?;
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(&reports).expect("reports serialize");
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("suite,check,result,detail\n");
            for r in &reports {
                for c in &r.checks {
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        r.suite,
                        commands::csv_field(&c.label),
                        if c.passed { "pass" } else { "FAIL" },
                        commands::csv_field(&c.detail)
                    );
                }
            }
        }
        Format::Text | Format::Lines => {
            for r in &reports {
                for c in &r.checks {
                    let line = format!(
                        "{:<11} {:<4} {}  {}",
                        r.suite,
                        if c.passed { "pass" } else { "FAIL" },
                        c.label,
                        c.detail
                    );
                    let _ = writeln!(out, "{}", line.trim_end());
                }
            }
            for r in &reports {
                let failed = r.failures().count();
                let _ = writeln!(
                    out,
                    "{}: {} ({} checks, {failed} failed)",
                    r.suite,
                    if r.passed() { "pass" } else { "FAIL" },
                    r.checks.len()
                );
            }
        }
    }
    if reports.iter().all(SuiteReport::passed) {
        Ok(out)
    } else {
        Err(Failure::Mismatch(out))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let budget = cli.budget;
    let result = match cli.command {
        Command::Count {
            kind,
            restriction,
            method,
        } => commands::count(
            kind,
            &restriction,
            method,
            budget,
            cli.format.unwrap_or(Format::Text),
        ),
        Command::Enum { kind, restriction } => commands::enumerate(
            kind,
            &restriction,
            budget,
            cli.format.unwrap_or(Format::Lines),
        ),
        Command::Simulate {
            prefs,
            spots,
            circular,
        } => prefs
            .parse::<PreferenceList>()
            .map_err(Failure::from)
            .and_then(|p| {
                commands::simulate(
                    &p,
                    spots,
                    circular.as_deref(),
                    cli.format.unwrap_or(Format::Text),
                )
            }),
        Command::Verify { suite, n_max } => {
            verify(&suite, n_max, budget, cli.format.unwrap_or(Format::Text))
        }
        Command::Table {
            family,
            n_max,
            n,
            s,
        } => commands::table(
            family,
            n_max,
            n,
            s,
            budget,
            cli.format.unwrap_or(Format::Text),
        ),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(out)) => {
            print!("{out}");
            eprintln!("MISMATCH");
            ExitCode::from(3)
        }
    }
}
