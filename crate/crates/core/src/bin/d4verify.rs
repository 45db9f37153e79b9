use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use d4verify::exact::{fmt_rational, parse_rational};
use d4verify::report::{Check, RunReport};
use d4verify::verify::{self, GroupChoice, Profile};

/// Exact checks on D4 shells, LP certificates, Hurwitz orbits and eta products.
#[derive(Parser)]
#[command(name = "d4verify", version)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "D4V_THREADS")]
    threads: Option<usize>,

    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    table: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the 2m-shell and compare its size with 24·σ_odd(m).
    Shell {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        /// Write the points, one per line.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Harmonic strength of the 2m-shell and the degree-6 sum.
    Design {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
    },
    /// Verify both LP certificates.
    LpCertify {
        /// Free parameter of the code-bound polynomial (rational, >= 0).
        #[arg(long, allow_hyphen_values = true)]
        a1: Option<String>,
    },
    /// Decompose the 2m-shell into unit-group orbits and certify each.
    Decompose {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Harmonic Molien dimensions of a group.
    Molien {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
    },
    /// τ2 tables, theta identities and arithmetic scans.
    Qseries {
        #[arg(value_enum)]
        kind: SeriesKind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bound: u64,
        /// CSV output for the τ2 table (`m,tau2`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every acceptance check.
    VerifyAll {
        #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
        profile: ProfileArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Wf4,
    N,
    Trivial,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Tau2,
    Theta,
    Scan,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

fn run(command: Command) -> Result<RunReport, String> {
    let wrap = |name: &str, r: d4verify::Result<Vec<Check>>| match r {
        Ok(c) => c,
        Err(e) => vec![Check::failed(name, &e)],
    };
    let report = match command {
        Command::Shell { m, export } => {
            let mut r = RunReport::new("shell").param("m", m);
            r.extend(wrap("shell", verify::shell_checks(m, export.as_deref())));
            r
        }
        Command::Design { m, max_degree } => {
            d4verify::config::check_degree(max_degree).map_err(|e| e.to_string())?;
            let mut r = RunReport::new("design")
                .param("m", m)
                .param("max_degree", max_degree);
            r.extend(wrap("design", verify::design_checks(m, max_degree)));
            r
        }
        Command::LpCertify { a1 } => {
            let a1 = match a1 {
                Some(s) => {
                    let v = parse_rational(&s).ok_or_else(|| format!("cannot parse a1 = {s:?}"))?;
                    if v < num_rational::BigRational::from_integer(0.into()) {
                        return Err(format!("a1 must be >= 0, got {}", fmt_rational(&v)));
                    }
                    Some(v)
                }
                None => None,
            };
            let mut r = RunReport::new("lp-certify");
            if let Some(a) = &a1 {
                r = r.param("a1", fmt_rational(a));
            }
            r.extend(wrap("lp-certify", verify::lp_checks(a1.as_ref())));
            r
        }
        Command::Decompose { m } => {
            let mut r = RunReport::new("decompose").param("m", m);
            r.extend(wrap("decompose", verify::decompose_checks(m)));
            r
        }
        Command::Molien { group, max_degree } => {
            let g = match group {
                GroupArg::Wf4 => GroupChoice::WF4,
                GroupArg::N => GroupChoice::N,
                GroupArg::Trivial => GroupChoice::Trivial,
            };
            let mut r = RunReport::new("molien")
                .param("group", g.name())
                .param("max_degree", max_degree);
            r.extend(wrap("molien", verify::molien_checks(g, max_degree)));
            r
        }
        Command::Qseries { kind, bound, out } => {
            let bound = bound as usize;
            d4verify::config::check_series(bound).map_err(|e| e.to_string())?;
            let (name, checks) = match kind {
                SeriesKind::Tau2 => ("tau2", verify::tau2_checks(bound, out.as_deref())),
                SeriesKind::Theta => {
                    let weighted = bound.min(d4verify::config::shell_budget() as usize);
                    ("theta", verify::theta_checks(bound, weighted))
                }
                SeriesKind::Scan => ("scan", verify::scan_checks(bound, bound, out.as_deref())),
            };
            let mut r = RunReport::new(format!("qseries {name}")).param("bound", bound);
            r.extend(wrap(name, checks));
            r
        }
        Command::VerifyAll { profile } => {
            let p = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            return Ok(verify::verify_all(p));
        }
    };
    Ok(report.finish())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(report) => {
            if cli.table {
                print!("{}", report.to_table());
            } else {
                println!("{}", report.to_json());
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                eprintln!("failing checks: {}", report.failing().join(", "));
                ExitCode::FAILURE
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
