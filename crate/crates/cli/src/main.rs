use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fim_cli::{batch, verify, Algo, CliError, RunReport, SolveOptions, DEFAULT_ORACLE_CAP, ORACLE_CAP_ENV};
use fim_core::extremal::{self, Family, InstanceSpec};
use fim_core::lp::{self, Program};
use fim_core::rational::{self, int};
use fim_core::{local_ratio, oracle, Graph};
use serde_json::json;

#[derive(Parser)]
#[command(name = "fim", version, about = "Exact and approximate fractional induced matchings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one graph and print a JSON report with its certificate.
    Solve {
        /// Graph file, or `-` for stdin.
        path: String,
        #[arg(long, value_enum, default_value = "auto")]
        algo: Algo,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add decimal approximations next to the exact values.
        #[arg(long)]
        float: bool,
        /// Also write both LPs in CPLEX LP format to `<prefix>.primal.lp` and `<prefix>.dual.lp`.
        #[arg(long, value_name = "PREFIX")]
        lp_dump: Option<PathBuf>,
        /// Degree bound for `dual` and `localratio`.
        #[arg(long)]
        delta: Option<usize>,
        /// Edge cap for the exact solver.
        #[arg(long, env = ORACLE_CAP_ENV, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
    /// Write a graph from one of the built-in families.
    Gen {
        #[arg(value_enum)]
        family: GenFamily,
        #[arg(long, default_value_t = 0)]
        delta: usize,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a report; exit 0 iff every claim holds.
    Verify { report: PathBuf },
    /// Run a JSON manifest of instances and write a CSV summary.
    Batch {
        manifest: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = ORACLE_CAP_ENV, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
    /// Exact integrality gap and the conjectured bound.
    Gap {
        path: String,
        /// Degree used for the bound; defaults to the maximum degree.
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long, env = ORACLE_CAP_ENV, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
    /// Local-ratio parameters for a degree bound, with the (Q) check.
    Params {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long)]
        c: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    TStar,
    BlowupC5,
    Random,
    Path,
    Cycle,
    Complete,
}

impl From<GenFamily> for Family {
    fn from(f: GenFamily) -> Family {
        match f {
            GenFamily::TStar => Family::TStar,
            GenFamily::BlowupC5 => Family::BlownupC5,
            GenFamily::Random => Family::RandomBounded,
            GenFamily::Path => Family::Path,
            GenFamily::Cycle => Family::Cycle,
            GenFamily::Complete => Family::Complete,
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text).map_err(|source| CliError::Io {
            path: "<stdin>".into(),
            source,
        })?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        })
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn parse_rational(label: &str, s: &str) -> Result<rational::Rational, CliError> {
    rational::parse(s).ok_or_else(|| CliError::Input(format!("{label}: `{s}` is not a rational")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            path,
            algo,
            out,
            float,
            lp_dump,
            delta,
            cap,
        } => {
            let g = Graph::parse(&read_input(&path)?)?;
            let opts = SolveOptions {
                oracle_cap: cap,
                delta,
                float,
            };
            let report = fim_cli::solve(&g, &path, algo, &opts)?;
            if let Some(prefix) = lp_dump {
                let g = g.canonical();
                for (program, suffix) in [(Program::Primal, "primal.lp"), (Program::Dual, "dual.lp")] {
                    let file = PathBuf::from(format!("{}.{suffix}", prefix.display()));
                    emit(Some(&file), &lp::lp_text(&g, program))?;
                }
            }
            emit(out.as_deref(), &(serde_json::to_string_pretty(&report)? + "\n"))
        }
        Command::Gen {
            family,
            delta,
            n,
            seed,
            out,
        } => {
            let g = InstanceSpec::new(family.into(), delta, n, seed).generate()?;
            emit(out.as_deref(), &g.serialize())
        }
        Command::Verify { report } => {
            let text = read_input(&report.to_string_lossy())?;
            let report: RunReport = serde_json::from_str(&text)?;
            verify::verify(&report)?;
            println!("ok");
            Ok(())
        }
        Command::Batch {
            manifest,
            jobs,
            out,
            cap,
        } => {
            let text = read_input(&manifest.to_string_lossy())?;
            emit(out.as_deref(), &batch::batch(&text, jobs, cap)?)
        }
        Command::Gap { path, delta, cap } => {
            let g = Graph::parse(&read_input(&path)?)?;
            let gap = extremal::measure_gap(&g, cap)?;
            let (nu_s, _) = oracle::exact_nu_s(&g, cap)?;
            let delta = delta.unwrap_or(g.max_degree());
            let bound = extremal::conjecture_gap_bound(delta)?;
            let nu_s_star = lp::solve_primal(&g)?.objective;
            let value = json!({
                "delta": delta,
                "nu_s_star": rational::format(&nu_s_star),
                "nu_s": nu_s,
                "gap": rational::format(&gap),
                "gap_bound": rational::format(&bound),
                "within_bound": gap <= bound,
            });
            emit(None, &(serde_json::to_string_pretty(&value)? + "\n"))
        }
        Command::Params { delta, epsilon, c } => {
            let epsilon = match epsilon {
                Some(s) => parse_rational("epsilon", &s)?,
                None => local_ratio::default_epsilon(),
            };
            let c = match c {
                Some(s) => parse_rational("c", &s)?,
                None => local_ratio::default_c(),
            };
            let slacks = local_ratio::q_slacks(&epsilon, &c);
            let feasible = local_ratio::q_feasible(&epsilon, &c);
            let one = rational::one();
            let f = (&one - &epsilon) * int(delta as i64) + rational::ratio(1, 2);
            let g_param = (c < one).then(|| rational::format(&(&epsilon / (&one - &c))));
            let value = json!({
                "delta": delta,
                "epsilon": rational::format(&epsilon),
                "c": rational::format(&c),
                "g": g_param,
                "f": rational::format(&f),
                "q_feasible": feasible,
                "q_slack_ratio": slacks.as_ref().map(|s| rational::format(&s.0)),
                "q_slack_square": slacks.as_ref().map(|s| rational::format(&s.1)),
            });
            emit(None, &(serde_json::to_string_pretty(&value)? + "\n"))?;
            if feasible {
                Ok(())
            } else {
                Err(fim_core::Error::Precondition("(Q) is infeasible at these parameters".into()).into())
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fim: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
