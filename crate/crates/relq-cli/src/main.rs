//! `relq`: fuzzy and neutrosophic relational equations from the shell.
//!
//! Exit status is 0 on success, 2 when the system has no solution and 1 for
//! every other error.

mod commands;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relq_neutro::NeutroMode;

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "relq", version, about = "Fuzzy relational equations, products and demos")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Round printed grades half up to this many decimals.
    #[arg(long, global = true)]
    pub round: Option<u32>,
    /// Tolerance for the reported verification checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for the randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Combinatorial cap for enumerations; defaults to RELQ_CAP or 10^6.
    #[arg(long, global = true)]
    pub cap: Option<u128>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Graded,
    Absorbing,
}

impl From<ModeArg> for NeutroMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Graded => NeutroMode::Graded,
            ModeArg::Absorbing => NeutroMode::Absorbing,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Lambda,
    Pattern,
    Archimedean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Basic,
    J,
    B,
    K,
    Smooth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RelevanceArg {
    Disjunctive,
    Conjunctive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoverageArg {
    Superset,
    Subset,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compose two relations, P o Q.
    Compose {
        p: String,
        q: String,
        #[arg(long, default_value = "max-min")]
        comp: String,
        /// Read both operands as neutrosophic relations in this mode.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Greatest and minimal solutions of x o A = b.
    Solve {
        problem: String,
        /// Overrides the composition named in the problem file.
        #[arg(long)]
        comp: Option<String>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, value_enum, default_value_t = Method::Lambda)]
        method: Method,
    },
    /// Minimize a linear cost over the solution set.
    Optimize {
        problem: String,
        #[arg(long)]
        comp: Option<String>,
        /// Cost vector, e.g. "2,1"; overrides "c" in the problem file.
        #[arg(long)]
        c: Option<String>,
        /// Use the genetic algorithm instead of the exact search.
        #[arg(long)]
        ga: bool,
        #[arg(long, default_value_t = 200)]
        generations: usize,
        #[arg(long, default_value_t = 40)]
        population: usize,
    },
    /// Train W in A o W = B from a JSON training set.
    Learn {
        training: String,
        #[arg(long, value_enum, default_value_t = RuleArg::K)]
        rule: RuleArg,
        #[arg(long, default_value = "min")]
        tnorm: String,
        #[arg(long, default_value_t = 0.1)]
        eta: f64,
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        #[arg(long, default_value_t = 10_000)]
        max_epochs: usize,
    },
    /// Set-based diagnosis from a JSON knowledge file.
    Diagnose {
        knowledge: String,
        #[arg(long, value_enum, default_value_t = RelevanceArg::Disjunctive)]
        relevance: RelevanceArg,
        #[arg(long, value_enum, default_value_t = CoverageArg::Superset)]
        coverage: CoverageArg,
    },
    /// Run an embedded dataset.
    Demo {
        name: String,
        /// Pallavan partition: 5, 3 or 4 (the arbitrary run).
        #[arg(long)]
        blocks: Option<usize>,
        /// Alpha-cut levels for hiv-triangle, e.g. "1,0.9".
        #[arg(long, default_value = "1")]
        levels: String,
        /// Chemical flow with an unreachable target.
        #[arg(long)]
        inconsistent: bool,
    },
}

fn run(cli: Cli) -> anyhow::Result<commands::Outcome> {
    let g = &cli.global;
    if !(g.tol > 0.0) {
        anyhow::bail!("--tol must be positive, got {}", g.tol);
    }
    match cli.command {
        Command::Compose { p, q, comp, mode } => commands::compose(&p, &q, &comp, mode.map(Into::into)),
        Command::Solve { problem, comp, mode, method } => {
            commands::solve(g, &problem, comp.as_deref(), mode.map(Into::into), method)
        }
        Command::Optimize { problem, comp, c, ga, generations, population } => {
            commands::optimize(g, &problem, comp.as_deref(), c.as_deref(), ga.then_some((generations, population)))
        }
        Command::Learn { training, rule, tnorm, eta, epsilon, max_epochs } => {
            commands::learn(g, &training, rule, &tnorm, eta, epsilon, max_epochs)
        }
        Command::Diagnose { knowledge, relevance, coverage } => commands::diagnose(&knowledge, relevance, coverage),
        Command::Demo { name, blocks, levels, inconsistent } => commands::demo(g, &name, blocks, &levels, inconsistent),
    }
}

fn main() -> ExitCode {
    // clap's own usage errors exit with 2, which is reserved for infeasible
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (format, round) = (cli.global.format, cli.global.round);
    match run(cli) {
        Ok(out) => {
            let text = output::render(&out.report, format, round);
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            if out.infeasible {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
