//! `mvdyn`: command-line access to formulas, McNaughton functions,
//! substitution dynamics, proofs and finite algebras.
//!
//! Exit status: 0 on success, 1 when the computation fails (or a checked
//! proof is invalid), 2 for usage errors and malformed input.

mod algebra;
mod dynamics;
mod logic;
mod output;
mod parse;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::{CliError, Format, Report};

#[derive(Parser)]
#[command(name = "mvdyn", version, about = "Exact many-valued logic and the dynamics of substitutions")]
#[command(after_help = "Rationals are written num/den and points as comma-separated coordinates, e.g. 1/3,2/5.")]
struct Cli {
    /// Output format. JSON by default; eval, taut and identity print text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized subcommands (stats).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Resource cap: valuations for taut, pieces for avg, printed nodes for
    /// odometer derive, listed entries for odometer perm.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Worker threads for parallel subcommands (stats); output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by all subcommands.
pub struct Globals {
    pub seed: u64,
    pub cap: Option<u64>,
    pub threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at a rational point. Output: {formula, point, value}.
    Eval(logic::EvalArgs),
    /// Decide whether a formula is a tautology. Output: {verdict, point?}.
    Taut(logic::TautArgs),
    /// Decide whether two formulas agree everywhere. Output: {verdict, point?}.
    Identity(logic::IdentityArgs),
    /// McNaughton functions: compile, integrate, synthesize.
    #[command(subcommand)]
    Pwl(logic::PwlCmd),
    /// Exact orbit of a rational point. Output: {start, period, preperiod, points, denominators}.
    Orbit(dynamics::OrbitArgs),
    /// Substitutions: apply, compose, reach.
    #[command(subcommand)]
    Subst(dynamics::SubstCmd),
    /// Piecewise homeomorphisms: build, validate, rotation.
    #[command(subcommand)]
    Homeo(dynamics::HomeoCmd),
    /// One-sided directional derivative of an induced map. Output: {at, dir, differential}.
    Diff(dynamics::DiffArgs),
    /// Search for h, k with R^k(Q^h(a)) in B for a grid point a of A. Output: {found, h, k, witness, image}.
    Boxhit(dynamics::BoxhitArgs),
    /// Floating-point visit frequencies over a box grid (CSV available). Output: {counts, frequencies, max_discrepancy, ...}.
    Stats(dynamics::StatsArgs),
    /// Exact averages of sigma^j(r) over a box (CSV available). Output: {values, lebesgue}.
    Avg(dynamics::AvgArgs),
    /// The Boolean odometer: perm, derive.
    #[command(subcommand)]
    Odometer(logic::OdometerCmd),
    /// Proofs: check, consequence.
    #[command(subcommand)]
    Prove(logic::ProveCmd),
    /// Finite algebras: chain, product, sub. Output: {names, star, implies, zero, one}.
    #[command(subcommand)]
    Algebra(algebra::AlgebraCmd),
    /// Filters, prime and maximal filters. Output: {filters, prime, maximal, prime_conditions}.
    Filters(algebra::AlgArg),
    /// The prime spectrum with its specialization order. Output: {points, order, opens, forest}.
    Spec(algebra::AlgArg),
    /// Check the filter/open-set duality exhaustively. Output: {points, filters, opens, ..., holds}.
    Duality(algebra::AlgArg),
}

impl Command {
    fn default_format(&self) -> Format {
        match self {
            Command::Eval(_) | Command::Taut(_) | Command::Identity(_) => Format::Text,
            _ => Format::Json,
        }
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let g = Globals { seed: cli.seed, cap: cli.cap, threads: cli.threads };
    match &cli.command {
        Command::Eval(a) => logic::eval_cmd(a),
        Command::Taut(a) => logic::taut_cmd(a, &g),
        Command::Identity(a) => logic::identity_cmd(a),
        Command::Pwl(c) => logic::pwl_cmd(c),
        Command::Orbit(a) => dynamics::orbit_cmd(a),
        Command::Subst(c) => dynamics::subst_cmd(c),
        Command::Homeo(c) => dynamics::homeo_cmd(c),
        Command::Diff(a) => dynamics::diff_cmd(a),
        Command::Boxhit(a) => dynamics::boxhit_cmd(a),
        Command::Stats(a) => dynamics::stats_cmd(a, &g),
        Command::Avg(a) => dynamics::avg_cmd(a, &g),
        Command::Odometer(c) => logic::odometer_cmd(c, &g),
        Command::Prove(c) => logic::prove_cmd(c),
        Command::Algebra(c) => algebra::algebra_cmd(c),
        Command::Filters(a) => algebra::filters_cmd(a),
        Command::Spec(a) => algebra::spec_cmd(a),
        Command::Duality(a) => algebra::duality_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.unwrap_or_else(|| cli.command.default_format());
    let rendered = run(&cli).and_then(|r| r.render(format).map(|s| (s, r.status)));
    match rendered {
        Ok((text, status)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
