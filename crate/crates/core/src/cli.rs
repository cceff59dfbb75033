//! Command dispatch and text/CSV output for the `sabgg` binary.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use crate::config::{ExpectedNu, RunConfig};
use crate::error::Result;
use crate::model::{
    choose_strategy, exit_mean_count, min_allies, total_cost, CostBreakdown, CostMatrix, Feasibility, Strategy,
    SwarmParams,
};
use crate::optimize::{optimize, sweep};
use crate::sim::{estimate_with, SimOptions, SimStats};

/// Header of every cost-curve CSV.
pub const CURVE_HEADER: &str = "rho,ally_cost,p_prior,q0,q1,total";

pub const SIM_HEADER: &str =
    "strategy,rho,episodes,burst_rate,burst_rate_se,prior_safe_rate,prior_safe_rate_se,mean_nu,mean_nu_se,mean_a_exit,censored";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Simulate,
    Sweep,
    Optimize,
}

/// Where file output goes and how many simulation workers to use.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
}

/// Formats `x` in plain decimal with 12 significant digits.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (DIGITS - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit (9.99.. -> 10.0..)
    let digits = s.chars().filter(char::is_ascii_digit).skip_while(|c| *c == '0').count();
    if digits > DIGITS as usize && decimals > 0 {
        let decimals = decimals - 1;
        format!("{x:.decimals$}")
    } else {
        s
    }
}

pub fn write_curve<W: Write + ?Sized>(out: &mut W, curve: &[CostBreakdown]) -> std::io::Result<()> {
    writeln!(out, "{CURVE_HEADER}")?;
    for c in curve {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_sig(c.rho.value()),
            format_sig(c.ally_cost),
            format_sig(c.p_prior.value()),
            format_sig(c.q0.value()),
            format_sig(c.q1.value()),
            format_sig(c.total),
        )?;
    }
    Ok(())
}

fn write_sim_row<W: Write + ?Sized>(out: &mut W, strategy: Strategy, stats: &SimStats) -> std::io::Result<()> {
    let rho = match strategy {
        Strategy::Regular => 0.0,
        Strategy::Safety { rho } => rho.value(),
    };
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{}",
        strategy.name(),
        format_sig(rho),
        stats.episodes,
        format_sig(stats.burst_rate.mean),
        format_sig(stats.burst_rate.std_err),
        format_sig(stats.prior_safe_rate.mean),
        format_sig(stats.prior_safe_rate.std_err),
        format_sig(stats.mean_nu.mean),
        format_sig(stats.mean_nu.std_err),
        format_sig(stats.mean_a_exit),
        stats.censored_count,
    )
}

fn with_output<F>(options: &RunOptions, stdout: &mut dyn Write, body: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    match &options.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            body(&mut file)?;
            file.flush()?;
        }
        None => body(stdout)?,
    }
    Ok(())
}

fn describe_expected_nu(config: &RunConfig, params: &SwarmParams) -> String {
    match config.expected_nu {
        ExpectedNu::Fixed(_) => format_sig(params.expected_nu),
        ExpectedNu::Auto => format!("{} (auto)", format_sig(params.expected_nu)),
    }
}

fn analyze(config: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    let params = config.resolved_params()?;
    let cost = total_cost(&params, config.rho);
    let choice = choose_strategy(&CostMatrix::for_swarm(&params, config.rho), cost.q0, cost.q1);
    writeln!(stdout, "rho = {}", format_sig(cost.rho.value()))?;
    writeln!(stdout, "expected_nu = {}", describe_expected_nu(config, &params))?;
    writeln!(stdout, "exit_mean_count = {}", format_sig(exit_mean_count(&params)))?;
    writeln!(stdout, "p_prior = {}", format_sig(cost.p_prior.value()))?;
    writeln!(stdout, "q0 = {}", format_sig(cost.q0.value()))?;
    writeln!(stdout, "q1 = {}", format_sig(cost.q1.value()))?;
    writeln!(stdout, "ally_cost = {}", format_sig(cost.ally_cost))?;
    writeln!(stdout, "total = {}", format_sig(cost.total))?;
    match min_allies(&params, config.rho) {
        Feasibility::Feasible { n } => writeln!(stdout, "feasible = true (n >= {n})")?,
        Feasibility::Infeasible => writeln!(stdout, "feasible = false")?,
    }
    writeln!(
        stdout,
        "strategy = {} (regular {}, safety {})",
        choice.strategy.name(),
        format_sig(choice.expected_cost_regular),
        format_sig(choice.expected_cost_safety)
    )?;
    Ok(())
}

fn simulate(config: &RunConfig, options: &RunOptions, stdout: &mut dyn Write) -> Result<()> {
    let params = config.resolved_params()?;
    let sim = SimOptions { workers: options.workers, ..SimOptions::default() };
    let mut rows = Vec::new();
    for strategy in [Strategy::Regular, Strategy::Safety { rho: config.rho }] {
        rows.push((strategy, estimate_with(&params, strategy, config.episodes, config.seed, &sim)?));
    }
    with_output(options, stdout, |w| {
        writeln!(w, "{SIM_HEADER}")?;
        rows.iter().try_for_each(|(s, stats)| write_sim_row(w, *s, stats))
    })
}

fn run_sweep(config: &RunConfig, options: &RunOptions, stdout: &mut dyn Write) -> Result<()> {
    let params = config.resolved_params()?;
    let curve = sweep(&params, config.grid_size)?;
    with_output(options, stdout, |w| write_curve(w, &curve))
}

fn run_optimize(config: &RunConfig, options: &RunOptions, stdout: &mut dyn Write) -> Result<()> {
    let params = config.resolved_params()?;
    let opt = optimize(&params, config.tolerance)?;
    writeln!(stdout, "# rho_star = {}", format_sig(opt.rho_star.value()))?;
    writeln!(stdout, "# cost_star = {}", format_sig(opt.cost_star))?;
    writeln!(stdout, "# feasible = {}", opt.feasible())?;
    match opt.n_required() {
        Some(n) => writeln!(stdout, "# n_required = {n}")?,
        None => writeln!(stdout, "# n_required = none")?,
    }
    with_output(options, stdout, |w| write_curve(w, &opt.curve))
}

/// Runs one command; text goes to `stdout`, file output to `options.out`
/// (or `stdout` when unset).
pub fn run_command(command: Command, config: &RunConfig, options: &RunOptions, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Analyze => analyze(config, stdout),
        Command::Simulate => simulate(config, options, stdout),
        Command::Sweep => run_sweep(config, options, stdout),
        Command::Optimize => run_optimize(config, options, stdout),
    }
}
