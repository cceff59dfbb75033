//! Monte Carlo simulator of the attacker/swarm race.
//!
//! One episode walks the observation epochs `τ₀ = 0 < τ₁ < ...`, drawing each
//! interval length from an exponential law (mean `δ₀` for the first, `δ`
//! afterwards) and the attacker/honest gains over it as Poisson counts. The
//! episode stops at the exit index `ν`, the first epoch with `A_ν >= T`.
//!
//! Episode `i` of a run with seed `s` draws from ChaCha8 stream `i` keyed by
//! `s`, so estimates do not depend on how episodes are spread over threads.
//! Aggregation happens over fixed-size blocks merged in index order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Poisson};
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::model::{Strategy, SwarmParams};

/// Epoch cap per episode.
pub const DEFAULT_HORIZON: u32 = 10_000;

const BLOCK: u64 = 4096;

/// Result of one simulated game.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpisodeOutcome {
    /// Exit index; `None` when the horizon was reached first.
    pub nu: Option<u32>,
    /// First epoch at which the honest count reached the threshold, if that
    /// happened no later than the attacker's exit (or the horizon).
    pub mu: Option<u32>,
    /// Attacker count at `τ_{ν-1}`.
    pub a_prior: u64,
    /// Attacker count at `τ_ν` (at the last simulated epoch when censored).
    pub a_exit: u64,
    /// Honest count at `τ_{ν-1}`.
    pub h_prior: u64,
    /// Honest count at `τ_ν`.
    pub h_exit: u64,
    /// Accepted allies `B`.
    pub allies: u64,
    pub burst: bool,
}

impl EpisodeOutcome {
    pub fn censored(&self) -> bool {
        self.nu.is_none()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SimOptions {
    pub horizon: u32,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions { horizon: DEFAULT_HORIZON, workers: None }
    }
}

/// RNG for episode `index` of a run seeded with `seed`.
pub fn episode_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn poisson_draw<R: Rng>(rng: &mut R, mean: f64) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean).expect("finite positive mean").sample(rng) as u64
}

/// Runs one episode on the given generator.
pub fn run_episode<R: Rng>(params: &SwarmParams, strategy: Strategy, horizon: u32, rng: &mut R) -> EpisodeOutcome {
    let threshold = params.threshold();
    let first = Exp::new(1.0 / params.delta0).expect("delta0 > 0");
    let later = Exp::new(1.0 / params.delta).expect("delta > 0");

    let (mut attacker, mut honest) = (0u64, 0u64);
    let (mut a_prior, mut h_prior) = (0, 0);
    let mut nu = None;
    let mut mu = None;
    for epoch in 1..=horizon {
        if params.lambda_a == 0.0 && (mu.is_some() || params.lambda_h == 0.0) {
            // nothing left that can change
            break;
        }
        let len = if epoch == 1 { first.sample(rng) } else { later.sample(rng) };
        let gained = poisson_draw(rng, params.lambda_a * len);
        let honest_gained = poisson_draw(rng, params.lambda_h * len);
        a_prior = attacker;
        h_prior = honest;
        attacker += gained;
        honest += honest_gained;
        if mu.is_none() && honest >= threshold {
            mu = Some(epoch);
        }
        if attacker >= threshold {
            nu = Some(epoch);
            break;
        }
    }
    if nu.is_none() {
        a_prior = attacker;
        h_prior = honest;
    }

    // allies answer at τ_{ν-1}; drawn after the path so both strategies see
    // the same attacker trajectory
    let allies = match strategy {
        Strategy::Regular => 0,
        Strategy::Safety { rho } => {
            let rho = rho.value();
            (0..params.candidates()).filter(|_| rng.random::<f64>() < rho).count() as u64
        }
    };
    let burst = match nu {
        Some(exit) => attacker.saturating_sub(allies) >= threshold && mu.is_none_or(|m| exit < m),
        None => false,
    };
    EpisodeOutcome { nu, mu, a_prior, a_exit: attacker, h_prior, h_exit: honest, allies, burst }
}

/// One episode on stream 0 of `seed`.
pub fn simulate_episode(params: &SwarmParams, strategy: Strategy, seed: u64) -> EpisodeOutcome {
    run_episode(params, strategy, DEFAULT_HORIZON, &mut episode_rng(seed, 0))
}

/// Mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
}

impl Estimate {
    fn rate(hits: u64, n: u64) -> Estimate {
        if n == 0 {
            return Estimate::default();
        }
        let p = hits as f64 / n as f64;
        Estimate { mean: p, std_err: (p * (1.0 - p) / n as f64).sqrt() }
    }

    fn from_sums(sum: f64, sum_sq: f64, n: u64) -> Estimate {
        if n == 0 {
            return Estimate::default();
        }
        let nf = n as f64;
        let mean = sum / nf;
        if n == 1 {
            return Estimate { mean, std_err: 0.0 };
        }
        let var = ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
        Estimate { mean, std_err: (var / nf).sqrt() }
    }

    /// Whether `value` lies within `k` standard errors (or `floor`
    /// absolute, whichever is larger).
    pub fn agrees_with(&self, value: f64, k: f64, floor: f64) -> bool {
        (self.mean - value).abs() <= (k * self.std_err).max(floor)
    }
}

/// Aggregate statistics over many episodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimStats {
    pub episodes: u64,
    pub burst_rate: Estimate,
    /// Share of episodes whose attacker count at `τ_{ν-1}` was below the
    /// majority threshold.
    pub prior_safe_rate: Estimate,
    /// Mean exit index over non-censored episodes.
    pub mean_nu: Estimate,
    /// Mean attacker count at exit over non-censored episodes.
    pub mean_a_exit: f64,
    pub censored_count: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Tally {
    episodes: u64,
    bursts: u64,
    prior_safe: u64,
    exits: u64,
    nu_sum: u64,
    nu_sq_sum: u128,
    a_exit_sum: u64,
}

impl Tally {
    fn record(&mut self, outcome: &EpisodeOutcome, threshold: u64) {
        self.episodes += 1;
        self.bursts += u64::from(outcome.burst);
        self.prior_safe += u64::from(outcome.a_prior < threshold);
        if let Some(nu) = outcome.nu {
            self.exits += 1;
            self.nu_sum += u64::from(nu);
            self.nu_sq_sum += u128::from(nu) * u128::from(nu);
            self.a_exit_sum += outcome.a_exit;
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.episodes += other.episodes;
        self.bursts += other.bursts;
        self.prior_safe += other.prior_safe;
        self.exits += other.exits;
        self.nu_sum += other.nu_sum;
        self.nu_sq_sum += other.nu_sq_sum;
        self.a_exit_sum += other.a_exit_sum;
        self
    }

    fn stats(&self) -> SimStats {
        let mean_a_exit = if self.exits == 0 { 0.0 } else { self.a_exit_sum as f64 / self.exits as f64 };
        SimStats {
            episodes: self.episodes,
            burst_rate: Estimate::rate(self.bursts, self.episodes),
            prior_safe_rate: Estimate::rate(self.prior_safe, self.episodes),
            mean_nu: Estimate::from_sums(self.nu_sum as f64, self.nu_sq_sum as f64, self.exits),
            mean_a_exit,
            censored_count: self.episodes - self.exits,
        }
    }
}

/// Folds episodes `0..episodes` block by block; blocks are merged in index
/// order, so the result is independent of the thread count.
#[allow(clippy::too_many_arguments)]
fn fold_episodes<T, A, M>(
    params: &SwarmParams,
    strategy: Strategy,
    episodes: u64,
    seed: u64,
    options: &SimOptions,
    init: T,
    accumulate: A,
    merge: M,
) -> Result<T>
where
    T: Clone + Send + Sync,
    A: Fn(&mut T, &EpisodeOutcome) + Sync,
    M: Fn(T, T) -> T,
{
    params.validate()?;
    if episodes == 0 {
        return Err(domain("episodes must be >= 1"));
    }
    let blocks = episodes.div_ceil(BLOCK);
    let run_block = |block: u64| {
        let mut acc = init.clone();
        let end = ((block + 1) * BLOCK).min(episodes);
        for i in block * BLOCK..end {
            let outcome = run_episode(params, strategy, options.horizon, &mut episode_rng(seed, i));
            accumulate(&mut acc, &outcome);
        }
        acc
    };
    let partials: Vec<T> = match options.workers {
        Some(workers) => rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .map_err(|e| domain(format!("thread pool: {e}")))?
            .install(|| (0..blocks).into_par_iter().map(run_block).collect()),
        None => (0..blocks).into_par_iter().map(run_block).collect(),
    };
    Ok(partials.into_iter().fold(init, merge))
}

/// Aggregates `episodes` independent episodes.
pub fn estimate(params: &SwarmParams, strategy: Strategy, episodes: u64, seed: u64) -> Result<SimStats> {
    estimate_with(params, strategy, episodes, seed, &SimOptions::default())
}

pub fn estimate_with(
    params: &SwarmParams,
    strategy: Strategy,
    episodes: u64,
    seed: u64,
    options: &SimOptions,
) -> Result<SimStats> {
    let threshold = params.threshold();
    let tally = fold_episodes(
        params,
        strategy,
        episodes,
        seed,
        options,
        Tally::default(),
        |t, o| t.record(o, threshold),
        Tally::merge,
    )?;
    Ok(tally.stats())
}

/// Sample mean of `f(outcome)` over `episodes` episodes.
pub fn sample_mean<F>(
    params: &SwarmParams,
    strategy: Strategy,
    episodes: u64,
    seed: u64,
    options: &SimOptions,
    f: F,
) -> Result<Estimate>
where
    F: Fn(&EpisodeOutcome) -> f64 + Sync,
{
    let (sum, sum_sq, n) = fold_episodes(
        params,
        strategy,
        episodes,
        seed,
        options,
        (0.0f64, 0.0f64, 0u64),
        |acc, o| {
            let x = f(o);
            acc.0 += x;
            acc.1 += x * x;
            acc.2 += 1;
        },
        |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2),
    )?;
    Ok(Estimate::from_sums(sum, sum_sq, n))
}

/// Monte Carlo estimate of `E[ξ^ν]`; censored episodes contribute zero.
pub fn exit_index_pgf_estimate(params: &SwarmParams, xi: f64, episodes: u64, seed: u64) -> Result<Estimate> {
    sample_mean(params, Strategy::Regular, episodes, seed, &SimOptions::default(), |o| {
        o.nu.map_or(0.0, |nu| xi.powi(nu as i32))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probability::Probability;

    fn params(lambda_a: f64, lambda_h: f64) -> SwarmParams {
        SwarmParams { lambda_a, lambda_h, ..SwarmParams::reference() }
    }

    fn safety(rho: f64) -> Strategy {
        Strategy::Safety { rho: Probability::new(rho).unwrap() }
    }

    #[test]
    fn idle_attacker_is_censored() {
        for strategy in [Strategy::Regular, safety(1.0)] {
            let o = simulate_episode(&params(0.0, 2.0), strategy, 7);
            assert!(o.censored());
            assert!(!o.burst);
            assert_eq!(o.a_exit, 0);
            if strategy == Strategy::Regular {
                assert_eq!(o.allies, 0);
            } else {
                assert_eq!(o.allies, 9);
            }
        }
    }

    #[test]
    fn zero_rho_couples_with_regular() {
        let p = params(1.0, 1.0);
        for seed in 0..500 {
            let r = simulate_episode(&p, Strategy::Regular, seed);
            let s = simulate_episode(&p, safety(0.0), seed);
            assert_eq!(r, s);
        }
    }

    #[test]
    fn overwhelming_attacker_bursts_immediately() {
        let p = SwarmParams { lambda_a: 50.0, ..params(0.0, 0.0) };
        let stats = estimate(&p, Strategy::Regular, 10_000, 3).unwrap();
        assert!(stats.burst_rate.mean > 0.999, "{stats:?}");
        // one exponential interval gives a geometric count with mean 50:
        // P{ν = 1} = P{X >= 11} = (50/51)^11
        let first = sample_mean(&p, Strategy::Regular, 10_000, 3, &SimOptions::default(), |o| {
            f64::from(u8::from(o.nu == Some(1)))
        })
        .unwrap();
        assert!(first.agrees_with((50.0f64 / 51.0).powi(11), 3.0, 0.0), "{first:?}");
    }

    #[test]
    fn outcome_invariants() {
        let p = params(1.5, 1.0);
        for seed in 0..2000 {
            let o = simulate_episode(&p, safety(0.4), seed);
            assert!(o.a_prior <= o.a_exit);
            assert!(o.allies <= p.candidates());
            if let Some(nu) = o.nu {
                assert!(nu >= 1);
                assert!(o.a_prior < p.threshold() && p.threshold() <= o.a_exit);
            }
            if o.burst {
                assert!(!o.censored());
            }
        }
    }

    #[test]
    fn idle_attacker_stats() {
        let stats = estimate(&params(0.0, 0.0), Strategy::Regular, 50, 1).unwrap();
        assert_eq!(stats.burst_rate.mean, 0.0);
        assert_eq!(stats.prior_safe_rate.mean, 1.0);
        assert_eq!(stats.censored_count, 50);
    }

    #[test]
    fn single_episode_has_zero_errors() {
        let stats = estimate(&params(1.0, 0.0), Strategy::Regular, 1, 11).unwrap();
        assert_eq!(stats.burst_rate.std_err, 0.0);
        assert_eq!(stats.mean_nu.std_err, 0.0);
        assert!(estimate(&params(1.0, 0.0), Strategy::Regular, 0, 11).is_err());
    }

    #[test]
    fn worker_count_does_not_matter() {
        let p = params(1.0, 2.0);
        let run = |workers| {
            estimate_with(&p, safety(0.3), 20_000, 99, &SimOptions { workers: Some(workers), ..Default::default() })
                .unwrap()
        };
        assert_eq!(run(1), run(4));
        assert_eq!(run(1), run(3));
    }
}
