//! Monte Carlo estimates of the burst rate for both strategies.
//!
//! Pass the episode count as the first argument (default 200000).

use sabgg::sim::{estimate_with, simulate_episode, SimOptions};
use sabgg::{Probability, Strategy, SwarmParams};

fn main() -> sabgg::Result<()> {
    let episodes = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200_000);
    let params = SwarmParams { lambda_h: 2.0, ..SwarmParams::reference() };

    let one = simulate_episode(&params, Strategy::Regular, 1);
    println!("single episode: {one:?}");

    let options = SimOptions::default();
    for strategy in [Strategy::Regular, Strategy::Safety { rho: Probability::new(0.5)? }] {
        let stats = estimate_with(&params, strategy, episodes, 42, &options)?;
        println!(
            "{:<8} burst = {:.5} ± {:.5}  prior_safe = {:.5}  E[nu] = {:.3}  censored = {}",
            strategy.name(),
            stats.burst_rate.mean,
            stats.burst_rate.std_err,
            stats.prior_safe_rate.mean,
            stats.mean_nu.mean,
            stats.censored_count
        );
    }
    Ok(())
}
