//! Regular-vs-Safety decision from the 2x2 cost matrix.

use sabgg::model::{burst_prob_regular, burst_prob_safety, choose_strategy};
use sabgg::{CostMatrix, Probability, SwarmParams};

fn main() -> sabgg::Result<()> {
    let rho = Probability::new(0.5)?;
    for lambda_a in [0.25, 1.0, 2.0, 4.0] {
        let params = SwarmParams { lambda_a, ..SwarmParams::reference() };
        let matrix = CostMatrix::for_swarm(&params, rho);
        let choice = choose_strategy(&matrix, burst_prob_regular(&params), burst_prob_safety(&params, rho));
        println!(
            "lambda_a = {lambda_a:<5} regular = {:>12.4}  safety = {:>12.4}  -> {}",
            choice.expected_cost_regular,
            choice.expected_cost_safety,
            choice.strategy.name()
        );
    }

    // a hand-written matrix works the same way
    let matrix = CostMatrix::new(30_000.0, 9.0)?;
    let choice = choose_strategy(&matrix, Probability::new(0.3)?, Probability::new(0.01)?);
    println!("custom matrix: {:?}", choice);
    Ok(())
}
