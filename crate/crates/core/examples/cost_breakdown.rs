//! Closed-form cost of the Safety strategy for the reference swarm at a few
//! ally acceptance probabilities.
//!
//! ```text
//! cargo run --example cost_breakdown
//! ```

use sabgg::model::{min_allies, total_cost};
use sabgg::{Probability, SwarmParams};

fn main() -> sabgg::Result<()> {
    let params = SwarmParams::reference();
    params.validate()?;
    println!(
        "M = {}, threshold = {}, candidates = {}, V = {}",
        params.swarm_size,
        params.threshold(),
        params.candidates(),
        params.total_value()
    );
    println!("{:>6} {:>10} {:>12} {:>12} {:>12} {:>12}", "rho", "ally", "p_prior", "q0", "q1", "total");
    for rho in [0.0, 0.1, 0.25, 0.5, 0.75, 1.0] {
        let cb = total_cost(&params, Probability::new(rho)?);
        println!(
            "{:>6.2} {:>10.3} {:>12.6} {:>12.6e} {:>12.6e} {:>12.4}",
            cb.rho.value(),
            cb.ally_cost,
            cb.p_prior.value(),
            cb.q0.value(),
            cb.q1.value(),
            cb.total
        );
    }
    match min_allies(&params, Probability::new(0.5)?).required() {
        Some(n) => println!("allies needed to justify rho = 0.5: {n}"),
        None => println!("rho = 0.5 can never pay for itself"),
    }
    Ok(())
}
