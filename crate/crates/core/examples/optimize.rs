//! Optimal ally acceptance probability across attacker rates.

use sabgg::optimize::optimize;
use sabgg::SwarmParams;

fn main() -> sabgg::Result<()> {
    println!("{:>8} {:>10} {:>14} {:>10}", "lambda_a", "rho*", "cost*", "allies");
    for lambda_a in [0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
        let params = SwarmParams { lambda_a, ..SwarmParams::reference() };
        let opt = optimize(&params, 1e-6)?;
        let allies = opt.n_required().map_or("-".to_string(), |n| n.to_string());
        println!("{lambda_a:>8} {:>10.6} {:>14.6} {allies:>10}", opt.rho_star.value(), opt.cost_star);
    }
    Ok(())
}
