//! Distribution of the attacker's exit index from the fluctuation
//! functional, checked against simulation.

use sabgg::fluctuation::{exit_index_pgf, expected_exit_index, phi, phi_before_honest, TransformPoint};
use sabgg::sim::{estimate, exit_index_pgf_estimate};
use sabgg::{Probability, Strategy, SwarmParams};

fn main() -> sabgg::Result<()> {
    let params = SwarmParams { lambda_h: 10.0, ..SwarmParams::reference() };
    let e_nu = expected_exit_index(&params)?;
    let mc = estimate(&params, Strategy::Regular, 100_000, 3)?;
    println!("E[nu]: analytic {e_nu:.5}, simulated {:.5} ± {:.5}", mc.mean_nu.mean, mc.mean_nu.std_err);

    for xi in [0.5, 0.8, 0.9, 0.95] {
        let analytic = exit_index_pgf(xi, &params)?;
        let sim = exit_index_pgf_estimate(&params, xi, 100_000, 5)?;
        println!("E[{xi}^nu]: analytic {analytic:.6}, simulated {:.6} ± {:.6}", sim.mean, sim.std_err);
    }

    let point = TransformPoint { xi: 0.9, g0: 0.95, g1: 0.97, b: 0.9, z0: 0.99, z1: 0.98 };
    let rho = Probability::new(0.5)?;
    println!("joint transform at {point:?}: {:.6}", phi(&point, &params, rho)?);

    // with a slower honest swarm, the race transform at xi = 1 is the
    // Regular burst probability
    let slow = SwarmParams { lambda_h: 2.0, ..params };
    let race = phi_before_honest(&TransformPoint::marginal(1.0), &slow, rho)?;
    let sim = estimate(&slow, Strategy::Regular, 100_000, 7)?;
    println!(
        "exit before honest majority: analytic {race:.5}, simulated burst rate {:.5} ± {:.5}",
        sim.burst_rate.mean, sim.burst_rate.std_err
    );
    Ok(())
}
