//! Writes the cost curve over `rho` as CSV to stdout for a few attacker
//! rates. Pipe it into a plotting tool of choice.

use std::io::Write;

use sabgg::cli::{format_sig, CURVE_HEADER};
use sabgg::optimize::sweep;
use sabgg::SwarmParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "lambda_a,{CURVE_HEADER}")?;
    for lambda_a in [0.5, 1.0, 1.5, 2.0] {
        let params = SwarmParams { lambda_a, ..SwarmParams::reference() };
        for cb in sweep(&params, 51)? {
            writeln!(
                out,
                "{lambda_a},{},{},{},{},{},{}",
                format_sig(cb.rho.value()),
                format_sig(cb.ally_cost),
                format_sig(cb.p_prior.value()),
                format_sig(cb.q0.value()),
                format_sig(cb.q1.value()),
                format_sig(cb.total)
            )?;
        }
    }
    Ok(())
}
