//! First-excess functional of the attacker/honest counting processes.
//!
//! Observation epochs `τ₀ = 0 < τ₁ < ...` are spaced by exponential
//! intervals (mean `δ₀` for the first, `δ` afterwards). Over one interval the
//! attacker gains `X ~ Poisson(λ_a · len)` nodes and the honest side
//! `Y ~ Poisson(λ_h · len)`, so the joint transform of one interval is
//!
//! ```text
//! γ(g, z) = E[g^X z^Y] = 1 / (1 + λ_a m (1 - g) + λ_h m (1 - z))
//! ```
//!
//! with `m` the interval mean. The exit index `ν` is the first epoch at
//! which the attacker count `A_k` reaches the strict-majority threshold `T`.
//! The joint functional
//!
//! ```text
//! Φ(ξ, g₀, g₁, b, z₀, z₁) = E[ξ^ν g₀^{A_{ν-1}} g₁^{A_ν} b^{A_ν - B} z₀^{H_{ν-1}} z₁^{H_ν}]
//! ```
//!
//! is `ξ · σ · D Λ`, where `D` sums the coefficients of `Λ` up to `T - 1`
//! in each auxiliary variable and
//!
//! ```text
//! Λ = γ₀¹ - γ₀ + ξ Θ₀ / (1 - ξ Θ) · (γ¹ - γ)
//! Θ  = γ(g₀g₁b·qr, z₀z₁),   Θ₀  = γ₀(g₀g₁b·qr, z₀z₁)
//! γ  = γ(g₁b·q, z₁),        γ₀  = γ₀(g₁b·q, z₁)
//! γ¹ = γ(g₁b, z₁),          γ₀¹ = γ₀(g₁b, z₁)
//! σ  = E[b^{-B}],           B ~ Binomial(M/2 - 1, rho)
//! ```
//!
//! The auxiliary variable `q` gates the attacker count below `T`; `r` rides
//! along on the prior count (it never changes the extracted sum). In the
//! honest-race variant, `s` multiplies every honest argument and gates
//! `H_ν < T`, which restricts the functional to episodes where the attacker
//! finishes strictly before the honest side.

use crate::error::{domain, Error, Result};
use crate::model::SwarmParams;
use crate::probability::Probability;
use crate::series::{d_operator, Degrees, TruncSeries};

/// Arguments of the joint functional. All magnitudes must be at most one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformPoint {
    pub xi: f64,
    pub g0: f64,
    pub g1: f64,
    pub b: f64,
    pub z0: f64,
    pub z1: f64,
}

impl TransformPoint {
    /// Only `ξ` free; every other argument at one.
    pub fn marginal(xi: f64) -> Self {
        TransformPoint { xi, g0: 1.0, g1: 1.0, b: 1.0, z0: 1.0, z1: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        let args = [self.xi, self.g0, self.g1, self.b, self.z0, self.z1];
        if args.iter().all(|x| x.is_finite() && x.abs() <= 1.0) {
            Ok(())
        } else {
            Err(domain(format!("transform arguments must have magnitude <= 1: {self:?}")))
        }
    }
}

/// Joint transform of the attacker and honest increments over one
/// exponential interval with the given mean.
pub fn interval_transform(g: f64, z: f64, mean: f64, lambda_a: f64, lambda_h: f64) -> f64 {
    1.0 / (1.0 + lambda_a * mean * (1.0 - g) + lambda_h * mean * (1.0 - z))
}

/// `E[b^{-B}]` for `B ~ Binomial(candidates, rho)`.
pub fn sigma_transform(b: f64, rho: Probability, candidates: u64) -> Result<f64> {
    if b == 0.0 {
        return Err(Error::Singular("sigma transform at b = 0".into()));
    }
    let rho = rho.value();
    Ok((1.0 - rho + rho / b).powi(candidates as i32))
}

/// A coefficient times a monomial in `(q, r, s)`.
#[derive(Clone, Copy)]
struct Term {
    coeff: f64,
    exps: [usize; 3],
}

/// `γ(u, w)` as a series, where `u` and `w` are monomials.
fn transform_series(
    degrees: Degrees,
    attacker: Term,
    honest: Term,
    mean: f64,
    params: &SwarmParams,
) -> Result<TruncSeries> {
    let a = params.lambda_a * mean;
    let h = params.lambda_h * mean;
    let denom = TruncSeries::constant(degrees, 1.0 + a + h)
        .sub(&TruncSeries::monomial(degrees, attacker.exps, a * attacker.coeff))?
        .sub(&TruncSeries::monomial(degrees, honest.exps, h * honest.coeff))?;
    denom.recip()
}

fn functional(point: &TransformPoint, params: &SwarmParams, rho: Probability, race: bool) -> Result<f64> {
    let TransformPoint { xi, g0, g1, b, z0, z1 } = *point;
    let sigma = sigma_transform(b, rho, params.candidates())?;

    if params.lambda_a == 0.0 {
        // ν = ∞ almost surely: ξ^ν vanishes unless ξ = 1, the attacker
        // counts stay at zero and the honest count grows without bound.
        if race || xi != 1.0 {
            return Ok(0.0);
        }
        let honest = if params.lambda_h == 0.0 || (z0 == 1.0 && z1 == 1.0) { 1.0 } else { 0.0 };
        return Ok(sigma * honest);
    }

    let n = (params.threshold() - 1) as usize;
    let degrees: Degrees = [n, n, if race { n } else { 0 }];
    let s_exp = [0, 0, usize::from(race)];
    let gate_q = [1, 0, 0];
    let gate_qr = [1, 1, 0];
    let free = [0, 0, 0];

    let lifted = |mean: f64, attacker: Term, honest: Term| {
        transform_series(degrees, attacker, honest, mean, params)
    };
    let prior_a = Term { coeff: g0 * g1 * b, exps: gate_qr };
    let prior_h = Term { coeff: z0 * z1, exps: s_exp };
    let step_a = Term { coeff: g1 * b, exps: gate_q };
    let step_h = Term { coeff: z1, exps: s_exp };
    let free_a = Term { coeff: g1 * b, exps: free };

    let theta = lifted(params.delta, prior_a, prior_h)?;
    let theta0 = lifted(params.delta0, prior_a, prior_h)?;
    let gamma = lifted(params.delta, step_a, step_h)?;
    let gamma0 = lifted(params.delta0, step_a, step_h)?;
    let gamma1 = lifted(params.delta, free_a, step_h)?;
    let gamma01 = lifted(params.delta0, free_a, step_h)?;

    let one = TruncSeries::constant(degrees, 1.0);
    let renewal = one.sub(&theta.scale(xi))?;
    if renewal.constant_term().abs() < 1e-300 {
        return Err(Error::Singular(format!("1 - ξΘ vanishes at ξ = {xi}")));
    }
    let later = theta0.scale(xi).div(&renewal)?.mul(&gamma1.sub(&gamma)?)?;
    let lambda = gamma01.sub(&gamma0)?.add(&later)?;
    Ok(xi * sigma * d_operator(&lambda))
}

/// The joint functional `Φ` at `point`. `rho` enters through `σ = E[b^{-B}]`.
pub fn phi(point: &TransformPoint, params: &SwarmParams, rho: Probability) -> Result<f64> {
    point.validate()?;
    functional(point, params, rho, false)
}

/// `Φ` restricted to episodes where the attacker reaches the threshold
/// strictly before the honest side (`ν < μ`). At the all-ones point this is
/// the probability that the attacker wins the race.
pub fn phi_before_honest(point: &TransformPoint, params: &SwarmParams, rho: Probability) -> Result<f64> {
    point.validate()?;
    functional(point, params, rho, true)
}

/// Probability generating function `E[ξ^ν]` of the exit index.
pub fn exit_index_pgf(xi: f64, params: &SwarmParams) -> Result<f64> {
    phi(&TransformPoint::marginal(xi), params, Probability::ZERO)
}

/// `E[ν]` from a Richardson-refined central difference of the generating
/// function at `ξ = 1`.
pub fn expected_exit_index(params: &SwarmParams) -> Result<f64> {
    if params.lambda_a == 0.0 {
        return Err(Error::Singular("attacker rate is zero; the exit index is infinite".into()));
    }
    let pgf = |xi: f64| functional(&TransformPoint::marginal(xi), params, Probability::ZERO, false);
    let central = |h: f64| -> Result<f64> { Ok((pgf(1.0 + h)? - pgf(1.0 - h)?) / (2.0 * h)) };
    let h = 1e-4;
    let coarse = central(h)?;
    let fine = central(h / 2.0)?;
    let mean = (4.0 * fine - coarse) / 3.0;
    if !mean.is_finite() || mean < 1.0 - 1e-6 {
        return Err(Error::Singular(format!("exit index derivative is {mean}")));
    }
    Ok(mean.max(1.0))
}
