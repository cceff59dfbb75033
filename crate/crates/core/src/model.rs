//! Closed-form cost model.
//!
//! The attacker's node count at the exit epoch is approximated as
//! `Poisson(Λ)` with `Λ = λ_a (δ₀ + (E[ν] - 1) δ)`. From it follow the
//! probability that the prior epoch was still safe (`p_prior`), the burst
//! probability without allies (`q0`) and with allies reserved at rate `rho`
//! (`q1`), and the expected total cost
//!
//! ```text
//! S(rho) = (c(rho)(1 - q1) + (c(rho) + V) q1) p_prior + V q0 (1 - p_prior)
//! ```
//!
//! A burst always means a strict majority: the attacker needs at least
//! `floor(M/2) + 1` nodes, and each accepted ally raises that bar by one.

use crate::error::{domain, Result};
use crate::poisson::{binom_pmf, pois_cdf, pois_tail};
use crate::probability::Probability;

/// Model inputs for one swarm.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmParams {
    /// Number of drones (ledger nodes) in the swarm, `M`.
    pub swarm_size: u32,
    /// Value of a single drone; the swarm value is `V = drone_value * M`.
    pub drone_value: f64,
    /// Attacker capture rate.
    pub lambda_a: f64,
    /// Honest accumulation rate. Only the simulator and the fluctuation
    /// functional look at it.
    pub lambda_h: f64,
    /// Mean length of the first observation interval.
    pub delta0: f64,
    /// Mean length of every later observation interval.
    pub delta: f64,
    /// Expected exit index `E[ν]`.
    pub expected_nu: f64,
    /// Alliance cost per candidate per unit of `rho`.
    pub ally_unit_cost: f64,
}

impl SwarmParams {
    /// Reference swarm: 20 drones at 1500 each, `E[ν] = 3`, unit ally cost 3,
    /// with unit attacker rate and unit observation intervals.
    pub fn reference() -> Self {
        SwarmParams {
            swarm_size: 20,
            drone_value: 1500.0,
            lambda_a: 1.0,
            lambda_h: 0.0,
            delta0: 1.0,
            delta: 1.0,
            expected_nu: 3.0,
            ally_unit_cost: 3.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        fn check(ok: bool, what: &str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(domain(what.to_string()))
            }
        }
        let finite_nonneg = |x: f64| x.is_finite() && x >= 0.0;
        let finite_pos = |x: f64| x.is_finite() && x > 0.0;
        check(self.swarm_size >= 4, "swarm_size (M) must be >= 4")?;
        check(finite_pos(self.drone_value), "drone_value must be > 0")?;
        check(finite_nonneg(self.lambda_a), "lambda_a must be >= 0")?;
        check(finite_nonneg(self.lambda_h), "lambda_h must be >= 0")?;
        check(finite_pos(self.delta0), "delta0 must be > 0")?;
        check(finite_pos(self.delta), "delta must be > 0")?;
        check(
            self.expected_nu.is_finite() && self.expected_nu >= 1.0,
            "expected_nu must be >= 1",
        )?;
        check(finite_nonneg(self.ally_unit_cost), "ally_unit_cost must be >= 0")?;
        Ok(())
    }

    /// Total swarm value `V`.
    pub fn total_value(&self) -> f64 {
        self.drone_value * f64::from(self.swarm_size)
    }

    /// Strict-majority burst threshold for this swarm.
    pub fn threshold(&self) -> u64 {
        u64::from(self.swarm_size / 2) + 1
    }

    /// Number of candidate allies, `M/2 - 1`.
    pub fn candidates(&self) -> u64 {
        u64::from(self.swarm_size / 2).saturating_sub(1)
    }
}

/// Smallest attacker count that controls a strict majority of `m` nodes.
pub fn majority_threshold(m: u32) -> Result<u64> {
    if m < 2 {
        return Err(domain(format!("swarm size must be >= 2, got {m}")));
    }
    Ok(u64::from(m / 2) + 1)
}

/// Poisson mean of the attacker count at the exit epoch.
pub fn exit_mean_count(params: &SwarmParams) -> f64 {
    let later = (params.expected_nu - 1.0).max(0.0);
    params.lambda_a * (params.delta0 + later * params.delta)
}

/// `p_prior`: probability that the attacker was below the majority at the
/// epoch before exit.
pub fn prior_safe_prob(params: &SwarmParams) -> Probability {
    let cutoff = (f64::from(params.swarm_size) / 2.0 - params.lambda_a * params.delta).floor();
    if cutoff < 0.0 {
        return Probability::ZERO;
    }
    pois_cdf(cutoff as u64, exit_mean_count(params)).expect("validated params")
}

/// `q0`: burst probability under the Regular strategy.
pub fn burst_prob_regular(params: &SwarmParams) -> Probability {
    pois_tail(params.threshold(), exit_mean_count(params)).expect("validated params")
}

/// `q1(rho)`: burst probability under the Safety strategy, where each of the
/// `M/2 - 1` candidates joins independently with probability `rho`.
pub fn burst_prob_safety(params: &SwarmParams, rho: Probability) -> Probability {
    let mean = exit_mean_count(params);
    let n = params.candidates();
    let t = params.threshold();
    let q: f64 = (0..=n)
        .map(|j| {
            let weight = binom_pmf(j, n, rho).expect("j <= n").value();
            if weight == 0.0 {
                0.0
            } else {
                weight * pois_tail(t + j, mean).expect("validated params").value()
            }
        })
        .sum();
    Probability::from_rounded(q)
}

/// Alliance cost `c(rho) = unit * (M/2 - 1) * rho`.
pub fn ally_cost(params: &SwarmParams, rho: Probability) -> f64 {
    params.ally_unit_cost * params.candidates() as f64 * rho.value()
}

/// All components of the total cost at one `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    pub rho: Probability,
    pub p_prior: Probability,
    pub q0: Probability,
    pub q1: Probability,
    pub ally_cost: f64,
    pub total: f64,
}

/// Expected total defense cost `S(rho)`.
pub fn total_cost(params: &SwarmParams, rho: Probability) -> CostBreakdown {
    let v = params.total_value();
    let c = ally_cost(params, rho);
    let p_prior = prior_safe_prob(params);
    let q0 = burst_prob_regular(params);
    let q1 = burst_prob_safety(params, rho);
    let (p, q0v, q1v) = (p_prior.value(), q0.value(), q1.value());
    let total = (c * (1.0 - q1v) + (c + v) * q1v) * p + v * q0v * (1.0 - p);
    CostBreakdown { rho, p_prior, q0, q1, ally_cost: c, total }
}

/// Outcome of the alliance cost-effectiveness constraint
/// `n >= c(rho) / (V q0 - c(rho))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    /// The smallest integer `n` satisfying the bound.
    Feasible { n: u64 },
    /// `V q0 <= c(rho)`: the alliance can never pay off.
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }

    pub fn required(self) -> Option<u64> {
        match self {
            Feasibility::Feasible { n } => Some(n),
            Feasibility::Infeasible => None,
        }
    }
}

pub fn min_allies(params: &SwarmParams, rho: Probability) -> Feasibility {
    let c = ally_cost(params, rho);
    let margin = params.total_value() * burst_prob_regular(params).value() - c;
    if margin <= 0.0 {
        if c == 0.0 && margin == 0.0 {
            // nothing to pay and nothing to protect: the bound 0/0 is met by n = 0
            return Feasibility::Feasible { n: 0 };
        }
        return Feasibility::Infeasible;
    }
    Feasibility::Feasible { n: (c / margin).ceil() as u64 }
}

/// The swarm's two options one epoch before the attacker completes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    Regular,
    /// Reserve the candidate allies, each accepting with probability `rho`.
    Safety { rho: Probability },
}

impl Strategy {
    pub fn kind(&self) -> StrategyKind {
        match self {
            Strategy::Regular => StrategyKind::Regular,
            Strategy::Safety { .. } => StrategyKind::Safety,
        }
    }

    pub fn name(&self) -> &'static str {
        self.kind().name()
    }
}

/// Row label of the cost matrix, without the alliance probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    Regular,
    Safety,
}

impl StrategyKind {
    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Regular => "regular",
            StrategyKind::Safety => "safety",
        }
    }
}

/// Defender cost matrix. Rows are the swarm's strategies, columns the
/// attacker's (`NotBurst`, `Burst`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostMatrix {
    value: f64,
    alliance_cost: f64,
}

impl CostMatrix {
    pub fn new(value: f64, alliance_cost: f64) -> Result<Self> {
        if !(value.is_finite() && value >= 0.0 && alliance_cost.is_finite() && alliance_cost >= 0.0) {
            return Err(domain("cost matrix entries must be finite and >= 0"));
        }
        Ok(CostMatrix { value, alliance_cost })
    }

    /// Matrix for a swarm with `c_b = c(rho)`.
    pub fn for_swarm(params: &SwarmParams, rho: Probability) -> Self {
        CostMatrix { value: params.total_value(), alliance_cost: ally_cost(params, rho) }
    }

    pub fn regular_notburst(&self) -> f64 {
        0.0
    }

    pub fn regular_burst(&self) -> f64 {
        self.value
    }

    pub fn safety_notburst(&self) -> f64 {
        self.alliance_cost
    }

    pub fn safety_burst(&self) -> f64 {
        self.alliance_cost + self.value
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyChoice {
    pub strategy: StrategyKind,
    pub expected_cost_regular: f64,
    pub expected_cost_safety: f64,
}

/// Picks the strategy with the smaller expected cost. Ties go to Regular.
pub fn choose_strategy(matrix: &CostMatrix, q_regular: Probability, q_safety: Probability) -> StrategyChoice {
    let expect = |notburst: f64, burst: f64, q: Probability| {
        notburst * (1.0 - q.value()) + burst * q.value()
    };
    let regular = expect(matrix.regular_notburst(), matrix.regular_burst(), q_regular);
    let safety = expect(matrix.safety_notburst(), matrix.safety_burst(), q_safety);
    let strategy = if safety < regular { StrategyKind::Safety } else { StrategyKind::Regular };
    StrategyChoice { strategy, expected_cost_regular: regular, expected_cost_safety: safety }
}
