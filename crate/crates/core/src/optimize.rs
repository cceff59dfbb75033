//! One-dimensional minimization of the total cost over `rho ∈ [0, 1]`.
//!
//! The cost curve is not guaranteed to be unimodal, so [`optimize`] first
//! scans a 101-point grid and then runs golden-section search inside the two
//! grid cells around the best point.

use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::model::{min_allies, total_cost, CostBreakdown, Feasibility, SwarmParams};
use crate::probability::Probability;

pub const COARSE_GRID: usize = 101;

/// `1 / φ`.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalRho {
    pub rho_star: Probability,
    pub cost_star: f64,
    pub feasibility: Feasibility,
    /// Grid curve with the refined optimum inserted, ascending in `rho`.
    pub curve: Vec<CostBreakdown>,
}

impl OptimalRho {
    pub fn feasible(&self) -> bool {
        self.feasibility.is_feasible()
    }

    pub fn n_required(&self) -> Option<u64> {
        self.feasibility.required()
    }
}

fn grid_point(i: usize, grid_size: usize) -> Probability {
    if i + 1 == grid_size {
        Probability::ONE
    } else {
        Probability::new(i as f64 / (grid_size - 1) as f64).expect("grid inside [0, 1]")
    }
}

/// Cost breakdown at `rho = i / (grid_size - 1)` for every `i`.
pub fn sweep(params: &SwarmParams, grid_size: usize) -> Result<Vec<CostBreakdown>> {
    params.validate()?;
    if grid_size < 2 {
        return Err(domain(format!("grid_size must be >= 2, got {grid_size}")));
    }
    Ok((0..grid_size)
        .into_par_iter()
        .map(|i| total_cost(params, grid_point(i, grid_size)))
        .collect())
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`. Returns the best
/// point evaluated once the bracket is narrower than `tolerance`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tolerance: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo >= tolerance {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 { (x1, f1) } else { (x2, f2) }
}

/// Minimizes the total cost over `rho` and reports alliance feasibility at
/// the optimum.
pub fn optimize(params: &SwarmParams, tolerance: f64) -> Result<OptimalRho> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(domain(format!("tolerance must be > 0, got {tolerance}")));
    }
    let mut curve = sweep(params, COARSE_GRID)?;
    let best = curve
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total.total_cmp(&b.1.total))
        .map(|(i, _)| i)
        .expect("non-empty grid");

    let lo = curve[best.saturating_sub(1)].rho.value();
    let hi = curve[(best + 1).min(curve.len() - 1)].rho.value();
    let cost_at = |x: f64| total_cost(params, Probability::new(x.clamp(0.0, 1.0)).expect("clamped")).total;
    let (x, fx) = golden_section(cost_at, lo, hi, tolerance);

    let optimum = if fx < curve[best].total {
        let refined = total_cost(params, Probability::new(x.clamp(0.0, 1.0))?);
        let at = curve.partition_point(|c| c.rho.value() < refined.rho.value());
        if curve.get(at).is_none_or(|c| c.rho != refined.rho) {
            curve.insert(at, refined);
        }
        refined
    } else {
        curve[best]
    };

    Ok(OptimalRho {
        rho_star: optimum.rho,
        cost_star: optimum.total,
        feasibility: min_allies(params, optimum.rho),
        curve,
    })
}
