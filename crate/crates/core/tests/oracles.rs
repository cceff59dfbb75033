//! Kernel and closed-form model values checked against exact-arithmetic
//! oracles and against values frozen from a 40-digit evaluation.

mod common;

use common::*;
use sabgg::model::{
    ally_cost, burst_prob_regular, burst_prob_safety, exit_mean_count, min_allies, prior_safe_prob, total_cost,
};
use sabgg::poisson::{binom_pmf, pois_cdf, pois_pmf, pois_tail};
use sabgg::SwarmParams;

#[test]
fn poisson_pmf_matches_exact() {
    let got = pois_pmf(2, 3.0).unwrap().value();
    assert!((got - poisson_pmf(2, 3.0)).abs() < 1e-15);
    assert!((got - 0.224_041_807_655_387_74).abs() < 1e-15);
    for &(k, mean) in &[(0u64, 0.7), (5, 2.5), (17, 9.0), (40, 33.3), (120, 101.0)] {
        let got = pois_pmf(k, mean).unwrap().value();
        let want = poisson_pmf(k, mean);
        assert!((got - want).abs() <= 1e-13 * want.max(1e-300), "k={k} mean={mean}: {got} vs {want}");
    }
}

#[test]
fn poisson_cdf_and_tail_match_summation() {
    let cdf = pois_cdf(10, 9.0).unwrap().value();
    assert!((cdf - poisson_mass(9.0, 0, 10)).abs() < 1e-14);
    assert!((cdf - 0.705_988_320_340_511_8).abs() < 1e-14);
    let tail = pois_tail(11, 9.0).unwrap().value();
    assert!((tail - 0.294_011_679_659_488_2).abs() < 1e-14);
    assert!((tail - poisson_mass(9.0, 11, tail_cutoff(9.0))).abs() < 1e-14);
}

#[test]
fn binomial_matches_exact() {
    let got = binom_pmf(3, 9, p(0.4)).unwrap().value();
    assert!((got - 0.250_822_656).abs() < 1e-14);
    for &(j, n, rho) in &[(0u64, 9u64, 0.25), (4, 9, 0.5), (7, 30, 0.75), (50, 120, 0.4)] {
        use num_traits::ToPrimitive;
        let want = binomial_exact(j, n, rho).to_f64().unwrap();
        let got = binom_pmf(j, n, p(rho)).unwrap().value();
        assert!((got - want).abs() <= 1e-12 * want, "{j} {n} {rho}");
    }
}

#[test]
fn prior_safe_reference_value() {
    // K = floor(10 - 1) = 9, Λ = 3
    let params = SwarmParams::reference();
    assert_eq!(exit_mean_count(&params), 3.0);
    let got = prior_safe_prob(&params).value();
    assert!((got - poisson_mass(3.0, 0, 9)).abs() < 1e-15);
}

#[test]
fn regular_burst_reference_value() {
    let got = burst_prob_regular(&SwarmParams::reference()).value();
    assert!((got - (1.0 - poisson_mass(3.0, 0, 10))).abs() < 1e-15);
    assert!((got - 2.923_369_506_473_366e-4).abs() < 1e-14);
}

#[test]
fn safety_burst_matches_double_sum() {
    let params = SwarmParams::reference();
    let got = burst_prob_safety(&params, p(0.5)).value();
    assert!((got - safety_burst_brute(20, 3.0, 0.5)).abs() < 1e-14);
    assert!((got - 3.718_746_134_278_824e-6).abs() < 1e-14);

    for m in [4u32, 10, 20, 21, 60] {
        for mean in [0.5, 3.0, 9.0, 20.0] {
            let params = swarm_with_exit_mean(m, mean);
            for rho in [0.0, 0.1, 0.25, 0.5, 0.75, 1.0] {
                let got = burst_prob_safety(&params, p(rho)).value();
                let want = safety_burst_brute(m, exit_mean_count(&params), rho);
                assert!((got - want).abs() < 1e-10, "M={m} mean={mean} rho={rho}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn total_cost_end_to_end() {
    let params = SwarmParams::reference();
    let cb = total_cost(&params, p(0.5));
    let (pp, q0, q1) = (poisson_mass(3.0, 0, 9), 1.0 - poisson_mass(3.0, 0, 10), safety_burst_brute(20, 3.0, 0.5));
    let c = 13.5;
    let v = 30_000.0;
    let want = (c * (1.0 - q1) + (c + v) * q1) * pp + v * q0 * (1.0 - pp);
    assert_eq!(cb.ally_cost, ally_cost(&params, p(0.5)));
    assert!((cb.total - want).abs() < 1e-10);
    assert!((cb.total - 13.606_224_738_610_132).abs() < 1e-10);
}

#[test]
fn zero_value_cost_is_ally_cost_times_prior() {
    // drone_value must be positive for a valid swarm, but the identity is a
    // property of the formula and holds for V = 0 as well
    let params = SwarmParams { drone_value: 0.0, lambda_a: 2.0, ..SwarmParams::reference() };
    for i in 0..=20 {
        let rho = p(i as f64 / 20.0);
        let cb = total_cost(&params, rho);
        assert!((cb.total - cb.ally_cost * cb.p_prior.value()).abs() < 1e-12);
    }
}

#[test]
fn min_allies_bound_is_tight() {
    for lambda_a in [1.0, 2.0, 4.0, 8.0] {
        let params = SwarmParams { lambda_a, drone_value: 5.0, ..SwarmParams::reference() };
        for i in 1..=10 {
            let rho = p(i as f64 / 10.0);
            let c = ally_cost(&params, rho);
            let margin = params.total_value() * burst_prob_regular(&params).value() - c;
            match min_allies(&params, rho).required() {
                Some(n) => {
                    assert!(margin > 0.0);
                    assert!(n as f64 * margin >= c);
                    assert!(n == 0 || (n as f64 - 1.0) * margin < c);
                }
                None => assert!(margin <= 0.0),
            }
        }
    }
}
