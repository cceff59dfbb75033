//! Exact-arithmetic oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use sabgg::{Probability, SwarmParams};

pub fn p(x: f64) -> Probability {
    Probability::new(x).unwrap()
}

pub fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// `mean^k / k!` for every `k` in `0..=kmax`, exactly.
pub fn poisson_weights(mean: f64, kmax: u64) -> Vec<BigRational> {
    let m = exact(mean);
    let mut out = Vec::with_capacity(kmax as usize + 1);
    let mut term = BigRational::one();
    out.push(term.clone());
    for k in 1..=kmax {
        term = term * &m / BigRational::from_integer(BigInt::from(k));
        out.push(term.clone());
    }
    out
}

/// `e^{-mean} · Σ_{k in lo..=hi} mean^k / k!`, the sum taken exactly.
pub fn poisson_mass(mean: f64, lo: u64, hi: u64) -> f64 {
    if hi < lo {
        return 0.0;
    }
    let w = poisson_weights(mean, hi);
    let s: BigRational = w[lo as usize..].iter().fold(BigRational::zero(), |a, b| a + b);
    s.to_f64().unwrap() * (-mean).exp()
}

pub fn poisson_pmf(k: u64, mean: f64) -> f64 {
    poisson_mass(mean, k, k)
}

/// Truncation point beyond which the Poisson tail is negligible.
pub fn tail_cutoff(mean: f64) -> u64 {
    (mean + 40.0 * (mean + 1.0).sqrt()).ceil() as u64 + 1
}

pub fn binomial_exact(j: u64, n: u64, rho: f64) -> BigRational {
    let r = exact(rho);
    let one = BigRational::one();
    let mut coeff = BigRational::one();
    for i in 0..j {
        coeff = coeff * BigRational::from_integer(BigInt::from(n - i)) / BigRational::from_integer(BigInt::from(i + 1));
    }
    let mut pow = BigRational::one();
    for _ in 0..j {
        pow *= &r;
    }
    for _ in 0..(n - j) {
        pow *= &one - &r;
    }
    coeff * pow
}

/// `q1(rho)` as an explicit double sum over allies `j` and attacker counts
/// `k >= T + j`, in exact rationals.
pub fn safety_burst_brute(m: u32, mean: f64, rho: f64) -> f64 {
    let n = u64::from(m / 2) - 1;
    let t = u64::from(m / 2) + 1;
    let kmax = tail_cutoff(mean).max(t + n);
    let w = poisson_weights(mean, kmax);
    let mut total = BigRational::zero();
    for j in 0..=n {
        let weight = binomial_exact(j, n, rho);
        let mut tail = BigRational::zero();
        for k in (t + j)..=kmax {
            tail += &w[k as usize];
        }
        total += weight * tail;
    }
    total.to_f64().unwrap() * (-mean).exp()
}

/// A swarm whose exit-epoch mean `λ_a (δ₀ + (E[ν]-1) δ)` equals `mean`.
pub fn swarm_with_exit_mean(m: u32, mean: f64) -> SwarmParams {
    SwarmParams { swarm_size: m, lambda_a: mean / 3.0, expected_nu: 3.0, delta0: 1.0, delta: 1.0, ..SwarmParams::reference() }
}
