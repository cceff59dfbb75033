//! Poisson and binomial probability kernels.
//!
//! Everything is evaluated in log space (log-factorials and log-binomials)
//! and exponentiated at the end, so swarm sizes in the hundreds do not
//! overflow. Upper tails are complements of the cdf.

use statrs::function::factorial::{ln_binomial, ln_factorial};

use crate::error::{domain, Result};
use crate::probability::Probability;

fn check_mean(mean: f64) -> Result<()> {
    if mean.is_finite() && mean >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("poisson mean must be finite and >= 0, got {mean}")))
    }
}

fn pmf_unchecked(k: u64, mean: f64) -> f64 {
    if mean == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (k as f64 * mean.ln() - mean - ln_factorial(k)).exp()
}

/// `P{X = k}` for `X ~ Poisson(mean)`.
pub fn pois_pmf(k: u64, mean: f64) -> Result<Probability> {
    check_mean(mean)?;
    Ok(Probability::from_rounded(pmf_unchecked(k, mean)))
}

/// `P{X <= k}` for `X ~ Poisson(mean)`.
pub fn pois_cdf(k: u64, mean: f64) -> Result<Probability> {
    check_mean(mean)?;
    let mut acc = 0.0;
    for j in 0..=k {
        let term = pmf_unchecked(j, mean);
        acc += term;
        // past the mode the terms only shrink; stop once they no longer register
        if j as f64 > mean && term <= acc * 1e-18 {
            break;
        }
    }
    Ok(Probability::from_rounded(acc.min(1.0)))
}

/// `P{X >= k}` for `X ~ Poisson(mean)`, as `1 - P{X <= k - 1}`.
pub fn pois_tail(k: u64, mean: f64) -> Result<Probability> {
    check_mean(mean)?;
    if k == 0 {
        return Ok(Probability::ONE);
    }
    Ok(pois_cdf(k - 1, mean)?.complement())
}

/// `P{Y = j}` for `Y ~ Binomial(n, p)`.
pub fn binom_pmf(j: u64, n: u64, p: Probability) -> Result<Probability> {
    if j > n {
        return Err(domain(format!("binomial outcome {j} exceeds trials {n}")));
    }
    let p = p.value();
    let value = if p == 0.0 {
        if j == 0 { 1.0 } else { 0.0 }
    } else if p == 1.0 {
        if j == n { 1.0 } else { 0.0 }
    } else {
        (ln_binomial(n, j) + j as f64 * p.ln() + (n - j) as f64 * (1.0 - p).ln()).exp()
    };
    Ok(Probability::from_rounded(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64) -> Probability {
        Probability::new(x).unwrap()
    }

    #[test]
    fn pmf_edge_cases() {
        assert_eq!(pois_pmf(0, 0.0).unwrap().value(), 1.0);
        assert_eq!(pois_pmf(3, 0.0).unwrap().value(), 0.0);
        assert!((pois_pmf(0, 3.0).unwrap().value() - (-3.0f64).exp()).abs() < 1e-16);
        assert!((pois_pmf(2, 3.0).unwrap().value() - 4.5 * (-3.0f64).exp()).abs() < 1e-15);
        assert!(pois_pmf(0, -1.0).is_err());
        assert!(pois_pmf(0, f64::NAN).is_err());
    }

    #[test]
    fn cdf_and_tail_edges() {
        assert_eq!(pois_cdf(0, 0.0).unwrap().value(), 1.0);
        assert_eq!(pois_cdf(10, 0.0).unwrap().value(), 1.0);
        assert_eq!(pois_tail(0, 5.0).unwrap().value(), 1.0);
        assert_eq!(pois_tail(1, 0.0).unwrap().value(), 0.0);
        assert!(pois_tail(2, -0.5).is_err());
    }

    #[test]
    fn large_counts_do_not_overflow() {
        let v = pois_pmf(400, 380.0).unwrap().value();
        assert!(v > 0.0 && v < 0.05);
        let c = pois_cdf(1000, 380.0).unwrap().value();
        assert!((c - 1.0).abs() < 1e-14);
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binom_pmf(0, 9, p(0.0)).unwrap().value(), 1.0);
        assert_eq!(binom_pmf(9, 9, p(1.0)).unwrap().value(), 1.0);
        assert_eq!(binom_pmf(3, 9, p(1.0)).unwrap().value(), 0.0);
        assert!(binom_pmf(10, 9, p(0.5)).is_err());
        let expect = 84.0 * 0.4f64.powi(3) * 0.6f64.powi(6);
        assert!((binom_pmf(3, 9, p(0.4)).unwrap().value() - expect).abs() < 1e-14);
    }

    #[test]
    fn binomial_sums_to_one() {
        for &q in &[0.0, 0.25, 0.5, 0.75, 1.0] {
            for n in [0u64, 1, 9, 50, 300] {
                let s: f64 = (0..=n).map(|j| binom_pmf(j, n, p(q)).unwrap().value()).sum();
                assert!((s - 1.0).abs() < 1e-12, "n={n} p={q} sum={s}");
            }
        }
    }

    #[test]
    fn pmf_mass_converges() {
        for &mean in &[0.0, 0.3, 3.0, 9.0, 50.0, 250.0] {
            let kmax = (mean + 40.0 * (mean + 1.0f64).sqrt()).ceil() as u64;
            let s: f64 = (0..=kmax).map(|k| pois_pmf(k, mean).unwrap().value()).sum();
            assert!((s - 1.0).abs() < 1e-12, "mean={mean} sum={s}");
        }
    }

    #[test]
    fn cdf_tail_complement() {
        for &mean in &[0.0, 0.5, 3.0, 9.0, 30.0] {
            for k in 0..60 {
                let c = pois_cdf(k, mean).unwrap().value();
                let t = pois_tail(k + 1, mean).unwrap().value();
                assert!((c + t - 1.0).abs() < 1e-14);
            }
        }
    }
}
