//! Dense truncated power series in three variables `(q, r, s)`.
//!
//! A series with degrees `(dq, dr, ds)` stores every coefficient `F[i][j][k]`
//! with `i <= dq`, `j <= dr`, `k <= ds`; products and quotients discard
//! anything beyond those degrees.

use std::fmt;

use crate::error::{domain, Error, Result};

/// Maximum exponent per variable.
pub type Degrees = [usize; 3];

#[derive(Clone, PartialEq)]
pub struct TruncSeries {
    degrees: Degrees,
    coeffs: Vec<f64>,
}

impl TruncSeries {
    pub fn zero(degrees: Degrees) -> Self {
        let len = degrees.iter().map(|d| d + 1).product();
        TruncSeries { degrees, coeffs: vec![0.0; len] }
    }

    pub fn constant(degrees: Degrees, c: f64) -> Self {
        let mut s = Self::zero(degrees);
        s.coeffs[0] = c;
        s
    }

    /// `c * q^i r^j s^k`, or zero if the exponents exceed the degrees.
    pub fn monomial(degrees: Degrees, exps: [usize; 3], c: f64) -> Self {
        let mut s = Self::zero(degrees);
        if let Some(idx) = s.index(exps) {
            s.coeffs[idx] = c;
        }
        s
    }

    /// Builds a series from a coefficient function.
    pub fn from_fn(degrees: Degrees, mut f: impl FnMut([usize; 3]) -> f64) -> Self {
        let mut s = Self::zero(degrees);
        for (idx, e) in exponents(degrees).enumerate() {
            s.coeffs[idx] = f(e);
        }
        s
    }

    pub fn degrees(&self) -> Degrees {
        self.degrees
    }

    fn index(&self, [i, j, k]: [usize; 3]) -> Option<usize> {
        let [dq, dr, ds] = self.degrees;
        if i > dq || j > dr || k > ds {
            return None;
        }
        Some((i * (dr + 1) + j) * (ds + 1) + k)
    }

    /// Coefficient of `q^i r^j s^k`; zero beyond the truncation.
    pub fn coeff(&self, exps: [usize; 3]) -> f64 {
        self.index(exps).map_or(0.0, |idx| self.coeffs[idx])
    }

    pub fn constant_term(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    fn check_degrees(&self, other: &TruncSeries) -> Result<()> {
        if self.degrees == other.degrees {
            Ok(())
        } else {
            Err(domain(format!(
                "series degree mismatch: {:?} vs {:?}",
                self.degrees, other.degrees
            )))
        }
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_degrees(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncSeries { degrees: self.degrees, coeffs })
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_degrees(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncSeries { degrees: self.degrees, coeffs })
    }

    pub fn scale(&self, c: f64) -> TruncSeries {
        TruncSeries { degrees: self.degrees, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_degrees(other)?;
        let mut out = Self::zero(self.degrees);
        for (ia, ea) in exponents(self.degrees).enumerate() {
            let a = self.coeffs[ia];
            if a == 0.0 {
                continue;
            }
            let [dq, dr, ds] = self.degrees;
            for i in 0..=dq - ea[0] {
                for j in 0..=dr - ea[1] {
                    for k in 0..=ds - ea[2] {
                        let b = other.coeffs[other.index([i, j, k]).unwrap()];
                        if b != 0.0 {
                            let idx = out.index([ea[0] + i, ea[1] + j, ea[2] + k]).unwrap();
                            out.coeffs[idx] += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Quotient `self / divisor`, solved coefficient by coefficient in
    /// lexicographic order. The divisor needs a nonzero constant term.
    pub fn div(&self, divisor: &TruncSeries) -> Result<TruncSeries> {
        self.check_degrees(divisor)?;
        let b0 = divisor.constant_term();
        if b0 == 0.0 || !b0.is_finite() {
            return Err(Error::Singular("divisor has zero constant term".into()));
        }
        let mut out = Self::zero(self.degrees);
        for (idx, [i, j, k]) in exponents(self.degrees).enumerate() {
            let mut acc = self.coeffs[idx];
            // every m <= n (componentwise, m != n) precedes n lexicographically
            for a in 0..=i {
                for b in 0..=j {
                    for c in 0..=k {
                        if (a, b, c) == (i, j, k) {
                            continue;
                        }
                        let d = divisor.coeff([i - a, j - b, k - c]);
                        if d != 0.0 {
                            acc -= out.coeffs[out.index([a, b, c]).unwrap()] * d;
                        }
                    }
                }
            }
            out.coeffs[idx] = acc / b0;
        }
        Ok(out)
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Result<TruncSeries> {
        Self::constant(self.degrees, 1.0).div(self)
    }

    /// Evaluates the truncated polynomial at a point.
    pub fn eval(&self, q: f64, r: f64, s: f64) -> f64 {
        exponents(self.degrees)
            .zip(&self.coeffs)
            .map(|([i, j, k], c)| c * q.powi(i as i32) * r.powi(j as i32) * s.powi(k as i32))
            .sum()
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = exponents(self.degrees)
            .zip(&self.coeffs)
            .filter(|(_, c)| **c != 0.0)
            .map(|([i, j, k], c)| format!("{c}·q^{i}r^{j}s^{k}"))
            .collect();
        write!(f, "TruncSeries{:?}[{}]", self.degrees, terms.join(" + "))
    }
}

/// All exponent triples in storage (lexicographic) order.
fn exponents([dq, dr, ds]: Degrees) -> impl Iterator<Item = [usize; 3]> {
    (0..=dq).flat_map(move |i| (0..=dr).flat_map(move |j| (0..=ds).map(move |k| [i, j, k])))
}

/// Partial-sum coefficient extraction: the sum of every coefficient
/// `F[i][j][k]` with `i <= dq`, `j <= dr`, `k <= ds`, i.e. all retained
/// coefficients. Applied to `Σ P{X=i, Y=j, Z=k} q^i r^j s^k` it yields
/// `P{X <= dq, Y <= dr, Z <= ds}`.
pub fn d_operator(f: &TruncSeries) -> f64 {
    f.coeffs.iter().sum()
}
