//! Ring laws and operator identities for truncated series on random inputs.

use proptest::prelude::*;
use sabgg::series::{d_operator, Degrees, TruncSeries};

const DEG: Degrees = [3, 2, 2];

fn series() -> impl Strategy<Value = TruncSeries> {
    let len = DEG.iter().map(|d| d + 1).product::<usize>();
    prop::collection::vec(-1.0f64..1.0, len).prop_map(|c| {
        let mut it = c.into_iter();
        TruncSeries::from_fn(DEG, |_| it.next().unwrap())
    })
}

/// Series with constant term one, safe to divide by.
fn unit_series() -> impl Strategy<Value = TruncSeries> {
    series().prop_map(|s| {
        let shift = TruncSeries::constant(DEG, 1.0 - s.constant_term());
        s.add(&shift).unwrap()
    })
}

fn close(a: &TruncSeries, b: &TruncSeries, tol: f64) -> bool {
    a.coefficients().iter().zip(b.coefficients()).all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn mul_commutes(a in series(), b in series()) {
        prop_assert!(close(&a.mul(&b).unwrap(), &b.mul(&a).unwrap(), 1e-12));
    }

    #[test]
    fn mul_associates(a in series(), b in series(), c in series()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(close(&left, &right, 1e-12));
    }

    #[test]
    fn mul_distributes(a in series(), b in series(), c in series()) {
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(close(&left, &right, 1e-12));
    }

    #[test]
    fn div_round_trips(a in series(), b in unit_series()) {
        let q = a.div(&b).unwrap();
        prop_assert!(close(&q.mul(&b).unwrap(), &a, 1e-10));
    }

    #[test]
    fn d_operator_is_linear(a in series(), b in series(), alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let combo = a.scale(alpha).add(&b.scale(beta)).unwrap();
        let want = alpha * d_operator(&a) + beta * d_operator(&b);
        prop_assert!((d_operator(&combo) - want).abs() < 1e-12);
    }

    #[test]
    fn d_operator_is_evaluation_at_ones(a in series()) {
        prop_assert!((d_operator(&a) - a.eval(1.0, 1.0, 1.0)).abs() < 1e-12);
    }
}
