use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Integer;

use overcubic::analytic::Verdict;
use overcubic::inequalities::{
    hermite, hermite_limit_check, is_hyperbolic, jensen, log_concavity_failures, ratio_bounds, solve_bm,
    subadditivity_scan, turan_threshold, IntPolynomial,
};
use overcubic::qseries::PartitionTable;

/// A polynomial assembled from known factors, with its number of distinct
/// real roots and hyperbolicity known by construction.
fn assembled(rng: &mut ChaCha8Rng) -> (IntPolynomial, usize, bool) {
    let mut p = IntPolynomial::from_i64(&[rng.random_range(1..=5) * if rng.random_bool(0.5) { 1 } else { -1 }]);
    let mut roots = std::collections::BTreeSet::new();
    for _ in 0..rng.random_range(0..=5) {
        let r: i64 = rng.random_range(-6..=6);
        roots.insert(r);
        p = p.mul(&IntPolynomial::from_i64(&[-r, 1]));
    }
    let quadratics = rng.random_range(0..=2);
    for _ in 0..quadratics {
        // X^2 + bX + c with b^2 < 4c has no real root.
        let b: i64 = rng.random_range(-5..=5);
        let c = b * b / 4 + rng.random_range(1..=6);
        p = p.mul(&IntPolynomial::from_i64(&[c, b, 1]));
    }
    (p, roots.len(), quadratics == 0)
}

#[test]
fn sturm_counts_match_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let (p, distinct, hyperbolic) = assembled(&mut rng);
        assert_eq!(p.count_real_roots().unwrap(), distinct, "{p}");
        assert_eq!(is_hyperbolic(&p).unwrap(), hyperbolic, "{p}");
    }
}

/// Distinct real roots by exact evaluation at every candidate integer.
/// Only valid for polynomials whose roots are integers in `-20..=20`.
fn grid_count(p: &IntPolynomial) -> usize {
    (-20..=20).filter(|&r| p.sign_at(&Integer::from(r)) == std::cmp::Ordering::Equal).count()
}

#[test]
fn integer_root_polynomials_match_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let mut p = IntPolynomial::from_i64(&[1]);
        for _ in 0..rng.random_range(1..=7) {
            p = p.mul(&IntPolynomial::from_i64(&[-rng.random_range(-9i64..=9), 1]));
        }
        assert_eq!(p.count_real_roots().unwrap(), grid_count(&p), "{p}");
        assert!(is_hyperbolic(&p).unwrap());
    }
}

#[test]
fn degree_two_matches_discriminant() {
    let t = PartitionTable::new(502).unwrap();
    for n in 0..=500u64 {
        let j = jensen(2, n, &t).unwrap();
        let [a, b, c] = [&j.coeffs[0], &j.coeffs[1], &j.coeffs[2]];
        let disc = Integer::from(b * b) - Integer::from(a * c) * 4u32;
        assert_eq!(is_hyperbolic(&j.to_poly()).unwrap(), disc >= 0, "n = {n}");
    }
}

#[test]
fn thresholds_are_consistent_with_log_concavity() {
    let t = PartitionTable::new(520).unwrap();
    let two = turan_threshold(2, 500, &t).unwrap();
    assert_eq!(two.candidate_n, 10);
    let lc: Vec<u64> = log_concavity_failures(1, 500, &t).unwrap().into_iter().collect();
    assert_eq!(two.failures, lc);
    let mut previous = 0;
    for d in 2..=5 {
        let th = turan_threshold(d, 500, &t).unwrap();
        assert!(th.candidate_n >= previous);
        previous = th.candidate_n;
        for n in th.candidate_n..=500 {
            assert!(is_hyperbolic(&jensen(d, n - 1, &t).unwrap().to_poly()).unwrap());
        }
    }
    assert!(turan_threshold(1, 10, &t).is_err());
    assert!(turan_threshold(3, 600, &t).is_err());
}

#[test]
fn hermite_limit() {
    let t = PartitionTable::new(10_010).unwrap();
    let d3 = hermite_limit_check(3, 10_000, &t, 40).unwrap();
    assert!(d3.deviation.upper() < 0.45, "{}", d3.deviation);
    let devs: Vec<f64> = [100u64, 1000, 10_000]
        .iter()
        .map(|&n| hermite_limit_check(2, n, &t, 40).unwrap().deviation.mid_f64())
        .collect();
    assert!(devs[0] > devs[1] && devs[1] > devs[2], "{devs:?}");
    assert!(devs[2] < 0.005);
    // The leading renormalised coefficient tends to the leading Hermite coefficient.
    let d4 = hermite_limit_check(4, 10_000, &t, 40).unwrap();
    assert!((d4.coeffs[4].mid_f64() - hermite(4).coeff(4).to_f64()).abs() < 0.1);
}

#[test]
fn scans_and_bounds() {
    let t = PartitionTable::new(3000).unwrap();
    let s = subadditivity_scan(120, &t).unwrap();
    assert_eq!(s.violations.len(), 2);
    for n in [2363u64, 2500, 2999] {
        assert_eq!(ratio_bounds(n, &t, 50).unwrap().holds, Verdict::Holds);
    }
    for m in 4..=7 {
        let b = solve_bm(m, 30).unwrap();
        assert!(b.rad_f64() < 1e-20);
    }
}

fn poly_strategy() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Hyperbolicity is unchanged by X -> aX + b and by nonzero scaling.
    #[test]
    fn affine_invariance(roots in poly_strategy(), quad in proptest::option::of((-4i64..=4, 1i64..=8)), a in 1i64..4, neg in proptest::bool::ANY, b in -5i64..=5, c in 1i64..5) {
        let mut p = IntPolynomial::from_i64(&[1]);
        for r in &roots {
            p = p.mul(&IntPolynomial::from_i64(&[-r, 1]));
        }
        if let Some((qb, qc)) = quad {
            p = p.mul(&IntPolynomial::from_i64(&[qc, qb, 1]));
        }
        let a = if neg { -a } else { a };
        // Compose with aX + b via Horner.
        let lin = IntPolynomial::from_i64(&[b, a]);
        let mut composed = IntPolynomial::zero();
        for coeff in p.coeffs().iter().rev() {
            let mut next = composed.mul(&lin).coeffs().to_vec();
            if next.is_empty() {
                next.push(Integer::new());
            }
            next[0] += coeff;
            composed = IntPolynomial::new(next);
        }
        let scaled = composed.mul(&IntPolynomial::from_i64(&[-c]));
        let h = is_hyperbolic(&p).unwrap();
        prop_assert_eq!(is_hyperbolic(&composed).unwrap(), h);
        prop_assert_eq!(is_hyperbolic(&scaled).unwrap(), h);
        prop_assert_eq!(p.count_real_roots().unwrap(), scaled.count_real_roots().unwrap());
    }
}
