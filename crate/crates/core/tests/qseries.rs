use std::collections::HashMap;

use proptest::prelude::*;
use rug::Integer;

use overcubic::qseries::{expand_eta_quotient, overcubic_table, EtaQuotientSpec, PartitionTable, PowerSeries};
use overcubic::Error;

/// A part kind: size and color. Odd sizes have one color, even sizes two.
fn kinds(n: u64) -> Vec<(u64, u8)> {
    (1..=n)
        .flat_map(|s| if s % 2 == 0 { vec![(s, 0), (s, 1)] } else { vec![(s, 0)] })
        .collect()
}

/// One part kind used `mult` times, with its first occurrence overlined or not.
type Block = (u64, u8, u64, bool);

/// Every cubic overpartition of `n`, listed explicitly.
fn enumerate(n: u64) -> Vec<Vec<Block>> {
    fn go(kinds: &[(u64, u8)], rest: u64, current: &mut Vec<Block>, out: &mut Vec<Vec<Block>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        let Some((&(s, c), tail)) = kinds.split_first() else {
            return;
        };
        go(tail, rest, current, out);
        let mut mult = 1;
        while mult * s <= rest {
            for over in [false, true] {
                current.push((s, c, mult, over));
                go(tail, rest - mult * s, current, out);
                current.pop();
            }
            mult += 1;
        }
    }
    let mut out = Vec::new();
    go(&kinds(n), n, &mut Vec::new(), &mut out);
    out
}

/// Memoized count of the same objects: each used kind contributes a factor 2.
fn count(n: u64) -> Integer {
    fn go(kinds: &[(u64, u8)], i: usize, rest: u64, memo: &mut HashMap<(usize, u64), Integer>) -> Integer {
        if rest == 0 {
            return Integer::from(1);
        }
        if i == kinds.len() {
            return Integer::new();
        }
        if let Some(v) = memo.get(&(i, rest)) {
            return v.clone();
        }
        let s = kinds[i].0;
        let mut total = go(kinds, i + 1, rest, memo);
        let mut used = s;
        while used <= rest {
            total += go(kinds, i + 1, rest - used, memo) * 2u32;
            used += s;
        }
        memo.insert((i, rest), total.clone());
        total
    }
    go(&kinds(n), 0, n, &mut HashMap::new())
}

/// `prod_{m >= 1} (1 - q^{a m})` by multiplying one binomial at a time.
fn euler_by_binomials(a: u64, order: u64) -> PowerSeries {
    let mut c = vec![Integer::new(); order as usize + 1];
    c[0] = Integer::from(1);
    let mut m = a;
    while m <= order {
        for i in (m as usize..=order as usize).rev() {
            let prev = c[i - m as usize].clone();
            c[i] -= prev;
        }
        m += a;
    }
    PowerSeries::from_coeffs(c).unwrap()
}

#[test]
fn listing_and_counting_agree_with_the_expansion() {
    let table = overcubic_table(60).unwrap();
    for n in 0..=10u64 {
        let listed = enumerate(n);
        for p in &listed {
            assert_eq!(p.iter().map(|(s, _, m, _)| s * m).sum::<u64>(), n);
        }
        assert_eq!(Integer::from(listed.len()), *table.coeff(n).unwrap(), "n = {n}");
    }
    for n in 0..=60u64 {
        assert_eq!(count(n), *table.coeff(n).unwrap(), "n = {n}");
    }
}

#[test]
fn cubic_overpartitions_of_two() {
    // 2 in two colors, 1 + 1; each with or without an overline.
    assert_eq!(enumerate(2).len(), 6);
}

#[test]
fn sparse_route_matches_direct_product_and_quadratic_inverse() {
    let order = 500;
    let e1 = euler_by_binomials(1, order);
    let e2 = euler_by_binomials(2, order);
    let e4 = euler_by_binomials(4, order);
    let expected = e4.mul(&e1.mul(&e1).mul(&e2).inverse().unwrap());
    assert_eq!(overcubic_table(order).unwrap(), expected);
}

#[test]
fn partition_numbers_from_a_single_factor() {
    // p(n) by adding parts of size k = 1, 2, ... one at a time.
    let n = 80usize;
    let mut p = vec![Integer::new(); n + 1];
    p[0] = Integer::from(1);
    for k in 1..=n {
        for m in k..=n {
            let prev = p[m - k].clone();
            p[m] += prev;
        }
    }
    let spec = EtaQuotientSpec::new([(1, -1)]).unwrap();
    let s = expand_eta_quotient(&spec, n as u64).unwrap();
    for m in 0..=n {
        assert_eq!(*s.coeff(m as u64).unwrap(), p[m], "p({m})");
    }
}

#[test]
fn values_are_positive_and_increasing() {
    let t = PartitionTable::new(2000).unwrap();
    let v = t.values();
    assert!(v.iter().all(|x| *x > 0));
    assert!(v.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn table_coverage_errors() {
    let t = PartitionTable::new(10).unwrap();
    assert_eq!(t.get(11), Err(Error::Coverage { needed: 11, available: 10 }));
    assert!(PartitionTable::from_values(Vec::new()).is_err());
    assert_eq!(PartitionTable::from_values(t.values().to_vec()).unwrap(), t);
}

fn spec_strategy() -> impl Strategy<Value = Vec<(u64, i64)>> {
    prop::collection::vec((1u64..6, -3i64..=3), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_multiply_then_divide_is_identity(a in 1u64..8, order in 1u64..150) {
        let base = overcubic_table(order).unwrap();
        let mut s = base.clone();
        s.mul_euler(a);
        s.div_euler(a);
        prop_assert_eq!(s, base);
    }

    #[test]
    fn quotient_expands_to_product_of_single_factors(factors in spec_strategy(), order in 1u64..120) {
        let spec = EtaQuotientSpec::new(factors.clone()).unwrap();
        let whole = expand_eta_quotient(&spec, order).unwrap();
        let mut product = PowerSeries::one(order).unwrap();
        for (a, e) in factors {
            let single = expand_eta_quotient(&EtaQuotientSpec::new([(a, e)]).unwrap(), order).unwrap();
            product = product.mul(&single);
        }
        prop_assert_eq!(whole, product);
    }

    #[test]
    fn sparse_division_matches_quadratic_inverse(a in 1u64..6, order in 1u64..200) {
        let mut by_sparse = PowerSeries::one(order).unwrap();
        by_sparse.div_euler(a);
        let by_inverse = euler_by_binomials(a, order).inverse().unwrap();
        prop_assert_eq!(by_sparse, by_inverse);
    }
}
