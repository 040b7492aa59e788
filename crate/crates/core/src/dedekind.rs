//! Dedekind sums and modular inverses.

use rug::{Integer, Rational};

use crate::error::{Error, Result};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn reduce(h: i64, k: u64) -> u64 {
    (i128::from(h).rem_euclid(i128::from(k))) as u64
}

/// `s(h,k) = sum_{r=1}^{k-1} (r/k) (hr/k - floor(hr/k) - 1/2)`, evaluated term
/// by term in O(k). No coprimality is required.
pub fn dedekind_sum_direct(h: i64, k: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::ZeroModulus);
    }
    let hk = reduce(h, k);
    let k_i = Integer::from(k);
    // Each term is r (2m - k) / (2k^2) with m = hr mod k.
    let mut num = Integer::new();
    for r in 1..k {
        let m = ((u128::from(hk) * u128::from(r)) % u128::from(k)) as u64;
        num += Integer::from(r) * (Integer::from(m) * 2u32 - &k_i);
    }
    let den = Integer::from(k_i.square_ref()) * 2u32;
    Ok(Rational::from((num, den)))
}

/// `s(h,k)` for coprime `h`, `k` by the reciprocity law
/// `s(h,k) + s(k,h) = (h^2 + k^2 + 1)/(12hk) - 1/4`, in O(log k) steps.
pub fn dedekind_sum(h: i64, k: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut a = reduce(h, k);
    let mut b = k;
    if gcd(a, b) != 1 {
        return Err(Error::NotCoprime { a: h, k });
    }
    let quarter = Rational::from((1, 4));
    let mut acc = Rational::new();
    let mut positive = true;
    // Invariant: s(h,k) = acc + sign * s(a,b).
    while a != 0 {
        let (ai, bi) = (Integer::from(a), Integer::from(b));
        let num = Integer::from(ai.square_ref()) + Integer::from(bi.square_ref()) + 1u32;
        let den = ai * bi * 12u32;
        let step = Rational::from((num, den)) - &quarter;
        if positive {
            acc += step;
        } else {
            acc -= step;
        }
        positive = !positive;
        (a, b) = (b % a, a);
    }
    Ok(acc)
}

/// The residue `x` in `[0, k)` with `a x = target (mod k)`, where `target` is
/// `1` or `-1`.
pub fn inverse_mod(a: i64, k: u64, target: i64) -> Result<u64> {
    if k == 0 {
        return Err(Error::ZeroModulus);
    }
    if target != 1 && target != -1 {
        return Err(Error::InvalidArgument(format!("target must be 1 or -1, got {target}")));
    }
    let ar = reduce(a, k);
    if gcd(ar, k) != 1 {
        return Err(Error::NotCoprime { a, k });
    }
    if k == 1 {
        return Ok(0);
    }
    let (mut old_r, mut r) = (i128::from(ar), i128::from(k));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    let x = (old_s * i128::from(target)).rem_euclid(i128::from(k));
    Ok(x as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn direct_examples() {
        assert_eq!(dedekind_sum_direct(1, 1).unwrap(), 0);
        assert_eq!(dedekind_sum_direct(1, 3).unwrap(), q(1, 18));
        assert_eq!(dedekind_sum_direct(2, 3).unwrap(), q(-1, 18));
        assert_eq!(dedekind_sum_direct(1, 0), Err(Error::ZeroModulus));
    }

    #[test]
    fn fast_examples() {
        assert_eq!(dedekind_sum(1, 3).unwrap(), q(1, 18));
        assert_eq!(dedekind_sum(1, 2).unwrap(), 0);
        assert_eq!(dedekind_sum(5, 7).unwrap(), dedekind_sum_direct(5, 7).unwrap());
        assert_eq!(dedekind_sum(0, 1).unwrap(), 0);
        assert_eq!(dedekind_sum(-1, 3).unwrap(), q(-1, 18));
        assert!(matches!(dedekind_sum(2, 4), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn fast_handles_large_moduli() {
        let k = 1_000_000_007u64;
        let s = dedekind_sum(123_456_789, k).unwrap();
        assert!(Integer::from(k * 6).is_divisible(s.denom()));
    }

    #[test]
    fn inverses() {
        assert_eq!(inverse_mod(2, 5, -1).unwrap(), 2);
        assert_eq!(inverse_mod(1, 1, -1).unwrap(), 0);
        assert_eq!(inverse_mod(3, 7, 1).unwrap(), 5);
        assert_eq!(inverse_mod(-3, 7, 1).unwrap(), 2);
        assert!(inverse_mod(2, 4, 1).is_err());
        assert!(inverse_mod(1, 4, 2).is_err());
    }
}
