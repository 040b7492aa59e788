//! Jensen polynomials of the cubic overpartition sequence, hyperbolicity
//! thresholds and the Hermite limit.

use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use super::poly::{is_hyperbolic, IntPolynomial};
use crate::analytic::{digits_to_bits, Ball};
use crate::error::{Error, Result};
use crate::qseries::PartitionTable;

/// `J^{d,n}(X) = sum_{i=0}^{d} C(d,i) a(n+i) X^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JensenPolynomial {
    pub degree: u32,
    pub shift: u64,
    pub coeffs: Vec<Integer>,
}

impl JensenPolynomial {
    pub fn to_poly(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.clone())
    }
}

pub fn jensen(d: u32, n: u64, table: &PartitionTable) -> Result<JensenPolynomial> {
    if d == 0 {
        return Err(Error::InvalidArgument("Jensen polynomials need degree >= 1".into()));
    }
    table.require(n + u64::from(d))?;
    let coeffs = (0..=d)
        .map(|i| Integer::from(Integer::binomial_u(d, i)) * table.at(n + u64::from(i)))
        .collect();
    Ok(JensenPolynomial {
        degree: d,
        shift: n,
        coeffs,
    })
}

/// Outcome of scanning `J^{d,n-1}` for `n = 1..=verified_to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuranThreshold {
    pub d: u32,
    /// Every `n` in the scan where `J^{d,n-1}` is not hyperbolic.
    pub failures: Vec<u64>,
    pub last_failure: Option<u64>,
    /// `last_failure + 1`: the smallest `N` that works up to the horizon.
    pub candidate_n: u64,
    pub verified_to: u64,
}

pub fn turan_threshold(d: u32, horizon: u64, table: &PartitionTable) -> Result<TuranThreshold> {
    if d < 2 {
        return Err(Error::InvalidArgument("threshold scans need d >= 2".into()));
    }
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be positive".into()));
    }
    table.require(horizon - 1 + u64::from(d))?;
    let verdicts: Vec<(u64, bool)> = (1..=horizon)
        .into_par_iter()
        .map(|n| {
            let j = jensen(d, n - 1, table)?;
            Ok((n, is_hyperbolic(&j.to_poly())?))
        })
        .collect::<Result<_>>()?;
    let failures: Vec<u64> = verdicts.into_iter().filter(|(_, h)| !h).map(|(n, _)| n).collect();
    let last_failure = failures.last().copied();
    Ok(TuranThreshold {
        d,
        candidate_n: last_failure.map_or(1, |f| f + 1),
        last_failure,
        failures,
        verified_to: horizon,
    })
}

/// Hermite polynomials normalised by the generating function `e^{-t^2 + Xt}`:
/// `H_0 = 1`, `H_1 = X`, `H_{d+1} = X H_d - 2d H_{d-1}`.
pub fn hermite(d: u32) -> IntPolynomial {
    let mut prev = IntPolynomial::from_i64(&[1]);
    if d == 0 {
        return prev;
    }
    let mut cur = IntPolynomial::from_i64(&[0, 1]);
    let x = IntPolynomial::from_i64(&[0, 1]);
    for k in 1..d {
        let scaled = prev.mul(&IntPolynomial::from_i64(&[-2 * i64::from(k)]));
        let next = x.mul(&cur);
        let mut c: Vec<Integer> = next.coeffs().to_vec();
        for (i, s) in scaled.coeffs().iter().enumerate() {
            c[i] += s;
        }
        prev = cur;
        cur = IntPolynomial::new(c);
    }
    cur
}

/// The renormalised Jensen polynomial and its distance from `H_d`.
#[derive(Clone, Debug)]
pub struct HermiteCheck {
    pub d: u32,
    pub n: u64,
    /// Coefficients of `delta^{-d} / a(n) * J^{d,n}((delta X - 1) / e^{A})`.
    pub coeffs: Vec<Ball>,
    /// `max_j |coeffs[j] - H_d[j]|`.
    pub deviation: Ball,
}

/// `A(n) = (pi/2) sqrt(3/(2n)) - 5/(4n)` and
/// `delta(n) = sqrt((pi/8) sqrt(3/(2n^3)) - 5/(8n^2))`.
pub fn hermite_shift_scale(n: u64, prec: u32) -> Result<(Ball, Ball)> {
    if n == 0 {
        return Err(Error::Domain("A(n) and delta(n) need n >= 1".into()));
    }
    let pi = Ball::pi(prec);
    let nb = Ball::from_u64(n, prec);
    let three_halves = Ball::from_rational(&Rational::from((3, 2)), prec);
    let a = pi
        .mul_pow2(-1)
        .mul(&three_halves.div(&nb)?.sqrt()?)
        .sub(&Ball::from_u64(5, prec).div(&nb.mul_u64(4))?);
    let n2 = nb.sqr();
    let radicand = pi
        .mul_pow2(-3)
        .mul(&three_halves.div(&n2.mul(&nb))?.sqrt()?)
        .sub(&Ball::from_u64(5, prec).div(&n2.mul_u64(8))?);
    if !radicand.is_positive() {
        return Err(Error::Domain(format!("delta(n)^2 is not positive at n = {n}")));
    }
    Ok((a, radicand.sqrt()?))
}

pub fn hermite_limit_check(
    d: u32,
    n: u64,
    table: &PartitionTable,
    digits: u32,
) -> Result<HermiteCheck> {
    let j = jensen(d, n, table)?;
    // The renormalisation cancels about d * log10(1/delta) digits.
    let prec = digits_to_bits(digits + 8 * d);
    let (a, delta) = hermite_shift_scale(n, prec)?;
    let c = a.neg().exp();
    let mut out = vec![Ball::zero(prec); d as usize + 1];
    let mut c_pow = Ball::one(prec);
    for (i, w) in j.coeffs.iter().enumerate() {
        let wi = Ball::from_integer(w, prec).mul(&c_pow);
        // (delta X - 1)^i = sum_j C(i,j) delta^j (-1)^{i-j} X^j
        let mut delta_pow = Ball::one(prec);
        for (jj, slot) in out.iter_mut().enumerate().take(i + 1) {
            let binom = Integer::from(Integer::binomial_u(i as u32, jj as u32));
            let mut term = wi.mul(&delta_pow).mul(&Ball::from_integer(&binom, prec));
            if (i - jj) % 2 == 1 {
                term = term.neg();
            }
            *slot = slot.add(&term);
            delta_pow = delta_pow.mul(&delta);
        }
        c_pow = c_pow.mul(&c);
    }
    let norm = delta.powu(d).mul(&Ball::from_integer(table.get(n)?, prec));
    let coeffs: Vec<Ball> = out.iter().map(|x| x.div(&norm)).collect::<Result<_>>()?;
    let h = hermite(d);
    let mut lo = Float::new(prec);
    let mut hi = Float::new(prec);
    for (i, cb) in coeffs.iter().enumerate() {
        let diff = cb.sub(&Ball::from_integer(&h.coeff(i), prec));
        let up = diff.abs_upper();
        let low = if diff.contains_zero() {
            Float::new(prec)
        } else {
            let l = diff.lower();
            let u = diff.upper();
            if l > 0 {
                l
            } else {
                -u
            }
        };
        if up > hi {
            hi = Float::with_val(prec, &up);
        }
        if low > lo {
            lo = low;
        }
    }
    Ok(HermiteCheck {
        d,
        n,
        coeffs,
        deviation: Ball::from_interval(&lo, &hi)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jensen_examples() {
        let t = PartitionTable::new(10).unwrap();
        assert_eq!(jensen(1, 4, &t).unwrap().coeffs, [26, 48]);
        assert_eq!(jensen(2, 2, &t).unwrap().coeffs, [6, 24, 26]);
        assert_eq!(jensen(3, 0, &t).unwrap().coeffs, [1, 6, 18, 12]);
        assert!(jensen(3, 8, &t).is_err());
    }

    #[test]
    fn hermite_fixtures() {
        assert_eq!(hermite(2), IntPolynomial::from_i64(&[-2, 0, 1]));
        assert_eq!(hermite(3), IntPolynomial::from_i64(&[0, -6, 0, 1]));
        assert_eq!(hermite(4), IntPolynomial::from_i64(&[12, 0, -12, 0, 1]));
    }

    #[test]
    fn delta_needs_n_at_least_two() {
        assert!(hermite_shift_scale(1, 128).is_err());
        assert!(hermite_shift_scale(2, 128).is_ok());
    }
}
