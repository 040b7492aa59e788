//! The constants `B_m` governing where `a(n) a(m) > a(n+m)` is guaranteed:
//! `B_m` is the root in `(1, 10^4)` of
//!
//! ```text
//! F(B) = L(B) - log(m^{5/4} 2^{19/4} / 3^{3/4}) - log H(B)
//! L(B) = pi sqrt(3/2) (sqrt m + sqrt(Bm) - sqrt(m + Bm))
//! H(B) = (B/(B+1))^{5/4} (1 + 1/sqrt(m + Bm)) / ((1 - 8/(5 sqrt m)) (1 - 8/(5 sqrt(Bm))))
//! ```

use rug::{Float, Rational};

use crate::analytic::{digits_to_bits, Ball};
use crate::error::{Error, Result};

/// `F(B)` for the given `m`, over balls.
pub fn bm_objective(m: u32, b: &Ball) -> Result<Ball> {
    let prec = b.prec();
    let mb = Ball::from_u64(u64::from(m), prec);
    let bm = b.mul(&mb);
    let sqrt_m = mb.sqrt()?;
    let sqrt_bm = bm.sqrt()?;
    let sqrt_sum = mb.add(&bm).sqrt()?;
    let c = Ball::pi(prec).mul(&Ball::from_rational(&Rational::from((3, 2)), prec).sqrt()?);
    let l = c.mul(&sqrt_m.add(&sqrt_bm).sub(&sqrt_sum));

    let quarter = |num: i64| Rational::from((num, 4));
    let constant = mb
        .pow_rational(&quarter(5))?
        .mul(&Ball::from_u64(2, prec).pow_rational(&quarter(19))?)
        .div(&Ball::from_u64(3, prec).pow_rational(&quarter(3))?)?;

    let one = Ball::one(prec);
    let eight_fifths = Ball::from_rational(&Rational::from((8, 5)), prec);
    let ratio = b.div(&b.add(&one))?.pow_rational(&quarter(5))?;
    let num = one.add(&sqrt_sum.recip()?);
    let d1 = one.sub(&eight_fifths.div(&sqrt_m)?);
    let d2 = one.sub(&eight_fifths.div(&sqrt_bm)?);
    let h = ratio.mul(&num).div(&d1.mul(&d2))?;
    Ok(l.sub(&constant.ln()?).sub(&h.ln()?))
}

/// Enclosure of `B_m` for `m` in `3..=7`, by bisection on `(1, 10^4)`.
pub fn solve_bm(m: u32, digits: u32) -> Result<Ball> {
    if !(3..=7).contains(&m) {
        return Err(Error::InvalidArgument(format!("B_m is tabulated for 3 <= m <= 7, got {m}")));
    }
    let prec = digits_to_bits(digits) + 16;
    let mut lo = Float::with_val(prec, 1);
    let mut hi = Float::with_val(prec, 10_000);
    let f_lo = bm_objective(m, &Ball::exact(lo.clone()))?;
    let f_hi = bm_objective(m, &Ball::exact(hi.clone()))?;
    if !(f_lo.is_negative() && f_hi.is_positive()) {
        return Err(Error::Bracket {
            m,
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    for _ in 0..prec {
        let mid = Float::with_val(prec, &lo + &hi) / 2u32;
        if mid == lo || mid == hi {
            break;
        }
        let f = bm_objective(m, &Ball::exact(mid.clone()))?;
        if f.is_negative() {
            lo = mid;
        } else if f.is_positive() {
            hi = mid;
        } else {
            // The sign is not resolvable at this precision; the root is
            // somewhere in [lo, hi] regardless.
            break;
        }
    }
    Ball::from_interval(&lo, &hi)
}
