//! Explicit bound expressions for `I_2` and for tails of `I_2` series.

use rug::ops::Pow;
use rug::Rational;

use super::ball::{digits_to_bits, Ball, Verdict};
use super::bessel::bessel_i;
use crate::error::{Error, Result};

/// Coefficients of `E_{I2}` in powers of `1/s`.
const E_I2_COEFFS: [(i64, i64); 6] = [
    (1, 1),
    (-15, 8),
    (105, 128),
    (315, 1024),
    (10395, 32768),
    (135135, 262144),
];

/// `E_{I2}(s) = 1 - 15/(8s) + 105/(128s^2) + 315/(1024s^3) + 10395/(32768s^4)
/// + 135135/(262144s^5)`, exactly.
pub fn e_i2_rational(s: &Rational) -> Result<Rational> {
    if *s == 0 {
        return Err(Error::Domain("E_I2 is undefined at s = 0".into()));
    }
    let inv = Rational::from(s.recip_ref());
    let mut acc = Rational::new();
    for &(num, den) in E_I2_COEFFS.iter().rev() {
        acc *= &inv;
        acc += Rational::from((num, den));
    }
    Ok(acc)
}

/// `E_{I2}` over a ball.
pub fn e_i2_ball(s: &Ball) -> Result<Ball> {
    if s.contains_zero() {
        return Err(Error::Domain("E_I2 is undefined at s = 0".into()));
    }
    let inv = s.recip()?;
    let mut acc = Ball::zero(s.prec());
    for &(num, den) in E_I2_COEFFS.iter().rev() {
        acc = acc.mul(&inv);
        acc = acc.add(&Ball::from_rational(&Rational::from((num, den)), s.prec()));
    }
    Ok(acc)
}

/// `e^s / sqrt(2 pi s)`, the scale of every asymptotic `I_2` bound.
pub fn asymptotic_scale(s: &Ball) -> Result<Ball> {
    let two_pi_s = Ball::pi(s.prec()).mul(s).mul_pow2(1);
    s.exp().div(&two_pi_s.sqrt()?)
}

/// Which `I_2` sandwiches hold at a given `s`.
///
/// `lower_ok`/`upper_ok` are the `E_{I2} -/+ 31/s^6` bounds (present for
/// `s >= 25`), `lower30_ok` the `(1 + 2/s)^{-1}` bound (present for `s >= 30`),
/// and the `effective_*` fields the `1 - 2/s` and `1 - 15/(8s) + 2/s^2`
/// envelopes valid from `s >= 10`.
#[derive(Clone, Debug)]
pub struct BesselBoundReport {
    pub s: Rational,
    pub i2: Ball,
    pub lower_ok: Option<Verdict>,
    pub upper_ok: Option<Verdict>,
    pub lower30_ok: Option<Verdict>,
    pub effective_lower_ok: Verdict,
    pub effective_upper_ok: Verdict,
}

impl BesselBoundReport {
    /// Conjunction of every applicable verdict.
    pub fn overall(&self) -> Verdict {
        [self.lower_ok, self.upper_ok, self.lower30_ok]
            .into_iter()
            .flatten()
            .fold(
                self.effective_lower_ok.and(self.effective_upper_ok),
                Verdict::and,
            )
    }
}

pub fn check_bessel_bounds(s: &Rational, digits: u32) -> Result<BesselBoundReport> {
    if *s < 10 {
        return Err(Error::Domain(format!("the I_2 bounds need s >= 10, got {s}")));
    }
    let prec = digits_to_bits(digits);
    let sb = Ball::from_rational(s, prec);
    let i2 = bessel_i(2, &sb, digits)?;
    let scale = asymptotic_scale(&sb)?;
    let inv = Rational::from(s.recip_ref());
    let at = |q: Rational| scale.mul(&Ball::from_rational(&q, prec));

    let (lower_ok, upper_ok) = if *s >= 25 {
        let e = e_i2_rational(s)?;
        let slack = Rational::from(31) * inv.clone().pow(6u32);
        let lo = at(Rational::from(&e - &slack));
        let hi = at(Rational::from(&e + &slack));
        (Some(Verdict::le(&lo, &i2)), Some(Verdict::le(&i2, &hi)))
    } else {
        (None, None)
    };
    let lower30_ok = if *s >= 30 {
        let factor = (Rational::from(1) + Rational::from(&inv * 2u32)).recip();
        Some(Verdict::le(&at(factor), &i2))
    } else {
        None
    };
    let eff_lo = at(Rational::from(1) - Rational::from(&inv * 2u32));
    let inv2 = Rational::from(inv.square_ref());
    let eff_hi = at(Rational::from(1) - (&inv * Rational::from((15, 8)))
        + (inv2 * 2u32));
    Ok(BesselBoundReport {
        s: s.clone(),
        lower_ok,
        upper_ok,
        lower30_ok,
        effective_lower_ok: Verdict::le(&eff_lo, &i2),
        effective_upper_ok: Verdict::le(&i2, &eff_hi),
        i2,
    })
}

/// Majorant `(2N^2/s) I_1(s/N)` for `sum_{j > N} I_2(s/j)`.
pub fn tail_majorant(s: &Ball, n: u64, digits: u32) -> Result<Ball> {
    if n == 0 {
        return Err(Error::InvalidArgument("tail majorant needs N >= 1".into()));
    }
    if !s.is_positive() {
        return Err(Error::Domain("tail majorant needs s > 0".into()));
    }
    let s = s.with_prec(s.prec().max(digits_to_bits(digits)));
    let i1 = bessel_i(1, &s.div_u64(n)?, digits)?;
    let n2 = Ball::from_u64(n, s.prec()).sqr().mul_pow2(1);
    Ok(n2.div(&s)?.mul(&i1))
}
