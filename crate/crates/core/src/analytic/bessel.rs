//! Modified Bessel functions of the first kind via the ascending series
//! `I_v(x) = sum_m (x/2)^(2m+v) / (m! (m+v)!)`.

use rug::Float;

use super::ball::{digits_to_bits, Ball, RAD_PREC};
use crate::error::{Error, Result};

/// Largest order supported. Only `I_0`, `I_1` and `I_2` are ever needed.
pub const MAX_ORDER: u32 = 2;

const MAX_TERMS: u64 = 50_000_000;

fn check(order: u32, x: &Ball) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "Bessel order {order} is not supported (0..={MAX_ORDER})"
        )));
    }
    if x.lower() < 0 {
        return Err(Error::Domain("Bessel argument must be non-negative".into()));
    }
    Ok(())
}

fn factorial(n: u32) -> u64 {
    (1..=u64::from(n)).product()
}

/// Leading term `(x/2)^v / v!` and the squared half-argument `(x/2)^2`.
fn first_term(order: u32, x: &Ball, prec: u32) -> Result<(Ball, Ball)> {
    let half = x.with_prec(prec.max(x.prec())).mul_pow2(-1);
    let y = half.sqr();
    let t0 = half.powu(order).div_u64(factorial(order))?;
    Ok((t0, y))
}

/// Bound for `sum_{m > last} t_m` given the last included term `t_last` (index
/// `last`), valid when the ratio of consecutive terms is below 1 from there on.
fn geometric_remainder(order: u32, last: u64, t_last: &Ball, y: &Ball) -> Option<Float> {
    let next = (last + 1) * (last + 1 + u64::from(order));
    let y_up = y.upper();
    let rho = Float::with_val_round(RAD_PREC, &y_up / next, rug::float::Round::Up).0;
    if rho >= 1 {
        return None;
    }
    let one_minus = Float::with_val_round(RAD_PREC, 1 - &rho, rug::float::Round::Down).0;
    let t_up = t_last.abs_upper();
    let num = Float::with_val_round(RAD_PREC, &t_up * &rho, rug::float::Round::Up).0;
    Some(Float::with_val_round(RAD_PREC, &num / &one_minus, rug::float::Round::Up).0)
}

/// `I_order(x)` with the series truncated adaptively once the remainder bound
/// falls below the working precision.
pub fn bessel_i(order: u32, x: &Ball, digits: u32) -> Result<Ball> {
    check(order, x)?;
    let prec = digits_to_bits(digits);
    if x.is_exact() && x.mid().is_zero() {
        return Ok(if order == 0 {
            Ball::one(prec)
        } else {
            Ball::zero(prec)
        });
    }
    let (mut term, y) = first_term(order, x, prec)?;
    let mut sum = term.clone();
    let mut m: u64 = 0;
    loop {
        if let Some(rem) = geometric_remainder(order, m, &term, &y) {
            let mut target = Float::with_val(RAD_PREC, &*sum.mid().as_abs());
            target >>= prec;
            if rem <= target {
                sum.add_error(&rem);
                return Ok(sum);
            }
        }
        let d = (m + 1) * (m + 1 + u64::from(order));
        term = term.mul(&y).div_u64(d)?;
        sum = sum.add(&term);
        m += 1;
        if m > MAX_TERMS {
            return Err(Error::NonConvergence(
                "Bessel series did not reach its target accuracy".into(),
            ));
        }
    }
}

/// `I_order(x)` from exactly `terms` series terms plus the geometric remainder.
/// Fails when the remainder bound is not yet valid at that many terms.
pub fn bessel_i_fixed_terms(order: u32, x: &Ball, terms: u64, digits: u32) -> Result<Ball> {
    check(order, x)?;
    if terms == 0 {
        return Err(Error::InvalidArgument("at least one series term is needed".into()));
    }
    let prec = digits_to_bits(digits);
    let (mut term, y) = first_term(order, x, prec)?;
    let mut sum = term.clone();
    for m in 0..terms - 1 {
        let d = (m + 1) * (m + 1 + u64::from(order));
        term = term.mul(&y).div_u64(d)?;
        sum = sum.add(&term);
    }
    let rem = geometric_remainder(order, terms - 1, &term, &y).ok_or_else(|| {
        Error::NonConvergence(format!("{terms} terms are too few for a remainder bound"))
    })?;
    sum.add_error(&rem);
    Ok(sum)
}
