//! Two-sided bounds for `a(n+1) a(n-1) / a(n)^2` in terms of
//! `v = pi sqrt(3n/2)`.

use rug::{Integer, Rational};

use crate::analytic::{digits_to_bits, Ball, Verdict};
use crate::error::{Error, Result};
use crate::qseries::PartitionTable;

/// A term `c pi^a / v^b`.
#[derive(Clone, Copy, Debug)]
struct Term {
    num: i64,
    den: i64,
    pi_pow: i32,
    v_pow: i32,
}

const fn t(num: i64, den: i64, pi_pow: i32, v_pow: i32) -> Term {
    Term {
        num,
        den,
        pi_pow,
        v_pow,
    }
}

const UPSILON1: [Term; 7] = [
    t(1, 1, 0, 0),
    t(-9, 16, 4, 3),
    t(45, 16, 4, 4),
    t(-309, 1, 0, 5),
    t(-535, 1, 0, 6),
    t(-405, 2048, 8, 6),
    t(-729, 1, 12, 6),
];

const UPSILON2: [Term; 7] = [
    t(1, 1, 0, 0),
    t(-9, 16, 4, 3),
    t(45, 16, 4, 4),
    t(-308, 1, 0, 5),
    t(-286, 1, 0, 6),
    t(81, 256, 8, 6),
    t(729, 16, 12, 6),
];

/// Evaluate `sum c pi^a / v^b`. Since `v^2 = pi^2 w` with `w = 3n/2`, each
/// term is `c pi^{a-b} w^{-b/2}`: the powers of `pi` are merged exactly and
/// only converted to a ball once per term.
fn evaluate(terms: &[Term], n: u64, prec: u32) -> Result<Ball> {
    let w = Rational::from((3 * n, 2));
    let sqrt_w = Ball::from_rational(&w, prec).sqrt()?;
    let pi = Ball::pi(prec);
    let mut acc = Ball::zero(prec);
    for term in terms {
        let pi_part = pi.powi(term.pi_pow - term.v_pow)?;
        let w_part = sqrt_w.powi(-term.v_pow)?;
        let c = Ball::from_rational(&Rational::from((term.num, term.den)), prec);
        acc = acc.add(&c.mul(&pi_part).mul(&w_part));
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct RatioBoundReport {
    pub n: u64,
    pub v: Ball,
    pub upsilon1: Ball,
    /// `a(n+1) a(n-1) / a(n)^2`, exact.
    pub ratio_exact: Rational,
    pub ratio: Ball,
    pub upsilon2: Ball,
    pub holds: Verdict,
}

pub fn ratio_bounds(n: u64, table: &PartitionTable, digits: u32) -> Result<RatioBoundReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("the ratio needs n >= 1".into()));
    }
    table.require(n + 1)?;
    let prec = digits_to_bits(digits);
    let num = Integer::from(table.at(n + 1) * table.at(n - 1));
    let den = Integer::from(table.at(n).square_ref());
    let ratio_exact = Rational::from((num, den));
    let ratio = Ball::from_rational(&ratio_exact, prec);
    let upsilon1 = evaluate(&UPSILON1, n, prec)?;
    let upsilon2 = evaluate(&UPSILON2, n, prec)?;
    let v = Ball::pi(prec).mul(&Ball::from_rational(&Rational::from((3 * n, 2)), prec).sqrt()?);
    let holds = Verdict::le(&upsilon1, &ratio).and(Verdict::le(&ratio, &upsilon2));
    Ok(RatioBoundReport {
        n,
        v,
        upsilon1,
        ratio_exact,
        ratio,
        upsilon2,
        holds,
    })
}
