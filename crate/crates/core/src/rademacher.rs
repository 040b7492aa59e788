//! The convergent Bessel series for `a(n)`:
//!
//! ```text
//! a(n) = P1 sum_{k odd} (A1_k(n)/k) I_2(s1/k) + P2 sum_{k = 2 mod 4} (A2_k(n)/k) I_2(s2/k)
//! P1 = 3 pi / (16 n sqrt 2),  s1 = pi sqrt(3n/2)
//! P2 =   pi / ( 4 n sqrt 2),  s2 = pi sqrt(2n)
//! ```
//!
//! Truncated sums are evaluated in ball arithmetic and the omitted terms are
//! bounded rigorously, so the integer can be recovered with certainty.

use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use crate::analytic::{bessel_i, digits_to_bits, tail_majorant, Ball, Verdict};
use crate::error::{Error, Result};
use crate::kloosterman::{KloostermanKind, KloostermanPhases};
use crate::qseries::PartitionTable;

/// Precision used for the tail estimate; it only has to be an upper bound.
const TAIL_DIGITS: u32 = 20;

/// Explicit terms summed before switching to an analytic tail bound.
const TAIL_EXPLICIT_CAP: u64 = 2000;

/// Starting number of terms per series for [`exact_value`].
pub const DEFAULT_TERMS: u64 = 8;

const MAX_TERMS: u64 = 1 << 12;

/// The two series, their prefactors and Bessel arguments.
struct Series {
    kind: KloostermanKind,
    prefactor: Ball,
    arg: Ball,
    /// `k = step * j + offset` for `j = 0, 1, 2, ...`
    step: u64,
    offset: u64,
}

fn series(n: u64, prec: u32) -> [Series; 2] {
    let pi = Ball::pi(prec);
    let nb = Ball::from_u64(n, prec);
    let sqrt2 = Ball::from_u64(2, prec).sqrt().expect("positive");
    let n_sqrt2 = nb.mul(&sqrt2);
    let p1 = pi.mul_u64(3).div(&n_sqrt2.mul_u64(16)).expect("n >= 1");
    let p2 = pi.div(&n_sqrt2.mul_u64(4)).expect("n >= 1");
    let s1 = pi.mul(&nb.mul_u64(3).mul_pow2(-1).sqrt().expect("positive"));
    let s2 = pi.mul(&nb.mul_pow2(1).sqrt().expect("positive"));
    [
        Series {
            kind: KloostermanKind::A1,
            prefactor: p1,
            arg: s1,
            step: 2,
            offset: 1,
        },
        Series {
            kind: KloostermanKind::A2,
            prefactor: p2,
            arg: s2,
            step: 4,
            offset: 2,
        },
    ]
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("the series formula needs n >= 1".into()));
    }
    Ok(())
}

/// Decimal digits needed to carry the integer part of `a(n)` plus 30 more.
pub fn default_digits(n: u64) -> u32 {
    let n = n.max(1) as f64;
    let s1 = std::f64::consts::PI * (1.5 * n).sqrt();
    let log10_main = (s1 - 1.25 * n.ln() + 0.75 * 3f64.ln() - 4.75 * 2f64.ln()) / 10f64.ln();
    30 + log10_main.max(0.0).ceil() as u32 + 1
}

/// Term-by-term view of a truncated evaluation.
#[derive(Clone, Debug)]
pub struct RademacherBreakdown {
    pub n: u64,
    pub terms_odd: Vec<(u64, Ball)>,
    pub terms_even: Vec<(u64, Ball)>,
    pub partial_sum: Ball,
    /// Upper bound for the absolute value of everything omitted.
    pub tail_bound: Ball,
    /// Present iff `tail_bound + partial_sum.radius < 1/4`.
    pub recovered: Option<Integer>,
}

impl RademacherBreakdown {
    /// All contributions, odd series first, each in increasing `k`.
    pub fn terms(&self) -> impl Iterator<Item = &(u64, Ball)> {
        self.terms_odd.iter().chain(self.terms_even.iter())
    }

    /// Upper bound for `|a(n) - partial_sum.mid|`.
    pub fn total_error(&self) -> Float {
        let t = self.tail_bound.upper();
        Float::with_val_round(64, &t + self.partial_sum.rad(), rug::float::Round::Up).0
    }
}

/// `P1 I_2(s1)`, the `k = 1` term.
pub fn main_term(n: u64, digits: u32) -> Result<Ball> {
    check_n(n)?;
    let [odd, _] = series(n, digits_to_bits(digits));
    Ok(odd.prefactor.mul(&bessel_i(2, &odd.arg, digits)?))
}

/// `3^{3/4} / (2^{19/4} n^{5/4}) e^{pi sqrt(3n/2)}`.
pub fn asymptotic_main(n: u64, digits: u32) -> Result<Ball> {
    check_n(n)?;
    let prec = digits_to_bits(digits);
    let [odd, _] = series(n, prec);
    let three = Ball::from_u64(3, prec).pow_rational(&Rational::from((3, 4)))?;
    let two = Ball::from_u64(2, prec).pow_rational(&Rational::from((19, 4)))?;
    let nn = Ball::from_u64(n, prec).pow_rational(&Rational::from((5, 4)))?;
    Ok(three.div(&two.mul(&nn))?.mul(&odd.arg.exp()))
}

/// `2^{-7/4} (2 5^{5/2} / (pi n^{7/4}) + n^{-5/4}) e^{pi sqrt(n/2)}`.
pub fn error_envelope(n: u64, digits: u32) -> Result<Ball> {
    check_n(n)?;
    let prec = digits_to_bits(digits);
    let pi = Ball::pi(prec);
    let nb = Ball::from_u64(n, prec);
    let five = Ball::from_u64(5, prec).pow_rational(&Rational::from((5, 2)))?;
    let n74 = nb.pow_rational(&Rational::from((7, 4)))?;
    let n54 = nb.pow_rational(&Rational::from((-5, 4)))?;
    let inner = five.mul_pow2(1).div(&pi.mul(&n74))?.add(&n54);
    let scale = Ball::from_u64(2, prec).pow_rational(&Rational::from((-7, 4)))?;
    let growth = pi.mul(&nb.mul_pow2(-1).sqrt()?).exp();
    Ok(scale.mul(&inner).mul(&growth))
}

fn series_terms(
    s: &Series,
    n: u64,
    terms: u64,
    digits: u32,
) -> Result<Vec<(u64, Ball)>> {
    (0..terms)
        .into_par_iter()
        .map(|j| {
            let k = s.step * j + s.offset;
            let a = KloostermanPhases::new(s.kind, k)?.evaluate(n, digits);
            let bessel = bessel_i(2, &s.arg.div_u64(k)?, digits)?;
            let c = s.prefactor.mul(&a.value.re).div_u64(k)?.mul(&bessel);
            Ok((k, c))
        })
        .collect()
}

/// Upper bound for `sum_{j >= j0} I_2(arg / (step j + offset))`.
fn bessel_tail(s: &Series, j0: u64) -> Result<Ball> {
    let prec = digits_to_bits(TAIL_DIGITS);
    let arg = s.arg.with_prec(prec);
    // Past the explicit block we use arg/(step j + offset) <= (arg/step)/j.
    let scaled = arg.div_u64(s.step)?;
    let ceil = scaled.upper().ceil().to_integer().and_then(|i| i.to_u64()).unwrap_or(u64::MAX);
    let last = ceil
        .max(j0.saturating_sub(1))
        .max(1)
        .min(j0 + TAIL_EXPLICIT_CAP);
    let mut total = Ball::zero(prec);
    for j in j0..=last {
        total = total.add(&bessel_i(2, &arg.div_u64(s.step * j + s.offset)?, TAIL_DIGITS)?);
    }
    // Two majorants for sum_{j > last} I_2(scaled/j): the tail lemma, and
    // I_2(x) <= (x^2/8) I_0(x) with sum_{j > J} 1/j^2 <= 1/J.
    let lemma = tail_majorant(&scaled, last, TAIL_DIGITS)?;
    let i0 = bessel_i(0, &scaled.div_u64(last + 1)?, TAIL_DIGITS)?;
    let small = scaled.sqr().mul(&i0).div_u64(8 * last)?;
    let rest = if lemma.upper() <= small.upper() { lemma } else { small };
    Ok(total.add(&rest))
}

/// Outcome of `M(n)(1 - n^-e) <= a(n) <= M(n)(1 + n^-e)` for the main term `M`.
#[derive(Clone, Debug)]
pub struct SandwichReport {
    pub n: u64,
    pub exponent: Rational,
    pub main: Ball,
    /// `|a(n)/M(n) - 1|`
    pub relative_gap: Ball,
    /// `n^-e`
    pub width: Ball,
    pub holds: Verdict,
}

pub fn main_term_sandwich(
    n: u64,
    exponent: &Rational,
    table: &PartitionTable,
    digits: u32,
) -> Result<SandwichReport> {
    check_n(n)?;
    let value = table.get(n)?;
    let digits = digits.max(default_digits(n));
    let prec = digits_to_bits(digits);
    let main = main_term(n, digits)?;
    let width = Ball::from_u64(n, prec).pow_rational(&Rational::from(-exponent))?;
    let one = Ball::one(prec);
    let lower = main.mul(&one.sub(&width));
    let upper = main.mul(&one.add(&width));
    let exact = Ball::from_integer(value, prec);
    let holds = Verdict::le(&lower, &exact).and(Verdict::le(&exact, &upper));
    let ratio = exact.div(&main)?.sub(&one);
    let relative_gap = if ratio.is_negative() { ratio.neg() } else { ratio };
    Ok(SandwichReport {
        n,
        exponent: exponent.clone(),
        main,
        relative_gap,
        width,
        holds,
    })
}

/// Evaluate the first `terms_per_series` terms of both series.
pub fn evaluate(n: u64, terms_per_series: u64, digits: u32) -> Result<RademacherBreakdown> {
    check_n(n)?;
    if terms_per_series == 0 {
        return Err(Error::InvalidArgument("at least one term per series is needed".into()));
    }
    let prec = digits_to_bits(digits);
    let [odd, even] = series(n, prec);
    let terms_odd = series_terms(&odd, n, terms_per_series, digits)?;
    let terms_even = series_terms(&even, n, terms_per_series, digits)?;

    let mut partial_sum = Ball::zero(prec);
    for (_, c) in terms_odd.iter().chain(terms_even.iter()) {
        partial_sum = partial_sum.add(c);
    }

    let mut tail_bound = Ball::zero(digits_to_bits(TAIL_DIGITS));
    for s in [&odd, &even] {
        let t = bessel_tail(s, terms_per_series)?;
        tail_bound = tail_bound.add(&s.prefactor.with_prec(t.prec()).mul(&t));
    }

    let mut b = RademacherBreakdown {
        n,
        terms_odd,
        terms_even,
        partial_sum,
        tail_bound,
        recovered: None,
    };
    if b.total_error() < 0.25 {
        b.recovered = b.partial_sum.nearest_integer();
    }
    Ok(b)
}

/// `a(n)` from the series alone, raising terms and precision until the
/// rounding criterion certifies the integer.
pub fn exact_value(n: u64) -> Result<Integer> {
    check_n(n)?;
    let mut terms = DEFAULT_TERMS;
    let mut digits = default_digits(n);
    while terms <= MAX_TERMS {
        let b = evaluate(n, terms, digits)?;
        if let Some(v) = b.recovered {
            return Ok(v);
        }
        if b.partial_sum.rad_f64() > 1e-3 {
            digits *= 2;
        }
        terms *= 2;
    }
    Err(Error::NonConvergence(format!(
        "series for n = {n} not certified with {MAX_TERMS} terms per series"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_recovered() {
        for (n, v) in [(1u64, 2u64), (2, 6), (3, 12), (9, 470), (12, 2020)] {
            assert_eq!(exact_value(n).unwrap(), v, "n = {n}");
        }
        assert!(exact_value(0).is_err());
    }

    #[test]
    fn tail_is_small_with_five_terms() {
        let b = evaluate(100, 5, default_digits(100)).unwrap();
        assert!(b.tail_bound.upper() < 0.25);
        assert_eq!(b.recovered.unwrap().to_string(), "13080871050922");
    }

    #[test]
    fn sandwiches() {
        let t = PartitionTable::new(1000).unwrap();
        let sixth = Rational::from(6);
        assert_eq!(main_term_sandwich(1000, &sixth, &t, 40).unwrap().holds, Verdict::Holds);
        // The n^-6 window is narrower than the k = 2 term at n = 393.
        let r = main_term_sandwich(393, &sixth, &t, 40).unwrap();
        assert_eq!(r.holds, Verdict::Fails);
        assert!(r.relative_gap.mid_f64() > 30.0 * r.width.mid_f64());
        let half = Rational::from((1, 2));
        assert_eq!(main_term_sandwich(11, &half, &t, 40).unwrap().holds, Verdict::Holds);
    }

    #[test]
    fn default_digits_grow() {
        assert!(default_digits(100) > 40);
        assert!(default_digits(10_000) > default_digits(100));
    }
}
