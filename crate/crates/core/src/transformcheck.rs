//! Numerical verification of the modular transformation formulas for
//! `f(q) = 1/(q;q)_inf`, `f(q^2)`, `f(q^4)` and the quotient
//! `A(q) = f(q)^2 f(q^2) / f(q^4)` generating the cubic overpartitions.
//!
//! Throughout, `tau = h/k + i z/k^2` and `q = e^{2 pi i tau}`. On the right-hand
//! sides `f_a(h', w)` stands for `f(exp(2 pi i a (h'/k + i w)))`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rug::float::Round;
use rug::ops::AssignRound;
use rug::{Float, Rational};

use crate::analytic::{digits_to_bits, Ball, ComplexBall, RAD_PREC};
use crate::dedekind::{dedekind_sum, inverse_mod};
use crate::error::{Error, Result};

/// Largest `|q|` accepted by [`eval_f`].
pub const MAX_ABS_Q: f64 = 0.999;

/// `f(q) = 1 / prod_{m >= 1} (1 - q^m)` with a rigorous truncation bound.
pub fn eval_f(q: &ComplexBall, digits: u32) -> Result<ComplexBall> {
    let prec = digits_to_bits(digits).max(q.prec());
    let r = q.abs_upper();
    if r > MAX_ABS_Q {
        return Err(Error::Domain(format!(
            "|q| may reach {}, above the supported {MAX_ABS_Q}",
            r.to_f64()
        )));
    }
    if r == 0 {
        return Ok(ComplexBall::one(prec));
    }
    // Choose M with r^{M+1} / (1 - r)^2 below 2^-prec.
    let rf = r.to_f64();
    let need = f64::from(prec) * std::f64::consts::LN_2 + 2.0 * (1.0 / (1.0 - rf)).ln();
    let m = (need / (1.0 / rf).ln()).ceil().max(1.0) as u32;

    let q = Disk::from_ball(q, prec);
    let mut power = q.clone();
    let mut product = power.one_minus();
    for _ in 1..m {
        power = power.mul(&q);
        product = product.mul(&power.one_minus());
    }
    let mut value = product.to_ball()?.recip()?;

    // |log f - log f_M| <= sum_{j > M} r^j / (1 - r^j) <= r^{M+1} / ((1 - r)(1 - r^{M+1})) = t,
    // hence |f - f_M| <= |f_M| (e^t - 1) <= |f_M| t / (1 - t).
    let rb = Ball::exact(Float::with_val(64, &r));
    let one_r = Ball::one(64);
    let rm = rb.powu(m + 1);
    let t = rm.div(&one_r.sub(&rb).mul(&one_r.sub(&rm)))?;
    let t = Ball::exact(t.upper());
    if !(*t.mid() < 0.5) {
        return Err(Error::NonConvergence("product truncation bound too weak".into()));
    }
    let growth = t.div(&one_r.sub(&t))?;
    let err = Ball::exact(value.abs_upper()).mul(&growth).upper();
    value.re.add_error(&err);
    value.im.add_error(&err);
    Ok(value)
}

/// A complex disk `mid ± rad` with one radius for both coordinates. Long
/// products stay tight here; rectangular enclosures widen by up to sqrt 2
/// per multiplication.
#[derive(Clone, Debug)]
struct Disk {
    re: Float,
    im: Float,
    rad: Float,
}

fn rad_up<T>(val: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(RAD_PREC, val, Round::Up).0
}

impl Disk {
    fn from_ball(z: &ComplexBall, prec: u32) -> Disk {
        Disk {
            re: Float::with_val(prec, z.re.mid()),
            im: Float::with_val(prec, z.im.mid()),
            rad: rad_up(z.re.rad() + z.im.rad()),
        }
    }

    fn prec(&self) -> u32 {
        self.re.prec()
    }

    fn abs_upper(&self) -> Float {
        let re = rad_up(&*self.re.as_abs());
        let im = rad_up(&*self.im.as_abs());
        rad_up(re.hypot_ref(&im))
    }

    /// Each coordinate of the rounded product is off by at most
    /// `3u |a| |b|` with `u = 2^-prec`; `2^{3-prec}` covers both.
    fn mul(&self, other: &Disk) -> Disk {
        let prec = self.prec();
        let (a, b, c, d) = (&self.re, &self.im, &other.re, &other.im);
        let re = Float::with_val(prec, Float::with_val(prec, a * c) - Float::with_val(prec, b * d));
        let im = Float::with_val(prec, Float::with_val(prec, a * d) + Float::with_val(prec, b * c));
        let (x, y) = (self.abs_upper(), other.abs_upper());
        let mut round = rad_up(&x * &y);
        round >>= prec - 3;
        let cross = rad_up(&x * &other.rad);
        let cross = rad_up(&cross + rad_up(&y * &self.rad));
        let cross = rad_up(&cross + rad_up(&self.rad * &other.rad));
        Disk {
            re,
            im,
            rad: rad_up(&cross + &round),
        }
    }

    /// `1 - self`; only the real coordinate is rounded.
    fn one_minus(&self) -> Disk {
        let prec = self.prec();
        let re = -Float::with_val(prec, &self.re - 1u32);
        let mut round = rad_up(&*re.as_abs());
        round >>= prec - 1;
        Disk {
            re,
            im: -self.im.clone(),
            rad: rad_up(&self.rad + &round),
        }
    }

    fn to_ball(&self) -> Result<ComplexBall> {
        Ok(ComplexBall::new(
            Ball::with_radius(self.re.clone(), &self.rad)?,
            Ball::with_radius(self.im.clone(), &self.rad)?,
        ))
    }
}

/// The nine identities that are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformTarget {
    /// `f(q)`, any `k`.
    F,
    /// `f(q^2)`, `k` odd.
    F2Odd,
    /// `f(q^2)`, `k` even.
    F2Even,
    /// `f(q^4)`, `k` odd.
    F4Odd,
    /// `f(q^4)`, `k = 2 mod 4`.
    F4TwoMod4,
    /// `f(q^4)`, `k = 0 mod 4`.
    F4ZeroMod4,
    /// `A(q)`, `k` odd.
    AOdd,
    /// `A(q)`, `k = 2 mod 4`.
    ATwoMod4,
    /// `A(q)`, `k = 0 mod 4`.
    AZeroMod4,
}

impl TransformTarget {
    pub const ALL: [TransformTarget; 9] = [
        TransformTarget::F,
        TransformTarget::F2Odd,
        TransformTarget::F2Even,
        TransformTarget::F4Odd,
        TransformTarget::F4TwoMod4,
        TransformTarget::F4ZeroMod4,
        TransformTarget::AOdd,
        TransformTarget::ATwoMod4,
        TransformTarget::AZeroMod4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TransformTarget::F => "f",
            TransformTarget::F2Odd => "f2_odd",
            TransformTarget::F2Even => "f2_even",
            TransformTarget::F4Odd => "f4_odd",
            TransformTarget::F4TwoMod4 => "f4_2mod4",
            TransformTarget::F4ZeroMod4 => "f4_0mod4",
            TransformTarget::AOdd => "A_odd",
            TransformTarget::ATwoMod4 => "A_2mod4",
            TransformTarget::AZeroMod4 => "A_0mod4",
        }
    }

    /// Whether `k` is in the residue class this identity is stated for.
    pub fn admits(self, k: u64) -> bool {
        match self {
            TransformTarget::F => k >= 1,
            TransformTarget::F2Odd | TransformTarget::F4Odd | TransformTarget::AOdd => k % 2 == 1,
            TransformTarget::F2Even => k >= 2 && k % 2 == 0,
            TransformTarget::F4TwoMod4 | TransformTarget::ATwoMod4 => k % 4 == 2,
            TransformTarget::F4ZeroMod4 | TransformTarget::AZeroMod4 => k >= 4 && k % 4 == 0,
        }
    }

    fn class(self) -> &'static str {
        match self {
            TransformTarget::F => "k >= 1",
            TransformTarget::F2Odd | TransformTarget::F4Odd | TransformTarget::AOdd => "k odd",
            TransformTarget::F2Even => "k even",
            TransformTarget::F4TwoMod4 | TransformTarget::ATwoMod4 => "k = 2 mod 4",
            TransformTarget::F4ZeroMod4 | TransformTarget::AZeroMod4 => "k = 0 mod 4",
        }
    }
}

impl fmt::Display for TransformTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TransformTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TransformTarget::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown transformation case {s:?}")))
    }
}

/// One point at which an identity is checked. `z` is `(re, im)` with `re > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformCase {
    pub target: TransformTarget,
    pub h: i64,
    pub k: u64,
    pub z: (f64, f64),
    pub digits: u32,
}

impl TransformCase {
    pub fn new(target: TransformTarget, h: i64, k: u64, z: f64, digits: u32) -> Self {
        TransformCase {
            target,
            h,
            k,
            z: (z, 0.0),
            digits,
        }
    }
}

/// Shared numeric context for one case.
struct Ctx {
    prec: u32,
    digits: u32,
    k: u64,
    z: ComplexBall,
    pi: Ball,
}

impl Ctx {
    /// `f(exp(2 pi i a (hp/k + i w)))`.
    fn fq(&self, a: u64, hp: u64, w: &ComplexBall) -> Result<ComplexBall> {
        let rot = ComplexBall::exp_i_pi(&Rational::from((2 * a * hp, self.k)), self.prec);
        let decay = w.scale(&self.pi.mul_u64(2 * a)).neg().exp();
        eval_f(&rot.mul(&decay), self.digits)
    }

    /// `z * num / den` as a complex ball.
    fn z_times(&self, num: u64, den: u64) -> Result<ComplexBall> {
        let c = Ball::from_u64(num, self.prec).div(&Ball::from_u64(den, self.prec))?;
        Ok(self.z.scale(&c))
    }

    /// `c / z`.
    fn over_z(&self, num: u64, den: u64) -> Result<ComplexBall> {
        let c = Ball::from_u64(num, self.prec).div(&Ball::from_u64(den, self.prec))?;
        Ok(self.z.recip()?.scale(&c))
    }

    /// `exp(pi c (x - y))`.
    fn exp_pi(&self, c: Rational, x: ComplexBall, y: ComplexBall) -> ComplexBall {
        x.sub(&y).scale(&self.pi.mul_rational(&c)).exp()
    }
}

fn inv(a: i64, m: u64) -> Result<u64> {
    inverse_mod(a, m, -1)
}

/// `|left - right|` for the identity at `case`.
pub fn verify_transformation(case: &TransformCase) -> Result<Ball> {
    verify_transformation_with_phase_shift(case, &Rational::new())
}

/// As [`verify_transformation`], with `shift` added to the Dedekind phase of
/// the right-hand side. A nonzero shift must break the identity.
pub fn verify_transformation_with_phase_shift(case: &TransformCase, shift: &Rational) -> Result<Ball> {
    let TransformCase { target, h, k, z, digits } = *case;
    if k == 0 {
        return Err(Error::ZeroModulus);
    }
    if !target.admits(k) {
        return Err(Error::WrongResidueClass { k, class: target.class() });
    }
    if !(z.0 > 0.0) || !z.0.is_finite() || !z.1.is_finite() {
        return Err(Error::Domain("z needs a positive real part for the principal branch".into()));
    }
    let prec = digits_to_bits(digits);
    let ctx = Ctx {
        prec,
        digits,
        k,
        z: ComplexBall::from_f64(z.0, z.1, prec),
        pi: Ball::pi(prec),
    };
    // The inverse of h mod k also validates gcd(h, k) = 1.
    let h1 = inv(h, k)?;

    // q = exp(2 pi i h/k) exp(-2 pi z / k^2)
    let rot = ComplexBall::exp_i_pi(&Rational::from((2 * h, k)), prec);
    let decay = ctx.z.scale(&ctx.pi.mul_pow2(1).div_u64(k * k)?).neg().exp();
    let q = rot.mul(&decay);

    let phase = |theta: Rational| ComplexBall::exp_i_pi(&(theta + shift), prec);
    let sqrt_zk = |num: u64| -> Result<ComplexBall> { ctx.z_times(num, k)?.sqrt() };
    let one_over_z = ctx.over_z(1, 1)?;
    let s = |a: i64, m: u64| dedekind_sum(a, m);
    let half = k / 2;
    let quarter = k / 4;

    let (left, right) = match target {
        TransformTarget::F => {
            let rhs = sqrt_zk(1)?
                .mul(&phase(s(h, k)?))
                .mul(&ctx.exp_pi(Rational::from((1, 12 * k)), ctx.over_z(k, 1)?, ctx.z_times(1, k)?))
                .mul(&ctx.fq(1, h1, &one_over_z)?);
            (eval_f(&q, digits)?, rhs)
        }
        TransformTarget::F2Odd => {
            let h2 = inv(2 * h, k)?;
            let rhs = sqrt_zk(2)?
                .mul(&phase(s(2 * h, k)?))
                .mul(&ctx.exp_pi(Rational::from((1, 12 * k)), ctx.over_z(k, 2)?, ctx.z_times(2, k)?))
                .mul(&ctx.fq(1, h2, &ctx.over_z(1, 2)?)?);
            (eval_f(&q.powu(2), digits)?, rhs)
        }
        TransformTarget::F2Even => {
            let h3 = inv(h, half)?;
            let rhs = sqrt_zk(1)?
                .mul(&phase(s(h, half)?))
                .mul(&ctx.exp_pi(Rational::from((1, 6 * k)), ctx.over_z(k, 1)?, ctx.z_times(1, k)?))
                .mul(&ctx.fq(2, h3, &one_over_z)?);
            (eval_f(&q.powu(2), digits)?, rhs)
        }
        TransformTarget::F4Odd => {
            let h4 = inv(4 * h, k)?;
            let rhs = sqrt_zk(4)?
                .mul(&phase(s(4 * h, k)?))
                .mul(&ctx.exp_pi(Rational::from((1, 12 * k)), ctx.over_z(k, 4)?, ctx.z_times(4, k)?))
                .mul(&ctx.fq(1, h4, &ctx.over_z(1, 4)?)?);
            (eval_f(&q.powu(4), digits)?, rhs)
        }
        TransformTarget::F4TwoMod4 => {
            let h5 = inv(2 * h, half)?;
            let rhs = sqrt_zk(2)?
                .mul(&phase(s(2 * h, half)?))
                .mul(&ctx.exp_pi(Rational::from((1, 12 * k)), ctx.over_z(k, 1)?, ctx.z_times(4, k)?))
                .mul(&ctx.fq(2, h5, &ctx.over_z(1, 2)?)?);
            (eval_f(&q.powu(4), digits)?, rhs)
        }
        TransformTarget::F4ZeroMod4 => {
            let h6 = inv(h, quarter)?;
            let rhs = sqrt_zk(1)?
                .mul(&phase(s(h, quarter)?))
                .mul(&ctx.exp_pi(Rational::from((1, 3 * k)), ctx.over_z(k, 1)?, ctx.z_times(1, k)?))
                .mul(&ctx.fq(4, h6, &one_over_z)?);
            (eval_f(&q.powu(4), digits)?, rhs)
        }
        TransformTarget::AOdd | TransformTarget::ATwoMod4 | TransformTarget::AZeroMod4 => {
            let f1 = eval_f(&q, digits)?;
            let f2 = eval_f(&q.powu(2), digits)?;
            let f4 = eval_f(&q.powu(4), digits)?;
            let lhs = f1.mul(&f1).mul(&f2).div(&f4)?;
            let g1 = ctx.fq(1, h1, &one_over_z)?;
            let g1sq = g1.mul(&g1);
            let sqrt2 = Ball::from_u64(2, prec).sqrt()?;
            let rhs = match target {
                TransformTarget::AOdd => {
                    let h2 = inv(2 * h, k)?;
                    let h4 = inv(4 * h, k)?;
                    let theta = (s(h, k)? * 2u32) + s(2 * h, k)? - s(4 * h, k)?;
                    let growth = ctx.over_z(3, 16)?.scale(&ctx.pi).exp();
                    ctx.z_times(1, k)?
                        .scale(&sqrt2.recip()?)
                        .mul(&phase(theta))
                        .mul(&growth)
                        .mul(&g1sq)
                        .mul(&ctx.fq(1, h2, &ctx.over_z(1, 2)?)?)
                        .div(&ctx.fq(1, h4, &ctx.over_z(1, 4)?)?)?
                }
                TransformTarget::ATwoMod4 => {
                    let h3 = inv(h, half)?;
                    let h5 = inv(2 * h, half)?;
                    let theta = (s(h, k)? * 2u32) + s(h, half)? - s(2 * h, half)?;
                    let growth = ctx.over_z(1, 4)?.scale(&ctx.pi).exp();
                    ctx.z_times(1, k)?
                        .scale(&sqrt2.recip()?)
                        .mul(&phase(theta))
                        .mul(&growth)
                        .mul(&g1sq)
                        .mul(&ctx.fq(2, h3, &one_over_z)?)
                        .div(&ctx.fq(2, h5, &ctx.over_z(1, 2)?)?)?
                }
                _ => {
                    let h3 = inv(h, half)?;
                    let h6 = inv(h, quarter)?;
                    let theta = (s(h, k)? * 2u32) + s(h, half)? - s(h, quarter)?;
                    ctx.z_times(1, k)?
                        .mul(&phase(theta))
                        .mul(&g1sq)
                        .mul(&ctx.fq(2, h3, &one_over_z)?)
                        .div(&ctx.fq(4, h6, &one_over_z)?)?
                }
            };
            (lhs, rhs)
        }
    };
    left.sub(&right).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_at_zero_is_one() {
        let v = eval_f(&ComplexBall::zero(128), 30).unwrap();
        assert!(v.re.contains_integer(&1.into()) && v.im.contains_zero());
    }

    #[test]
    fn rejects_q_near_the_circle() {
        assert!(eval_f(&ComplexBall::from_f64(0.9995, 0.0, 64), 20).is_err());
    }

    #[test]
    fn k_equal_one_collapses() {
        let r = verify_transformation(&TransformCase::new(TransformTarget::F, 0, 1, 1.0, 40)).unwrap();
        assert!(r.contains_zero());
        assert!(r.upper() < 1e-30, "{r}");
    }

    #[test]
    fn class_and_branch_checks() {
        let bad_class = TransformCase::new(TransformTarget::F2Odd, 1, 4, 1.0, 30);
        assert!(matches!(verify_transformation(&bad_class), Err(Error::WrongResidueClass { .. })));
        let bad_z = TransformCase::new(TransformTarget::F, 1, 3, -1.0, 30);
        assert!(matches!(verify_transformation(&bad_z), Err(Error::Domain(_))));
        let not_coprime = TransformCase::new(TransformTarget::F, 2, 4, 1.0, 30);
        assert!(matches!(verify_transformation(&not_coprime), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn names_roundtrip() {
        for t in TransformTarget::ALL {
            assert_eq!(t.name().parse::<TransformTarget>().unwrap(), t);
        }
    }
}
