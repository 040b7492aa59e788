//! Midpoint-radius ("ball") arithmetic over MPFR floats.
//!
//! A [`Ball`] `m ± r` represents every real `x` with `|x - m| <= r`. Every
//! operation returns a ball that contains the exact result whenever the inputs
//! contained the exact operands. Midpoints are rounded to nearest at the
//! working precision; radii are kept at a small fixed precision and always
//! rounded upwards.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::ops::AssignRound;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Precision (bits) used for radii.
pub const RAD_PREC: u32 = 32;

/// Binary precision that carries `digits` significant decimal digits plus a
/// few guard bits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 8
}

fn up<T>(val: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(RAD_PREC, val, Round::Up).0
}

fn down<T>(val: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(RAD_PREC, val, Round::Down).0
}

fn zero_rad() -> Float {
    Float::new(RAD_PREC)
}

/// Upper bound for the error of a correctly rounded (to nearest) result `m`.
fn rounding_error(m: &Float) -> Float {
    if m.is_zero() {
        return zero_rad();
    }
    let mut e = up(&*m.as_abs());
    e >>= m.prec() - 1;
    e
}

/// Round `val` to nearest at `prec`, returning the midpoint and its rounding
/// error (zero when MPFR reports the result as exact).
fn rounded<T>(prec: u32, val: T) -> (Float, Float)
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    let (m, o) = Float::with_val_round(prec, val, Round::Nearest);
    let e = if o == Ordering::Equal {
        zero_rad()
    } else {
        rounding_error(&m)
    };
    (m, e)
}

fn sum_up(parts: &[&Float]) -> Float {
    let mut acc = zero_rad();
    for p in parts {
        acc = up(&acc + *p);
    }
    acc
}

/// A real number enclosed as `mid ± rad`.
#[derive(Clone, Debug)]
pub struct Ball {
    mid: Float,
    rad: Float,
}

impl Ball {
    fn from_parts(mid: Float, rad: Float) -> Self {
        debug_assert!(!rad.is_sign_negative() && rad.is_finite());
        Ball { mid, rad }
    }

    pub fn zero(prec: u32) -> Self {
        Ball::from_parts(Float::new(prec), zero_rad())
    }

    pub fn one(prec: u32) -> Self {
        Ball::from_parts(Float::with_val(prec, 1), zero_rad())
    }

    /// Exact ball with the given midpoint.
    pub fn exact(mid: Float) -> Self {
        Ball::from_parts(mid, zero_rad())
    }

    /// Ball with explicit midpoint and radius; the radius is rounded up.
    pub fn with_radius(mid: Float, rad: &Float) -> Result<Self> {
        if rad.is_sign_negative() || !rad.is_finite() || !mid.is_finite() {
            return Err(Error::Domain("ball radius must be finite and non-negative".into()));
        }
        Ok(Ball::from_parts(mid, up(rad)))
    }

    /// Smallest ball (up to rounding) around the interval `[lo, hi]`.
    pub fn from_interval(lo: &Float, hi: &Float) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::Domain("empty interval".into()));
        }
        let prec = lo.prec().max(hi.prec());
        let mid = Float::with_val(prec + 1, lo + hi) / 2u32;
        let (mid, _) = rounded(prec, &mid);
        let r1 = up(&mid - lo);
        let r2 = up(hi - &mid);
        Ok(Ball::from_parts(mid, if r1 > r2 { r1 } else { r2 }))
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        let (m, e) = rounded(prec, v);
        Ball::from_parts(m, e)
    }

    pub fn from_u64(v: u64, prec: u32) -> Self {
        let (m, e) = rounded(prec, v);
        Ball::from_parts(m, e)
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        let (m, e) = rounded(prec, v);
        Ball::from_parts(m, e)
    }

    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        let (m, e) = rounded(prec, v);
        Ball::from_parts(m, e)
    }

    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        let (m, e) = rounded(prec, v);
        Ball::from_parts(m, e)
    }

    pub fn pi(prec: u32) -> Self {
        let (m, e) = rounded(prec, Constant::Pi);
        Ball::from_parts(m, e)
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    /// Re-round the midpoint to `prec` bits, widening the radius if needed.
    pub fn with_prec(&self, prec: u32) -> Self {
        let (m, e) = rounded(prec, &self.mid);
        Ball::from_parts(m, up(&self.rad + &e))
    }

    pub fn lower(&self) -> Float {
        Float::with_val_round(self.prec(), &self.mid - &self.rad, Round::Down).0
    }

    pub fn upper(&self) -> Float {
        Float::with_val_round(self.prec(), &self.mid + &self.rad, Round::Up).0
    }

    /// Upper bound for `|x|` over the ball.
    pub fn abs_upper(&self) -> Float {
        up(&*self.mid.as_abs() + &self.rad)
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64_round(Round::Up)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.lower() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.upper() < 0
    }

    pub fn contains_zero(&self) -> bool {
        self.lower() <= 0 && self.upper() >= 0
    }

    pub fn contains_integer(&self, v: &Integer) -> bool {
        self.lower() <= *v && self.upper() >= *v
    }

    pub fn contains_rational(&self, v: &Rational) -> bool {
        self.lower() <= *v && self.upper() >= *v
    }

    pub fn contains_f64(&self, v: f64) -> bool {
        self.lower() <= v && self.upper() >= v
    }

    /// True when `other` lies entirely inside `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Nearest integer to the midpoint.
    pub fn nearest_integer(&self) -> Option<Integer> {
        self.mid.to_integer()
    }

    /// Widen the radius by `err` (an absolute error bound).
    pub fn add_error(&mut self, err: &Float) {
        self.rad = up(&self.rad + err);
    }

    pub fn neg(&self) -> Ball {
        Ball::from_parts(Float::with_val(self.prec(), -&self.mid), self.rad.clone())
    }

    pub fn add(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let (m, e) = rounded(prec, &self.mid + &other.mid);
        let r = sum_up(&[&self.rad, &other.rad, &e]);
        Ball::from_parts(m, r)
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let (m, e) = rounded(prec, &self.mid - &other.mid);
        let r = sum_up(&[&self.rad, &other.rad, &e]);
        Ball::from_parts(m, r)
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let (m, e) = rounded(prec, &self.mid * &other.mid);
        let a = up(&*self.mid.as_abs());
        let b = up(&*other.mid.as_abs());
        let t1 = up(&a * &other.rad);
        let t2 = up(&b * &self.rad);
        let t3 = up(&self.rad * &other.rad);
        let r = sum_up(&[&t1, &t2, &t3, &e]);
        Ball::from_parts(m, r)
    }

    pub fn sqr(&self) -> Ball {
        let b = self.mul(self);
        if b.lower() >= 0 {
            return b;
        }
        // The ball straddles zero: enclose [0, upper] instead.
        let hi = b.upper();
        let half = Float::with_val_round(self.prec(), &hi / 2u32, Round::Up).0;
        let r = up(&half);
        Ball::from_parts(half, r)
    }

    pub fn mul_i64(&self, v: i64) -> Ball {
        let (m, e) = rounded(self.prec(), &self.mid * v);
        let r = up(&self.rad * v.unsigned_abs());
        Ball::from_parts(m, up(&r + &e))
    }

    pub fn mul_u64(&self, v: u64) -> Ball {
        let (m, e) = rounded(self.prec(), &self.mid * v);
        let r = up(&self.rad * v);
        Ball::from_parts(m, up(&r + &e))
    }

    pub fn div_u64(&self, v: u64) -> Result<Ball> {
        if v == 0 {
            return Err(Error::Domain("division by zero".into()));
        }
        let (m, e) = rounded(self.prec(), &self.mid / v);
        let r = up(&self.rad / v);
        Ok(Ball::from_parts(m, up(&r + &e)))
    }

    pub fn mul_rational(&self, v: &Rational) -> Ball {
        self.mul(&Ball::from_rational(v, self.prec()))
    }

    /// Multiply by `2^exp` (exact).
    pub fn mul_pow2(&self, exp: i32) -> Ball {
        let mut m = self.mid.clone();
        let mut r = self.rad.clone();
        if exp >= 0 {
            m <<= exp as u32;
            r <<= exp as u32;
        } else {
            m >>= exp.unsigned_abs();
            r >>= exp.unsigned_abs();
        }
        Ball::from_parts(m, r)
    }

    pub fn div(&self, other: &Ball) -> Result<Ball> {
        let prec = self.prec().max(other.prec());
        let b_abs = down(&*other.mid.as_abs());
        let gap = down(&b_abs - &other.rad);
        if gap <= 0 {
            return Err(Error::Domain("division by a ball containing zero".into()));
        }
        let (m, e) = rounded(prec, &self.mid / &other.mid);
        let a_abs = up(&*self.mid.as_abs());
        let b_abs_up = up(&*other.mid.as_abs());
        let num = sum_up(&[&up(&self.rad * &b_abs_up), &up(&a_abs * &other.rad)]);
        let den = down(&gap * &b_abs);
        let r = up(&num / &den);
        Ok(Ball::from_parts(m, up(&r + &e)))
    }

    pub fn recip(&self) -> Result<Ball> {
        Ball::one(self.prec()).div(self)
    }

    pub fn powu(&self, exp: u32) -> Ball {
        let mut result = Ball::one(self.prec());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn powi(&self, exp: i32) -> Result<Ball> {
        let p = self.powu(exp.unsigned_abs());
        if exp < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    pub fn sqrt(&self) -> Result<Ball> {
        let prec = self.prec();
        if self.mid.is_zero() && self.rad.is_zero() {
            return Ok(Ball::zero(prec));
        }
        let lo = self.lower();
        if lo > 0 {
            let (m, e) = rounded(prec, self.mid.sqrt_ref());
            let sqrt_lo = down(lo.sqrt_ref());
            let r = up(&self.rad / &sqrt_lo);
            return Ok(Ball::from_parts(m, up(&r + &e)));
        }
        let hi = self.upper();
        if hi < 0 {
            return Err(Error::Domain("square root of a negative ball".into()));
        }
        // Enclose [0, sqrt(hi)].
        let s = Float::with_val_round(prec, hi.sqrt_ref(), Round::Up).0;
        let half = Float::with_val_round(prec, &s / 2u32, Round::Up).0;
        let r = up(&half);
        Ok(Ball::from_parts(half, r))
    }

    pub fn exp(&self) -> Ball {
        let prec = self.prec();
        let (m, e) = rounded(prec, self.mid.exp_ref());
        if self.rad.is_zero() {
            return Ball::from_parts(m, e);
        }
        let mag = up(&*m.as_abs() + &e);
        let growth = up(self.rad.exp_m1_ref());
        let r = up(&mag * &growth);
        Ball::from_parts(m, up(&r + &e))
    }

    pub fn ln(&self) -> Result<Ball> {
        let lo = down(&self.mid - &self.rad);
        if lo <= 0 {
            return Err(Error::Domain("logarithm of a non-positive ball".into()));
        }
        let (m, e) = rounded(self.prec(), self.mid.ln_ref());
        let r = up(&self.rad / &lo);
        Ok(Ball::from_parts(m, up(&r + &e)))
    }

    /// `self^exponent` for a positive ball and rational exponent.
    pub fn pow_rational(&self, exponent: &Rational) -> Result<Ball> {
        Ok(self.ln()?.mul_rational(exponent).exp())
    }

    pub fn sin(&self) -> Ball {
        let (m, e) = rounded(self.prec(), self.mid.sin_ref());
        Ball::from_parts(m, up(&self.rad + &e))
    }

    pub fn cos(&self) -> Ball {
        let (m, e) = rounded(self.prec(), self.mid.cos_ref());
        Ball::from_parts(m, up(&self.rad + &e))
    }

    /// Midpoint rendered with `decimals` digits after the decimal point.
    pub fn to_fixed(&self, decimals: usize) -> String {
        let scale = Integer::from(Integer::u_pow_u(10, decimals as u32));
        let scaled = Float::with_val(self.prec() + 64, &self.mid * &scale);
        let int = scaled.to_integer().unwrap_or_default();
        let negative = int < 0;
        let digits = int.abs().to_string();
        let digits = if digits.len() <= decimals {
            format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (whole, frac) = digits.split_at(digits.len() - decimals);
        let sign = if negative { "-" } else { "" };
        if decimals == 0 {
            format!("{sign}{whole}")
        } else {
            format!("{sign}{whole}.{frac}")
        }
    }

    /// Midpoint in scientific notation with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        self.mid.to_string_radix(10, Some(digits))
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec() as f64) / std::f64::consts::LOG2_10).floor() as usize;
        write!(
            f,
            "{} +/- {}",
            self.mid.to_string_radix(10, Some(digits.max(1))),
            self.rad.to_string_radix(10, Some(3))
        )
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Ball> for &Ball {
            type Output = Ball;
            fn $method(self, rhs: &Ball) -> Ball {
                Ball::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::neg(self)
    }
}

/// Tri-state outcome of an interval comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

impl Verdict {
    /// Decide `a <= b` from enclosures of both sides.
    pub fn le(a: &Ball, b: &Ball) -> Verdict {
        if a.upper() <= b.lower() {
            Verdict::Holds
        } else if a.lower() > b.upper() {
            Verdict::Fails
        } else {
            Verdict::Indeterminate
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
            _ => Verdict::Indeterminate,
        }
    }

    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "yes",
            Verdict::Fails => "no",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
