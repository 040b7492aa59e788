use rug::{Float, Rational};

use super::ball::Ball;
use crate::error::{Error, Result};

/// A complex number enclosed as a rectangle of two real balls.
#[derive(Clone, Debug)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        ComplexBall { re, im }
    }

    pub fn from_real(re: Ball) -> Self {
        let im = Ball::zero(re.prec());
        ComplexBall { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexBall::new(Ball::zero(prec), Ball::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        ComplexBall::new(Ball::one(prec), Ball::zero(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        ComplexBall::new(Ball::from_f64(re, prec), Ball::from_f64(im, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn add(&self, other: &ComplexBall) -> ComplexBall {
        ComplexBall::new(self.re.add(&other.re), self.im.add(&other.im))
    }

    pub fn sub(&self, other: &ComplexBall) -> ComplexBall {
        ComplexBall::new(self.re.sub(&other.re), self.im.sub(&other.im))
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, other: &ComplexBall) -> ComplexBall {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        ComplexBall::new(re, im)
    }

    pub fn scale(&self, factor: &Ball) -> ComplexBall {
        ComplexBall::new(self.re.mul(factor), self.im.mul(factor))
    }

    pub fn mul_pow2(&self, exp: i32) -> ComplexBall {
        ComplexBall::new(self.re.mul_pow2(exp), self.im.mul_pow2(exp))
    }

    pub fn norm_sqr(&self) -> Ball {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn abs(&self) -> Result<Ball> {
        self.norm_sqr().sqrt()
    }

    /// Upper bound for the modulus over the rectangle.
    pub fn abs_upper(&self) -> Float {
        let re = self.re.abs_upper();
        let im = self.im.abs_upper();
        let sq = Float::with_val(64, &re * &re) + Float::with_val(64, &im * &im);
        let mut s = sq.sqrt();
        // 64-bit rounding slack, generous.
        s *= 1.000_000_1f64;
        s
    }

    pub fn div(&self, other: &ComplexBall) -> Result<ComplexBall> {
        let den = other.norm_sqr();
        if !den.is_positive() {
            return Err(Error::Domain("complex division by a ball containing zero".into()));
        }
        let num = self.mul(&other.conj());
        Ok(ComplexBall::new(num.re.div(&den)?, num.im.div(&den)?))
    }

    pub fn recip(&self) -> Result<ComplexBall> {
        ComplexBall::one(self.prec()).div(self)
    }

    pub fn powu(&self, exp: u32) -> ComplexBall {
        let mut result = ComplexBall::one(self.prec());
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

    pub fn exp(&self) -> ComplexBall {
        let r = self.re.exp();
        ComplexBall::new(r.mul(&self.im.cos()), r.mul(&self.im.sin()))
    }

    /// `e^{i pi theta}` for an exact rational `theta`.
    pub fn exp_i_pi(theta: &Rational, prec: u32) -> ComplexBall {
        // Reduce theta modulo 2 exactly before going numeric.
        let turns = Rational::from(theta / 2u32).floor();
        let reduced = theta - (turns * 2u32) ;
        let angle = Ball::pi(prec).mul_rational(&reduced);
        ComplexBall::new(angle.cos(), angle.sin())
    }

    /// Principal square root; requires a strictly positive real part.
    pub fn sqrt(&self) -> Result<ComplexBall> {
        if !self.re.is_positive() {
            return Err(Error::Domain(
                "principal square root needs a positive real part".into(),
            ));
        }
        let modulus = self.abs()?;
        let t = modulus.add(&self.re).mul_pow2(-1).sqrt()?;
        let im = self.im.div(&t.mul_pow2(1))?;
        Ok(ComplexBall::new(t, im))
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 160;

    #[test]
    fn sqrt_squares_back() {
        let z = ComplexBall::from_f64(0.75, -1.25, P);
        let s = z.sqrt().unwrap();
        let back = s.mul(&s).sub(&z);
        assert!(back.contains_zero());
        assert!(s.re.is_positive());
    }

    #[test]
    fn exp_i_pi_reduces_exactly() {
        let a = ComplexBall::exp_i_pi(&Rational::from((1, 3)), P);
        let b = ComplexBall::exp_i_pi(&Rational::from((1 + 6 * 1000, 3)), P);
        // 1/3 and 1/3 + 2000: the reduction makes both evaluations identical.
        assert_eq!(a.re.mid(), b.re.mid());
        assert!(a.re.contains_rational(&Rational::from((1, 2))));
        let neg = ComplexBall::exp_i_pi(&Rational::from(-1), P);
        assert!(neg.re.contains_rational(&Rational::from(-1)));
    }

    #[test]
    fn division_roundtrip() {
        let a = ComplexBall::from_f64(1.5, 2.0, P);
        let b = ComplexBall::from_f64(-0.5, 0.25, P);
        let q = a.div(&b).unwrap();
        assert!(q.mul(&b).sub(&a).contains_zero());
    }
}
