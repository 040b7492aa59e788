//! Integer polynomials with exact real-root counting.

use std::cmp::Ordering;
use std::fmt;

use rug::Integer;

use crate::error::{Error, Result};

/// A polynomial with arbitrary-precision integer coefficients, stored in
/// increasing degree order without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    fn lc(&self) -> &Integer {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Integer::from(c * i as u64))
                .collect(),
        )
    }

    pub fn content(&self) -> Integer {
        self.coeffs
            .iter()
            .fold(Integer::new(), |g, c| g.gcd(c))
    }

    /// Divide by the content, making the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut g = self.content();
        if self.lc().cmp0() == Ordering::Less {
            g = -g;
        }
        IntPolynomial::new(self.coeffs.iter().map(|c| Integer::from(c.div_exact_ref(&g))).collect())
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| Integer::from(-c)).collect())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// A positive multiple of the remainder of `self` by `divisor`:
    /// `c * self = q * divisor + r` with `c > 0`.
    fn positive_pseudo_rem(&self, divisor: &IntPolynomial) -> IntPolynomial {
        let n = divisor.degree().expect("nonzero divisor");
        let lb = divisor.lc().clone();
        let mut r = self.coeffs.clone();
        let mut steps = 0u32;
        while r.len() > n && !r.is_empty() {
            let c = r.last().expect("nonempty").clone();
            let shift = r.len() - 1 - n;
            for x in r.iter_mut() {
                *x *= &lb;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= Integer::from(&c * b);
            }
            steps += 1;
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        let r = IntPolynomial::new(r);
        if lb.cmp0() == Ordering::Less && steps % 2 == 1 {
            r.neg()
        } else {
            r
        }
    }

    /// Exact quotient by `divisor`. Fails if the division leaves a remainder
    /// or a non-integral coefficient.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Result<IntPolynomial> {
        let n = divisor
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let lb = divisor.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![Integer::new(); r.len().saturating_sub(n).max(1)];
        while r.len() > n {
            let c = r.last().expect("nonempty").clone();
            if !c.is_divisible(lb) {
                return Err(Error::Domain("polynomial division is not exact".into()));
            }
            let t = Integer::from(c.div_exact_ref(lb));
            let shift = r.len() - 1 - n;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= Integer::from(&t * b);
            }
            q[shift] = t;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        if !r.is_empty() {
            return Err(Error::Domain("polynomial division is not exact".into()));
        }
        Ok(IntPolynomial::new(q))
    }

    /// Primitive greatest common divisor with positive leading coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.positive_pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn squarefree_part(&self) -> Result<IntPolynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part().div_exact(&g)
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`, each term reduced to its
    /// primitive part (positive scalings keep the sign pattern intact).
    pub fn sturm_sequence(&self) -> Vec<IntPolynomial> {
        let mut seq = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let r = seq[n - 2].positive_pseudo_rem(&seq[n - 1]);
            if r.is_zero() {
                return seq;
            }
            let g = r.content();
            let next = IntPolynomial::new(r.coeffs.iter().map(|c| -Integer::from(c.div_exact_ref(&g))).collect());
            seq.push(next);
        }
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let seq = self.sturm_sequence();
        let at_pos: Vec<Ordering> = seq.iter().map(|p| p.lc().cmp0()).collect();
        let at_neg: Vec<Ordering> = seq
            .iter()
            .map(|p| {
                let s = p.lc().cmp0();
                if p.degree().unwrap_or(0) % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            })
            .collect();
        Ok(sign_changes(&at_neg) - sign_changes(&at_pos))
    }

    /// Sign of the value at an integer point.
    pub fn sign_at(&self, x: &Integer) -> Ordering {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc.cmp0()
    }
}

fn sign_changes(signs: &[Ordering]) -> usize {
    let nonzero: Vec<_> = signs.iter().filter(|s| **s != Ordering::Equal).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

/// True when every complex root is real (multiplicities allowed). Nonzero
/// constants count as hyperbolic vacuously.
pub fn is_hyperbolic(p: &IntPolynomial) -> Result<bool> {
    let sf = p.squarefree_part()?;
    let deg = sf.degree().expect("nonzero");
    Ok(sf.count_real_roots()? == deg)
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.cmp0() == Ordering::Less;
            let abs = Integer::from(c.abs_ref());
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_coeff = i == 0 || abs != 1;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn hyperbolicity_examples() {
        assert!(is_hyperbolic(&p(&[-2, 0, 1])).unwrap());
        assert!(!is_hyperbolic(&p(&[1, 0, 1])).unwrap());
        assert!(is_hyperbolic(&p(&[0, -6, 0, 1])).unwrap());
        assert_eq!(is_hyperbolic(&IntPolynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn repeated_roots_are_allowed() {
        // (X - 1)^2 (X + 2)
        let q = p(&[-1, 1]).mul(&p(&[-1, 1])).mul(&p(&[2, 1]));
        assert!(is_hyperbolic(&q).unwrap());
        assert_eq!(q.squarefree_part().unwrap(), p(&[-2, 1, 1]));
        // (X^2 + 1)^2 has no real roots at all.
        let r = p(&[1, 0, 1]).mul(&p(&[1, 0, 1]));
        assert!(!is_hyperbolic(&r).unwrap());
    }

    #[test]
    fn negative_leading_coefficients() {
        // -3 (X - 1)(X - 2)(X + 5)
        let q = p(&[-1, 1]).mul(&p(&[-2, 1])).mul(&p(&[5, 1])).mul(&p(&[-3]));
        assert_eq!(q.count_real_roots().unwrap(), 3);
        // -(2X^2 + 1)(X - 4)
        let r = p(&[1, 0, 2]).mul(&p(&[-4, 1])).neg();
        assert_eq!(r.count_real_roots().unwrap(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[12, 0, -12, 0, 1]).to_string(), "X^4 - 12X^2 + 12");
        assert_eq!(p(&[0, -1]).to_string(), "-X");
    }
}
