//! The Kloosterman-type sums weighting the two Rademacher series:
//!
//! ```text
//! A1_k(n) = sum_h exp(pi i (2s(h,k) + s(2h,k) - s(4h,k)) - 2 pi i n h / k),  k odd
//! A2_k(n) = sum_h exp(pi i (2s(h,k) + s(h,k/2) - s(2h,k/2)) - 2 pi i n h / k), k = 2 mod 4
//! ```
//!
//! with `h` running over `[0, k)` coprime to `k`. Phases are exact rationals;
//! only the final exponentials are numeric.

use rug::{Integer, Rational};

use crate::analytic::{digits_to_bits, ComplexBall};
use crate::dedekind::dedekind_sum;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KloostermanKind {
    /// Odd moduli.
    A1,
    /// Moduli congruent to 2 mod 4.
    A2,
}

impl KloostermanKind {
    fn admits(self, k: u64) -> bool {
        match self {
            KloostermanKind::A1 => k % 2 == 1,
            KloostermanKind::A2 => k % 4 == 2,
        }
    }

    fn class(self) -> &'static str {
        match self {
            KloostermanKind::A1 => "k odd",
            KloostermanKind::A2 => "k = 2 mod 4",
        }
    }
}

/// One evaluated sum: the exact phases `theta_h` (the sum is
/// `sum exp(i pi theta_h)`) and the enclosed complex value.
#[derive(Clone, Debug)]
pub struct PhaseSum {
    pub kind: KloostermanKind,
    pub k: u64,
    pub n: u64,
    pub phases: Vec<Rational>,
    pub value: ComplexBall,
}

impl PhaseSum {
    /// `|A_k(n)| <= k` is not contradicted by the enclosure.
    pub fn within_trivial_bound(&self) -> bool {
        match self.value.abs() {
            Ok(m) => m.lower() <= self.k,
            Err(_) => true,
        }
    }

    /// The imaginary part is zero within its radius.
    pub fn is_real_within_radius(&self) -> bool {
        self.value.im.contains_zero()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The `n`-independent part of every phase for one modulus, scaled by `6k`
/// so it becomes an integer.
#[derive(Clone, Debug)]
pub struct KloostermanPhases {
    kind: KloostermanKind,
    k: u64,
    /// `(h, 6k * base_h)` where `base_h` is the Dedekind-sum combination.
    base: Vec<(u64, Integer)>,
}

impl KloostermanPhases {
    pub fn new(kind: KloostermanKind, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroModulus);
        }
        if !kind.admits(k) {
            return Err(Error::WrongResidueClass { k, class: kind.class() });
        }
        let scale = Rational::from(6 * k);
        let mut base = Vec::new();
        for h in 0..k {
            if gcd(h, k) != 1 {
                continue;
            }
            let hi = h as i64;
            let b = match kind {
                KloostermanKind::A1 => {
                    (dedekind_sum(hi, k)? * 2u32) + dedekind_sum(2 * hi, k)?
                        - dedekind_sum(4 * hi, k)?
                }
                KloostermanKind::A2 => {
                    let half = k / 2;
                    (dedekind_sum(hi, k)? * 2u32) + dedekind_sum(hi, half)?
                        - dedekind_sum(2 * hi, half)?
                }
            };
            let scaled = b * &scale;
            debug_assert!(*scaled.denom() == 1);
            base.push((h, scaled.into_numer_denom().0));
        }
        Ok(KloostermanPhases { kind, k, base })
    }

    pub fn kind(&self) -> KloostermanKind {
        self.kind
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `6k * theta_h(n) = 6k * base_h - 12 n h`.
    fn scaled_phase(&self, base: &Integer, h: u64, n: u64) -> Integer {
        let nh = Integer::from(n % self.k) * h * 12u32;
        base - nh
    }

    /// The exact phases `theta_h` for this `n`.
    pub fn phases(&self, n: u64) -> Vec<Rational> {
        let den = Integer::from(6 * self.k);
        self.base
            .iter()
            .map(|(h, b)| {
                let full = b - Integer::from(n) * *h * 12u32;
                Rational::from((full, den.clone()))
            })
            .collect()
    }

    pub fn evaluate(&self, n: u64, digits: u32) -> PhaseSum {
        let prec = digits_to_bits(digits);
        let den = Integer::from(6 * self.k);
        let mut value = ComplexBall::zero(prec);
        for (h, b) in &self.base {
            let theta = Rational::from((self.scaled_phase(b, *h, n), den.clone()));
            value = value.add(&ComplexBall::exp_i_pi(&theta, prec));
        }
        PhaseSum {
            kind: self.kind,
            k: self.k,
            n,
            phases: self.phases(n),
            value,
        }
    }

    /// Evaluate for many `n` at once with a table of the `12k` possible
    /// roots of unity `exp(i pi m / (6k))`.
    pub fn evaluate_many(&self, ns: &[u64], digits: u32) -> Vec<PhaseSum> {
        let prec = digits_to_bits(digits);
        let period = 12 * self.k;
        let mut table: Vec<Option<ComplexBall>> = vec![None; period as usize];
        let den = Integer::from(6 * self.k);
        ns.iter()
            .map(|&n| {
                let mut value = ComplexBall::zero(prec);
                for (h, b) in &self.base {
                    let m = self.scaled_phase(b, *h, n).mod_u(period as u32) as usize;
                    let root = table[m].get_or_insert_with(|| {
                        ComplexBall::exp_i_pi(&Rational::from((m as u64, den.clone())), prec)
                    });
                    value = value.add(root);
                }
                PhaseSum {
                    kind: self.kind,
                    k: self.k,
                    n,
                    phases: self.phases(n),
                    value,
                }
            })
            .collect()
    }
}

/// `A1_k(n)` for odd `k`.
pub fn kloosterman_a1(k: u64, n: u64, digits: u32) -> Result<PhaseSum> {
    Ok(KloostermanPhases::new(KloostermanKind::A1, k)?.evaluate(n, digits))
}

/// `A2_k(n)` for `k = 2 mod 4`.
pub fn kloosterman_a2(k: u64, n: u64, digits: u32) -> Result<PhaseSum> {
    Ok(KloostermanPhases::new(KloostermanKind::A2, k)?.evaluate(n, digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::Ball;

    fn is_int(b: &Ball, v: i64) -> bool {
        b.contains_integer(&Integer::from(v)) && b.rad_f64() < 1e-30
    }

    #[test]
    fn small_moduli() {
        let s = kloosterman_a1(1, 17, 40).unwrap();
        assert!(is_int(&s.value.re, 1) && s.value.im.contains_zero());
        assert!(is_int(&kloosterman_a1(3, 0, 40).unwrap().value.re, 2));
        assert!(is_int(&kloosterman_a1(3, 1, 40).unwrap().value.re, -1));
        assert!(is_int(&kloosterman_a2(2, 4, 40).unwrap().value.re, 1));
        assert!(is_int(&kloosterman_a2(2, 7, 40).unwrap().value.re, -1));
    }

    #[test]
    fn residue_classes_enforced() {
        assert!(matches!(kloosterman_a1(4, 0, 20), Err(Error::WrongResidueClass { .. })));
        assert!(matches!(kloosterman_a2(4, 0, 20), Err(Error::WrongResidueClass { .. })));
        assert!(matches!(kloosterman_a2(3, 0, 20), Err(Error::WrongResidueClass { .. })));
        assert!(kloosterman_a1(0, 0, 20).is_err());
    }

    #[test]
    fn table_route_matches_direct_route() {
        for (kind, k) in [(KloostermanKind::A1, 15u64), (KloostermanKind::A2, 18)] {
            let p = KloostermanPhases::new(kind, k).unwrap();
            let ns: Vec<u64> = (0..40).collect();
            for (many, &n) in p.evaluate_many(&ns, 40).iter().zip(&ns) {
                let one = p.evaluate(n, 40);
                assert!(many.value.re.overlaps(&one.value.re));
                assert!(many.value.im.overlaps(&one.value.im));
                assert_eq!(many.phases, one.phases);
            }
        }
    }
}
