//! Exact integer power series and eta-quotient expansions.
//!
//! Everything here is exact big-integer arithmetic. The cubic overpartition
//! numbers come from
//!
//! ```text
//! sum a(n) q^n = (q^4;q^4) / ((q;q)^2 (q^2;q^2)),
//! ```
//!
//! expanded with the pentagonal number theorem.

use std::collections::BTreeMap;

use rug::Integer;

use crate::error::{Error, Result};

/// A formal power series truncated after `q^truncation_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Integer>,
}

fn alloc(order: u64) -> Result<Vec<Integer>> {
    let len = order
        .checked_add(1)
        .and_then(|l| usize::try_from(l).ok())
        .ok_or(Error::Allocation(usize::MAX))?;
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| Error::Allocation(len))?;
    v.resize(len, Integer::new());
    Ok(v)
}

/// Exponents and signs of `(q;q)_inf = sum (-1)^k q^{k(3k-1)/2}` up to `order`,
/// constant term excluded, in increasing order.
fn pentagonal(order: u64) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    for k in 1u64.. {
        let g1 = k * (3 * k - 1) / 2;
        if g1 > order {
            break;
        }
        let negative = k % 2 == 1;
        out.push((g1 as usize, negative));
        let g2 = k * (3 * k + 1) / 2;
        if g2 <= order {
            out.push((g2 as usize, negative));
        }
    }
    out
}

impl PowerSeries {
    pub fn zero(order: u64) -> Result<Self> {
        Ok(PowerSeries { coeffs: alloc(order)? })
    }

    pub fn one(order: u64) -> Result<Self> {
        let mut s = PowerSeries::zero(order)?;
        s.coeffs[0] = Integer::from(1);
        Ok(s)
    }

    /// Series with the given coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Integer>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a power series needs at least one coefficient".into()));
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn truncation_order(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    pub fn coeff(&self, i: u64) -> Option<&Integer> {
        usize::try_from(i).ok().and_then(|i| self.coeffs.get(i))
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![Integer::new(); len];
        for (i, a) in self.coeffs[..len].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..len - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplicative inverse by quadratic-time convolution. The constant
    /// term must be a unit (`1` or `-1`) so the result stays integral.
    pub fn inverse(&self) -> Result<PowerSeries> {
        let c0 = &self.coeffs[0];
        let sign = if *c0 == 1 {
            1
        } else if *c0 == -1 {
            -1
        } else {
            return Err(Error::InvalidArgument(
                "only series with constant term +1 or -1 are invertible over the integers".into(),
            ));
        };
        let len = self.coeffs.len();
        let mut inv = vec![Integer::new(); len];
        inv[0] = Integer::from(sign);
        for n in 1..len {
            let mut acc = Integer::new();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &inv[n - k];
                }
            }
            // c0 * inv[n] = -acc and c0 = 1/c0.
            inv[n] = -acc * sign;
        }
        Ok(PowerSeries { coeffs: inv })
    }

    /// Multiply in place by `(q^a; q^a)_inf`.
    pub fn mul_euler(&mut self, a: u64) {
        let order = self.truncation_order();
        let terms = pentagonal(order / a);
        let a = a as usize;
        for i in (1..self.coeffs.len()).rev() {
            let mut acc = Integer::new();
            for &(e, negative) in &terms {
                let shift = e * a;
                if shift > i {
                    break;
                }
                if negative {
                    acc -= &self.coeffs[i - shift];
                } else {
                    acc += &self.coeffs[i - shift];
                }
            }
            self.coeffs[i] += acc;
        }
    }

    /// Divide in place by `(q^a; q^a)_inf` (exact, since its constant term is 1).
    pub fn div_euler(&mut self, a: u64) {
        let order = self.truncation_order();
        let terms = pentagonal(order / a);
        let a = a as usize;
        for i in 1..self.coeffs.len() {
            let mut acc = Integer::new();
            for &(e, negative) in &terms {
                let shift = e * a;
                if shift > i {
                    break;
                }
                if negative {
                    acc += &self.coeffs[i - shift];
                } else {
                    acc -= &self.coeffs[i - shift];
                }
            }
            self.coeffs[i] += acc;
        }
    }
}

/// A finite product `prod (q^a; q^a)_inf^e`. Scales are positive; duplicate
/// scales are merged and vanishing exponents dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    factors: BTreeMap<u64, i64>,
}

impl EtaQuotientSpec {
    pub fn new<I: IntoIterator<Item = (u64, i64)>>(factors: I) -> Result<Self> {
        let mut merged = BTreeMap::new();
        for (scale, exp) in factors {
            if scale == 0 {
                return Err(Error::InvalidArgument("eta quotient scales must be positive".into()));
            }
            *merged.entry(scale).or_insert(0) += exp;
        }
        merged.retain(|_, e| *e != 0);
        Ok(EtaQuotientSpec { factors: merged })
    }

    /// `(q^4;q^4) / ((q;q)^2 (q^2;q^2))`, the cubic overpartition generating function.
    pub fn overcubic() -> Self {
        EtaQuotientSpec::new([(1, -2), (2, -1), (4, 1)]).expect("valid constant spec")
    }

    /// `(scale, exponent)` pairs in increasing scale order.
    pub fn factors(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.factors.iter().map(|(&a, &e)| (a, e))
    }
}

/// Expand an eta quotient up to and including `q^nmax`.
pub fn expand_eta_quotient(spec: &EtaQuotientSpec, nmax: u64) -> Result<PowerSeries> {
    let mut series = PowerSeries::one(nmax)?;
    for (a, e) in spec.factors() {
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                series.mul_euler(a);
            } else {
                series.div_euler(a);
            }
        }
    }
    Ok(series)
}

/// Coefficients `a(0..=nmax)` of the cubic overpartition generating function.
pub fn overcubic_table(nmax: u64) -> Result<PowerSeries> {
    expand_eta_quotient(&EtaQuotientSpec::overcubic(), nmax)
}

/// The values `a(0..=nmax)` with coverage-checked access.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    values: Vec<Integer>,
}

impl PartitionTable {
    pub fn new(nmax: u64) -> Result<Self> {
        Ok(PartitionTable {
            values: overcubic_table(nmax)?.into_coeffs(),
        })
    }

    /// Wrap precomputed values (for instance loaded from a cache file).
    pub fn from_values(values: Vec<Integer>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("a table needs at least a(0)".into()));
        }
        Ok(PartitionTable { values })
    }

    pub fn nmax(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn values(&self) -> &[Integer] {
        &self.values
    }

    /// Fail unless every index up to `n` is present.
    pub fn require(&self, n: u64) -> Result<()> {
        if n > self.nmax() {
            return Err(Error::Coverage {
                needed: n,
                available: self.nmax(),
            });
        }
        Ok(())
    }

    pub fn get(&self, n: u64) -> Result<&Integer> {
        self.require(n)?;
        Ok(&self.values[n as usize])
    }

    /// Unchecked access for callers that already called [`Self::require`].
    pub(crate) fn at(&self, n: u64) -> &Integer {
        &self.values[n as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn euler_function_and_its_inverse() {
        let e = expand_eta_quotient(&EtaQuotientSpec::new([(1, 1)]).unwrap(), 7).unwrap();
        assert_eq!(ints(&e), [1, -1, -1, 0, 0, 1, 0, 1]);
        let p = expand_eta_quotient(&EtaQuotientSpec::new([(1, -1)]).unwrap(), 5).unwrap();
        assert_eq!(ints(&p), [1, 1, 2, 3, 5, 7]);
        let empty = expand_eta_quotient(&EtaQuotientSpec::default(), 3).unwrap();
        assert_eq!(ints(&empty), [1, 0, 0, 0]);
    }

    #[test]
    fn overcubic_small_values() {
        let t = overcubic_table(12).unwrap();
        assert_eq!(ints(&t), [1, 2, 6, 12, 26, 48, 92, 160, 282, 470, 784, 1260, 2020]);
        assert_eq!(ints(&overcubic_table(0).unwrap()), [1]);
    }

    #[test]
    fn a_of_100() {
        let t = overcubic_table(100).unwrap();
        assert_eq!(t.coeff(100).unwrap().to_string(), "13080871050922");
    }

    #[test]
    fn spec_merges_and_rejects() {
        let s = EtaQuotientSpec::new([(2, 1), (1, -1), (2, -3), (3, 2), (3, -2)]).unwrap();
        assert_eq!(s.factors().collect::<Vec<_>>(), [(1, -1), (2, -2)]);
        assert!(EtaQuotientSpec::new([(0, 1)]).is_err());
    }

    #[test]
    fn inverse_requires_unit() {
        let s = PowerSeries::from_coeffs(vec![2.into(), 1.into()]).unwrap();
        assert!(s.inverse().is_err());
        let s = PowerSeries::from_coeffs(vec![(-1).into(), 1.into(), 0.into()]).unwrap();
        let inv = s.inverse().unwrap();
        assert_eq!(ints(&s.mul(&inv)), [1, 0, 0]);
    }

    #[test]
    fn absurd_order_reports_allocation_failure() {
        assert!(matches!(
            overcubic_table(u64::MAX),
            Err(Error::Allocation(_))
        ));
        assert!(matches!(
            overcubic_table(1 << 60),
            Err(Error::Allocation(_))
        ));
    }

    #[test]
    fn table_coverage() {
        let t = PartitionTable::new(10).unwrap();
        assert_eq!(*t.get(9).unwrap(), 470);
        assert_eq!(
            t.get(11),
            Err(Error::Coverage {
                needed: 11,
                available: 10
            })
        );
    }
}
