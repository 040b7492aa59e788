//! Exact integer scans: log-concavity, subadditivity and the generalized
//! log-concavity `a(n)^2 > a(n-m) a(n+m)`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use rug::Integer;

use crate::error::{Error, Result};
use crate::qseries::PartitionTable;

/// All `n` in `lo..=hi` where `a(n)^2 > a(n-1) a(n+1)` fails.
pub fn log_concavity_failures(lo: u64, hi: u64, table: &PartitionTable) -> Result<BTreeSet<u64>> {
    if lo == 0 {
        return Err(Error::InvalidArgument("log-concavity needs n >= 1".into()));
    }
    if lo > hi {
        return Ok(BTreeSet::new());
    }
    table.require(hi + 1)?;
    Ok((lo..=hi)
        .into_par_iter()
        .filter(|&n| {
            let sq = Integer::from(table.at(n).square_ref());
            let prod = Integer::from(table.at(n - 1) * table.at(n + 1));
            sq <= prod
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect())
}

/// Unordered pairs `{n, m}` (stored with `n <= m`) where `a(n) a(m) >= a(n+m)`
/// fails, and those where it holds with equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubadditivityReport {
    pub max_sum: u64,
    pub violations: BTreeSet<(u64, u64)>,
    pub equalities: BTreeSet<(u64, u64)>,
}

pub fn subadditivity_scan(max_sum: u64, table: &PartitionTable) -> Result<SubadditivityReport> {
    table.require(max_sum)?;
    let rows: Vec<(Vec<(u64, u64)>, Vec<(u64, u64)>)> = (1..=max_sum / 2)
        .into_par_iter()
        .map(|n| {
            let mut violations = Vec::new();
            let mut equalities = Vec::new();
            for m in n..=max_sum - n {
                let prod = Integer::from(table.at(n) * table.at(m));
                match prod.cmp(table.at(n + m)) {
                    std::cmp::Ordering::Less => violations.push((n, m)),
                    std::cmp::Ordering::Equal => equalities.push((n, m)),
                    std::cmp::Ordering::Greater => {}
                }
            }
            (violations, equalities)
        })
        .collect();
    let mut report = SubadditivityReport {
        max_sum,
        ..Default::default()
    };
    for (v, e) in rows {
        report.violations.extend(v);
        report.equalities.extend(e);
    }
    Ok(report)
}

/// Pairs `(n, m)` with `1 < m < n <= n_max` where `a(n)^2 > a(n-m) a(n+m)` fails.
pub fn general_log_concavity_scan(n_max: u64, table: &PartitionTable) -> Result<BTreeSet<(u64, u64)>> {
    if n_max >= 3 {
        table.require(2 * n_max - 1)?;
    }
    let rows: Vec<Vec<(u64, u64)>> = (3..=n_max.max(2))
        .into_par_iter()
        .map(|n| {
            let sq = Integer::from(table.at(n).square_ref());
            (2..n)
                .filter(|&m| sq <= Integer::from(table.at(n - m) * table.at(n + m)))
                .map(|m| (n, m))
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_log_concavity_failures() {
        let t = PartitionTable::new(40).unwrap();
        let f = log_concavity_failures(1, 9, &t).unwrap();
        assert_eq!(f.into_iter().collect::<Vec<_>>(), [1, 3, 5, 7, 9]);
        assert!(log_concavity_failures(10, 39, &t).unwrap().is_empty());
        assert!(log_concavity_failures(10, 40, &t).is_err());
        assert!(log_concavity_failures(0, 5, &t).is_err());
    }

    #[test]
    fn subadditivity_small() {
        let t = PartitionTable::new(10).unwrap();
        let r = subadditivity_scan(10, &t).unwrap();
        assert_eq!(r.violations.into_iter().collect::<Vec<_>>(), [(1, 1), (1, 3)]);
        assert_eq!(r.equalities.into_iter().collect::<Vec<_>>(), [(1, 2)]);
    }

    #[test]
    fn general_scan_small() {
        let t = PartitionTable::new(120).unwrap();
        assert!(general_log_concavity_scan(60, &t).unwrap().is_empty());
        let sq = Integer::from(t.at(50).square_ref());
        assert!(sq > Integer::from(t.at(40) * t.at(60)));
    }
}
