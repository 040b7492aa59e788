use std::path::Path;

use overcubic::analytic::{check_bessel_bounds, Verdict};
use overcubic::inequalities::{
    general_log_concavity_scan, log_concavity_failures, ratio_bounds, solve_bm, subadditivity_scan,
    turan_threshold,
};
use overcubic::qseries::PartitionTable;
use overcubic::rademacher::{default_digits, evaluate, exact_value, main_term_sandwich};
use overcubic::transformcheck::{
    verify_transformation, verify_transformation_with_phase_shift, TransformCase, TransformTarget,
};
use rayon::prelude::*;
use rug::{Integer, Rational};

use crate::args::{Command, Method, ScanKind, Section, TableAction};
use crate::cache;
use crate::config::RunConfig;
use crate::report::{put_ball, radius, row, Report, Row, DECIMALS};
use crate::{CliError, Result};

/// Published five-term partial sums.
pub const TABLE_ROWS: [(u64, &str); 4] = [
    (22, "110011.99958"),
    (12, "2020.0026"),
    (18, "24961.9983"),
    (87, "1166034258271.996"),
];

/// Published `a(100)` contributions by `k`, and their total.
pub const TALLY_100: [(u64, &str); 10] = [
    (1, "13080870093246.877"),
    (2, "957724.348"),
    (3, "-49.363"),
    (6, "-0.170"),
    (5, "0.203"),
    (10, "0.005"),
    (7, "0.040"),
    (14, "0.001"),
    (9, "0.001"),
    (18, "0.001"),
];
pub const TALLY_100_SUM: &str = "13080871050921.943";

/// Largest accepted difference from a printed value.
pub const TABLE_TOLERANCE: (i64, i64) = (1, 100);

const SENTINEL_FLOOR: f64 = 1e-6;

pub fn dispatch(command: &Command, config: &RunConfig) -> Result<Report> {
    match command {
        Command::Value { n, method } => value(*n, *method, config),
        Command::VerifyTable { only } => verify_table(*only, config),
        Command::Scan { kind } => scan(kind, config),
        Command::Transformcheck {
            case,
            h,
            k,
            z,
            z_imag,
            tolerance,
        } => transformcheck(case, *h, *k, (*z, *z_imag), *tolerance, config),
        Command::Bm { m, expect } => bm(*m, expect.as_deref(), config),
        Command::Bounds {
            bessel,
            window,
            exponent,
        } => bounds(bessel, window, exponent, config),
        Command::Table { action } => table(action, config),
    }
}

fn table_for(config: &RunConfig, nmax: u64) -> Result<PartitionTable> {
    cache::load_or_build(config.cache_path.as_deref(), nmax)
}

/// A fraction such as `51/2` or a decimal such as `6.011`.
fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || CliError::Usage(format!("not a rational number: {s:?}"));
    if s.contains('.') {
        return parse_decimal(s).ok_or_else(bad);
    }
    s.parse::<Rational>().map_err(|_| bad())
}

fn value(n: u64, method: Method, config: &RunConfig) -> Result<Report> {
    let mut report = Report::new("value").param("n", n).param("method", format!("{method:?}").to_lowercase());
    let mut results: Vec<Integer> = Vec::new();
    if matches!(method, Method::Qseries | Method::Both) {
        let table = table_for(config, n)?;
        let v = table.get(n)?.clone();
        report.findings.push(row([("method", "qseries".into()), ("value", v.to_string())]));
        results.push(v);
    }
    if matches!(method, Method::Rademacher | Method::Both) {
        if n == 0 {
            return Err(CliError::Usage("the series method needs n >= 1".into()));
        }
        let digits = config.precision_digits.max(default_digits(n));
        let b = evaluate(n, config.terms_per_series, digits)?;
        let v = match &b.recovered {
            Some(v) => v.clone(),
            None => exact_value(n)?,
        };
        let mut r = row([
            ("method", "rademacher".into()),
            ("value", v.to_string()),
            ("terms_per_series", config.terms_per_series.to_string()),
            ("tail_bound", b.tail_bound.upper().to_string_radix(10, Some(3))),
        ]);
        put_ball(&mut r, "partial_sum", &b.partial_sum);
        report.findings.push(r);
        results.push(v);
    }
    report.ok = results.windows(2).all(|w| w[0] == w[1]);
    report.verified_range = Some((n, n));
    Ok(report)
}

/// Exact value of a decimal literal such as `-49.363`.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: Integer = format!("{int}{frac}").parse().ok()?;
    Some(Rational::from((digits, Integer::from(Integer::u_pow_u(10, frac.len() as u32)))))
}

fn within(diff: &Rational) -> bool {
    let tol = Rational::from(TABLE_TOLERANCE);
    Rational::from(diff.abs_ref()) <= tol
}

fn compare(row: &mut Row, printed: &str, computed: &overcubic::analytic::Ball) -> bool {
    let p = parse_decimal(printed).expect("decimal literal");
    let mid = computed.mid().to_rational().expect("finite");
    let diff = Rational::from(&mid - &p);
    let diff_ball = overcubic::analytic::Ball::from_rational(&diff, computed.prec());
    let ok = within(&diff) && computed.rad_f64() < 1e-6;
    row.insert("printed".into(), printed.into());
    put_ball(row, "computed", computed);
    row.insert("difference".into(), diff_ball.to_fixed(6));
    row.insert("within_tolerance".into(), if ok { "yes" } else { "no" }.into());
    ok
}

fn verify_table(only: Option<Section>, config: &RunConfig) -> Result<Report> {
    let mut report = Report::new("verify-table")
        .param("terms_per_series", 5)
        .param("tolerance", "0.01")
        .param("decimals", DECIMALS)
        .param("only", only.map_or("all".into(), |s| format!("{s:?}").to_lowercase()));
    let mut ok = true;
    let rows: &[(u64, &str)] = if only == Some(Section::Tally) { &[] } else { &TABLE_ROWS };
    for &(n, printed) in rows {
        let b = evaluate(n, 5, config.precision_digits.max(default_digits(n)))?;
        let mut r = row([("n", n.to_string()), ("term", "sum".into())]);
        ok &= compare(&mut r, printed, &b.partial_sum);
        r.insert("recovered".into(), b.recovered.map_or("none".into(), |v| v.to_string()));
        report.findings.push(r);
    }
    if only == Some(Section::Rows) {
        report.ok = ok;
        return Ok(report);
    }
    let b = evaluate(100, 5, config.precision_digits.max(default_digits(100)))?;
    for (k, printed) in TALLY_100 {
        let (_, c) = b.terms().find(|(kk, _)| *kk == k).expect("k within the first five terms");
        let mut r = row([("n", "100".into()), ("term", format!("k={k}"))]);
        ok &= compare(&mut r, printed, c);
        report.findings.push(r);
    }
    let mut r = row([("n", "100".into()), ("term", "sum".into())]);
    ok &= compare(&mut r, TALLY_100_SUM, &b.partial_sum);
    r.insert("recovered".into(), b.recovered.map_or("none".into(), |v| v.to_string()));
    report.findings.push(r);
    report.ok = ok;
    Ok(report)
}

fn scan(kind: &ScanKind, config: &RunConfig) -> Result<Report> {
    let horizon = config.horizon;
    match kind {
        ScanKind::Logconcavity { from, to } => {
            let to = to.unwrap_or(horizon);
            let table = table_for(config, to + 1)?;
            let failures = log_concavity_failures(*from, to, &table)?;
            let mut report = Report::new("logconcavity").param("from", from).param("to", to);
            report.findings = failures.iter().map(|n| row([("n", n.to_string())])).collect();
            report.verified_range = Some((*from, to));
            Ok(report)
        }
        ScanKind::Turan { d } => {
            let max_d = d.iter().copied().max().unwrap_or(2);
            let table = table_for(config, horizon + u64::from(max_d))?;
            let mut report = Report::new("turan").param("horizon", horizon);
            for &deg in d {
                let t = turan_threshold(deg, horizon, &table)?;
                let failures: Vec<String> = t.failures.iter().map(u64::to_string).collect();
                report.findings.push(row([
                    ("d", deg.to_string()),
                    ("candidate_n", t.candidate_n.to_string()),
                    ("last_failure", t.last_failure.map_or("none".into(), |f| f.to_string())),
                    ("failures", failures.join(" ")),
                ]));
            }
            report.verified_range = Some((1, horizon));
            Ok(report)
        }
        ScanKind::Subadd { max_sum } => {
            let max_sum = max_sum.unwrap_or(horizon);
            let table = table_for(config, max_sum)?;
            let r = subadditivity_scan(max_sum, &table)?;
            let mut report = Report::new("subadd").param("max_sum", max_sum);
            for (set, label) in [(&r.violations, "violation"), (&r.equalities, "equality")] {
                for (n, m) in set {
                    report.findings.push(row([
                        ("n", n.to_string()),
                        ("m", m.to_string()),
                        ("relation", label.into()),
                    ]));
                }
            }
            report.verified_range = Some((2, max_sum));
            Ok(report)
        }
        ScanKind::Genlogconcavity { n_max } => {
            let n_max = n_max.unwrap_or(horizon);
            let table = table_for(config, (2 * n_max).saturating_sub(1).max(1))?;
            let v = general_log_concavity_scan(n_max, &table)?;
            let mut report = Report::new("genlogconcavity").param("n_max", n_max);
            report.findings = v
                .iter()
                .map(|(n, m)| row([("n", n.to_string()), ("m", m.to_string())]))
                .collect();
            report.verified_range = Some((3, n_max));
            Ok(report)
        }
        ScanKind::Ratio { from, to } => {
            let to = to.unwrap_or(horizon).max(*from);
            let table = table_for(config, to + 1)?;
            let mut report = Report::new("ratio")
                .param("from", from)
                .param("to", to)
                .param("precision", config.precision_digits)
                .param("decimals", DECIMALS);
            let results: Vec<_> = (*from..=to)
                .into_par_iter()
                .map(|n| ratio_bounds(n, &table, config.precision_digits).map(|r| (n, r)))
                .collect::<std::result::Result<_, _>>()?;
            for (n, r) in results {
                report.ok &= r.holds == Verdict::Holds;
                let mut f = row([("n", n.to_string()), ("holds", r.holds.to_string())]);
                put_ball(&mut f, "upsilon1", &r.upsilon1);
                put_ball(&mut f, "ratio", &r.ratio);
                put_ball(&mut f, "upsilon2", &r.upsilon2);
                report.findings.push(f);
            }
            report.verified_range = Some((*from, to));
            Ok(report)
        }
    }
}

fn transformcheck(
    case: &str,
    h: i64,
    k: u64,
    z: (f64, f64),
    tolerance: f64,
    config: &RunConfig,
) -> Result<Report> {
    let target: TransformTarget = case.parse().map_err(|_| {
        let names: Vec<&str> = TransformTarget::ALL.iter().map(|t| t.name()).collect();
        CliError::Usage(format!("unknown case {case:?}; expected one of {}", names.join(", ")))
    })?;
    let c = TransformCase {
        z,
        ..TransformCase::new(target, h, k, z.0, config.precision_digits)
    };
    let residual = verify_transformation(&c)?;
    let sentinel = verify_transformation_with_phase_shift(&c, &Rational::from((1, 6 * k)))?;
    let mut report = Report::new("transformcheck")
        .param("case", target.name())
        .param("h", h)
        .param("k", k)
        .param("z_re", z.0)
        .param("z_im", z.1)
        .param("precision", config.precision_digits)
        .param("tolerance", tolerance);
    report.ok = residual.upper() < tolerance && sentinel.lower() > SENTINEL_FLOOR;
    report.findings.push(row([
        ("residual_upper", residual.upper().to_string_radix(10, Some(3))),
        ("sentinel_lower", sentinel.lower().to_string_radix(10, Some(3))),
    ]));
    Ok(report)
}

fn bm(m: u32, expect: Option<&str>, config: &RunConfig) -> Result<Report> {
    let b = solve_bm(m, config.precision_digits)?;
    let mut report = Report::new("bm").param("m", m).param("decimals", DECIMALS);
    let mut r = row([("m", m.to_string())]);
    put_ball(&mut r, "value", &b);
    if let Some(e) = expect {
        let e = parse_rational(e)?;
        let mid = b.mid().to_rational().expect("finite");
        let diff = Rational::from(&mid - &e).abs();
        // The radius is far below the tolerance at any accepted precision.
        report.ok = diff < Rational::from((1, 1000)) && b.rad_f64() < 1e-6;
        r.insert("expected".into(), expect.unwrap_or_default().into());
        r.insert("difference".into(), overcubic::analytic::Ball::from_rational(&diff, b.prec()).to_fixed(6));
    }
    report.findings.push(r);
    Ok(report)
}

fn verdict(v: Option<Verdict>) -> String {
    v.map_or("n/a".into(), |v| v.to_string())
}

fn bounds(bessel: &[String], window: &[u64], exponent: &str, config: &RunConfig) -> Result<Report> {
    if bessel.is_empty() && window.is_empty() {
        return Err(CliError::Usage("give at least one --bessel or --window value".into()));
    }
    let e = parse_rational(exponent)?;
    let mut report = Report::new("bounds")
        .param("precision", config.precision_digits)
        .param("exponent", &e);
    for s in bessel {
        let s = parse_rational(s)?;
        let r = check_bessel_bounds(&s, config.precision_digits)?;
        report.ok &= r.overall() == Verdict::Holds;
        let mut f = row([
            ("check", "bessel".into()),
            ("s", s.to_string()),
            ("lower", verdict(r.lower_ok)),
            ("upper", verdict(r.upper_ok)),
            ("lower_s30", verdict(r.lower30_ok)),
            ("effective_lower", r.effective_lower_ok.to_string()),
            ("effective_upper", r.effective_upper_ok.to_string()),
            ("holds", r.overall().to_string()),
        ]);
        put_ball(&mut f, "i2", &r.i2);
        report.findings.push(f);
    }
    if let Some(&max_n) = window.iter().max() {
        let table = table_for(config, max_n)?;
        for &n in window {
            let r = main_term_sandwich(n, &e, &table, config.precision_digits)?;
            report.ok &= r.holds == Verdict::Holds;
            report.findings.push(row([
                ("check", "window".into()),
                ("n", n.to_string()),
                ("relative_gap", r.relative_gap.to_sci(6)),
                ("relative_gap_radius", radius(&r.relative_gap)),
                ("width", r.width.to_sci(6)),
                ("holds", r.holds.to_string()),
            ]));
        }
    }
    Ok(report)
}

fn require_cache(config: &RunConfig) -> Result<&Path> {
    config.cache_path.as_deref().ok_or_else(|| {
        CliError::Usage(format!("no cache file: pass --cache or set {}", crate::CACHE_ENV))
    })
}

fn table(action: &TableAction, config: &RunConfig) -> Result<Report> {
    let path = require_cache(config)?;
    match action {
        TableAction::Build { nmax } => {
            let t = PartitionTable::new(*nmax)?;
            cache::write(path, &t)?;
            let mut report = Report::new("table-build").param("nmax", nmax);
            report.findings.push(row([("path", path.display().to_string())]));
            report.verified_range = Some((0, *nmax));
            Ok(report)
        }
        TableAction::Check => {
            let cached = cache::read(path)?;
            let fresh = PartitionTable::new(cached.nmax())?;
            let mismatches: Vec<String> = cached
                .values()
                .iter()
                .zip(fresh.values())
                .enumerate()
                .filter(|(_, (a, b))| a != b)
                .map(|(n, _)| n.to_string())
                .collect();
            let mut report = Report::new("table-check").param("nmax", cached.nmax());
            report.ok = mismatches.is_empty();
            report.findings.push(row([
                ("path", path.display().to_string()),
                ("mismatches", mismatches.join(" ")),
            ]));
            report.verified_range = Some((0, cached.nmax()));
            Ok(report)
        }
    }
}
