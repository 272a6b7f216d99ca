use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::formulas::max_s;
use super::table::{coset_count, table_row, RowParams, SchemeKind, SchemePoint};
use crate::error::{Error, Result};

/// Default cap on ell for per-ell rows; larger ell only appear through the
/// coset-count sweep.
pub const PER_ELL_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub n: u64,
    pub k: u64,
    pub e: u64,
    pub q: u64,
    pub ell_min: BigUint,
    pub ell_max: BigUint,
    /// Per-ell rows stop here.
    pub per_ell_limit: u64,
}

impl SweepConfig {
    pub fn new(n: u64, k: u64, e: u64, q: u64, ell_min: u64, ell_max: u64) -> SweepConfig {
        SweepConfig { n, k, e, q, ell_min: ell_min.into(), ell_max: ell_max.into(), per_ell_limit: PER_ELL_LIMIT }
    }

    fn contains(&self, ell: &BigUint) -> bool {
        *ell >= self.ell_min && *ell <= self.ell_max
    }
}

/// Smallest a | ell with n < q^a meeting the erasure condition, and the
/// largest admissible s < a.
pub fn choose_one_coset(n: u64, k: u64, e: u64, q: u64, ell: u64) -> Option<(u32, u32)> {
    let r = n - k;
    (1..=ell.min(63) as u32).filter(|&a| ell.is_multiple_of(a as u64)).find_map(|a| {
        let qa = q.checked_pow(a)?;
        if n >= qa {
            return None;
        }
        let s = max_s(q, r).min(a - 1);
        let need = e * (e - 1) * ((a - s) as u64).pow(2);
        (e == 1 || 2 * a as u64 >= need).then_some((a, s))
    })
}

/// Smallest a | ell, a < ell, with n <= 2(q^a - 1) and ell/a <= n - k.
pub fn choose_two_coset(n: u64, k: u64, q: u64, ell: u64) -> Option<u32> {
    (1..ell.min(64) as u32).filter(|&a| ell.is_multiple_of(a as u64)).find(|&a| {
        q.checked_pow(a).is_some_and(|v| n <= 2 * (v - 1)) && ell / a as u64 <= n - k && n.is_multiple_of(2)
    })
}

fn per_ell(cfg: &SweepConfig, ell: u64, out: &mut Vec<SchemePoint>) {
    let SweepConfig { n, k, e, q, .. } = *cfg;
    let r = n - k;
    let base = |a: u32, s: u32| RowParams::new(n, k, e, q, ell, a, s);
    let missing = |kind: SchemeKind, why: &str| {
        let mut p = table_row(kind, &base(0, 0));
        p.feasible = false;
        p.symbols = None;
        p.notes = vec![why.to_string()];
        p
    };
    out.push(table_row(SchemeKind::Msr, &base(0, 0)));
    if e == 1 {
        let s = (max_s(q, r) as u64).min(ell) as u32;
        out.push(table_row(SchemeKind::FullLength, &base(ell as u32, s)));
        out.push(match choose_one_coset(n, k, 1, q, ell) {
            Some((a, s)) => table_row(SchemeKind::OneCoset, &base(a, s)),
            None => missing(SchemeKind::OneCoset, "no a | ell with n < q^a"),
        });
        out.push(match choose_two_coset(n, k, q, ell) {
            Some(a) => table_row(SchemeKind::TwoCoset, &base(a, 0)),
            None => missing(SchemeKind::TwoCoset, "no a | ell with n <= 2(q^a-1) and ell/a <= r"),
        });
    } else {
        out.push(table_row(SchemeKind::Mardia1, &base(ell as u32, ell.saturating_sub(1) as u32)));
        out.push(table_row(SchemeKind::Mardia2, &base(ell as u32, 0)));
        out.push(match choose_one_coset(n, k, e, q, ell) {
            Some((a, s)) => table_row(SchemeKind::OneCosetMulti, &base(a, s)),
            None => missing(SchemeKind::OneCosetMulti, "no a | ell with n < q^a and a >= e(e-1)(a-s)^2/2"),
        });
    }
}

fn per_a(cfg: &SweepConfig, out: &mut Vec<SchemePoint>) {
    let SweepConfig { n, k, e, q, .. } = *cfg;
    let r = n - k;
    let mut a = 1u32;
    while let Some(m) = coset_count(n, q, a) {
        let mut push = |kind: SchemeKind, ell: BigUint| {
            if cfg.contains(&ell) {
                out.push(table_row(kind, &RowParams { ell, ..RowParams::new(n, k, e, q, 0, a, 0) }));
            }
        };
        let mm = BigUint::from(m).pow(m as u32) * a;
        if e == 1 {
            push(SchemeKind::MultiCoset1, BigUint::from(r).pow(m as u32) * a);
            push(SchemeKind::MultiCoset2, mm);
        } else {
            push(SchemeKind::MultiCosetMulti, mm);
        }
        if m == 1 {
            break;
        }
        a += 1;
    }
}

/// All scheme points with ell in the configured range, ordered by ell then
/// scheme.
pub fn sweep(cfg: &SweepConfig) -> Result<Vec<SchemePoint>> {
    if cfg.q < 2 || cfg.k == 0 || cfg.k >= cfg.n || cfg.e == 0 || cfg.e > cfg.n - cfg.k {
        return Err(Error::InvalidParameter(format!(
            "sweep needs q >= 2, 0 < k < n, 1 <= e <= n-k; got n={} k={} e={} q={}",
            cfg.n, cfg.k, cfg.e, cfg.q
        )));
    }
    let mut out = Vec::new();
    if cfg.ell_min > cfg.ell_max {
        return Ok(out);
    }
    let lo = cfg.ell_min.to_u64().unwrap_or(u64::MAX).max(1);
    let hi = cfg.ell_max.to_u64().unwrap_or(u64::MAX).min(cfg.per_ell_limit);
    for ell in lo..=hi {
        per_ell(cfg, ell, &mut out);
    }
    per_a(cfg, &mut out);
    out.sort_by(|x, y| x.ell.cmp(&y.ell).then(x.scheme.cmp(&y.scheme)).then(x.a.cmp(&y.a)));
    Ok(out)
}

/// Six significant digits, trailing zeros trimmed.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..6).contains(&exp) {
        let s = format!("{:.*}", (5 - exp).max(0) as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.5e}");
        let (m, e) = s.split_once('e').unwrap_or((&s, "0"));
        let m = if m.contains('.') { m.trim_end_matches('0').trim_end_matches('.') } else { m };
        format!("{m}e{e}")
    }
}

fn log10_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top = (x >> shift).to_f64().unwrap_or(0.0);
    top.log10() + shift as f64 * 2f64.log10()
}

fn ell_text(p: &SchemePoint) -> String {
    if p.ell_approx && p.ell.bits() > 50 {
        format!("10^{}", fmt6(log10_big(&p.ell)))
    } else {
        p.ell.to_string()
    }
}

pub const CSV_HEADER: [&str; 13] =
    ["scheme", "n", "k", "e", "d", "q", "ell", "a", "s", "bits", "normalized", "feasible", "notes"];

fn csv_fields(p: &SchemePoint) -> [String; 13] {
    let mut notes = p.notes.clone();
    if p.ell_approx && !notes.iter().any(|s| s.contains("approx")) {
        notes.push("ell approx".into());
    }
    [
        p.scheme.name().to_string(),
        p.n.to_string(),
        p.k.to_string(),
        p.e.to_string(),
        p.d.to_string(),
        p.q.to_string(),
        ell_text(p),
        p.a.to_string(),
        p.s.to_string(),
        p.bits().map(fmt6).unwrap_or_default(),
        p.normalized().and_then(|v| v.to_f64()).map(fmt6).unwrap_or_default(),
        p.feasible.to_string(),
        notes.join("; "),
    ]
}

pub fn to_csv(points: &[SchemePoint]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for p in points {
        w.write_record(csv_fields(p)).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// JSON mirror of the CSV with the exact values alongside.
pub fn to_json(points: &[SchemePoint]) -> serde_json::Value {
    let rows = points
        .iter()
        .map(|p| {
            let f = csv_fields(p);
            let mut obj = serde_json::Map::new();
            for (key, val) in CSV_HEADER.iter().zip(f) {
                obj.insert((*key).into(), serde_json::Value::String(val));
            }
            obj.insert("symbols_exact".into(), p.symbols.as_ref().map(|s| s.to_string()).into());
            obj.insert("normalized_exact".into(), p.normalized().map(|s| s.to_string()).into());
            obj.insert("bound".into(), serde_json::to_value(p.bound).unwrap_or_default());
            serde_json::Value::Object(obj)
        })
        .collect();
    serde_json::Value::Array(rows)
}

/// Lowest normalized value per ell among feasible rows, skipping the
/// comparator row.
pub fn best_per_ell(points: &[SchemePoint]) -> Vec<(BigUint, SchemeKind)> {
    let mut out: Vec<(BigUint, SchemeKind, num_rational::BigRational)> = Vec::new();
    for p in points.iter().filter(|p| p.feasible && p.scheme != SchemeKind::Msr) {
        let Some(v) = p.normalized() else { continue };
        match out.iter_mut().find(|(l, _, _)| *l == p.ell) {
            Some(slot) if v < slot.2 => *slot = (p.ell.clone(), p.scheme, v),
            Some(_) => {}
            None => out.push((p.ell.clone(), p.scheme, v)),
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out.into_iter().map(|(l, k, _)| (l, k)).collect()
}
