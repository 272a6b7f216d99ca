use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::formulas::{big, floor_log, frac, int, msr_bound, multi_erasure_multi_coset_bandwidth};
use crate::schemes::layout_from_h;

/// Rows of the comparison tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    /// Full-length trace repair: (n-1)(ell-s), n <= q^ell.
    FullLength,
    /// < (ell/r)(n+1) with n = log_r ell.
    YeBarg,
    /// (ell/r)(n-1) with ell ~ n^n.
    TamoYeBarg,
    OneCoset,
    TwoCoset,
    #[serde(rename = "multi_coset_1")]
    MultiCoset1,
    #[serde(rename = "multi_coset_2")]
    MultiCoset2,
    Msr,
    /// (n-e)e - e(e-1)(q-1)/2 at a = ell.
    #[serde(rename = "mardia_1")]
    Mardia1,
    /// min over e' >= e of (n-e')(ell - floor(log_q((n-k+e'-1)/(2e'-1)))).
    #[serde(rename = "mardia_2")]
    Mardia2,
    /// e d ell/(d-k+e) with ell ~ n^n.
    YeBargMulti,
    OneCosetMulti,
    MultiCosetMulti,
    /// e independent single-erasure repairs in one coset.
    SeparateOneCoset,
    /// e independent single-erasure repairs in multiple cosets.
    SeparateMultiCoset,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 15] = [
        SchemeKind::FullLength,
        SchemeKind::YeBarg,
        SchemeKind::TamoYeBarg,
        SchemeKind::OneCoset,
        SchemeKind::TwoCoset,
        SchemeKind::MultiCoset1,
        SchemeKind::MultiCoset2,
        SchemeKind::Msr,
        SchemeKind::Mardia1,
        SchemeKind::Mardia2,
        SchemeKind::YeBargMulti,
        SchemeKind::OneCosetMulti,
        SchemeKind::MultiCosetMulti,
        SchemeKind::SeparateOneCoset,
        SchemeKind::SeparateMultiCoset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::FullLength => "full_length",
            SchemeKind::YeBarg => "ye_barg",
            SchemeKind::TamoYeBarg => "tamo_ye_barg",
            SchemeKind::OneCoset => "one_coset",
            SchemeKind::TwoCoset => "two_coset",
            SchemeKind::MultiCoset1 => "multi_coset_1",
            SchemeKind::MultiCoset2 => "multi_coset_2",
            SchemeKind::Msr => "msr",
            SchemeKind::Mardia1 => "mardia_1",
            SchemeKind::Mardia2 => "mardia_2",
            SchemeKind::YeBargMulti => "ye_barg_multi",
            SchemeKind::OneCosetMulti => "one_coset_multi",
            SchemeKind::MultiCosetMulti => "multi_coset_multi",
            SchemeKind::SeparateOneCoset => "separate_one_coset",
            SchemeKind::SeparateMultiCoset => "separate_multi_coset",
        }
    }

    pub fn from_name(s: &str) -> Option<SchemeKind> {
        SchemeKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// How the formula value relates to the true bandwidth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Exact,
    AtMost,
    LessThan,
}

/// Inputs of a table row. `d` defaults to n - e.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowParams {
    pub n: u64,
    pub k: u64,
    pub e: u64,
    pub d: Option<u64>,
    pub q: u64,
    pub ell: BigUint,
    pub a: u32,
    pub s: u32,
    /// Erasure layout h for the multi-coset multi-erasure row; default h1 = e.
    pub h: Option<Vec<usize>>,
}

impl RowParams {
    pub fn new(n: u64, k: u64, e: u64, q: u64, ell: u64, a: u32, s: u32) -> RowParams {
        RowParams { n, k, e, d: None, q, ell: BigUint::from(ell), a, s, h: None }
    }

    pub fn r(&self) -> u64 {
        self.n.saturating_sub(self.k)
    }

    pub fn d(&self) -> u64 {
        self.d.unwrap_or(self.n.saturating_sub(self.e))
    }
}

/// One evaluated row: exact GF(q)-symbol count plus feasibility flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemePoint {
    pub scheme: SchemeKind,
    pub n: u64,
    pub k: u64,
    pub e: u64,
    pub d: u64,
    pub q: u64,
    pub ell: BigUint,
    /// ell is the approximate size of the defining product.
    pub ell_approx: bool,
    pub a: u32,
    pub s: u32,
    /// Exact bandwidth in GF(q)-symbols, absent when the formula is undefined.
    pub symbols: Option<BigRational>,
    pub bound: Bound,
    pub feasible: bool,
    pub notes: Vec<String>,
}

impl SchemePoint {
    /// symbols / (d ell).
    pub fn normalized(&self) -> Option<BigRational> {
        let den = big(&self.ell) * int(self.d);
        if den.is_zero() {
            return None;
        }
        self.symbols.as_ref().map(|s| s / den)
    }

    /// Exact bit count when q = 2.
    pub fn bits_exact(&self) -> Option<BigRational> {
        (self.q == 2).then(|| self.symbols.clone()).flatten()
    }

    pub fn bits(&self) -> Option<f64> {
        self.symbols.as_ref().map(|s| s.to_f64().unwrap_or(f64::INFINITY) * (self.q as f64).log2())
    }
}

/// q^x > n, with x possibly huge.
fn pow_exceeds(q: u64, x: &BigUint, n: u64) -> bool {
    match x.to_u32() {
        Some(x) if x < 128 => (q as u128).checked_pow(x).is_none_or(|v| v > n as u128),
        _ => true,
    }
}

/// n <= q^x, so n distinct evaluation points exist.
fn points_fit(q: u64, x: &BigUint, n: u64) -> bool {
    match x.to_u32() {
        Some(x) if x < 128 => (q as u128).checked_pow(x).is_none_or(|v| v >= n as u128),
        _ => true,
    }
}

fn qa(q: u64, a: u32) -> Option<u64> {
    q.checked_pow(a)
}

/// Multiplicity m = ceil(n/(q^a-1)) of the cosets.
pub(crate) fn coset_count(n: u64, q: u64, a: u32) -> Option<u64> {
    qa(q, a).filter(|&v| v > 1).map(|v| n.div_ceil(v - 1))
}

struct Row {
    p: SchemePoint,
}

impl Row {
    fn flag(&mut self, cond: bool, note: &str) {
        if !cond {
            self.p.feasible = false;
            self.p.notes.push(note.to_string());
        }
    }

    fn note(&mut self, note: &str) {
        self.p.notes.push(note.to_string());
    }
}

/// Evaluate one row exactly, flagging every violated restriction.
pub fn table_row(kind: SchemeKind, params: &RowParams) -> SchemePoint {
    let RowParams { n, k, e, q, a, s, .. } = *params;
    let ell = &params.ell;
    let r = params.r();
    let d = params.d();
    let mut row = Row {
        p: SchemePoint {
            scheme: kind,
            n,
            k,
            e,
            d,
            q,
            ell: ell.clone(),
            ell_approx: false,
            a,
            s,
            symbols: None,
            bound: Bound::Exact,
            feasible: true,
            notes: Vec::new(),
        },
    };
    if k == 0 || k >= n || e == 0 || e > r || d < k || d > n - e.min(n) {
        row.flag(false, "need 0<k<n, 1<=e<=n-k, k<=d<=n-e");
        return row.p;
    }
    let l = big(ell);
    let a_ok = a >= 1 && ell.is_multiple_of(&BigUint::from(a));
    let qa_val = qa(q, a);
    let qs = qa(q, s);
    let qa_minus_2 = || qa_val.map(|v| int(v) - int(2));
    let (sym, bound) = match kind {
        SchemeKind::FullLength => {
            row.flag(points_fit(q, ell, n), "n > q^ell");
            row.flag(qs.is_some_and(|v| v <= r), "q^s > r");
            row.flag(BigUint::from(s) <= *ell, "s > ell");
            (Some(int(n - 1) * (l.clone() - int(s as u64))), Bound::Exact)
        }
        SchemeKind::YeBarg => {
            row.flag(*ell == BigUint::from(r).pow(n as u32), "ell != r^n");
            (Some(frac(l.clone() * int(n + 1), r)), Bound::LessThan)
        }
        SchemeKind::TamoYeBarg => {
            row.p.ell_approx = true;
            row.note("ell approximates n^n");
            (Some(frac(l.clone() * int(n - 1), r)), Bound::Exact)
        }
        SchemeKind::OneCoset | SchemeKind::SeparateOneCoset | SchemeKind::OneCosetMulti => {
            row.flag(a_ok, "a does not divide ell");
            row.flag(qa_val.is_some_and(|v| n < v), "n > q^a - 1");
            row.flag(qs.is_some_and(|v| v <= r), "q^s > r");
            row.flag(s < a, "s >= a");
            if kind == SchemeKind::OneCosetMulti && e > 1 {
                let need = e * (e - 1) * ((a - s.min(a)) as u64).pow(2);
                row.flag(2 * a as u64 >= need, "a < e(e-1)(a-s)^2/2");
                if 2 * a as u64 == need {
                    row.note("elimination system square; nonzero solution not guaranteed");
                }
            }
            if a == 0 || s > a {
                (None, Bound::AtMost)
            } else {
                let per = frac(l.clone() * int((a - s) as u64), a as u64);
                let (helpers, mult, bound) = match kind {
                    SchemeKind::OneCoset => (n - 1, 1, if s + 1 == a { Bound::Exact } else { Bound::AtMost }),
                    SchemeKind::SeparateOneCoset => (n - 1, e, Bound::AtMost),
                    _ => (n - e, e, Bound::AtMost),
                };
                (Some(per * int(helpers * mult)), bound)
            }
        }
        SchemeKind::TwoCoset => {
            row.flag(a_ok, "a does not divide ell");
            row.flag(BigUint::from(a) < *ell, "a = ell leaves a single coset");
            row.flag(qa_val.is_some_and(|v| n <= 2 * (v - 1)), "n > 2(q^a - 1)");
            row.flag(a >= 1 && l.clone() / int(a as u64) <= int(r), "ell/a > r");
            row.flag(n % 2 == 0, "n odd");
            // (n-1)(ell+a)/2 - (ell-a)/2
            let v = frac(int(n - 1) * (l.clone() + int(a as u64)) - (l.clone() - int(a as u64)), 2);
            (Some(v), Bound::Exact)
        }
        SchemeKind::MultiCoset1 | SchemeKind::MultiCoset2 | SchemeKind::SeparateMultiCoset => {
            let m = coset_count(n, q, a);
            row.flag(a >= 1 && m.is_some(), "q^a - 1 must be positive");
            if kind == SchemeKind::MultiCoset1 {
                let want = m.map(|m| BigUint::from(a) * BigUint::from(r).pow(m as u32));
                row.flag(want.as_ref() == Some(ell), "ell != a r^m");
            } else {
                row.p.ell_approx = true;
                row.note("ell approximates a m^m");
            }
            match qa_minus_2() {
                Some(extra) => {
                    let rr = int(r - 1) * extra;
                    let v = match kind {
                        SchemeKind::MultiCoset1 => (frac(l.clone(), r) * (int(n + 1) + rr), Bound::LessThan),
                        SchemeKind::MultiCoset2 => (frac(l.clone(), r) * (int(n - 1) + rr), Bound::Exact),
                        _ => (frac(l.clone() * int(e), r) * (int(n - 1) + rr), Bound::Exact),
                    };
                    (Some(v.0), v.1)
                }
                None => (None, Bound::Exact),
            }
        }
        SchemeKind::Msr => (msr_bound(n, k, e, d, ell).ok(), Bound::Exact),
        SchemeKind::Mardia1 => {
            row.flag(BigUint::from(a) == *ell, "needs a = ell");
            row.flag(points_fit(q, ell, n), "n > q^ell");
            row.flag(!pow_exceeds(q, &(ell - BigUint::one().min(ell.clone())), r), "q^(ell-1) > r");
            // e < sqrt(log_q n)  <=>  q^(e^2) < n
            row.flag(qa(q, (e * e) as u32).is_some_and(|v| v < n), "e >= sqrt(log_q n)");
            let v = int((n - e) * e) - frac(int(e * (e - 1) * (q - 1)), 2);
            (Some(v), Bound::AtMost)
        }
        SchemeKind::Mardia2 => {
            row.flag(points_fit(q, ell, n), "n > q^ell");
            let best = (e..=r)
                .map(|ep| {
                    let x = frac(int(n - k + ep - 1), 2 * ep - 1);
                    let sub = floor_log(q, &x);
                    int(n - ep) * (l.clone() - int(sub))
                })
                .min();
            (best, Bound::AtMost)
        }
        SchemeKind::YeBargMulti => {
            row.p.ell_approx = true;
            row.note("ell approximates n^n");
            (msr_bound(n, k, e, d, ell).ok(), Bound::Exact)
        }
        SchemeKind::MultiCosetMulti => {
            row.p.ell_approx = true;
            row.note("ell approximates a m^m");
            let h = params.h.clone().unwrap_or_else(|| {
                let mut h = vec![0; e as usize];
                h[0] = e as usize;
                h
            });
            let v = layout_from_h(h)
                .and_then(|lay| multi_erasure_multi_coset_bandwidth(n, k, e, d, a, q, ell, &lay));
            match v {
                Ok(v) => (Some(v), Bound::AtMost),
                Err(err) => {
                    row.flag(false, &err.to_string());
                    (None, Bound::AtMost)
                }
            }
        }
    };
    row.p.symbols = sym;
    row.p.bound = bound;
    if row.p.symbols.is_none() {
        row.flag(false, "formula undefined");
    }
    row.p
}
