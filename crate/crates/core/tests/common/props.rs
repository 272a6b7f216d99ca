//! Property checks against independent oracles: schoolbook powers for
//! Frobenius and traces, elimination on coordinate vectors for ranks, and
//! the erasure decoder for repair. Shared by the `properties` and
//! `acceptance` targets.

use std::sync::{Arc, LazyLock};

use proptest::prelude::*;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestRunner};

use rs_repair::gf_tower::{coset_partition, dual_basis, rank_over, recombine, same_coset, subspace_span};
use rs_repair::repair_engine::{measure_bandwidth, repair_codeword, stacked_rank_check, RepairScheme};
use rs_repair::rng::SplitMix64;
use rs_repair::rs_core::{FPoly, RSCode};
use rs_repair::schemes::{SchemeFactory, SchemeSpec};
use rs_repair::{FieldCtx, FieldElem};

const CASES: u32 = 1000;

static FIELDS: LazyLock<Vec<Arc<FieldCtx>>> = LazyLock::new(|| {
    [(2, 12), (2, 16), (3, 4), (2, 9), (5, 2)]
        .iter()
        .map(|&(q, l)| FieldCtx::new(q, l, None).unwrap())
        .collect()
});

fn factory(json: &str) -> SchemeFactory {
    serde_json::from_str::<SchemeSpec>(json).unwrap().build().unwrap()
}

static ONE: LazyLock<SchemeFactory> =
    LazyLock::new(|| factory(r#"{"construction":"II","field":"gf(2,12)","n":14,"k":10,"a":4,"s":2}"#));
static MULTI: LazyLock<SchemeFactory> =
    LazyLock::new(|| factory(r#"{"construction":"III","field":"gf(2,9)","n":7,"k":3,"a":3,"e":2}"#));

fn pick(f: &FieldCtx, raw: u64) -> FieldElem {
    let mut v = raw as u128 % f.order();
    let digits: Vec<u64> = (0..f.ell())
        .map(|_| {
            let d = (v % f.q() as u128) as u64;
            v /= f.q() as u128;
            d
        })
        .collect();
    f.from_coeffs(&digits).unwrap()
}

fn pick_nonzero(f: &FieldCtx, raw: u64) -> FieldElem {
    let x = pick(f, raw);
    if x.is_zero() {
        f.one()
    } else {
        x
    }
}

fn divisors(f: &FieldCtx) -> Vec<usize> {
    (1..=f.ell()).filter(|a| f.ell().is_multiple_of(*a)).collect()
}

/// Rank of base-q coordinate vectors by plain elimination mod q.
fn coeff_rank(f: &FieldCtx, xs: &[FieldElem]) -> usize {
    let q = f.q();
    let mut rows: Vec<Vec<u64>> = xs.iter().map(|&x| f.coeffs(x)).collect();
    let mut rank = 0;
    for col in 0..f.ell() {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = (1..q).find(|&v| v * rows[rank][col] % q == 1).unwrap();
        let pivot: Vec<u64> = rows[rank].iter().map(|&v| v * inv % q).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (v, &pv) in row.iter_mut().zip(&pivot) {
                    *v = (*v + q * q - c * pv % q) % q;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// x^(q^s) by repeated powering.
fn frob_oracle(f: &FieldCtx, x: FieldElem, s: usize) -> FieldElem {
    (0..s).fold(x, |y, _| f.pow(y, f.q() as u128))
}

/// sum_{i < [F:K]} x^(q^(a i)), as an element of F.
fn trace_oracle(f: &FieldCtx, x: FieldElem, a: usize) -> FieldElem {
    (0..f.ell() / a).fold(f.zero(), |acc, i| f.add(acc, frob_oracle(f, x, a * i)))
}

pub type Outcome = Result<(), String>;

fn check<S: Strategy>(strategy: &S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(strategy, test).map_err(|e| e.to_string())
}

/// Exhaustive: the cosets beta^i K* tile F* for every subfield of every
/// test field.
pub fn coset_partition_exhaustive() -> Outcome {
    for f in FIELDS.iter() {
        for a in divisors(f) {
            let k = f.subfield(a).map_err(|e| e.to_string())?;
            let part = coset_partition(f, &k).map_err(|e| e.to_string())?;
            let mut seen = vec![false; f.order() as usize];
            for i in 0..part.count() {
                for x in part.coset(f, i) {
                    let slot = &mut seen[x.raw() as usize];
                    if *slot {
                        return Err(format!("{} a={a}: {x} covered twice", f.spec_string()));
                    }
                    *slot = true;
                }
            }
            if seen[0] || !seen[1..].iter().all(|&v| v) {
                return Err(format!("{} a={a}: cosets miss part of F*", f.spec_string()));
            }
        }
    }
    Ok(())
}

pub fn coset_membership_matches_norm_test() -> Outcome {
    check(
        &(0usize..5, 0usize..6, any::<u64>(), any::<u64>(), any::<u64>()),
        |(fi, ai, m, x, y)| {
            let f = &FIELDS[fi];
            let ds = divisors(f);
            let a = ds[ai % ds.len()];
            let k = f.subfield(a).unwrap();
            let part = coset_partition(f, &k).unwrap();
            prop_assert_eq!(part.count() * part.coset_size(), f.order() - 1);

            let (x, y) = (pick_nonzero(f, x), pick_nonzero(f, y));
            let oracle = f.pow(f.div(x, y), k.order() - 1) == f.one();
            prop_assert_eq!(same_coset(f, &k, x, y), oracle);

            // beta^m sits in coset m mod t, and the members of one coset differ by K*.
            let m = m as u128 % (f.order() - 1);
            let bm = f.pow(f.primitive(), m);
            let i = m % part.count();
            prop_assert!(same_coset(f, &k, bm, part.representative(f, i)));
            let j = m % part.coset_size();
            prop_assert!(same_coset(f, &k, part.member(f, i, j), part.representative(f, i)));
            if part.count() > 1 {
                let other = (i + 1) % part.count();
                prop_assert!(!same_coset(f, &k, bm, part.representative(f, other)));
            }
            Ok(())
        },
    )
}

pub fn frobenius_matches_powers() -> Outcome {
    check(
        &(0usize..5, 0usize..6, any::<u64>(), any::<u64>(), 0usize..20),
        |(fi, ai, x, y, s)| {
            let f = &FIELDS[fi];
            let (x, y) = (pick(f, x), pick(f, y));
            let s = s % (f.ell() + 1);
            prop_assert_eq!(f.frobenius(x, s), frob_oracle(f, x, s));
            prop_assert_eq!(f.frobenius(x, f.ell()), x);
            prop_assert_eq!(f.frobenius(f.add(x, y), s), f.add(f.frobenius(x, s), f.frobenius(y, s)));
            prop_assert_eq!(f.frobenius(f.mul(x, y), s), f.mul(f.frobenius(x, s), f.frobenius(y, s)));

            let ds = divisors(f);
            let k = f.subfield(ds[ai % ds.len()]).unwrap();
            let fixed = frob_oracle(f, x, k.degree()) == x;
            prop_assert_eq!(k.contains(x), fixed);
            prop_assert_eq!(k.project(x).is_some(), fixed);
            if let Some(v) = k.project(x) {
                prop_assert_eq!(k.embed(v), x);
            }
            Ok(())
        },
    )
}

pub fn power_basis_coordinates_recombine() -> Outcome {
    check(&(0usize..5, 0usize..6, any::<u64>()), |(fi, ai, x)| {
        let f = &FIELDS[fi];
        let ds = divisors(f);
        let k = f.subfield(ds[ai % ds.len()]).unwrap();
        let x = pick(f, x);
        let beta = f.primitive();
        let back = k.coords(x).iter().enumerate().fold(f.zero(), |acc, (j, &c)| {
            f.add(acc, k.scale(f, c, f.pow(beta, j as u128)))
        });
        prop_assert_eq!(back, x);
        Ok(())
    })
}

pub fn trace_is_transitive() -> Outcome {
    check(&(0usize..5, 0usize..6, any::<u64>()), |(fi, ai, x)| {
        let f = &FIELDS[fi];
        let ds = divisors(f);
        let a = ds[ai % ds.len()];
        let e = f.subfield(a).unwrap();
        let x = pick(f, x);
        // tr_{F/E} against the Frobenius sum.
        prop_assert_eq!(e.trace_in_f(f, x), trace_oracle(f, x, a));
        // tr_{F/B} = tr_{E/B} o tr_{F/E}.
        let via_e = e.ctx().trace_base(e.trace(f, x));
        prop_assert_eq!(f.trace_base(x), via_e);
        prop_assert_eq!(f.scalar(f.trace_base(x)), trace_oracle(f, x, 1));
        Ok(())
    })
}

pub fn dual_basis_recombines() -> Outcome {
    check(
        &(0usize..5, 0usize..6, any::<u64>(), any::<u64>()),
        |(fi, ai, seed, y)| {
            let f = &FIELDS[fi];
            let ds = divisors(f);
            let k = f.subfield(ds[ai % ds.len()]).unwrap();
            let mut rng = SplitMix64::new(seed);
            let basis: Vec<FieldElem> = loop {
                let cand: Vec<FieldElem> = (0..k.index()).map(|_| f.random(&mut rng)).collect();
                if rank_over(f, &k, &cand).rank == k.index() {
                    break cand;
                }
            };
            let dual = dual_basis(f, &k, &basis).unwrap();
            for (i, &b) in basis.iter().enumerate() {
                for (j, &d) in dual.iter().enumerate() {
                    let t = k.trace(f, f.mul(b, d));
                    prop_assert_eq!(t, if i == j { k.ctx().one() } else { k.ctx().zero() });
                }
            }
            let y = pick(f, y);
            prop_assert_eq!(recombine(f, &k, &basis, &dual, y), y);
            Ok(())
        },
    )
}

pub fn subfield_rank_matches_base_rank() -> Outcome {
    check(&(0usize..5, 0usize..6, any::<u64>(), 1usize..6), |(fi, ai, seed, m)| {
        let f = &FIELDS[fi];
        let ds = divisors(f);
        let k = f.subfield(ds[ai % ds.len()]).unwrap();
        let mut rng = SplitMix64::new(seed);
        // Bias toward dependence by mixing in sums of earlier elements.
        let mut xs: Vec<FieldElem> = Vec::new();
        for _ in 0..m {
            let x = if xs.len() >= 2 && rng.below(3) == 0 {
                f.add(xs[0], k.scale(f, k.ctx().random(&mut rng), xs[1]))
            } else {
                f.random(&mut rng)
            };
            xs.push(x);
        }
        // rank_K{x_j} = rank_B{gamma^i x_j : i < a} / a.
        let spread: Vec<FieldElem> = xs
            .iter()
            .flat_map(|&x| (0..k.degree()).map(move |i| (i, x)))
            .map(|(i, x)| f.mul(f.pow(k.gamma(), i as u128), x))
            .collect();
        let info = rank_over(f, &k, &xs);
        prop_assert_eq!(info.rank * k.degree(), coeff_rank(f, &spread));
        prop_assert_eq!(rank_over(f, &f.base(), &xs).rank, coeff_rank(f, &xs));
        Ok(())
    })
}

pub fn rank_preserved_by_extension_of_scalars() -> Outcome {
    check(&(any::<u64>(), 1usize..5), |(seed, m)| {
        // GF(2^4) and GF(2^3) inside GF(2^12): elements of GF(2^4) independent
        // over GF(2) stay independent over GF(2^3) since gcd(4, 3) = 1.
        let f = &FIELDS[0];
        let small = f.subfield(4).unwrap();
        let e = f.subfield(3).unwrap();
        let mut rng = SplitMix64::new(seed);
        let xs: Vec<FieldElem> = (0..m).map(|_| small.embed(small.ctx().random(&mut rng))).collect();
        let over_b = rank_over(f, &f.base(), &xs).rank;
        prop_assert_eq!(rank_over(f, &e, &xs).rank, over_b);
        prop_assert_eq!(
            rank_over(
                small.ctx(),
                &small.ctx().base(),
                &xs.iter().map(|&x| small.project(x).unwrap()).collect::<Vec<_>>()
            )
            .rank,
            over_b
        );
        Ok(())
    })
}

pub fn subspace_rank_matches_span() -> Outcome {
    check(
        &(0usize..5, any::<u64>(), 1usize..5, any::<u64>()),
        |(fi, seed, m, c)| {
            let f = &FIELDS[fi];
            let mut rng = SplitMix64::new(seed);
            let gens: Vec<FieldElem> = (0..m).map(|_| f.random(&mut rng)).collect();
            let rank = coeff_rank(f, &gens);
            let w = match subspace_span(f, &f.base(), &gens) {
                Ok(w) => w,
                Err(e) => {
                    prop_assert!(rank < m, "{:?}", e);
                    return Ok(());
                }
            };
            prop_assert_eq!(w.dim(), rank);
            prop_assert_eq!(rank, m);
            prop_assert_eq!(w.size(), (f.q() as u128).pow(rank as u32));
            // Multiplying by a nonzero c is a bijective B-linear map.
            let c = pick_nonzero(f, c);
            let shifted = w.shifted(f, c);
            prop_assert_eq!(coeff_rank(f, &shifted), rank);
            for &g in &gens {
                prop_assert!(w.contains(g));
            }
            Ok(())
        },
    )
}

pub fn dual_codewords_are_orthogonal() -> Outcome {
    check(
        &(any::<u64>(), 4usize..12, 1usize..11, any::<u64>()),
        |(seed, n, kk, scale)| {
            let f = FIELDS[1].clone();
            let k = 1 + kk % (n - 1);
            let mut rng = SplitMix64::new(seed);
            let mut pts: Vec<FieldElem> = Vec::new();
            while pts.len() < n {
                let x = f.random(&mut rng);
                if !pts.contains(&x) {
                    pts.push(x);
                }
            }
            let code = RSCode::new(f.clone(), pts, k).unwrap();
            let cw = code.random_codeword(&mut rng);
            let p = FPoly::new((0..n - k).map(|_| f.random(&mut rng)).collect());
            prop_assert_eq!(code.inner(&cw, &code.dual_codeword(&p).unwrap()), f.zero());
            let scaled = code.with_upsilon_scaled(pick_nonzero(&f, scale)).unwrap();
            prop_assert_eq!(scaled.inner(&cw, &scaled.dual_codeword(&p).unwrap()), f.zero());
            Ok(())
        },
    )
}

pub fn upsilon_scaling_keeps_bandwidth_and_repair() -> Outcome {
    check(&(0usize..14, any::<u64>(), any::<u64>()), |(failed, c, seed)| {
        let s = ONE.scheme_for(&[failed]).unwrap();
        let f = s.ctx().clone();
        let code = Arc::new(s.code().with_upsilon_scaled(pick_nonzero(&f, c)).unwrap());
        let t = RepairScheme::new(code.clone(), s.failed().to_vec(), s.base().clone(), s.polys().to_vec()).unwrap();
        let (a, b) = (measure_bandwidth(&s).unwrap(), measure_bandwidth(&t).unwrap());
        prop_assert_eq!(a.per_helper, b.per_helper);
        let cw = code.random_codeword(&mut SplitMix64::new(seed));
        prop_assert_eq!(repair_codeword(&t, &cw).unwrap(), vec![cw[failed]]);
        Ok(())
    })
}

pub fn stacked_rank_and_repair_match_oracle() -> Outcome {
    check(&(0usize..21, any::<u64>()), |(set, seed)| {
        let failed = MULTI.failure_sets()[set].clone();
        let s = MULTI.scheme_for(&failed).unwrap();
        for &t in s.helpers() {
            prop_assert!(stacked_rank_check(&s, t));
        }
        let code = &MULTI.code;
        let cw = code.random_codeword(&mut SplitMix64::new(seed));
        let mut partial: Vec<Option<FieldElem>> = cw.iter().copied().map(Some).collect();
        for &i in &failed {
            partial[i] = None;
        }
        let oracle = code.erasure_decode(&partial).unwrap();
        let got = repair_codeword(&s, &cw).unwrap();
        prop_assert_eq!(got, failed.iter().map(|&i| oracle[i]).collect::<Vec<_>>());
        Ok(())
    })
}

/// Every property with its name.
pub type Property = (&'static str, fn() -> Outcome);

pub const ALL: &[Property] = &[
    ("coset_partition_exhaustive", coset_partition_exhaustive),
    ("coset_membership_matches_norm_test", coset_membership_matches_norm_test),
    ("frobenius_matches_powers", frobenius_matches_powers),
    ("power_basis_coordinates_recombine", power_basis_coordinates_recombine),
    ("trace_is_transitive", trace_is_transitive),
    ("dual_basis_recombines", dual_basis_recombines),
    ("subfield_rank_matches_base_rank", subfield_rank_matches_base_rank),
    (
        "rank_preserved_by_extension_of_scalars",
        rank_preserved_by_extension_of_scalars,
    ),
    ("subspace_rank_matches_span", subspace_rank_matches_span),
    ("dual_codewords_are_orthogonal", dual_codewords_are_orthogonal),
    (
        "upsilon_scaling_keeps_bandwidth_and_repair",
        upsilon_scaling_keeps_bandwidth_and_repair,
    ),
    (
        "stacked_rank_and_repair_match_oracle",
        stacked_rank_and_repair_match_oracle,
    ),
];
