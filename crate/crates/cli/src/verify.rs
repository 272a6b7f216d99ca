use rayon::prelude::*;
use serde::Serialize;

use rs_repair::repair_engine::{all_transcripts, check_full_rank, measure_bandwidth, repair, to_query_scheme, RepairScheme};
use rs_repair::rng::SplitMix64;
use rs_repair::rs_core::RSCode;
use rs_repair::schemes::SchemeFactory;
use rs_repair::{Error, FieldElem};

use crate::output::{describe, emit, emit_json, join, load_spec, spec_err, use_color, verdict, CliError};
use crate::scheme::failure_sets;
use crate::{Format, VerifyArgs};

#[derive(Debug, Serialize)]
pub struct SetReport {
    pub index: usize,
    pub failed: Vec<usize>,
    pub label: String,
    pub full_rank: bool,
    pub symbols: Option<u64>,
    pub bits: Option<f64>,
    pub prediction: Option<String>,
    pub prediction_holds: bool,
    pub trials: usize,
    pub trials_ok: usize,
    pub query_agrees: bool,
    pub error: Option<String>,
}

impl SetReport {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.full_rank && self.prediction_holds && self.trials_ok == self.trials && self.query_agrees
    }
}

/// One seeded round trip: repaired symbols must match both the codeword and
/// the erasure decoder, and the query form must give the same answer.
fn round_trip(scheme: &RepairScheme, code: &RSCode, rng: &mut SplitMix64) -> Result<(bool, bool), Error> {
    let cw = code.random_codeword(rng);
    let got = repair(scheme, &all_transcripts(scheme, &cw))?;
    let mut partial: Vec<Option<FieldElem>> = cw.iter().copied().map(Some).collect();
    for &i in scheme.failed() {
        partial[i] = None;
    }
    let oracle = code.erasure_decode(&partial)?;
    let expect: Vec<FieldElem> = scheme.failed().iter().map(|&i| oracle[i]).collect();
    let direct: Vec<FieldElem> = scheme.failed().iter().map(|&i| cw[i]).collect();
    let query = to_query_scheme(scheme)?.execute(code, &cw);
    Ok((got == expect && got == direct, query == got))
}

fn check_set(factory: &SchemeFactory, index: usize, failed: Vec<usize>, seed: u64, trials: usize) -> SetReport {
    let mut rep = SetReport {
        index,
        failed: failed.clone(),
        label: String::new(),
        full_rank: false,
        symbols: None,
        bits: None,
        prediction: None,
        prediction_holds: false,
        trials,
        trials_ok: 0,
        query_agrees: true,
        error: None,
    };
    let scheme = match factory.scheme_for(&failed) {
        Ok(s) => s,
        Err(e) => {
            rep.error = Some(describe(&e));
            return rep;
        }
    };
    rep.label = scheme.label().to_string();
    rep.prediction = scheme.prediction().map(|p| p.to_string());
    rep.full_rank = check_full_rank(&scheme);
    if !rep.full_rank {
        rep.error = Some(describe(&Error::FullRankViolated));
        return rep;
    }
    match measure_bandwidth(&scheme) {
        Ok(b) => {
            rep.symbols = Some(b.total_gq);
            rep.bits = Some(b.bits());
            rep.prediction_holds = b.prediction_holds();
        }
        Err(e) => {
            rep.error = Some(describe(&e));
            return rep;
        }
    }
    for trial in 0..trials {
        let mut rng = SplitMix64::derive(seed, &[index as u64, trial as u64]);
        match round_trip(&scheme, &factory.code, &mut rng) {
            Ok((ok, q)) => {
                rep.trials_ok += ok as usize;
                rep.query_agrees &= q;
            }
            Err(e) => {
                rep.error = Some(describe(&e));
                return rep;
            }
        }
    }
    rep
}

fn bits_text(r: &SetReport) -> String {
    match (r.symbols, r.bits) {
        (Some(s), Some(b)) if (b - s as f64).abs() < 1e-9 => format!("{s} bits"),
        (Some(s), Some(b)) => format!("{s} symbols ({b:.2} bits)"),
        _ => "-".into(),
    }
}

pub fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    let spec = load_spec(&args.spec)?;
    let factory = spec.build().map_err(spec_err)?;
    let sets = failure_sets(&factory, &args.failed);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| CliError::Spec(format!("thread pool: {e}")))?;
    let reports: Vec<SetReport> = pool.install(|| {
        sets.into_par_iter()
            .enumerate()
            .map(|(i, f)| check_set(&factory, i, f, args.seed, args.trials))
            .collect()
    });
    let failures = reports.iter().filter(|r| !r.ok()).count();
    let out = args.output.out.as_deref();
    match args.output.format {
        Format::Json => emit_json(
            out,
            &serde_json::json!({
                "spec": spec,
                "seed": args.seed,
                "trials": args.trials,
                "sets": reports,
                "failures": failures,
            }),
        )?,
        Format::Text | Format::Csv => {
            let color = use_color(out);
            let mut text = format!(
                "{} on RS({},{}) over {}, seed {}, {} trials per set\n",
                spec.name(),
                factory.code.n(),
                factory.code.k(),
                factory.code.ctx().spec_string(),
                args.seed,
                args.trials
            );
            for r in &reports {
                text.push_str(&format!(
                    "{} failed=[{}] {}: {}, closed form {}, round trips {}/{}, query {}{}\n",
                    verdict(r.ok(), color),
                    join(&r.failed),
                    if r.label.is_empty() { "-" } else { &r.label },
                    bits_text(r),
                    r.prediction.as_deref().unwrap_or("none"),
                    r.trials_ok,
                    r.trials,
                    if r.query_agrees { "agrees" } else { "DISAGREES" },
                    r.error.as_ref().map(|e| format!(", error {e}")).unwrap_or_default()
                ));
            }
            text.push_str(&format!("{} of {} failure sets passed\n", reports.len() - failures, reports.len()));
            emit(out, &text)?;
        }
    }
    if failures > 0 {
        let first = reports.iter().find(|r| !r.ok()).and_then(|r| r.error.clone()).unwrap_or_else(|| "check failed".into());
        return Err(CliError::Verification(format!("{failures} failure set(s) failed; first: {first}")));
    }
    Ok(())
}
