use num_bigint::BigUint;

use rs_repair::bandwidth_models::{sweep as run_sweep, to_csv, to_json, SweepConfig};

use crate::output::{emit, emit_json, spec_err, CliError};
use crate::{Format, SweepArgs};

/// Parses `123` or `base^exp`.
pub fn parse_ell(s: &str) -> Result<BigUint, CliError> {
    let bad = || CliError::Spec(format!("bad ell value {s:?}; expected an integer or base^exp"));
    let s = s.trim();
    match s.split_once('^') {
        Some((b, e)) => {
            let b: BigUint = b.trim().parse().map_err(|_| bad())?;
            let e: u32 = e.trim().parse().map_err(|_| bad())?;
            Ok(b.pow(e))
        }
        None => s.parse().map_err(|_| bad()),
    }
}

pub fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    let cfg = SweepConfig {
        ell_min: parse_ell(&args.ell_min)?,
        ell_max: parse_ell(&args.ell_max)?,
        per_ell_limit: args.per_ell_limit,
        ..SweepConfig::new(args.n, args.k, args.e, args.q, 0, 0)
    };
    let points = run_sweep(&cfg).map_err(spec_err)?;
    let out = args.out.as_deref();
    match args.format {
        Format::Json => emit_json(out, &serde_json::json!({"config": cfg, "points": to_json(&points)})),
        Format::Csv | Format::Text => emit(out, &to_csv(&points).map_err(spec_err)?),
    }
}
