use serde_json::{json, Value};

use rs_repair::repair_engine::{measure_bandwidth, RepairScheme};
use rs_repair::schemes::{SchemeFactory, SchemeSpec};

use crate::output::{describe, emit, emit_json, join, load_spec, spec_err, CliError};
use crate::{BuildArgs, Format};

pub fn failure_sets(factory: &SchemeFactory, failed: &Option<Vec<usize>>) -> Vec<Vec<usize>> {
    match failed {
        Some(f) => vec![f.clone()],
        None => factory.failure_sets(),
    }
}

pub fn scheme_summary(scheme: &RepairScheme) -> Value {
    let pred = scheme.prediction().map(|p| p.to_string());
    match measure_bandwidth(scheme) {
        Ok(rep) => json!({
            "failed": scheme.failed(),
            "label": scheme.label(),
            "base_degree": scheme.base().degree(),
            "symbols": rep.total_gq,
            "bits": rep.bits_exact(),
            "prediction": pred,
            "prediction_holds": rep.prediction_holds(),
            "per_helper": rep.per_helper,
        }),
        Err(e) => json!({
            "failed": scheme.failed(),
            "label": scheme.label(),
            "prediction": pred,
            "error": describe(&e),
        }),
    }
}

pub fn build(args: &BuildArgs) -> Result<(), CliError> {
    let spec = load_spec(&args.spec)?;
    let factory = spec.build().map_err(spec_err)?;
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut failures = 0;
    for failed in failure_sets(&factory, &args.failed) {
        match factory.scheme_for(&failed) {
            Ok(s) => {
                let mut v = scheme_summary(&s);
                if v.get("error").is_some() {
                    failures += 1;
                }
                lines.push(match (&v["symbols"], &v["error"]) {
                    (Value::Number(n), _) => format!(
                        "failed=[{}] {} over GF(q^{}): {} symbols{}",
                        join(&failed),
                        s.label(),
                        s.base().degree(),
                        n,
                        v["prediction"].as_str().map(|p| format!(", closed form {p}")).unwrap_or_default()
                    ),
                    (_, e) => format!("failed=[{}] {}: {}", join(&failed), s.label(), e.as_str().unwrap_or("")),
                });
                if args.explicit {
                    v["explicit"] = serde_json::to_value(SchemeSpec::custom_from(&s)).unwrap_or(Value::Null);
                }
                rows.push(v);
            }
            Err(e) => {
                failures += 1;
                lines.push(format!("failed=[{}]: {}", join(&failed), describe(&e)));
                rows.push(json!({"failed": failed, "error": describe(&e)}));
            }
        }
    }
    let out = args.output.out.as_deref();
    match args.output.format {
        Format::Json => emit_json(out, &json!({"spec": spec, "code": factory.code.to_spec(), "schemes": rows}))?,
        Format::Text | Format::Csv => {
            let mut text = format!(
                "{} on RS({},{}) over {}\n",
                spec.name(),
                factory.code.n(),
                factory.code.k(),
                factory.code.ctx().spec_string()
            );
            for l in lines {
                text.push_str(&l);
                text.push('\n');
            }
            if args.explicit {
                for r in &rows {
                    text.push_str(&serde_json::to_string(&r["explicit"]).unwrap_or_default());
                    text.push('\n');
                }
            }
            emit(out, &text)?;
        }
    }
    if failures > 0 {
        return Err(CliError::Verification(format!("{failures} failure set(s) could not be built")));
    }
    Ok(())
}
