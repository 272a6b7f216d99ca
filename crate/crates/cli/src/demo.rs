use serde_json::json;

use rs_repair::repair_engine::{all_transcripts, measure_bandwidth, repair};
use rs_repair::rng::SplitMix64;
use rs_repair::FieldElem;

use crate::output::{describe, emit, emit_json, join, load_spec, spec_err, CliError};
use crate::{DemoArgs, Format};

pub fn demo(args: &DemoArgs) -> Result<(), CliError> {
    let spec = load_spec(&args.spec)?;
    let factory = spec.build().map_err(spec_err)?;
    let code = &factory.code;
    let f = code.ctx();
    let failed = match &args.failed {
        Some(v) => v.clone(),
        None => factory.failure_sets().into_iter().next().unwrap_or_default(),
    };
    let scheme = factory.scheme_for(&failed).map_err(spec_err)?;

    let message: Vec<FieldElem> = if args.zero {
        vec![FieldElem::ZERO; code.k()]
    } else if let Some(m) = &args.message {
        if m.len() != code.k() {
            return Err(CliError::Spec(format!("message needs {} symbols, got {}", code.k(), m.len())));
        }
        m.iter().map(|s| f.parse_elem(s)).collect::<Result<_, _>>().map_err(spec_err)?
    } else {
        code.random_message(&mut SplitMix64::new(args.seed))
    };
    let cw = code.encode(&message).map_err(spec_err)?;
    let bw = measure_bandwidth(&scheme).map_err(|e| CliError::Verification(describe(&e)))?;
    let transcripts = all_transcripts(&scheme, &cw);
    let recovered = repair(&scheme, &transcripts).map_err(|e| CliError::Verification(describe(&e)))?;
    let original: Vec<FieldElem> = failed.iter().map(|&i| cw[i]).collect();
    let ok = recovered == original;

    let out = args.output.out.as_deref();
    match args.output.format {
        Format::Json => emit_json(
            out,
            &json!({
                "code": code.to_spec(),
                "scheme": scheme.label(),
                "base_degree": scheme.base().degree(),
                "message": message.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "codeword": cw.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "failed": failed,
                "transcripts": transcripts.iter().map(|t| t.to_wire()).collect::<Vec<_>>(),
                "symbols": bw.total_gq,
                "recovered": recovered.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "correct": ok,
            }),
        )?,
        Format::Text | Format::Csv => {
            let mut text = format!(
                "code       RS({},{}) over {}\nscheme     {} (base field degree {})\nmessage    {}\ncodeword   {}\nfailed     [{}]\n",
                code.n(),
                code.k(),
                f.spec_string(),
                scheme.label(),
                scheme.base().degree(),
                join(&message),
                join(&cw),
                join(&failed)
            );
            for t in &transcripts {
                let pivots: Vec<String> = t.pivots.iter().map(|(i, j)| format!("({i},{j})")).collect();
                text.push_str(&format!(
                    "helper {:>3}  sends {} symbol(s) [{}] for traces {}\n",
                    t.helper,
                    t.len(),
                    join(&t.symbols),
                    pivots.join(" ")
                ));
            }
            text.push_str(&format!(
                "total      {} symbols over GF({})\nrecovered  {}\noriginal   {}\nresult     {}\n",
                bw.total_gq,
                bw.q,
                join(&recovered),
                join(&original),
                if ok { "match" } else { "MISMATCH" }
            ));
            emit(out, &text)?;
        }
    }
    if !ok {
        return Err(CliError::Verification("recovered symbols differ from the codeword".into()));
    }
    Ok(())
}
