use serde_json::json;

use rs_repair::gf_tower::parse_field_spec;

use crate::output::{emit, emit_json, join, spec_err, CliError};
use crate::{CosetArgs, FieldArgs, Format};

/// Fields up to this order get an exhaustive partition check.
const EXHAUSTIVE_ORDER: u128 = 1 << 22;

pub fn field(args: &FieldArgs) -> Result<(), CliError> {
    let f = parse_field_spec(&args.spec).map_err(spec_err)?;
    let divisors: Vec<usize> = (1..=f.ell()).filter(|a| f.ell() % a == 0).collect();
    let modulus = join(f.modulus());
    let out = args.output.out.as_deref();
    match args.output.format {
        Format::Json => emit_json(
            out,
            &json!({
                "field": f.spec_string(),
                "q": f.q(),
                "ell": f.ell(),
                "order": f.order().to_string(),
                "modulus": f.modulus(),
                "primitive": f.primitive().to_string(),
                "subfield_degrees": divisors,
            }),
        ),
        Format::Text | Format::Csv => emit(
            out,
            &format!(
                "field      {}\nq          {}\nell        {}\norder      {}\nmodulus    [{}] (low degree first)\nprimitive  {}\nsubfields  {}\n",
                f.spec_string(),
                f.q(),
                f.ell(),
                f.order(),
                modulus,
                f.primitive(),
                join(&divisors)
            ),
        ),
    }
}

pub fn cosets(args: &CosetArgs) -> Result<(), CliError> {
    let f = parse_field_spec(&args.spec).map_err(spec_err)?;
    let e = f.subfield(args.a).map_err(spec_err)?;
    let size = e.order() - 1;
    let count = (f.order() - 1) / size;
    let leaders: Vec<String> = (0..count.min(args.limit as u128)).map(|m| f.pow(f.primitive(), m).to_string()).collect();

    let partition = if f.order() <= EXHAUSTIVE_ORDER {
        let mut seen = vec![false; f.order() as usize];
        let mut ok = true;
        for m in 0..count {
            let lead = f.pow(f.primitive(), m);
            let mut x = lead;
            for _ in 0..size {
                let slot = &mut seen[x.raw() as usize];
                ok &= !*slot;
                *slot = true;
                x = f.mul(x, e.gamma());
            }
            ok &= x == lead;
        }
        Some(ok && seen.iter().skip(1).all(|&s| s) && !seen[0])
    } else {
        None
    };
    let out = args.output.out.as_deref();
    match args.output.format {
        Format::Json => emit_json(
            out,
            &json!({
                "field": f.spec_string(),
                "a": args.a,
                "coset_size": size.to_string(),
                "cosets": count.to_string(),
                "gamma": e.gamma().to_string(),
                "leaders": leaders,
                "partition_checked": partition,
            }),
        ),
        Format::Text | Format::Csv => {
            let check = match partition {
                Some(true) => "disjoint union verified exhaustively",
                Some(false) => "PARTITION CHECK FAILED",
                None => "not checked (field too large)",
            };
            emit(
                out,
                &format!(
                    "field        {}\nsubfield     degree {}, gamma = {}\ncosets       {} of size {}\nleaders      {}{}\npartition    {}\n",
                    f.spec_string(),
                    args.a,
                    e.gamma(),
                    count,
                    size,
                    leaders.join(" "),
                    if count > args.limit as u128 { " ..." } else { "" },
                    check
                ),
            )?;
            if partition == Some(false) {
                return Err(CliError::Verification("coset partition check failed".into()));
            }
            Ok(())
        }
    }
}
