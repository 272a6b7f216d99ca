use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::multi_coset::{extend_multi_coset, ye_barg_adapter, MultiCoset};
use super::multi_erasure::{construct_iii, construct_iv};
use super::one_coset::{construct_i, construct_ii, naive, OneCoset, OneCosetParams, WChoice};
use super::two_coset::{construct_two_coset, TwoCoset, TwoCosetParams};
use crate::error::{Error, Result};
use crate::gf_tower::{parse_field_spec, FieldCtx};
use crate::repair_engine::RepairScheme;
use crate::rs_core::{FPoly, RSCode};

/// Replayable description of a code and its repair construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction")]
pub enum SchemeSpec {
    #[serde(rename = "I")]
    I { field: String, n: usize, k: usize, a: usize, #[serde(default)] m: u64 },
    #[serde(rename = "II")]
    II {
        field: String,
        n: usize,
        k: usize,
        a: usize,
        s: usize,
        #[serde(default)]
        m: u64,
        #[serde(default)]
        w: WChoice,
    },
    /// Full download from d helpers on the one-coset points.
    #[serde(rename = "naive")]
    Naive {
        field: String,
        n: usize,
        k: usize,
        a: usize,
        #[serde(default)]
        m: u64,
        d: Option<usize>,
    },
    #[serde(rename = "two_coset")]
    TwoCoset { field: String, n: usize, k: usize, a: usize, m1: u64, m2: u64 },
    /// Ye-Barg-shape original code over `field` = F', extended by degree a.
    #[serde(rename = "multi_coset_1")]
    MultiCoset1 { field: String, r: usize, n_prime: usize, a: usize },
    #[serde(rename = "III")]
    III { field: String, n: usize, k: usize, a: usize, e: usize, #[serde(default)] m: u64 },
    #[serde(rename = "IV")]
    IV {
        field: String,
        n: usize,
        k: usize,
        a: usize,
        s: usize,
        e: usize,
        #[serde(default)]
        m: u64,
        #[serde(default)]
        w: WChoice,
    },
    /// Explicit polynomials (hex coefficients, little-endian) for one failure
    /// set, repaired over the subfield of degree `base_degree`.
    #[serde(rename = "custom")]
    Custom {
        field: String,
        #[serde(rename = "A")]
        points: Vec<String>,
        k: usize,
        failed: Vec<usize>,
        base_degree: usize,
        polys: Vec<Vec<Vec<String>>>,
    },
}

#[derive(Debug, Clone)]
enum Built {
    One(OneCoset),
    Two(TwoCoset),
    Multi(MultiCoset),
    Custom { failed: Vec<usize>, base_degree: usize, polys: Vec<Vec<FPoly>> },
}

/// A spec with its code built, producing a scheme per failure set.
#[derive(Debug, Clone)]
pub struct SchemeFactory {
    pub spec: SchemeSpec,
    pub code: Arc<RSCode>,
    built: Built,
}

/// Failure sets tried by default for multi-erasure specs.
pub const MAX_FAILURE_SETS: usize = 128;

fn one_coset(ctx: &Arc<FieldCtx>, n: usize, k: usize, a: usize, m: u64, s: usize, w: WChoice) -> Result<OneCoset> {
    let params = OneCosetParams { q: ctx.q(), ell: ctx.ell(), a, m, n, k, s, w };
    OneCoset::new(ctx.clone(), params)
}

impl SchemeSpec {
    pub fn field(&self) -> &str {
        match self {
            SchemeSpec::I { field, .. }
            | SchemeSpec::II { field, .. }
            | SchemeSpec::Naive { field, .. }
            | SchemeSpec::TwoCoset { field, .. }
            | SchemeSpec::MultiCoset1 { field, .. }
            | SchemeSpec::III { field, .. }
            | SchemeSpec::IV { field, .. }
            | SchemeSpec::Custom { field, .. } => field,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SchemeSpec::I { .. } => "I",
            SchemeSpec::II { .. } => "II",
            SchemeSpec::Naive { .. } => "naive",
            SchemeSpec::TwoCoset { .. } => "two_coset",
            SchemeSpec::MultiCoset1 { .. } => "multi_coset_1",
            SchemeSpec::III { .. } => "III",
            SchemeSpec::IV { .. } => "IV",
            SchemeSpec::Custom { .. } => "custom",
        }
    }

    pub fn build(&self) -> Result<SchemeFactory> {
        let ctx = parse_field_spec(self.field())?;
        let built = match *self {
            SchemeSpec::I { n, k, a, m, .. } => Built::One(one_coset(&ctx, n, k, a, m, a.saturating_sub(1), WChoice::Default)?),
            SchemeSpec::II { n, k, a, s, m, w, .. } | SchemeSpec::IV { n, k, a, s, m, w, .. } => {
                Built::One(one_coset(&ctx, n, k, a, m, s, w)?)
            }
            SchemeSpec::Naive { n, k, a, m, .. } => Built::One(one_coset(&ctx, n, k, a, m, 0, WChoice::Default)?),
            SchemeSpec::III { n, k, a, m, .. } => {
                Built::One(one_coset(&ctx, n, k, a, m, a.saturating_sub(1), WChoice::Default)?)
            }
            SchemeSpec::TwoCoset { n, k, a, m1, m2, .. } => {
                let params = TwoCosetParams { q: ctx.q(), ell: ctx.ell(), a, m1, m2, n, k };
                Built::Two(TwoCoset::new(ctx.clone(), params)?)
            }
            SchemeSpec::MultiCoset1 { r, n_prime, a, .. } => {
                Built::Multi(extend_multi_coset(ye_barg_adapter(r, n_prime, ctx.clone())?, a)?)
            }
            SchemeSpec::Custom { ref points, k, ref failed, base_degree, ref polys, .. } => {
                let pts = points.iter().map(|s| ctx.parse_elem(s)).collect::<Result<Vec<_>>>()?;
                let polys = polys
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|p| Ok(FPoly::new(p.iter().map(|c| ctx.parse_elem(c)).collect::<Result<Vec<_>>>()?)))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let code = Arc::new(RSCode::new(ctx.clone(), pts, k)?);
                return Ok(SchemeFactory {
                    spec: self.clone(),
                    code,
                    built: Built::Custom { failed: failed.clone(), base_degree, polys },
                });
            }
        };
        let code = match &built {
            Built::One(oc) => oc.code.clone(),
            Built::Two(tc) => tc.code.clone(),
            Built::Multi(mc) => mc.code.clone(),
            Built::Custom { .. } => unreachable!(),
        };
        Ok(SchemeFactory { spec: self.clone(), code, built })
    }

    /// Explicit form of an existing scheme.
    pub fn custom_from(scheme: &RepairScheme) -> SchemeSpec {
        let code = scheme.code();
        SchemeSpec::Custom {
            field: code.ctx().spec_string(),
            points: code.points().iter().map(|p| p.to_string()).collect(),
            k: code.k(),
            failed: scheme.failed().to_vec(),
            base_degree: scheme.base().degree(),
            polys: scheme
                .polys()
                .iter()
                .map(|row| row.iter().map(|p| p.coeffs().iter().map(|c| c.to_string()).collect()).collect())
                .collect(),
        }
    }
}

impl SchemeFactory {
    /// Number of simultaneous erasures.
    pub fn erasures(&self) -> usize {
        match (&self.spec, &self.built) {
            (SchemeSpec::III { e, .. } | SchemeSpec::IV { e, .. }, _) => *e,
            (_, Built::Custom { failed, .. }) => failed.len(),
            _ => 1,
        }
    }

    /// Every single failure, or the first e-subsets in lexicographic order.
    pub fn failure_sets(&self) -> Vec<Vec<usize>> {
        if let Built::Custom { failed, .. } = &self.built {
            return vec![failed.clone()];
        }
        let n = self.code.n();
        let e = self.erasures();
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..e).collect();
        loop {
            out.push(cur.clone());
            if out.len() >= MAX_FAILURE_SETS {
                break;
            }
            let Some(i) = (0..e).rev().find(|&i| cur[i] < n - e + i) else { break };
            cur[i] += 1;
            for j in i + 1..e {
                cur[j] = cur[j - 1] + 1;
            }
        }
        out
    }

    pub fn scheme_for(&self, failed: &[usize]) -> Result<RepairScheme> {
        let single = || -> Result<usize> {
            match failed {
                [t] => Ok(*t),
                _ => Err(Error::InvalidParameter(format!("{} repairs one erasure", self.spec.name()))),
            }
        };
        match (&self.spec, &self.built) {
            (SchemeSpec::I { .. }, Built::One(oc)) => construct_i(oc, single()?),
            (SchemeSpec::II { .. }, Built::One(oc)) => construct_ii(oc, single()?),
            (SchemeSpec::Naive { d, .. }, Built::One(oc)) => naive(&oc.code, single()?, d.unwrap_or(oc.code.n() - 1)),
            (SchemeSpec::III { e, .. }, Built::One(oc)) | (SchemeSpec::IV { e, .. }, Built::One(oc))
                if failed.len() != *e =>
            {
                let _ = oc;
                Err(Error::InvalidParameter(format!("expected {e} erasures, got {}", failed.len())))
            }
            (SchemeSpec::III { .. }, Built::One(oc)) => construct_iii(oc, failed),
            (SchemeSpec::IV { .. }, Built::One(oc)) => construct_iv(oc, failed),
            (_, Built::Two(tc)) => construct_two_coset(tc, single()?),
            (_, Built::Multi(mc)) => mc.scheme_for(single()?),
            (_, Built::Custom { failed: fs, base_degree, polys }) => {
                if fs.as_slice() != failed {
                    return Err(Error::InvalidParameter(format!("spec only covers failure set {fs:?}")));
                }
                let kf = self.code.ctx().subfield(*base_degree)?;
                RepairScheme::new(self.code.clone(), fs.clone(), kf, polys.clone())
            }
            _ => unreachable!("spec and built form always agree"),
        }
    }

    pub fn multi_coset(&self) -> Option<&MultiCoset> {
        match &self.built {
            Built::Multi(mc) => Some(mc),
            _ => None,
        }
    }

    pub fn one_coset(&self) -> Option<&OneCoset> {
        match &self.built {
            Built::One(oc) => Some(oc),
            _ => None,
        }
    }

    pub fn two_coset(&self) -> Option<&TwoCoset> {
        match &self.built {
            Built::Two(tc) => Some(tc),
            _ => None,
        }
    }
}
