use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::common::{coset_points, is_power_of};
use crate::error::{Error, Result};
use crate::gf_tower::{FieldCtx, SubfieldHandle};
use crate::repair_engine::{Prediction, RepairScheme};
use crate::rs_core::{FPoly, RSCode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCosetParams {
    pub q: u64,
    pub ell: usize,
    pub a: usize,
    pub m1: u64,
    pub m2: u64,
    pub n: usize,
    pub k: usize,
}

/// A code on n/2 points of beta^{m1} E* followed by n/2 points of
/// beta^{m2} E*, repaired over K = E.
#[derive(Debug, Clone)]
pub struct TwoCoset {
    pub params: TwoCosetParams,
    pub code: Arc<RSCode>,
    pub e: Arc<SubfieldHandle>,
}

impl TwoCoset {
    pub fn new(ctx: Arc<FieldCtx>, params: TwoCosetParams) -> Result<TwoCoset> {
        let q = ctx.q();
        if (q, ctx.ell()) != (params.q, params.ell) {
            return Err(Error::InvalidParameter("parameters do not match the field".into()));
        }
        let e = ctx.subfield(params.a)?;
        let index = e.index() as u32;
        match params.m2.checked_sub(params.m1).and_then(|d| is_power_of(q, d)) {
            Some(s) if s <= index => {}
            _ => return Err(Error::BadCosetGap(params.m2.wrapping_sub(params.m1))),
        }
        let t = (ctx.order() - 1) / (e.order() - 1);
        if ((params.m2 - params.m1) as u128).is_multiple_of(t) {
            return Err(Error::CosetCollision);
        }
        if !params.n.is_multiple_of(2) || (params.n / 2) as u128 > e.order() - 1 {
            return Err(Error::UnbalancedSplit);
        }
        let half = params.n / 2;
        let mut pts = coset_points(&ctx, &e, params.m1, half);
        pts.extend(coset_points(&ctx, &e, params.m2, half));
        let code = Arc::new(RSCode::new(ctx, pts, params.k)?);
        if e.index() > code.r() {
            return Err(Error::InvalidParameter(format!("need ell/a <= n-k, got {} > {}", e.index(), code.r())));
        }
        Ok(TwoCoset { params, code, e })
    }

    pub fn in_first(&self, t: usize) -> bool {
        t < self.params.n / 2
    }
}

/// p_j(x) = (x / beta^{m2})^j when the failure lies in the first coset, and
/// (x / beta^{m1})^j otherwise, for j < ell/a.
pub fn construct_two_coset(tc: &TwoCoset, failed: usize) -> Result<RepairScheme> {
    let f = tc.code.ctx();
    if failed >= tc.code.n() {
        return Err(Error::InvalidParameter(format!("no node {failed}")));
    }
    let m_other = if tc.in_first(failed) { tc.params.m2 } else { tc.params.m1 };
    let c = f.beta_pow(-(m_other as i128));
    let row = (0..tc.e.index()).map(|j| FPoly::monomial(f.pow(c, j as u128), j)).collect();
    let (n, l, a) = (tc.params.n as i128, tc.params.ell as i128, tc.params.a as i128);
    // (n-1)(ell+a)/2 - (ell-a)/2
    let pred = num_rational::BigRational::new(((n - 1) * (l + a) - (l - a)).into(), 2.into());
    Ok(RepairScheme::new(tc.code.clone(), vec![failed], tc.e.clone(), vec![row])?
        .with_prediction(Prediction::equal(pred, "(n-1)(ell+a)/2 - (ell-a)/2"))
        .with_label("two_coset"))
}
