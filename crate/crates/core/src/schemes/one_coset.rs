use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::common::{coset_points, e_basis, eta_lift, q_pow, rational, span_elements, z_power, z_product};
use crate::error::{Error, Result};
use crate::gf_tower::{same_coset, FieldCtx, FieldElem, SubfieldHandle};
use crate::repair_engine::{Prediction, RepairScheme};
use crate::rs_core::{FPoly, RSCode};

/// Choice of the s-dimensional subspace W of E.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WChoice {
    /// GF(q)-span of the first s elements of the E-basis {gamma^i}.
    #[default]
    Default,
    /// The subfield GF(q^s) of E; needs s | a.
    Subfield,
}

/// Parameters of a code whose evaluation points lie in one coset beta^m E*.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneCosetParams {
    pub q: u64,
    pub ell: usize,
    pub a: usize,
    pub m: u64,
    pub n: usize,
    pub k: usize,
    #[serde(default)]
    pub s: usize,
    #[serde(default)]
    pub w: WChoice,
}

/// The code of a [`OneCosetParams`] with its tower data.
#[derive(Debug, Clone)]
pub struct OneCoset {
    pub params: OneCosetParams,
    pub code: Arc<RSCode>,
    pub e: Arc<SubfieldHandle>,
    /// E-basis {gamma^i} in F.
    pub xi: Vec<FieldElem>,
}

impl OneCoset {
    pub fn new(ctx: Arc<FieldCtx>, params: OneCosetParams) -> Result<OneCoset> {
        let pts = coset_points(&ctx, &*ctx.subfield(params.a)?, params.m, params.n);
        OneCoset::with_points(ctx, params, pts)
    }

    /// Explicit evaluation points, each of which must lie in beta^m E*.
    pub fn with_points(ctx: Arc<FieldCtx>, params: OneCosetParams, points: Vec<FieldElem>) -> Result<OneCoset> {
        if (ctx.q(), ctx.ell()) != (params.q, params.ell) || points.len() != params.n {
            return Err(Error::InvalidParameter("parameters do not match the field or point count".into()));
        }
        let e = ctx.subfield(params.a)?;
        if params.n as u128 >= e.order() {
            return Err(Error::InvalidParameter(format!("need n < q^a, got n={} a={}", params.n, params.a)));
        }
        let shift = ctx.pow(ctx.primitive(), params.m as u128);
        if let Some(i) = points.iter().position(|&p| !same_coset(&ctx, &e, p, shift)) {
            return Err(Error::FailedPointNotInCoset(i));
        }
        let code = Arc::new(RSCode::new(ctx.clone(), points, params.k)?);
        let xi = e_basis(&ctx, &e);
        Ok(OneCoset { params, code, e, xi })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.code.ctx()
    }

    /// [F:E].
    pub fn index(&self) -> usize {
        self.e.index()
    }

    /// z = x / beta^m of node t, an element of E.
    pub fn z(&self, t: usize) -> FieldElem {
        let f = self.ctx();
        f.mul(self.code.points()[t], f.beta_pow(-(self.params.m as i128)))
    }

    pub(crate) fn check_failed(&self, t: usize) -> Result<()> {
        if t >= self.code.n() {
            return Err(Error::FailedPointNotInCoset(t));
        }
        Ok(())
    }

    /// All q^s elements of W, w_0 = 0 first.
    pub fn w_elements(&self, s: usize, choice: WChoice) -> Result<Vec<FieldElem>> {
        let f = self.ctx();
        match choice {
            WChoice::Default => Ok(span_elements(f, &self.xi[..s])),
            WChoice::Subfield => {
                if s == 0 || !self.params.a.is_multiple_of(s) {
                    return Err(Error::InvalidParameter(format!("subfield W needs s | a, got s={s}")));
                }
                let sub = f.subfield(s)?;
                let gens: Vec<FieldElem> = (0..s).map(|i| f.pow(sub.gamma(), i as u128)).collect();
                Ok(span_elements(f, &gens))
            }
        }
    }

    fn lifted(&self, rows: Vec<Vec<FPoly>>) -> Vec<Vec<FPoly>> {
        eta_lift(self.ctx(), rows, self.index())
    }
}

/// Construction with s = a - 1: p_j(x) = tr_{E/B}(xi_j (z - z*)) / (z - z*)
/// for z = x / beta^m, lifted by the eta basis.
pub fn construct_i(oc: &OneCoset, failed: usize) -> Result<RepairScheme> {
    oc.check_failed(failed)?;
    let f = oc.ctx();
    let (q, a) = (f.q(), oc.params.a);
    if q_pow(q, a - 1) as usize > oc.code.r() {
        return Err(Error::SubspaceTooLarge { s: a - 1, redundancy: oc.code.r() });
    }
    let zs = oc.z(failed);
    let row: Vec<FPoly> = oc
        .xi
        .iter()
        .map(|&xj| {
            (0..a).fold(FPoly::zero(), |acc, i| {
                let qi = q_pow(q, i);
                let term = z_power(f, zs, qi - 1, oc.params.m).scale(f, f.frobenius(xj, i));
                acc.add(f, &term)
            })
        })
        .collect();
    let n = oc.code.n() as i128;
    let pred = rational(oc.index() as i128 * (n - 1));
    Ok(RepairScheme::new(oc.code.clone(), vec![failed], f.base(), oc.lifted(vec![row]))?
        .with_prediction(Prediction::equal(pred, "(ell/a)(n-1)"))
        .with_label("I"))
}

/// Construction with a subspace W of dimension s:
/// p_j(x) = xi_j prod_{w in W*} (z - (z* - xi_j / w)), lifted by eta.
pub fn construct_ii(oc: &OneCoset, failed: usize) -> Result<RepairScheme> {
    construct_ii_with(oc, failed, oc.params.s, oc.params.w)
}

pub fn construct_ii_with(oc: &OneCoset, failed: usize, s: usize, w: WChoice) -> Result<RepairScheme> {
    oc.check_failed(failed)?;
    let f = oc.ctx();
    let a = oc.params.a;
    if s >= a {
        return Err(Error::InvalidParameter(format!("need s < a, got s={s} a={a}")));
    }
    if q_pow(f.q(), s) as usize > oc.code.r() {
        return Err(Error::SubspaceTooLarge { s, redundancy: oc.code.r() });
    }
    let ws = oc.w_elements(s, w)?;
    let zs = oc.z(failed);
    let row: Vec<FPoly> = oc
        .xi
        .iter()
        .map(|&xj| {
            let roots: Vec<FieldElem> = ws[1..].iter().map(|&wv| f.sub(zs, f.div(xj, wv))).collect();
            z_product(f, xj, &roots, oc.params.m)
        })
        .collect();
    let n = oc.code.n() as i128;
    let pred = rational(oc.index() as i128 * (n - 1) * (a - s) as i128);
    Ok(RepairScheme::new(oc.code.clone(), vec![failed], f.base(), oc.lifted(vec![row]))?
        .with_prediction(Prediction::upper_bound(pred, "(ell/a)(n-1)(a-s)"))
        .with_label("II"))
}

/// Full download from d helpers: p_j(x) = beta^j prod_{v excluded} (x - alpha_v),
/// where the helpers are the first d surviving nodes.
pub fn naive(code: &Arc<RSCode>, failed: usize, d: usize) -> Result<RepairScheme> {
    let f = code.ctx();
    let n = code.n();
    if failed >= n || d < code.k() || d > n - 1 {
        return Err(Error::InvalidParameter(format!("naive repair needs k <= d <= n-1, got d={d}")));
    }
    let excluded: Vec<FieldElem> =
        (0..n).filter(|&t| t != failed).skip(d).map(|t| code.points()[t]).collect();
    let vanish = FPoly::from_roots(f, &excluded);
    let row = (0..f.ell()).map(|j| vanish.scale(f, f.pow(f.primitive(), j as u128))).collect();
    let pred = rational(d as i128 * f.ell() as i128);
    Ok(RepairScheme::new(code.clone(), vec![failed], f.base(), vec![row])?
        .with_prediction(Prediction::equal(pred, "d*ell"))
        .with_label("naive"))
}
