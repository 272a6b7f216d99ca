use std::collections::HashSet;
use std::sync::Arc;

use num_integer::Integer;

use super::common::rational;
use crate::error::{Error, Result};
use crate::gf_tower::{rank_over, subspace_span, FieldCtx, FieldElem, SubfieldHandle, SubspaceHandle};
use crate::repair_engine::{Prediction, RepairScheme};
use crate::rs_core::{FPoly, RSCode};

/// A repair scheme of an RS(n', k') code over F' = GF(q^{ell'}), given by
/// its points and per-failure polynomials. k' may be non-positive, so no
/// code object is built; bandwidth is measured by rank directly.
#[derive(Debug, Clone)]
pub struct OriginalSchemeAdapter {
    pub ctx: Arc<FieldCtx>,
    pub points: Vec<FieldElem>,
    /// n' - k'.
    pub r: usize,
    /// `polys[i]`: the ell' polynomials repairing node i.
    pub polys: Vec<Vec<FPoly>>,
}

impl OriginalSchemeAdapter {
    pub fn new(ctx: Arc<FieldCtx>, points: Vec<FieldElem>, r: usize, polys: Vec<Vec<FPoly>>) -> Result<Self> {
        if rank_over(&ctx, &ctx.base(), &points).rank != points.len() {
            return Err(Error::DependentOriginalPoints);
        }
        if polys.len() != points.len() || polys.iter().any(|row| row.len() != ctx.ell()) {
            return Err(Error::InvalidParameter("need ell' polynomials per original node".into()));
        }
        for p in polys.iter().flatten() {
            if let Some(d) = p.degree() {
                if d >= r {
                    return Err(Error::DegreeTooHigh { degree: d, bound: r });
                }
            }
        }
        Ok(OriginalSchemeAdapter { ctx, points, r, polys })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// rank_B {p'_j(alpha'_t)} for every node t when repairing node i.
    pub fn ranks(&self, i: usize) -> Vec<usize> {
        let f = &self.ctx;
        let b = f.base();
        self.points
            .iter()
            .map(|&x| {
                let vals: Vec<FieldElem> = self.polys[i].iter().map(|p| p.eval(f, x)).collect();
                rank_over(f, &b, &vals).rank
            })
            .collect()
    }

    pub fn full_rank(&self, i: usize) -> bool {
        self.ranks(i)[i] == self.ctx.ell()
    }

    /// b'_i in GF(q)-symbols.
    pub fn bandwidth(&self, i: usize) -> u64 {
        self.ranks(i).iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &r)| r as u64).sum()
    }
}

/// Points beta'^{r^i}, i < n', and for failure i the polynomials beta'^c x^s
/// with the i-th r-ary digit of c zero and s < r; requires ell' = r^{n'}.
pub fn ye_barg_adapter(r: usize, n_prime: usize, ctx: Arc<FieldCtx>) -> Result<OriginalSchemeAdapter> {
    let ell = ctx.ell();
    if r < 2 || (r as u128).checked_pow(n_prime as u32) != Some(ell as u128) {
        return Err(Error::InvalidParameter(format!("need ell' = r^n', got ell'={ell} r={r} n'={n_prime}")));
    }
    let beta = ctx.primitive();
    let points: Vec<FieldElem> = (0..n_prime).map(|i| ctx.pow(beta, (r as u128).pow(i as u32))).collect();
    if rank_over(&ctx, &ctx.base(), &points).rank != n_prime {
        return Err(Error::DependentEvaluationPoints);
    }
    let polys = (0..n_prime)
        .map(|i| {
            let ri = r.pow(i as u32);
            (0..ell)
                .filter(|c| (c / ri).is_multiple_of(r))
                .flat_map(|c| {
                    let coef = ctx.pow(beta, c as u128);
                    (0..r).map(move |s| FPoly::monomial(coef, s))
                })
                .collect()
        })
        .collect();
    OriginalSchemeAdapter::new(ctx, points, r, polys)
}

/// How E is realized in the extension.
#[derive(Debug, Clone)]
pub enum ExtensionMode {
    /// gcd(a, ell') = 1: E = GF(q^a) and K = E.
    Subfield(Arc<SubfieldHandle>),
    /// Otherwise E = span_B{1, beta, ..., beta^{a-1}} and K = GF(q), with the
    /// polynomials multiplied by that basis.
    Subspace(SubspaceHandle),
}

/// The extended code on the points alpha_i E* and its per-coset repair
/// polynomials.
#[derive(Debug, Clone)]
pub struct MultiCoset {
    pub original: OriginalSchemeAdapter,
    pub a: usize,
    pub code: Arc<RSCode>,
    pub mode: ExtensionMode,
    /// |E*|.
    pub coset_size: usize,
    /// b'_i of the original scheme.
    pub b_prime: Vec<u64>,
    rows: Vec<Vec<FPoly>>,
}

/// A root in F of the modulus of F', giving the embedding F' -> F.
fn embedding_root(f: &FieldCtx, fp: &FieldCtx) -> Result<FieldElem> {
    let sub = f.subfield(fp.ell())?;
    let g = sub.gamma();
    let mut x = g;
    for _ in 0..sub.order() {
        if f.eval_base_poly(fp.modulus(), x).is_zero() {
            return Ok(x);
        }
        x = f.mul(x, g);
    }
    Err(Error::InvalidParameter("no embedding of F' into F".into()))
}

fn embed_elem(f: &FieldCtx, fp: &FieldCtx, rho: FieldElem, x: FieldElem) -> FieldElem {
    f.eval_base_poly(&fp.coeffs(x), rho)
}

/// Extend `original` by E of degree a to a code of length (q^a - 1) n' over
/// GF(q^{a ell'}), checking the rank condition at every new point.
pub fn extend_multi_coset(original: OriginalSchemeAdapter, a: usize) -> Result<MultiCoset> {
    let fp = original.ctx.clone();
    let q = fp.q();
    let f = FieldCtx::new(q, a * fp.ell(), None)?;
    let rho = embedding_root(&f, &fp)?;
    let phi = |x: FieldElem| embed_elem(&f, &fp, rho, x);
    let phi_poly = |p: &FPoly| FPoly::new(p.coeffs().iter().map(|&c| phi(c)).collect());

    let (mode, e_star) = if a.gcd(&fp.ell()) == 1 {
        let e = f.subfield(a)?;
        let g = e.gamma();
        let star: Vec<FieldElem> = (0..e.order() - 1).map(|j| f.pow(g, j)).collect();
        (ExtensionMode::Subfield(e), star)
    } else {
        let gens: Vec<FieldElem> = (0..a).map(|w| f.pow(f.primitive(), w as u128)).collect();
        let span = subspace_span(&f, &f.base(), &gens)?;
        let star = span.nonzero(&f);
        (ExtensionMode::Subspace(span), star)
    };
    let coset_size = e_star.len();
    let mut points = Vec::with_capacity(coset_size * original.n());
    for &alpha in &original.points {
        let ea = phi(alpha);
        points.extend(e_star.iter().map(|&g| f.mul(ea, g)));
    }
    if points.iter().collect::<HashSet<_>>().len() != points.len() {
        return Err(Error::CosetCollision);
    }
    let n = points.len();
    if original.r >= n {
        return Err(Error::InvalidParameter(format!("redundancy {} too large for n={n}", original.r)));
    }
    let code = Arc::new(RSCode::new(f.clone(), points, n - original.r)?);
    let rows: Vec<Vec<FPoly>> = original.polys.iter().map(|row| row.iter().map(phi_poly).collect()).collect();
    let b_prime = (0..original.n()).map(|i| original.bandwidth(i)).collect();
    let mc = MultiCoset { original, a, code, mode, coset_size, b_prime, rows };
    for i in 0..mc.original.n() {
        mc.check_rank_condition(i)?;
    }
    Ok(mc)
}

impl MultiCoset {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.code.ctx()
    }

    pub fn coset_of(&self, t: usize) -> usize {
        t / self.coset_size
    }

    /// rank_E {p_j(x)} = rank_B {p'_j(alpha'_eps)} for every x in
    /// alpha_eps E*, when repairing a node of coset i.
    pub fn check_rank_condition(&self, i: usize) -> Result<()> {
        let f = self.ctx();
        let want = self.original.ranks(i);
        for (t, &x) in self.code.points().iter().enumerate() {
            let vals: Vec<FieldElem> = self.rows[i].iter().map(|p| p.eval(f, x)).collect();
            let got = match &self.mode {
                ExtensionMode::Subfield(e) => rank_over(f, e, &vals).rank,
                ExtensionMode::Subspace(s) => s.rank_of(f, &vals).0,
            };
            let eps = self.coset_of(t);
            if got != want[eps] {
                return Err(Error::ConditionViolated(format!(
                    "rank {got} at node {t} differs from original rank {} at node {eps}",
                    want[eps]
                )));
            }
        }
        Ok(())
    }

    pub fn scheme_for(&self, failed: usize) -> Result<RepairScheme> {
        let f = self.ctx();
        if failed >= self.code.n() {
            return Err(Error::InvalidParameter(format!("no node {failed}")));
        }
        let i = self.coset_of(failed);
        let (kf, row) = match &self.mode {
            ExtensionMode::Subfield(e) => (e.clone(), self.rows[i].clone()),
            ExtensionMode::Subspace(s) => {
                let row = self.rows[i].iter().flat_map(|p| s.gens().iter().map(move |&g| p.scale(f, g))).collect();
                (f.base(), row)
            }
        };
        let qa = f.q().pow(self.a as u32) as i128;
        let pred = rational(self.a as i128 * self.b_prime[i] as i128 * (qa - 1) + (qa - 2) * f.ell() as i128);
        Ok(RepairScheme::new(self.code.clone(), vec![failed], kf, vec![row])?
            .with_prediction(Prediction::equal(pred, "a b' (q^a-1) + (q^a-2) ell"))
            .with_label("multi_coset_1"))
    }
}
