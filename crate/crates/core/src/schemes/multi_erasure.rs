use num_rational::BigRational;

use super::common::{eta_lift, q_pow, rational, z_power, z_product};
use super::one_coset::{OneCoset, WChoice};
use crate::error::{Error, Result};
use crate::gf_tower::{dual_basis, rank_over, same_coset, FieldElem, Matrix};
use crate::repair_engine::{check_full_rank, s_block, Prediction, RepairScheme};
use crate::rs_core::FPoly;

fn check_failed_set(oc: &OneCoset, failed: &[usize]) -> Result<()> {
    let f = oc.ctx();
    let n = oc.code.n();
    if failed.is_empty() || failed.iter().any(|&t| t >= n) {
        return Err(Error::InvalidParameter(format!("bad failure set {failed:?}")));
    }
    if failed.len() > oc.code.r() {
        return Err(Error::TooManyErasures { erased: failed.len(), redundancy: oc.code.r() });
    }
    let first = oc.code.points()[failed[0]];
    if failed.iter().any(|&t| !same_coset(f, &oc.e, oc.code.points()[t], first)) {
        return Err(Error::ErasuresSpanCosets);
    }
    Ok(())
}

/// GF(q)-independence of V_ij = (upsilon_v values[v][row])_v over the
/// failed nodes.
fn vectors_independent(oc: &OneCoset, failed: &[usize], values: &[Vec<FieldElem>]) -> bool {
    let f = oc.ctx();
    let b = f.base();
    let ups = oc.code.upsilon();
    let rows: Vec<Vec<FieldElem>> = (0..values[0].len())
        .map(|row| failed.iter().flat_map(|&v| b.coords(f.mul(ups[v], values[v][row]))).collect())
        .collect();
    Matrix::from_rows(rows).rank(b.ctx()) == values[0].len()
}

fn helper_rank_sum(oc: &OneCoset, failed: &[usize], values: &[Vec<FieldElem>]) -> u64 {
    let f = oc.ctx();
    let b = f.base();
    (0..oc.code.n()).filter(|t| !failed.contains(t)).map(|t| rank_over(f, &b, &values[t]).rank as u64).sum()
}

/// Unlifted values p_ij(alpha_t) of the s = a - 1 construction, row i*a + j.
fn values_iii(oc: &OneCoset, failed: &[usize], deltas: &[FieldElem]) -> Vec<Vec<FieldElem>> {
    let f = oc.ctx();
    let e = oc.e.as_ref();
    (0..oc.code.n())
        .map(|t| {
            let zt = oc.z(t);
            failed
                .iter()
                .zip(deltas)
                .flat_map(|(&fi, &d)| {
                    let diff = f.sub(zt, oc.z(fi));
                    oc.xi.iter().map(move |&mu| {
                        if diff.is_zero() {
                            mu
                        } else {
                            let x = e.project(f.mul(f.div(mu, d), diff)).expect("value lies in E");
                            f.scale(e.ctx().trace_base(x), f.div(d, diff))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// (n-e)e - e(e-1)(q-1)/2, the unlifted GF(q)-rank total.
pub fn target_iii(n: usize, e: usize, q: u64) -> u64 {
    let (n, e) = (n as u64, e as u64);
    (n - e) * e - e * (e - 1) * (q - 1) / 2
}

/// Lexicographic scan over (delta_2, ..., delta_e) in E*, delta_1 = 1. The
/// first tuple meeting the target wins; otherwise the independent tuple of
/// least bandwidth.
pub fn find_deltas_iii(oc: &OneCoset, failed: &[usize]) -> Result<Vec<FieldElem>> {
    let f = oc.ctx();
    let e = failed.len();
    let size = (oc.e.order() - 1) as usize;
    let target = target_iii(oc.code.n(), e, f.q());
    let total = size.checked_pow(e as u32 - 1).ok_or(Error::DeltaSearchExhausted)?;
    let mut best: Option<(u64, Vec<FieldElem>)> = None;
    for idx in 0..total {
        let mut rest = idx;
        let mut deltas = vec![FieldElem::ONE];
        let mut digits = vec![0usize; e - 1];
        for d in digits.iter_mut().rev() {
            *d = rest % size;
            rest /= size;
        }
        deltas.extend(digits.iter().map(|&d| f.pow(oc.e.gamma(), d as u128)));
        let vals = values_iii(oc, failed, &deltas);
        if !vectors_independent(oc, failed, &vals) {
            continue;
        }
        let bw = helper_rank_sum(oc, failed, &vals);
        if bw == target {
            return Ok(deltas);
        }
        if best.as_ref().is_none_or(|(b, _)| bw < *b) {
            best = Some((bw, deltas));
        }
    }
    best.map(|(_, d)| d).ok_or(Error::DeltaSearchExhausted)
}

/// Multi-erasure construction with s = a - 1:
/// p_ij(x) = delta_i tr_{E/B}((mu_j / delta_i)(z - z_i)) / (z - z_i).
pub fn construct_iii(oc: &OneCoset, failed: &[usize]) -> Result<RepairScheme> {
    check_failed_set(oc, failed)?;
    let f = oc.ctx();
    let (q, a) = (f.q(), oc.params.a);
    if q_pow(q, a - 1) as usize > oc.code.r() {
        return Err(Error::SubspaceTooLarge { s: a - 1, redundancy: oc.code.r() });
    }
    let deltas = find_deltas_iii(oc, failed)?;
    let rows: Vec<Vec<FPoly>> = failed
        .iter()
        .zip(&deltas)
        .map(|(&fi, &d)| {
            let zi = oc.z(fi);
            oc.xi
                .iter()
                .map(|&mu| {
                    let md = f.div(mu, d);
                    (0..a).fold(FPoly::zero(), |acc, k| {
                        let c = f.mul(d, f.frobenius(md, k));
                        acc.add(f, &z_power(f, zi, q_pow(q, k) - 1, oc.params.m).scale(f, c))
                    })
                })
                .collect()
        })
        .collect();
    let target = target_iii(oc.code.n(), failed.len(), q);
    let pred = rational(oc.index() as i128 * target as i128);
    let scheme = RepairScheme::new(oc.code.clone(), failed.to_vec(), f.base(), eta_lift(f, rows, oc.index()))?
        .with_prediction(Prediction::equal(pred, "(ell/a)[(n-e)e - e(e-1)(q-1)/2]"))
        .with_label("III");
    if !check_full_rank(&scheme) {
        return Err(Error::DeltaSearchExhausted);
    }
    Ok(scheme)
}

/// How each delta of the subspace construction was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaMethod {
    Fixed,
    LinearSolve,
    Scan,
}

/// Coefficients found for the subspace construction and the W they used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSolution {
    pub deltas: Vec<FieldElem>,
    pub methods: Vec<DeltaMethod>,
    pub w: WChoice,
}

/// Per-W data for the subspace construction.
struct IvCtx<'a> {
    oc: &'a OneCoset,
    failed: &'a [usize],
    s: usize,
    w_star: Vec<FieldElem>,
    /// prod w^{-1} over W*.
    w_inv_prod: FieldElem,
    /// Dual in E of zeta_j = mu_j^{q^s} prod w^{-1}.
    xi_e: Vec<FieldElem>,
}

impl<'a> IvCtx<'a> {
    fn new(oc: &'a OneCoset, failed: &'a [usize], s: usize, w: WChoice) -> Result<IvCtx<'a>> {
        let f = oc.ctx();
        let ws = oc.w_elements(s, w)?;
        let w_star = ws[1..].to_vec();
        let w_inv_prod = w_star.iter().fold(FieldElem::ONE, |acc, &x| f.div(acc, x));
        let ec = oc.e.ctx();
        let zeta: Vec<FieldElem> = oc
            .xi
            .iter()
            .map(|&mu| oc.e.project(f.mul(f.frobenius(mu, s), w_inv_prod)).expect("zeta lies in E"))
            .collect();
        let xi_e = dual_basis(ec, &ec.base(), &zeta)?.into_iter().map(|x| oc.e.embed(x)).collect();
        Ok(IvCtx { oc, failed, s, w_star, w_inv_prod, xi_e })
    }

    /// p_ij(alpha_t) for j < a.
    fn values(&self, i: usize, delta: FieldElem, t: usize) -> Vec<FieldElem> {
        let f = self.oc.ctx();
        let zi = self.oc.z(self.failed[i]);
        let zt = self.oc.z(t);
        let lead = f.pow(delta, (q_pow(f.q(), self.s) - 1) as u128);
        self.oc
            .xi
            .iter()
            .map(|&mu| {
                let md = f.div(mu, delta);
                self.w_star.iter().fold(f.mul(lead, mu), |acc, &w| f.mul(acc, f.sub(zt, f.sub(zi, f.div(md, w)))))
            })
            .collect()
    }

    fn tr_eb(&self, x: FieldElem) -> u64 {
        self.oc.e.ctx().trace_base(self.oc.e.project(x).expect("value lies in E"))
    }

    /// Block S^E_it over GF(q): entry (j, m) = tr_{E/B}(xi_m p_ij(alpha_t)).
    fn block(&self, i: usize, delta: FieldElem, t: usize) -> Matrix {
        let f = self.oc.ctx();
        let rows = self
            .values(i, delta, t)
            .iter()
            .map(|&p| self.xi_e.iter().map(|&x| FieldElem::from_raw(self.tr_eb(f.mul(x, p)))).collect())
            .collect();
        Matrix::from_rows(rows)
    }

    /// S_it S_ty = 0 for every t < i and y > t.
    fn eliminates(&self, deltas: &[FieldElem], i: usize, delta: FieldElem) -> bool {
        let b = self.oc.ctx().base();
        let e = self.failed.len();
        (0..i).all(|t| {
            let sit = self.block(i, delta, self.failed[t]);
            ((t + 1)..e).all(|y| sit.mul(b.ctx(), &self.block(t, deltas[t], self.failed[y])).is_zero())
        })
    }

    /// Phi_ty(u) = sum_m tr_{E/B}(xi_m u) p_tm(alpha_y).
    fn phi(&self, t: usize, dt: FieldElem, y: usize, u: FieldElem) -> FieldElem {
        let f = self.oc.ctx();
        let pt = self.values(t, dt, self.failed[y]);
        self.xi_e.iter().zip(&pt).fold(FieldElem::ZERO, |acc, (&x, &p)| f.add(acc, f.scale(self.tr_eb(f.mul(x, u)), p)))
    }

    /// delta' with Phi_ty(delta' x'^{q^s} prod w^{-1} lambda) = 0 for every t < i,
    /// y > t and lambda in a basis of the image of g(y) = prod_{w in W}(y - w).
    fn linear_solve(&self, deltas: &[FieldElem], i: usize) -> Option<FieldElem> {
        let f = self.oc.ctx();
        let b = f.base();
        let ec = self.oc.e.ctx();
        let g = |y: FieldElem| {
            self.w_star.iter().fold(y, |acc, &w| f.mul(acc, f.sub(y, w)))
        };
        let images: Vec<FieldElem> = self.oc.xi.iter().map(|&mu| g(mu)).collect();
        let info = rank_over(f, &b, &images);
        let lambdas: Vec<FieldElem> = info.pivots.iter().map(|&p| images[p]).collect();
        let zi = self.oc.z(self.failed[i]);
        let mut eqs: Vec<Vec<FieldElem>> = Vec::new();
        for t in 0..i {
            let xp = f.sub(zi, self.oc.z(self.failed[t]));
            let c = f.mul(f.frobenius(xp, self.s), self.w_inv_prod);
            for y in (t + 1)..self.failed.len() {
                for &lam in &lambdas {
                    let cols: Vec<Vec<u64>> = self
                        .oc
                        .xi
                        .iter()
                        .map(|&mu| {
                            let v = self.phi(t, deltas[t], y, f.mul(mu, f.mul(c, lam)));
                            ec.coeffs(self.oc.e.project(v).expect("phi maps into E"))
                        })
                        .collect();
                    for r in 0..self.oc.params.a {
                        eqs.push(cols.iter().map(|col| FieldElem::from_raw(col[r])).collect());
                    }
                }
            }
        }
        let sol = Matrix::from_rows(eqs).nullspace(b.ctx()).into_iter().next()?;
        let dprime = sol.iter().zip(&self.oc.xi).fold(FieldElem::ZERO, |acc, (&c, &mu)| f.add(acc, f.scale(c.raw(), mu)));
        if dprime.is_zero() {
            return None;
        }
        Some(f.frobenius(dprime, f.ell() - self.s))
    }

    fn solve(&self, w: WChoice) -> Result<DeltaSolution> {
        let f = self.oc.ctx();
        let mut deltas = vec![FieldElem::ONE];
        let mut methods = vec![DeltaMethod::Fixed];
        for i in 1..self.failed.len() {
            if let Some(d) = self.linear_solve(&deltas, i).filter(|&d| self.eliminates(&deltas, i, d)) {
                deltas.push(d);
                methods.push(DeltaMethod::LinearSolve);
                continue;
            }
            let g = self.oc.e.gamma();
            let found = (0..self.oc.e.order() - 1).map(|j| f.pow(g, j)).find(|&d| self.eliminates(&deltas, i, d));
            match found {
                Some(d) => {
                    deltas.push(d);
                    methods.push(DeltaMethod::Scan);
                }
                None => return Err(Error::NoDeltaSolution),
            }
        }
        Ok(DeltaSolution { deltas, methods, w })
    }
}

/// Solve for delta_i with delta_1 = 1, trying W as requested and then the
/// subfield W = GF(q^s) when s | a.
pub fn solve_deltas_iv(oc: &OneCoset, failed: &[usize]) -> Result<DeltaSolution> {
    let (s, w) = (oc.params.s, oc.params.w);
    match IvCtx::new(oc, failed, s, w)?.solve(w) {
        Err(Error::NoDeltaSolution) if w == WChoice::Default && s > 0 && oc.params.a.is_multiple_of(s) => {
            IvCtx::new(oc, failed, s, WChoice::Subfield)?.solve(WChoice::Subfield)
        }
        other => other,
    }
}

/// Multi-erasure construction with an s-dimensional W:
/// p_ij(x) = delta_i^{q^s-1} mu_j prod_{w in W*} (z - (z_i - mu_j / (w delta_i))),
/// with the repair matrix taken in the basis dual to zeta_j (E-part) times the
/// dual of the eta basis.
pub fn construct_iv(oc: &OneCoset, failed: &[usize]) -> Result<RepairScheme> {
    check_failed_set(oc, failed)?;
    let f = oc.ctx();
    let (q, a, s) = (f.q(), oc.params.a, oc.params.s);
    let e = failed.len();
    if s >= a {
        return Err(Error::InvalidParameter(format!("need s < a, got s={s} a={a}")));
    }
    if q_pow(q, s) as usize > oc.code.r() {
        return Err(Error::SubspaceTooLarge { s, redundancy: oc.code.r() });
    }
    if a * 2 < e * (e - 1) * (a - s) * (a - s) {
        return Err(Error::InvalidParameter("need a >= e(e-1)/2 (a-s)^2".into()));
    }
    let sol = solve_deltas_iv(oc, failed)?;
    let ctx = IvCtx::new(oc, failed, s, sol.w)?;
    let rows: Vec<Vec<FPoly>> = failed
        .iter()
        .zip(&sol.deltas)
        .map(|(&fi, &d)| {
            let zi = oc.z(fi);
            let lead = f.pow(d, (q_pow(q, s) - 1) as u128);
            oc.xi
                .iter()
                .map(|&mu| {
                    let md = f.div(mu, d);
                    let roots: Vec<FieldElem> = ctx.w_star.iter().map(|&w| f.sub(zi, f.div(md, w))).collect();
                    z_product(f, f.mul(lead, mu), &roots, oc.params.m)
                })
                .collect()
        })
        .collect();
    let etas: Vec<FieldElem> = (0..oc.index()).map(|w| f.pow(f.primitive(), w as u128)).collect();
    let eta_dual = dual_basis(f, &oc.e, &etas)?;
    let xi: Vec<FieldElem> = ctx.xi_e.iter().flat_map(|&x| eta_dual.iter().map(move |&d| f.mul(x, d))).collect();
    let n = oc.code.n() as i128;
    let bound = BigRational::new(
        (e as i128 * f.ell() as i128 * (n - e as i128) * (a - s) as i128).into(),
        (a as i128).into(),
    );
    let label = match sol.w {
        WChoice::Default => "IV",
        WChoice::Subfield => "IV(W=subfield)",
    };
    let scheme = RepairScheme::with_basis(oc.code.clone(), failed.to_vec(), f.base(), eta_lift(f, rows, oc.index()), xi)?
        .with_prediction(Prediction::upper_bound(bound, "(e ell/a)(n-e)(a-s)"))
        .with_label(label);
    if !check_full_rank(&scheme) {
        return Err(Error::SingularSystem);
    }
    Ok(scheme)
}

/// S_ii = I for every i and S_it S_ty = 0 for t < i, y > t, on the lifted
/// repair matrix.
pub fn iv_block_identities(scheme: &RepairScheme) -> bool {
    let kc = scheme.base().ctx();
    let failed = scheme.failed();
    let e = failed.len();
    (0..e).all(|i| s_block(scheme, i, failed[i]).is_identity())
        && (0..e).all(|i| {
            (0..i).all(|t| {
                let sit = s_block(scheme, i, failed[t]);
                ((t + 1)..e).all(|y| sit.mul(kc, &s_block(scheme, t, failed[y])).is_zero())
            })
        })
}

