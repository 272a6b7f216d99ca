use crate::gf_tower::{rank_over, FieldElem, Matrix};

use super::scheme::RepairScheme;

/// The repair matrix over K: block (i, v) has entry (j, m) equal to
/// tr(xi_m p_ij(alpha_v)) for failed nodes v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairMatrixS {
    pub e: usize,
    pub l: usize,
    pub matrix: Matrix,
}

impl RepairMatrixS {
    pub fn block(&self, i: usize, v: usize) -> Matrix {
        self.matrix.block(i * self.l, v * self.l, self.l, self.l)
    }
}

/// S_it for an arbitrary node t, rows j and columns m.
pub fn s_block(scheme: &RepairScheme, i: usize, t: usize) -> Matrix {
    let f = scheme.ctx();
    let kf = scheme.base();
    let l = scheme.l();
    let ev = &scheme.evals_at(t)[i * l..(i + 1) * l];
    let mut m = Matrix::zeros(l, l);
    for (j, &p) in ev.iter().enumerate() {
        for (c, &x) in scheme.xi().iter().enumerate() {
            m.set(j, c, kf.trace(f, f.mul(x, p)));
        }
    }
    m
}

fn assemble(scheme: &RepairScheme, weights: impl Fn(usize) -> FieldElem) -> Matrix {
    let f = scheme.ctx();
    let kf = scheme.base();
    let (e, l) = (scheme.e(), scheme.l());
    let mut m = Matrix::zeros(e * l, e * l);
    for (v, &node) in scheme.failed().iter().enumerate() {
        let w = weights(node);
        for (row, &p) in scheme.evals_at(node).iter().enumerate() {
            let p = f.mul(w, p);
            for (c, &x) in scheme.xi().iter().enumerate() {
                m.set(row, v * l + c, kf.trace(f, f.mul(x, p)));
            }
        }
    }
    m
}

pub fn repair_matrix(scheme: &RepairScheme) -> RepairMatrixS {
    RepairMatrixS { e: scheme.e(), l: scheme.l(), matrix: assemble(scheme, |_| FieldElem::ONE) }
}

/// S with each column block v weighted by upsilon_v: the system actually
/// solved during repair, whose unknowns are xi-coordinates of the failed
/// symbols.
pub(crate) fn weighted_matrix(scheme: &RepairScheme) -> Matrix {
    let u = scheme.code().upsilon();
    assemble(scheme, |v| u[v])
}

/// Full-rank condition: the evaluations at the failed node span F over K
/// when e = 1, and S is invertible otherwise.
pub fn check_full_rank(scheme: &RepairScheme) -> bool {
    if scheme.e() == 1 {
        let vals = scheme.evals_at(scheme.failed()[0]);
        rank_over(scheme.ctx(), scheme.base(), vals).rank == scheme.l()
    } else {
        let s = repair_matrix(scheme);
        s.matrix.rank(scheme.base().ctx()) == s.matrix.rows()
    }
}

/// Full-rank condition via the vectors V_ij = (p_ij(alpha_v))_v over K,
/// computed without the repair matrix.
pub fn vectors_independent(scheme: &RepairScheme) -> bool {
    let kf = scheme.base();
    let kc = kf.ctx();
    let rows: Vec<Vec<FieldElem>> = (0..scheme.e() * scheme.l())
        .map(|row| scheme.failed().iter().flat_map(|&v| kf.coords(scheme.evals_at(v)[row])).collect())
        .collect();
    Matrix::from_rows(rows).rank(kc) == scheme.e() * scheme.l()
}

/// rank [S_1t; ...; S_et] equals rank_K {p_ij(alpha_t)}.
pub fn stacked_rank_check(scheme: &RepairScheme, t: usize) -> bool {
    let l = scheme.l();
    let mut rows = Vec::with_capacity(scheme.e() * l);
    for i in 0..scheme.e() {
        rows.extend(s_block(scheme, i, t).to_rows());
    }
    let stacked = Matrix::from_rows(rows).rank(scheme.base().ctx());
    stacked == rank_over(scheme.ctx(), scheme.base(), scheme.evals_at(t)).rank
}
