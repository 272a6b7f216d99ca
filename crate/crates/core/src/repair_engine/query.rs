use crate::error::{Error, Result};
use crate::gf_tower::{FieldElem, SubfieldHandle};
use crate::rs_core::RSCode;

use std::sync::Arc;

use super::matrix::{check_full_rank, weighted_matrix};
use super::scheme::RepairScheme;
use super::transcript::helper_plan;

/// Query form of a repair scheme: helper t answers tr(q c_t) for each of its
/// queries q, and failed symbol v is sum_m mu_m sum coeffs[v][m][(t, p)]
/// times those answers.
#[derive(Debug, Clone)]
pub struct QueryScheme {
    pub failed: Vec<usize>,
    pub base: Arc<SubfieldHandle>,
    /// (helper, queries) for helpers with at least one query.
    pub queries: Vec<(usize, Vec<FieldElem>)>,
    pub mu: Vec<FieldElem>,
    /// `coeffs[v][m]` lists one K-coefficient per answer, in query order.
    pub coeffs: Vec<Vec<Vec<FieldElem>>>,
}

pub fn to_query_scheme(scheme: &RepairScheme) -> Result<QueryScheme> {
    if !check_full_rank(scheme) {
        return Err(Error::FullRankViolated);
    }
    let kc = scheme.base().ctx();
    let (e, l) = (scheme.e(), scheme.l());
    let sinv = weighted_matrix(scheme).inverse(kc).ok_or(Error::SingularSystem)?;
    let mut queries = Vec::new();
    // recon rows stacked over all answers: column index = answer index
    let mut recon_cols: Vec<Vec<FieldElem>> = Vec::new();
    for &t in scheme.helpers() {
        let plan = helper_plan(scheme, t);
        if plan.rank == 0 {
            continue;
        }
        let dual = scheme.dual_symbols_at(t);
        queries.push((t, plan.pivots.iter().map(|&p| dual[p]).collect()));
        for p in 0..plan.rank {
            recon_cols.push(plan.coeffs.iter().map(|row| row[p]).collect());
        }
    }
    // X = S^{-1} rhs with rhs = -recon * answers.
    let coeffs = (0..e)
        .map(|v| {
            (0..l)
                .map(|m| {
                    let srow = sinv.row(v * l + m);
                    recon_cols
                        .iter()
                        .map(|col| {
                            let dot = srow.iter().zip(col).fold(FieldElem::ZERO, |acc, (&a, &b)| kc.add(acc, kc.mul(a, b)));
                            kc.neg(dot)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(QueryScheme {
        failed: scheme.failed().to_vec(),
        base: scheme.base().clone(),
        queries,
        mu: scheme.xi().to_vec(),
        coeffs,
    })
}

impl QueryScheme {
    /// Total number of K-symbols answered.
    pub fn bandwidth_k(&self) -> u64 {
        self.queries.iter().map(|(_, q)| q.len() as u64).sum()
    }

    pub fn execute(&self, code: &RSCode, codeword: &[FieldElem]) -> Vec<FieldElem> {
        let f = code.ctx();
        let kf = &self.base;
        let kc = kf.ctx();
        let answers: Vec<FieldElem> = self
            .queries
            .iter()
            .flat_map(|(t, qs)| qs.iter().map(move |&q| kf.trace(f, f.mul(q, codeword[*t]))))
            .collect();
        self.coeffs
            .iter()
            .map(|per_m| {
                per_m.iter().zip(&self.mu).fold(FieldElem::ZERO, |acc, (cs, &mu)| {
                    let x = cs.iter().zip(&answers).fold(FieldElem::ZERO, |a, (&c, &y)| kc.add(a, kc.mul(c, y)));
                    f.add(acc, kf.scale(f, x, mu))
                })
            })
            .collect()
    }
}
