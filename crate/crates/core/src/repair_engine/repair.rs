use crate::error::{Error, Result};
use crate::gf_tower::{dual_basis, FieldElem};

use super::matrix::{check_full_rank, weighted_matrix};
use super::scheme::RepairScheme;
use super::transcript::{helper_plan, helper_transcript, HelperTranscript};

/// -sum_t tr(upsilon_t p_ij(alpha_t) c_t) over helpers, for every (i, j).
fn right_hand_side(scheme: &RepairScheme, transcripts: &[HelperTranscript]) -> Result<Vec<FieldElem>> {
    let kc = scheme.base().ctx();
    let mut rhs = vec![FieldElem::ZERO; scheme.e() * scheme.l()];
    for &t in scheme.helpers() {
        let tr = match transcripts.iter().find(|tr| tr.helper == t) {
            Some(tr) => tr,
            None if helper_plan(scheme, t).rank == 0 => continue,
            None => return Err(Error::MissingTranscript(t)),
        };
        for (acc, v) in rhs.iter_mut().zip(tr.all_traces(scheme)) {
            *acc = kc.sub(*acc, v);
        }
    }
    Ok(rhs)
}

/// Rebuild the failed symbols, in the order of `scheme.failed()`.
pub fn repair(scheme: &RepairScheme, transcripts: &[HelperTranscript]) -> Result<Vec<FieldElem>> {
    let f = scheme.ctx();
    let kf = scheme.base();
    let rhs = right_hand_side(scheme, transcripts)?;
    if scheme.e() == 1 {
        // c* = sum_j mu_j tr(upsilon* p_j(alpha*) c*), mu dual to the
        // failed node's dual symbols.
        let star = scheme.dual_symbols_at(scheme.failed()[0]);
        let mu = dual_basis(f, kf, &star).map_err(|_| Error::FullRankViolated)?;
        let c = mu.iter().zip(&rhs).fold(FieldElem::ZERO, |acc, (&m, &r)| f.add(acc, kf.scale(f, r, m)));
        return Ok(vec![c]);
    }
    let s = weighted_matrix(scheme);
    let x = s.solve(kf.ctx(), &rhs).ok_or(Error::SingularSystem)?;
    let l = scheme.l();
    Ok((0..scheme.e())
        .map(|v| {
            scheme.xi().iter().zip(&x[v * l..(v + 1) * l]).fold(FieldElem::ZERO, |acc, (&b, &c)| f.add(acc, kf.scale(f, c, b)))
        })
        .collect())
}

/// Every helper transcript for `codeword`, in helper order.
pub fn all_transcripts(scheme: &RepairScheme, codeword: &[FieldElem]) -> Vec<HelperTranscript> {
    scheme
        .helpers()
        .iter()
        .map(|&t| helper_transcript(scheme, codeword, t).expect("t is a helper"))
        .collect()
}

/// Transcripts then repair; fails with `FullRankViolated` up front.
pub fn repair_codeword(scheme: &RepairScheme, codeword: &[FieldElem]) -> Result<Vec<FieldElem>> {
    if !check_full_rank(scheme) {
        return Err(Error::FullRankViolated);
    }
    repair(scheme, &all_transcripts(scheme, codeword))
}
