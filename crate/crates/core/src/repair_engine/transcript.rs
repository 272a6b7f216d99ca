use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf_tower::{rank_over, FieldElem, RankInfo};

use super::scheme::RepairScheme;

/// What one helper sends: traces of its symbol against the pivot dual
/// symbols, plus the public matrix rebuilding the other traces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelperTranscript {
    pub helper: usize,
    /// (i, j) pairs whose traces are sent.
    pub pivots: Vec<(usize, usize)>,
    /// Elements of K.
    pub symbols: Vec<FieldElem>,
    /// `recon[i * L + j][p]`: coefficient of pivot p in trace (i, j).
    pub recon: Vec<Vec<FieldElem>>,
}

/// JSON wire form `{helper, pivots, symbols}` with hex symbols.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptWire {
    pub helper: usize,
    pub pivots: Vec<[usize; 2]>,
    pub symbols: Vec<String>,
}

/// Greedy pivots and reconstruction coefficients at node t; this depends on
/// the scheme only, never on the codeword.
pub fn helper_plan(scheme: &RepairScheme, t: usize) -> RankInfo {
    rank_over(scheme.ctx(), scheme.base(), &scheme.dual_symbols_at(t))
}

pub fn helper_transcript(scheme: &RepairScheme, codeword: &[FieldElem], t: usize) -> Result<HelperTranscript> {
    if !scheme.helpers().contains(&t) {
        return Err(Error::NotAHelper(t));
    }
    let f = scheme.ctx();
    let kf = scheme.base();
    let l = scheme.l();
    let plan = helper_plan(scheme, t);
    let dual = scheme.dual_symbols_at(t);
    let c = codeword[t];
    let symbols = plan.pivots.iter().map(|&p| kf.trace(f, f.mul(dual[p], c))).collect();
    Ok(HelperTranscript {
        helper: t,
        pivots: plan.pivots.iter().map(|&p| (p / l, p % l)).collect(),
        symbols,
        recon: plan.coeffs,
    })
}

impl HelperTranscript {
    /// Size in K-symbols.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// All e*L traces, rebuilt from the pivot traces.
    pub fn all_traces(&self, scheme: &RepairScheme) -> Vec<FieldElem> {
        let kc = scheme.base().ctx();
        self.recon
            .iter()
            .map(|row| row.iter().zip(&self.symbols).fold(FieldElem::ZERO, |acc, (&a, &s)| kc.add(acc, kc.mul(a, s))))
            .collect()
    }

    pub fn to_wire(&self) -> TranscriptWire {
        TranscriptWire {
            helper: self.helper,
            pivots: self.pivots.iter().map(|&(i, j)| [i, j]).collect(),
            symbols: self.symbols.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Rebuild from the wire form; the reconstruction matrix is recomputed
    /// from the scheme.
    pub fn from_wire(scheme: &RepairScheme, w: &TranscriptWire) -> Result<HelperTranscript> {
        if !scheme.helpers().contains(&w.helper) {
            return Err(Error::NotAHelper(w.helper));
        }
        let l = scheme.l();
        let plan = helper_plan(scheme, w.helper);
        let pivots: Vec<(usize, usize)> = plan.pivots.iter().map(|&p| (p / l, p % l)).collect();
        let wire_pivots: Vec<(usize, usize)> = w.pivots.iter().map(|p| (p[0], p[1])).collect();
        if pivots != wire_pivots || w.symbols.len() != pivots.len() {
            return Err(Error::Parse(format!("transcript of helper {} does not match the scheme", w.helper)));
        }
        let kc = scheme.base().ctx();
        let symbols = w.symbols.iter().map(|s| kc.parse_elem(s)).collect::<Result<Vec<_>>>()?;
        Ok(HelperTranscript { helper: w.helper, pivots, symbols, recon: plan.coeffs })
    }
}
