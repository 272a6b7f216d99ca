use serde::Serialize;

use crate::error::{Error, Result};

use super::matrix::check_full_rank;
use super::scheme::{Prediction, RepairScheme};
use super::transcript::helper_plan;

/// Measured repair bandwidth of a scheme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BandwidthReport {
    /// (helper, rank over K) for every surviving node.
    pub per_helper: Vec<(usize, usize)>,
    pub total_k: u64,
    /// [K : GF(q)].
    pub k_degree: usize,
    pub total_gq: u64,
    pub q: u64,
    #[serde(skip)]
    pub prediction: Option<Prediction>,
}

impl BandwidthReport {
    /// Bits when q = 2, otherwise `None`.
    pub fn bits_exact(&self) -> Option<u64> {
        (self.q == 2).then_some(self.total_gq)
    }

    pub fn bits(&self) -> f64 {
        self.total_gq as f64 * (self.q as f64).log2()
    }

    /// Whether the measured total satisfies the closed form (vacuously true
    /// without one).
    pub fn prediction_holds(&self) -> bool {
        self.prediction.as_ref().is_none_or(|p| p.holds_for(self.total_gq))
    }

    /// Helpers that send at least one symbol.
    pub fn active_helpers(&self) -> usize {
        self.per_helper.iter().filter(|(_, r)| *r > 0).count()
    }
}

pub fn measure_bandwidth(scheme: &RepairScheme) -> Result<BandwidthReport> {
    if !check_full_rank(scheme) {
        return Err(Error::FullRankViolated);
    }
    let per_helper: Vec<(usize, usize)> = scheme.helpers().iter().map(|&t| (t, helper_plan(scheme, t).rank)).collect();
    let total_k: u64 = per_helper.iter().map(|&(_, r)| r as u64).sum();
    let k_degree = scheme.base().degree();
    Ok(BandwidthReport {
        per_helper,
        total_k,
        k_degree,
        total_gq: total_k * k_degree as u64,
        q: scheme.ctx().q(),
        prediction: scheme.prediction().cloned(),
    })
}
