use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Coset occupancy of a failure set: h_1 >= h_2 >= ... >= h_e, sum e.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErasureLayout {
    /// Coset of each failed node, in input order.
    pub cosets: Vec<usize>,
    pub h: Vec<usize>,
}

impl ErasureLayout {
    pub fn h1(&self) -> usize {
        self.h.first().copied().unwrap_or(0)
    }
}

/// Peel one erasure off every occupied coset per round; h_i counts the
/// cosets still occupied in round i. `coset_map[t]` is the coset of node t.
pub fn erasure_layout(failed: &[usize], coset_map: &[usize]) -> Result<ErasureLayout> {
    let cosets = failed
        .iter()
        .map(|&t| coset_map.get(t).copied().ok_or_else(|| Error::InvalidParameter(format!("node {t} has no coset"))))
        .collect::<Result<Vec<_>>>()?;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &cosets {
        *counts.entry(c).or_default() += 1;
    }
    let h = (1..=failed.len()).map(|round| counts.values().filter(|&&c| c >= round).count()).collect();
    Ok(ErasureLayout { cosets, h })
}

/// A layout given directly by its h sequence.
pub fn layout_from_h(h: Vec<usize>) -> Result<ErasureLayout> {
    if h.windows(2).any(|w| w[0] < w[1]) || h.iter().sum::<usize>() != h.len() {
        return Err(Error::InvalidParameter(format!("h must be non-increasing with sum e, got {h:?}")));
    }
    Ok(ErasureLayout { cosets: Vec::new(), h })
}
