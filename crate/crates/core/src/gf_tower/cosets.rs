use super::field::{FieldCtx, FieldElem};
use super::subfield::SubfieldHandle;
use crate::error::Result;

/// The t = (q^ell-1)/(q^a-1) cosets beta^i K* of K* in F*.
///
/// Coset i is listed as beta^i gamma^j for j = 0..q^a-2, so membership order
/// is deterministic.
#[derive(Debug, Clone)]
pub struct CosetPartition {
    t: u128,
    size: u128,
    beta: FieldElem,
    gamma: FieldElem,
}

pub fn coset_partition(f: &FieldCtx, k: &SubfieldHandle) -> Result<CosetPartition> {
    k.check_parent(f)?;
    let size = k.order() - 1;
    Ok(CosetPartition { t: (f.order() - 1) / size, size, beta: f.primitive(), gamma: k.gamma() })
}

impl CosetPartition {
    pub fn count(&self) -> u128 {
        self.t
    }

    pub fn coset_size(&self) -> u128 {
        self.size
    }

    pub fn representative(&self, f: &FieldCtx, i: u128) -> FieldElem {
        f.pow(self.beta, i)
    }

    /// The j-th element beta^i gamma^j of coset i.
    pub fn member(&self, f: &FieldCtx, i: u128, j: u128) -> FieldElem {
        f.mul(f.pow(self.beta, i), f.pow(self.gamma, j))
    }

    pub fn coset(&self, f: &FieldCtx, i: u128) -> Vec<FieldElem> {
        let mut x = self.representative(f, i);
        let mut out = Vec::with_capacity(self.size as usize);
        for _ in 0..self.size {
            out.push(x);
            x = f.mul(x, self.gamma);
        }
        out
    }
}

/// Whether x and y lie in the same coset of K*.
pub fn same_coset(f: &FieldCtx, k: &SubfieldHandle, x: FieldElem, y: FieldElem) -> bool {
    if x.is_zero() || y.is_zero() {
        return false;
    }
    k.contains(f.div(x, y))
}
