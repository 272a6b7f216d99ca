use std::sync::Arc;

use super::basis::rank_over;
use super::field::{FieldCtx, FieldElem};
use super::linalg::{Echelon, Insert};
use super::subfield::SubfieldHandle;
use crate::error::{Error, Result};

/// span_K{g_1, ..., g_a} for generators independent over K.
#[derive(Debug, Clone)]
pub struct SubspaceHandle {
    over: Arc<SubfieldHandle>,
    gens: Vec<FieldElem>,
    ech: Echelon,
}

pub fn subspace_span(f: &FieldCtx, over: &Arc<SubfieldHandle>, gens: &[FieldElem]) -> Result<SubspaceHandle> {
    over.check_parent(f)?;
    let mut ech = Echelon::new(over.index());
    for &g in gens {
        if let Insert::Dependent(_) = ech.insert(over.ctx(), &over.coords(g)) {
            return Err(Error::DependentGenerators);
        }
    }
    Ok(SubspaceHandle { over: over.clone(), gens: gens.to_vec(), ech })
}

impl SubspaceHandle {
    pub fn gens(&self) -> &[FieldElem] {
        &self.gens
    }

    pub fn over(&self) -> &Arc<SubfieldHandle> {
        &self.over
    }

    /// Dimension over the designated subfield.
    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn size(&self) -> u128 {
        self.over.order().pow(self.gens.len() as u32)
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        let mut e = self.ech.clone();
        matches!(e.insert(self.over.ctx(), &self.over.coords(x)), Insert::Dependent(_))
    }

    /// The element with K-coordinates `c` over the generators.
    pub fn combine(&self, f: &FieldCtx, c: &[FieldElem]) -> FieldElem {
        c.iter()
            .zip(&self.gens)
            .fold(FieldElem::ZERO, |acc, (&ci, &g)| f.add(acc, self.over.scale(f, ci, g)))
    }

    /// Every element of the span; index i has base-|K| digits as coordinates.
    pub fn elements(&self, f: &FieldCtx) -> Vec<FieldElem> {
        let kvals: Vec<FieldElem> = self.over.ctx().elements().collect();
        let n = kvals.len();
        let total = self.size() as usize;
        (0..total)
            .map(|mut idx| {
                let c: Vec<FieldElem> = (0..self.gens.len())
                    .map(|_| {
                        let d = kvals[idx % n];
                        idx /= n;
                        d
                    })
                    .collect();
                self.combine(f, &c)
            })
            .collect()
    }

    /// The span without zero.
    pub fn nonzero(&self, f: &FieldCtx) -> Vec<FieldElem> {
        self.elements(f).into_iter().filter(|x| !x.is_zero()).collect()
    }

    /// gamma * (span \ {0}).
    pub fn shifted(&self, f: &FieldCtx, gamma: FieldElem) -> Vec<FieldElem> {
        self.nonzero(f).into_iter().map(|x| f.mul(gamma, x)).collect()
    }

    /// Whether `elems` are linearly independent over the span, i.e. the map
    /// (b_j) -> sum b_j x_j from span^m is injective.
    pub fn independent(&self, f: &FieldCtx, elems: &[FieldElem]) -> bool {
        let products: Vec<FieldElem> =
            elems.iter().flat_map(|&x| self.gens.iter().map(move |&g| f.mul(g, x))).collect();
        rank_over(f, &self.over, &products).rank == products.len()
    }

    /// Greedy rank over the span: size and indices of the first maximal
    /// independent subset.
    pub fn rank_of(&self, f: &FieldCtx, elems: &[FieldElem]) -> (usize, Vec<usize>) {
        let mut chosen: Vec<FieldElem> = Vec::new();
        let mut pivots = Vec::new();
        for (i, &x) in elems.iter().enumerate() {
            chosen.push(x);
            if self.independent(f, &chosen) {
                pivots.push(i);
            } else {
                chosen.pop();
            }
        }
        (pivots.len(), pivots)
    }
}
