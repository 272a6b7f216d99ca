use super::field::{FieldCtx, FieldElem};
use super::linalg::{Echelon, Insert, Matrix};
use super::subfield::SubfieldHandle;
use crate::error::{Error, Result};

/// Result of [`rank_over`]: the greedy pivot set and, for every input, its
/// K-coefficients over the pivots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankInfo {
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// `coeffs[i][p]` is the K-coefficient of pivot `pivots[p]` in element i.
    pub coeffs: Vec<Vec<FieldElem>>,
}

/// Rank of `elems` over K with pivots chosen greedily in ascending index.
pub fn rank_over(f: &FieldCtx, k: &SubfieldHandle, elems: &[FieldElem]) -> RankInfo {
    debug_assert!(k.check_parent(f).is_ok());
    let kc = k.ctx();
    let mut ech = Echelon::new(k.index());
    let mut pivots = Vec::new();
    let mut raw: Vec<Vec<FieldElem>> = Vec::with_capacity(elems.len());
    for (i, &x) in elems.iter().enumerate() {
        match ech.insert(kc, &k.coords(x)) {
            Insert::Pivot(p) => {
                pivots.push(i);
                let mut c = vec![FieldElem::ZERO; p + 1];
                c[p] = FieldElem::ONE;
                raw.push(c);
            }
            Insert::Dependent(c) => raw.push(c),
        }
    }
    let rank = pivots.len();
    let coeffs = raw
        .into_iter()
        .map(|mut c| {
            c.resize(rank, FieldElem::ZERO);
            c
        })
        .collect();
    RankInfo { rank, pivots, coeffs }
}

/// A basis of F over K, with its trace-dual when computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub elems: Vec<FieldElem>,
    pub over: usize,
    pub dual: Option<Vec<FieldElem>>,
}

impl Basis {
    pub fn new(f: &FieldCtx, k: &SubfieldHandle, elems: Vec<FieldElem>) -> Result<Basis> {
        if elems.len() != k.index() || rank_over(f, k, &elems).rank != elems.len() {
            return Err(Error::NotABasis);
        }
        Ok(Basis { elems, over: k.degree(), dual: None })
    }

    /// {beta^j : j < [F:K]}.
    pub fn power(f: &FieldCtx, k: &SubfieldHandle) -> Basis {
        let elems = (0..k.index()).map(|j| f.pow(f.primitive(), j as u128)).collect();
        Basis { elems, over: k.degree(), dual: None }
    }

    pub fn with_dual(mut self, f: &FieldCtx, k: &SubfieldHandle) -> Result<Basis> {
        self.dual = Some(dual_basis(f, k, &self.elems)?);
        Ok(self)
    }
}

/// Trace-dual basis: tr_{F/K}(b_i d_j) = [i == j].
pub fn dual_basis(f: &FieldCtx, k: &SubfieldHandle, basis: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let m = k.index();
    if basis.len() != m {
        return Err(Error::NotABasis);
    }
    let kc = k.ctx();
    let mut g = Matrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            g.set(i, j, k.trace(f, f.mul(basis[i], basis[j])));
        }
    }
    let inv = g.inverse(kc).ok_or(Error::NotABasis)?;
    Ok((0..m)
        .map(|j| {
            (0..m).fold(FieldElem::ZERO, |acc, l| f.add(acc, k.scale(f, inv.get(j, l), basis[l])))
        })
        .collect())
}

/// y = sum_j dual_j tr(basis_j y).
pub fn recombine(f: &FieldCtx, k: &SubfieldHandle, basis: &[FieldElem], dual: &[FieldElem], y: FieldElem) -> FieldElem {
    basis
        .iter()
        .zip(dual)
        .fold(FieldElem::ZERO, |acc, (&b, &d)| f.add(acc, k.scale(f, k.trace(f, f.mul(b, y)), d)))
}
