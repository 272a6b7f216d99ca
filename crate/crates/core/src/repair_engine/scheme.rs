use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf_tower::{dual_basis, rank_over, Basis, FieldCtx, FieldElem, SubfieldHandle};
use crate::rs_core::{FPoly, RSCode};

/// How a closed-form value relates to the measured bandwidth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Equal,
    UpperBound,
}

/// A closed-form bandwidth value in GF(q)-symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub symbols: BigRational,
    pub relation: Relation,
    pub formula: String,
}

impl Prediction {
    pub fn equal(symbols: BigRational, formula: impl Into<String>) -> Prediction {
        Prediction { symbols, relation: Relation::Equal, formula: formula.into() }
    }

    pub fn upper_bound(symbols: BigRational, formula: impl Into<String>) -> Prediction {
        Prediction { symbols, relation: Relation::UpperBound, formula: formula.into() }
    }

    pub fn holds_for(&self, measured: u64) -> bool {
        let m = BigRational::from_integer(measured.into());
        match self.relation {
            Relation::Equal => m == self.symbols,
            Relation::UpperBound => m <= self.symbols,
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Equal => "=",
            Relation::UpperBound => "<=",
        };
        write!(f, "{rel} {} ({})", self.symbols, self.formula)
    }
}

/// Repair polynomials p_ij (i over failed nodes, j over a basis of F over K)
/// for a fixed failure set of an RS code.
#[derive(Debug, Clone)]
pub struct RepairScheme {
    code: Arc<RSCode>,
    failed: Vec<usize>,
    helpers: Vec<usize>,
    kf: Arc<SubfieldHandle>,
    polys: Vec<Vec<FPoly>>,
    xi: Vec<FieldElem>,
    xi_dual: Vec<FieldElem>,
    /// evals[t][i * L + j] = p_ij(alpha_t)
    evals: Vec<Vec<FieldElem>>,
    prediction: Option<Prediction>,
    label: String,
}

impl RepairScheme {
    /// Checks shape and degrees; the full-rank condition is checked
    /// separately by [`super::check_full_rank`].
    pub fn new(
        code: Arc<RSCode>,
        failed: Vec<usize>,
        kf: Arc<SubfieldHandle>,
        polys: Vec<Vec<FPoly>>,
    ) -> Result<RepairScheme> {
        let f = code.ctx().clone();
        let xi = Basis::power(&f, &kf).elems;
        RepairScheme::with_basis(code, failed, kf, polys, xi)
    }

    /// As [`RepairScheme::new`] with an explicit basis xi of F over K for the
    /// repair matrix.
    pub fn with_basis(
        code: Arc<RSCode>,
        failed: Vec<usize>,
        kf: Arc<SubfieldHandle>,
        polys: Vec<Vec<FPoly>>,
        xi: Vec<FieldElem>,
    ) -> Result<RepairScheme> {
        let f = code.ctx().clone();
        kf.check_parent(&f)?;
        let n = code.n();
        let e = failed.len();
        if e == 0 || failed.iter().any(|&i| i >= n) || failed.iter().collect::<HashSet<_>>().len() != e {
            return Err(Error::InvalidParameter(format!("bad failure set {failed:?}")));
        }
        if e > code.r() {
            return Err(Error::TooManyErasures { erased: e, redundancy: code.r() });
        }
        let l = kf.index();
        if polys.len() != e || polys.iter().any(|row| row.len() != l) {
            return Err(Error::InvalidParameter(format!("expected {e} x {l} repair polynomials")));
        }
        for p in polys.iter().flatten() {
            if let Some(d) = p.degree() {
                if d >= code.r() {
                    return Err(Error::DegreeTooHigh { degree: d, bound: code.r() });
                }
            }
        }
        if xi.len() != l || rank_over(&f, &kf, &xi).rank != l {
            return Err(Error::NotABasis);
        }
        let xi_dual = dual_basis(&f, &kf, &xi)?;
        let helpers = (0..n).filter(|t| !failed.contains(t)).collect();
        let evals = code
            .points()
            .iter()
            .map(|&a| polys.iter().flatten().map(|p| p.eval(&f, a)).collect())
            .collect();
        Ok(RepairScheme {
            code,
            failed,
            helpers,
            kf,
            polys,
            xi,
            xi_dual,
            evals,
            prediction: None,
            label: "custom".into(),
        })
    }

    pub fn with_prediction(mut self, p: Prediction) -> RepairScheme {
        self.prediction = Some(p);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> RepairScheme {
        self.label = label.into();
        self
    }

    pub fn code(&self) -> &Arc<RSCode> {
        &self.code
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.code.ctx()
    }

    pub fn failed(&self) -> &[usize] {
        &self.failed
    }

    /// Every surviving node; helpers whose evaluations vanish send nothing.
    pub fn helpers(&self) -> &[usize] {
        &self.helpers
    }

    pub fn base(&self) -> &Arc<SubfieldHandle> {
        &self.kf
    }

    pub fn polys(&self) -> &[Vec<FPoly>] {
        &self.polys
    }

    /// L = [F:K].
    pub fn l(&self) -> usize {
        self.kf.index()
    }

    pub fn e(&self) -> usize {
        self.failed.len()
    }

    pub fn xi(&self) -> &[FieldElem] {
        &self.xi
    }

    pub fn xi_dual(&self) -> &[FieldElem] {
        &self.xi_dual
    }

    /// p_ij(alpha_t) in row-major (i, j) order.
    pub fn evals_at(&self, t: usize) -> &[FieldElem] {
        &self.evals[t]
    }

    /// upsilon_t p_ij(alpha_t), the dual-codeword symbols at node t.
    pub fn dual_symbols_at(&self, t: usize) -> Vec<FieldElem> {
        let f = self.ctx();
        let u = self.code.upsilon()[t];
        self.evals[t].iter().map(|&v| f.mul(u, v)).collect()
    }

    pub fn prediction(&self) -> Option<&Prediction> {
        self.prediction.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}
