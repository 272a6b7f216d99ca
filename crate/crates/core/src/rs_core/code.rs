use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::fpoly::FPoly;
use crate::error::{Error, Result};
use crate::gf_tower::{parse_field_spec, FieldCtx, FieldElem};
use crate::rng::SplitMix64;

/// RS(A, k): evaluations of polynomials of degree < k at the points A, with
/// the dual coefficients upsilon_i = prod_{j != i} (alpha_i - alpha_j)^{-1}.
#[derive(Debug, Clone)]
pub struct RSCode {
    ctx: Arc<FieldCtx>,
    points: Vec<FieldElem>,
    k: usize,
    upsilon: Vec<FieldElem>,
}

/// A codeword as its n symbols.
pub type Codeword = Vec<FieldElem>;

/// Serialized form `{field, A, k}` with hex elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub field: String,
    #[serde(rename = "A")]
    pub points: Vec<String>,
    pub k: usize,
}

/// upsilon_i = prod_{j != i} (alpha_i - alpha_j)^{-1}.
pub fn dual_coeffs(f: &FieldCtx, points: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let distinct: HashSet<_> = points.iter().collect();
    if distinct.len() != points.len() {
        return Err(Error::DuplicateEvaluationPoints);
    }
    Ok(points
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            let prod = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(FieldElem::ONE, |acc, (_, &aj)| f.mul(acc, f.sub(ai, aj)));
            f.inv(prod)
        })
        .collect())
}

impl RSCode {
    pub fn new(ctx: Arc<FieldCtx>, points: Vec<FieldElem>, k: usize) -> Result<RSCode> {
        let n = points.len();
        if k == 0 || k >= n || (n as u128) > ctx.order() {
            return Err(Error::InvalidParameter(format!("need 0 < k < n <= |F|, got n={n}, k={k}")));
        }
        if points.iter().any(|&p| !ctx.contains(p)) {
            return Err(Error::InvalidParameter("evaluation point outside the field".into()));
        }
        let upsilon = dual_coeffs(&ctx, &points)?;
        let code = RSCode { ctx, points, k, upsilon };
        code.verify_dual()?;
        Ok(code)
    }

    /// sum_i upsilon_i alpha_i^d = 0 for d = 0..=n-2, which covers every
    /// product of a generator row with a parity row.
    fn verify_dual(&self) -> Result<()> {
        let f = &self.ctx;
        let mut pw: Vec<FieldElem> = vec![FieldElem::ONE; self.n()];
        for _ in 0..self.n() - 1 {
            let s = pw.iter().zip(&self.upsilon).fold(FieldElem::ZERO, |acc, (&p, &u)| f.add(acc, f.mul(p, u)));
            if !s.is_zero() {
                return Err(Error::DualCheckFailed);
            }
            for (p, &a) in pw.iter_mut().zip(&self.points) {
                *p = f.mul(*p, a);
            }
        }
        Ok(())
    }

    pub fn from_spec(spec: &CodeSpec) -> Result<RSCode> {
        let ctx = parse_field_spec(&spec.field)?;
        let points = spec.points.iter().map(|s| ctx.parse_elem(s)).collect::<Result<Vec<_>>>()?;
        RSCode::new(ctx, points, spec.k)
    }

    pub fn to_spec(&self) -> CodeSpec {
        CodeSpec {
            field: self.ctx.spec_string(),
            points: self.points.iter().map(|p| p.to_string()).collect(),
            k: self.k,
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn points(&self) -> &[FieldElem] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Redundancy n - k.
    pub fn r(&self) -> usize {
        self.n() - self.k
    }

    pub fn upsilon(&self) -> &[FieldElem] {
        &self.upsilon
    }

    /// The same code with every upsilon_i multiplied by `c`, which is again a
    /// valid set of dual coefficients.
    pub fn with_upsilon_scaled(&self, c: FieldElem) -> Result<RSCode> {
        if c.is_zero() {
            return Err(Error::InvalidParameter("upsilon scale must be nonzero".into()));
        }
        let mut out = self.clone();
        for u in out.upsilon.iter_mut() {
            *u = self.ctx.mul(*u, c);
        }
        out.verify_dual()?;
        Ok(out)
    }

    pub fn encode(&self, message: &[FieldElem]) -> Result<Codeword> {
        if message.len() != self.k {
            return Err(Error::WrongMessageLength { expected: self.k, got: message.len() });
        }
        let p = FPoly::new(message.to_vec());
        Ok(self.points.iter().map(|&a| p.eval(&self.ctx, a)).collect())
    }

    pub fn random_message(&self, rng: &mut SplitMix64) -> Vec<FieldElem> {
        (0..self.k).map(|_| self.ctx.random(rng)).collect()
    }

    pub fn random_codeword(&self, rng: &mut SplitMix64) -> Codeword {
        self.encode(&self.random_message(rng)).expect("message has length k")
    }

    /// (upsilon_i p(alpha_i))_i for deg p < n - k.
    pub fn dual_codeword(&self, p: &FPoly) -> Result<Vec<FieldElem>> {
        if let Some(d) = p.degree() {
            if d >= self.r() {
                return Err(Error::DegreeTooHigh { degree: d, bound: self.r() });
            }
        }
        Ok(self
            .points
            .iter()
            .zip(&self.upsilon)
            .map(|(&a, &u)| self.ctx.mul(u, p.eval(&self.ctx, a)))
            .collect())
    }

    pub fn inner(&self, x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
        x.iter().zip(y).fold(FieldElem::ZERO, |acc, (&a, &b)| self.ctx.add(acc, self.ctx.mul(a, b)))
    }

    /// Fill in erased symbols (`None`) by interpolating through the first k
    /// known ones; the remaining known symbols must agree.
    pub fn erasure_decode(&self, partial: &[Option<FieldElem>]) -> Result<Codeword> {
        if partial.len() != self.n() {
            return Err(Error::InvalidParameter(format!("expected {} symbols, got {}", self.n(), partial.len())));
        }
        let erased = partial.iter().filter(|s| s.is_none()).count();
        if erased > self.r() {
            return Err(Error::TooManyErasures { erased, redundancy: self.r() });
        }
        let f = &self.ctx;
        let known: Vec<usize> = (0..self.n()).filter(|&i| partial[i].is_some()).take(self.k).collect();
        // Lagrange weights of the interpolation set evaluated at x.
        let interpolate = |x: FieldElem| {
            known.iter().fold(FieldElem::ZERO, |acc, &i| {
                let ai = self.points[i];
                let w = known.iter().filter(|&&j| j != i).fold(FieldElem::ONE, |w, &j| {
                    let aj = self.points[j];
                    f.mul(w, f.div(f.sub(x, aj), f.sub(ai, aj)))
                });
                f.add(acc, f.mul(w, partial[i].expect("known")))
            })
        };
        let mut out = Vec::with_capacity(self.n());
        for (i, s) in partial.iter().enumerate() {
            let v = interpolate(self.points[i]);
            if let Some(known_v) = s {
                if *known_v != v {
                    return Err(Error::Inconsistent);
                }
            }
            out.push(v);
        }
        Ok(out)
    }
}
