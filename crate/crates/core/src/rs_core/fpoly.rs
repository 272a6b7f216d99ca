use crate::gf_tower::{FieldCtx, FieldElem};

/// A polynomial over F, little-endian, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FPoly {
    coeffs: Vec<FieldElem>,
}

impl FPoly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> FPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FPoly { coeffs }
    }

    pub fn zero() -> FPoly {
        FPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> FPoly {
        FPoly::new(vec![c])
    }

    /// c * x^d.
    pub fn monomial(c: FieldElem, d: usize) -> FPoly {
        let mut v = vec![FieldElem::ZERO; d + 1];
        v[d] = c;
        FPoly::new(v)
    }

    /// prod (x - r).
    pub fn from_roots(f: &FieldCtx, roots: &[FieldElem]) -> FPoly {
        roots.iter().fold(FPoly::constant(FieldElem::ONE), |p, &r| p.mul(f, &FPoly::new(vec![f.neg(r), FieldElem::ONE])))
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, f: &FieldCtx, x: FieldElem) -> FieldElem {
        self.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, f: &FieldCtx, other: &FPoly) -> FPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or_default();
                    let b = other.coeffs.get(i).copied().unwrap_or_default();
                    f.add(a, b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, f: &FieldCtx, other: &FPoly) -> FPoly {
        if self.is_zero() || other.is_zero() {
            return FPoly::zero();
        }
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FPoly::new(out)
    }

    pub fn scale(&self, f: &FieldCtx, c: FieldElem) -> FPoly {
        FPoly::new(self.coeffs.iter().map(|&a| f.mul(c, a)).collect())
    }

    pub fn pow(&self, f: &FieldCtx, e: u64) -> FPoly {
        let mut r = FPoly::constant(FieldElem::ONE);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(f, &b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(f, &b);
            }
        }
        r
    }

    /// p(c x).
    pub fn compose_scale(&self, f: &FieldCtx, c: FieldElem) -> FPoly {
        let mut pw = FieldElem::ONE;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            out.push(f.mul(a, pw));
            pw = f.mul(pw, c);
        }
        FPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_vanish_and_eval_matches() {
        let f = FieldCtx::new(2, 8, None).unwrap();
        let roots: Vec<FieldElem> = (1..5).map(|i| f.pow(f.primitive(), i * 17)).collect();
        let p = FPoly::from_roots(&f, &roots);
        assert_eq!(p.degree(), Some(4));
        for &r in &roots {
            assert!(p.eval(&f, r).is_zero());
        }
        let x = f.pow(f.primitive(), 3);
        let sq = p.pow(&f, 2);
        assert_eq!(sq.eval(&f, x), f.square(p.eval(&f, x)));
        let c = f.pow(f.primitive(), 9);
        assert_eq!(p.compose_scale(&f, c).eval(&f, x), p.eval(&f, f.mul(c, x)));
    }
}
