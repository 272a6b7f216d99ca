use std::sync::Arc;

use super::field::{FieldCtx, FieldElem};
use super::linalg::gfq_inverse;
use super::packed::{LinMap, Packed};
use crate::error::{Error, Result};

/// The subfield K = GF(q^a) of F = GF(q^ell), generated by
/// gamma = beta^{(q^ell-1)/(q^a-1)}.
///
/// K-elements are values of `small`, a context whose modulus is the minimal
/// polynomial of gamma; `embed` maps them into F. Coordinates of F over K are
/// taken in the power basis {beta^j : j < ell/a}.
#[derive(Debug)]
pub struct SubfieldHandle {
    a: usize,
    ell: usize,
    parent_id: u64,
    small: Arc<FieldCtx>,
    gamma: FieldElem,
    embed: LinMap,
    coords: LinMap,
    trace: LinMap,
    frob_a: LinMap,
}

impl SubfieldHandle {
    pub(crate) fn build(f: &FieldCtx, a: usize) -> SubfieldHandle {
        let q = f.q();
        let ell = f.ell();
        let big = Packed::new(q, ell);
        let qa = (q as u128).pow(a as u32);
        let gamma = f.pow(f.primitive(), (f.order() - 1) / (qa - 1));

        // minimal polynomial of gamma: prod (X - gamma^{q^i})
        let mut mp = vec![FieldElem::ONE];
        for i in 0..a {
            let root = f.frobenius(gamma, i);
            let mut next = vec![FieldElem::ZERO; mp.len() + 1];
            for (d, &c) in mp.iter().enumerate() {
                next[d + 1] = f.add(next[d + 1], c);
                next[d] = f.sub(next[d], f.mul(c, root));
            }
            mp = next;
        }
        let modulus: Vec<u64> = mp
            .iter()
            .map(|c| {
                assert!(c.raw() < q, "minimal polynomial coefficient outside GF(q)");
                c.raw()
            })
            .collect();
        let small = FieldCtx::with_known_primitive(q, a, modulus);

        let gamma_pows: Vec<FieldElem> = (0..a).map(|i| f.pow(gamma, i as u128)).collect();
        let embed = LinMap {
            src: Packed::new(q, a),
            dst: big.clone(),
            images: gamma_pows.iter().map(|g| g.raw()).collect(),
        };

        // columns gamma^i beta^j, index j*a + i
        let l = ell / a;
        let beta = f.primitive();
        let mut cols = Vec::with_capacity(ell);
        for j in 0..l {
            let bj = f.pow(beta, j as u128);
            for g in &gamma_pows {
                cols.push(f.coeffs(f.mul(*g, bj)));
            }
        }
        let rows: Vec<Vec<u64>> = (0..ell).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let inv = gfq_inverse(&rows, q).expect("gamma^i beta^j is a basis");
        let coords = LinMap {
            src: big.clone(),
            dst: big.clone(),
            images: (0..ell)
                .map(|c| big.from_digits(&inv.iter().map(|row| row[c]).collect::<Vec<_>>()))
                .collect(),
        };

        let small_packed = Packed::new(q, a);
        let trace_images = (0..ell)
            .map(|i| {
                let mut d = vec![0u64; ell];
                d[i] = 1;
                let x = FieldElem::from_raw(big.from_digits(&d));
                let mut acc = FieldElem::ZERO;
                let mut y = x;
                for _ in 0..l {
                    acc = f.add(acc, y);
                    y = f.frobenius(y, a);
                }
                let c = coords.apply(acc.raw());
                big.blocks(c, a)[0]
            })
            .collect();
        let trace = LinMap { src: big.clone(), dst: small_packed, images: trace_images };

        let frob_a = LinMap {
            src: big.clone(),
            dst: big.clone(),
            images: (0..ell)
                .map(|i| {
                    let mut d = vec![0u64; ell];
                    d[i] = 1;
                    f.frobenius(FieldElem::from_raw(big.from_digits(&d)), a).raw()
                })
                .collect(),
        };

        SubfieldHandle { a, ell, parent_id: f.id(), small, gamma, embed, coords, trace, frob_a }
    }

    pub fn degree(&self) -> usize {
        self.a
    }

    /// [F:K].
    pub fn index(&self) -> usize {
        self.ell / self.a
    }

    /// Arithmetic context of K itself.
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.small
    }

    /// Generator of K inside F.
    pub fn gamma(&self) -> FieldElem {
        self.gamma
    }

    /// |K| = q^a.
    pub fn order(&self) -> u128 {
        self.small.order()
    }

    pub fn check_parent(&self, f: &FieldCtx) -> Result<()> {
        if f.id() == self.parent_id && f.ell() == self.ell {
            Ok(())
        } else {
            Err(Error::SubfieldNotInTower { a: self.a, ell: f.ell() })
        }
    }

    pub fn embed(&self, k: FieldElem) -> FieldElem {
        FieldElem::from_raw(self.embed.apply(k.raw()))
    }

    /// Coordinates of x over K in the basis {beta^j}.
    pub fn coords(&self, x: FieldElem) -> Vec<FieldElem> {
        let c = self.coords.apply(x.raw());
        self.coords.dst.blocks(c, self.a).into_iter().map(FieldElem::from_raw).collect()
    }

    /// x as a K-value when x lies in K.
    pub fn project(&self, x: FieldElem) -> Option<FieldElem> {
        let c = self.coords(x);
        if c[1..].iter().all(|v| v.is_zero()) {
            Some(c[0])
        } else {
            None
        }
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        self.frob_a.apply(x.raw()) == x.raw()
    }

    /// tr_{F/K}(x) as a K-value.
    pub fn trace(&self, f: &FieldCtx, x: FieldElem) -> FieldElem {
        debug_assert_eq!(f.id(), self.parent_id);
        FieldElem::from_raw(self.trace.apply(x.raw()))
    }

    /// tr_{F/K}(x) embedded back into F.
    pub fn trace_in_f(&self, f: &FieldCtx, x: FieldElem) -> FieldElem {
        self.embed(self.trace(f, x))
    }

    /// Multiply an F-element by a K-scalar.
    pub fn scale(&self, f: &FieldCtx, k: FieldElem, x: FieldElem) -> FieldElem {
        f.mul(self.embed(k), x)
    }

    /// All elements of K in F, ordered by their K-value.
    pub fn elements_in_f(&self) -> Vec<FieldElem> {
        self.small.elements().map(|k| self.embed(k)).collect()
    }
}
