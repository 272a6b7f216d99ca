use crate::gf_tower::{FieldCtx, FieldElem, SubfieldHandle};
use crate::rs_core::FPoly;

/// beta^m gamma^j for j = 0..n.
pub(crate) fn coset_points(f: &FieldCtx, e: &SubfieldHandle, m: u64, n: usize) -> Vec<FieldElem> {
    let mut x = f.pow(f.primitive(), m as u128);
    let g = e.gamma();
    (0..n)
        .map(|_| {
            let out = x;
            x = f.mul(x, g);
            out
        })
        .collect()
}

/// {gamma^i : i < a}, a basis of E over GF(q), as elements of F.
pub(crate) fn e_basis(f: &FieldCtx, e: &SubfieldHandle) -> Vec<FieldElem> {
    (0..e.degree()).map(|i| f.pow(e.gamma(), i as u128)).collect()
}

/// The q^s elements of the GF(q)-span of `gens[..s]`, indexed by base-q
/// digits so that w_0 = 0.
pub(crate) fn span_elements(f: &FieldCtx, gens: &[FieldElem]) -> Vec<FieldElem> {
    let q = f.q();
    let size = (q as usize).pow(gens.len() as u32);
    (0..size)
        .map(|mut idx| {
            let mut acc = FieldElem::ZERO;
            for &g in gens {
                acc = f.add(acc, f.scale((idx as u64) % q, g));
                idx /= q as usize;
            }
            acc
        })
        .collect()
}

/// c * prod (z - rho) as a polynomial in x, where z = x / beta^m.
pub(crate) fn z_product(f: &FieldCtx, c: FieldElem, roots_z: &[FieldElem], m: u64) -> FPoly {
    let bm = f.pow(f.primitive(), m as u128);
    let roots: Vec<FieldElem> = roots_z.iter().map(|&r| f.mul(bm, r)).collect();
    let scale = f.mul(c, f.beta_pow(-(m as i128) * roots.len() as i128));
    FPoly::from_roots(f, &roots).scale(f, scale)
}

/// (z - z0)^d in x.
pub(crate) fn z_power(f: &FieldCtx, z0: FieldElem, d: u64, m: u64) -> FPoly {
    let bm = f.pow(f.primitive(), m as u128);
    let base = FPoly::new(vec![f.neg(f.mul(bm, z0)), FieldElem::ONE]);
    base.pow(f, d).scale(f, f.beta_pow(-(m as i128) * d as i128))
}

/// Multiply every polynomial by eta_w = beta^w, w < [F:E]; the lifted index
/// is j * [F:E] + w.
pub(crate) fn eta_lift(f: &FieldCtx, rows: Vec<Vec<FPoly>>, index: usize) -> Vec<Vec<FPoly>> {
    let etas: Vec<FieldElem> = (0..index).map(|w| f.pow(f.primitive(), w as u128)).collect();
    rows.into_iter()
        .map(|row| row.iter().flat_map(|p| etas.iter().map(move |&eta| p.scale(f, eta))).collect())
        .collect()
}

pub(crate) fn rational(v: i128) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(v.into())
}

pub(crate) fn q_pow(q: u64, s: usize) -> u64 {
    q.pow(s as u32)
}

pub(crate) fn is_power_of(q: u64, mut d: u64) -> Option<u32> {
    if d == 0 {
        return None;
    }
    let mut s = 0;
    while d.is_multiple_of(q) {
        d /= q;
        s += 1;
    }
    (d == 1).then_some(s)
}
