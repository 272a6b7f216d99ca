use std::fmt;
use std::sync::{Arc, OnceLock};

use super::factor::{is_prime, order_factors, PRIMITIVE_GF2};
use super::packed::{LinMap, Packed};
use super::poly;
use super::subfield::SubfieldHandle;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// An element of GF(q^ell): the coefficient vector in the power basis of the
/// modulus, packed as the base-q integer `sum c_i q^i`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub(crate) u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// The packed base-q integer. No range check against a field.
    pub fn raw(self) -> u64 {
        self.0
    }

    pub fn from_raw(v: u64) -> FieldElem {
        FieldElem(v)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

/// The field GF(q^ell) with a verified irreducible modulus and primitive
/// element. Subfields are registered lazily and cached.
pub struct FieldCtx {
    q: u64,
    ell: usize,
    modulus: Vec<u64>,
    primitive: FieldElem,
    pub(crate) packed: Packed,
    mod_full: u128,
    frob: LinMap,
    subfields: Vec<OnceLock<Arc<SubfieldHandle>>>,
    id: u64,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.spec_string())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus && self.primitive == other.primitive
    }
}

impl FieldCtx {
    /// Build GF(q^ell). Without a modulus the smallest primitive polynomial
    /// (ordered by the integer `sum c_i q^i`) is used and its root `x` is the
    /// primitive element. With a modulus the smallest element of full order
    /// is chosen.
    pub fn new(q: u64, ell: usize, modulus: Option<&[u64]>) -> Result<Arc<FieldCtx>> {
        if !is_prime(q) {
            return Err(Error::NonPrimeBase(q));
        }
        if q >= 1 << 32 {
            return Err(Error::InvalidParameter(format!("base {q} too large")));
        }
        if ell == 0 {
            return Err(Error::InvalidParameter("extension degree must be positive".into()));
        }
        match (q as u128).checked_pow(ell as u32) {
            Some(order) if order <= 1u128 << 64 => {}
            _ => return Err(Error::FieldTooLarge { q, ell }),
        }
        match modulus {
            Some(m) => {
                if m.len() != ell + 1 || m[ell] != 1 || m.iter().any(|&c| c >= q) {
                    return Err(Error::BadModulus { expected: ell });
                }
                if !poly::is_irreducible(m, q) {
                    return Err(Error::ReducibleModulus { q });
                }
                let factors = order_factors(q, ell).ok_or(Error::PrimitiveSearchFailed { q, ell })?;
                let mut ctx = FieldCtx::raw(q, ell, m.to_vec(), FieldElem::ONE);
                let order = ctx.order();
                let mut cand = 1u64;
                loop {
                    if (cand as u128) >= order {
                        return Err(Error::PrimitiveSearchFailed { q, ell });
                    }
                    if ctx.has_full_order(FieldElem(cand), &factors) {
                        break;
                    }
                    cand += 1;
                }
                ctx.primitive = FieldElem(cand);
                Ok(Arc::new(ctx))
            }
            None => {
                let factors = order_factors(q, ell).ok_or(Error::PrimitiveSearchFailed { q, ell })?;
                if q == 2 {
                    if let Some(&(_, m)) = PRIMITIVE_GF2.iter().find(|(l, _)| *l == ell) {
                        let coeffs: Vec<u64> = (0..=ell).map(|i| ((m >> i) & 1) as u64).collect();
                        let ctx = Self::primitive_root_ctx(q, ell, coeffs, &factors);
                        return ctx.ok_or(Error::PrimitiveSearchFailed { q, ell });
                    }
                }
                let packed = Packed::new(q, ell);
                let mut low: u128 = 0;
                while low < packed.size() {
                    let mut coeffs = packed.digits(low as u64);
                    coeffs.push(1);
                    if let Some(ctx) = Self::primitive_root_ctx(q, ell, coeffs, &factors) {
                        return Ok(ctx);
                    }
                    low += 1;
                }
                Err(Error::PrimitiveSearchFailed { q, ell })
            }
        }
    }

    /// Context for a modulus whose root is known to generate the
    /// multiplicative group.
    pub(crate) fn with_known_primitive(q: u64, ell: usize, modulus: Vec<u64>) -> Arc<FieldCtx> {
        let x = if ell == 1 {
            FieldElem((q - modulus[0]) % q)
        } else {
            FieldElem(q)
        };
        Arc::new(FieldCtx::raw(q, ell, modulus, x))
    }

    fn primitive_root_ctx(q: u64, ell: usize, modulus: Vec<u64>, factors: &[u64]) -> Option<Arc<FieldCtx>> {
        if !poly::is_irreducible(&modulus, q) {
            return None;
        }
        let ctx = Self::with_known_primitive(q, ell, modulus);
        if ctx.has_full_order(ctx.primitive, factors) {
            Some(ctx)
        } else {
            None
        }
    }

    fn raw(q: u64, ell: usize, modulus: Vec<u64>, primitive: FieldElem) -> FieldCtx {
        let packed = Packed::new(q, ell);
        let mod_full = modulus.iter().rev().fold(0u128, |acc, &c| acc * q as u128 + c as u128);
        let mut id = 0xcbf2_9ce4_8422_2325u64;
        for &c in modulus.iter().chain([q].iter()) {
            id = (id ^ c).wrapping_mul(0x100_0000_01b3);
        }
        let mut ctx = FieldCtx {
            q,
            ell,
            modulus,
            primitive,
            packed: packed.clone(),
            mod_full,
            frob: LinMap { src: packed.clone(), dst: packed.clone(), images: Vec::new() },
            subfields: (0..=ell).map(|_| OnceLock::new()).collect(),
            id,
        };
        let images = (0..ell)
            .map(|i| {
                let basis = FieldElem(packed.from_digits(&unit(ell, i)));
                ctx.pow(basis, q as u128).0
            })
            .collect();
        ctx.frob.images = images;
        ctx
    }

    fn has_full_order(&self, g: FieldElem, factors: &[u64]) -> bool {
        if g.is_zero() {
            return false;
        }
        let n = self.order() - 1;
        if self.pow(g, n) != FieldElem::ONE {
            return false;
        }
        factors.iter().all(|&p| self.pow(g, n / p as u128) != FieldElem::ONE)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of elements, q^ell.
    pub fn order(&self) -> u128 {
        self.packed.size()
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive(&self) -> FieldElem {
        self.primitive
    }

    pub(crate) fn id(&self) -> u64 {
        self.id
    }

    /// `gf(q,ell,poly=HEX)` with the full monic modulus as a base-q integer.
    pub fn spec_string(&self) -> String {
        format!("gf({},{},poly={:x})", self.q, self.ell, self.mod_full)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        (x.0 as u128) < self.order()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() != self.ell || coeffs.iter().any(|&c| c >= self.q) {
            return Err(Error::InvalidParameter(format!(
                "coefficient vector must have {} entries below {}",
                self.ell, self.q
            )));
        }
        Ok(FieldElem(self.packed.from_digits(coeffs)))
    }

    pub fn coeffs(&self, x: FieldElem) -> Vec<u64> {
        self.packed.digits(x.0)
    }

    /// Embed a GF(q) scalar.
    pub fn scalar(&self, c: u64) -> FieldElem {
        FieldElem(c % self.q)
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let v = u64::from_str_radix(s.trim().trim_start_matches("0x"), 16)
            .map_err(|e| Error::Parse(format!("element {s:?}: {e}")))?;
        let x = FieldElem(v);
        if !self.contains(x) {
            return Err(Error::Parse(format!("element {s} outside GF({}^{})", self.q, self.ell)));
        }
        Ok(x)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.packed.add(a.0, b.0))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.packed.sub(a.0, b.0))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.packed.neg(a.0))
    }

    /// Multiply by a GF(q) scalar.
    pub fn scale(&self, c: u64, a: FieldElem) -> FieldElem {
        FieldElem(self.packed.scale(c, a.0))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        if self.q == 2 {
            return FieldElem(self.mul_binary(a.0, b.0));
        }
        if self.ell == 1 {
            return FieldElem(((a.0 as u128 * b.0 as u128) % self.q as u128) as u64);
        }
        let pa = self.packed.digits(a.0);
        let pb = self.packed.digits(b.0);
        let prod = poly::mul_mod(&pa, &pb, &self.modulus, self.q);
        let mut d = prod;
        d.resize(self.ell, 0);
        FieldElem(self.packed.from_digits(&d))
    }

    fn mul_binary(&self, a: u64, b: u64) -> u64 {
        let mut acc: u128 = 0;
        let mut bits = b;
        while bits != 0 {
            let i = bits.trailing_zeros();
            acc ^= (a as u128) << i;
            bits &= bits - 1;
        }
        let ell = self.ell as u32;
        while acc >> ell != 0 {
            let top = 127 - acc.leading_zeros();
            acc ^= self.mod_full << (top - ell);
        }
        acc as u64
    }

    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElem, mut e: u128) -> FieldElem {
        let mut r = FieldElem::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(b, b);
            }
        }
        r
    }

    /// Multiplicative inverse; the inverse of zero is reported as zero.
    pub fn inv(&self, a: FieldElem) -> FieldElem {
        self.pow(a, self.order() - 2)
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul(a, self.inv(b))
    }

    /// x^{q^s}.
    pub fn frobenius(&self, x: FieldElem, s: usize) -> FieldElem {
        let mut y = x;
        for _ in 0..(s % self.ell) {
            y = FieldElem(self.frob.apply(y.0));
        }
        y
    }

    /// beta^e for the primitive element beta.
    pub fn beta_pow(&self, e: i128) -> FieldElem {
        let n = (self.order() - 1) as i128;
        self.pow(self.primitive, e.rem_euclid(n) as u128)
    }

    /// Subfield of degree `a`, registered on first use.
    pub fn subfield(&self, a: usize) -> Result<Arc<SubfieldHandle>> {
        if a == 0 || a > self.ell || !self.ell.is_multiple_of(a) {
            return Err(Error::SubfieldNotInTower { a, ell: self.ell });
        }
        Ok(self.subfields[a].get_or_init(|| Arc::new(SubfieldHandle::build(self, a))).clone())
    }

    /// The prime field GF(q) as a handle.
    pub fn base(&self) -> Arc<SubfieldHandle> {
        self.subfield(1).expect("degree 1 always divides")
    }

    /// Sum over GF(q) of x^{q^i}: the absolute trace.
    pub fn trace_base(&self, x: FieldElem) -> u64 {
        self.base().trace(self, x).0
    }

    pub fn random(&self, rng: &mut SplitMix64) -> FieldElem {
        let d: Vec<u64> = (0..self.ell).map(|_| rng.below(self.q)).collect();
        FieldElem(self.packed.from_digits(&d))
    }

    pub fn random_nonzero(&self, rng: &mut SplitMix64) -> FieldElem {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// All elements in packed order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order() as u64).map(FieldElem)
    }

    /// Evaluate a polynomial with GF(q) coefficients at x.
    pub fn eval_base_poly(&self, coeffs: &[u64], x: FieldElem) -> FieldElem {
        coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| self.add(self.mul(acc, x), self.scalar(c)))
    }
}

fn unit(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    v[i] = 1;
    v
}

/// Parse `gf(q,ell[,poly=HEX])`.
pub fn parse_field_spec(s: &str) -> Result<Arc<FieldCtx>> {
    let t = s.trim();
    let inner = t
        .strip_prefix("gf(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("field spec {s:?} must look like gf(q,ell[,poly=HEX])")))?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err(Error::Parse(format!("field spec {s:?} has {} fields", parts.len())));
    }
    let q: u64 = parts[0].parse().map_err(|e| Error::Parse(format!("q: {e}")))?;
    let ell: usize = parts[1].parse().map_err(|e| Error::Parse(format!("ell: {e}")))?;
    if parts.len() == 2 {
        return FieldCtx::new(q, ell, None);
    }
    let hex = parts[2]
        .strip_prefix("poly=")
        .ok_or_else(|| Error::Parse(format!("expected poly=HEX, got {:?}", parts[2])))?;
    let mut v = u128::from_str_radix(hex.trim_start_matches("0x"), 16).map_err(|e| Error::Parse(format!("poly: {e}")))?;
    if q < 2 {
        return Err(Error::NonPrimeBase(q));
    }
    let mut coeffs = Vec::new();
    while v > 0 {
        coeffs.push((v % q as u128) as u64);
        v /= q as u128;
    }
    if coeffs.len() != ell + 1 || coeffs[ell] != 1 {
        return Err(Error::BadModulus { expected: ell });
    }
    FieldCtx::new(q, ell, Some(&coeffs))
}
