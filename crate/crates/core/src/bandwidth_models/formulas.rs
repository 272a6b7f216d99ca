use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::schemes::ErasureLayout;

pub(crate) fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub(crate) fn big(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

pub(crate) fn frac(num: BigRational, den: u64) -> BigRational {
    num / int(den)
}

fn check_edk(n: u64, k: u64, e: u64, d: u64) -> Result<()> {
    if k == 0 || k >= n || e == 0 || e > n - k || d < k || d > n - e {
        return Err(Error::InvalidParameter(format!("need 0<k<n, 1<=e<=n-k, k<=d<=n-e; got n={n} k={k} e={e} d={d}")));
    }
    Ok(())
}

/// Cut-set bound e ell d / (d - k + e) in GF(q)-symbols.
pub fn msr_bound(n: u64, k: u64, e: u64, d: u64, ell: &BigUint) -> Result<BigRational> {
    check_edk(n, k, e, d)?;
    Ok(frac(big(ell) * int(e * d), d - k + e))
}

/// Average bandwidth in GF(q)-symbols of simultaneous repair in multiple
/// cosets for the given erasure layout:
/// (d ell/(n-e)) [(h1(q^a-1) - e) + (n - h1(q^a-1)) sum_i h_i/(d-k+sum_{v<=i} h_v)].
pub fn multi_erasure_multi_coset_bandwidth(
    n: u64,
    k: u64,
    e: u64,
    d: u64,
    a: u32,
    q: u64,
    ell: &BigUint,
    layout: &ErasureLayout,
) -> Result<BigRational> {
    check_edk(n, k, e, d)?;
    let h = &layout.h;
    if h.len() as u64 != e || h.iter().sum::<usize>() as u64 != e || h.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameter(format!("layout {h:?} does not describe {e} erasures")));
    }
    let coset = q.checked_pow(a).ok_or_else(|| Error::InvalidParameter("q^a overflows".into()))? - 1;
    let h1 = h[0] as u64;
    if h1 * coset > n {
        return Err(Error::InvalidParameter(format!("h1 (q^a-1) = {} exceeds n = {n}", h1 * coset)));
    }
    let mut acc = BigRational::zero();
    let mut prefix = 0u64;
    for &hi in h {
        prefix += hi as u64;
        acc += frac(int(hi as u64), d - k + prefix);
    }
    let inner = int(h1 * coset) - int(e) + int(n - h1 * coset) * acc;
    Ok(frac(big(ell) * int(d), n - e) * inner)
}

/// Largest s with q^s <= r.
pub(crate) fn max_s(q: u64, r: u64) -> u32 {
    let mut s = 0;
    while q.checked_pow(s + 1).is_some_and(|v| v <= r) {
        s += 1;
    }
    s
}

/// floor(log_q(x)) for a rational x >= 1, and 0 below 1.
pub(crate) fn floor_log(q: u64, x: &BigRational) -> u64 {
    let mut p = BigRational::one();
    let mut s = 0;
    loop {
        p *= int(q);
        if &p > x {
            return s;
        }
        s += 1;
    }
}
