//! Dense polynomials over GF(q), little-endian coefficients.

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod(a: u64, q: u64) -> u64 {
    pow_u64(a % q, q - 2, q)
}

pub(crate) fn pow_u64(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1u64 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % q as u128) as u64;
        }
        b = ((b as u128 * b as u128) % q as u128) as u64;
        e >>= 1;
    }
    r
}

pub(crate) fn sub(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + q - y) % q;
    }
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y % q) % q;
        }
    }
    trim(out)
}

pub(crate) fn rem(a: &[u64], f: &[u64], q: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], q);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % q;
        let shift = top - df;
        for (i, &fc) in f.iter().enumerate() {
            r[shift + i] = (r[shift + i] + q - c * fc % q) % q;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], f: &[u64], q: u64) -> Vec<u64> {
    rem(&mul(a, b, q), f, q)
}

pub(crate) fn pow_mod(base: &[u64], mut e: u128, f: &[u64], q: u64) -> Vec<u64> {
    let mut r = rem(&[1], f, q);
    let mut b = rem(base, f, q);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(&r, &b, f, q);
        }
        b = mul_mod(&b, &b, f, q);
        e >>= 1;
    }
    r
}

pub(crate) fn gcd(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, q);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let li = inv_mod(lead, q);
        for c in x.iter_mut() {
            *c = *c * li % q;
        }
    }
    x
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic `f` of degree n over GF(q).
pub(crate) fn is_irreducible(f: &[u64], q: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^{q^k} mod f for k = 0..=n
    let mut frob = Vec::with_capacity(n + 1);
    let mut cur = rem(&x, f, q);
    frob.push(cur.clone());
    for _ in 0..n {
        cur = pow_mod(&cur, q as u128, f, q);
        frob.push(cur.clone());
    }
    if trim(sub(&frob[n], &x, q)).iter().any(|&c| c != 0) {
        return false;
    }
    for p in prime_divisors(n as u64) {
        let h = sub(&frob[n / p as usize], &x, q);
        let g = gcd(f, &h, q);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles_over_gf2() {
        // x^2+x+1, x^3+x+1 irreducible; x^2+1 = (x+1)^2 not
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // x^4+x^2+1 = (x^2+x+1)^2
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn count_irreducible_quartics_gf2() {
        // there are 3 monic irreducible quartics over GF(2)
        let mut count = 0;
        for low in 0..16u64 {
            let f: Vec<u64> = (0..4).map(|i| (low >> i) & 1).chain([1]).collect();
            if is_irreducible(&f, 2) {
                count += 1;
            }
        }
        assert_eq!(count, 3);
    }

    #[test]
    fn count_irreducible_quadratics_gf3() {
        // (9 - 3) / 2 = 3 monic irreducible quadratics over GF(3)
        let mut count = 0;
        for c0 in 0..3 {
            for c1 in 0..3 {
                if is_irreducible(&[c0, c1, 1], 3) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 3);
    }
}
