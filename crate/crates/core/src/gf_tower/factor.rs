//! Prime factorizations of q^ell - 1 and known primitive polynomials.

/// Distinct prime factors of 2^ell - 1 for ell = 1..=64.
const MERSENNE_FACTORS: [&[u64]; 64] = [
    &[],
    &[3],
    &[7],
    &[3, 5],
    &[31],
    &[3, 7],
    &[127],
    &[3, 5, 17],
    &[7, 73],
    &[3, 11, 31],
    &[23, 89],
    &[3, 5, 7, 13],
    &[8191],
    &[3, 43, 127],
    &[7, 31, 151],
    &[3, 5, 17, 257],
    &[131071],
    &[3, 7, 19, 73],
    &[524287],
    &[3, 5, 11, 31, 41],
    &[7, 127, 337],
    &[3, 23, 89, 683],
    &[47, 178481],
    &[3, 5, 7, 13, 17, 241],
    &[31, 601, 1801],
    &[3, 2731, 8191],
    &[7, 73, 262657],
    &[3, 5, 29, 43, 113, 127],
    &[233, 1103, 2089],
    &[3, 7, 11, 31, 151, 331],
    &[2147483647],
    &[3, 5, 17, 257, 65537],
    &[7, 23, 89, 599479],
    &[3, 43691, 131071],
    &[31, 71, 127, 122921],
    &[3, 5, 7, 13, 19, 37, 73, 109],
    &[223, 616318177],
    &[3, 174763, 524287],
    &[7, 79, 8191, 121369],
    &[3, 5, 11, 17, 31, 41, 61681],
    &[13367, 164511353],
    &[3, 7, 43, 127, 337, 5419],
    &[431, 9719, 2099863],
    &[3, 5, 23, 89, 397, 683, 2113],
    &[7, 31, 73, 151, 631, 23311],
    &[3, 47, 178481, 2796203],
    &[2351, 4513, 13264529],
    &[3, 5, 7, 13, 17, 97, 241, 257, 673],
    &[127, 4432676798593],
    &[3, 11, 31, 251, 601, 1801, 4051],
    &[7, 103, 2143, 11119, 131071],
    &[3, 5, 53, 157, 1613, 2731, 8191],
    &[6361, 69431, 20394401],
    &[3, 7, 19, 73, 87211, 262657],
    &[23, 31, 89, 881, 3191, 201961],
    &[3, 5, 17, 29, 43, 113, 127, 15790321],
    &[7, 32377, 524287, 1212847],
    &[3, 59, 233, 1103, 2089, 3033169],
    &[179951, 3203431780337],
    &[3, 5, 7, 11, 13, 31, 41, 61, 151, 331, 1321],
    &[2305843009213693951],
    &[3, 715827883, 2147483647],
    &[7, 73, 127, 337, 92737, 649657],
    &[3, 5, 17, 257, 641, 65537, 6700417],];

/// Primitive polynomials over GF(2), full monic modulus as an integer.
/// Each is the smallest primitive polynomial of its degree.
pub(crate) const PRIMITIVE_GF2: &[(usize, u128)] = &[
    (3, 0xb),
    (4, 0x13),
    (8, 0x11d),
    (9, 0x211),
    (12, 0x1053),
    (16, 0x1002d),
    (24, 0x100001b),
    (48, 0x10000000000b7),
];

const TRIAL_LIMIT: u128 = 1 << 44;

fn trial_division(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while (p as u128) * (p as u128) <= n as u128 {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Distinct prime factors of q^ell - 1, when available.
pub(crate) fn order_factors(q: u64, ell: usize) -> Option<Vec<u64>> {
    if q == 2 && (1..=64).contains(&ell) {
        return Some(MERSENNE_FACTORS[ell - 1].to_vec());
    }
    let order = (q as u128).checked_pow(ell as u32)? - 1;
    if order < TRIAL_LIMIT {
        Some(trial_division(order as u64))
    } else {
        None
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
