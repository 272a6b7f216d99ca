//! Vectors over GF(q) packed into a `u64` as base-q integers.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Packed {
    pub q: u64,
    pub n: usize,
    pows: Vec<u64>,
}

impl Packed {
    pub fn new(q: u64, n: usize) -> Self {
        let mut pows = Vec::with_capacity(n);
        let mut p: u128 = 1;
        for _ in 0..n {
            pows.push(p as u64);
            p *= q as u128;
        }
        Packed { q, n, pows }
    }

    /// q^n, the number of vectors.
    pub fn size(&self) -> u128 {
        (self.q as u128).pow(self.n as u32)
    }

    pub fn digits(&self, mut v: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        if self.q == 2 {
            for (i, d) in out.iter_mut().enumerate() {
                *d = (v >> i) & 1;
            }
        } else {
            for d in out.iter_mut() {
                *d = v % self.q;
                v /= self.q;
            }
        }
        out
    }

    pub fn from_digits(&self, d: &[u64]) -> u64 {
        if self.q == 2 {
            d.iter().enumerate().fold(0, |acc, (i, &x)| acc | ((x & 1) << i))
        } else {
            d.iter().rev().fold(0u64, |acc, &x| acc * self.q + x % self.q)
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.q == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        for i in 0..self.n {
            let s = (a % self.q + b % self.q) % self.q;
            out += s * self.pows[i];
            a /= self.q;
            b /= self.q;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.q == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u64;
        for i in 0..self.n {
            let d = a % self.q;
            out += ((self.q - d) % self.q) * self.pows[i];
            a /= self.q;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if self.q == 2 {
            a ^ b
        } else {
            self.add(a, self.neg(b))
        }
    }

    pub fn scale(&self, c: u64, a: u64) -> u64 {
        let c = c % self.q;
        if c == 0 {
            return 0;
        }
        if c == 1 {
            return a;
        }
        let mut a = a;
        let mut out = 0u64;
        for i in 0..self.n {
            out += ((a % self.q) * c % self.q) * self.pows[i];
            a /= self.q;
        }
        out
    }

    /// Split into consecutive blocks of `width` digits.
    pub fn blocks(&self, v: u64, width: usize) -> Vec<u64> {
        let count = self.n / width;
        if self.q == 2 {
            let mask = if width >= 64 { u64::MAX } else { (1u64 << width) - 1 };
            (0..count).map(|j| (v >> (j * width)) & mask).collect()
        } else {
            let base = self.pows.get(width).copied().map(|p| p as u128).unwrap_or((self.q as u128).pow(width as u32));
            let mut v = v as u128;
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                out.push((v % base) as u64);
                v /= base;
            }
            out
        }
    }
}

/// A GF(q)-linear map between packed vector spaces, stored by the images of
/// the source unit vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LinMap {
    pub src: Packed,
    pub dst: Packed,
    pub images: Vec<u64>,
}

impl LinMap {
    pub fn apply(&self, x: u64) -> u64 {
        if self.src.q == 2 {
            let mut acc = 0u64;
            let mut bits = x;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                acc ^= self.images[i];
                bits &= bits - 1;
            }
            return acc;
        }
        let d = self.src.digits(x);
        let mut acc = 0u64;
        for (i, &c) in d.iter().enumerate() {
            if c != 0 {
                acc = self.dst.add(acc, self.dst.scale(c, self.images[i]));
            }
        }
        acc
    }
}
