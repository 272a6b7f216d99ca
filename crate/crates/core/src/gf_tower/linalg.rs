//! Dense linear algebra over a finite field given by a `FieldCtx`.

use super::field::{FieldCtx, FieldElem};
use super::poly::inv_mod;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![FieldElem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { FieldElem::ONE } else { FieldElem::ZERO }))
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut b = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                b.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        b
    }

    pub fn mul(&self, k: &FieldCtx, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = k.add(out.get(i, j), k.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, k: &FieldCtx, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self, k: &FieldCtx) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = k.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = k.mul(inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = k.sub(m.get(i, j), k.mul(f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, k: &FieldCtx) -> usize {
        self.rref(k).1.len()
    }

    pub fn inverse(&self, k: &FieldCtx) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, FieldElem::ONE);
        }
        let (r, pivots) = aug.rref(k);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// A solution of `self * x = b`, if one exists.
    pub fn solve(&self, k: &FieldCtx, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref(k);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![FieldElem::ZERO; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r.get(i, self.cols);
        }
        Some(x)
    }

    /// Basis of the right nullspace, one vector per free column in
    /// ascending order.
    pub fn nullspace(&self, k: &FieldCtx) -> Vec<Vec<FieldElem>> {
        let (r, pivots) = self.rref(k);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldElem::ZERO; self.cols];
                v[f] = FieldElem::ONE;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = k.neg(r.get(i, f));
                }
                v
            })
            .collect()
    }
}

/// Incremental echelon form that accepts vectors in order and keeps the
/// first maximal independent subset (greedy, ascending index).
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(Vec<FieldElem>, usize, Vec<FieldElem>)>,
    count: usize,
}

/// Outcome of offering a vector to an [`Echelon`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insert {
    /// The vector became pivot number `n`.
    Pivot(usize),
    /// The vector equals this combination of the pivots so far.
    Dependent(Vec<FieldElem>),
}

impl Echelon {
    pub fn new(dim: usize) -> Echelon {
        Echelon { dim, rows: Vec::new(), count: 0 }
    }

    pub fn rank(&self) -> usize {
        self.count
    }

    pub fn insert(&mut self, k: &FieldCtx, v: &[FieldElem]) -> Insert {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        let mut acc = vec![FieldElem::ZERO; self.count];
        for (row, col, combo) in &self.rows {
            let f = v[*col];
            if f.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = k.sub(*x, k.mul(f, y));
            }
            for (a, &c) in acc.iter_mut().zip(combo) {
                *a = k.add(*a, k.mul(f, c));
            }
        }
        let Some(col) = v.iter().position(|x| !x.is_zero()) else {
            return Insert::Dependent(acc);
        };
        let inv = k.inv(v[col]);
        for x in v.iter_mut() {
            *x = k.mul(inv, *x);
        }
        let mut combo: Vec<FieldElem> = acc.iter().map(|&a| k.neg(k.mul(inv, a))).collect();
        combo.push(inv);
        for (_, _, c) in self.rows.iter_mut() {
            c.push(FieldElem::ZERO);
        }
        // keep the new row reduced against later pivots of existing rows
        for (row, _, c) in self.rows.iter_mut() {
            let f = row[col];
            if f.is_zero() {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&v) {
                *x = k.sub(*x, k.mul(f, y));
            }
            for (x, &y) in c.iter_mut().zip(&combo) {
                *x = k.sub(*x, k.mul(f, y));
            }
        }
        self.rows.push((v, col, combo));
        self.count += 1;
        Insert::Pivot(self.count - 1)
    }
}

/// Inverse of a square matrix over GF(q) given as rows of residues.
pub(crate) fn gfq_inverse(m: &[Vec<u64>], q: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_multiple_of(q))?;
        a.swap(c, p);
        let inv = inv_mod(a[c][c], q);
        for x in a[c].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..n {
            if i != c && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..2 * n {
                    a[i][j] = (a[i][j] + q - f * a[c][j] % q) % q;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> std::sync::Arc<FieldCtx> {
        FieldCtx::new(2, 1, None).unwrap()
    }

    fn m(rows: &[&[u64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| FieldElem(v)).collect()).collect())
    }

    #[test]
    fn inverse_round_trip_gf2() {
        let k = gf2();
        let a = m(&[&[1, 1, 0], &[0, 1, 1], &[1, 1, 1]]);
        let inv = a.inverse(&k).unwrap();
        assert!(a.mul(&k, &inv).is_identity());
        assert!(m(&[&[1, 1], &[1, 1]]).inverse(&k).is_none());
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let k = FieldCtx::new(2, 3, None).unwrap();
        let a = m(&[&[1, 2, 3, 4], &[5, 6, 7, 1]]);
        let ns = a.nullspace(&k);
        assert_eq!(ns.len(), 4 - a.rank(&k));
        for v in ns {
            assert!(a.mul_vec(&k, &v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn echelon_tracks_combinations() {
        let k = FieldCtx::new(3, 1, None).unwrap();
        let vs = [vec![1, 0, 2], vec![0, 1, 1], vec![2, 1, 2], vec![1, 1, 1]];
        let mut e = Echelon::new(3);
        let mut pivots = Vec::new();
        for (i, v) in vs.iter().enumerate() {
            let v: Vec<FieldElem> = v.iter().map(|&x| FieldElem(x)).collect();
            match e.insert(&k, &v) {
                Insert::Pivot(_) => pivots.push(i),
                Insert::Dependent(c) => {
                    let mut sum = vec![FieldElem::ZERO; 3];
                    for (&p, &coef) in pivots.iter().zip(&c) {
                        for (s, &x) in sum.iter_mut().zip(&vs[p]) {
                            *s = k.add(*s, k.mul(coef, FieldElem(x)));
                        }
                    }
                    assert_eq!(sum, v);
                }
            }
        }
        assert_eq!(pivots, vec![0, 1, 3]);
    }

    #[test]
    fn gfq_inverse_small() {
        let a = vec![vec![2, 1], vec![1, 1]];
        let inv = gfq_inverse(&a, 3).unwrap();
        assert_eq!(inv, vec![vec![1, 2], vec![2, 2]]);
    }
}
