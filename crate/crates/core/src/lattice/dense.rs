//! Dense integer matrices: Smith form with transforms and exact determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::SparseIntMatrix;
use crate::error::{KmError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseIntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl DenseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseIntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(KmError::DimensionMismatch { expected: cols, got: r.len() });
            }
            m.data[i * cols..(i + 1) * cols].clone_from_slice(r);
        }
        Ok(m)
    }

    pub fn from_sparse(m: &SparseIntMatrix) -> Self {
        let mut d = Self::zeros(m.rows(), m.cols());
        for (i, j, v) in m.iter() {
            d.data[i * m.cols() + j] = v.clone();
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &DenseIntMatrix) -> Result<DenseIntMatrix> {
        if self.cols != other.rows {
            return Err(KmError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(KmError::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * a.get(n - 1, n - 1) })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[i] -= q * row[k]`
    fn row_sub(&mut self, i: usize, q: &BigInt, k: usize) {
        for j in 0..self.cols {
            let t = q * self.get(k, j);
            if !t.is_zero() {
                self.data[i * self.cols + j] -= t;
            }
        }
    }

    /// `col[j] -= q * col[k]`
    fn col_sub(&mut self, j: usize, q: &BigInt, k: usize) {
        for i in 0..self.rows {
            let t = q * self.get(i, k);
            if !t.is_zero() {
                self.data[i * self.cols + j] -= t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub factors: Vec<BigInt>,
    pub u: DenseIntMatrix,
    pub v: DenseIntMatrix,
    pub d: DenseIntMatrix,
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let babs = b.abs();
    let mut r = a.mod_floor(&babs);
    if (&r << 1u32) > babs {
        r -= &babs;
    }
    (a - r) / b
}

/// Dense Smith form that also returns the row and column transforms.
pub fn smith_with_transforms(m: &SparseIntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = DenseIntMatrix::from_sparse(m);
    let mut u = DenseIntMatrix::identity(rows);
    let mut v = DenseIntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = a.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.magnitude() < a.get(bi, bj).magnitude()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap_rows(t, bi);
        u.swap_rows(t, bi);
        a.swap_cols(t, bj);
        v.swap_cols(t, bj);
        loop {
            let mut again = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = div_round(a.get(i, t), a.get(t, t));
                a.row_sub(i, &q, t);
                u.row_sub(i, &q, t);
                if !a.get(i, t).is_zero() {
                    again = true;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = div_round(a.get(t, j), a.get(t, t));
                a.col_sub(j, &q, t);
                v.col_sub(j, &q, t);
                if !a.get(t, j).is_zero() {
                    again = true;
                }
            }
            if again {
                // move the smallest leftover in row t or column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    let x = a.get(i, t);
                    if !x.is_zero() && x.magnitude() < a.get(best.0, best.1).magnitude() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let x = a.get(t, j);
                    if !x.is_zero() && x.magnitude() < a.get(best.0, best.1).magnitude() {
                        best = (t, j);
                    }
                }
                a.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            // pivot must divide the whole trailing block
            let p = a.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    a.row_sub(t, &minus_one, i);
                    u.row_sub(t, &minus_one, i);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let factors = (0..t).map(|i| a.get(i, i).clone()).collect();
    SmithDecomposition { factors, u, v, d: a }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[Vec<i64>]) -> DenseIntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
        DenseIntMatrix::from_rows(&rows, cols).unwrap()
    }

    #[test]
    fn bareiss_determinants() {
        assert_eq!(dense(&[vec![2, 4], vec![6, 8]]).determinant().unwrap(), BigInt::from(-8));
        assert_eq!(dense(&[vec![0, 1], vec![1, 0]]).determinant().unwrap(), BigInt::from(-1));
        assert_eq!(
            dense(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).determinant().unwrap(),
            BigInt::from(-3)
        );
        assert_eq!(DenseIntMatrix::zeros(0, 0).determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let m = SparseIntMatrix::from_dense_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3).unwrap();
        let s = smith_with_transforms(&m);
        assert_eq!(s.factors, vec![2.into(), 6.into(), 12.into()]);
        let prod = s.u.mul(&DenseIntMatrix::from_sparse(&m)).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.determinant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn rectangular_and_empty() {
        let m = SparseIntMatrix::from_dense_i64(&[vec![6, 0, 0], vec![0, 4, 0]], 3).unwrap();
        assert_eq!(smith_with_transforms(&m).factors, vec![2.into(), 12.into()]);
        assert!(smith_with_transforms(&SparseIntMatrix::new(0, 3)).factors.is_empty());
    }
}
