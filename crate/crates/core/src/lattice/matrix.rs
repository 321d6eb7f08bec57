use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{KmError, Result};

/// Sparse integer matrix. Rows hold `(column, value)` pairs sorted by column;
/// zero values are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn from_dense_i64(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut m = SparseIntMatrix::new(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(KmError::DimensionMismatch { expected: cols, got: r.len() });
            }
            for (j, &v) in r.iter().enumerate() {
                if v != 0 {
                    m.data[i].push((j, BigInt::from(v)));
                }
            }
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseIntMatrix::new(n, n);
        for i in 0..n {
            m.data[i].push((i, BigInt::from(1)));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&BigInt> {
        let r = &self.data[i];
        r.binary_search_by_key(&j, |e| e.0).ok().map(|k| &r[k].1)
    }

    pub fn get_i64(&self, i: usize, j: usize) -> Option<i64> {
        self.get(i, j).and_then(ToPrimitive::to_i64)
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let r = &mut self.data[i];
        match r.binary_search_by_key(&j, |e| e.0) {
            Ok(k) if v.is_zero() => {
                r.remove(k);
            }
            Ok(k) => r[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => r.insert(k, (j, v)),
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: &BigInt) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        if v.is_zero() {
            return;
        }
        let r = &mut self.data[i];
        match r.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => {
                r[k].1 += v;
                if r[k].1.is_zero() {
                    r.remove(k);
                }
            }
            Err(k) => r.insert(k, (j, v.clone())),
        }
    }

    pub fn add_i64(&mut self, i: usize, j: usize, v: i64) {
        self.add(i, j, &BigInt::from(v));
    }

    /// Appends a row given as `(column, value)` pairs in any order.
    pub fn push_row<I: IntoIterator<Item = (usize, i64)>>(&mut self, entries: I) {
        self.rows += 1;
        self.data.push(Vec::new());
        let i = self.rows - 1;
        for (j, v) in entries {
            self.add_i64(i, j, v);
        }
    }

    /// Row-major iteration over the nonzero entries.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.iter() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut t = SparseIntMatrix::new(self.cols, self.rows);
        for (i, j, v) in self.iter() {
            t.data[j].push((i, v.clone()));
        }
        t
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(KmError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = SparseIntMatrix::new(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in &self.data[i] {
                for (j, b) in &other.data[*k] {
                    out.add(i, *j, &(a * b));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.cols {
            return Err(KmError::DimensionMismatch { expected: self.cols, got: other.cols });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(SparseIntMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.rows != other.rows {
            return Err(KmError::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        let mut data = self.data.clone();
        for (r, o) in data.iter_mut().zip(&other.data) {
            r.extend(o.iter().map(|(j, v)| (j + self.cols, v.clone())));
        }
        Ok(SparseIntMatrix { rows: self.rows, cols: self.cols + other.cols, data })
    }

    /// MatrixMarket coordinate format, integer field, 1-based indices.
    pub fn to_matrix_market(&self) -> String {
        let mut s = String::from("%%MatrixMarket matrix coordinate integer general\n");
        writeln!(s, "{} {} {}", self.rows, self.cols, self.nnz()).unwrap();
        for (i, j, v) in self.iter() {
            writeln!(s, "{} {} {}", i + 1, j + 1, v).unwrap();
        }
        s
    }

    pub fn from_matrix_market(text: &str) -> Result<SparseIntMatrix> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let banner = lines.next().ok_or_else(|| KmError::Parse("empty MatrixMarket input".into()))?;
        let banner_lc = banner.to_ascii_lowercase();
        if !banner_lc.starts_with("%%matrixmarket matrix coordinate integer") {
            return Err(KmError::Parse(format!("unsupported MatrixMarket banner `{banner}`")));
        }
        let symmetric = banner_lc.ends_with("symmetric");
        let mut lines = lines.filter(|l| !l.starts_with('%'));
        let size = lines.next().ok_or_else(|| KmError::Parse("missing size line".into()))?;
        let dims: Vec<usize> = size
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| KmError::Parse(format!("bad size line `{size}`"))))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = dims[..] else {
            return Err(KmError::Parse(format!("bad size line `{size}`")));
        };
        let mut m = SparseIntMatrix::new(rows, cols);
        let mut seen = 0;
        for l in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(KmError::Parse(format!("bad entry line `{l}`")));
            }
            let i: usize = toks[0].parse().map_err(|_| KmError::Parse(format!("bad row in `{l}`")))?;
            let j: usize = toks[1].parse().map_err(|_| KmError::Parse(format!("bad column in `{l}`")))?;
            let v: BigInt = toks[2].parse().map_err(|_| KmError::Parse(format!("bad value in `{l}`")))?;
            if i == 0 || j == 0 || i > rows || j > cols {
                return Err(KmError::Parse(format!("entry ({i},{j}) out of range")));
            }
            m.add(i - 1, j - 1, &v);
            if symmetric && i != j {
                m.add(j - 1, i - 1, &v);
            }
            seen += 1;
        }
        if seen != nnz {
            return Err(KmError::Parse(format!("expected {nnz} entries, found {seen}")));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_add_and_zero_removal() {
        let mut m = SparseIntMatrix::new(2, 3);
        m.add_i64(0, 2, 5);
        m.add_i64(0, 0, 1);
        m.add_i64(0, 2, -5);
        assert_eq!(m.nnz(), 1);
        m.set(1, 1, BigInt::from(7));
        m.set(1, 1, BigInt::zero());
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get_i64(0, 0), Some(1));
    }

    #[test]
    fn matrix_market_round_trip() {
        let m = SparseIntMatrix::from_dense_i64(&[vec![2, 0, -3], vec![0, 0, 0], vec![1, 4, 0]], 3).unwrap();
        let text = m.to_matrix_market();
        assert!(text.starts_with("%%MatrixMarket matrix coordinate integer general\n3 3 4\n"));
        assert_eq!(SparseIntMatrix::from_matrix_market(&text).unwrap(), m);
    }

    #[test]
    fn matrix_market_rejects_bad_counts() {
        let bad = "%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 1 3\n";
        assert!(SparseIntMatrix::from_matrix_market(bad).is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_dense_i64(&[vec![1, 2], vec![0, 1]], 2).unwrap();
        let b = a.mul(&a.transpose()).unwrap();
        assert_eq!(b.to_dense(), vec![vec![5.into(), 2.into()], vec![2.into(), 1.into()]]);
    }
}
