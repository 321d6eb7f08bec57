use crate::error::{KmError, Result};
use crate::homs::SubsetBasis;

use super::matrix::SparseIntMatrix;

/// Boundary map of the full simplex on vertices `1..=n` from `k`-chains
/// (based on `(k+1)`-subsets) to `(k-1)`-chains. Rows index the faces.
pub fn simplex_boundary_matrix(n: usize, k: usize) -> Result<SparseIntMatrix> {
    if k == 0 || k >= n {
        return Err(KmError::InvalidArgument(format!("boundary degree {k} outside 1..={}", n.saturating_sub(1))));
    }
    let faces = SubsetBasis::new(n, k)?;
    let cells = SubsetBasis::new(n, k + 1)?;
    let mut m = SparseIntMatrix::new(faces.len(), cells.len());
    let mut face = Vec::with_capacity(k);
    for (c, cell) in cells.iter().enumerate() {
        for drop in 0..=k {
            face.clear();
            face.extend(cell.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x));
            let r = faces.index_of(&face).expect("face of a cell is a subset");
            m.add_i64(r, c, if drop % 2 == 0 { 1 } else { -1 });
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_of_boundary_vanishes() {
        for n in 2..=6 {
            for k in 1..n - 1 {
                let a = simplex_boundary_matrix(n, k).unwrap();
                let b = simplex_boundary_matrix(n, k + 1).unwrap();
                assert!(a.mul(&b).unwrap().is_zero(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn degree_range() {
        assert!(simplex_boundary_matrix(5, 0).is_err());
        assert!(simplex_boundary_matrix(5, 5).is_err());
        let m = simplex_boundary_matrix(3, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 3));
    }
}
