//! Ranks over prime fields by sparse echelon insertion.
//!
//! Kept deliberately separate from the Smith-form elimination so the two can
//! check each other.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::matrix::SparseIntMatrix;
use crate::error::{KmError, Result};

/// Primes used for the rank screen of large matrices; the last one stands in
/// for the rational rank.
pub const SCREEN_PRIMES: [u64; 3] = [2, 3, 2_147_483_647];

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Rank of `m` over the field with `p` elements. `p` must be a prime below 2^32.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(KmError::InvalidArgument(format!("{p} is not prime")));
    }
    if p >= 1 << 32 {
        return Err(KmError::InvalidArgument(format!("prime {p} exceeds 2^32")));
    }
    let mut rows: Vec<Vec<(usize, u64)>> = (0..m.rows())
        .map(|i| {
            m.row(i).iter().map(|(j, v)| (*j, reduce(v, p))).filter(|&(_, v)| v != 0).collect::<Vec<_>>()
        })
        .filter(|r| !r.is_empty())
        .collect();
    // short rows first keeps fill-in down
    rows.sort_by_key(Vec::len);

    // pivot column -> monic row whose leading column is that pivot
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for mut row in rows {
        while let Some(&(lead, a)) = row.first() {
            match pivots.get(&lead) {
                Some(prow) => row = axpy_mod(&row, p - a, prow, p),
                None => {
                    let inv = inv_mod(a, p);
                    let monic = row.iter().map(|&(j, v)| (j, v * inv % p)).collect();
                    pivots.insert(lead, monic);
                    break;
                }
            }
        }
    }
    Ok(pivots.len())
}

/// `x + s * y` over F_p for sorted sparse rows.
fn axpy_mod(x: &[(usize, u64)], s: u64, y: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (0, 0);
    while a < x.len() || b < y.len() {
        let ca = x.get(a).map_or(usize::MAX, |e| e.0);
        let cb = y.get(b).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(x[a]);
            a += 1;
        } else if cb < ca {
            out.push((cb, s * y[b].1 % p));
            b += 1;
        } else {
            let v = (x[a].1 + s * y[b].1) % p;
            if v != 0 {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_mod_five() {
        assert_eq!(rank_mod_p(&SparseIntMatrix::identity(3), 5).unwrap(), 3);
    }

    #[test]
    fn rank_drops_when_p_divides() {
        let m = SparseIntMatrix::from_dense_i64(&[vec![2, 0], vec![0, 3]], 2).unwrap();
        assert_eq!(rank_mod_p(&m, 2).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 7).unwrap(), 2);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(rank_mod_p(&SparseIntMatrix::identity(2), 4).is_err());
        assert!(rank_mod_p(&SparseIntMatrix::identity(2), 1).is_err());
    }

    #[test]
    fn dependent_rows() {
        let m = SparseIntMatrix::from_dense_i64(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, -1]], 3).unwrap();
        assert_eq!(rank_mod_p(&m, 2_147_483_647).unwrap(), 2);
        // over F_2 the third row is the sum of the first two as well
        assert_eq!(rank_mod_p(&m, 2).unwrap(), 2);
    }
}
