use super::quad::Quad;
use crate::error::{KmError, Result};
use crate::presentation::Family;

/// Minimal generating set. For the ordered families it has three types,
/// listed in this order:
/// `(123k)`, then `(1i2k)` with `i < k`, then `(1ijk)` with `2 <= i < k < j`.
/// For the increasing families it is `{(1jkl) | j < k < l}`.
pub fn lambda_generators(n: usize, family: Family) -> Result<Vec<Quad>> {
    if n < 4 {
        return Err(KmError::InvalidArgument(format!("n must be at least 4, got {n}")));
    }
    let q = |a, b, c, d| Quad::raw([a, b, c, d]);
    let mut out = Vec::new();
    match family {
        Family::Gamma | Family::GammaHat => {
            for k in 4..=n {
                out.push(q(1, 2, 3, k));
            }
            for i in 3..=n {
                for k in i + 1..=n {
                    out.push(q(1, i, 2, k));
                }
            }
            for i in 2..=n {
                for j in 2..=n {
                    for k in i + 1..j {
                        out.push(q(1, i, j, k));
                    }
                }
            }
        }
        Family::Delta | Family::DeltaHat => {
            for j in 2..=n {
                for k in j + 1..=n {
                    for l in k + 1..=n {
                        out.push(q(1, j, k, l));
                    }
                }
            }
        }
        Family::Custom => return Err(KmError::InvalidArgument("custom presentations have no fixed generating set".into())),
    }
    Ok(out)
}

/// `C(n,3) - 1`, the size of the generating set for the ordered families.
pub fn lambda_size(n: usize) -> usize {
    binomial(n, 3) - 1
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
