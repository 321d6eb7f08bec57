//! Exact integer linear algebra behind every abelian invariant.

mod dense;
mod matrix;
mod modp;
mod simplex;
mod snf;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{KmError, Result};
use crate::presentation::Presentation;

pub use dense::{smith_with_transforms, DenseIntMatrix, SmithDecomposition};
pub use matrix::SparseIntMatrix;
pub use modp::{is_prime, rank_mod_p, SCREEN_PRIMES};
pub use simplex::simplex_boundary_matrix;
pub use snf::{
    normalize_diagonal, smith_normal_form, smith_normal_form_with, Monitor, SmithForm, SnfOptions,
    DEFAULT_SCREEN_THRESHOLD,
};

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dk`, `d1 | ... | dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let mut prev = BigInt::one();
        for d in &torsion {
            if *d < BigInt::from(2) || !(d % &prev == BigInt::ZERO) {
                return Err(KmError::InvalidArgument(format!("torsion {torsion:?} is not a divisibility chain")));
            }
            prev = d.clone();
        }
        Ok(AbelianInvariants { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z^rank + (Z/2)^twos`.
    pub fn with_twos(rank: usize, twos: usize) -> Self {
        AbelianInvariants { free_rank: rank, torsion: vec![BigInt::from(2); twos] }
    }

    /// Cokernel of the integer map whose image is spanned by `factors` in `Z^ambient`.
    pub fn from_factors(ambient: usize, factors: &[BigInt]) -> Self {
        AbelianInvariants {
            free_rank: ambient - factors.len(),
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// The form `Z^r + Z/d1 + Z/d2 + ...` with every cyclic factor spelled out.
    pub fn expanded(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Compact form: repeated cyclic factors are grouped, as in `Z^2 + (Z/2)^6`.
impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            parts.push(if run == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{run}") });
            i += run;
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl FromStr for AbelianInvariants {
    type Err = KmError;

    /// Accepts both the compact and the expanded forms.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || KmError::Parse(format!("bad abelian group `{s}`"));
        let s = s.trim();
        if s == "0" {
            return Ok(Self::default());
        }
        let mut free_rank = 0usize;
        let mut torsion = Vec::new();
        for term in s.split('+').map(str::trim) {
            let (base, count) = match term.strip_prefix('(') {
                Some(rest) => {
                    let (inner, exp) = rest.split_once(")^").ok_or_else(bad)?;
                    (inner, exp.parse::<usize>().map_err(|_| bad())?)
                }
                None => match term.split_once('^') {
                    Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
                    None => (term, 1),
                },
            };
            if base == "Z" {
                free_rank += count;
            } else if let Some(d) = base.strip_prefix("Z/") {
                let d: BigInt = d.parse().map_err(|_| bad())?;
                torsion.extend(std::iter::repeat_n(d, count));
            } else {
                return Err(bad());
            }
        }
        torsion.sort();
        AbelianInvariants::new(free_rank, torsion)
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.expanded())
    }
}

impl<'de> Deserialize<'de> for AbelianInvariants {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Abelianization of a finitely presented group.
pub fn h1(p: &Presentation) -> AbelianInvariants {
    h1_of_relation_matrix(&p.abelianized_relation_matrix())
}

/// Cokernel `Z^cols / rowspace(m)`.
pub fn h1_of_relation_matrix(m: &SparseIntMatrix) -> AbelianInvariants {
    AbelianInvariants::from_factors(m.cols(), &smith_normal_form(m).factors)
}

/// Invariants of the lattice spanned by `vectors` in `Z^dim` and of the quotient
/// `Z^dim / lattice`.
pub fn lattice_image_invariants<T>(vectors: &[Vec<T>], dim: usize) -> Result<(AbelianInvariants, AbelianInvariants)>
where
    T: Clone + Into<BigInt>,
{
    let mut m = SparseIntMatrix::new(vectors.len(), dim);
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(KmError::DimensionMismatch { expected: dim, got: v.len() });
        }
        for (j, x) in v.iter().enumerate() {
            m.add(i, j, &x.clone().into());
        }
    }
    let form = smith_normal_form(&m);
    Ok((AbelianInvariants::free(form.rank()), AbelianInvariants::from_factors(dim, &form.factors)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        let a = AbelianInvariants::with_twos(2, 6);
        assert_eq!(a.to_string(), "Z^2 + (Z/2)^6");
        assert_eq!(a.expanded(), "Z^2 + Z/2 + Z/2 + Z/2 + Z/2 + Z/2 + Z/2");
        assert_eq!(AbelianInvariants::with_twos(1, 1).to_string(), "Z + Z/2");
        assert_eq!(AbelianInvariants::default().to_string(), "0");
        assert_eq!(AbelianInvariants::with_twos(0, 19).to_string(), "(Z/2)^19");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["Z^145 + (Z/2)^18", "Z/2 + Z/4", "Z^9", "0", "Z + Z/6"] {
            let a: AbelianInvariants = s.parse().unwrap();
            assert_eq!(a.to_string(), s);
            assert_eq!(a.expanded().parse::<AbelianInvariants>().unwrap(), a);
        }
        assert!("Z/3 + Z/2".parse::<AbelianInvariants>().is_err());
        assert!("Q^2".parse::<AbelianInvariants>().is_err());
    }

    #[test]
    fn serde_uses_expanded_string() {
        let a = AbelianInvariants::with_twos(1, 2);
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, "\"Z + Z/2 + Z/2\"");
        assert_eq!(serde_json::from_str::<AbelianInvariants>(&j).unwrap(), a);
    }

    #[test]
    fn single_vector_image() {
        let (img, quo) = lattice_image_invariants(&[vec![2i64, 0]], 2).unwrap();
        assert_eq!(img, AbelianInvariants::free(1));
        assert_eq!(quo, AbelianInvariants::with_twos(1, 1));
        assert!(lattice_image_invariants(&[vec![1i64]], 2).is_err());
    }
}
