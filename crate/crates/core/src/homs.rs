//! Homomorphisms from the quad groups into free abelian groups and 2-groups.

use std::collections::HashMap;

use crate::error::{KmError, Result};
use crate::groups::Quad;
use crate::lattice::{h1, SparseIntMatrix};
use crate::presentation::Presentation;
use crate::word::Word;

/// The k-subsets of `1..=n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct SubsetBasis {
    n: usize,
    k: usize,
    subsets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl SubsetBasis {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(KmError::InvalidArgument(format!("no {k}-subsets of a {n}-set")));
        }
        let mut subsets = Vec::new();
        let mut cur: Vec<usize> = (1..=k).collect();
        loop {
            subsets.push(cur.clone());
            // advance to the next combination
            let Some(i) = (0..k).rev().find(|&i| cur[i] < n - (k - 1 - i)) else { break };
            cur[i] += 1;
            for t in i + 1..k {
                cur[t] = cur[t - 1] + 1;
            }
        }
        let index = subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(SubsetBasis { n, k, subsets, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.subsets.iter().map(Vec::as_slice)
    }

    /// Index of a subset given in any order.
    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let mut key = s.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    pub fn label(&self, i: usize) -> String {
        let parts: Vec<String> = self.subsets[i].iter().map(ToString::to_string).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// `{i,j,k} - {i,j,l} + {i,k,l} - {j,k,l}` as sparse coordinates.
pub fn phi3_terms(q: Quad, basis: &SubsetBasis) -> [(usize, i64); 4] {
    let [i, j, k, l] = q.entries();
    let at = |s: [usize; 3]| basis.index_of(&s).expect("quad entries lie in the basis range");
    [(at([i, j, k]), 1), (at([i, j, l]), -1), (at([i, k, l]), 1), (at([j, k, l]), -1)]
}

/// `{i,k} - {j,l}`.
pub fn phi2_terms(q: Quad, basis: &SubsetBasis) -> [(usize, i64); 2] {
    let [i, j, k, l] = q.entries();
    let at = |s: [usize; 2]| basis.index_of(&s).expect("quad entries lie in the basis range");
    [(at([i, k]), 1), (at([j, l]), -1)]
}

fn dense(len: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; len];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

pub fn phi3(q: Quad, n: usize) -> Result<Vec<i64>> {
    let b = SubsetBasis::new(n, 3)?;
    Ok(dense(b.len(), &phi3_terms(q, &b)))
}

pub fn phi2(q: Quad, n: usize) -> Result<Vec<i64>> {
    let b = SubsetBasis::new(n, 2)?;
    Ok(dense(b.len(), &phi2_terms(q, &b)))
}

/// Linear map sending `{i,j,k}` to `{i,j} + {j,k} + {k,i}`.
pub fn eta3(v: &[i64], n: usize) -> Result<Vec<i64>> {
    let b3 = SubsetBasis::new(n, 3)?;
    let b2 = SubsetBasis::new(n, 2)?;
    if v.len() != b3.len() {
        return Err(KmError::DimensionMismatch { expected: b3.len(), got: v.len() });
    }
    let mut out = vec![0; b2.len()];
    for (s, &c) in b3.iter().zip(v) {
        if c != 0 {
            for pair in [[s[0], s[1]], [s[1], s[2]], [s[0], s[2]]] {
                out[b2.index_of(&pair).unwrap()] += c;
            }
        }
    }
    Ok(out)
}

/// Reads every generator name of `p` as a quad. Returns the index range `n`
/// (from the metadata, or the largest index seen) and the quads.
pub fn presentation_quads(p: &Presentation) -> Result<(usize, Vec<Quad>)> {
    let cap = p.meta.n.unwrap_or(u8::MAX as usize);
    let quads: Vec<Quad> = p
        .generators
        .iter()
        .map(|g| Quad::parse(g, cap))
        .collect::<Result<_>>()
        .map_err(|e| KmError::Unsupported(format!("generators are not quads: {e}")))?;
    let n = p.meta.n.unwrap_or_else(|| quads.iter().flat_map(|q| q.entries()).max().unwrap_or(4));
    Ok((n, quads))
}

/// A homomorphism from a presented group to `Z^dim` (modulus 0) or
/// `(Z/2)^dim` (modulus 2), given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianHom {
    pub name: String,
    pub dim: usize,
    pub modulus: u32,
    pub images: Vec<Vec<i64>>,
}

impl AbelianHom {
    pub fn new(name: impl Into<String>, dim: usize, modulus: u32, images: Vec<Vec<i64>>) -> Result<Self> {
        if modulus != 0 && modulus != 2 {
            return Err(KmError::Unsupported(format!("modulus {modulus}; only 0 and 2 are supported")));
        }
        if let Some(bad) = images.iter().find(|v| v.len() != dim) {
            return Err(KmError::DimensionMismatch { expected: dim, got: bad.len() });
        }
        let mut h = AbelianHom { name: name.into(), dim, modulus, images };
        if modulus == 2 {
            for v in &mut h.images {
                v.iter_mut().for_each(|x| *x = x.rem_euclid(2));
            }
        }
        Ok(h)
    }

    pub fn num_generators(&self) -> usize {
        self.images.len()
    }

    pub fn is_finite(&self) -> bool {
        self.modulus != 0 || self.dim == 0
    }

    fn reduce(&self, v: &mut [i64]) {
        if self.modulus == 2 {
            v.iter_mut().for_each(|x| *x = x.rem_euclid(2));
        }
    }

    pub fn eval(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0; self.dim];
        for x in w.letters() {
            let s = x.sign();
            for (a, b) in v.iter_mut().zip(&self.images[x.gen.index()]) {
                *a += s * b;
            }
        }
        self.reduce(&mut v);
        v
    }

    /// Generator images as matrix rows.
    pub fn image_matrix(&self) -> SparseIntMatrix {
        let mut m = SparseIntMatrix::new(0, self.dim);
        for v in &self.images {
            m.push_row(v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x)));
        }
        m
    }

    /// Mod-2 generator images packed as bit masks (`dim <= 64`).
    pub fn bit_images(&self) -> Result<Vec<u64>> {
        if self.modulus != 2 || self.dim > 64 {
            return Err(KmError::Unsupported(format!(
                "`{}` is not a map to (Z/2)^d with d <= 64",
                self.name
            )));
        }
        Ok(self
            .images
            .iter()
            .map(|v| v.iter().enumerate().fold(0u64, |m, (j, &x)| if x & 1 == 1 { m | (1 << j) } else { m }))
            .collect())
    }
}

/// Indices of relators with nonzero image.
pub fn check_well_defined(h: &AbelianHom, p: &Presentation) -> Result<Vec<usize>> {
    if h.num_generators() != p.num_generators() {
        return Err(KmError::DimensionMismatch { expected: p.num_generators(), got: h.num_generators() });
    }
    Ok(p.relators.iter().enumerate().filter(|(_, r)| h.eval(r).iter().any(|&x| x != 0)).map(|(i, _)| i).collect())
}

/// Like [`check_well_defined`] but fails on any violation.
pub fn ensure_well_defined(h: &AbelianHom, p: &Presentation) -> Result<()> {
    let bad = check_well_defined(h, p)?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(KmError::IllDefined { name: h.name.clone(), violations: bad.len() })
    }
}

fn quad_hom(p: &Presentation, name: &str, k: usize, modulus: u32) -> Result<AbelianHom> {
    let (n, quads) = presentation_quads(p)?;
    let b = SubsetBasis::new(n, k)?;
    let images = quads
        .iter()
        .map(|&q| if k == 3 { dense(b.len(), &phi3_terms(q, &b)) } else { dense(b.len(), &phi2_terms(q, &b)) })
        .collect();
    AbelianHom::new(name, b.len(), modulus, images)
}

pub fn phi3_hom(p: &Presentation) -> Result<AbelianHom> {
    quad_hom(p, "phi3", 3, 0)
}

pub fn phi2_hom(p: &Presentation) -> Result<AbelianHom> {
    quad_hom(p, "phi2", 2, 0)
}

pub fn phi3_mod2_hom(p: &Presentation) -> Result<AbelianHom> {
    quad_hom(p, "phi3_mod2", 3, 2)
}

pub fn phi2_mod2_hom(p: &Presentation) -> Result<AbelianHom> {
    quad_hom(p, "phi2_mod2", 2, 2)
}

/// Parity of the number of letters whose quad contains 1.
pub fn nu_hom(p: &Presentation) -> Result<AbelianHom> {
    let (_, quads) = presentation_quads(p)?;
    let images = quads.iter().map(|q| vec![i64::from(q.contains(1))]).collect();
    AbelianHom::new("nu", 1, 2, images)
}

/// Every generator to the generator of `Z/2`.
pub fn eps_all_ones_hom(p: &Presentation) -> AbelianHom {
    AbelianHom::new("eps_all_ones", 1, 2, vec![vec![1]; p.num_generators()]).expect("valid shape")
}

/// The map onto the trivial group.
pub fn trivial_hom(p: &Presentation) -> AbelianHom {
    AbelianHom::new("trivial", 0, 2, vec![Vec::new(); p.num_generators()]).expect("valid shape")
}

/// The quotient map onto `H1(p)`, for presentations whose `H1` is an
/// elementary abelian 2-group `(Z/2)^r`. Coordinates are the non-pivot
/// columns of the row-reduced relation matrix mod 2.
pub fn abelianization_hom(p: &Presentation) -> Result<AbelianHom> {
    let inv = h1(p);
    if inv.free_rank != 0 || inv.torsion.iter().any(|d| *d != 2.into()) {
        return Err(KmError::Unsupported(format!("H1 = {inv} is not an elementary abelian 2-group")));
    }
    let g = p.num_generators();
    let words = g.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for r in &p.relators {
        let mut v = vec![0u64; words];
        for (j, e) in r.exponent_sums(g).into_iter().enumerate() {
            if e.rem_euclid(2) == 1 {
                v[j / 64] |= 1 << (j % 64);
            }
        }
        for (row, &pc) in rows.iter().zip(&pivots) {
            if v[pc / 64] >> (pc % 64) & 1 == 1 {
                v.iter_mut().zip(row).for_each(|(a, b)| *a ^= b);
            }
        }
        let Some(pc) = (0..g).find(|&j| v[j / 64] >> (j % 64) & 1 == 1) else { continue };
        // keep the echelon form fully reduced
        for row in rows.iter_mut() {
            if row[pc / 64] >> (pc % 64) & 1 == 1 {
                row.iter_mut().zip(&v).for_each(|(a, b)| *a ^= b);
            }
        }
        rows.push(v);
        pivots.push(pc);
    }
    let free_cols: Vec<usize> = (0..g).filter(|j| !pivots.contains(j)).collect();
    debug_assert_eq!(free_cols.len(), inv.torsion.len());
    let bit = |v: &[u64], j: usize| v[j / 64] >> (j % 64) & 1 == 1;
    let mut images = vec![vec![0i64; free_cols.len()]; g];
    for (c, &j) in free_cols.iter().enumerate() {
        images[j][c] = 1;
    }
    for (row, &pc) in rows.iter().zip(&pivots) {
        for (c, &j) in free_cols.iter().enumerate() {
            if bit(row, j) {
                images[pc][c] = 1;
            }
        }
    }
    AbelianHom::new("abelianization", free_cols.len(), 2, images)
}

pub const HOM_NAMES: [&str; 8] =
    ["phi3", "phi2", "phi3_mod2", "phi2_mod2", "nu", "eps_all_ones", "abelianization", "trivial"];

/// Looks up a built-in homomorphism by name.
pub fn hom_by_name(name: &str, p: &Presentation) -> Result<AbelianHom> {
    match name {
        "phi3" => phi3_hom(p),
        "phi2" => phi2_hom(p),
        "phi3_mod2" => phi3_mod2_hom(p),
        "phi2_mod2" => phi2_mod2_hom(p),
        "nu" => nu_hom(p),
        "eps_all_ones" => Ok(eps_all_ones_hom(p)),
        "abelianization" => abelianization_hom(p),
        "trivial" => Ok(trivial_hom(p)),
        other => Err(KmError::InvalidArgument(format!(
            "unknown homomorphism `{other}`; known: {}",
            HOM_NAMES.join(", ")
        ))),
    }
}
