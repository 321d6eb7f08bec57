use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{KmError, Result};

/// An ordered 4-tuple of distinct indices in `1..=n`, the label `(ijkl)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Quad(pub [u8; 4]);

impl Quad {
    pub fn new(entries: [usize; 4], n: usize) -> Result<Quad> {
        for (a, &x) in entries.iter().enumerate() {
            if x == 0 || x > n {
                return Err(KmError::InvalidArgument(format!("index {x} outside 1..={n}")));
            }
            if entries[..a].contains(&x) {
                return Err(KmError::InvalidArgument(format!("repeated index {x} in {entries:?}")));
            }
        }
        if n > u8::MAX as usize {
            return Err(KmError::InvalidArgument(format!("n = {n} is too large")));
        }
        Ok(Quad(entries.map(|x| x as u8)))
    }

    /// Builds a quad without range checks; entries must be distinct.
    pub(crate) fn raw(entries: [usize; 4]) -> Quad {
        debug_assert!((0..4).all(|a| (a + 1..4).all(|b| entries[a] != entries[b])));
        Quad(entries.map(|x| x as u8))
    }

    pub fn entries(self) -> [usize; 4] {
        self.0.map(usize::from)
    }

    /// `(ijkl) -> (jkli)`
    pub fn shift(self) -> Quad {
        let [i, j, k, l] = self.0;
        Quad([j, k, l, i])
    }

    /// `(ijkl) -> (lkji)`
    pub fn reverse(self) -> Quad {
        let [i, j, k, l] = self.0;
        Quad([l, k, j, i])
    }

    pub fn contains(self, x: usize) -> bool {
        self.0.iter().any(|&e| e as usize == x)
    }

    /// Underlying 4-set in increasing order.
    pub fn support(self) -> [usize; 4] {
        let mut s = self.entries();
        s.sort_unstable();
        s
    }

    pub fn overlap(self, other: Quad) -> usize {
        self.0.iter().filter(|x| other.0.contains(x)).count()
    }

    pub fn is_increasing(self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// The eight dihedral images of `self` with the sign `s` such that
    /// `self = image^s` in the signed group. Each shift and each reversal
    /// contributes a factor -1.
    pub fn orbit(self) -> [(Quad, i8); 8] {
        let mut out = [(self, 1i8); 8];
        let mut q = self;
        let mut r = self.reverse();
        for s in 0..4 {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            out[s] = (q, sign);
            out[4 + s] = (r, -sign);
            q = q.shift();
            r = r.shift();
        }
        out
    }

    /// Generator name: `(1234)` when every index is a single digit,
    /// `(10,2,3,4)` style for larger `n`.
    pub fn name(self, n: usize) -> String {
        let e = self.entries();
        if n <= 9 {
            format!("({}{}{}{})", e[0], e[1], e[2], e[3])
        } else {
            format!("({},{},{},{})", e[0], e[1], e[2], e[3])
        }
    }

    /// Parses either naming style.
    pub fn parse(s: &str, n: usize) -> Result<Quad> {
        let bad = || KmError::Parse(format!("bad quad `{s}`"));
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let parts: Vec<usize> = if inner.contains(',') {
            inner.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            inner.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
        };
        let entries: [usize; 4] = parts.try_into().map_err(|_| bad())?;
        Quad::new(entries, n)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.entries();
        if e.iter().all(|&x| x <= 9) {
            write!(f, "({}{}{}{})", e[0], e[1], e[2], e[3])
        } else {
            write!(f, "({},{},{},{})", e[0], e[1], e[2], e[3])
        }
    }
}

/// Lexicographically least member of the dihedral orbit, with the sign
/// relating `q` to it (`q = canonical^sign`). Unsigned callers get sign +1.
pub fn canonical_quad(q: Quad, signed: bool) -> (Quad, i8) {
    let (c, s) = q.orbit().into_iter().min_by_key(|(x, _)| *x).expect("orbit is nonempty");
    (c, if signed { s } else { 1 })
}

pub fn is_canonical(q: Quad) -> bool {
    canonical_quad(q, false).0 == q
}

/// All ordered quads of `1..=n` in lexicographic order.
pub fn ordered_quads(n: usize) -> Vec<Quad> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    if i != j && i != k && i != l && j != k && j != l && k != l {
                        out.push(Quad::raw([i, j, k, l]));
                    }
                }
            }
        }
    }
    out
}

pub fn increasing_quads(n: usize) -> Vec<Quad> {
    ordered_quads(n).into_iter().filter(|q| q.is_increasing()).collect()
}

pub fn canonical_quads(n: usize) -> Vec<Quad> {
    ordered_quads(n).into_iter().filter(|&q| is_canonical(q)).collect()
}

/// Generator table: quads in a fixed order with reverse lookup.
#[derive(Clone, Debug)]
pub struct QuadTable {
    pub n: usize,
    quads: Vec<Quad>,
    index: HashMap<Quad, usize>,
}

impl QuadTable {
    pub fn new(n: usize, quads: Vec<Quad>) -> Self {
        let index = quads.iter().enumerate().map(|(i, q)| (*q, i)).collect();
        QuadTable { n, quads, index }
    }

    pub fn quads(&self) -> &[Quad] {
        &self.quads
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    pub fn index(&self, q: Quad) -> Option<usize> {
        self.index.get(&q).copied()
    }

    pub fn names(&self) -> Vec<String> {
        self.quads.iter().map(|q| q.name(self.n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: [usize; 4]) -> Quad {
        Quad::raw(e)
    }

    #[test]
    fn orbit_of_2134() {
        let mut orbit: Vec<String> = q([2, 1, 3, 4]).orbit().iter().map(|(x, _)| x.to_string()).collect();
        orbit.sort();
        let mut expect = vec!["(2134)", "(1342)", "(3421)", "(4213)", "(4312)", "(3124)", "(1243)", "(2431)"];
        expect.sort();
        assert_eq!(orbit, expect);
        assert_eq!(canonical_quad(q([2, 1, 3, 4]), false), (q([1, 2, 4, 3]), 1));
    }

    #[test]
    fn signed_canonical_forms() {
        assert_eq!(canonical_quad(q([2, 3, 4, 1]), true), (q([1, 2, 3, 4]), -1));
        assert_eq!(canonical_quad(q([3, 4, 1, 2]), true), (q([1, 2, 3, 4]), 1));
        assert_eq!(canonical_quad(q([4, 3, 2, 1]), true), (q([1, 2, 3, 4]), -1));
    }

    #[test]
    fn canonical_counts() {
        assert_eq!(canonical_quads(5).len(), 15);
        assert_eq!(canonical_quads(6).len(), 3 * 15);
        assert_eq!(ordered_quads(5).len(), 120);
        assert_eq!(increasing_quads(6).len(), 15);
    }

    #[test]
    fn names_round_trip() {
        let a = q([1, 3, 2, 4]);
        assert_eq!(a.name(5), "(1324)");
        assert_eq!(Quad::parse("(1324)", 5).unwrap(), a);
        let b = Quad::new([10, 2, 3, 4], 10).unwrap();
        assert_eq!(b.name(10), "(10,2,3,4)");
        assert_eq!(Quad::parse("(10,2,3,4)", 10).unwrap(), b);
        assert!(Quad::parse("(1123)", 5).is_err());
        assert!(Quad::parse("(1236)", 5).is_err());
    }
}
