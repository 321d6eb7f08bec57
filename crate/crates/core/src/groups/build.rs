use std::collections::HashSet;

use super::quad::{canonical_quad, canonical_quads, increasing_quads, ordered_quads, Quad, QuadTable};
use crate::error::{KmError, Result};
use crate::presentation::{Family, Mode, Presentation, PresentationMeta};
use crate::word::{Letter, Word};

/// The five quads of the pentagon relator for the ordered 5-tuple `(i,j,k,l,m)`:
/// `(ijkl)(ijlm)(jklm)(ijkm)(iklm)`.
pub fn pentagon_quads(t: [usize; 5]) -> [Quad; 5] {
    let [i, j, k, l, m] = t;
    [
        Quad::raw([i, j, k, l]),
        Quad::raw([i, j, l, m]),
        Quad::raw([j, k, l, m]),
        Quad::raw([i, j, k, m]),
        Quad::raw([i, k, l, m]),
    ]
}

/// Exponents of the five pentagon letters; the signed form inverts the last two.
pub fn pentagon_signs(signed: bool) -> [i8; 5] {
    if signed {
        [1, 1, 1, -1, -1]
    } else {
        [1; 5]
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(KmError::InvalidArgument(format!("n must be at least 4, got {n}")));
    }
    if n > 64 {
        return Err(KmError::InvalidArgument(format!("n = {n} is beyond any sensible size")));
    }
    Ok(())
}

fn ordered_tuples5(n: usize) -> impl Iterator<Item = [usize; 5]> {
    let r = 1..=n;
    r.clone().flat_map(move |i| {
        (1..=n).flat_map(move |j| {
            (1..=n).flat_map(move |k| {
                (1..=n).flat_map(move |l| (1..=n).map(move |m| [i, j, k, l, m]))
            })
        })
    })
    .filter(|t| (0..5).all(|a| (a + 1..5).all(|b| t[a] != t[b])))
}

fn increasing_tuples5(n: usize) -> impl Iterator<Item = [usize; 5]> {
    ordered_tuples5(n).filter(|t| t.windows(2).all(|w| w[0] < w[1]))
}

/// One ordered 5-tuple per dihedral class: the minimum first and the second
/// smallest entry in position 2 or 3.
fn representative_tuples5(n: usize) -> impl Iterator<Item = [usize; 5]> {
    ordered_tuples5(n).filter(|t| {
        let mut s = *t;
        s.sort_unstable();
        t[0] == s[0] && (t[1] == s[1] || t[2] == s[1])
    })
}

struct Builder {
    table: QuadTable,
    relators: Vec<Word>,
}

impl Builder {
    fn new(n: usize, quads: Vec<Quad>) -> Self {
        Builder { table: QuadTable::new(n, quads), relators: Vec::new() }
    }

    fn letter(&self, q: Quad, sign: i8) -> Letter {
        Letter::new(self.table.index(q).expect("quad is a generator"), sign)
    }

    fn push(&mut self, letters: Vec<Letter>) {
        self.relators.push(Word::from(letters));
    }

    fn involutive(&mut self) {
        for g in 0..self.table.len() {
            self.push(vec![Letter::pos(g), Letter::pos(g)]);
        }
    }

    /// Commutators for unordered generator pairs meeting in at most two indices.
    fn commutators(&mut self) {
        let quads = self.table.quads().to_vec();
        for (a, qa) in quads.iter().enumerate() {
            for (b, qb) in quads.iter().enumerate().skip(a + 1) {
                if qa.overlap(*qb) <= 2 {
                    self.push(vec![Letter::pos(a), Letter::pos(b), Letter::neg(a), Letter::neg(b)]);
                }
            }
        }
    }

    fn finish(self, meta: PresentationMeta) -> Presentation {
        Presentation::new(self.table.names(), self.relators, meta)
    }
}

fn build_ordered_full(n: usize, signed: bool) -> Presentation {
    let mut b = Builder::new(n, ordered_quads(n));
    if !signed {
        b.involutive();
    }
    let dihedral_sign = if signed { 1 } else { -1 };
    for &q in &ordered_quads(n) {
        for other in [q.shift(), q.reverse()] {
            let r = vec![b.letter(q, 1), b.letter(other, dihedral_sign)];
            b.push(r);
        }
    }
    b.commutators();
    let signs = pentagon_signs(signed);
    for t in ordered_tuples5(n) {
        let r = pentagon_quads(t).iter().zip(signs).map(|(&q, s)| b.letter(q, s)).collect();
        b.push(r);
    }
    let family = if signed { Family::GammaHat } else { Family::Gamma };
    b.finish(PresentationMeta::new(family, n, Mode::Full))
}

fn build_ordered_reduced(n: usize, signed: bool) -> Presentation {
    let mut b = Builder::new(n, canonical_quads(n));
    if !signed {
        b.involutive();
    }
    b.commutators();
    let signs = pentagon_signs(signed);
    let tuples: Box<dyn Iterator<Item = [usize; 5]>> =
        if signed { Box::new(ordered_tuples5(n)) } else { Box::new(representative_tuples5(n)) };
    for t in tuples {
        let r = pentagon_quads(t)
            .iter()
            .zip(signs)
            .map(|(&q, s)| {
                let (c, cs) = canonical_quad(q, signed);
                b.letter(c, s * cs)
            })
            .collect();
        b.push(r);
    }
    let family = if signed { Family::GammaHat } else { Family::Gamma };
    b.finish(PresentationMeta::new(family, n, Mode::Reduced))
}

/// The group generated by all ordered quads with involutive, commutative,
/// pentagon and dihedral relators.
///
/// Reduced mode keeps one generator per dihedral orbit and one pentagon per
/// dihedral class of ordered 5-tuples (12 per 5-subset); the group is the same.
pub fn build_gamma(n: usize, mode: Mode) -> Result<Presentation> {
    check_n(n)?;
    Ok(match mode {
        Mode::Full => build_ordered_full(n, false),
        Mode::Reduced => build_ordered_reduced(n, false),
    })
}

/// The signed variant: no involutive relators, dihedral images are inverses,
/// and the last two pentagon letters are inverted.
///
/// Reduced mode keeps one generator per orbit and commutators between those
/// only. Commuting with an inverse is the same as commuting with the element,
/// so nothing is lost. All ordered pentagons are kept.
pub fn build_gamma_hat(n: usize, mode: Mode) -> Result<Presentation> {
    check_n(n)?;
    Ok(match mode {
        Mode::Full => build_ordered_full(n, true),
        Mode::Reduced => build_ordered_reduced(n, true),
    })
}

/// Increasing quads only; pentagons over increasing 5-tuples. `hat` drops the
/// involutive relators and signs the pentagons.
pub fn build_delta(n: usize, hat: bool) -> Result<Presentation> {
    check_n(n)?;
    let mut b = Builder::new(n, increasing_quads(n));
    if !hat {
        b.involutive();
    }
    b.commutators();
    let signs = pentagon_signs(hat);
    for t in increasing_tuples5(n) {
        let r = pentagon_quads(t).iter().zip(signs).map(|(&q, s)| b.letter(q, s)).collect();
        b.push(r);
    }
    let family = if hat { Family::DeltaHat } else { Family::Delta };
    Ok(b.finish(PresentationMeta::new(family, n, Mode::Full)))
}

/// Expression of an increasing quad `(ijkl)` with `i >= 2` through the
/// pentagon for `(1,i,j,k,l)`, as `(quad, exponent)` factors.
pub fn delta_substitution(q: Quad, hat: bool) -> Vec<(Quad, i8)> {
    let [i, j, k, l] = q.entries();
    if i == 1 {
        return vec![(q, 1)];
    }
    let f = |a, b, c| Quad::raw([1, a, b, c]);
    if hat {
        vec![(f(i, k, l), -1), (f(i, j, k), -1), (f(j, k, l), 1), (f(i, j, l), 1)]
    } else {
        vec![(f(i, k, l), -1), (f(i, j, k), -1), (f(j, k, l), -1), (f(i, j, l), -1)]
    }
}

/// Presentation on the quads `(1jkl)` obtained by eliminating every other
/// generator through its pentagon. In the involutive case every letter is
/// then written with a positive exponent, which the squares permit.
pub fn build_delta_reduced(n: usize, hat: bool) -> Result<Presentation> {
    let full = build_delta(n, hat)?;
    let full_quads = increasing_quads(n);
    let kept: Vec<Quad> = full_quads.iter().copied().filter(|q| q.entries()[0] == 1).collect();
    let table = QuadTable::new(n, kept);
    let images: Vec<Word> = full_quads
        .iter()
        .map(|&q| {
            Word::from(
                delta_substitution(q, hat)
                    .into_iter()
                    .map(|(x, s)| Letter::new(table.index(x).expect("(1jkl) is kept"), s))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let mut seen = HashSet::new();
    let mut relators = Vec::new();
    for r in &full.relators {
        let mut w = r.substitute(|x| if x.inverse { images[x.gen.index()].invert() } else { images[x.gen.index()].clone() });
        if !hat {
            w = Word::from(w.letters().iter().map(|x| Letter { gen: x.gen, inverse: false }).collect::<Vec<_>>());
        }
        let (core, _) = w.cyclic_reduce();
        if core.is_empty() || !seen.insert(core.cyclic_key()) {
            continue;
        }
        relators.push(core);
    }
    let family = if hat { Family::DeltaHat } else { Family::Delta };
    Ok(Presentation::new(table.names(), relators, PresentationMeta::new(family, n, Mode::Reduced)))
}

/// Dispatches on family and mode. Custom presentations cannot be built.
pub fn build(family: Family, n: usize, mode: Mode) -> Result<Presentation> {
    match (family, mode) {
        (Family::Gamma, m) => build_gamma(n, m),
        (Family::GammaHat, m) => build_gamma_hat(n, m),
        (Family::Delta, Mode::Full) => build_delta(n, false),
        (Family::DeltaHat, Mode::Full) => build_delta(n, true),
        (Family::Delta, Mode::Reduced) => build_delta_reduced(n, false),
        (Family::DeltaHat, Mode::Reduced) => build_delta_reduced(n, true),
        (Family::Custom, _) => Err(KmError::InvalidArgument("custom presentations are read from files".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_five_counts() {
        let p = build_gamma(5, Mode::Full).unwrap();
        assert_eq!(p.num_generators(), 120);
        // involutive, two dihedral per generator, no commutators, 120 pentagons
        assert_eq!(p.num_relators(), 120 + 240 + 120);
        assert!(p.validate().is_empty());
    }

    #[test]
    fn gamma_five_reduced_is_theta_presentation() {
        let p = build_gamma(5, Mode::Reduced).unwrap();
        assert_eq!(p.num_generators(), 15);
        assert_eq!(p.num_relators(), 27);
        assert_eq!(p.generators[0], "(1234)");
        let a = p.parse_word("(1234) (1245) (2345) (1235) (1345)").unwrap();
        assert_eq!(p.relators[15], a);
        let d = p.parse_word("(1245) (1253) (2354) (1243) (1354)").unwrap();
        assert_eq!(p.relators[18], d);
        let l = p.parse_word("(1425) (1345) (2435) (1325) (1243)").unwrap();
        assert_eq!(p.relators[26], l);
    }

    #[test]
    fn n4_has_no_pentagons_or_commutators() {
        let p = build_gamma(4, Mode::Full).unwrap();
        assert_eq!(p.num_generators(), 24);
        assert_eq!(p.num_relators(), 24 + 48);
        let h = build_gamma_hat(4, Mode::Full).unwrap();
        assert_eq!(h.num_relators(), 48);
    }

    #[test]
    fn delta_small_cases() {
        let p = build_delta(4, false).unwrap();
        assert_eq!((p.num_generators(), p.num_relators()), (1, 1));
        let p = build_delta(5, false).unwrap();
        assert_eq!((p.num_generators(), p.num_relators()), (5, 6));
        assert!(build_delta(3, false).is_err());
    }

    #[test]
    fn delta_five_reduced_matches_four_generator_form() {
        let p = build_delta_reduced(5, false).unwrap();
        assert_eq!(p.generators, vec!["(1234)", "(1235)", "(1245)", "(1345)"]);
        let big = p.parse_word("(1245) (1234) (1345) (1235) (1245) (1234) (1345) (1235)").unwrap();
        assert_eq!(p.num_relators(), 5);
        assert!(p.relators.iter().any(|r| r.cyclic_key() == big.cyclic_key()));
        for g in 0..4 {
            assert!(p.relators.contains(&Word::from(vec![Letter::pos(g), Letter::pos(g)])));
        }
    }

    #[test]
    fn commutator_count_n6_brute_force() {
        let p = build_gamma(6, Mode::Full).unwrap();
        let comm = p.relators.iter().filter(|r| r.len() == 4).count();
        // independent count over pairs of 4-subsets given as bitmasks
        let subsets: Vec<u32> = (0u32..64).filter(|m| m.count_ones() == 4).collect();
        let mut pairs = 0;
        for a in 0..subsets.len() {
            for b in a + 1..subsets.len() {
                if (subsets[a] & subsets[b]).count_ones() <= 2 {
                    pairs += 1;
                }
            }
        }
        assert_eq!(comm, pairs * 24 * 24);
    }
}
