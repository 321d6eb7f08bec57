//! Rewriting generators over the minimal generating set, with certificates
//! that replay against the full presentation.
//!
//! Every generator outside the generating set gets a one-step definition: a
//! relator containing it once, which expresses it through other generators.
//! The definitions form an acyclic dependency graph, so expanding the
//! leftmost undefined letter until none remain terminates. Definitions:
//!
//! * a quad containing 1 but not of the form `(1abc)`, `a < c`: a dihedral
//!   relator toward that form;
//! * `(1ijk)` with `3 <= i`, `j` neither 2 nor larger than `k`: the pentagon
//!   for `(1,i,j,k,2)`, solved for its first factor;
//! * `(12jk)` with `4 <= j < k`: the pentagon for `(1,2,j,k,3)`, first factor;
//! * a quad avoiding 1 whose 2 has neighbours `y < z` and opposite entry `x`:
//!   if `x < z`, dihedral relators toward `(y2zx)` and then the pentagon for
//!   `(y,2,z,x,1)`, first factor; if `x > z` and `y = 3`, dihedral relators
//!   toward `(2zx3)` and then the pentagon for `(2,1,z,x,3)`, fifth factor;
//! * any other quad `(abcd)` avoiding 1: the pentagon for `(1,a,b,c,d)`,
//!   third factor.
//!
//! The increasing families only need the last rule.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::build::{build, pentagon_quads, pentagon_signs};
use super::lambda::lambda_generators;
use super::quad::{Quad, QuadTable};
use crate::error::{KmError, Result};
use crate::presentation::{Family, Mode, Presentation};
use crate::word::{free_reduce, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    FreeReduce,
    /// Splice the relator (inverted if asked), rotated left by `rotation`,
    /// in front of letter `position`, then free-reduce.
    InsertRelator { position: usize, relator: usize, inverted: bool, rotation: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub start: Word,
    pub moves: Vec<Move>,
    pub end: Word,
}

impl Certificate {
    pub fn trivial(w: Word) -> Self {
        Certificate { start: w.clone(), moves: Vec::new(), end: w }
    }
}

/// Replays the moves from `start` and compares with `end`. Malformed moves
/// (bad position or rotation) make the certificate invalid; a relator index
/// outside the presentation is an error.
pub fn verify_certificate(c: &Certificate, p: &Presentation) -> Result<bool> {
    let mut cur: Vec<Letter> = c.start.letters().to_vec();
    for mv in &c.moves {
        match *mv {
            Move::FreeReduce => cur = free_reduce(cur).into_letters(),
            Move::InsertRelator { position, relator, inverted, rotation } => {
                let r = p
                    .relators
                    .get(relator)
                    .ok_or(KmError::RelatorOutOfRange { index: relator, len: p.num_relators() })?;
                let r = if inverted { r.invert() } else { r.clone() };
                if rotation >= r.len() || position > cur.len() {
                    return Ok(false);
                }
                let l = r.letters();
                let tail = cur.split_off(position);
                cur.extend_from_slice(&l[rotation..]);
                cur.extend_from_slice(&l[..rotation]);
                cur.extend(tail);
                cur = free_reduce(cur).into_letters();
            }
        }
    }
    Ok(free_reduce(cur) == c.end)
}

/// Upper bound on expansion steps; the definitions are acyclic, so hitting it
/// means a bug.
const MAX_STEPS: usize = 1_000_000;

/// Rewrites generators of one full presentation over its generating set.
pub struct Rewriter {
    family: Family,
    n: usize,
    pres: Presentation,
    table: QuadTable,
    target: HashSet<usize>,
    relator_index: HashMap<Word, usize>,
    /// Generator index -> relator defining it.
    rules: HashMap<usize, usize>,
}

impl Rewriter {
    pub fn new(n: usize, family: Family) -> Result<Self> {
        let pres = build(family, n, Mode::Full)?;
        let quads: Vec<Quad> =
            pres.generators.iter().map(|g| Quad::parse(g, n)).collect::<Result<_>>()?;
        let table = QuadTable::new(n, quads);
        let target = lambda_generators(n, family)?
            .into_iter()
            .map(|q| table.index(q).expect("generating set lies in the generators"))
            .collect();
        let relator_index = pres
            .relators
            .iter()
            .enumerate()
            .filter(|(_, r)| r.len() == 2 || r.len() == 5)
            .map(|(i, r)| (r.clone(), i))
            .collect();
        Ok(Rewriter { family, n, pres, table, target, relator_index, rules: HashMap::new() })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn generator(&self, q: Quad) -> Result<usize> {
        self.table
            .index(q)
            .ok_or_else(|| KmError::InvalidArgument(format!("{q} is not a generator of {} n={}", self.family, self.n)))
    }

    pub fn is_target(&self, g: usize) -> bool {
        self.target.contains(&g)
    }

    fn signed(&self) -> bool {
        self.family.is_signed()
    }

    fn pentagon_relator(&self, t: [usize; 5]) -> usize {
        let w = Word::from(
            pentagon_quads(t)
                .iter()
                .zip(pentagon_signs(self.signed()))
                .map(|(&q, s)| Letter::new(self.table.index(q).expect("pentagon quad"), s))
                .collect::<Vec<_>>(),
        );
        *self.relator_index.get(&w).unwrap_or_else(|| panic!("pentagon {t:?} is a relator"))
    }

    fn dihedral_relator(&self, a: Quad, b: Quad) -> usize {
        let s = if self.signed() { 1 } else { -1 };
        let ia = self.table.index(a).expect("generator");
        let ib = self.table.index(b).expect("generator");
        let w1 = Word::from(vec![Letter::pos(ia), Letter::new(ib, s)]);
        let w2 = Word::from(vec![Letter::pos(ib), Letter::new(ia, s)]);
        self.relator_index
            .get(&w1)
            .or_else(|| self.relator_index.get(&w2))
            .copied()
            .unwrap_or_else(|| panic!("{a} and {b} are joined by a dihedral relator"))
    }

    /// First step on a shortest dihedral path from `q` to `goal`.
    fn dihedral_step(&self, q: Quad, goal: Quad) -> usize {
        let mut dist: HashMap<Quad, usize> = HashMap::from([(goal, 0)]);
        let mut queue = VecDeque::from([goal]);
        let neighbours = |x: Quad| [x.shift(), x.shift().shift().shift(), x.reverse()];
        while let Some(x) = queue.pop_front() {
            for y in neighbours(x) {
                if !dist.contains_key(&y) {
                    dist.insert(y, dist[&x] + 1);
                    queue.push_back(y);
                }
            }
        }
        let d = dist[&q];
        let next = neighbours(q).into_iter().find(|y| dist[y] + 1 == d).expect("shortest path exists");
        self.dihedral_relator(q, next)
    }

    fn rule_for(&self, q: Quad) -> usize {
        let e = q.entries();
        if matches!(self.family, Family::Delta | Family::DeltaHat) {
            return self.pentagon_relator([1, e[0], e[1], e[2], e[3]]);
        }
        if q.contains(1) {
            let p1 = e.iter().position(|&x| x == 1).unwrap();
            let (a, c) = (e[(p1 + 1) % 4], e[(p1 + 3) % 4]);
            let b = e[(p1 + 2) % 4];
            let goal = if a < c { Quad::raw([1, a, b, c]) } else { Quad::raw([1, c, b, a]) };
            if goal != q {
                return self.dihedral_step(q, goal);
            }
            let [_, i, j, k] = e;
            if i == 2 {
                // (12jk) with 4 <= j < k
                return self.pentagon_relator([1, 2, j, k, 3]);
            }
            return self.pentagon_relator([1, i, j, k, 2]);
        }
        if let Some(p2) = e.iter().position(|&x| x == 2) {
            let (u, v) = (e[(p2 + 1) % 4], e[(p2 + 3) % 4]);
            let (y, z) = (u.min(v), u.max(v));
            let x = e[(p2 + 2) % 4];
            if x < z {
                let goal = Quad::raw([y, 2, z, x]);
                if goal != q {
                    return self.dihedral_step(q, goal);
                }
                return self.pentagon_relator([y, 2, z, x, 1]);
            }
            if y == 3 {
                let goal = Quad::raw([2, z, x, 3]);
                if goal != q {
                    return self.dihedral_step(q, goal);
                }
                return self.pentagon_relator([2, 1, z, x, 3]);
            }
        }
        self.pentagon_relator([1, e[0], e[1], e[2], e[3]])
    }

    fn rule(&mut self, g: usize) -> usize {
        if let Some(&r) = self.rules.get(&g) {
            return r;
        }
        let r = self.rule_for(self.table.quads()[g]);
        self.rules.insert(g, r);
        r
    }

    /// Rewrites `q` as a word over the generating set together with a
    /// certificate over the full presentation.
    pub fn rewrite(&mut self, q: Quad) -> Result<(Word, Certificate)> {
        let g = self.generator(q)?;
        let start = Word::gen(g);
        let mut cur = start.clone();
        let mut moves = Vec::new();
        while let Some(pos) = cur.letters().iter().position(|x| !self.target.contains(&x.gen.index())) {
            if moves.len() >= MAX_STEPS {
                return Err(KmError::Inconsistent(format!("rewriting {q} does not terminate")));
            }
            let x = cur.letters()[pos];
            let ri = self.rule(x.gen.index());
            let r = &self.pres.relators[ri];
            let at = r.letters().iter().position(|y| y.gen == x.gen).expect("rule relator contains the letter");
            let e = r.letters()[at];
            // a rotation that starts with x^-1 cancels x and leaves its replacement
            let (inverted, rotation) = if e.inverse != x.inverse { (false, at) } else { (true, r.len() - 1 - at) };
            let mv = Move::InsertRelator { position: pos + 1, relator: ri, inverted, rotation };
            let rr = if inverted { r.invert() } else { r.clone() };
            let mut letters = cur.letters()[..=pos].to_vec();
            letters.extend_from_slice(&rr.letters()[rotation..]);
            letters.extend_from_slice(&rr.letters()[..rotation]);
            letters.extend_from_slice(&cur.letters()[pos + 1..]);
            cur = free_reduce(letters);
            moves.push(mv);
        }
        let cert = Certificate { start, moves, end: cur.clone() };
        Ok((cur, cert))
    }
}

/// One-off convenience wrapper around [`Rewriter`].
pub fn rewrite_in_lambda(q: Quad, n: usize, family: Family) -> Result<(Word, Certificate)> {
    Rewriter::new(n, family)?.rewrite(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_one_at_n5_matches_hand_derivation() {
        let mut rw = Rewriter::new(5, Family::GammaHat).unwrap();
        let (w, cert) = rw.rewrite(Quad::raw([1, 3, 4, 5])).unwrap();
        assert_eq!(
            rw.presentation().show(&w),
            "(1254) (1243) (1324)^-1 (1254)^-1 (1325) (1354) (1253)^-1"
        );
        assert!(verify_certificate(&cert, rw.presentation()).unwrap());
    }

    #[test]
    fn generating_set_member_is_fixed() {
        let mut rw = Rewriter::new(5, Family::GammaHat).unwrap();
        let (w, cert) = rw.rewrite(Quad::raw([1, 2, 3, 4])).unwrap();
        assert_eq!(rw.presentation().show(&w), "(1234)");
        assert!(cert.moves.is_empty());
    }

    #[test]
    fn tampering_is_detected() {
        let mut rw = Rewriter::new(5, Family::GammaHat).unwrap();
        let (_, cert) = rw.rewrite(Quad::raw([1, 3, 4, 5])).unwrap();
        let mut bad = cert.clone();
        if let Move::InsertRelator { rotation, .. } = &mut bad.moves[0] {
            *rotation = (*rotation + 1) % 5;
        }
        assert!(!verify_certificate(&bad, rw.presentation()).unwrap());
        let mut oob = cert;
        oob.moves[0] = Move::InsertRelator { position: 1, relator: usize::MAX, inverted: false, rotation: 0 };
        assert!(verify_certificate(&oob, rw.presentation()).is_err());
    }

    #[test]
    fn empty_certificate() {
        let p = build(Family::Gamma, 4, Mode::Full).unwrap();
        assert!(verify_certificate(&Certificate::trivial(Word::gen(3usize)), &p).unwrap());
    }

    #[test]
    fn every_generator_rewrites_at_n5() {
        for family in [Family::Gamma, Family::GammaHat, Family::Delta, Family::DeltaHat] {
            let mut rw = Rewriter::new(5, family).unwrap();
            for q in rw.table.quads().to_vec() {
                let (w, cert) = rw.rewrite(q).unwrap();
                assert!(w.letters().iter().all(|x| rw.is_target(x.gen.index())));
                assert!(verify_certificate(&cert, rw.presentation()).unwrap(), "{family} {q}");
            }
        }
    }
}
