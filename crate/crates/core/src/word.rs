//! Free-group words over a dense generator table.
//!
//! A [`Word`] is always freely reduced. Raw letter sequences go through
//! [`free_reduce`], which is a single stack pass.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{KmError, Result};

/// Index into a presentation's generator table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GenSymbol(pub u32);

impl GenSymbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for GenSymbol {
    fn from(i: usize) -> Self {
        GenSymbol(i as u32)
    }
}

/// A generator raised to the power +1 or -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: GenSymbol,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: impl Into<GenSymbol>, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "letter sign must be +1 or -1");
        Letter { gen: gen.into(), inverse: sign < 0 }
    }

    pub fn pos(gen: impl Into<GenSymbol>) -> Self {
        Letter { gen: gen.into(), inverse: false }
    }

    pub fn neg(gen: impl Into<GenSymbol>) -> Self {
        Letter { gen: gen.into(), inverse: true }
    }

    #[inline]
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    #[inline]
    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.gen.0, self.sign()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (gen, sign) = <(u32, i64)>::deserialize(d)?;
        match sign {
            1 => Ok(Letter::pos(GenSymbol(gen))),
            -1 => Ok(Letter::neg(GenSymbol(gen))),
            other => Err(serde::de::Error::custom(format!("letter sign must be +1 or -1, got {other}"))),
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

/// Freely reduces a raw letter sequence.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut stack: Vec<Letter> = Vec::new();
    for x in letters {
        if stack.last().is_some_and(|&y| y.cancels(x)) {
            stack.pop();
        } else {
            stack.push(x);
        }
    }
    Word(stack)
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: Letter) -> Self {
        Word(vec![x])
    }

    pub fn gen(g: impl Into<GenSymbol>) -> Self {
        Word(vec![Letter::pos(g)])
    }

    /// Builds a word from `(generator, sign)` pairs, reducing on the way.
    pub fn from_pairs<I: IntoIterator<Item = (usize, i8)>>(pairs: I) -> Self {
        free_reduce(pairs.into_iter().map(|(g, s)| Letter::new(g, s)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|x| x.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        free_reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.invert() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        free_reduce(out)
    }

    /// Splits `w = conjugator * core * conjugator^-1` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let w = &self.0;
        let mut lo = 0;
        let mut hi = w.len();
        while hi - lo >= 2 && w[lo].cancels(w[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        (Word(w[lo..hi].to_vec()), Word(w[..lo].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.0.len() < 2 || !self.0[0].cancels(self.0[self.0.len() - 1])
    }

    /// Left cyclic shift by `k` letters. Only meaningful on cyclically reduced
    /// words if the result should stay reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        free_reduce(v)
    }

    pub fn contains_gen(&self, g: GenSymbol) -> bool {
        self.0.iter().any(|x| x.gen == g)
    }

    pub fn occurrences(&self, g: GenSymbol) -> usize {
        self.0.iter().filter(|x| x.gen == g).count()
    }

    /// Signed exponent sum of each generator, indexed by generator id.
    pub fn exponent_sums(&self, num_gens: usize) -> Vec<i64> {
        let mut v = vec![0i64; num_gens];
        for x in &self.0 {
            v[x.gen.index()] += x.sign();
        }
        v
    }

    pub fn max_gen(&self) -> Option<GenSymbol> {
        self.0.iter().map(|x| x.gen).max()
    }

    /// Replaces each letter by a word, then reduces.
    pub fn substitute<F: Fn(Letter) -> Word>(&self, f: F) -> Word {
        let mut out = Vec::with_capacity(self.0.len());
        for &x in &self.0 {
            out.extend(f(x).0);
        }
        free_reduce(out)
    }

    /// Canonical representative of the cyclic word up to rotation and
    /// inversion. Two relators with the same key have the same normal closure.
    pub fn cyclic_key(&self) -> Word {
        let (core, _) = self.cyclic_reduce();
        if core.is_empty() {
            return core;
        }
        let inv = core.invert();
        let n = core.len();
        let mut best: Option<Vec<Letter>> = None;
        for w in [&core, &inv] {
            for k in 0..n {
                let cand: Vec<Letter> = w.0[k..].iter().chain(w.0[..k].iter()).copied().collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        Word(best.unwrap())
    }

    /// Renders the word with the given generator names; identity renders as `1`.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> WordDisplay<'a, S> {
        WordDisplay { word: self, names }
    }

    /// Parses the text syntax `name name^-1 ...`; `1` is the identity.
    pub fn parse<S: AsRef<str>>(text: &str, names: &[S]) -> Result<Word> {
        let lookup = |name: &str| {
            names
                .iter()
                .position(|n| n.as_ref() == name)
                .ok_or_else(|| KmError::Parse(format!("unknown generator `{name}`")))
        };
        let mut raw = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, exp) = match tok.rsplit_once('^') {
                Some((name, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| KmError::Parse(format!("bad exponent in `{tok}`")))?;
                    (name, e)
                }
                None => (tok, 1),
            };
            let g = lookup(name)?;
            let x = Letter::new(g, if exp < 0 { -1 } else { 1 });
            for _ in 0..exp.unsigned_abs() {
                raw.push(x);
            }
        }
        Ok(free_reduce(raw))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        free_reduce(v)
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl Mul for Word {
    type Output = Word;
    fn mul(self, rhs: Word) -> Word {
        let mut v = self.0;
        v.extend(rhs.0);
        free_reduce(v)
    }
}

pub struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (i, x) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(x.gen.index()) {
                Some(n) => f.write_str(n.as_ref())?,
                None => write!(f, "g{}", x.gen.0)?,
            }
            if x.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}
