//! Finite presentations `<generators | relators>`.

mod format;
mod tietze;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::KmError;
use crate::lattice::SparseIntMatrix;
use crate::word::{GenSymbol, Word};

pub use tietze::{tietze_simplify, TietzeMove, DEFAULT_MAX_ROUNDS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Gamma,
    GammaHat,
    Delta,
    DeltaHat,
    Custom,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::GammaHat => "gamma_hat",
            Family::Delta => "delta",
            Family::DeltaHat => "delta_hat",
            Family::Custom => "custom",
        }
    }

    /// Families whose generators satisfy `x^2 = 1`.
    pub fn is_involutive(self) -> bool {
        matches!(self, Family::Gamma | Family::Delta)
    }

    pub fn is_signed(self) -> bool {
        matches!(self, Family::GammaHat | Family::DeltaHat)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = KmError;
    fn from_str(s: &str) -> Result<Self, KmError> {
        match s {
            "gamma" => Ok(Family::Gamma),
            "gamma_hat" => Ok(Family::GammaHat),
            "delta" => Ok(Family::Delta),
            "delta_hat" => Ok(Family::DeltaHat),
            "custom" => Ok(Family::Custom),
            other => Err(KmError::Parse(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Full,
    Reduced,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::Reduced => "reduced",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = KmError;
    fn from_str(s: &str) -> Result<Self, KmError> {
        match s {
            "full" => Ok(Mode::Full),
            "reduced" => Ok(Mode::Reduced),
            other => Err(KmError::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationMeta {
    pub family: Family,
    pub n: Option<usize>,
    pub mode: Mode,
}

impl PresentationMeta {
    pub fn custom() -> Self {
        PresentationMeta { family: Family::Custom, n: None, mode: Mode::Full }
    }

    pub fn new(family: Family, n: usize, mode: Mode) -> Self {
        PresentationMeta { family, n: Some(n), mode }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub meta: PresentationMeta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UndeclaredSymbol { relator: usize, symbol: GenSymbol },
    RedundantRelator { relator: usize },
    DuplicateGenerator { name: String },
    BadGeneratorName { name: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UndeclaredSymbol { relator, symbol } => {
                write!(f, "relator {relator} uses undeclared generator g{}", symbol.0)
            }
            Violation::RedundantRelator { relator } => {
                write!(f, "relator {relator} is freely trivial (redundant)")
            }
            Violation::DuplicateGenerator { name } => write!(f, "generator `{name}` declared twice"),
            Violation::BadGeneratorName { name } => {
                write!(f, "generator name `{name}` is not a single token")
            }
        }
    }
}

impl Presentation {
    /// Builds a presentation, dropping relators that reduce to the identity.
    pub fn new(generators: Vec<String>, relators: Vec<Word>, meta: PresentationMeta) -> Self {
        let relators = relators.into_iter().filter(|r| !r.is_empty()).collect();
        Presentation { generators, relators, meta }
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<GenSymbol> {
        self.generators.iter().position(|g| g == name).map(GenSymbol::from)
    }

    pub fn name_lookup(&self) -> HashMap<&str, GenSymbol> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.as_str(), GenSymbol::from(i)))
            .collect()
    }

    pub fn show(&self, w: &Word) -> String {
        w.display(&self.generators).to_string()
    }

    pub fn parse_word(&self, text: &str) -> crate::Result<Word> {
        Word::parse(text, &self.generators)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = HashMap::new();
        for name in &self.generators {
            if name.is_empty() || name == "1" || name.contains(char::is_whitespace) || name.contains('^') {
                out.push(Violation::BadGeneratorName { name: name.clone() });
            }
            if seen.insert(name.as_str(), ()).is_some() {
                out.push(Violation::DuplicateGenerator { name: name.clone() });
            }
        }
        let g = self.generators.len();
        for (i, r) in self.relators.iter().enumerate() {
            if r.is_empty() {
                out.push(Violation::RedundantRelator { relator: i });
                continue;
            }
            let mut bad: Vec<GenSymbol> =
                r.letters().iter().map(|x| x.gen).filter(|s| s.index() >= g).collect();
            bad.sort();
            bad.dedup();
            for symbol in bad {
                out.push(Violation::UndeclaredSymbol { relator: i, symbol });
            }
        }
        out
    }

    /// One row per relator, one column per generator, entries are exponent sums.
    pub fn abelianized_relation_matrix(&self) -> SparseIntMatrix {
        let g = self.generators.len();
        let mut m = SparseIntMatrix::new(self.relators.len(), g);
        for (i, r) in self.relators.iter().enumerate() {
            for x in r.letters() {
                m.add_i64(i, x.gen.index(), x.sign());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;

    fn pres(gens: &[&str], rels: Vec<Word>) -> Presentation {
        Presentation::new(gens.iter().map(|s| s.to_string()).collect(), rels, PresentationMeta::custom())
    }

    #[test]
    fn validate_flags_undeclared_and_redundant() {
        let mut p = pres(&["a", "b"], vec![Word::from_pairs([(0, 1), (1, 1)])]);
        assert!(p.validate().is_empty());
        p.relators.push(Word::from_pairs([(5, 1)]));
        assert_eq!(p.validate(), vec![Violation::UndeclaredSymbol { relator: 1, symbol: GenSymbol(5) }]);
        p.relators.pop();
        p.relators.push(Word::from_pairs([(0, 1), (0, -1)]));
        assert_eq!(p.validate(), vec![Violation::RedundantRelator { relator: 1 }]);
    }

    #[test]
    fn new_drops_empty_relators() {
        let p = pres(&["a"], vec![Word::identity(), Word::gen(0usize)]);
        assert_eq!(p.num_relators(), 1);
    }

    #[test]
    fn relation_matrix_exponent_sums() {
        let p = pres(&["a"], vec![Word::from(vec![Letter::pos(0usize), Letter::pos(0usize)])]);
        let m = p.abelianized_relation_matrix();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(m.get_i64(0, 0), Some(2));
    }
}
