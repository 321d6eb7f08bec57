//! Line-oriented text format and its JSON mirror.
//!
//! ```text
//! # family=gamma n=5 mode=full
//! gen (1234)
//! rel (1234) (1234)
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Family, Mode, Presentation, PresentationMeta};
use crate::error::{KmError, Result};
use crate::word::{Letter, Word};

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    family: Family,
    n: Option<usize>,
    mode: Mode,
    generators: Vec<String>,
    relators: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let m = &self.meta;
        match m.n {
            Some(n) => writeln!(s, "# family={} n={} mode={}", m.family, n, m.mode),
            None => writeln!(s, "# family={} mode={}", m.family, m.mode),
        }
        .unwrap();
        for g in &self.generators {
            writeln!(s, "gen {g}").unwrap();
        }
        for r in &self.relators {
            writeln!(s, "rel {}", self.show(r)).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Presentation> {
        let mut meta = PresentationMeta::custom();
        let mut header_seen = false;
        let mut generators = Vec::new();
        let mut rel_lines = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if !header_seen && comment.contains("family=") {
                    meta = parse_header(comment)?;
                    header_seen = true;
                }
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match kw {
                "gen" => {
                    let name = rest.trim();
                    if name.is_empty() || name.contains(char::is_whitespace) {
                        return Err(KmError::Parse(format!("line {}: bad generator name", lineno + 1)));
                    }
                    generators.push(name.to_string());
                }
                "rel" => rel_lines.push((lineno + 1, rest.trim().to_string())),
                other => {
                    return Err(KmError::Parse(format!("line {}: unknown keyword `{other}`", lineno + 1)))
                }
            }
        }
        let relators = rel_lines
            .into_iter()
            .map(|(ln, r)| {
                Word::parse(&r, &generators).map_err(|e| KmError::Parse(format!("line {ln}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation::new(generators, relators, meta))
    }

    pub fn to_json(&self) -> Result<String> {
        let j = PresentationJson {
            family: self.meta.family,
            n: self.meta.n,
            mode: self.meta.mode,
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| r.letters().to_vec()).collect(),
        };
        Ok(serde_json::to_string_pretty(&j)?)
    }

    /// Parses the JSON mirror. Relators are reduced on load; range checks are
    /// left to [`Presentation::validate`].
    pub fn from_json(text: &str) -> Result<Presentation> {
        let j: PresentationJson = serde_json::from_str(text)?;
        let relators = j.relators.into_iter().map(Word::from).collect();
        Ok(Presentation::new(
            j.generators,
            relators,
            PresentationMeta { family: j.family, n: j.n, mode: j.mode },
        ))
    }

    /// Loads either format, sniffing the first non-blank character.
    pub fn load(text: &str) -> Result<Presentation> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_text(text)
        }
    }
}

fn parse_header(comment: &str) -> Result<PresentationMeta> {
    let mut meta = PresentationMeta::custom();
    for kv in comment.split_whitespace() {
        let Some((k, v)) = kv.split_once('=') else { continue };
        match k {
            "family" => meta.family = v.parse()?,
            "n" => {
                meta.n = Some(v.parse().map_err(|_| KmError::Parse(format!("bad n `{v}`")))?);
            }
            "mode" => meta.mode = v.parse()?,
            _ => {}
        }
    }
    Ok(meta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Presentation {
        let gens = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let rels = vec![
            Word::parse("a c a c", &gens).unwrap(),
            Word::parse("b c^-1 b^-1 a^-1 b c^-1 b^-1 a^-1", &gens).unwrap(),
        ];
        Presentation::new(gens, rels, PresentationMeta::custom())
    }

    #[test]
    fn text_round_trip() {
        let p = sample();
        let t = p.to_text();
        assert!(t.starts_with("# family=custom mode=full\n"));
        assert!(t.contains("rel b c^-1 b^-1 a^-1 b c^-1 b^-1 a^-1\n"));
        assert_eq!(Presentation::from_text(&t).unwrap(), p);
    }

    #[test]
    fn json_round_trip() {
        let p = sample();
        let j = p.to_json().unwrap();
        assert!(j.contains("\"family\": \"custom\""));
        assert_eq!(Presentation::from_json(&j).unwrap(), p);
        assert_eq!(Presentation::load(&j).unwrap(), p);
    }

    #[test]
    fn header_is_parsed() {
        let p = Presentation::from_text("# family=delta n=4 mode=full\ngen (1234)\nrel (1234) (1234)\n").unwrap();
        assert_eq!(p.meta, PresentationMeta::new(Family::Delta, 4, Mode::Full));
        assert_eq!(p.num_relators(), 1);
    }

    #[test]
    fn unknown_generator_is_a_parse_error() {
        let err = Presentation::from_text("gen a\nrel a b\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}
