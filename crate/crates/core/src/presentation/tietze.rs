//! Substitution-only Tietze simplification.
//!
//! Moves: drop relators that cyclically reduce to the identity, drop
//! relators equal to another one up to rotation and inversion, and eliminate
//! a generator `g` through a relator `g w` (with `g` absent from `w`) by
//! substituting `w^-1` for `g` everywhere. An elimination is only taken when
//! it does not increase the total relator length; candidates are ordered by
//! growth, then generator id, then relator index.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::Presentation;
use crate::word::{GenSymbol, Letter, Word};

pub const DEFAULT_MAX_ROUNDS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum TietzeMove {
    DropTrivial { relator: String },
    DropDuplicate { relator: String },
    Eliminate { generator: String, replacement: String, via: String, growth: i64 },
}

struct State<'a> {
    names: &'a [String],
    relators: Vec<Option<Word>>,
    keys: HashSet<Word>,
    alive: Vec<bool>,
    log: Vec<TietzeMove>,
}

impl State<'_> {
    fn show(&self, w: &Word) -> String {
        w.display(self.names).to_string()
    }

    /// Cyclically reduces relator `i` and drops it if trivial or duplicated.
    fn settle(&mut self, i: usize) -> bool {
        let Some(r) = self.relators[i].take() else { return false };
        let (core, _) = r.cyclic_reduce();
        if core.is_empty() {
            self.log.push(TietzeMove::DropTrivial { relator: self.show(&r) });
            return true;
        }
        let key = core.cyclic_key();
        if !self.keys.insert(key) {
            self.log.push(TietzeMove::DropDuplicate { relator: self.show(&core) });
            return true;
        }
        let changed = core != r;
        self.relators[i] = Some(core);
        changed
    }

    fn cleanup(&mut self) -> bool {
        self.keys.clear();
        let mut changed = false;
        for i in 0..self.relators.len() {
            changed |= self.settle(i);
        }
        changed
    }

    fn best_elimination(&self) -> Option<(i64, GenSymbol, usize)> {
        let mut occ = vec![0usize; self.alive.len()];
        for r in self.relators.iter().flatten() {
            for x in r.letters() {
                occ[x.gen.index()] += 1;
            }
        }
        let mut best: Option<(i64, GenSymbol, usize)> = None;
        let mut local = vec![0usize; self.alive.len()];
        for (ri, r) in self.relators.iter().enumerate() {
            let Some(r) = r else { continue };
            for x in r.letters() {
                local[x.gen.index()] += 1;
            }
            let len = r.len() as i64;
            for x in r.letters() {
                let g = x.gen;
                if local[g.index()] != 1 {
                    continue;
                }
                let growth = (occ[g.index()] as i64 - 1) * (len - 2) - len;
                if growth > 0 {
                    continue;
                }
                let cand = (growth, g, ri);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
            for x in r.letters() {
                local[x.gen.index()] = 0;
            }
        }
        best
    }

    fn eliminate(&mut self, growth: i64, g: GenSymbol, ri: usize) {
        let r = self.relators[ri].take().expect("live relator");
        let pos = r.letters().iter().position(|x| x.gen == g).expect("generator occurs");
        let rotated = r.rotate(pos);
        let head = rotated.letters()[0];
        let rest = Word::from(rotated.letters()[1..].to_vec());
        // head * rest = 1
        let replacement = if head.inverse { rest } else { rest.invert() };
        self.keys.remove(&r.cyclic_key());
        self.log.push(TietzeMove::Eliminate {
            generator: self.names[g.index()].clone(),
            replacement: self.show(&replacement),
            via: self.show(&r),
            growth,
        });
        self.alive[g.index()] = false;
        let rep_inv = replacement.invert();
        for i in 0..self.relators.len() {
            let hit = self.relators[i].as_ref().is_some_and(|w| w.contains_gen(g));
            if !hit {
                continue;
            }
            let w = self.relators[i].take().unwrap();
            self.keys.remove(&w.cyclic_key());
            let sub = w.substitute(|x: Letter| {
                if x.gen != g {
                    Word::letter(x)
                } else if x.inverse {
                    rep_inv.clone()
                } else {
                    replacement.clone()
                }
            });
            self.relators[i] = Some(sub);
            self.settle(i);
        }
    }
}

/// Simplifies `p` to a presentation of an isomorphic group, returning the
/// result and the log of moves. Never increases the generator count.
pub fn tietze_simplify(p: &Presentation, max_rounds: usize) -> (Presentation, Vec<TietzeMove>) {
    let mut st = State {
        names: &p.generators,
        relators: p.relators.iter().cloned().map(Some).collect(),
        keys: HashSet::new(),
        alive: vec![true; p.generators.len()],
        log: Vec::new(),
    };
    for round in 0..max_rounds.max(1) {
        let mut changed = st.cleanup();
        while let Some((growth, g, ri)) = st.best_elimination() {
            st.eliminate(growth, g, ri);
            changed = true;
        }
        log::debug!("tietze round {round}: changed={changed}");
        if !changed {
            break;
        }
    }

    let mut remap = vec![None; p.generators.len()];
    let mut names = Vec::new();
    for (i, name) in p.generators.iter().enumerate() {
        if st.alive[i] {
            remap[i] = Some(names.len());
            names.push(name.clone());
        }
    }
    let relators = st
        .relators
        .into_iter()
        .flatten()
        .map(|r| {
            Word::from(
                r.letters()
                    .iter()
                    .map(|x| Letter { gen: GenSymbol::from(remap[x.gen.index()].unwrap()), inverse: x.inverse })
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    (Presentation::new(names, relators, p.meta.clone()), st.log)
}
