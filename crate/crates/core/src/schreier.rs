//! Reidemeister–Schreier presentations of kernels of maps onto finite
//! elementary abelian 2-groups.
//!
//! Cosets of the kernel are the elements of the image, so the coset table is
//! read off the generator images. Schreier generators are indexed by
//! `(coset, generator)` pairs; a relator `r` conjugated by the representative
//! of coset `c` is rewritten by walking `r` from `c` and emitting one symbol
//! per letter. The conjugating representative only contributes symbols that
//! are freely trivial, so it is never spelled out.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{KmError, Result};
use crate::homs::{ensure_well_defined, AbelianHom};
use crate::lattice::{h1, h1_of_relation_matrix, AbelianInvariants, SparseIntMatrix};
use crate::presentation::{tietze_simplify, Presentation, PresentationMeta, DEFAULT_MAX_ROUNDS};
use crate::word::{free_reduce, Letter, Word};

/// Above this index the kernel pipeline skips Tietze simplification and
/// streams rewritten relators straight into the relation matrix.
pub const STREAMING_INDEX: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    /// Image element (bit mask) of each coset; coset 0 is the kernel.
    pub elements: Vec<u64>,
    /// `action[c][g]`: coset reached from `c` by generator `g`. In an
    /// elementary abelian 2-group the inverse letter acts the same way.
    pub action: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.elements.len()
    }

    pub fn num_generators(&self) -> usize {
        self.action.first().map_or(0, Vec::len)
    }

    pub fn act(&self, c: usize, x: Letter) -> usize {
        self.action[c][x.gen.index()]
    }

    pub fn walk(&self, start: usize, w: &Word) -> usize {
        w.letters().iter().fold(start, |c, &x| self.act(c, x))
    }
}

/// Builds the coset table of `ker h`, with cosets in breadth-first order.
pub fn coset_table(p: &Presentation, h: &AbelianHom) -> Result<CosetTable> {
    if !h.is_finite() {
        return Err(KmError::Unsupported(format!("`{}` has infinite target", h.name)));
    }
    ensure_well_defined(h, p)?;
    let images = if h.dim == 0 { vec![0; h.num_generators()] } else { h.bit_images()? };
    let mut elements = vec![0u64];
    let mut index = HashMap::from([(0u64, 0usize)]);
    let mut action: Vec<Vec<usize>> = Vec::new();
    let mut c = 0;
    while c < elements.len() {
        let e = elements[c];
        let mut row = Vec::with_capacity(images.len());
        for &img in &images {
            let t = e ^ img;
            let next = *index.entry(t).or_insert_with(|| {
                elements.push(t);
                elements.len() - 1
            });
            row.push(next);
        }
        action.push(row);
        c += 1;
    }
    Ok(CosetTable { elements, action })
}

/// Prefix-closed coset representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    pub reps: Vec<Word>,
}

impl Transversal {
    /// Breadth-first over cosets, generators in index order, positive
    /// letters before inverse ones.
    pub fn breadth_first(t: &CosetTable) -> Self {
        let mut reps: Vec<Option<Word>> = vec![None; t.index()];
        reps[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for g in 0..t.num_generators() {
                for x in [Letter::pos(g), Letter::neg(g)] {
                    let d = t.act(c, x);
                    if reps[d].is_none() {
                        reps[d] = Some(reps[c].as_ref().unwrap().concat(&Word::letter(x)));
                        queue.push_back(d);
                    }
                }
            }
        }
        Transversal { reps: reps.into_iter().map(|r| r.expect("table is connected")).collect() }
    }

    /// Checks that `words` has one representative per coset, in any order,
    /// with the empty word for the kernel, and that it is prefix-closed.
    pub fn from_words(t: &CosetTable, words: Vec<Word>) -> Result<Self> {
        if words.len() != t.index() {
            return Err(KmError::InvalidArgument(format!(
                "transversal has {} words for {} cosets",
                words.len(),
                t.index()
            )));
        }
        let mut reps: Vec<Option<Word>> = vec![None; t.index()];
        for w in words {
            let c = t.walk(0, &w);
            if reps[c].replace(w.clone()).is_some() {
                return Err(KmError::InvalidArgument(format!("two representatives for coset {c}")));
            }
        }
        let reps: Vec<Word> = reps.into_iter().map(|r| r.expect("one word per coset")).collect();
        if !reps[0].is_empty() {
            return Err(KmError::InvalidArgument("the kernel must be represented by the empty word".into()));
        }
        for w in &reps {
            for k in 0..w.len() {
                let prefix = Word::from(w.letters()[..k].to_vec());
                if reps[t.walk(0, &prefix)] != prefix {
                    return Err(KmError::InvalidArgument("transversal is not prefix-closed".into()));
                }
            }
        }
        Ok(Transversal { reps })
    }

    /// Parses `1;(1234)` style lists against the generator names of `p`.
    pub fn parse(t: &CosetTable, p: &Presentation, text: &str) -> Result<Self> {
        let words = text.split(';').map(|s| p.parse_word(s.trim())).collect::<Result<Vec<_>>>()?;
        Self::from_words(t, words)
    }

    pub fn max_len(&self) -> usize {
        self.reps.iter().map(Word::len).max().unwrap_or(0)
    }
}

/// One Schreier generator `t_c x (t_{c x})^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchreierLabel {
    pub coset: usize,
    pub generator: usize,
    pub name: String,
    /// Freely equal to the identity.
    pub trivial: bool,
    /// Index in the emitted presentation, if present there.
    pub index: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct RsPresentation {
    pub presentation: Presentation,
    /// Every `(coset, generator)` pair, coset-major.
    pub labels: Vec<SchreierLabel>,
    /// Rewritten relators before empty ones are dropped (`index * |R|`).
    pub raw_relators: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RsOptions {
    /// Keep the freely trivial generators, each with a relator killing it.
    pub keep_trivial: bool,
}

fn coset_prefix(index: usize, c: usize) -> String {
    match (index, c) {
        (2, 0) => "α".to_string(),
        (2, _) => "β".to_string(),
        _ => format!("c{c}"),
    }
}

/// Labels for all Schreier generators, with triviality decided by free
/// reduction of `t_c x (t_{c x})^-1`.
pub fn schreier_labels(p: &Presentation, t: &CosetTable, tr: &Transversal) -> Vec<SchreierLabel> {
    let g = p.num_generators();
    let mut out = Vec::with_capacity(t.index() * g);
    for c in 0..t.index() {
        for x in 0..g {
            let d = t.act(c, Letter::pos(x));
            let s = tr.reps[c].concat(&Word::gen(x)).concat(&tr.reps[d].invert());
            out.push(SchreierLabel {
                coset: c,
                generator: x,
                name: format!("{}{}", coset_prefix(t.index(), c), p.generators[x]),
                trivial: s.is_empty(),
                index: None,
            });
        }
    }
    out
}

/// Rewrites `w` read from coset `start` into Schreier symbols, indexed as
/// `coset * g + generator` over all labels. Returns the word (trivial symbols
/// kept) and the coset where the walk ends.
pub fn tau(t: &CosetTable, w: &Word, start: usize) -> (Word, usize) {
    let g = t.num_generators();
    let mut cur = start;
    let mut out = Vec::with_capacity(w.len());
    for &x in w.letters() {
        if x.inverse {
            let prev = t.act(cur, x);
            out.push(Letter::neg(prev * g + x.gen.index()));
            cur = prev;
        } else {
            out.push(Letter::pos(cur * g + x.gen.index()));
            cur = t.act(cur, x);
        }
    }
    (Word::from(out), cur)
}

/// Reidemeister–Schreier presentation of the kernel described by `t`.
pub fn rs_presentation(p: &Presentation, t: &CosetTable, tr: &Transversal, opts: RsOptions) -> RsPresentation {
    let mut labels = schreier_labels(p, t, tr);
    let mut names = Vec::new();
    for l in labels.iter_mut() {
        if opts.keep_trivial || !l.trivial {
            l.index = Some(names.len());
            names.push(l.name.clone());
        }
    }
    let rename = |w: &Word| -> Word {
        free_reduce(
            w.letters()
                .iter()
                .filter_map(|x| labels[x.gen.index()].index.map(|i| Letter { gen: i.into(), inverse: x.inverse })),
        )
    };
    let mut relators = Vec::with_capacity(t.index() * p.num_relators());
    for c in 0..t.index() {
        for r in &p.relators {
            let (w, end) = tau(t, r, c);
            debug_assert_eq!(end, c, "relators lie in the kernel");
            relators.push(rename(&w));
        }
    }
    let raw_relators = relators.len();
    if opts.keep_trivial {
        relators.extend(labels.iter().filter(|l| l.trivial).map(|l| Word::gen(l.index.unwrap())));
    }
    let meta = PresentationMeta { family: crate::Family::Custom, n: p.meta.n, mode: p.meta.mode };
    RsPresentation { presentation: Presentation::new(names, relators, meta), labels, raw_relators }
}

/// Abelianized relation matrix of the kernel presentation, built row by row
/// without keeping the rewritten words. Columns are the nontrivial labels.
pub fn rs_relation_matrix(p: &Presentation, t: &CosetTable, tr: &Transversal) -> SparseIntMatrix {
    let labels = schreier_labels(p, t, tr);
    let mut column = vec![usize::MAX; labels.len()];
    let mut cols = 0;
    for (i, l) in labels.iter().enumerate() {
        if !l.trivial {
            column[i] = cols;
            cols += 1;
        }
    }
    let rows: Vec<Vec<(usize, i64)>> = (0..t.index())
        .into_par_iter()
        .flat_map_iter(|c| {
            let column = &column;
            p.relators.iter().map(move |r| {
                let (w, _) = tau(t, r, c);
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for x in w.letters() {
                    let j = column[x.gen.index()];
                    if j != usize::MAX {
                        *acc.entry(j).or_default() += x.sign();
                    }
                }
                let mut row: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
                row.sort_unstable();
                row
            })
        })
        .collect();
    let mut m = SparseIntMatrix::new(0, cols);
    for row in rows {
        m.push_row(row);
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub hom: String,
    pub index: usize,
    pub transversal_max_len: usize,
    pub schreier_generators: usize,
    pub relators: usize,
    /// Sizes after Tietze simplification; absent on the streaming route.
    pub simplified: Option<(usize, usize)>,
    pub invariants: AbelianInvariants,
}

#[derive(Clone, Debug, Default)]
pub struct KernelOptions {
    pub transversal: Option<Vec<Word>>,
    /// Force the streaming route regardless of the index.
    pub streaming: Option<bool>,
}

/// `H1` of `ker h`: coset table, transversal, Reidemeister–Schreier, then
/// either Tietze simplification and `H1`, or (for large index) a direct
/// relation matrix.
pub fn h1_kernel(p: &Presentation, h: &AbelianHom, opts: &KernelOptions) -> Result<KernelReport> {
    let t = coset_table(p, h)?;
    let tr = match &opts.transversal {
        Some(words) => Transversal::from_words(&t, words.clone())?,
        None => Transversal::breadth_first(&t),
    };
    let streaming = opts.streaming.unwrap_or(t.index() > STREAMING_INDEX);
    log::info!("kernel of {}: index {}, streaming {streaming}", h.name, t.index());
    if streaming {
        let m = rs_relation_matrix(p, &t, &tr);
        let (relators, gens) = (m.rows(), m.cols());
        let invariants = h1_of_relation_matrix(&m);
        return Ok(KernelReport {
            hom: h.name.clone(),
            index: t.index(),
            transversal_max_len: tr.max_len(),
            schreier_generators: gens,
            relators,
            simplified: None,
            invariants,
        });
    }
    let rs = rs_presentation(p, &t, &tr, RsOptions::default());
    let (simple, _) = tietze_simplify(&rs.presentation, DEFAULT_MAX_ROUNDS);
    Ok(KernelReport {
        hom: h.name.clone(),
        index: t.index(),
        transversal_max_len: tr.max_len(),
        schreier_generators: rs.presentation.num_generators(),
        relators: rs.raw_relators,
        simplified: Some((simple.num_generators(), simple.num_relators())),
        invariants: h1(&simple),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build;
    use crate::homs::{abelianization_hom, eps_all_ones_hom, nu_hom, trivial_hom};
    use crate::presentation::{Family, Mode};

    fn gamma5() -> Presentation {
        build(Family::Gamma, 5, Mode::Reduced).unwrap()
    }

    #[test]
    fn nu_cosets_and_transversal() {
        let p = gamma5();
        let t = coset_table(&p, &nu_hom(&p).unwrap()).unwrap();
        assert_eq!(t.index(), 2);
        assert_eq!(t.act(0, Letter::pos(0usize)), 1);
        let tr = Transversal::breadth_first(&t);
        assert_eq!(tr.reps.iter().map(|w| p.show(w)).collect::<Vec<_>>(), vec!["1", "(1234)"]);
        let parsed = Transversal::parse(&t, &p, "1;(1234)").unwrap();
        assert_eq!(parsed, tr);
        assert!(Transversal::parse(&t, &p, "1;(2345)").is_err());
    }

    #[test]
    fn tau_matches_hand_rewriting() {
        let p = gamma5();
        let t = coset_table(&p, &nu_hom(&p).unwrap()).unwrap();
        let tr = Transversal::breadth_first(&t);
        let rs = rs_presentation(&p, &t, &tr, RsOptions { keep_trivial: true });
        let names: Vec<String> = rs.labels.iter().map(|l| l.name.clone()).collect();
        let conj = p.parse_word("(1234) (1235) (1235) (1234)^-1").unwrap();
        let (w, end) = tau(&t, &conj, 0);
        assert_eq!(end, 0);
        assert_eq!(w.display(&names).to_string(), "α(1234) β(1235) α(1235) α(1234)^-1");
        let pent = &p.relators[15];
        let (w, _) = tau(&t, pent, 0);
        assert_eq!(w.display(&names).to_string(), "α(1234) β(1245) α(2345) α(1235) β(1345)");
    }

    #[test]
    fn raw_counts_for_nu() {
        let p = gamma5();
        let t = coset_table(&p, &nu_hom(&p).unwrap()).unwrap();
        let tr = Transversal::breadth_first(&t);
        let rs = rs_presentation(&p, &t, &tr, RsOptions::default());
        assert_eq!(rs.labels.len(), 30);
        assert_eq!(rs.labels.iter().filter(|l| l.trivial).count(), 1);
        assert_eq!(rs.presentation.num_generators(), 29);
        assert_eq!(rs.raw_relators, 54);
        let (simple, _) = tietze_simplify(&rs.presentation, DEFAULT_MAX_ROUNDS);
        assert_eq!((simple.num_generators(), simple.num_relators()), (17, 30));
    }

    #[test]
    fn kernel_of_nu() {
        let p = gamma5();
        let r = h1_kernel(&p, &nu_hom(&p).unwrap(), &KernelOptions::default()).unwrap();
        assert_eq!(r.invariants.to_string(), "Z^2 + (Z/2)^6");
        let streamed = h1_kernel(
            &p,
            &nu_hom(&p).unwrap(),
            &KernelOptions { transversal: None, streaming: Some(true) },
        )
        .unwrap();
        assert_eq!(streamed.invariants, r.invariants);
    }

    #[test]
    fn transversal_choice_does_not_matter() {
        let p = gamma5();
        let alt = vec![Word::identity(), p.parse_word("(1235)^-1").unwrap()];
        let r = h1_kernel(&p, &nu_hom(&p).unwrap(), &KernelOptions { transversal: Some(alt), streaming: None })
            .unwrap();
        assert_eq!(r.invariants, AbelianInvariants::with_twos(2, 6));
    }

    #[test]
    fn free_group_schreier_count() {
        for g in 1..=4usize {
            let names: Vec<String> = (0..g).map(|i| format!("x{i}")).collect();
            let p = Presentation::new(names, Vec::new(), PresentationMeta::custom());
            let t = coset_table(&p, &eps_all_ones_hom(&p)).unwrap();
            let tr = Transversal::breadth_first(&t);
            let nontrivial = schreier_labels(&p, &t, &tr).iter().filter(|l| !l.trivial).count();
            assert_eq!(nontrivial, t.index() * g - t.index() + 1);
        }
    }

    #[test]
    fn delta5_double_cover() {
        let p = build(Family::Delta, 5, Mode::Reduced).unwrap();
        let r = h1_kernel(&p, &eps_all_ones_hom(&p), &KernelOptions::default()).unwrap();
        assert_eq!(r.index, 2);
        assert_eq!(r.invariants.to_string(), "Z^2 + Z/2");
        let full = build(Family::Delta, 5, Mode::Full).unwrap();
        assert!(coset_table(&full, &eps_all_ones_hom(&full)).is_err());
    }

    #[test]
    fn explicit_three_generator_group() {
        let names = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let mut p = Presentation::new(names, Vec::new(), PresentationMeta::custom());
        p.relators = vec![p.parse_word("a c a c").unwrap(), p.parse_word("b c^-1 b^-1 a^-1 b c^-1 b^-1 a^-1").unwrap()];
        let r = h1_kernel(&p, &trivial_hom(&p), &KernelOptions::default()).unwrap();
        assert_eq!(r.index, 1);
        assert_eq!(r.invariants.to_string(), "Z^2 + Z/2");
    }

    #[test]
    fn abelianization_table_shape() {
        let p = gamma5();
        let t = coset_table(&p, &abelianization_hom(&p).unwrap()).unwrap();
        assert_eq!(t.index(), 512);
        let tr = Transversal::breadth_first(&t);
        assert!(tr.max_len() <= 9);
        for w in &tr.reps {
            for k in 0..w.len() {
                let prefix = Word::from(w.letters()[..k].to_vec());
                assert_eq!(tr.reps[t.walk(0, &prefix)], prefix);
            }
        }
    }
}
