//! The end-to-end verification suite: every headline computation, grouped
//! into eight numbered criteria, plus randomized oracle checks.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{KmError, Result};
use crate::groups::{binomial, build, lambda_generators, lambda_size, verify_certificate, Certificate, Move, Rewriter};
use crate::homs::{
    abelianization_hom, eps_all_ones_hom, nu_hom, phi2_hom, phi2_mod2_hom, phi3_hom, phi3_mod2_hom, trivial_hom,
    AbelianHom,
};
use crate::lattice::{
    h1, lattice_image_invariants, rank_mod_p, simplex_boundary_matrix, smith_normal_form, AbelianInvariants,
    DenseIntMatrix, SparseIntMatrix,
};
use crate::presentation::{tietze_simplify, Family, Mode, Presentation, PresentationMeta, DEFAULT_MAX_ROUNDS};
use crate::report::Check;
use crate::schreier::{coset_table, h1_kernel, rs_presentation, KernelOptions, RsOptions, Transversal};
use crate::symchar::{chi_irrep, hook_dim, partitions, ClassFunction, IrrepLabel};
use crate::word::{free_reduce, Letter, Word};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n_min: usize,
    pub n_max: usize,
    /// Adds the rank-7 abelianizations and the 512-coset kernel.
    pub include_slow: bool,
    pub seed: u64,
    /// Random matrices for the Smith form oracle.
    pub random_cases: usize,
    /// A presentation file to check against its builder.
    pub input: Option<Presentation>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { n_min: 4, n_max: 6, include_slow: false, seed: 0, random_cases: 500, input: None }
    }
}

impl VerifyOptions {
    /// Every range the criteria mention, slow runs included.
    pub fn complete() -> Self {
        VerifyOptions { n_min: 4, n_max: 10, include_slow: true, ..Default::default() }
    }

    fn ns(&self, range: std::ops::RangeInclusive<usize>) -> impl Iterator<Item = usize> + '_ {
        range.filter(move |n| (self.n_min..=self.n_max).contains(n))
    }
}

fn timed(criterion: u8, name: impl Into<String>, budget: Duration, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let name = name.into();
    log::info!("check [{criterion}] {name}");
    let t0 = Instant::now();
    let outcome = f();
    let elapsed = t0.elapsed();
    let (mut passed, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    if elapsed > budget {
        passed = false;
        detail = format!("{detail}; over budget ({:.1}s > {}s)", elapsed.as_secs_f64(), budget.as_secs());
    }
    Check { criterion, name, passed, detail, seconds: elapsed.as_secs_f64() }
}

fn expect_eq<T: PartialEq + std::fmt::Display>(got: T, want: T) -> (bool, String) {
    if got == want {
        (true, got.to_string())
    } else {
        (false, format!("got {got}, expected {want}"))
    }
}

const MINUTE: Duration = Duration::from_secs(60);

/// `N_n` from both closed forms; `None` if they disagree.
pub fn generating_set_size(n: usize) -> Option<usize> {
    let a = lambda_size(n);
    let b = (n - 3) * (n * n + 2) / 6;
    (a == b).then_some(a)
}

/// Abelianizations of the four families.
pub fn criterion_1(o: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let mut runs: Vec<(Family, usize, Mode, Duration)> = Vec::new();
    for n in o.ns(4..=6) {
        runs.push((Family::Gamma, n, Mode::Full, MINUTE));
        runs.push((Family::GammaHat, n, Mode::Full, MINUTE));
    }
    if o.include_slow {
        runs.push((Family::Gamma, 7, Mode::Reduced, 10 * MINUTE));
        runs.push((Family::GammaHat, 7, Mode::Reduced, 10 * MINUTE));
    }
    for n in o.ns(4..=8) {
        runs.push((Family::Delta, n, Mode::Full, MINUTE));
        runs.push((Family::DeltaHat, n, Mode::Full, MINUTE));
    }
    for (family, n, mode, budget) in runs {
        out.push(timed(1, format!("H1 {family} n={n} {mode}"), budget, || {
            let rank = match family {
                Family::Gamma | Family::GammaHat => generating_set_size(n)
                    .ok_or_else(|| KmError::Inconsistent(format!("closed forms disagree at n={n}")))?,
                _ => binomial(n - 1, 3),
            };
            let want = if family.is_involutive() {
                AbelianInvariants::with_twos(0, rank)
            } else {
                AbelianInvariants::free(rank)
            };
            Ok(expect_eq(h1(&build(family, n, mode)?), want))
        }));
    }
    out
}

fn phi3_images(n: usize) -> Result<(Vec<Vec<i64>>, usize)> {
    let p = build(Family::GammaHat, n, Mode::Full)?;
    let h = phi3_hom(&p)?;
    Ok((h.images, h.dim))
}

/// Image of the triple map and its quotient.
pub fn criterion_2(o: &VerifyOptions) -> Vec<Check> {
    o.ns(4..=7)
        .map(|n| {
            timed(2, format!("triple image n={n}"), MINUTE, || {
                let (images, dim) = phi3_images(n)?;
                let (image, quotient) = lattice_image_invariants(&images, dim)?;
                let rank = lambda_size(n);
                if image != AbelianInvariants::free(rank) {
                    return Ok((false, format!("image {image}, expected Z^{rank}")));
                }
                if n == 4 {
                    return Ok(expect_eq(quotient, AbelianInvariants::with_twos(1, 2)));
                }
                let ok = !quotient.torsion.is_empty();
                Ok((ok, format!("image {image}, quotient {quotient}")))
            })
        })
        .collect()
}

/// Mod-2 ranks and the simplicial oracle.
pub fn criterion_3(o: &VerifyOptions) -> Vec<Check> {
    o.ns(4..=8)
        .map(|n| {
            timed(3, format!("mod-2 ranks n={n}"), MINUTE, || {
                let p = build(Family::Gamma, n, Mode::Reduced)?;
                let m3 = phi3_mod2_hom(&p)?.image_matrix();
                let m2 = phi2_mod2_hom(&p)?.image_matrix();
                let r3 = rank_mod_p(&m3, 2)?;
                let r32 = rank_mod_p(&m3.hstack(&m2)?, 2)?;
                let d3 = simplex_boundary_matrix(n, 3)?;
                let rd = rank_mod_p(&d3, 2)?;
                let chain_ok = (1..n - 1).all(|k| {
                    let a = simplex_boundary_matrix(n, k).unwrap();
                    let b = simplex_boundary_matrix(n, k + 1).unwrap();
                    a.mul(&b).map(|c| c.is_zero()).unwrap_or(false)
                });
                let want3 = binomial(n - 1, 3);
                let ok = r3 == want3 && r32 == lambda_size(n) && rd == want3 && chain_ok;
                Ok((ok, format!("triple {r3}, stacked {r32}, boundary {rd}, d∘d=0 {chain_ok}")))
            })
        })
        .collect()
}

/// `<a, b, c | acac, (b c^-1 b^-1 a^-1)^2>`.
pub fn three_generator_presentation() -> Presentation {
    let mut p = Presentation::new(vec!["a".into(), "b".into(), "c".into()], Vec::new(), PresentationMeta::custom());
    p.relators = vec![
        p.parse_word("a c a c").expect("fixed word"),
        p.parse_word("b c^-1 b^-1 a^-1 b c^-1 b^-1 a^-1").expect("fixed word"),
    ];
    p
}

/// Reidemeister–Schreier for the parity map and the commutator subgroup.
pub fn criterion_4(o: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();
    if !(o.n_min..=o.n_max).contains(&5) {
        return out;
    }
    out.push(timed(4, "parity kernel, reduced n=5", Duration::from_secs(10), || {
        let p = build(Family::Gamma, 5, Mode::Reduced)?;
        let h = nu_hom(&p)?;
        let t = coset_table(&p, &h)?;
        let tr = Transversal::breadth_first(&t);
        let reps: Vec<String> = tr.reps.iter().map(|w| p.show(w)).collect();
        let rs = rs_presentation(&p, &t, &tr, RsOptions::default());
        let (simple, _) = tietze_simplify(&rs.presentation, DEFAULT_MAX_ROUNDS);
        let inv = h1(&simple);
        let ok = p.num_generators() == 15
            && p.num_relators() == 27
            && reps == ["1", "(1234)"]
            && rs.labels.len() == 30
            && rs.raw_relators == 54
            && (simple.num_generators(), simple.num_relators()) == (17, 30)
            && inv == AbelianInvariants::with_twos(2, 6);
        Ok((
            ok,
            format!(
                "{}/{} presentation, transversal {{{}}}, simplified {}/{}, H1 {inv}",
                p.num_generators(),
                p.num_relators(),
                reps.join(", "),
                simple.num_generators(),
                simple.num_relators()
            ),
        ))
    }));
    out.push(timed(4, "parity kernel, full n=5", MINUTE, || {
        let p = build(Family::Gamma, 5, Mode::Full)?;
        let r = h1_kernel(&p, &nu_hom(&p)?, &KernelOptions { transversal: None, streaming: Some(true) })?;
        Ok(expect_eq(r.invariants, AbelianInvariants::with_twos(2, 6)))
    }));
    if o.include_slow {
        out.push(timed(4, "commutator subgroup n=5", 30 * MINUTE, || {
            let p = build(Family::Gamma, 5, Mode::Reduced)?;
            let r = h1_kernel(&p, &abelianization_hom(&p)?, &KernelOptions::default())?;
            let (ok, detail) = expect_eq(r.invariants, AbelianInvariants::with_twos(145, 18));
            Ok((ok && r.index == 512, format!("{} cosets, {detail}", r.index)))
        }));
    }
    out
}

/// The double cover of the increasing group at n=5, two ways.
pub fn criterion_5(o: &VerifyOptions) -> Vec<Check> {
    if !(o.n_min..=o.n_max).contains(&5) {
        return Vec::new();
    }
    let want = AbelianInvariants::new(2, vec![2.into()]).expect("valid invariants");
    vec![
        timed(5, "explicit three-generator presentation", MINUTE, || {
            let p = three_generator_presentation();
            let direct = h1(&p);
            let via_trivial = h1_kernel(&p, &trivial_hom(&p), &KernelOptions::default())?.invariants;
            let (ok, detail) = expect_eq(direct, want.clone());
            Ok((ok && via_trivial == want, detail))
        }),
        timed(5, "kernel of all-ones map, increasing n=5", MINUTE, || {
            let p = build(Family::Delta, 5, Mode::Reduced)?;
            let full = build(Family::Delta, 5, Mode::Full)?;
            if h1(&p) != h1(&full) {
                return Ok((false, "rewritten presentation changes H1".into()));
            }
            let r = h1_kernel(&p, &eps_all_ones_hom(&p), &KernelOptions::default())?;
            Ok(expect_eq(r.invariants, want.clone()))
        }),
    ]
}

/// Rewrites every generator and checks certificates and invariants.
pub fn rewrite_all(n: usize, family: Family) -> Result<(bool, String)> {
    let mut rw = Rewriter::new(n, family)?;
    let p = rw.presentation().clone();
    let (h3, h2) = if family.is_signed() {
        (phi3_hom(&p)?, phi2_hom(&p)?)
    } else {
        (phi3_mod2_hom(&p)?, phi2_mod2_hom(&p)?)
    };
    let lambda = lambda_generators(n, family)?;
    if lambda.len() != lambda_size(n) {
        return Ok((false, format!("generating set has {} elements", lambda.len())));
    }
    let mut longest = 0;
    for (g, name) in p.generators.iter().enumerate() {
        let q = crate::groups::Quad::parse(name, n)?;
        let (w, cert) = rw.rewrite(q)?;
        let original = Word::gen(g);
        if !w.letters().iter().all(|x| rw.is_target(x.gen.index())) {
            return Ok((false, format!("{name} rewrites outside the generating set")));
        }
        if !verify_certificate(&cert, &p)? {
            return Ok((false, format!("certificate for {name} does not replay")));
        }
        if h3.eval(&w) != h3.eval(&original) || h2.eval(&w) != h2.eval(&original) {
            return Ok((false, format!("{name}: invariants differ after rewriting")));
        }
        longest = longest.max(w.len());
    }
    Ok((true, format!("{} generators, |Λ| = {}, longest word {longest}", p.num_generators(), lambda.len())))
}

pub fn criterion_6(o: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();
    for n in o.ns(5..=7) {
        for family in [Family::GammaHat, Family::Gamma] {
            out.push(timed(6, format!("rewriting {family} n={n}"), 10 * MINUTE, || rewrite_all(n, family)));
        }
    }
    out
}

/// Character identities, oracle agreement and dimensions.
pub fn criterion_7(_: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(timed(7, "subset character decompositions n=5..10", Duration::from_secs(10), || {
        for n in 5..=10 {
            let irr = |l| ClassFunction::irrep(n, l);
            let two = irr(IrrepLabel::Trivial).sum(&irr(IrrepLabel::Standard))?.sum(&irr(IrrepLabel::TwoRow2))?;
            if two != ClassFunction::subsets(n, 2) {
                return Ok((false, format!("pairs fail at n={n}")));
            }
            let top = irr(IrrepLabel::TwoRow3);
            if n == 5 && !top.is_zero() {
                return Ok((false, "top term does not vanish at n=5".into()));
            }
            if two.sum(&top)? != ClassFunction::subsets(n, 3) {
                return Ok((false, format!("triples fail at n={n}")));
            }
        }
        Ok((true, "pairs and triples decompose classwise".into()))
    }));
    out.push(timed(7, "closed forms vs Murnaghan–Nakayama n=5..9", Duration::from_secs(10), || {
        for n in 5..=9 {
            for label in IrrepLabel::ALL {
                let ok = match label.diagram(n) {
                    Some(d) => ClassFunction::irrep(n, label) == ClassFunction::mn(&d),
                    None => partitions(n).iter().all(|c| chi_irrep(label, c).is_zero()),
                };
                if !ok {
                    return Ok((false, format!("{} disagrees at n={n}", label.name())));
                }
            }
        }
        Ok((true, "all four labels agree".into()))
    }));
    out.push(timed(7, "hook dimensions", Duration::from_secs(10), || {
        for n in 5..=10 {
            let dim = |l: IrrepLabel| l.diagram(n).map_or(BigInt::zero(), |d| hook_dim(&d));
            let (a, b, c) = (dim(IrrepLabel::Standard), dim(IrrepLabel::TwoRow2), dim(IrrepLabel::TwoRow3));
            let closed_c = if n >= 6 { n * (n - 1) * (n - 5) / 6 } else { 0 };
            if a != BigInt::from(n - 1) || b != BigInt::from(n * (n - 3) / 2) || c != BigInt::from(closed_c) {
                return Ok((false, format!("dimension formula fails at n={n}")));
            }
            if a + b + c != BigInt::from(lambda_size(n)) {
                return Ok((false, format!("dimensions do not sum to the rank at n={n}")));
            }
        }
        Ok((true, "dimensions match and sum to the rank".into()))
    }));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors from gcds of k-by-k minors: `d_k / d_{k-1}`.
pub fn minor_gcd_factors(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rs in combinations(r, k) {
            for cs in combinations(c, k) {
                let sub: Vec<Vec<BigInt>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| BigInt::from(rows[i][j])).collect()).collect();
                let det = DenseIntMatrix::from_rows(&sub, k).expect("square").determinant().expect("square");
                g = g.gcd(&det);
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

pub fn random_matrix(rng: &mut impl Rng) -> Vec<Vec<i64>> {
    let (r, c) = (rng.random_range(1..=5), rng.random_range(1..=5));
    (0..r).map(|_| (0..c).map(|_| rng.random_range(-9..=9)).collect()).collect()
}

pub fn random_word(rng: &mut impl Rng, gens: usize, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    Word::from(
        (0..len)
            .map(|_| Letter::new(rng.random_range(0..gens), if rng.random_bool(0.5) { 1 } else { -1 }))
            .collect::<Vec<_>>(),
    )
}

/// Presentations the Tietze invariance check runs on.
pub fn tietze_corpus(o: &VerifyOptions) -> Result<Vec<(String, Presentation)>> {
    let mut out = Vec::new();
    for n in o.ns(4..=5) {
        for family in [Family::Gamma, Family::GammaHat] {
            for mode in [Mode::Full, Mode::Reduced] {
                out.push((format!("{family} n={n} {mode}"), build(family, n, mode)?));
            }
        }
    }
    for n in o.ns(4..=6) {
        for family in [Family::Delta, Family::DeltaHat] {
            out.push((format!("{family} n={n}"), build(family, n, Mode::Full)?));
        }
    }
    if (o.n_min..=o.n_max).contains(&5) {
        out.push(("delta n=5 reduced".into(), build(Family::Delta, 5, Mode::Reduced)?));
        let p = build(Family::Gamma, 5, Mode::Reduced)?;
        let t = coset_table(&p, &nu_hom(&p)?)?;
        let tr = Transversal::breadth_first(&t);
        out.push(("parity kernel n=5".into(), rs_presentation(&p, &t, &tr, RsOptions::default()).presentation));
    }
    out.push(("three-generator".into(), three_generator_presentation()));
    Ok(out)
}

/// Tampers with the last move of a certificate so that the inserted relator
/// word changes; such a certificate can never verify.
pub fn tamper_last_move(c: &Certificate, p: &Presentation) -> Option<Certificate> {
    let mut bad = c.clone();
    let Some(Move::InsertRelator { relator, inverted, rotation, .. }) = bad.moves.last_mut() else {
        return None;
    };
    let r = &p.relators[*relator];
    let r = if *inverted { r.invert() } else { r.clone() };
    let original = r.rotate(*rotation);
    let other = (1..r.len()).map(|k| (*rotation + k) % r.len()).find(|&k| r.rotate(k) != original)?;
    *rotation = other;
    Some(bad)
}

pub fn criterion_8(o: &VerifyOptions) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(timed(8, format!("Smith form vs minor gcds ({} matrices)", o.random_cases), MINUTE, || {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
        for case in 0..o.random_cases {
            let rows = random_matrix(&mut rng);
            let cols = rows[0].len();
            let m = SparseIntMatrix::from_dense_i64(&rows, cols)?;
            let got = smith_normal_form(&m).factors;
            let want = minor_gcd_factors(&rows);
            if got != want {
                return Ok((false, format!("case {case}: {rows:?} gives {got:?}, oracle {want:?}")));
            }
        }
        Ok((true, format!("seed {}", o.seed)))
    }));
    out.push(timed(8, "Tietze moves preserve H1", 5 * MINUTE, || {
        let corpus = tietze_corpus(o)?;
        for (name, p) in &corpus {
            let (q, _) = tietze_simplify(p, DEFAULT_MAX_ROUNDS);
            if h1(p) != h1(&q) || q.num_generators() > p.num_generators() {
                return Ok((false, format!("{name}: H1 {} became {}", h1(p), h1(&q))));
            }
        }
        Ok((true, format!("{} presentations", corpus.len())))
    }));
    out.push(timed(8, "free reduction properties", MINUTE, || {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed ^ 0x5eed);
        for _ in 0..2000 {
            let w = random_word(&mut rng, 4, 24);
            let r = free_reduce(w.letters().iter().copied());
            let again = free_reduce(r.letters().iter().copied());
            let cancel = free_reduce(w.letters().iter().chain(w.invert().letters()).copied());
            let (core, conj) = r.cyclic_reduce();
            let recomposed = conj.concat(&core).concat(&conj.invert());
            if again != r || r.len() > w.len() || !cancel.is_empty() || recomposed != r {
                return Ok((false, format!("fails on {w:?}")));
            }
        }
        Ok((true, "2000 random words".into()))
    }));
    out.push(timed(8, "certificate tamper detection", MINUTE, || {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed ^ 0xce47);
        for family in [Family::GammaHat, Family::Gamma] {
            let mut rw = Rewriter::new(5, family)?;
            let p = rw.presentation().clone();
            for _ in 0..50 {
                let g = rng.random_range(0..p.num_generators());
                let (_, cert) = rw.rewrite(crate::groups::Quad::parse(&p.generators[g], 5)?)?;
                if !verify_certificate(&cert, &p)? {
                    return Ok((false, format!("{family}: honest certificate rejected")));
                }
                if let Some(bad) = tamper_last_move(&cert, &p) {
                    if verify_certificate(&bad, &p)? {
                        return Ok((false, format!("{family}: tampered certificate accepted")));
                    }
                }
                let mut wrong_end = cert.clone();
                wrong_end.end = cert.end.concat(&Word::gen(g));
                if verify_certificate(&wrong_end, &p)? {
                    return Ok((false, format!("{family}: wrong end accepted")));
                }
            }
        }
        Ok((true, "100 certificates".into()))
    }));
    out
}

/// Checks a presentation file against the builder named in its header.
pub fn check_input(p: &Presentation) -> Vec<Check> {
    vec![timed(0, "input presentation matches builder", MINUTE, || {
        let violations = p.validate();
        if !violations.is_empty() {
            return Ok((false, format!("{} violations, first: {}", violations.len(), violations[0])));
        }
        let Some(n) = p.meta.n.filter(|_| p.meta.family != Family::Custom) else {
            return Ok((true, "custom presentation is well formed".into()));
        };
        let expected = build(p.meta.family, n, p.meta.mode)?;
        if expected.generators != p.generators {
            return Ok((false, "generator list differs from the builder".into()));
        }
        if let Some(i) = (0..expected.num_relators().max(p.num_relators()))
            .find(|&i| expected.relators.get(i) != p.relators.get(i))
        {
            return Ok((false, format!("relator {i} differs from the builder")));
        }
        Ok((true, format!("{} generators, {} relators", p.num_generators(), p.num_relators())))
    })]
}

pub fn run_criterion(k: u8, o: &VerifyOptions) -> Vec<Check> {
    match k {
        1 => criterion_1(o),
        2 => criterion_2(o),
        3 => criterion_3(o),
        4 => criterion_4(o),
        5 => criterion_5(o),
        6 => criterion_6(o),
        7 => criterion_7(o),
        8 => criterion_8(o),
        _ => Vec::new(),
    }
}

pub fn verify_all(o: &VerifyOptions) -> Vec<Check> {
    let mut out: Vec<Check> = (1..=8).flat_map(|k| run_criterion(k, o)).collect();
    if let Some(p) = &o.input {
        out.extend(check_input(p));
    }
    out
}

/// The homomorphism `kernel-h1` uses by name, built against `p`.
pub fn named_hom(name: &str, p: &Presentation) -> Result<AbelianHom> {
    crate::homs::hom_by_name(name, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minor_oracle_small_cases() {
        assert_eq!(minor_gcd_factors(&[vec![2, 4], vec![6, 8]]), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(minor_gcd_factors(&[vec![6, 0], vec![0, 4]]), vec![BigInt::from(2), BigInt::from(12)]);
        assert!(minor_gcd_factors(&[vec![0, 0]]).is_empty());
    }

    #[test]
    fn closed_forms() {
        for n in 4..=12 {
            assert_eq!(generating_set_size(n), Some(lambda_size(n)));
        }
    }

    #[test]
    fn input_check_catches_edits() {
        let mut p = build(Family::Gamma, 4, Mode::Full).unwrap();
        assert!(check_input(&p)[0].passed);
        p.relators[3] = p.relators[3].invert();
        let c = &check_input(&p)[0];
        assert!(!c.passed);
        assert!(c.detail.contains("relator 3"));
    }

    #[test]
    fn quick_criteria() {
        let o = VerifyOptions { n_min: 4, n_max: 5, random_cases: 50, ..Default::default() };
        for k in [2u8, 3, 5, 7, 8] {
            for c in run_criterion(k, &o) {
                assert!(c.passed, "{}: {}", c.name, c.detail);
            }
        }
    }
}
