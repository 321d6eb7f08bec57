//! Randomized invariants across the public API.

use km_core::groups::{canonical_quad, verify_certificate, Quad, Rewriter};
use km_core::homs::{eps_all_ones_hom, eta3, nu_hom, phi2_hom, phi3_hom};
use km_core::lattice::{h1, rank_mod_p, smith_normal_form, smith_with_transforms, DenseIntMatrix};
use km_core::presentation::{tietze_simplify, DEFAULT_MAX_ROUNDS};
use km_core::schreier::{coset_table, rs_presentation, RsOptions, Transversal};
use km_core::verify::{minor_gcd_factors, tamper_last_move};
use km_core::{
    free_reduce, AbelianInvariants, Family, Letter, Mode, Presentation, PresentationMeta, SparseIntMatrix, Word,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn letter(gens: usize) -> impl Strategy<Value = Letter> {
    (0..gens, any::<bool>()).prop_map(|(g, inv)| Letter { gen: g.into(), inverse: inv })
}

fn raw_letters(gens: usize, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(gens), 0..max)
}

fn word(gens: usize, max: usize) -> impl Strategy<Value = Word> {
    raw_letters(gens, max).prop_map(free_reduce)
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

fn quad(n: usize) -> impl Strategy<Value = Quad> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Quad::new([v[0], v[1], v[2], v[3]], v.len()).unwrap())
}

fn names(g: usize) -> Vec<String> {
    (0..g).map(|i| format!("x{i}")).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn free_reduce_is_idempotent_and_shrinks(raw in raw_letters(3, 30)) {
        let w = free_reduce(raw.iter().copied());
        prop_assert!(w.len() <= raw.len());
        prop_assert_eq!(free_reduce(w.letters().iter().copied()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| !p[0].cancels(p[1])));
    }

    #[test]
    fn word_times_inverse_is_trivial(w in word(4, 30)) {
        prop_assert!(w.concat(&w.invert()).is_empty());
        prop_assert_eq!(w.invert().invert(), w);
    }

    #[test]
    fn cyclic_reduction_recomposes(w in word(3, 30)) {
        let (core, conj) = w.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(conj.concat(&core).concat(&conj.invert()), w);
    }

    #[test]
    fn word_text_round_trip(w in word(4, 20)) {
        let n = names(4);
        let text = w.display(&n).to_string();
        prop_assert_eq!(Word::parse(&text, &n).unwrap(), w);
    }

    #[test]
    fn smith_matches_minor_oracle(rows in small_matrix()) {
        let m = SparseIntMatrix::from_dense_i64(&rows, rows[0].len()).unwrap();
        let f = smith_normal_form(&m).factors;
        prop_assert_eq!(&f, &minor_gcd_factors(&rows));
        prop_assert!(f.windows(2).all(|p| (&p[1] % &p[0]).is_zero()));
    }

    #[test]
    fn smith_transforms_are_unimodular(rows in small_matrix()) {
        let m = SparseIntMatrix::from_dense_i64(&rows, rows[0].len()).unwrap();
        let s = smith_with_transforms(&m);
        prop_assert_eq!(s.u.determinant().unwrap().abs(), BigInt::one());
        prop_assert_eq!(s.v.determinant().unwrap().abs(), BigInt::one());
        let prod = s.u.mul(&DenseIntMatrix::from_sparse(&m)).unwrap().mul(&s.v).unwrap();
        prop_assert_eq!(&prod, &s.d);
        prop_assert_eq!(s.factors, smith_normal_form(&m).factors);
    }

    #[test]
    fn rank_mod_p_never_exceeds_rational_rank(rows in small_matrix(), pi in 0usize..4) {
        let p = [2u64, 3, 5, 7][pi];
        let m = SparseIntMatrix::from_dense_i64(&rows, rows[0].len()).unwrap();
        prop_assert!(rank_mod_p(&m, p).unwrap() <= smith_normal_form(&m).rank());
    }

    #[test]
    fn matrix_market_round_trip(rows in small_matrix()) {
        let m = SparseIntMatrix::from_dense_i64(&rows, rows[0].len()).unwrap();
        prop_assert_eq!(SparseIntMatrix::from_matrix_market(&m.to_matrix_market()).unwrap(), m);
    }

    #[test]
    fn invariants_text_round_trip(free in 0usize..5, mut tors in prop::collection::vec(2i64..50, 0..5)) {
        // build a divisibility chain from arbitrary factors
        tors.sort_unstable();
        let mut chain: Vec<BigInt> = Vec::new();
        for t in tors {
            let next = chain.last().map_or(BigInt::from(t), |p: &BigInt| p * t);
            chain.push(next);
        }
        let a = AbelianInvariants::new(free, chain).unwrap();
        prop_assert_eq!(a.to_string().parse::<AbelianInvariants>().unwrap(), a.clone());
        prop_assert_eq!(a.expanded().parse::<AbelianInvariants>().unwrap(), a);
    }

    #[test]
    fn canonical_quad_is_orbit_invariant(q in quad(7), signed in any::<bool>()) {
        let (c, s) = canonical_quad(q, signed);
        let orbit = q.orbit();
        prop_assert_eq!(orbit.iter().map(|x| x.0).collect::<std::collections::HashSet<_>>().len(), 8);
        for (image, sign) in orbit {
            let (c2, s2) = canonical_quad(image, signed);
            prop_assert_eq!(c2, c);
            // q = image^sign and image = c^s2, so q = c^(sign * s2)
            if signed {
                prop_assert_eq!(s, sign * s2);
            }
        }
    }

    #[test]
    fn tietze_preserves_h1(rels in prop::collection::vec(word(3, 8), 0..5)) {
        let p = Presentation::new(names(3), rels, PresentationMeta::custom());
        let (q, _) = tietze_simplify(&p, DEFAULT_MAX_ROUNDS);
        prop_assert_eq!(h1(&q), h1(&p));
        prop_assert!(q.num_generators() <= p.num_generators());
    }

    #[test]
    fn schreier_counts_and_kernel_h1(rels in prop::collection::vec(word(3, 8), 0..4)) {
        // keep only even-length relators so the all-ones map is defined
        let rels: Vec<Word> = rels.into_iter().filter(|r| r.len() % 2 == 0).collect();
        let p = Presentation::new(names(3), rels, PresentationMeta::custom());
        let h = eps_all_ones_hom(&p);
        let t = coset_table(&p, &h).unwrap();
        let tr = Transversal::breadth_first(&t);
        let rs = rs_presentation(&p, &t, &tr, RsOptions::default());
        prop_assert_eq!(rs.raw_relators, t.index() * p.num_relators());
        prop_assert_eq!(rs.presentation.num_generators(), t.index() * 3 - t.index() + 1);
        let (simple, _) = tietze_simplify(&rs.presentation, DEFAULT_MAX_ROUNDS);
        prop_assert_eq!(h1(&simple), h1(&rs.presentation));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eta_of_triple_map_is_twice_pair_map(n in 5usize..=7, seed in prop::collection::vec((0usize..1000, any::<bool>()), 1..12)) {
        let p = km_core::groups::build(Family::GammaHat, n, Mode::Full).unwrap();
        let g = p.num_generators();
        let w = free_reduce(seed.iter().map(|&(i, inv)| Letter { gen: (i % g).into(), inverse: inv }));
        let v3 = phi3_hom(&p).unwrap().eval(&w);
        let v2 = phi2_hom(&p).unwrap().eval(&w);
        prop_assert_eq!(eta3(&v3, n).unwrap(), v2.iter().map(|x| 2 * x).collect::<Vec<_>>());
    }

    #[test]
    fn parity_map_depends_only_on_support(q in quad(6)) {
        let p = km_core::groups::build(Family::Gamma, 6, Mode::Full).unwrap();
        let h = nu_hom(&p).unwrap();
        let idx = |x: Quad| p.generator_index(&x.name(6)).unwrap().index();
        let base = &h.images[idx(q)];
        for (image, _) in q.orbit() {
            prop_assert_eq!(&h.images[idx(image)], base);
        }
        prop_assert_eq!(base[0], i64::from(q.contains(1)));
    }

    #[test]
    fn tampered_certificates_fail(q in quad(6), signed in any::<bool>()) {
        let family = if signed { Family::GammaHat } else { Family::Gamma };
        let mut rw = Rewriter::new(6, family).unwrap();
        let (_, cert) = rw.rewrite(q).unwrap();
        let p = rw.presentation();
        prop_assert!(verify_certificate(&cert, p).unwrap());
        if let Some(bad) = tamper_last_move(&cert, p) {
            prop_assert!(!verify_certificate(&bad, p).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn presentation_text_and_json_round_trip(rels in prop::collection::vec(word(4, 10), 0..6)) {
        let p = Presentation::new(names(4), rels, PresentationMeta::custom());
        prop_assert_eq!(Presentation::from_text(&p.to_text()).unwrap(), p.clone());
        prop_assert_eq!(Presentation::from_json(&p.to_json().unwrap()).unwrap(), p.clone());
        prop_assert_eq!(Presentation::load(&p.to_text()).unwrap(), p);
    }
}
