//! Cross-checks between the group families and their maps.

use km_core::groups::build;
use km_core::homs::{phi2, presentation_quads};
use km_core::lattice::{h1, lattice_image_invariants, rank_mod_p};
use km_core::{AbelianInvariants, Family, Mode, SparseIntMatrix};

#[test]
fn reduced_and_full_agree_on_h1() {
    for family in [Family::Gamma, Family::GammaHat] {
        for n in 4..=6 {
            let full = build(family, n, Mode::Full).unwrap();
            let reduced = build(family, n, Mode::Reduced).unwrap();
            assert!(reduced.num_generators() <= full.num_generators());
            assert_eq!(h1(&full), h1(&reduced), "{} n={n}", family.as_str());
        }
    }
}

#[test]
fn known_abelianizations() {
    assert_eq!(h1(&build(Family::Gamma, 6, Mode::Full).unwrap()), AbelianInvariants::with_twos(0, 19));
    assert_eq!(h1(&build(Family::GammaHat, 5, Mode::Full).unwrap()), AbelianInvariants::free(9));
}

/// Both full presentations share their generator names, and the unsigned
/// group is a quotient of the signed one. Push every signed relator forward
/// and check it lands in the mod-2 row space of the unsigned relators.
#[test]
fn signed_to_unsigned_map_mod_two() {
    for n in 4..=6 {
        let hat = build(Family::GammaHat, n, Mode::Full).unwrap();
        let plain = build(Family::Gamma, n, Mode::Full).unwrap();
        let (_, hat_quads) = presentation_quads(&hat).unwrap();
        let target: Vec<usize> = hat_quads
            .iter()
            .map(|&q| plain.generator_index(&q.name(n)).unwrap().index())
            .collect();

        let rel = plain.abelianized_relation_matrix();
        let hat_rel = hat.abelianized_relation_matrix();
        let mut pushed = SparseIntMatrix::new(hat_rel.rows(), plain.num_generators());
        for (i, j, v) in hat_rel.iter() {
            pushed.add(i, target[j], v);
        }
        let r_plain = rank_mod_p(&rel, 2).unwrap();
        let r_stacked = rank_mod_p(&rel.vstack(&pushed).unwrap(), 2).unwrap();
        assert_eq!(r_stacked, r_plain, "n={n}: pushed relators leave the row space");

        // every unsigned generator is hit, so the map on H1 ⊗ Z/2 is onto
        let mut hit = vec![false; plain.num_generators()];
        for &t in &target {
            hit[t] = true;
        }
        assert!(hit.iter().all(|&h| h));
        let dim_plain = plain.num_generators() - r_plain;
        let dim_hat = hat.num_generators() - rank_mod_p(&hat_rel, 2).unwrap();
        assert!(dim_plain <= dim_hat, "n={n}: {dim_plain} > {dim_hat}");
    }
}

/// The pair map lands in the augmentation-zero sublattice, and fills it.
#[test]
fn pair_map_cokernel_is_infinite_cyclic() {
    for n in 5..=7 {
        let p = build(Family::GammaHat, n, Mode::Full).unwrap();
        let (_, quads) = presentation_quads(&p).unwrap();
        let images: Vec<Vec<i64>> = quads.iter().map(|&q| phi2(q, n).unwrap()).collect();
        assert!(images.iter().all(|v| v.iter().sum::<i64>() == 0));
        let dim = images[0].len();
        let (image, quotient) = lattice_image_invariants(&images, dim).unwrap();
        assert_eq!(image, AbelianInvariants::free(dim - 1), "n={n}");
        assert_eq!(quotient, AbelianInvariants::free(1), "n={n}");
    }
}
