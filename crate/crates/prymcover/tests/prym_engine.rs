//! The dihedral worked example, end to end: the degree-4 tower whose closure
//! has genus 7 and group D4, where the Prym of X -> Y is the Jacobian of a
//! genus-2 quotient.

use prymcover::chartab::CharacterTable;
use prymcover::covers::{genus, MonodromyDatum, Quadruple};
use prymcover::perm::{PermGroup, Permutation};
use prymcover::prym::{
    chevalley_weil, find_prym_complements, image_dimension, images_intersect_y, rank_psd,
    subspace_sum_dim, AnalysisOptions, GroupAlgebraElement, Verdict,
};

fn p(degree: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(degree, s).unwrap()
}

/// Tuple: four (2,2)-involutions outside H_Y, two simple reflections, then
/// the central square; product is the identity and the closure group is D4.
fn rr_gen_quadruple() -> Quadruple {
    let u = p(4, "(1,2)(3,4)");
    let s = p(4, "(1,3)");
    let t = p(4, "(2,4)");
    let r2 = p(4, "(1,3)(2,4)");
    let sigma = MonodromyDatum::validate(
        4,
        vec![u.clone(), u.clone(), u.clone(), u, s.clone(), t, r2.clone()],
    )
    .unwrap();
    let group = sigma.group().unwrap();
    let h_x = group.stabilizer(1).group;
    let h_y = PermGroup::generate(4, &[s, r2]).unwrap();
    Quadruple {
        group,
        h_x,
        h_y,
        sigma,
    }
}

#[test]
fn chevalley_weil_matches_the_genus7_decomposition() {
    let q = rr_gen_quadruple();
    let table = CharacterTable::for_group(&q.group).unwrap();
    let cw = chevalley_weil(&q.sigma, &table).unwrap();
    // H^0(Z, Omega^1) = V1^2 + V2 + (2)^2 for the labeling where V1 is odd on
    // both reflection classes, V2 is trivial exactly on H_Y's reflections.
    assert_eq!(cw.multiplicities[0], 0); // trivial
    assert_eq!(table.degrees(), &[1, 1, 1, 1, 2]);
    assert_eq!(cw.multiplicities[4], 2); // the 2-dimensional character
    // total = g_Z = 7
    assert_eq!(cw.genus_total(&table), 7);
    // identify the three nontrivial linear characters by their kernels
    let s = p(4, "(1,3)");
    let sr = p(4, "(1,2)(3,4)");
    let mut on_s = Vec::new();
    let mut on_sr = Vec::new();
    for chi in 1..4 {
        on_s.push(table.value_at(chi, &s).unwrap().clone());
        on_sr.push(table.value_at(chi, &sr).unwrap().clone());
    }
    use prymcover::cyclo::CyclotomicNumber;
    let one = CyclotomicNumber::one();
    let neg = CyclotomicNumber::from_integer(-1);
    // V1: -1 on both reflection classes -> multiplicity 2
    // V2: +1 on s-class, -1 on sr-class -> multiplicity 1
    // V3: -1 on s-class, +1 on sr-class -> multiplicity 0
    for chi in 1..4 {
        let vs = table.value_at(chi, &s).unwrap().clone();
        let vsr = table.value_at(chi, &sr).unwrap().clone();
        let expected = if vs == neg && vsr == neg {
            2
        } else if vs == one && vsr == neg {
            1
        } else {
            0
        };
        assert_eq!(cw.multiplicities[chi], expected, "character {chi}");
    }
}

#[test]
fn projector_rank_on_the_two_dimensional_character() {
    let q = rr_gen_quadruple();
    let table = CharacterTable::for_group(&q.group).unwrap();
    let h_s = PermGroup::generate(4, &[p(4, "(1,3)")]).unwrap();
    let h_sr = PermGroup::generate(4, &[p(4, "(1,2)(3,4)")]).unwrap();
    let ps = GroupAlgebraElement::projector(&q.group, &h_s);
    let psr = GroupAlgebraElement::projector(&q.group, &h_sr);
    // p_s * p_sr * p_s has rank 1 on the 2-dimensional irreducible
    let a = ps.convolve(&psr).unwrap().convolve(&ps).unwrap();
    assert_eq!(rank_psd(&a, &table, 4, 2).unwrap(), 1);
    // a projector's rank is its fixed dimension
    assert_eq!(
        rank_psd(&ps, &table, 4, 2).unwrap(),
        table.fixed_dim(4, &h_s).unwrap()
    );
    // identity has full rank
    let id = GroupAlgebraElement::identity(&q.group);
    assert_eq!(rank_psd(&id, &table, 4, 2).unwrap(), 2);
    // idempotence of projectors, exactly
    assert_eq!(ps.convolve(&ps).unwrap(), ps);
}

#[test]
fn image_dimensions_and_intersection() {
    let q = rr_gen_quadruple();
    let table = CharacterTable::for_group(&q.group).unwrap();
    let cw = chevalley_weil(&q.sigma, &table).unwrap();
    let trivial = PermGroup::trivial(4);
    // identity correspondence: g_Z
    assert_eq!(image_dimension(&table, &cw, &trivial, &trivial).unwrap(), 7);
    // target P^1: zero
    assert_eq!(image_dimension(&table, &cw, &trivial, &q.group).unwrap(), 0);
    // the genus-2 quotient maps into X with 2-dimensional image
    let h_sr = PermGroup::generate(4, &[p(4, "(1,2)(3,4)")]).unwrap();
    assert_eq!(genus(&q.sigma, &q.group, &h_sr).unwrap(), 2);
    assert_eq!(
        image_dimension(&table, &cw, &h_sr, &q.h_x).unwrap(),
        2
    );
    // and misses the image of Jac(Y)
    assert!(!images_intersect_y(&table, &cw, &q.h_y, &h_sr).unwrap());
    // a subgroup equal to H_Y trivially intersects (positive genus)
    assert!(images_intersect_y(&table, &cw, &q.h_y, &q.h_y).unwrap());
    // H_Y = G would mean target P^1, never intersecting
    assert!(!images_intersect_y(&table, &cw, &q.group, &h_sr).unwrap());
}

#[test]
fn full_prym_analysis() {
    let q = rr_gen_quadruple();
    let report = find_prym_complements(&q, None, AnalysisOptions::default()).unwrap();
    assert_eq!(report.g_z, 7);
    assert_eq!(report.g_x, 3);
    assert_eq!(report.g_y, 1);
    assert!(!report.x_hyperelliptic);
    assert_eq!(report.verdict, Verdict::Full);
    assert_eq!(report.family_dims, vec![2]);
    assert_eq!(report.family_degrees, vec![2]);
    assert_eq!(report.cw_multiplicities[4], 2);
}

#[test]
fn subspace_sum_consistency() {
    let q = rr_gen_quadruple();
    let table = CharacterTable::for_group(&q.group).unwrap();
    let cw = chevalley_weil(&q.sigma, &table).unwrap();
    let h_sr = PermGroup::generate(4, &[p(4, "(1,2)(3,4)")]).unwrap();
    // single-member family agrees with image_dimension when injective
    let single = subspace_sum_dim(&table, &cw, &q.h_x, &[&h_sr]).unwrap();
    assert_eq!(single, 2);
    // duplicated member adds nothing
    let dup = subspace_sum_dim(&table, &cw, &q.h_x, &[&h_sr, &h_sr]).unwrap();
    assert_eq!(dup, 2);
}
