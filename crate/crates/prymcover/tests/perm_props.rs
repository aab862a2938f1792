//! Permutation-kernel unit tests and properties.

use std::collections::HashSet;

use proptest::prelude::*;
use prymcover::perm::{PermGroup, Permutation, SubgroupMode};

fn p(degree: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(degree, s).unwrap()
}

#[test]
fn compose_examples() {
    // (1,2) twice is the identity
    let t = p(3, "(1,2)");
    assert!(t.compose(&t).is_identity());
    // inverse pair of 3-cycles
    let c = p(3, "(1,2,3)");
    assert!(c.compose(&p(3, "(1,3,2)")).is_identity());
    // the convention: right factor first, so (1,2).(2,3) = (1,2,3)
    assert_eq!(p(3, "(1,2)").compose(&p(3, "(2,3)")), p(3, "(1,2,3)"));
    // degree mismatch is an error
    assert!(p(3, "(1,2)").checked_compose(&p(4, "(1,2)")).is_err());
}

#[test]
fn cycle_type_examples() {
    assert_eq!(Permutation::identity(4).cycle_type().parts, vec![(1, 4)]);
    assert_eq!(p(5, "(1,2,3)(4,5)").cycle_type().parts, vec![(2, 1), (3, 1)]);
    assert_eq!(p(4, "(1,2)(3,4)").cycle_type().parts, vec![(2, 2)]);
}

#[test]
fn parsing_and_display() {
    let x = p(6, "(1,2)(3,4,5)");
    assert_eq!(x.to_string(), "(1,2)(3,4,5)");
    let from_images = Permutation::from_images_one_based(&x.images_one_based()).unwrap();
    assert_eq!(from_images, x);
    assert!(Permutation::from_images_one_based(&[1, 1, 3]).is_err());
    assert!(Permutation::parse_cycles(3, "(1,4)").is_err());
    assert!(Permutation::from_cycles(4, &[vec![1, 2], vec![2, 3]]).is_err());
}

#[test]
fn generate_orders() {
    assert_eq!(PermGroup::generate(2, &[p(2, "(1,2)")]).unwrap().order(), 2);
    let d4 = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    assert_eq!(d4.order(), 8);
    let s5 = PermGroup::generate(5, &[p(5, "(1,2)"), p(5, "(1,2,3,4,5)")]).unwrap();
    assert_eq!(s5.order(), 120);
    // cap errors
    assert!(PermGroup::generate_with_cap(5, &[p(5, "(1,2)"), p(5, "(1,2,3,4,5)")], 100).is_err());
}

#[test]
fn transitivity() {
    assert!(!PermGroup::generate(3, &[p(3, "(1,2)")]).unwrap().is_transitive());
    assert!(PermGroup::generate(3, &[p(3, "(1,2,3)")]).unwrap().is_transitive());
    assert!(!PermGroup::generate(4, &[p(4, "(1,2)(3,4)")]).unwrap().is_transitive());
}

#[test]
fn stabilizers() {
    let c3 = PermGroup::generate(3, &[p(3, "(1,2,3)")]).unwrap();
    assert_eq!(c3.stabilizer(1).group.order(), 1);
    let s3 = PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap();
    let stab = s3.stabilizer(1);
    assert_eq!(stab.group.order(), 2);
    assert_eq!(stab.index(), 3);
    let d4 = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    assert_eq!(d4.stabilizer(1).group.order(), 2);
}

#[test]
fn conjugacy_class_shapes() {
    let s3 = PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap();
    let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(|c| c.size).collect();
    assert_eq!(sizes, vec![1, 2, 3]);
    let c5 = PermGroup::generate(5, &[p(5, "(1,2,3,4,5)")]).unwrap();
    assert_eq!(c5.conjugacy_classes().len(), 5);
    assert!(c5.conjugacy_classes().iter().all(|c| c.size == 1));
    // class_of: conjugates land in the same class
    let d4 = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    let r = p(4, "(1,2,3,4)");
    let r3 = p(4, "(1,4,3,2)");
    assert_eq!(d4.class_of(&r), d4.class_of(&r3));
    assert_eq!(d4.class_of(&Permutation::identity(4)), Some(0));
}

#[test]
fn normalizers() {
    let s3 = PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap();
    let h = PermGroup::generate(3, &[p(3, "(1,2)")]).unwrap();
    let n = h.normalizer_in(&s3).unwrap();
    assert_eq!(n.group.order(), 2);
    let a3 = PermGroup::generate(3, &[p(3, "(1,2,3)")]).unwrap();
    assert_eq!(a3.normalizer_in(&s3).unwrap().group.order(), 6);
    // normalizer of G in G is G
    assert_eq!(s3.normalizer_in(&s3).unwrap().group.order(), 6);
    // containment violations error
    let c2_deg4 = PermGroup::generate(4, &[p(4, "(1,2)")]).unwrap();
    assert!(c2_deg4.normalizer_in(&PermGroup::generate(4, &[p(4, "(1,2,3,4)")]).unwrap()).is_err());
}

/// Independent subgroup oracle at tiny scale: closures of all pairs of
/// elements (every subgroup of these groups is 2-generated).
fn brute_force_subgroup_count(g: &PermGroup) -> usize {
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    for a in g.elements() {
        for b in g.elements() {
            let sub = PermGroup::generate_with_cap(g.degree(), &[a.clone(), b.clone()], g.order())
                .unwrap();
            seen.insert(sub.elements().to_vec());
        }
    }
    seen.len()
}

#[test]
fn subgroup_counts_against_brute_force() {
    let s3 = PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap();
    assert_eq!(s3.subgroups(SubgroupMode::All).len(), 6);
    assert_eq!(s3.subgroups(SubgroupMode::All).len(), brute_force_subgroup_count(&s3));
    assert_eq!(s3.subgroups(SubgroupMode::UpToConjugacy).len(), 4);

    let d4 = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    assert_eq!(d4.subgroups(SubgroupMode::All).len(), 10);
    assert_eq!(d4.subgroups(SubgroupMode::All).len(), brute_force_subgroup_count(&d4));
    assert_eq!(d4.subgroups(SubgroupMode::UpToConjugacy).len(), 8);

    let s4 = PermGroup::generate(4, &[p(4, "(1,2)"), p(4, "(1,2,3,4)")]).unwrap();
    assert_eq!(s4.subgroups(SubgroupMode::All).len(), 30);
    assert_eq!(s4.subgroups(SubgroupMode::All).len(), brute_force_subgroup_count(&s4));
}

#[test]
fn double_coset_examples() {
    let s3 = PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap();
    // A = B = G: one representative, the identity
    let reps = s3.double_cosets(&s3, &s3).unwrap();
    assert_eq!(reps.len(), 1);
    assert!(reps[0].is_identity());
    // A = B = 1: every element
    let trivial = PermGroup::trivial(3);
    assert_eq!(s3.double_cosets(&trivial, &trivial).unwrap().len(), 6);
    // the worked 2-coset partition of S3
    let a = PermGroup::generate(3, &[p(3, "(1,2)")]).unwrap();
    let b = PermGroup::generate(3, &[p(3, "(1,3)")]).unwrap();
    let reps = s3.double_cosets(&a, &b).unwrap();
    assert_eq!(reps.len(), 2);
}

#[test]
fn coset_action_basics() {
    let d4 = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    // H = G: one point, everything acts trivially
    let act = d4.coset_action(&d4).unwrap();
    assert_eq!(act.point_count(), 1);
    // H = 1: the left regular action on |G| points, free for nontrivial g
    let trivial = PermGroup::trivial(4);
    let reg = d4.coset_action(&trivial).unwrap();
    assert_eq!(reg.point_count(), 8);
    let r = p(4, "(1,2,3,4)");
    assert_eq!(reg.act(&r).cycle_type().parts, vec![(4, 2)]);
    // H = Stab(1): equivalent to the original degree-4 action
    let stab = d4.stabilizer(1).group;
    let act4 = d4.coset_action(&stab).unwrap();
    for g in d4.generators() {
        assert_eq!(act4.act(g).cycle_type(), g.cycle_type());
    }
}

#[test]
fn conjugate_subgroup_search() {
    let s3 = PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap();
    let h1 = PermGroup::generate(3, &[p(3, "(1,2)")]).unwrap();
    let h2 = PermGroup::generate(3, &[p(3, "(1,3)")]).unwrap();
    let conj = PermGroup::are_conjugate_subgroups(&s3, &h1, &h2);
    assert!(conj.is_some());
    // identity works for equal subgroups
    assert!(PermGroup::are_conjugate_subgroups(&s3, &h1, &h1).is_some());
    // different cycle types are never conjugate
    let s4 = PermGroup::generate(4, &[p(4, "(1,2)"), p(4, "(1,2,3,4)")]).unwrap();
    let a = PermGroup::generate(4, &[p(4, "(1,2)(3,4)")]).unwrap();
    let b = PermGroup::generate(4, &[p(4, "(1,2)")]).unwrap();
    assert!(PermGroup::are_conjugate_subgroups(&s4, &a, &b).is_none());
}

// ---------------------------------------------------------------------------
// properties
// ---------------------------------------------------------------------------

/// Random small permutations of a fixed degree.
fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just(degree).prop_perturb(move |d, mut rng| {
        let mut images: Vec<usize> = (1..=d).collect();
        for i in (1..d).rev() {
            let j = (rng.next_u32() as usize) % (i + 1);
            images.swap(i, j);
        }
        Permutation::from_images_one_based(&images).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(a in arb_perm(5), b in arb_perm(5)) {
        let g = PermGroup::generate(5, &[a.clone(), b.clone()]).unwrap();
        // closure and inverses
        for x in g.elements().iter().take(20) {
            prop_assert!(g.contains(&x.inverse()));
            prop_assert!(g.contains(&x.compose(&a)));
        }
        // associativity spot check
        let c = a.compose(&b);
        prop_assert_eq!(a.compose(&b.compose(&c)), a.compose(&b).compose(&c));
        // class sizes partition the group and divide its order
        let total: usize = g.conjugacy_classes().iter().map(|c| c.size).sum();
        prop_assert_eq!(total, g.order());
        for class in g.conjugacy_classes() {
            prop_assert_eq!(g.order() % class.size, 0);
        }
    }

    #[test]
    fn orbit_stabilizer(a in arb_perm(6), b in arb_perm(6)) {
        let g = PermGroup::generate(6, &[a, b]).unwrap();
        for x in 1..=6 {
            let orbit = g.orbit(x);
            let stab = g.stabilizer(x);
            prop_assert_eq!(orbit.len() * stab.group.order(), g.order());
        }
    }

    #[test]
    fn double_cosets_partition(a in arb_perm(5), b in arb_perm(5)) {
        let g = PermGroup::generate(5, &[a.clone(), b.clone()]).unwrap();
        let ha = PermGroup::generate(5, &[a]).unwrap();
        let hb = PermGroup::generate(5, &[b]).unwrap();
        let reps = g.double_cosets(&ha, &hb).unwrap();
        let mut covered: HashSet<Permutation> = HashSet::new();
        let mut total = 0usize;
        for rep in reps {
            let mut coset = HashSet::new();
            for x in ha.elements() {
                for y in hb.elements() {
                    coset.insert(x.compose(&rep).compose(y));
                }
            }
            total += coset.len();
            for e in coset {
                prop_assert!(covered.insert(e), "double cosets overlap");
            }
        }
        prop_assert_eq!(total, g.order());
    }

    #[test]
    fn coset_action_is_a_homomorphism(a in arb_perm(5), b in arb_perm(5)) {
        let g = PermGroup::generate(5, &[a.clone(), b.clone()]).unwrap();
        let h = PermGroup::generate(5, &[a.clone()]).unwrap();
        let act = g.coset_action(&h).unwrap();
        let x = a.compose(&b);
        let y = b.compose(&a);
        prop_assert_eq!(act.act(&x.compose(&y)), act.act(&x).compose(&act.act(&y)));
    }
}
