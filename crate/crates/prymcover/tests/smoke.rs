use prymcover::chartab::CharacterTable;
use prymcover::covers::{genus, induces_hyperelliptic_involution, MonodromyDatum};
use prymcover::cyclo::{rat, CyclotomicNumber};
use prymcover::perm::{PermGroup, Permutation, SubgroupMode};

fn p(degree: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(degree, s).unwrap()
}

#[test]
fn compose_convention() {
    // right factor first: (1,2) . (2,3) maps 1 -> 2 -> ... = (1,2,3)
    let a = p(3, "(1,2)");
    let b = p(3, "(2,3)");
    assert_eq!(a.compose(&b), p(3, "(1,2,3)"));
}

#[test]
fn d4_classes_and_table() {
    let g = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    assert_eq!(g.order(), 8);
    let sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.size).collect();
    assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    let t = CharacterTable::for_group(&g).unwrap();
    let mut degs = t.degrees().to_vec();
    degs.sort();
    assert_eq!(degs, vec![1, 1, 1, 1, 2]);
}

#[test]
fn s3_table() {
    let g = PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap();
    let t = CharacterTable::for_group(&g).unwrap();
    assert_eq!(t.degrees(), &[1, 1, 2]);
    // 2-dim character: 0 on transpositions, -1 on 3-cycles
    let two = 2;
    let c_trans = t.class_of(&p(3, "(1,2)")).unwrap();
    let c_three = t.class_of(&p(3, "(1,2,3)")).unwrap();
    assert!(t.value(two, c_trans).is_zero());
    assert_eq!(
        t.value(two, c_three),
        &CyclotomicNumber::from_integer(-1)
    );
}

#[test]
fn cyclo_basics() {
    let i = CyclotomicNumber::root_of_unity(4, 1).unwrap();
    let one = CyclotomicNumber::one();
    let prod = one.add(&i).mul(&one.sub(&i));
    assert_eq!(prod, CyclotomicNumber::from_integer(2));
    // zeta_6 - zeta_3 - 1 == 0
    let z6 = CyclotomicNumber::root_of_unity(6, 1).unwrap();
    let z3 = CyclotomicNumber::root_of_unity(3, 1).unwrap();
    assert!(z6.sub(&z3).sub(&one).is_zero());
    // sum of all fifth roots vanishes
    let mut s = CyclotomicNumber::zero();
    for k in 0..5 {
        s = s.add(&CyclotomicNumber::root_of_unity(5, k).unwrap());
    }
    assert!(s.is_zero());
    // conjugate of zeta_8 is zeta_8^7
    let z8 = CyclotomicNumber::root_of_unity(8, 1).unwrap();
    assert_eq!(z8.conjugate(), CyclotomicNumber::root_of_unity(8, 7).unwrap());
    assert_eq!(
        CyclotomicNumber::root_of_unity(4, 2).unwrap(),
        CyclotomicNumber::from_integer(-1)
    );
    let inv = z8.inverse().unwrap();
    assert_eq!(inv.mul(&z8), CyclotomicNumber::one());
    assert_eq!(z3.scale(&rat(3)).div_rational(&rat(3)).unwrap(), z3);
}

#[test]
fn d4_eigenvalue_multiplicities() {
    let g = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    let t = CharacterTable::for_group(&g).unwrap();
    // the 2-dimensional character is last in degree order
    let chi = 4;
    assert_eq!(t.degrees()[chi], 2);
    let r = p(4, "(1,2,3,4)");
    assert_eq!(t.eigenvalue_multiplicities(chi, &r).unwrap(), vec![0, 1, 0, 1]);
    let s = p(4, "(1,3)");
    assert_eq!(t.eigenvalue_multiplicities(chi, &s).unwrap(), vec![1, 1]);
    // fixed space of a reflection inside the 2-dim representation
    let hs = PermGroup::generate(4, &[s]).unwrap();
    assert_eq!(t.fixed_dim(chi, &hs).unwrap(), 1);
}

#[test]
fn subgroup_counts() {
    let s3 = PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap();
    assert_eq!(s3.subgroups(SubgroupMode::All).len(), 6);
    assert_eq!(s3.subgroups(SubgroupMode::UpToConjugacy).len(), 4);
    let d4 = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    assert_eq!(d4.subgroups(SubgroupMode::All).len(), 10);
    assert_eq!(d4.subgroups(SubgroupMode::UpToConjugacy).len(), 8);
}

#[test]
fn genus_ladder_shape() {
    // rr-gen style tuple in D4 on 4 points:
    // u,u,u,u (Y-branch), s,t (simple), r^2 (merged)
    let u = p(4, "(1,2)(3,4)");
    let s = p(4, "(1,3)");
    let t = p(4, "(2,4)");
    let r2 = p(4, "(1,3)(2,4)");
    let sigma = MonodromyDatum::validate(4, vec![u.clone(), u.clone(), u.clone(), u.clone(), s.clone(), t, r2.clone()]).unwrap();
    let g = sigma.group().unwrap();
    assert_eq!(g.order(), 8);
    let trivial = PermGroup::trivial(4);
    assert_eq!(genus(&sigma, &g, &trivial).unwrap(), 7);
    assert_eq!(genus(&sigma, &g, &g).unwrap(), 0);
    let hx = PermGroup::generate(4, &[s]).unwrap();
    assert_eq!(genus(&sigma, &g, &hx).unwrap(), 3);
    let hy = PermGroup::generate(4, &[p(4, "(1,3)"), r2]).unwrap();
    assert_eq!(genus(&sigma, &g, &hy).unwrap(), 1);
    // X is not hyperelliptic here, Z/<u> has genus 2
    let hu = PermGroup::generate(4, &[u]).unwrap();
    assert_eq!(genus(&sigma, &g, &hu).unwrap(), 2);
    assert!(!induces_hyperelliptic_involution(&sigma, &g, &hx).unwrap());
}
