//! Character-table construction: worked tables, eigenvalue multiplicities,
//! fixed dimensions, and the Newton-sum cross-check of the DFT multiplicity
//! route.

use prymcover::chartab::CharacterTable;
use prymcover::cyclo::{rat, CyclotomicNumber};
use prymcover::perm::{PermGroup, Permutation, SubgroupMode};

fn p(degree: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(degree, s).unwrap()
}

fn cyc(n: i64) -> CyclotomicNumber {
    CyclotomicNumber::from_integer(n)
}

#[test]
fn c2_table() {
    let g = PermGroup::generate(2, &[p(2, "(1,2)")]).unwrap();
    let t = CharacterTable::for_group(&g).unwrap();
    assert_eq!(t.degrees(), &[1, 1]);
    let inv = t.class_of(&p(2, "(1,2)")).unwrap();
    assert_eq!(t.value(0, inv), &cyc(1));
    assert_eq!(t.value(1, inv), &cyc(-1));
}

/// The dihedral group of order 8 on 4 points: the full 5 x 5 table, matched
/// against the classical values through structural class identification.
#[test]
fn d4_full_table() {
    let g = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    let t = CharacterTable::for_group(&g).unwrap();
    assert_eq!(t.degrees(), &[1, 1, 1, 1, 2]);

    // identify the five classes structurally
    let id = t.class_of(&Permutation::identity(4)).unwrap();
    let central = t.class_of(&p(4, "(1,3)(2,4)")).unwrap(); // the square of the rotation
    let refl_fix = t.class_of(&p(4, "(1,3)")).unwrap(); // reflections with fixed points
    let refl_free = t.class_of(&p(4, "(1,2)(3,4)")).unwrap(); // free reflections
    let rot = t.class_of(&p(4, "(1,2,3,4)")).unwrap(); // the rotations
    assert_eq!(id, 0);

    // the 2-dimensional character: (2, -2, 0, 0, 0) on
    // (id, central, refl_fix, refl_free, rot)
    assert_eq!(t.value(4, id), &cyc(2));
    assert_eq!(t.value(4, central), &cyc(-2));
    assert!(t.value(4, refl_fix).is_zero());
    assert!(t.value(4, refl_free).is_zero());
    assert!(t.value(4, rot).is_zero());

    // the linear characters: all are 1 on the center; the three nontrivial
    // ones are determined by signs on (refl_fix, refl_free, rot) being
    // (+,-,-), (-,+,-), (-,-,+)
    let mut sign_patterns = Vec::new();
    for chi in 1..4 {
        assert_eq!(t.value(chi, central), &cyc(1));
        let pattern = (
            t.value(chi, refl_fix) == &cyc(1),
            t.value(chi, refl_free) == &cyc(1),
            t.value(chi, rot) == &cyc(1),
        );
        sign_patterns.push(pattern);
    }
    sign_patterns.sort();
    assert_eq!(
        sign_patterns,
        vec![(false, false, true), (false, true, false), (true, false, false)]
    );
}

#[test]
fn class_of_is_conjugation_invariant() {
    let g = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    let t = CharacterTable::for_group(&g).unwrap();
    let r = p(4, "(1,2,3,4)");
    for h in g.elements() {
        assert_eq!(t.class_of(&r.conjugate_by(h)).unwrap(), t.class_of(&r).unwrap());
    }
    // non-member errors
    assert!(t.class_of(&p(4, "(1,2)")).is_err());
}

#[test]
fn eigenvalue_multiplicity_examples() {
    let g = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    let t = CharacterTable::for_group(&g).unwrap();
    // trivial character: eigenvalue 1 once, everywhere
    for e in [p(4, "(1,2,3,4)"), p(4, "(1,3)"), p(4, "(1,3)(2,4)")] {
        let m = t.eigenvalue_multiplicities(0, &e).unwrap();
        assert_eq!(m[0], 1);
        assert!(m.iter().skip(1).all(|&x| x == 0));
    }
    // the 2-dim character at a rotation: eigenvalues are the two primitive
    // fourth roots of unity
    assert_eq!(
        t.eigenvalue_multiplicities(4, &p(4, "(1,2,3,4)")).unwrap(),
        vec![0, 1, 0, 1]
    );
    // at a reflection: +1 and -1
    assert_eq!(
        t.eigenvalue_multiplicities(4, &p(4, "(1,3)")).unwrap(),
        vec![1, 1]
    );
}

#[test]
fn eigenvalue_multiplicities_inverse_symmetry() {
    let g = PermGroup::generate(5, &[p(5, "(1,2,3,4,5)"), p(5, "(2,3,5,4)")]).unwrap();
    let t = CharacterTable::for_group(&g).unwrap();
    for chi in 0..t.class_count() {
        for c in g.conjugacy_classes() {
            let e = c.element_order;
            let m = t.eigenvalue_multiplicities(chi, &c.representative).unwrap();
            let minv = t
                .eigenvalue_multiplicities(chi, &c.representative.inverse())
                .unwrap();
            assert_eq!(m.iter().sum::<u64>(), t.degrees()[chi]);
            for alpha in 0..e {
                assert_eq!(minv[alpha], m[(e - alpha) % e]);
            }
        }
    }
}

#[test]
fn fixed_dim_examples() {
    let g = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    let t = CharacterTable::for_group(&g).unwrap();
    let trivial = PermGroup::trivial(4);
    for chi in 0..5 {
        // H = 1 gives the full degree; the trivial character always fixes 1
        assert_eq!(t.fixed_dim(chi, &trivial).unwrap(), t.degrees()[chi]);
        assert_eq!(t.fixed_dim(0, &g).unwrap(), 1);
        // the whole group fixes nothing in a nontrivial irreducible
        if chi > 0 {
            assert_eq!(t.fixed_dim(chi, &g).unwrap(), 0);
        }
    }
    // a reflection fixes a line in the 2-dim representation
    let hs = PermGroup::generate(4, &[p(4, "(1,3)")]).unwrap();
    assert_eq!(t.fixed_dim(4, &hs).unwrap(), 1);
}

#[test]
fn regular_character_vanishes_off_identity() {
    for g in [
        PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap(),
        PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap(),
    ] {
        let t = CharacterTable::for_group(&g).unwrap();
        for (k, class) in g.conjugacy_classes().iter().enumerate() {
            let mut acc = CyclotomicNumber::zero();
            for chi in 0..t.class_count() {
                acc = acc.add(&t.value(chi, k).scale(&rat(t.degrees()[chi] as i64)));
            }
            let expected = if class.representative.is_identity() {
                cyc(g.order() as i64)
            } else {
                cyc(0)
            };
            assert_eq!(acc, expected);
        }
    }
}

/// Newton-sum route: recover the characteristic polynomial of the action of
/// `g` in the irreducible from the power sums `chi(g^k)`, and check that it
/// equals the product of `(x - zeta_e^alpha)^(N_alpha)` built from the DFT
/// multiplicities. This keeps the two computation routes honest against
/// each other.
#[test]
fn newton_sum_cross_check() {
    let groups = vec![
        PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap(),
        PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap(),
        PermGroup::generate(5, &[p(5, "(1,2,3,4,5)"), p(5, "(2,3,5,4)")]).unwrap(),
    ];
    for g in groups {
        let t = CharacterTable::for_group(&g).unwrap();
        for chi in 0..t.class_count() {
            let d = t.degrees()[chi] as usize;
            for class in g.conjugacy_classes() {
                let rep = &class.representative;
                let e = class.element_order;
                // power sums s_k = chi(g^k) for k = 1..d
                let mut power = rep.clone();
                let mut power_sums = vec![CyclotomicNumber::zero()];
                for _ in 0..d {
                    power_sums.push(t.value_at(chi, &power).unwrap().clone());
                    power = power.compose(rep);
                }
                // elementary symmetric functions via Newton's identities
                let mut elem = vec![CyclotomicNumber::one()];
                for k in 1..=d {
                    let mut acc = CyclotomicNumber::zero();
                    for i in 1..=k {
                        let term = elem[k - i].mul(&power_sums[i]);
                        if i % 2 == 1 {
                            acc = acc.add(&term);
                        } else {
                            acc = acc.sub(&term);
                        }
                    }
                    elem.push(acc.div_rational(&rat(k as i64)).unwrap());
                }
                // char poly = prod (x - zeta_e^alpha)^{N_alpha}; compare
                // elementary symmetric functions coefficient by coefficient
                let mults = t.eigenvalue_multiplicities(chi, rep).unwrap();
                let mut poly = vec![CyclotomicNumber::one()]; // coefficients of prod (x - lambda), ascending
                for (alpha, &m) in mults.iter().enumerate() {
                    let root = CyclotomicNumber::root_of_unity(e as u32, alpha as i64).unwrap();
                    for _ in 0..m {
                        // multiply by (x - root)
                        let mut next = vec![CyclotomicNumber::zero(); poly.len() + 1];
                        for (i, c) in poly.iter().enumerate() {
                            next[i + 1] = next[i + 1].add(c);
                            next[i] = next[i].sub(&c.mul(&root));
                        }
                        poly = next;
                    }
                }
                // poly has degree d; e_k = (-1)^k * coeff of x^{d-k}
                for k in 0..=d {
                    let coeff = &poly[d - k];
                    let signed = if k % 2 == 0 { coeff.clone() } else { coeff.neg() };
                    assert_eq!(
                        signed, elem[k],
                        "|G|={} chi={chi} class rep {} k={k}",
                        g.order(),
                        rep
                    );
                }
            }
        }
    }
}

#[test]
fn table_invariants_across_small_groups() {
    let groups = vec![
        PermGroup::generate(6, &[p(6, "(1,2,3,4,5,6)")]).unwrap(),
        PermGroup::generate(6, &[p(6, "(1,2,3)(4,5,6)"), p(6, "(1,4)(2,5)(3,6)")]).unwrap(),
        PermGroup::generate(7, &[p(7, "(1,2,3,4,5,6,7)"), p(7, "(2,7)(3,6)(4,5)")]).unwrap(),
        PermGroup::generate(4, &[p(4, "(1,2)"), p(4, "(3,4)")]).unwrap(),
    ];
    for g in groups {
        let t = CharacterTable::for_group(&g).unwrap();
        assert_eq!(t.class_count(), g.conjugacy_classes().len());
        let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum, g.order() as u64);
        for &d in t.degrees() {
            assert_eq!(g.order() as u64 % d, 0);
        }
        // subgroup fixed dimensions are nonnegative integers summing right:
        // the permutation character of G/H decomposes with fixed_dim weights
        for h in g.subgroups(SubgroupMode::UpToConjugacy) {
            let mut total = 0u64;
            for chi in 0..t.class_count() {
                total += t.degrees()[chi] * t.fixed_dim(chi, &h.group).unwrap();
            }
            assert_eq!(total, (g.order() / h.group.order()) as u64);
        }
    }
}

#[test]
fn export_shape() {
    let g = PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap();
    let t = CharacterTable::for_group(&g).unwrap();
    let json = t.to_json();
    assert_eq!(json["group_order"], 6);
    assert_eq!(json["classes"].as_array().unwrap().len(), 3);
    assert_eq!(json["characters"].as_array().unwrap().len(), 3);
}
