//! Independent validation of the Newton-identity rank computation: the rank
//! of a group-algebra element acting on the regular module (a dense rational
//! matrix, reduced by exact Gaussian elimination) must equal the sum over
//! irreducibles of `d_chi * rank_chi`.

use num::{BigInt, One, Zero};
use prymcover::chartab::CharacterTable;
use prymcover::covers::{genus, CoverType, MonodromyDatum, Quadruple, RamPoint, RamificationStructure};
use prymcover::cyclo::Rational;
use prymcover::enumerate::{enumerate, EnumerationConfig};
use prymcover::perm::{PermGroup, Permutation, SubgroupMode};
use prymcover::prym::{rank_psd, GroupAlgebraElement};

fn p(degree: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(degree, s).unwrap()
}

/// Exact rank of the |G| x |G| rational matrix of `a` acting by left
/// multiplication on the regular module.
fn dense_regular_rank(a: &GroupAlgebraElement) -> usize {
    let g = a.group();
    let elems = g.elements();
    let n = elems.len();
    let index = |x: &Permutation| elems.binary_search(x).unwrap();
    // column j = a * e_{g_j}: entry (i, j) = a(g_i g_j^{-1})
    let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; n];
    for (j, gj) in elems.iter().enumerate() {
        for (i, gi) in elems.iter().enumerate() {
            let x = gi.compose(&gj.inverse());
            let c = a.coefficient(&x);
            if !c.is_zero() {
                m[i][j] = c;
            }
        }
    }
    let _ = index;
    // gaussian elimination
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        let Some(pivot) = (row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot);
        let pv = m[row][col].clone();
        for c in col..n {
            let v = m[row][c].clone() / &pv;
            m[row][c] = v;
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..n {
                    let t = m[row][c].clone() * &f;
                    m[r][c] -= t;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == n {
            break;
        }
    }
    rank
}

fn check_group(g: &PermGroup, pairs: &[(&PermGroup, &PermGroup)]) {
    let table = CharacterTable::for_group(g).unwrap();
    for (h1, h2) in pairs {
        let p1 = GroupAlgebraElement::projector(g, h1);
        let p2 = GroupAlgebraElement::projector(g, h2);
        let a = p1.convolve(&p2).unwrap().convolve(&p1).unwrap();
        let mut weighted = 0u64;
        for chi in 0..table.class_count() {
            let d = table.degrees()[chi];
            weighted += d * rank_psd(&a, &table, chi, d as usize).unwrap();
        }
        let dense = dense_regular_rank(&a) as u64;
        assert_eq!(
            weighted,
            dense,
            "regular-module rank mismatch for |G|={} |H1|={} |H2|={}",
            g.order(),
            h1.order(),
            h2.order()
        );
    }
}

#[test]
fn dihedral_projector_ranks_match_dense_oracle() {
    let g = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    let hs = PermGroup::generate(4, &[p(4, "(1,3)")]).unwrap();
    let hsr = PermGroup::generate(4, &[p(4, "(1,2)(3,4)")]).unwrap();
    let hy = PermGroup::generate(4, &[p(4, "(1,3)"), p(4, "(1,3)(2,4)")]).unwrap();
    let trivial = PermGroup::trivial(4);
    check_group(
        &g,
        &[
            (&hs, &hsr),
            (&hsr, &hs),
            (&hy, &hsr),
            (&trivial, &hs),
            (&g, &hs),
        ],
    );
}

#[test]
fn s4_subgroup_pairs_match_dense_oracle() {
    let g = PermGroup::generate(4, &[p(4, "(1,2)"), p(4, "(1,2,3,4)")]).unwrap();
    let subs = g.subgroups(SubgroupMode::UpToConjugacy);
    let reps: Vec<&PermGroup> = subs.iter().map(|h| &h.group).collect();
    let mut pairs = Vec::new();
    for a in &reps {
        for b in &reps {
            pairs.push((*a, *b));
        }
    }
    check_group(&g, &pairs);
}

/// The suspicious configuration: the degree-8 merged-total-ramification case
/// whose hyperelliptic branch yields a single genus-3 complement. Validate
/// every rank entering that conclusion against the dense oracle.
#[test]
fn total4_hyperelliptic_family_ranks_match_dense_oracle() {
    let ram24 = RamPoint(vec![(2, 4)]);
    let case = CoverType {
        g_x: 4,
        g_y: 1,
        d_x: 4,
        d_y: 2,
        ramification: RamificationStructure::new(vec![
            RamPoint(vec![(4, 2)]),
            ram24.clone(),
            ram24.clone(),
            ram24.clone(),
            ram24,
        ]),
        y_ramification: Some(vec![
            Some(RamPoint(vec![(1, 2)])),
            Some(RamPoint(vec![(2, 1)])),
            Some(RamPoint(vec![(2, 1)])),
            Some(RamPoint(vec![(2, 1)])),
            Some(RamPoint(vec![(2, 1)])),
        ]),
    };
    let mut cfg = EnumerationConfig::default();
    cfg.require_maximal_hx_in_hy = true;
    let quadruples = enumerate(&case, &cfg).unwrap();
    // pick one hyperelliptic member
    let q: &Quadruple = quadruples
        .iter()
        .find(|q| {
            prymcover::covers::induces_hyperelliptic_involution(&q.sigma, &q.group, &q.h_x)
                .unwrap()
        })
        .expect("the family has hyperelliptic members");
    let report =
        prymcover::prym::find_prym_complements(q, Some(&case), Default::default()).unwrap();
    assert_eq!(report.g_z, 19);
    assert_eq!(report.group_order, 48);
    // validate the ranks of every candidate's operators against the oracle
    let mut pairs: Vec<(PermGroup, PermGroup)> = Vec::new();
    for c in &report.candidates {
        let h_c = PermGroup::generate(8, &c.h_c_generators).unwrap();
        pairs.push((h_c.clone(), q.h_x.clone()));
        pairs.push((h_c, q.h_y.clone()));
    }
    let pair_refs: Vec<(&PermGroup, &PermGroup)> =
        pairs.iter().map(|(a, b)| (a, b)).collect();
    check_group(&q.group, &pair_refs);
    // and the Chevalley-Weil total must be the genus of Z
    let table = CharacterTable::for_group(&q.group).unwrap();
    let cw = prymcover::prym::chevalley_weil(&q.sigma, &table).unwrap();
    assert_eq!(cw.genus_total(&table), 19);
    // cross-oracle: CW fixed dimensions reproduce every quotient genus
    for h in q.group.subgroups(SubgroupMode::UpToConjugacy) {
        let mut total = 0u64;
        for chi in 0..table.class_count() {
            total += cw.multiplicities[chi] * table.fixed_dim(chi, &h.group).unwrap();
        }
        assert_eq!(
            total,
            genus(&q.sigma, &q.group, &h.group).unwrap() as u64,
            "CW/RH cross-oracle at |H|={}",
            h.group.order()
        );
    }
    let _ = BigInt::one();
    let _: MonodromyDatum = q.sigma.clone();
}
