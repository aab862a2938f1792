//! Built-in invariant suites: quick end-to-end checks that the engine's
//! independent computation routes agree with each other.

use num::{BigInt, Zero};
use prymcover::chartab::CharacterTable;
use prymcover::covers::genus;
use prymcover::cyclo::Rational;
use prymcover::enumerate::{
    breuer_tuples_raw, enumerate, frobenius_count, EnumerationConfig, Strategy,
};
use prymcover::perm::{PermGroup, Permutation, SubgroupMode};
use prymcover::prym::{chevalley_weil, rank_psd, GroupAlgebraElement};

use crate::casefile::load_case;

fn p(degree: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(degree, s).unwrap()
}

type Suite = (&'static str, fn() -> Result<(), String>);

pub fn run() -> Result<(), String> {
    let suites: Vec<Suite> = vec![
        ("character-table orthogonality", suite_orthogonality),
        ("chevalley-weil vs riemann-hurwitz", suite_cw_vs_rh),
        ("frobenius count vs raw backtracking", suite_frobenius),
        ("newton ranks vs dense regular-module rank", suite_rank_oracle),
        ("strategy agreement (group-first vs tuple-first)", suite_strategies),
    ];
    let mut failed = 0;
    for (name, suite) in suites {
        match suite() {
            Ok(()) => println!("PASS {name}"),
            Err(e) => {
                failed += 1;
                println!("FAIL {name}: {e}");
            }
        }
    }
    if failed == 0 {
        println!("selftest: all suites passed");
        Ok(())
    } else {
        Err(format!("{failed} selftest suite(s) failed"))
    }
}

/// Orthogonality is verified inside table construction; building the tables
/// of a spread of small groups exercises it.
fn suite_orthogonality() -> Result<(), String> {
    let groups = vec![
        PermGroup::generate(2, &[p(2, "(1,2)")]).unwrap(),
        PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap(),
        PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap(),
        PermGroup::generate(4, &[p(4, "(1,2)"), p(4, "(1,2,3,4)")]).unwrap(),
        PermGroup::generate(5, &[p(5, "(1,2,3,4,5)")]).unwrap(),
        PermGroup::generate(6, &[p(6, "(1,2,3,4,5,6)"), p(6, "(2,6)(3,5)")]).unwrap(),
    ];
    for g in groups {
        let t = CharacterTable::for_group(&g).map_err(|e| e.to_string())?;
        let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
        if sum != g.order() as u64 {
            return Err(format!("degree square sum {sum} != |G| = {}", g.order()));
        }
    }
    Ok(())
}

/// For every enumerated cover of the two smallest bundled cases, the
/// fixed-space dimensions of the Chevalley-Weil module must reproduce the
/// genus of every quotient.
fn suite_cw_vs_rh() -> Result<(), String> {
    for name in ["g2-2", "rr-spec"] {
        let case = load_case(name)?;
        let quadruples =
            enumerate(&case.cover, &case.config()).map_err(|e| e.to_string())?;
        for q in &quadruples {
            let table = CharacterTable::for_group(&q.group).map_err(|e| e.to_string())?;
            let cw = chevalley_weil(&q.sigma, &table).map_err(|e| e.to_string())?;
            for h in q.group.subgroups(SubgroupMode::UpToConjugacy) {
                let mut dim = 0u64;
                for chi in 0..table.class_count() {
                    dim += cw.multiplicities[chi]
                        * table.fixed_dim(chi, &h.group).map_err(|e| e.to_string())?;
                }
                let g = genus(&q.sigma, &q.group, &h.group).map_err(|e| e.to_string())?;
                if dim != g as u64 {
                    return Err(format!(
                        "{name}: invariant dimension {dim} != genus {g} at |H| = {}",
                        h.group.order()
                    ));
                }
            }
        }
    }
    Ok(())
}

fn suite_frobenius() -> Result<(), String> {
    let s3 = PermGroup::generate(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]).unwrap();
    let d4 = PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap();
    for g in [s3, d4] {
        let classes = 0..g.conjugacy_classes().len();
        for a in classes.clone() {
            for b in classes.clone() {
                for c in classes.clone() {
                    let sel = [a, b, c];
                    let predicted = frobenius_count(&g, &sel).map_err(|e| e.to_string())?;
                    let raw = breuer_tuples_raw(&g, &sel).map_err(|e| e.to_string())?;
                    if predicted != BigInt::from(raw.len()) {
                        return Err(format!(
                            "|G|={}: count {predicted} != raw {}",
                            g.order(),
                            raw.len()
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Dense exact rank of the regular-module action, reimplemented here so the
/// check stays independent of the Newton-identity path.
fn dense_regular_rank(a: &GroupAlgebraElement) -> usize {
    let g = a.group();
    let elems = g.elements();
    let n = elems.len();
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

fn suite_rank_oracle() -> Result<(), String> {
    let groups = vec![
        PermGroup::generate(4, &[p(4, "(1,2,3,4)"), p(4, "(1,3)")]).unwrap(),
        PermGroup::generate(4, &[p(4, "(1,2)"), p(4, "(1,2,3,4)")]).unwrap(),
        PermGroup::generate(6, &[p(6, "(1,2,3,4,5,6)"), p(6, "(2,6)(3,5)")]).unwrap(),
    ];
    for g in groups {
        if g.order() > 24 {
            continue;
        }
        let table = CharacterTable::for_group(&g).map_err(|e| e.to_string())?;
        let subs = g.subgroups(SubgroupMode::UpToConjugacy);
        for h1 in &subs {
            for h2 in &subs {
                let p1 = GroupAlgebraElement::projector(&g, &h1.group);
                let p2 = GroupAlgebraElement::projector(&g, &h2.group);
                let a = p1
                    .convolve(&p2)
                    .and_then(|x| x.convolve(&p1))
                    .map_err(|e| e.to_string())?;
                let mut weighted = 0u64;
                for chi in 0..table.class_count() {
                    let d = table.degrees()[chi];
                    weighted += d * rank_psd(&a, &table, chi, d as usize)
                        .map_err(|e| e.to_string())?;
                }
                if weighted != dense_regular_rank(&a) as u64 {
                    return Err(format!(
                        "rank mismatch in |G|={} for |H1|={}, |H2|={}",
                        g.order(),
                        h1.group.order(),
                        h2.group.order()
                    ));
                }
            }
        }
    }
    Ok(())
}

fn suite_strategies() -> Result<(), String> {
    for name in ["g2-2", "rr-spec"] {
        let case = load_case(name)?;
        let mut cfg_g = case.config();
        cfg_g.strategy = Some(Strategy::GroupFirst);
        let mut cfg_t = case.config();
        cfg_t.strategy = Some(Strategy::TupleFirst);
        let a = enumerate(&case.cover, &cfg_g).map_err(|e| e.to_string())?;
        let b = enumerate(&case.cover, &cfg_t).map_err(|e| e.to_string())?;
        let key = |qs: &[prymcover::covers::Quadruple]| -> Vec<(usize, u32, u32)> {
            let mut v: Vec<(usize, u32, u32)> = qs
                .iter()
                .map(|q| {
                    let trivial = PermGroup::trivial(q.sigma.degree);
                    (
                        q.group.order(),
                        genus(&q.sigma, &q.group, &trivial).unwrap(),
                        genus(&q.sigma, &q.group, &q.h_y).unwrap(),
                    )
                })
                .collect();
            v.sort();
            v
        };
        if key(&a) != key(&b) {
            return Err(format!(
                "{name}: group-first found {} covers, tuple-first {}",
                a.len(),
                b.len()
            ));
        }
        let _: EnumerationConfig = cfg_g;
    }
    Ok(())
}
