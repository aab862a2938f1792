//! Enumeration of the 4-tuples `(G, H_X, H_Y, Sigma)` of a given cover type.
//!
//! Two independent strategies cover the same search space and are tested
//! against each other:
//!
//! * group-first: run through candidate subgroups `G` of `S_d` up to
//!   conjugacy, fix `H_X = Stab_G(1)`, derive the `(G, H_X, H_Y)` triples
//!   from double cosets of normalizers, and enumerate tuples inside `G`
//!   class-selection by class-selection;
//! * tuple-first: backtrack the tuples directly in `S_d` (the cycle types
//!   are pinned by the ramification data), take `G` as the generated group
//!   and extend by every admissible `H_Y`.
//!
//! Both prune with the exact character-theoretic count of class-restricted
//! factorizations, and both feed the same deduplication, which identifies
//! quadruples under simultaneous conjugation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Mutex;

use num::{BigInt, One, Signed, Zero};
use once_cell::sync::Lazy;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chartab::{CharacterTable, ChartabError};
use crate::covers::{CoverError, CoverType, MonodromyDatum, Quadruple, RamPoint};
use crate::cyclo::{CyclotomicNumber, Rational};
use crate::perm::{CycleType, GroupError, PermGroup, Permutation, SubgroupMode};

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("no conjugacy class of S_{degree} matches ramification entry {index}")]
    NoMatchingClass { degree: usize, index: usize },
    #[error("degree {0} not supported by the group-first strategy (max 8)")]
    DegreeTooLarge(usize),
    #[error("frobenius count is not a nonnegative integer: {0}")]
    BadFrobeniusCount(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    GroupFirst,
    TupleFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DedupMode {
    /// Keep everything.
    None,
    /// Identify under conjugation by elements of `G` itself.
    Group,
    /// Identify under simultaneous conjugation in `S_d` (the default; the
    /// conjugators that matter normalize `G`).
    NormalizerInSd,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SampleConfig {
    pub count: u64,
    pub seed: u64,
    /// Warn when the fraction of accepted draws falls below this.
    #[serde(default = "default_floor")]
    pub acceptance_floor: f64,
}

fn default_floor() -> f64 {
    0.002
}

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub strategy: Option<Strategy>,
    pub dedup: DedupMode,
    pub require_maximal_hx_in_hy: bool,
    pub require_maximal_hy_in_g: bool,
    pub sample: Option<SampleConfig>,
    pub max_group_order: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            strategy: None,
            dedup: DedupMode::NormalizerInSd,
            require_maximal_hx_in_hy: false,
            require_maximal_hy_in_g: false,
            sample: None,
            max_group_order: crate::perm::DEFAULT_ORDER_CAP,
        }
    }
}

impl EnumerationConfig {
    pub fn effective_strategy(&self, degree: usize) -> Strategy {
        self.strategy.unwrap_or(if degree >= 7 {
            Strategy::TupleFirst
        } else {
            Strategy::GroupFirst
        })
    }
}

// ---------------------------------------------------------------------------
// Frobenius counts and class-restricted backtracking
// ---------------------------------------------------------------------------

/// Exact count of tuples `(x_1, ..., x_n)` with `x_i` in the i-th class and
/// `x_1 ... x_n = target`:
/// `(prod |C_i| / |G|) sum_chi (prod_i chi(C_i)) conj(chi(target)) / d_chi^{n-1}`.
fn class_product_count(
    table: &CharacterTable,
    classes: &[usize],
    target_class: usize,
) -> Result<BigInt, EnumerateError> {
    let order = table.group().order() as i64;
    let n = classes.len();
    let mut acc = CyclotomicNumber::zero();
    for chi in 0..table.class_count() {
        let d = table.degrees()[chi] as i64;
        let mut term = CyclotomicNumber::one();
        for &c in classes {
            term = term.mul(table.value(chi, c));
        }
        term = term.mul(&table.value(chi, target_class).conjugate());
        let mut denom = BigInt::one();
        for _ in 1..n {
            denom *= d;
        }
        term = term
            .div_rational(&Rational::from_integer(denom))
            .expect("degree is nonzero");
        acc = acc.add(&term);
    }
    let mut scale = Rational::from_integer(BigInt::one());
    for &c in classes {
        scale *= Rational::from_integer(BigInt::from(table.classes()[c].size));
    }
    scale /= Rational::from_integer(BigInt::from(order));
    let total = acc.scale(&scale);
    let value = total
        .as_integer()
        .map_err(|_| EnumerateError::BadFrobeniusCount(format!("{total}")))?;
    if value.is_negative() {
        return Err(EnumerateError::BadFrobeniusCount(value.to_string()));
    }
    Ok(value)
}

/// The verification oracle: number of product-one tuples with entries in the
/// given classes, before any generation or transitivity filter.
pub fn frobenius_count(group: &PermGroup, classes: &[usize]) -> Result<BigInt, EnumerateError> {
    let table = CharacterTable::for_group(group)?;
    class_product_count(&table, classes, 0)
}

/// All product-one tuples with `sigma_i` in the prescribed class of `G`,
/// generating exactly `G`, one representative per simultaneous-G-conjugacy
/// class, in deterministic order.
pub fn breuer_tuples(
    group: &PermGroup,
    classes: &[usize],
) -> Result<Vec<MonodromyDatum>, EnumerateError> {
    let raw = breuer_tuples_raw(group, classes)?;
    let mut canon: BTreeMap<Vec<u8>, MonodromyDatum> = BTreeMap::new();
    for tuple in raw {
        let g = PermGroup::generate_with_cap(group.degree(), &tuple, group.order())?;
        if g.order() != group.order() {
            continue; // generates a proper subgroup
        }
        let key = canonical_tuple_key(&tuple, group.elements());
        canon.entry(key).or_insert_with(|| MonodromyDatum {
            degree: group.degree(),
            sigma: tuple,
        });
    }
    Ok(canon.into_values().collect())
}

/// Raw product-one tuples (no generation filter, no dedup); the backtracking
/// prunes every prefix by the exact count of class-restricted completions.
/// Used directly by the Frobenius-count oracle tests.
pub fn breuer_tuples_raw(
    group: &PermGroup,
    classes: &[usize],
) -> Result<Vec<Vec<Permutation>>, EnumerateError> {
    let table = CharacterTable::for_group(group)?;
    let n = classes.len();
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let class_elems: Vec<Vec<Permutation>> =
        classes.iter().map(|&c| group.class_elements(c)).collect();
    let mut completion_cache: HashMap<(usize, usize), bool> = HashMap::new();
    let mut prefix: Vec<Permutation> = Vec::with_capacity(n);
    let mut products: Vec<Permutation> = vec![Permutation::identity(group.degree())];
    backtrack(
        &table,
        classes,
        &class_elems,
        &mut prefix,
        &mut products,
        &mut completion_cache,
        &mut |tuple| out.push(tuple.to_vec()),
    )?;
    Ok(out)
}

fn backtrack(
    table: &CharacterTable,
    classes: &[usize],
    class_elems: &[Vec<Permutation>],
    prefix: &mut Vec<Permutation>,
    products: &mut Vec<Permutation>,
    completion_cache: &mut HashMap<(usize, usize), bool>,
    emit: &mut dyn FnMut(&[Permutation]),
) -> Result<(), EnumerateError> {
    let n = classes.len();
    let k = prefix.len();
    let current = products.last().unwrap().clone();
    if k == n - 1 {
        // the last entry is forced by the product condition
        let needed = current.inverse();
        if table.class_of(&needed).ok() == Some(classes[n - 1]) {
            prefix.push(needed);
            emit(prefix);
            prefix.pop();
        }
        return Ok(());
    }
    let target = table.class_of(&current.inverse()).expect("group is closed");
    let key = (k, target);
    let feasible = match completion_cache.get(&key) {
        Some(&f) => f,
        None => {
            let f = class_product_count(table, &classes[k..], target)? > BigInt::zero();
            completion_cache.insert(key, f);
            f
        }
    };
    if !feasible {
        return Ok(());
    }
    for e in &class_elems[k] {
        prefix.push(e.clone());
        products.push(current.compose(e));
        backtrack(
            table,
            classes,
            class_elems,
            prefix,
            products,
            completion_cache,
            emit,
        )?;
        prefix.pop();
        products.pop();
    }
    Ok(())
}

/// Minimal serialized form of the tuple over a set of conjugators.
fn canonical_tuple_key(tuple: &[Permutation], conjugators: &[Permutation]) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    for n in conjugators {
        let mut key = Vec::with_capacity(tuple.len() * tuple[0].degree());
        for s in tuple {
            key.extend_from_slice(s.conjugate_by(n).raw_images());
        }
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap()
}

// ---------------------------------------------------------------------------
// Shared filters
// ---------------------------------------------------------------------------

/// Genus of an intermediate quotient from its fiber cycle types, by
/// Riemann-Hurwitz over the line.
fn genus_from_types(index: usize, types: &[CycleType]) -> Option<u32> {
    let total: i64 = types
        .iter()
        .map(|t| t.parts.iter().map(|&(e, m)| ((e - 1) * m) as i64).sum::<i64>())
        .sum();
    let two_g = 2 - 2 * index as i64 + total;
    if two_g % 2 != 0 || two_g < 0 {
        return None;
    }
    Some((two_g / 2) as u32)
}

/// All admissible `H_Y` for a tuple: `H_X <= H_Y <= G` with the right index,
/// the right middle-cover genus, the optional per-point Y-level fiber
/// profile, and the optional maximality constraints.
fn admissible_hy(
    case: &CoverType,
    cfg: &EnumerationConfig,
    group: &PermGroup,
    h_x: &PermGroup,
    sigma: &[Permutation],
) -> Result<Vec<PermGroup>, EnumerateError> {
    let mut out = Vec::new();
    let d_y = case.d_y as usize;
    for k in group.subgroups_containing(h_x) {
        if group.order() / k.order() != d_y {
            continue;
        }
        let action = group.coset_action(&k)?;
        let types: Vec<CycleType> = sigma.iter().map(|s| action.act(s).cycle_type()).collect();
        match genus_from_types(d_y, &types) {
            Some(g) if g == case.g_y => {}
            _ => continue,
        }
        if let Some(y_constraints) = &case.y_ramification {
            let ok = y_constraints.iter().zip(&types).all(|(c, t)| match c {
                None => true,
                Some(profile) => RamPoint::from_cycle_type(t).normalized() == *profile,
            });
            if !ok {
                continue;
            }
        }
        if cfg.require_maximal_hy_in_g && !is_maximal_in(&k, group) {
            continue;
        }
        if cfg.require_maximal_hx_in_hy && !is_maximal_in(h_x, &k) {
            continue;
        }
        out.push(k);
    }
    Ok(out)
}

fn is_maximal_in(h: &PermGroup, g: &PermGroup) -> bool {
    if h.order() == g.order() {
        return false;
    }
    g.subgroups_containing(h)
        .into_iter()
        .all(|k| k.order() == h.order() || k.order() == g.order())
}

/// Validity assertions on every emitted quadruple; cheap, always on.
fn assert_emitted(case: &CoverType, q: &Quadruple) -> Result<(), EnumerateError> {
    MonodromyDatum::validate(q.sigma.degree, q.sigma.sigma.clone())?;
    let stab = q.group.stabilizer(1);
    assert_eq!(stab.group.elements(), q.h_x.elements(), "H_X = Stab(1)");
    assert_eq!(q.d_y() as u32, case.d_y, "[G:H_Y] = d_Y");
    let r = crate::covers::ramification_over_p1(&q.sigma, &q.group, &q.h_x)?;
    let declared = crate::covers::RamificationStructure::new(case.ramification.points.clone());
    assert_eq!(r, declared, "exact ramification match");
    assert_eq!(crate::covers::genus(&q.sigma, &q.group, &q.h_x)?, case.g_x);
    assert_eq!(crate::covers::genus(&q.sigma, &q.group, &q.h_y)?, case.g_y);
    Ok(())
}

// ---------------------------------------------------------------------------
// Tuple-first strategy
// ---------------------------------------------------------------------------

/// Classes of `S_d` matching the ramification entries, by cycle type.
fn sd_classes_for(sd: &PermGroup, case: &CoverType) -> Result<Vec<usize>, EnumerateError> {
    let reps = sd.conjugacy_classes();
    case.ramification
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            reps.iter()
                .position(|c| {
                    RamPoint::from_cycle_type(&c.representative.cycle_type()).normalized() == *p
                })
                .ok_or(EnumerateError::NoMatchingClass {
                    degree: sd.degree(),
                    index: i,
                })
        })
        .collect()
}

pub fn tuple_first_enumerate(
    case: &CoverType,
    cfg: &EnumerationConfig,
) -> Result<Vec<Quadruple>, EnumerateError> {
    let case = &case.normalized();
    let d = case.total_degree() as usize;
    if d > 8 {
        return Err(EnumerateError::DegreeTooLarge(d));
    }
    let sd = symmetric_group(d);
    let table = CharacterTable::for_group(&sd)?;
    let classes = sd_classes_for(&sd, case)?;
    let n = classes.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if class_product_count(&table, &classes, 0)? == BigInt::zero() {
        return Ok(Vec::new());
    }

    // fix the first entry at the class representative; each S_d-class of
    // tuples contains such a member, and residual symmetry is exactly the
    // centralizer of that representative
    let first = table.classes()[classes[0]].representative.clone();
    let centralizer = centralizer_elements(&sd, &first);
    let class_elems: Vec<Vec<Permutation>> =
        classes.iter().map(|&c| sd.class_elements(c)).collect();

    let mut tuples: BTreeMap<Vec<u8>, Vec<Permutation>> = BTreeMap::new();
    let mut completion_cache: HashMap<(usize, usize), bool> = HashMap::new();
    let mut prefix = vec![first.clone()];
    let mut products = vec![Permutation::identity(d), first.clone()];
    backtrack(
        &table,
        &classes,
        &class_elems,
        &mut prefix,
        &mut products,
        &mut completion_cache,
        &mut |tuple| {
            let key = canonical_tuple_key(tuple, &centralizer);
            tuples.entry(key).or_insert_with(|| tuple.to_vec());
        },
    )?;

    let mut quadruples = Vec::new();
    for tuple in tuples.into_values() {
        let group = match PermGroup::generate_with_cap(d, &tuple, cfg.max_group_order) {
            Ok(g) => g,
            Err(GroupError::OrderCapExceeded { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        if !group.is_transitive() {
            continue;
        }
        let h_x = group.stabilizer(1).group;
        for h_y in admissible_hy(case, cfg, &group, &h_x, &tuple)? {
            let q = Quadruple {
                group: group.clone(),
                h_x: h_x.clone(),
                h_y,
                sigma: MonodromyDatum {
                    degree: d,
                    sigma: tuple.clone(),
                },
            };
            assert_emitted(case, &q)?;
            quadruples.push(q);
        }
    }
    Ok(dedup(quadruples, cfg.dedup))
}

fn centralizer_elements(sd: &PermGroup, g: &Permutation) -> Vec<Permutation> {
    sd.elements()
        .iter()
        .filter(|n| n.compose(g) == g.compose(n))
        .cloned()
        .collect()
}

static SYMMETRIC_CACHE: Lazy<Mutex<HashMap<usize, PermGroup>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn symmetric_group(d: usize) -> PermGroup {
    SYMMETRIC_CACHE
        .lock()
        .unwrap()
        .entry(d)
        .or_insert_with(|| PermGroup::symmetric(d))
        .clone()
}

// ---------------------------------------------------------------------------
// Group-first strategy
// ---------------------------------------------------------------------------

static SUBGROUP_CLASSES_CACHE: Lazy<Mutex<HashMap<usize, Vec<PermGroup>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Conjugacy-class representatives of all subgroups of `S_d` (full lattice,
/// bottom-up closure); cached per degree. Used for d <= 6.
fn sd_subgroup_classes(d: usize) -> Vec<PermGroup> {
    if let Some(v) = SUBGROUP_CLASSES_CACHE.lock().unwrap().get(&d) {
        return v.clone();
    }
    let sd = symmetric_group(d);
    let classes: Vec<PermGroup> = sd
        .subgroups(SubgroupMode::UpToConjugacy)
        .into_iter()
        .map(|h| h.group)
        .collect();
    SUBGROUP_CLASSES_CACHE
        .lock()
        .unwrap()
        .insert(d, classes.clone());
    classes
}

/// Candidate groups for degrees 7 and 8: bottom-up closure over elements
/// whose cycle types appear in the ramification data (any valid `G` is
/// generated by such elements), pruned during construction by the order cap.
/// The full subgroup lattice of `S_7` or `S_8` is out of reach.
fn typed_subgroup_classes(
    d: usize,
    types: &[RamPoint],
    cap: usize,
) -> Result<Vec<PermGroup>, EnumerateError> {
    let sd = symmetric_group(d);
    let wanted: HashSet<RamPoint> = types.iter().cloned().collect();
    let typed: Vec<Permutation> = sd
        .elements()
        .iter()
        .filter(|e| wanted.contains(&RamPoint::from_cycle_type(&e.cycle_type()).normalized()))
        .cloned()
        .collect();
    let mut reps: Vec<PermGroup> = Vec::new();
    let mut seen_keys: HashSet<Vec<u8>> = HashSet::new();
    let mut work: Vec<PermGroup> = Vec::new();
    for c in sd.conjugacy_classes() {
        if !wanted
            .contains(&RamPoint::from_cycle_type(&c.representative.cycle_type()).normalized())
        {
            continue;
        }
        let g = PermGroup::generate_with_cap(d, std::slice::from_ref(&c.representative), cap)?;
        if register_group_class(&mut reps, &mut seen_keys, &sd, g.clone()) {
            work.push(g);
        }
    }
    while let Some(h) = work.pop() {
        for x in &typed {
            if h.contains(x) {
                continue;
            }
            let mut gens = h.generators().to_vec();
            gens.push(x.clone());
            let k = match PermGroup::generate_with_cap(d, &gens, cap) {
                Ok(k) => k,
                Err(GroupError::OrderCapExceeded { .. }) => continue,
                Err(e) => return Err(e.into()),
            };
            if register_group_class(&mut reps, &mut seen_keys, &sd, k.clone()) {
                work.push(k.clone());
            }
        }
    }
    Ok(reps)
}

/// Insert `g` into the class-representative list unless an `S_d`-conjugate is
/// already present. Returns true when `g` was new.
fn register_group_class(
    reps: &mut Vec<PermGroup>,
    seen_keys: &mut HashSet<Vec<u8>>,
    sd: &PermGroup,
    g: PermGroup,
) -> bool {
    let key = group_key(&g);
    if !seen_keys.insert(key) {
        return false;
    }
    for r in reps.iter() {
        if r.order() != g.order() {
            continue;
        }
        if group_cycle_profile(r) != group_cycle_profile(&g) {
            continue;
        }
        if PermGroup::are_conjugate_subgroups(sd, r, &g).is_some() {
            return false;
        }
    }
    reps.push(g);
    true
}

fn group_cycle_profile(g: &PermGroup) -> BTreeMap<Vec<(u32, u32)>, usize> {
    let mut profile = BTreeMap::new();
    for e in g.elements() {
        *profile.entry(e.cycle_type().parts).or_insert(0) += 1;
    }
    profile
}

/// The normal-subgroup-index prune on `H_X`: a stabilizer that can sit inside
/// a valid diagram has a normal subgroup of index at most `(d_Y - 1)!`.
fn passes_normal_bound(h_x: &PermGroup, d_y: u32) -> bool {
    let bound: usize = (1..d_y as usize).product::<usize>().max(1);
    if bound >= h_x.order() {
        return true;
    }
    h_x.subgroups(SubgroupMode::All)
        .into_iter()
        .any(|n| h_x.order() / n.group.order() <= bound && n.group.is_normal_in(h_x))
}

pub fn group_first_enumerate(
    case: &CoverType,
    cfg: &EnumerationConfig,
) -> Result<Vec<Quadruple>, EnumerateError> {
    let case = &case.normalized();
    let d = case.total_degree() as usize;
    if d > 8 {
        return Err(EnumerateError::DegreeTooLarge(d));
    }
    let sd = symmetric_group(d);
    let candidates: Vec<PermGroup> = if d <= 6 {
        sd_subgroup_classes(d)
    } else {
        typed_subgroup_classes(d, &case.ramification.points, cfg.max_group_order)?
    };

    let mut quadruples = Vec::new();
    for group in candidates {
        if !group.is_transitive() || group.order() > cfg.max_group_order {
            continue;
        }
        let h_x = group.stabilizer(1).group;
        if !passes_normal_bound(&h_x, case.d_y) {
            continue;
        }
        // G must be generated by elements of the prescribed cycle types
        let wanted: HashSet<RamPoint> = case.ramification.points.iter().cloned().collect();
        let typed: Vec<Permutation> = group
            .elements()
            .iter()
            .filter(|e| wanted.contains(&RamPoint::from_cycle_type(&e.cycle_type()).normalized()))
            .cloned()
            .collect();
        if typed.is_empty() {
            continue;
        }
        match PermGroup::generate_with_cap(d, &typed, group.order()) {
            Ok(g) if g.order() == group.order() => {}
            _ => continue,
        }

        // triples (G, H_X, H_Y) via the double cosets of normalizers: every
        // class of index-d_Y subgroups that can complete a triple has a
        // representative in the interval above H_X, so the class list is
        // seeded there; groups without any triple are discarded before the
        // tuple search
        if triple_hy_representatives(&group, &h_x, case.d_y as usize, &sd)?.is_empty() {
            continue;
        }

        // class selections consistent with the ramification data
        let table = CharacterTable::for_group(&group)?;
        let class_options: Vec<Vec<usize>> = case
            .ramification
            .points
            .iter()
            .map(|p| {
                (0..table.class_count())
                    .filter(|&c| {
                        RamPoint::from_cycle_type(&table.classes()[c].representative.cycle_type())
                            .normalized()
                            == *p
                    })
                    .collect()
            })
            .collect();
        if class_options.iter().any(Vec::is_empty) {
            continue;
        }
        let mut selection = vec![0usize; class_options.len()];
        let mut tuples: Vec<MonodromyDatum> = Vec::new();
        enumerate_selections(&class_options, 0, &mut selection, &mut |sel| {
            if class_product_count(&table, sel, 0)? > BigInt::zero() {
                tuples.extend(breuer_tuples(&group, sel)?);
            }
            Ok(())
        })?;

        for datum in tuples {
            for h_y in admissible_hy(case, cfg, &group, &h_x, &datum.sigma)? {
                let q = Quadruple {
                    group: group.clone(),
                    h_x: h_x.clone(),
                    h_y,
                    sigma: datum.clone(),
                };
                assert_emitted(case, &q)?;
                quadruples.push(q);
            }
        }
    }
    Ok(dedup(quadruples, cfg.dedup))
}

fn enumerate_selections(
    options: &[Vec<usize>],
    pos: usize,
    selection: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Result<(), EnumerateError>,
) -> Result<(), EnumerateError> {
    if pos == options.len() {
        return visit(selection);
    }
    for i in 0..options[pos].len() {
        selection[pos] = options[pos][i];
        enumerate_selections(options, pos + 1, selection, visit)?;
    }
    Ok(())
}

fn normalizer_within(h: &PermGroup, ambient: &PermGroup) -> PermGroup {
    let elems: Vec<Permutation> = ambient
        .elements()
        .iter()
        .filter(|n| {
            h.generators()
                .iter()
                .all(|g| h.contains(&g.conjugate_by(n)))
        })
        .cloned()
        .collect();
    PermGroup::from_known_elements(h.degree(), elems)
}

/// The `H_Y` parts of the triples `(G, H_X, H_Y)` up to simultaneous
/// conjugacy by `N = N_{S_d}(G)`: one subgroup per double coset
/// `N_Y g N_X` that lands above `H_X`. Classes of candidate subgroups are
/// seeded from the interval above `H_X`, which meets every class capable of
/// completing a triple.
fn triple_hy_representatives(
    group: &PermGroup,
    h_x: &PermGroup,
    d_y: usize,
    sd: &PermGroup,
) -> Result<Vec<PermGroup>, EnumerateError> {
    let n_g = group.normalizer_in(sd)?.group;
    let n_x = normalizer_within(h_x, &n_g);
    let mut out: Vec<PermGroup> = Vec::new();
    let mut class_seen: HashSet<Vec<u8>> = HashSet::new();
    for k in group.subgroups_containing(h_x) {
        if k.order() * d_y != group.order() {
            continue;
        }
        if class_seen.contains(&group_key(&k)) {
            continue;
        }
        for n in n_g.elements() {
            class_seen.insert(group_key(&crate::prym::conjugate_subgroup(&k, n)));
        }
        let n_y = normalizer_within(&k, &n_g);
        for rep in n_g.double_cosets(&n_y, &n_x)? {
            let candidate = crate::prym::conjugate_subgroup(&k, &rep.inverse());
            if h_x.is_subgroup_of(&candidate)
                && !out.iter().any(|c| c.elements() == candidate.elements())
            {
                out.push(candidate);
            }
        }
    }
    Ok(out)
}

fn group_key(g: &PermGroup) -> Vec<u8> {
    let mut key = Vec::with_capacity(g.order() * g.degree());
    for e in g.elements() {
        key.extend_from_slice(e.raw_images());
    }
    key
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct SampleOutcome {
    pub draws: u64,
    pub accepted_tuples: u64,
    pub emitted: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Seeded random search. Sampling runs inside the group-first scaffolding:
/// for each draw, a candidate group and a class selection consistent with
/// the ramification data are picked, `s_1, ..., s_{n-1}` are drawn uniformly
/// from the selected classes, and the forced `s_n` is accepted when it lands
/// in its class, the tuple generates exactly the candidate group, and a
/// valid `H_Y` exists. Reproducible for a fixed seed.
pub fn sample_quadruples(
    case: &CoverType,
    cfg: &EnumerationConfig,
) -> Result<(Vec<Quadruple>, SampleOutcome), EnumerateError> {
    let case = &case.normalized();
    let sample = cfg.sample.expect("sample_quadruples requires cfg.sample");
    let d = case.total_degree() as usize;
    if d > 8 {
        return Err(EnumerateError::DegreeTooLarge(d));
    }
    let sd = symmetric_group(d);
    let candidates: Vec<PermGroup> = if d <= 6 {
        sd_subgroup_classes(d)
    } else {
        typed_subgroup_classes(d, &case.ramification.points, cfg.max_group_order)?
    };

    // sampling contexts: (group, class selection, class element lists)
    struct Context {
        group: PermGroup,
        h_x: PermGroup,
        class_elems: Vec<Vec<Permutation>>,
        last_class: usize,
        table: std::sync::Arc<CharacterTable>,
    }
    let mut contexts: Vec<Context> = Vec::new();
    for group in candidates {
        if !group.is_transitive() || group.order() > cfg.max_group_order {
            continue;
        }
        let h_x = group.stabilizer(1).group;
        if !passes_normal_bound(&h_x, case.d_y) {
            continue;
        }
        let hy_reps = triple_hy_representatives(&group, &h_x, case.d_y as usize, &sd)?;
        if hy_reps.is_empty() {
            continue;
        }
        let table = CharacterTable::for_group(&group)?;
        let class_options: Vec<Vec<usize>> = case
            .ramification
            .points
            .iter()
            .map(|p| {
                (0..table.class_count())
                    .filter(|&c| {
                        RamPoint::from_cycle_type(&table.classes()[c].representative.cycle_type())
                            .normalized()
                            == *p
                    })
                    .collect()
            })
            .collect();
        if class_options.iter().any(Vec::is_empty) {
            continue;
        }
        // cycle type of each class on G/K only depends on the classes, so
        // selections that can never meet the Y-level constraint (for every
        // candidate H_Y) are dropped before any drawing happens
        let y_types_per_rep: Vec<Vec<RamPoint>> = hy_reps
            .iter()
            .map(|k| {
                let action = group.coset_action(k).expect("H_Y <= G");
                (0..table.class_count())
                    .map(|c| {
                        RamPoint::from_cycle_type(
                            &action.act(&table.classes()[c].representative).cycle_type(),
                        )
                        .normalized()
                    })
                    .collect()
            })
            .collect();
        let selection_feasible = |sel: &[usize]| -> bool {
            match &case.y_ramification {
                None => true,
                Some(constraints) => y_types_per_rep.iter().any(|types| {
                    constraints.iter().zip(sel).all(|(c, &cls)| match c {
                        None => true,
                        Some(profile) => types[cls] == *profile,
                    })
                }),
            }
        };
        let mut selection = vec![0usize; class_options.len()];
        let mut selections: Vec<Vec<usize>> = Vec::new();
        enumerate_selections(&class_options, 0, &mut selection, &mut |sel| {
            if selection_feasible(sel) && class_product_count(&table, sel, 0)? > BigInt::zero() {
                selections.push(sel.to_vec());
            }
            Ok(())
        })?;
        for sel in selections {
            let class_elems: Vec<Vec<Permutation>> =
                sel.iter().map(|&c| group.class_elements(c)).collect();
            contexts.push(Context {
                group: group.clone(),
                h_x: h_x.clone(),
                class_elems,
                last_class: sel[sel.len() - 1],
                table: table.clone(),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sample.seed);
    let mut accepted = 0u64;
    let mut quadruples = Vec::new();
    if !contexts.is_empty() {
        let n = case.ramification.points.len();
        for _ in 0..sample.count {
            let ctx = &contexts[rng.gen_range(0..contexts.len())];
            let d = ctx.group.degree();
            let mut tuple: Vec<Permutation> = Vec::with_capacity(n);
            let mut product = Permutation::identity(d);
            for elems in ctx.class_elems.iter().take(n - 1) {
                let pick = elems.choose(&mut rng).expect("classes are nonempty").clone();
                product = product.compose(&pick);
                tuple.push(pick);
            }
            let last = product.inverse();
            if ctx.table.class_of(&last).ok() != Some(ctx.last_class) {
                continue;
            }
            tuple.push(last);
            let generated = PermGroup::generate_with_cap(d, &tuple, ctx.group.order())?;
            if generated.order() != ctx.group.order() {
                continue;
            }
            let extensions = admissible_hy(case, cfg, &ctx.group, &ctx.h_x, &tuple)?;
            if extensions.is_empty() {
                continue;
            }
            accepted += 1;
            for h_y in extensions {
                let q = Quadruple {
                    group: ctx.group.clone(),
                    h_x: ctx.h_x.clone(),
                    h_y,
                    sigma: MonodromyDatum {
                        degree: d,
                        sigma: tuple.clone(),
                    },
                };
                assert_emitted(case, &q)?;
                quadruples.push(q);
            }
        }
    }
    let deduped = dedup(quadruples, cfg.dedup);
    let rate = accepted as f64 / sample.count.max(1) as f64;
    let warning = (rate < sample.acceptance_floor).then(|| {
        format!(
            "sampling acceptance rate {:.4} below floor {:.4} ({} accepted of {} draws)",
            rate, sample.acceptance_floor, accepted, sample.count
        )
    });
    let outcome = SampleOutcome {
        draws: sample.count,
        accepted_tuples: accepted,
        emitted: deduped.len(),
        seed: sample.seed,
        warning,
    };
    Ok((deduped, outcome))
}

// ---------------------------------------------------------------------------
// Deduplication
// ---------------------------------------------------------------------------

fn quadruple_sort_key(q: &Quadruple) -> Vec<u8> {
    let mut key = Vec::new();
    for s in &q.sigma.sigma {
        key.extend_from_slice(s.raw_images());
    }
    key.push(0xff);
    key.extend(group_key(&q.h_y));
    key
}

/// Conjugators `n` with `n s_i n^{-1} = t_i` for all `i`, found by
/// propagating point images from each choice of `n(1)`. The tuples generate
/// transitive groups, so one seed determines the whole map; there are at most
/// `d` candidates.
fn tuple_conjugators(from: &[Permutation], to: &[Permutation]) -> Vec<Permutation> {
    let d = from[0].degree();
    let mut out = Vec::new();
    'seed: for seed in 1..=d {
        let mut img = vec![0usize; d + 1];
        let mut known = vec![false; d + 1];
        let mut used = vec![false; d + 1];
        img[1] = seed;
        known[1] = true;
        used[seed] = true;
        let mut queue = vec![1usize];
        while let Some(x) = queue.pop() {
            for (s, t) in from.iter().zip(to) {
                let sx = s.image_of(x);
                let want = t.image_of(img[x]);
                if known[sx] {
                    if img[sx] != want {
                        continue 'seed;
                    }
                } else {
                    if used[want] {
                        continue 'seed;
                    }
                    img[sx] = want;
                    known[sx] = true;
                    used[want] = true;
                    queue.push(sx);
                }
            }
        }
        if !known.iter().skip(1).all(|&k| k) {
            continue;
        }
        let images: Vec<usize> = (1..=d).map(|x| img[x]).collect();
        if let Ok(p) = Permutation::from_images_one_based(&images) {
            if from.iter().zip(to).all(|(s, t)| s.conjugate_by(&p) == *t) {
                out.push(p);
            }
        }
    }
    out
}

/// Are two quadruples isomorphic under the requested conjugation mode?
/// Positions are labeled: the tuples must match entry by entry.
fn equivalent(a: &Quadruple, b: &Quadruple, mode: DedupMode) -> bool {
    if a.sigma.degree != b.sigma.degree
        || a.sigma.sigma.len() != b.sigma.sigma.len()
        || a.group.order() != b.group.order()
        || a.h_y.order() != b.h_y.order()
    {
        return false;
    }
    for n in tuple_conjugators(&a.sigma.sigma, &b.sigma.sigma) {
        if mode == DedupMode::Group && !a.group.contains(&n) {
            continue;
        }
        let conj_hy = crate::prym::conjugate_subgroup(&a.h_y, &n);
        if conj_hy.elements() == b.h_y.elements() {
            return true;
        }
    }
    false
}

/// One representative per orbit under the chosen conjugation mode, in
/// canonical order (sorted serialized form).
pub fn dedup(mut quadruples: Vec<Quadruple>, mode: DedupMode) -> Vec<Quadruple> {
    quadruples.sort_by_key(quadruple_sort_key);
    quadruples.dedup_by(|a, b| quadruple_sort_key(a) == quadruple_sort_key(b));
    if mode == DedupMode::None {
        return quadruples;
    }
    let mut reps: Vec<Quadruple> = Vec::new();
    'outer: for q in quadruples {
        for r in &reps {
            if equivalent(&q, r, mode) {
                continue 'outer;
            }
        }
        reps.push(q);
    }
    reps
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Enumerate (or sample, when configured) the quadruples of a cover type.
pub fn enumerate(
    case: &CoverType,
    cfg: &EnumerationConfig,
) -> Result<Vec<Quadruple>, EnumerateError> {
    let case = case.normalized();
    case.validate()?;
    if cfg.sample.is_some() {
        return Ok(sample_quadruples(&case, cfg)?.0);
    }
    match cfg.effective_strategy(case.total_degree() as usize) {
        Strategy::GroupFirst => group_first_enumerate(&case, cfg),
        Strategy::TupleFirst => tuple_first_enumerate(&case, cfg),
    }
}
