//! The differential-space engine.
//!
//! The space of regular differentials of the closure `Z` is handled purely
//! through its character: the Chevalley-Weil formula gives the multiplicity
//! of every irreducible in `H^0(Z, Omega^1)`, and all rank computations for
//! maps of Jacobians are done per irreducible character from traces of powers
//! of group-algebra elements via Newton's identities. No representation
//! matrices are ever constructed.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Mutex;

use num::{BigInt, One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::Serialize;
use thiserror::Error;

use crate::chartab::{CharacterTable, ChartabError};
use crate::covers::{
    genus, induces_hyperelliptic_involution, CoverError, CoverType, MonodromyDatum, Quadruple,
};
use crate::cyclo::{rat, CycloError, CyclotomicNumber, Rational};
use crate::perm::{PermGroup, Permutation, SubgroupMode};

#[derive(Debug, Error)]
pub enum PrymError {
    #[error("group mismatch between algebra elements")]
    GroupMismatch,
    #[error("non-integral multiplicity in the Chevalley-Weil formula: {0}")]
    NonIntegralMultiplicity(String),
    #[error("positive-semidefinite structure violated (e_{0} = 0 but a later coefficient is nonzero)")]
    PsdViolation(usize),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Group(#[from] crate::perm::GroupError),
}

// ---------------------------------------------------------------------------
// Group algebra
// ---------------------------------------------------------------------------

/// A sparse rational group-algebra element.
#[derive(Clone, Debug)]
pub struct GroupAlgebraElement {
    group: PermGroup,
    coeffs: BTreeMap<Permutation, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero(group: &PermGroup) -> Self {
        GroupAlgebraElement {
            group: group.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn identity(group: &PermGroup) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Permutation::identity(group.degree()), Rational::one());
        GroupAlgebraElement {
            group: group.clone(),
            coeffs,
        }
    }

    /// The averaging projector `p_H = (1/|H|) sum_{h in H} h`.
    pub fn projector(group: &PermGroup, h: &PermGroup) -> Self {
        let w = Rational::new(BigInt::one(), BigInt::from(h.order()));
        let coeffs = h
            .elements()
            .iter()
            .map(|e| (e.clone(), w.clone()))
            .collect();
        GroupAlgebraElement {
            group: group.clone(),
            coeffs,
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn coefficient(&self, g: &Permutation) -> Rational {
        self.coeffs.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Convolution; corresponds to operator composition in every
    /// representation: `tau(a * b) = tau(a) tau(b)`.
    pub fn convolve(&self, other: &Self) -> Result<Self, PrymError> {
        if self.group != other.group {
            return Err(PrymError::GroupMismatch);
        }
        let mut coeffs: BTreeMap<Permutation, Rational> = BTreeMap::new();
        for (g, a) in &self.coeffs {
            if a.is_zero() {
                continue;
            }
            for (h, b) in &other.coeffs {
                if b.is_zero() {
                    continue;
                }
                let t = g.compose(h);
                let entry = coeffs.entry(t).or_insert_with(Rational::zero);
                *entry += a.clone() * b;
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(GroupAlgebraElement {
            group: self.group.clone(),
            coeffs,
        })
    }

    /// `adjoint(a)(g) = a(g^{-1})`; an involution of the algebra.
    pub fn adjoint(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(g, c)| (g.inverse(), c.clone()))
            .collect();
        GroupAlgebraElement {
            group: self.group.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PrymError> {
        if self.group != other.group {
            return Err(PrymError::GroupMismatch);
        }
        let mut coeffs = self.coeffs.clone();
        for (g, c) in &other.coeffs {
            let entry = coeffs.entry(g.clone()).or_insert_with(Rational::zero);
            *entry += c.clone();
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(GroupAlgebraElement {
            group: self.group.clone(),
            coeffs,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Rational::is_zero)
    }

    /// Trace of the element acting in the irreducible with character `chi`:
    /// `sum_g a(g) chi(g)`.
    pub fn char_trace(
        &self,
        table: &CharacterTable,
        chi: usize,
    ) -> Result<CyclotomicNumber, PrymError> {
        let mut acc = CyclotomicNumber::zero();
        for (g, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let class = table.class_of(g)?;
            acc = acc.add(&table.value(chi, class).scale(c));
        }
        Ok(acc)
    }
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.coeffs == other.coeffs
    }
}

// ---------------------------------------------------------------------------
// Ranks of PSD elements, per character
// ---------------------------------------------------------------------------

/// Rank of a self-adjoint positive-semidefinite algebra element acting in the
/// irreducible `chi`, from the power sums `s_k = trace(a^k)` via Newton's
/// identities: the number of strictly positive eigenvalues equals the largest
/// `k` with nonzero elementary symmetric function `e_k`.
///
/// Every call site passes an element of the form `m * adjoint(m)` (or a sum
/// of such), so the PSD hypothesis holds by construction; the zero-pattern of
/// the `e_k` is still checked and a violation aborts.
pub fn rank_psd(
    a: &GroupAlgebraElement,
    table: &CharacterTable,
    chi: usize,
    d_bound: usize,
) -> Result<u64, PrymError> {
    let mut power_sums = Vec::with_capacity(d_bound + 1);
    power_sums.push(CyclotomicNumber::zero()); // s_0 unused
    let mut power = a.clone();
    for k in 1..=d_bound {
        power_sums.push(power.char_trace(table, chi)?);
        if k < d_bound {
            power = power.convolve(a)?;
        }
    }
    let mut elementary = vec![CyclotomicNumber::one()];
    for k in 1..=d_bound {
        let mut acc = CyclotomicNumber::zero();
        for i in 1..=k {
            let term = elementary[k - i].mul(&power_sums[i]);
            if i % 2 == 1 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        elementary.push(acc.div_rational(&rat(k as i64))?);
    }
    let mut rank = 0usize;
    let mut seen_zero_at = None;
    for (k, e) in elementary.iter().enumerate().skip(1) {
        if e.is_zero() {
            if seen_zero_at.is_none() {
                seen_zero_at = Some(k);
            }
        } else {
            if let Some(z) = seen_zero_at {
                return Err(PrymError::PsdViolation(z));
            }
            rank = k;
        }
    }
    Ok(rank as u64)
}

// rank cache: (group hash, conjugation-normalized operator key, chi) -> rank
static RANK_CACHE: Lazy<Mutex<HashMap<(String, Vec<u8>, usize), u64>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Persist the projector-rank cache as a JSON blob in `dir`.
pub fn export_rank_cache(dir: &std::path::Path) -> std::io::Result<()> {
    let cache = RANK_CACHE.lock().unwrap();
    let entries: Vec<(String, String, usize, u64)> = cache
        .iter()
        .map(|((h, k, chi), &r)| {
            let hex: String = k.iter().map(|b| format!("{b:02x}")).collect();
            (h.clone(), hex, *chi, r)
        })
        .collect();
    std::fs::create_dir_all(dir)?;
    let blob = serde_json::json!({
        "version": crate::chartab::CACHE_FORMAT_VERSION,
        "ranks": entries,
    });
    std::fs::write(dir.join("ranks.json"), serde_json::to_string(&blob)?)
}

/// Load a previously exported rank cache; silently ignores missing or
/// incompatible blobs.
pub fn import_rank_cache(dir: &std::path::Path) {
    let Ok(data) = std::fs::read_to_string(dir.join("ranks.json")) else {
        return;
    };
    let Ok(value) = serde_json::from_str::<serde_json::Value>(&data) else {
        return;
    };
    if value["version"].as_u64() != Some(crate::chartab::CACHE_FORMAT_VERSION as u64) {
        return;
    }
    let Some(entries) = value["ranks"].as_array() else {
        return;
    };
    let mut cache = RANK_CACHE.lock().unwrap();
    for e in entries {
        let (Some(h), Some(hex), Some(chi), Some(r)) = (
            e[0].as_str(),
            e[1].as_str(),
            e[2].as_u64(),
            e[3].as_u64(),
        ) else {
            continue;
        };
        let bytes: Option<Vec<u8>> = (0..hex.len() / 2)
            .map(|i| u8::from_str_radix(&hex[2 * i..2 * i + 2], 16).ok())
            .collect();
        if let Some(key) = bytes {
            cache.insert((h.to_string(), key, chi as usize), r);
        }
    }
}

fn subgroup_key(h: &PermGroup) -> Vec<u8> {
    let mut out = Vec::with_capacity(h.order() * h.degree());
    for e in h.elements() {
        out.extend_from_slice(e.raw_images());
    }
    out
}

/// Canonical key for an ordered pair of subgroups of `G` up to simultaneous
/// conjugation by `G`; the per-character ranks computed here only depend on
/// that class, so conjugate configurations share cache entries.
fn normalized_pair_key(group: &PermGroup, h1: &PermGroup, h2: &PermGroup) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    for n in group.elements() {
        let c1 = conjugate_subgroup(h1, n);
        let c2 = conjugate_subgroup(h2, n);
        let mut key = subgroup_key(&c1);
        key.push(0xff);
        key.extend(subgroup_key(&c2));
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap()
}

pub(crate) fn conjugate_subgroup(h: &PermGroup, n: &Permutation) -> PermGroup {
    let elems: Vec<Permutation> = h.elements().iter().map(|e| e.conjugate_by(n)).collect();
    PermGroup::from_known_elements(h.degree(), elems)
}

/// Per-character rank of `p_{h2} p_{h1}` (the composite projector), computed
/// as `rank_psd(p1 * p2 * p1)` and cached across calls.
fn projector_pair_rank(
    table: &CharacterTable,
    h1: &PermGroup,
    h2: &PermGroup,
    chi: usize,
) -> Result<u64, PrymError> {
    let group = table.group();
    let key = (
        group.canonical_hash().to_string(),
        normalized_pair_key(group, h1, h2),
        chi,
    );
    if let Some(&r) = RANK_CACHE.lock().unwrap().get(&key) {
        return Ok(r);
    }
    let p1 = GroupAlgebraElement::projector(group, h1);
    let p2 = GroupAlgebraElement::projector(group, h2);
    let a = p1.convolve(&p2)?.convolve(&p1)?;
    let rank = rank_psd(&a, table, chi, table.degrees()[chi] as usize)?;
    RANK_CACHE.lock().unwrap().insert(key, rank);
    Ok(rank)
}

// ---------------------------------------------------------------------------
// Chevalley-Weil
// ---------------------------------------------------------------------------

/// Multiplicity of each irreducible character in `H^0(Z, Omega^1_Z)`.
#[derive(Clone, Debug, Serialize)]
pub struct CWDecomposition {
    pub multiplicities: Vec<u64>,
}

impl CWDecomposition {
    pub fn genus_total(&self, table: &CharacterTable) -> u64 {
        self.multiplicities
            .iter()
            .zip(table.degrees())
            .map(|(&nu, &d)| nu * d)
            .sum()
    }
}

/// The Chevalley-Weil formula for a branched Galois cover of the line:
/// `nu_chi = -d_chi + sum_i sum_alpha N_{i,alpha} frac(-alpha/e_i) + [chi trivial]`,
/// where `N_{i,alpha}` is the multiplicity of `zeta_{e_i}^alpha` as an
/// eigenvalue of the i-th monodromy generator in the irreducible `chi`.
pub fn chevalley_weil(
    sigma: &MonodromyDatum,
    table: &CharacterTable,
) -> Result<CWDecomposition, PrymError> {
    let group = table.group();
    let mut multiplicities = Vec::with_capacity(table.class_count());
    for chi in 0..table.class_count() {
        let d = table.degrees()[chi];
        let mut acc = Rational::from_integer(BigInt::from(-(d as i64)));
        if chi == 0 {
            acc += Rational::one();
        }
        for s in &sigma.sigma {
            let e = s.order();
            if e == 1 {
                continue;
            }
            let mults = table.eigenvalue_multiplicities(chi, s)?;
            for (alpha, &n) in mults.iter().enumerate() {
                if n == 0 || alpha == 0 {
                    continue;
                }
                // frac(-alpha/e) = (e - alpha)/e for 0 < alpha < e
                let frac = Rational::new(BigInt::from((e - alpha) as i64), BigInt::from(e as i64));
                acc += Rational::from_integer(BigInt::from(n)) * frac;
            }
        }
        if !acc.denom().is_one() || acc.numer().is_negative() {
            return Err(PrymError::NonIntegralMultiplicity(format!(
                "character {chi}: {acc}"
            )));
        }
        multiplicities.push(acc.numer().to_string().parse().unwrap());
    }
    let cw = CWDecomposition { multiplicities };
    // cross-check: total dimension must be the genus of Z
    let trivial = PermGroup::trivial(group.degree());
    let g_z = genus(sigma, group, &trivial)? as u64;
    if cw.genus_total(table) != g_z {
        return Err(PrymError::NonIntegralMultiplicity(format!(
            "total CW dimension {} differs from g_Z = {}",
            cw.genus_total(table),
            g_z
        )));
    }
    if cw.multiplicities[0] != 0 {
        return Err(PrymError::NonIntegralMultiplicity(
            "trivial character has nonzero multiplicity".into(),
        ));
    }
    Ok(cw)
}

// ---------------------------------------------------------------------------
// Image dimensions and subspace sums
// ---------------------------------------------------------------------------

/// Dimension of the image of `Jac(Z/H1) -> Jac(Z/H2)` induced by the
/// correspondence through `Z`: the rank of `p_{H2} p_{H1}` on the
/// differentials, summed over irreducibles with Chevalley-Weil weights.
pub fn image_dimension(
    table: &CharacterTable,
    cw: &CWDecomposition,
    h1: &PermGroup,
    h2: &PermGroup,
) -> Result<u64, PrymError> {
    let mut total = 0u64;
    for chi in 0..table.class_count() {
        let nu = cw.multiplicities[chi];
        if nu == 0 {
            continue;
        }
        total += nu * projector_pair_rank(table, h1, h2, chi)?;
    }
    Ok(total)
}

/// Whether the images of `Jac(Z/H_C)` and `Jac(Z/H_Y)` inside `Jac(X)`
/// intersect: true iff the operator `p_{H_Y} p_{H_C}` is nonzero on the
/// differentials, detected by the trace of the PSD element
/// `p_C * p_Y * p_C` on some character with positive multiplicity.
pub fn images_intersect_y(
    table: &CharacterTable,
    cw: &CWDecomposition,
    h_y: &PermGroup,
    h_c: &PermGroup,
) -> Result<bool, PrymError> {
    let group = table.group();
    let p_c = GroupAlgebraElement::projector(group, h_c);
    let p_y = GroupAlgebraElement::projector(group, h_y);
    let a = p_c.convolve(&p_y)?.convolve(&p_c)?;
    for chi in 0..table.class_count() {
        if cw.multiplicities[chi] == 0 {
            continue;
        }
        if !a.char_trace(table, chi)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Dimension of the sum of the images of `p_{H_X} p_{H_{C_i}}` on the
/// differentials: the rank of the summed PSD operators, with Chevalley-Weil
/// weights.
pub fn subspace_sum_dim(
    table: &CharacterTable,
    cw: &CWDecomposition,
    h_x: &PermGroup,
    family: &[&PermGroup],
) -> Result<u64, PrymError> {
    if family.is_empty() {
        return Ok(0);
    }
    let group = table.group();
    let p_x = GroupAlgebraElement::projector(group, h_x);
    let mut sum = GroupAlgebraElement::zero(group);
    for h_c in family {
        let p_c = GroupAlgebraElement::projector(group, h_c);
        let term = p_x.convolve(&p_c)?.convolve(&p_x)?;
        sum = sum.add(&term)?;
    }
    let mut total = 0u64;
    for chi in 0..table.class_count() {
        let nu = cw.multiplicities[chi];
        if nu == 0 {
            continue;
        }
        let d = table.degrees()[chi] as usize;
        total += nu * rank_psd(&sum, table, chi, d)?;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// The Prym-complement search
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct PrymCandidate {
    /// Generators of `H_C` (1-based image vectors).
    pub h_c_generators: Vec<Permutation>,
    #[serde(skip)]
    pub h_c: PermGroup,
    pub g_c: u32,
    /// Degree of the quotient map `Z -> C = Z/H_C`, i.e. `|H_C|`.
    pub degree_z_to_c: usize,
    pub image_dim_in_x: u64,
    pub intersects_y: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Full,
    Partial,
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub group_order: usize,
    pub degree: usize,
    pub sigma: Vec<Permutation>,
    pub h_x_generators: Vec<Permutation>,
    pub h_y_generators: Vec<Permutation>,
    pub g_z: u32,
    pub g_x: u32,
    pub g_y: u32,
    pub prym_dimension: u32,
    pub x_hyperelliptic: bool,
    pub character_degrees: Vec<u64>,
    pub cw_multiplicities: Vec<u64>,
    pub candidates: Vec<PrymCandidate>,
    /// Indices into `candidates` forming the chosen disjoint family.
    pub family: Vec<usize>,
    pub family_dims: Vec<u32>,
    pub family_degrees: Vec<usize>,
    pub family_sum_dim: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl AnalysisReport {
    /// Strip fields that vary between runs (timing), for bit-stable output.
    pub fn canonicalized(mut self) -> Self {
        self.timing_ms = None;
        self
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalysisOptions {
    /// Exhaustive subset search for the disjoint family (small candidate
    /// counts only); the default is the greedy assembly.
    pub exhaustive_family: bool,
}

/// The full per-cover analysis: Chevalley-Weil decomposition, candidate
/// quotients whose Jacobians inject into `Jac(X)` away from `Jac(Y)`, and a
/// disjoint family of them filling (all or part of) the Prym variety.
///
/// Candidate subgroups run through conjugacy-class representatives first and
/// are then expanded along the double cosets `N_C \ G / (N_X cap N_Y)`, which
/// exhausts the genuinely different configurations relative to `(H_X, H_Y)`.
pub fn find_prym_complements(
    quadruple: &Quadruple,
    case: Option<&CoverType>,
    options: AnalysisOptions,
) -> Result<AnalysisReport, PrymError> {
    let start = std::time::Instant::now();
    let group = &quadruple.group;
    let sigma = &quadruple.sigma;
    let table = CharacterTable::for_group(group)?;
    let cw = chevalley_weil(sigma, &table)?;

    let trivial = PermGroup::trivial(group.degree());
    let g_z = genus(sigma, group, &trivial)?;
    let g_x = genus(sigma, group, &quadruple.h_x)?;
    let g_y = genus(sigma, group, &quadruple.h_y)?;
    if let Some(case) = case {
        debug_assert_eq!(g_x, case.g_x);
        debug_assert_eq!(g_y, case.g_y);
    }
    let prym_dim = g_x - g_y;
    let x_hyp = induces_hyperelliptic_involution(sigma, group, &quadruple.h_x)?;

    // normalizers in G
    let n_x = quadruple.h_x.normalizer_in(group)?.group;
    let n_y = quadruple.h_y.normalizer_in(group)?.group;
    let n_xy = intersect(&n_x, &n_y);

    // Candidates run through conjugacy classes first; the acceptance checks
    // only depend on the double coset N_C g (N_X cap N_Y), so they are
    // evaluated once per coset. Accepted cosets are then expanded over the
    // whole (N_X cap N_Y)-orbit: conjugate subgroups pass the same checks but
    // cut out different subspaces of the differentials, and the family
    // assembly needs all of them.
    let mut candidates: Vec<PrymCandidate> = Vec::new();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    for class_rep in group.subgroups(SubgroupMode::UpToConjugacy) {
        let k = class_rep.group;
        let g_c = genus(sigma, group, &k)?;
        if g_c == 0 || g_c > prym_dim {
            continue;
        }
        let n_c = k.normalizer_in(group)?.group;
        for rep in group.double_cosets(&n_c, &n_xy)? {
            let h_c0 = conjugate_subgroup(&k, &rep.inverse());
            if seen.contains(&subgroup_key(&h_c0)) {
                continue;
            }
            if images_intersect_y(&table, &cw, &quadruple.h_y, &h_c0)? {
                continue;
            }
            let dim = image_dimension(&table, &cw, &h_c0, &quadruple.h_x)?;
            if dim != g_c as u64 {
                continue;
            }
            for m in n_xy.elements() {
                let h_c = conjugate_subgroup(&h_c0, m);
                let key = subgroup_key(&h_c);
                if !seen.insert(key) {
                    continue;
                }
                candidates.push(PrymCandidate {
                    h_c_generators: h_c.generators().to_vec(),
                    degree_z_to_c: h_c.order(),
                    h_c,
                    g_c,
                    image_dim_in_x: dim,
                    intersects_y: false,
                });
            }
        }
    }
    // deterministic candidate order: genus desc, degree asc, canonical key
    candidates.sort_by(|a, b| {
        b.g_c
            .cmp(&a.g_c)
            .then(a.degree_z_to_c.cmp(&b.degree_z_to_c))
            .then_with(|| subgroup_key(&a.h_c).cmp(&subgroup_key(&b.h_c)))
    });

    let family = if options.exhaustive_family && candidates.len() <= 12 {
        best_family_exhaustive(&table, &cw, &quadruple.h_x, &candidates, prym_dim as u64)?
    } else {
        greedy_family(&table, &cw, &quadruple.h_x, &candidates, prym_dim as u64)?
    };
    let family_dims: Vec<u32> = family.iter().map(|&i| candidates[i].g_c).collect();
    let family_degrees: Vec<usize> =
        family.iter().map(|&i| candidates[i].degree_z_to_c).collect();
    let groups: Vec<&PermGroup> = family.iter().map(|&i| &candidates[i].h_c).collect();
    let family_sum = subspace_sum_dim(&table, &cw, &quadruple.h_x, &groups)?;

    let verdict = if family_sum == prym_dim as u64 {
        Verdict::Full
    } else if family_sum > 0 {
        Verdict::Partial
    } else {
        Verdict::None
    };

    Ok(AnalysisReport {
        group_order: group.order(),
        degree: group.degree(),
        sigma: sigma.sigma.clone(),
        h_x_generators: quadruple.h_x.generators().to_vec(),
        h_y_generators: quadruple.h_y.generators().to_vec(),
        g_z,
        g_x,
        g_y,
        prym_dimension: prym_dim,
        x_hyperelliptic: x_hyp,
        character_degrees: table.degrees().to_vec(),
        cw_multiplicities: cw.multiplicities.clone(),
        candidates,
        family,
        family_dims,
        family_degrees,
        family_sum_dim: family_sum,
        verdict,
        timing_ms: Some(start.elapsed().as_millis()),
    })
}

/// Greedy assembly: walk the (sorted) candidates, keep any that extends the
/// subspace sum by its full genus.
fn greedy_family(
    table: &CharacterTable,
    cw: &CWDecomposition,
    h_x: &PermGroup,
    candidates: &[PrymCandidate],
    target: u64,
) -> Result<Vec<usize>, PrymError> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut sum = 0u64;
    for (i, c) in candidates.iter().enumerate() {
        if sum == target {
            break;
        }
        if sum + c.g_c as u64 > target {
            continue;
        }
        let mut groups: Vec<&PermGroup> = chosen.iter().map(|&j| &candidates[j].h_c).collect();
        groups.push(&c.h_c);
        let new_sum = subspace_sum_dim(table, cw, h_x, &groups)?;
        if new_sum == sum + c.g_c as u64 {
            chosen.push(i);
            sum = new_sum;
        }
    }
    Ok(chosen)
}

fn best_family_exhaustive(
    table: &CharacterTable,
    cw: &CWDecomposition,
    h_x: &PermGroup,
    candidates: &[PrymCandidate],
    target: u64,
) -> Result<Vec<usize>, PrymError> {
    let n = candidates.len();
    let mut best: Vec<usize> = Vec::new();
    let mut best_sum = 0u64;
    for mask in 1u32..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let dims: u64 = subset.iter().map(|&i| candidates[i].g_c as u64).sum();
        if dims > target || dims <= best_sum {
            continue;
        }
        let groups: Vec<&PermGroup> = subset.iter().map(|&i| &candidates[i].h_c).collect();
        if subspace_sum_dim(table, cw, h_x, &groups)? == dims {
            best = subset;
            best_sum = dims;
            if best_sum == target {
                break;
            }
        }
    }
    Ok(best)
}

fn intersect(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let elems: Vec<Permutation> = a
        .elements()
        .iter()
        .filter(|e| b.contains(e))
        .cloned()
        .collect();
    PermGroup::from_known_elements(a.degree(), elems)
}
