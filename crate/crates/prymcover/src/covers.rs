//! Monodromy data, ramification structures, Riemann-Hurwitz genera, and
//! intermediate-cover ramification for quotients of the Galois closure.
//!
//! The whole tower lives on one convention: a degree-`d` cover of the line is
//! a tuple `(s_1, ..., s_n)` of permutations with `s_1 * ... * s_n = 1`
//! (right factor applied first) generating a transitive group `G`; `Z` is the
//! Galois closure, quotients `Z/H` correspond to subgroups, and the fiber of
//! `Z/H` over the i-th branch point is the cycle structure of `s_i` acting on
//! the cosets `G/H`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{CycleType, GroupError, PermGroup, Permutation};

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("monodromy product is not the identity")]
    ProductNotIdentity,
    #[error("monodromy group is not transitive")]
    NotTransitive,
    #[error("ramification entry {index}: indices sum to {got}, expected degree {expected}")]
    BadEntrySum {
        index: usize,
        got: u32,
        expected: u32,
    },
    #[error("ramification entry has zero part")]
    ZeroPart,
    #[error("Riemann-Hurwitz yields a non-integer or negative genus (total {total}, degree {degree})")]
    BadGenus { total: i64, degree: i64 },
    #[error("cover type inconsistent: computed g_X = {computed}, declared {declared}")]
    GenusMismatch { computed: i64, declared: i64 },
    #[error(transparent)]
    Group(#[from] GroupError),
}

// ---------------------------------------------------------------------------
// Ramification structures
// ---------------------------------------------------------------------------

/// Per-branch-point multiset of `(ramification index, count)` pairs, sorted
/// by index. JSON form: `[[e, m], ...]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RamPoint(pub Vec<(u32, u32)>);

impl RamPoint {
    pub fn from_cycle_type(ct: &CycleType) -> Self {
        RamPoint(ct.parts.clone())
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(e, m)| e * m).sum()
    }

    /// Sum of `(e-1) * m`, the local Riemann-Hurwitz contribution.
    pub fn rh_contribution(&self) -> u32 {
        self.0.iter().map(|&(e, m)| (e - 1) * m).sum()
    }

    pub fn is_unramified(&self) -> bool {
        self.0.iter().all(|&(e, _)| e == 1)
    }

    pub fn normalized(mut self) -> Self {
        self.0.sort();
        self.0.retain(|&(_, m)| m > 0);
        self
    }
}

/// Ordered list of per-point entries, one per branch point.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RamificationStructure {
    pub points: Vec<RamPoint>,
}

impl RamificationStructure {
    pub fn new(points: Vec<RamPoint>) -> Self {
        RamificationStructure {
            points: points.into_iter().map(RamPoint::normalized).collect(),
        }
    }

    pub fn validate(&self, degree: u32) -> Result<(), CoverError> {
        for (i, p) in self.points.iter().enumerate() {
            if p.0.iter().any(|&(e, m)| e == 0 || m == 0) {
                return Err(CoverError::ZeroPart);
            }
            let s = p.total_degree();
            if s != degree {
                return Err(CoverError::BadEntrySum {
                    index: i,
                    got: s,
                    expected: degree,
                });
            }
        }
        Ok(())
    }

    /// Drop fully unramified entries (the validator's normal form).
    pub fn strip_unramified(&self) -> Self {
        RamificationStructure {
            points: self
                .points
                .iter()
                .filter(|p| !p.is_unramified())
                .cloned()
                .collect(),
        }
    }

    pub fn rh_total(&self) -> u32 {
        self.points.iter().map(RamPoint::rh_contribution).sum()
    }
}

// ---------------------------------------------------------------------------
// Monodromy data
// ---------------------------------------------------------------------------

/// A validated tuple `(s_1, ..., s_n)` with product 1 and transitive image.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MonodromyDatum {
    pub degree: usize,
    pub sigma: Vec<Permutation>,
}

impl MonodromyDatum {
    pub fn validate(degree: usize, sigma: Vec<Permutation>) -> Result<Self, CoverError> {
        let mut prod = Permutation::identity(degree);
        for s in &sigma {
            prod = prod.checked_compose(s)?;
        }
        if !prod.is_identity() {
            return Err(CoverError::ProductNotIdentity);
        }
        let group = PermGroup::generate(degree, &sigma)?;
        if !group.is_transitive() {
            return Err(CoverError::NotTransitive);
        }
        Ok(MonodromyDatum { degree, sigma })
    }

    pub fn group(&self) -> Result<PermGroup, GroupError> {
        PermGroup::generate(self.degree, &self.sigma)
    }

    pub fn point_count(&self) -> usize {
        self.sigma.len()
    }

    /// The ramification structure of the degree-`d` cover itself: cycle types
    /// of the tuple entries.
    pub fn base_ramification(&self) -> RamificationStructure {
        RamificationStructure::new(
            self.sigma
                .iter()
                .map(|s| RamPoint::from_cycle_type(&s.cycle_type()))
                .collect(),
        )
    }

    pub fn conjugated_by(&self, n: &Permutation) -> MonodromyDatum {
        MonodromyDatum {
            degree: self.degree,
            sigma: self.sigma.iter().map(|s| s.conjugate_by(n)).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Cover types and quadruples
// ---------------------------------------------------------------------------

/// The combinatorial input: genera, degrees, and the ramification structure
/// of the composite map at degree `d_x * d_y`, with an optional per-point
/// constraint on the ramification of the middle cover `Y -> P1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverType {
    pub g_x: u32,
    pub g_y: u32,
    pub d_x: u32,
    pub d_y: u32,
    pub ramification: RamificationStructure,
    /// Optional Y-level fiber profile over each branch point (entries of
    /// total degree `d_y`); `None` leaves the point unconstrained. This is
    /// the second story of the tower pictures that published tables draw:
    /// the composite cycle type alone does not always determine whether a
    /// point sits under ramification of `Y -> P1` or under a degenerate
    /// (merged) configuration of `X -> Y`.
    #[serde(default)]
    pub y_ramification: Option<Vec<Option<RamPoint>>>,
}

impl CoverType {
    pub fn total_degree(&self) -> u32 {
        self.d_x * self.d_y
    }

    /// Copy with every ramification entry in canonical (sorted) form.
    pub fn normalized(&self) -> CoverType {
        CoverType {
            ramification: RamificationStructure::new(self.ramification.points.clone()),
            y_ramification: self.y_ramification.as_ref().map(|v| {
                v.iter()
                    .map(|p| p.clone().map(RamPoint::normalized))
                    .collect()
            }),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), CoverError> {
        let d = self.total_degree();
        self.ramification.validate(d)?;
        if let Some(y) = &self.y_ramification {
            for p in y.iter().flatten() {
                if p.total_degree() != self.d_y {
                    return Err(CoverError::BadEntrySum {
                        index: 0,
                        got: p.total_degree(),
                        expected: self.d_y,
                    });
                }
            }
        }
        // Riemann-Hurwitz must produce the declared g_X with integer parity
        let total = self.ramification.rh_total() as i64;
        let two_g = 2 - 2 * d as i64 + total;
        if two_g % 2 != 0 || two_g < 0 {
            return Err(CoverError::BadGenus {
                total,
                degree: d as i64,
            });
        }
        if two_g / 2 != self.g_x as i64 {
            return Err(CoverError::GenusMismatch {
                computed: two_g / 2,
                declared: self.g_x as i64,
            });
        }
        Ok(())
    }
}

/// The central object: a transitive `G <= S_d` with `H_X = Stab_G(1)`,
/// an intermediate `H_X <= H_Y <= G` of index `d_Y`, and a monodromy tuple
/// generating exactly `G`.
#[derive(Clone, Debug)]
pub struct Quadruple {
    pub group: PermGroup,
    pub h_x: PermGroup,
    pub h_y: PermGroup,
    pub sigma: MonodromyDatum,
}

/// Wire form of a quadruple: the tuple plus generators of `H_Y`. The group
/// and `H_X` are derived on load.
#[derive(Serialize, Deserialize)]
pub struct QuadrupleWire {
    pub degree: usize,
    pub sigma: Vec<Permutation>,
    pub h_y_generators: Vec<Permutation>,
}

impl Quadruple {
    pub fn to_wire(&self) -> QuadrupleWire {
        QuadrupleWire {
            degree: self.sigma.degree,
            sigma: self.sigma.sigma.clone(),
            h_y_generators: self.h_y.generators().to_vec(),
        }
    }

    pub fn from_wire(wire: QuadrupleWire) -> Result<Quadruple, CoverError> {
        let sigma = MonodromyDatum::validate(wire.degree, wire.sigma)?;
        let group = sigma.group()?;
        let h_x = group.stabilizer(1).group;
        let mut hy_gens = wire.h_y_generators;
        hy_gens.extend(h_x.generators().iter().cloned());
        let h_y = PermGroup::generate_with_cap(wire.degree, &hy_gens, group.order())?;
        let q = Quadruple {
            group,
            h_x,
            h_y,
            sigma,
        };
        q.check_invariants()?;
        Ok(q)
    }
}

impl Quadruple {
    pub fn check_invariants(&self) -> Result<(), CoverError> {
        let g = self.sigma.group()?;
        if g.order() != self.group.order() || !g.is_subgroup_of(&self.group) {
            return Err(CoverError::NotTransitive);
        }
        if !self.group.is_transitive() {
            return Err(CoverError::NotTransitive);
        }
        let stab = self.group.stabilizer(1);
        if stab.group.elements() != self.h_x.elements() {
            return Err(CoverError::NotTransitive);
        }
        if !self.h_x.is_subgroup_of(&self.h_y) || !self.h_y.is_subgroup_of(&self.group) {
            return Err(GroupError::NotASubgroup.into());
        }
        Ok(())
    }

    pub fn d_y(&self) -> usize {
        self.group.order() / self.h_y.order()
    }

    pub fn d_x(&self) -> usize {
        self.h_y.order() / self.h_x.order()
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Ramification of `Z/H -> P1`: entry `i` is the cycle type of `s_i` acting
/// on the cosets `G/H`.
pub fn ramification_over_p1(
    sigma: &MonodromyDatum,
    group: &PermGroup,
    h: &PermGroup,
) -> Result<RamificationStructure, CoverError> {
    let action = group.coset_action(h)?;
    Ok(RamificationStructure::new(
        sigma
            .sigma
            .iter()
            .map(|s| RamPoint::from_cycle_type(&action.act(s).cycle_type()))
            .collect(),
    ))
}

/// Genus of `Z/H` by Riemann-Hurwitz along `Z/H -> P1`.
pub fn genus(
    sigma: &MonodromyDatum,
    group: &PermGroup,
    h: &PermGroup,
) -> Result<u32, CoverError> {
    let r = ramification_over_p1(sigma, group, h)?;
    let index = (group.order() / h.order()) as i64;
    let total = r.rh_total() as i64;
    let two_g = 2 - 2 * index + total;
    if two_g % 2 != 0 || two_g < 0 {
        return Err(CoverError::BadGenus {
            total,
            degree: index,
        });
    }
    Ok((two_g / 2) as u32)
}

/// One fiber point of an intermediate cover `Z/H1 -> Z/H2`, indexed by the
/// branch point downstairs and the double coset `<s_i> g H2` it sits over.
#[derive(Clone, Debug, Serialize)]
pub struct IntermediatePoint {
    pub branch_index: usize,
    pub coset_representative: Permutation,
    /// `m`: least positive integer with `g^{-1} s_i^m g` in `H2`.
    pub entry_index: usize,
    pub cycle_type: RamPoint,
    pub unramified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntermediateRamification {
    pub degree: usize,
    pub points: Vec<IntermediatePoint>,
}

impl IntermediateRamification {
    /// Riemann-Hurwitz total over all fiber points.
    pub fn rh_total(&self) -> u32 {
        self.points.iter().map(|p| p.cycle_type.rh_contribution()).sum()
    }
}

/// Ramification of `Z/H1 -> Z/H2` for `H1 <= H2 <= G`.
///
/// For each branch point `i` and each double coset `<s_i> g H2`, take the
/// least `m >= 1` with `t = g^{-1} s_i^m g` in `H2`; the fiber entry is the
/// cycle type of `t` acting on the cosets `H2/H1`. Unramified entries are
/// retained and flagged.
pub fn intermediate_ramification(
    sigma: &MonodromyDatum,
    group: &PermGroup,
    h1: &PermGroup,
    h2: &PermGroup,
) -> Result<IntermediateRamification, CoverError> {
    if !h1.is_subgroup_of(h2) || !h2.is_subgroup_of(group) {
        return Err(GroupError::NotASubgroup.into());
    }
    let degree = h2.order() / h1.order();
    let sub_action = h2.coset_action(h1)?;
    let mut points = Vec::new();
    for (i, s) in sigma.sigma.iter().enumerate() {
        let cyc = PermGroup::generate(sigma.degree, std::slice::from_ref(s))?;
        let reps = group.double_cosets(&cyc, h2)?;
        for g in reps {
            let ginv = g.inverse();
            let mut m = 1usize;
            let mut power = s.clone();
            let (t, entry_index) = loop {
                let cand = ginv.compose(&power).compose(&g);
                if h2.contains(&cand) {
                    break (cand, m);
                }
                m += 1;
                power = power.compose(s);
            };
            let ct = sub_action.act(&t).cycle_type();
            points.push(IntermediatePoint {
                branch_index: i,
                coset_representative: g,
                entry_index,
                unramified: ct.is_trivial(),
                cycle_type: RamPoint::from_cycle_type(&ct),
            });
        }
    }
    Ok(IntermediateRamification { degree, points })
}

/// Whether an automorphism of the closure induces a hyperelliptic involution
/// on `X = Z/H`: some `g` in `N_G(H) - H` with `g^2` in `H` makes
/// `K = <H, g>` an index-2 overgroup with `genus(Z/K) = 0`.
///
/// By convention this reports `false` when `genus(Z/H) <= 1`; the notion is
/// only used for quotients of genus at least 2.
pub fn induces_hyperelliptic_involution(
    sigma: &MonodromyDatum,
    group: &PermGroup,
    h: &PermGroup,
) -> Result<bool, CoverError> {
    let g_h = genus(sigma, group, h)?;
    if g_h <= 1 {
        return Ok(false);
    }
    let normalizer = h.normalizer_in(group)?;
    for g in normalizer.group.elements() {
        if h.contains(g) {
            continue;
        }
        if !h.contains(&g.compose(g)) {
            continue;
        }
        let mut gens: Vec<Permutation> = h.elements().to_vec();
        gens.push(g.clone());
        let k = PermGroup::generate_with_cap(group.degree(), &gens, group.order())?;
        if k.order() != 2 * h.order() {
            continue;
        }
        if genus(sigma, group, &k)? == 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The Y-level fiber profile of a quadruple over each branch point: cycle
/// type of `s_i` on `G/H_Y`. Used to match the optional per-point constraint
/// in a `CoverType`.
pub fn y_level_profile(q: &Quadruple) -> Result<Vec<RamPoint>, CoverError> {
    ramification_over_p1(&q.sigma, &q.group, &q.h_y).map(|r| r.points)
}
