//! Permutation-group kernel.
//!
//! Groups are stored by explicit element enumeration (no stabilizer chains);
//! this is simple and entirely sufficient at the orders this crate works at.
//! Points are 1-based in every public interface. Internally images are stored
//! 0-based in a `Vec<u8>`, so degrees are limited to 255.
//!
//! Composition convention, used consistently everywhere: `compose(a, b)`
//! applies the *right* factor first, `(a*b)(x) = a(b(x))`. The monodromy
//! condition `s1 * s2 * ... * sn = 1` is evaluated under this convention.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use once_cell::sync::OnceCell;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Default cap on the order of explicitly enumerated groups.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("point {0} out of range for degree {1}")]
    PointOutOfRange(usize, usize),
    #[error("images are not a bijection of 1..={0}")]
    NotABijection(usize),
    #[error("group order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// Permutation
// ---------------------------------------------------------------------------

/// A permutation of `{1, ..., d}`, stored as the 0-based image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    /// Build from a 1-based image sequence: `images[i]` is the image of `i+1`.
    pub fn from_images_one_based(images: &[usize]) -> Result<Self, GroupError> {
        let d = images.len();
        let mut seen = vec![false; d];
        let mut v = Vec::with_capacity(d);
        for &im in images {
            if im == 0 || im > d {
                return Err(GroupError::NotABijection(d));
            }
            if seen[im - 1] {
                return Err(GroupError::NotABijection(d));
            }
            seen[im - 1] = true;
            v.push((im - 1) as u8);
        }
        Ok(Permutation { images: v })
    }

    /// Build from disjoint cycles in 1-based notation, e.g. `&[vec![1,2], vec![3,4]]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut v: Vec<u8> = (0..degree as u8).collect();
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                let y = cyc[(i + 1) % cyc.len()];
                if x == 0 || x > degree || y == 0 || y > degree {
                    return Err(GroupError::PointOutOfRange(x.max(y), degree));
                }
                v[x - 1] = (y - 1) as u8;
            }
        }
        // reject non-disjoint cycle input that silently overwrote images
        let mut seen = vec![false; degree];
        for &im in &v {
            if seen[im as usize] {
                return Err(GroupError::NotABijection(degree));
            }
            seen[im as usize] = true;
        }
        Ok(Permutation { images: v })
    }

    /// Parse cycle notation `"(1,2)(3,4)"` or `"(1 2)(3 4)"`; `"()"` or `"id"`
    /// denote the identity.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self, GroupError> {
        let s = s.trim();
        if s == "()" || s == "id" || s.is_empty() {
            return Ok(Self::identity(degree));
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(GroupError::Parse(format!("expected '(' in {s:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| GroupError::Parse(format!("unbalanced parens in {s:?}")))?;
            let inner = &rest[1..close];
            let cyc: Result<Vec<usize>, _> = inner
                .split(|c| c == ',' || c == ' ')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| GroupError::Parse(format!("bad point {t:?}")))
                })
                .collect();
            let cyc = cyc?;
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = rest[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn image_of(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn apply0(&self, x: u8) -> u8 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| im as usize == i)
    }

    /// `(a*b)(x) = a(b(x))`: apply the right factor first.
    pub fn compose(&self, b: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            b.degree(),
            "compose: degree mismatch {} vs {}",
            self.degree(),
            b.degree()
        );
        let images = b.images.iter().map(|&x| self.images[x as usize]).collect();
        Permutation { images }
    }

    pub fn checked_compose(&self, b: &Permutation) -> Result<Permutation, GroupError> {
        if self.degree() != b.degree() {
            return Err(GroupError::DegreeMismatch(self.degree(), b.degree()));
        }
        Ok(self.compose(b))
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `n * self * n^{-1}`: the relabeling of points by `n`.
    pub fn conjugate_by(&self, n: &Permutation) -> Permutation {
        n.compose(self).compose(&n.inverse())
    }

    pub fn order(&self) -> usize {
        self.cycle_type()
            .parts
            .iter()
            .fold(1usize, |acc, &(e, _)| num::integer::lcm(acc, e as usize))
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    /// Disjoint cycles (1-based), each rotated to start at its minimum,
    /// sorted by that minimum. Fixed points are omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            *counts.entry(len).or_insert(0) += 1;
        }
        CycleType {
            parts: counts.into_iter().collect(),
        }
    }

    /// 1-based image vector, the JSON wire form.
    pub fn images_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn raw_images(&self) -> &[u8] {
        &self.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (i, x) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.images_one_based().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(de)?;
        Permutation::from_images_one_based(&images).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Cycle type
// ---------------------------------------------------------------------------

/// Multiset of `(length, count)` pairs, including fixed points as length-1
/// cycles; sorted by length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    pub parts: Vec<(u32, u32)>,
}

impl CycleType {
    pub fn degree(&self) -> usize {
        self.parts.iter().map(|&(e, m)| (e * m) as usize).sum()
    }

    pub fn max_len(&self) -> u32 {
        self.parts.iter().map(|&(e, _)| e).max().unwrap_or(1)
    }

    /// True iff every cycle has length 1.
    pub fn is_trivial(&self) -> bool {
        self.parts.iter().all(|&(e, _)| e == 1)
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (e, m)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({e},{m})")?;
        }
        write!(f, "}}")
    }
}

// ---------------------------------------------------------------------------
// PermGroup
// ---------------------------------------------------------------------------

struct GroupInner {
    degree: usize,
    generators: Vec<Permutation>,
    elements: OnceCell<Vec<Permutation>>,
    element_set: OnceCell<HashSet<Permutation>>,
    classes: OnceCell<Vec<ConjugacyClass>>,
    hash: OnceCell<String>,
    mult_table: OnceCell<Arc<MulTable>>,
}

/// A finitely generated subgroup of `S_d`, immutable after construction.
///
/// Derived data (element list, conjugacy classes, canonical hash) is computed
/// lazily behind `OnceCell`s, so a `PermGroup` can be shared freely between
/// threads; cloning is cheap.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<GroupInner>,
}

#[derive(Clone)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub size: usize,
    pub element_order: usize,
}

impl PermGroup {
    /// Group closure of `gens` with the default order cap.
    pub fn generate(degree: usize, gens: &[Permutation]) -> Result<Self, GroupError> {
        Self::generate_with_cap(degree, gens, DEFAULT_ORDER_CAP)
    }

    pub fn generate_with_cap(
        degree: usize,
        gens: &[Permutation],
        cap: usize,
    ) -> Result<Self, GroupError> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch(degree, g.degree()));
            }
        }
        let g = PermGroup {
            inner: Arc::new(GroupInner {
                degree,
                generators: gens.iter().filter(|p| !p.is_identity()).cloned().collect(),
                elements: OnceCell::new(),
                element_set: OnceCell::new(),
                classes: OnceCell::new(),
                hash: OnceCell::new(),
                mult_table: OnceCell::new(),
            }),
        };
        g.close(cap)?;
        Ok(g)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generate(degree, &[]).expect("trivial group")
    }

    /// The full symmetric group, enumerated directly. Degrees up to 8.
    pub fn symmetric(degree: usize) -> Self {
        assert!(degree <= 8, "symmetric() supports degree <= 8");
        let mut elements = Vec::new();
        let mut idx: Vec<u8> = (0..degree as u8).collect();
        loop {
            elements.push(Permutation { images: idx.clone() });
            if !next_permutation(&mut idx) {
                break;
            }
        }
        elements.sort();
        let gens = if degree >= 2 {
            let mut t = Permutation::identity(degree);
            t.images.swap(0, 1);
            let cyc = Permutation {
                images: (0..degree as u8).map(|i| (i + 1) % degree as u8).collect(),
            };
            vec![t, cyc]
        } else {
            vec![]
        };
        let inner = GroupInner {
            degree,
            generators: gens,
            elements: OnceCell::new(),
            element_set: OnceCell::new(),
            classes: OnceCell::new(),
            hash: OnceCell::new(),
            mult_table: OnceCell::new(),
        };
        inner.elements.set(elements).ok();
        PermGroup { inner: Arc::new(inner) }
    }

    fn close(&self, cap: usize) -> Result<(), GroupError> {
        if self.inner.elements.get().is_some() {
            return Ok(());
        }
        let d = self.inner.degree;
        if d <= 8 {
            // packed closure: a permutation of up to 8 points fits in a u64
            let gens: Vec<u64> = self.inner.generators.iter().map(|g| pack(g)).collect();
            let mut set: HashSet<u64> = HashSet::new();
            let identity = pack(&Permutation::identity(d));
            set.insert(identity);
            let mut queue = vec![identity];
            while let Some(x) = queue.pop() {
                for &g in &gens {
                    let y = pack_compose(g, x, d);
                    if set.insert(y) {
                        if set.len() > cap {
                            return Err(GroupError::OrderCapExceeded { cap });
                        }
                        queue.push(y);
                    }
                }
            }
            let mut elements: Vec<Permutation> = set.into_iter().map(|p| unpack(p, d)).collect();
            elements.sort();
            self.inner.elements.set(elements).ok();
            return Ok(());
        }
        let mut set = HashSet::new();
        let mut queue = vec![Permutation::identity(d)];
        set.insert(Permutation::identity(d));
        while let Some(x) = queue.pop() {
            for g in &self.inner.generators {
                let y = g.compose(&x);
                if set.insert(y.clone()) {
                    if set.len() > cap {
                        return Err(GroupError::OrderCapExceeded { cap });
                    }
                    queue.push(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = set.into_iter().collect();
        elements.sort();
        self.inner.elements.set(elements).ok();
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    /// All elements, sorted lexicographically on image sequences.
    pub fn elements(&self) -> &[Permutation] {
        self.inner
            .elements
            .get()
            .expect("group was closed at construction")
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    fn element_set(&self) -> &HashSet<Permutation> {
        self.inner
            .element_set
            .get_or_init(|| self.elements().iter().cloned().collect())
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree() && self.element_set().contains(p)
    }

    pub fn is_subgroup_of(&self, ambient: &PermGroup) -> bool {
        self.degree() == ambient.degree() && self.generators().iter().all(|g| ambient.contains(g))
    }

    /// Content hash of the sorted element list; stable across runs, used as
    /// the cache key for derived per-group data.
    pub fn canonical_hash(&self) -> &str {
        self.inner.hash.get_or_init(|| {
            let mut h = Sha256::new();
            h.update([self.degree() as u8]);
            for e in self.elements() {
                h.update(e.raw_images());
            }
            let digest = h.finalize();
            let mut s = String::with_capacity(32);
            for b in digest.iter().take(16) {
                s.push_str(&format!("{b:02x}"));
            }
            s
        })
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        assert!(x >= 1 && x <= self.degree());
        let mut seen = vec![false; self.degree()];
        let mut queue = vec![(x - 1) as u8];
        seen[x - 1] = true;
        let mut out = vec![x];
        while let Some(p) = queue.pop() {
            for g in self.generators() {
                let q = g.apply0(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    queue.push(q);
                    out.push(q as usize + 1);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree() > 0 && self.orbit(1).len() == self.degree()
    }

    /// Stabilizer of the 1-based point `x`, as a subgroup handle.
    pub fn stabilizer(&self, x: usize) -> SubgroupHandle {
        assert!(x >= 1 && x <= self.degree(), "point out of range");
        let elems: Vec<Permutation> = self
            .elements()
            .iter()
            .filter(|p| p.image_of(x) == x)
            .cloned()
            .collect();
        let sub = PermGroup::from_known_elements(self.degree(), elems);
        SubgroupHandle {
            group: sub,
            parent: self.clone(),
        }
    }

    /// Build a group from a set already known to be closed under composition.
    /// A small generating set is extracted greedily so that later normalizer
    /// scans and closures stay cheap.
    pub(crate) fn from_known_elements(degree: usize, mut elems: Vec<Permutation>) -> PermGroup {
        elems.sort();
        elems.dedup();
        let mut gens: Vec<Permutation> = Vec::new();
        let mut closed: HashSet<Permutation> = HashSet::new();
        closed.insert(Permutation::identity(degree));
        for e in &elems {
            if closed.contains(e) {
                continue;
            }
            gens.push(e.clone());
            // re-close with the enlarged generating set
            let mut queue: Vec<Permutation> = closed.iter().cloned().collect();
            closed.insert(e.clone());
            queue.push(e.clone());
            while let Some(x) = queue.pop() {
                for g in &gens {
                    let y = g.compose(&x);
                    if closed.insert(y.clone()) {
                        queue.push(y);
                    }
                }
            }
            if closed.len() == elems.len() {
                break;
            }
        }
        let inner = GroupInner {
            degree,
            generators: gens,
            elements: OnceCell::new(),
            element_set: OnceCell::new(),
            classes: OnceCell::new(),
            hash: OnceCell::new(),
            mult_table: OnceCell::new(),
        };
        inner.elements.set(elems).ok();
        PermGroup { inner: Arc::new(inner) }
    }

    /// Conjugacy classes: identity class first, then ascending (size, representative).
    /// Representatives are the minimal elements of their classes.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        self.inner.classes.get_or_init(|| {
            let elements = self.elements();
            let mut unassigned: BTreeSet<Permutation> = elements.iter().cloned().collect();
            let mut classes = Vec::new();
            while let Some(rep) = unassigned.iter().next().cloned() {
                // orbit of rep under conjugation by generators
                let mut class = BTreeSet::new();
                let mut queue = vec![rep.clone()];
                class.insert(rep.clone());
                while let Some(x) = queue.pop() {
                    for g in self.generators() {
                        let y = x.conjugate_by(g);
                        if class.insert(y.clone()) {
                            queue.push(y);
                        }
                    }
                }
                for x in &class {
                    unassigned.remove(x);
                }
                let min = class.iter().next().cloned().unwrap();
                classes.push(ConjugacyClass {
                    element_order: min.order(),
                    size: class.len(),
                    representative: min,
                });
            }
            classes.sort_by(|a, b| {
                let ida = a.representative.is_identity();
                let idb = b.representative.is_identity();
                idb.cmp(&ida)
                    .then(a.size.cmp(&b.size))
                    .then(a.representative.cmp(&b.representative))
            });
            classes
        })
    }

    /// Elements of the conjugacy class with the given index.
    pub fn class_elements(&self, idx: usize) -> Vec<Permutation> {
        let rep = &self.conjugacy_classes()[idx].representative;
        let mut class = BTreeSet::new();
        let mut queue = vec![rep.clone()];
        class.insert(rep.clone());
        while let Some(x) = queue.pop() {
            for g in self.generators() {
                let y = x.conjugate_by(g);
                if class.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        class.into_iter().collect()
    }

    /// Index of the conjugacy class containing `g`.
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        if !self.contains(g) {
            return None;
        }
        let map = self.class_lookup();
        map.get(g).copied()
    }

    pub(crate) fn class_lookup(&self) -> HashMap<Permutation, usize> {
        let mut map = HashMap::with_capacity(self.order());
        for (i, _) in self.conjugacy_classes().iter().enumerate() {
            for e in self.class_elements(i) {
                map.insert(e, i);
            }
        }
        map
    }

    /// `N = {g in ambient : g H g^{-1} = H}` for `H = self`.
    pub fn normalizer_in(&self, ambient: &PermGroup) -> Result<SubgroupHandle, GroupError> {
        if !self.is_subgroup_of(ambient) {
            return Err(GroupError::NotASubgroup);
        }
        let elems: Vec<Permutation> = ambient
            .elements()
            .iter()
            .filter(|n| {
                self.generators()
                    .iter()
                    .all(|h| self.contains(&h.conjugate_by(n)))
            })
            .cloned()
            .collect();
        Ok(SubgroupHandle {
            group: PermGroup::from_known_elements(self.degree(), elems),
            parent: ambient.clone(),
        })
    }

    pub fn centralizer_in(&self, ambient: &PermGroup) -> PermGroup {
        let elems: Vec<Permutation> = ambient
            .elements()
            .iter()
            .filter(|n| self.generators().iter().all(|h| &h.conjugate_by(n) == h))
            .cloned()
            .collect();
        PermGroup::from_known_elements(self.degree(), elems)
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        ambient.elements().iter().all(|n| {
            self.generators()
                .iter()
                .all(|h| self.contains(&h.conjugate_by(n)))
        })
    }

    fn mult_table(&self) -> Arc<MulTable> {
        self.inner
            .mult_table
            .get_or_init(|| Arc::new(MulTable::build(self)))
            .clone()
    }

    /// All subgroups, by bottom-up closure: seed with the cyclic subgroups of
    /// prime-power order, then repeatedly adjoin single elements; dedup by
    /// element set. `up_to_conjugacy` keeps one representative per class.
    ///
    /// All the work happens on a precomputed multiplication table, with
    /// subgroups held as bitsets of element indices.
    pub fn subgroups(&self, mode: SubgroupMode) -> Vec<SubgroupHandle> {
        let table = self.mult_table();
        let bottom = table.closure(&[]);
        let all_sets = table.lattice_above(&bottom);
        let mut all: Vec<SubgroupHandle> = all_sets
            .into_iter()
            .map(|bits| SubgroupHandle {
                group: table.to_group(self.degree(), &bits),
                parent: self.clone(),
            })
            .collect();
        all.sort_by(|a, b| {
            a.group
                .order()
                .cmp(&b.group.order())
                .then_with(|| a.group.elements().cmp(b.group.elements()))
        });
        match mode {
            SubgroupMode::All => all,
            SubgroupMode::UpToConjugacy => {
                let mut reps: Vec<SubgroupHandle> = Vec::new();
                let mut seen: HashSet<Vec<u64>> = HashSet::new();
                for h in all {
                    let bits = table.bits_of(&h.group);
                    if seen.contains(&bits) {
                        continue;
                    }
                    for n in 0..table.n {
                        seen.insert(table.conjugate_bits(&bits, n as u32));
                    }
                    reps.push(h);
                }
                reps
            }
        }
    }

    /// Subgroups `K` with `bottom <= K <= self`, found by adjoining cosets.
    pub fn subgroups_containing(&self, bottom: &PermGroup) -> Vec<PermGroup> {
        let table = self.mult_table();
        let seed = table.bits_of(bottom);
        table
            .lattice_above(&seed)
            .into_iter()
            .map(|bits| table.to_group(self.degree(), &bits))
            .collect()
    }

    /// Double cosets `A g B` for `A, B <= self`: canonical (minimal) coset
    /// representatives, in increasing order.
    pub fn double_cosets(
        &self,
        a: &PermGroup,
        b: &PermGroup,
    ) -> Result<Vec<Permutation>, GroupError> {
        if !a.is_subgroup_of(self) || !b.is_subgroup_of(self) {
            return Err(GroupError::NotASubgroup);
        }
        let mut unvisited: BTreeSet<Permutation> = self.elements().iter().cloned().collect();
        let mut reps = Vec::new();
        while let Some(g) = unvisited.iter().next().cloned() {
            reps.push(g.clone());
            for x in a.elements() {
                let xg = x.compose(&g);
                for y in b.elements() {
                    unvisited.remove(&xg.compose(y));
                }
            }
        }
        Ok(reps)
    }

    /// The left-multiplication action on the cosets `self/H`.
    pub fn coset_action(&self, h: &PermGroup) -> Result<CosetAction, GroupError> {
        if !h.is_subgroup_of(self) {
            return Err(GroupError::NotASubgroup);
        }
        // cosets keyed by their minimal element; the identity coset is H
        // itself, whose minimal element is the identity, hence label 1.
        let mut coset_of: HashMap<Permutation, usize> = HashMap::with_capacity(self.order());
        let mut reps: Vec<Permutation> = Vec::new();
        let mut cosets: Vec<Vec<Permutation>> = Vec::new();
        let mut all: BTreeSet<Permutation> = self.elements().iter().cloned().collect();
        while let Some(g) = all.iter().next().cloned() {
            let mut coset: Vec<Permutation> =
                h.elements().iter().map(|x| g.compose(x)).collect();
            coset.sort();
            for e in &coset {
                all.remove(e);
            }
            reps.push(coset[0].clone());
            cosets.push(coset);
        }
        let order: Vec<usize> = {
            let mut idx: Vec<usize> = (0..reps.len()).collect();
            idx.sort_by(|&i, &j| reps[i].cmp(&reps[j]));
            idx
        };
        let mut sorted_reps = Vec::with_capacity(reps.len());
        for (label, &i) in order.iter().enumerate() {
            sorted_reps.push(reps[i].clone());
            for e in &cosets[i] {
                coset_of.insert(e.clone(), label);
            }
        }
        Ok(CosetAction {
            group: self.clone(),
            reps: sorted_reps,
            coset_of,
        })
    }

    /// Searches `ambient` for `g` with `g H1 g^{-1} = H2`.
    pub fn are_conjugate_subgroups(
        ambient: &PermGroup,
        h1: &PermGroup,
        h2: &PermGroup,
    ) -> Option<Permutation> {
        if h1.order() != h2.order() {
            return None;
        }
        ambient
            .elements()
            .iter()
            .find(|n| {
                h1.generators()
                    .iter()
                    .all(|g| h2.contains(&g.conjugate_by(n)))
            })
            .cloned()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.degree() == other.degree() && self.elements() == other.elements())
    }
}
impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree={}, order={})", self.degree(), self.order())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubgroupMode {
    All,
    UpToConjugacy,
}

// ---------------------------------------------------------------------------
// SubgroupHandle
// ---------------------------------------------------------------------------

/// A subgroup together with its ambient parent.
#[derive(Clone)]
pub struct SubgroupHandle {
    pub group: PermGroup,
    pub parent: PermGroup,
}

impl SubgroupHandle {
    pub fn new(group: PermGroup, parent: PermGroup) -> Result<Self, GroupError> {
        if !group.is_subgroup_of(&parent) {
            return Err(GroupError::NotASubgroup);
        }
        Ok(SubgroupHandle { group, parent })
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.group.order()
    }

    pub fn normalizer(&self) -> SubgroupHandle {
        self.group
            .normalizer_in(&self.parent)
            .expect("handle invariant: group <= parent")
    }
}

impl fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SubgroupHandle(order={} in order={})",
            self.group.order(),
            self.parent.order()
        )
    }
}

// ---------------------------------------------------------------------------
// Coset action
// ---------------------------------------------------------------------------

/// The homomorphism `G -> Sym(G/H)` by left multiplication. Cosets are
/// labeled 1.. in increasing order of their minimal elements, so the coset of
/// the identity is always point 1.
pub struct CosetAction {
    group: PermGroup,
    reps: Vec<Permutation>,
    coset_of: HashMap<Permutation, usize>,
}

impl CosetAction {
    pub fn point_count(&self) -> usize {
        self.reps.len()
    }

    pub fn coset_representatives(&self) -> &[Permutation] {
        &self.reps
    }

    /// The permutation of `G/H` induced by left multiplication by `g`.
    pub fn act(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0u8; self.reps.len()];
        for (i, rep) in self.reps.iter().enumerate() {
            let target = g.compose(rep);
            images[i] = self.coset_of[&target] as u8;
        }
        Permutation { images }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }
}

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

// ---------------------------------------------------------------------------
// Multiplication-table lattice engine
// ---------------------------------------------------------------------------

/// The full multiplication table of a (small) group, with subgroups handled
/// as bitsets of element indices. This is what makes whole-lattice
/// computations cheap: closures become index lookups.
pub(crate) struct MulTable {
    n: usize,
    words: usize,
    elems: Vec<Permutation>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    /// element orders, for the prime-power cyclic seeds
    orders: Vec<u32>,
}

impl MulTable {
    fn build(g: &PermGroup) -> MulTable {
        let elems = g.elements().to_vec();
        let n = elems.len();
        let mut index: HashMap<&Permutation, u32> = HashMap::with_capacity(n);
        for (i, e) in elems.iter().enumerate() {
            index.insert(e, i as u32);
        }
        let mut mult = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mult[i * n + j] = index[&a.compose(b)];
            }
        }
        let inv: Vec<u32> = elems.iter().map(|e| index[&e.inverse()]).collect();
        let orders: Vec<u32> = elems.iter().map(|e| e.order() as u32).collect();
        MulTable {
            n,
            words: n.div_ceil(64),
            elems,
            mult,
            inv,
            orders,
        }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.n + b as usize]
    }

    fn bits_of(&self, h: &PermGroup) -> Vec<u64> {
        let mut bits = vec![0u64; self.words];
        for e in h.elements() {
            let i = self
                .elems
                .binary_search(e)
                .expect("subgroup element belongs to the parent");
            bits[i / 64] |= 1 << (i % 64);
        }
        bits
    }

    fn to_group(&self, degree: usize, bits: &[u64]) -> PermGroup {
        let elems: Vec<Permutation> = iter_bits(bits)
            .map(|i| self.elems[i as usize].clone())
            .collect();
        PermGroup::from_known_elements(degree, elems)
    }

    /// Closure of a set of generator indices.
    fn closure(&self, gens: &[u32]) -> Vec<u64> {
        let mut bits = vec![0u64; self.words];
        let id = self
            .elems
            .binary_search(&Permutation::identity(self.elems[0].degree()))
            .expect("identity present");
        bits[id / 64] |= 1 << (id % 64);
        let mut queue = vec![id as u32];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(g, x);
                let (w, m) = (y as usize / 64, 1u64 << (y % 64));
                if bits[w] & m == 0 {
                    bits[w] |= m;
                    queue.push(y);
                }
            }
        }
        bits
    }

    fn conjugate_bits(&self, bits: &[u64], n: u32) -> Vec<u64> {
        let ninv = self.inv[n as usize];
        let mut out = vec![0u64; self.words];
        for h in iter_bits(bits) {
            let c = self.mul(self.mul(n, h), ninv);
            out[c as usize / 64] |= 1 << (c % 64);
        }
        out
    }

    /// All subgroups containing the given one, by coset-representative
    /// adjunction, together with small generating sets carried along.
    fn lattice_above(&self, bottom: &[u64]) -> Vec<Vec<u64>> {
        let bottom_gens = small_gens_of(self, bottom);
        let mut known: HashSet<Vec<u64>> = HashSet::new();
        known.insert(bottom.to_vec());
        let mut work: Vec<(Vec<u64>, Vec<u32>)> = vec![(bottom.to_vec(), bottom_gens)];
        // prime-power cyclic seeds when starting from the trivial group
        if count_bits(bottom) == 1 {
            for x in 0..self.n as u32 {
                let o = self.orders[x as usize] as usize;
                if o < 2 || !is_prime_power(o) {
                    continue;
                }
                let bits = self.closure(&[x]);
                if known.insert(bits.clone()) {
                    work.push((bits, vec![x]));
                }
            }
        }
        while let Some((bits, gens)) = work.pop() {
            if count_bits(&bits) == self.n {
                continue;
            }
            let mut covered = bits.clone();
            for g in 0..self.n as u32 {
                let (w, m) = (g as usize / 64, 1u64 << (g % 64));
                if covered[w] & m != 0 {
                    continue;
                }
                // mark the whole right coset Hg
                for h in iter_bits(&bits) {
                    let y = self.mul(h, g);
                    covered[y as usize / 64] |= 1 << (y % 64);
                }
                let mut new_gens = gens.clone();
                new_gens.push(g);
                let sub = self.closure(&new_gens);
                if known.insert(sub.clone()) {
                    let sg = small_gens_of(self, &sub);
                    work.push((sub, sg));
                }
            }
        }
        let mut out: Vec<Vec<u64>> = known.into_iter().collect();
        out.sort_by_key(|b| (count_bits(b), b.clone()));
        out
    }
}

fn iter_bits(bits: &[u64]) -> impl Iterator<Item = u32> + '_ {
    bits.iter().enumerate().flat_map(|(w, &word)| {
        (0..64)
            .filter(move |b| word & (1 << b) != 0)
            .map(move |b| (w * 64 + b) as u32)
    })
}

fn count_bits(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

/// Greedy small generating set for a subgroup given as a bitset.
fn small_gens_of(table: &MulTable, bits: &[u64]) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    let mut closed = table.closure(&gens);
    for x in iter_bits(bits) {
        let (w, m) = (x as usize / 64, 1u64 << (x % 64));
        if closed[w] & m != 0 {
            continue;
        }
        gens.push(x);
        closed = table.closure(&gens);
        if closed == bits {
            break;
        }
    }
    gens
}

/// Pack images into a u64, one byte per point (degree <= 8 only).
#[inline]
fn pack(p: &Permutation) -> u64 {
    let mut out = 0u64;
    for (i, &x) in p.images.iter().enumerate() {
        out |= (x as u64) << (8 * i);
    }
    out
}

#[inline]
fn unpack(p: u64, degree: usize) -> Permutation {
    Permutation {
        images: (0..degree).map(|i| ((p >> (8 * i)) & 0xff) as u8).collect(),
    }
}

/// `(a*b)(x) = a(b(x))` on packed permutations.
#[inline]
fn pack_compose(a: u64, b: u64, degree: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..degree {
        let bi = (b >> (8 * i)) & 0xff;
        let abi = (a >> (8 * bi)) & 0xff;
        out |= abi << (8 * i);
    }
    out
}

fn next_permutation(arr: &mut [u8]) -> bool {
    let n = arr.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

fn is_prime_power(mut n: usize) -> bool {
    if n < 2 {
        return false;
    }
    for p in 2..=n {
        if p * p > n {
            return n > 1;
        }
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
    }
    true
}

