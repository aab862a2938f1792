//! Exact complex character tables via the Dixon-Schneider method.
//!
//! Characters are found as common eigenvectors of the class-multiplication
//! matrices over a prime field `F_p` with `p = 1 (mod exponent(G))` and
//! `p > 2 sqrt(|G|)`, then lifted to exact cyclotomic values through the
//! discrete-Fourier multiplicity formula. Both orthogonality relations are
//! verified on every constructed table; a failure aborts construction rather
//! than returning silently wrong data.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{rat, CyclotomicNumber, PrimeFieldElement};
use crate::perm::{PermGroup, Permutation};

use num::Signed;

#[derive(Debug, Error)]
pub enum ChartabError {
    #[error("group order {0} exceeds the character-table cap {1}")]
    OrderCap(usize, usize),
    #[error("element does not belong to the group")]
    NotAMember,
    #[error("character table inconsistency: {0}")]
    Inconsistent(String),
}

/// Hard cap for table construction. Covers the full symmetric group on 8
/// points, whose table drives the count-bound pruning of the tuple search.
pub const TABLE_ORDER_CAP: usize = 50_000;

#[derive(Clone, Serialize)]
pub struct ClassInfo {
    pub representative: Permutation,
    pub size: usize,
    pub element_order: usize,
}

/// Exact character table. Classes come in the canonical group order
/// (identity first, then ascending size / representative); characters are
/// sorted by degree, trivial character first, ties broken by the value
/// vectors under the structural cyclotomic order.
pub struct CharacterTable {
    group: PermGroup,
    classes: Vec<ClassInfo>,
    class_lookup: HashMap<Permutation, usize>,
    inverse_class: Vec<usize>,
    /// `power_map[k][t]` = class index of `rep_k^t`, `0 <= t < order(rep_k)`.
    power_map: Vec<Vec<usize>>,
    characters: Vec<Vec<CyclotomicNumber>>,
    degrees: Vec<u64>,
}

static TABLE_CACHE: Lazy<Mutex<HashMap<String, Arc<CharacterTable>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

static DISK_CACHE_DIR: Lazy<Mutex<Option<std::path::PathBuf>>> = Lazy::new(|| Mutex::new(None));

/// Cache blob format version; bump on incompatible changes.
pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Point the character-table machinery at an on-disk cache directory of
/// content-addressed JSON blobs. Safe to delete at any time.
pub fn set_cache_dir(dir: Option<std::path::PathBuf>) {
    *DISK_CACHE_DIR.lock().unwrap() = dir;
}

#[derive(Serialize, serde::Deserialize)]
struct TableWire {
    version: u32,
    group_order: usize,
    characters: Vec<Vec<CyclotomicNumber>>,
    degrees: Vec<u64>,
}

impl CharacterTable {
    /// The table for `g`, served from a process-wide cache keyed by the
    /// canonical group hash, with an optional content-addressed disk cache
    /// behind it.
    pub fn for_group(g: &PermGroup) -> Result<Arc<CharacterTable>, ChartabError> {
        let key = g.canonical_hash().to_string();
        if let Some(t) = TABLE_CACHE.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let disk = DISK_CACHE_DIR.lock().unwrap().clone();
        if let Some(dir) = &disk {
            if let Some(table) = Self::load_from_disk(g, dir, &key) {
                let table = Arc::new(table);
                TABLE_CACHE.lock().unwrap().insert(key, table.clone());
                return Ok(table);
            }
        }
        let table = Arc::new(Self::build(g)?);
        if let Some(dir) = &disk {
            table.store_to_disk(dir, &key);
        }
        TABLE_CACHE.lock().unwrap().insert(key, table.clone());
        Ok(table)
    }

    fn load_from_disk(g: &PermGroup, dir: &std::path::Path, key: &str) -> Option<CharacterTable> {
        let path = dir.join(format!("chartab-{key}.json"));
        let data = std::fs::read_to_string(path).ok()?;
        let wire: TableWire = serde_json::from_str(&data).ok()?;
        if wire.version != CACHE_FORMAT_VERSION || wire.group_order != g.order() {
            return None;
        }
        let table = Self::assemble(g, wire.characters, wire.degrees).ok()?;
        // a stale or corrupted blob fails verification and is rebuilt
        table.verify().ok()?;
        Some(table)
    }

    fn store_to_disk(&self, dir: &std::path::Path, key: &str) {
        let wire = TableWire {
            version: CACHE_FORMAT_VERSION,
            group_order: self.group.order(),
            characters: self.characters.clone(),
            degrees: self.degrees.clone(),
        };
        if std::fs::create_dir_all(dir).is_ok() {
            if let Ok(json) = serde_json::to_string(&wire) {
                let _ = std::fs::write(dir.join(format!("chartab-{key}.json")), json);
            }
        }
    }

    /// Rebuild the cheap per-group structure around externally supplied
    /// character values.
    fn assemble(
        group: &PermGroup,
        characters: Vec<Vec<CyclotomicNumber>>,
        degrees: Vec<u64>,
    ) -> Result<CharacterTable, ChartabError> {
        let classes: Vec<ClassInfo> = group
            .conjugacy_classes()
            .iter()
            .map(|c| ClassInfo {
                representative: c.representative.clone(),
                size: c.size,
                element_order: c.element_order,
            })
            .collect();
        if characters.len() != classes.len() {
            return Err(ChartabError::Inconsistent("cached table shape mismatch".into()));
        }
        let class_lookup = group.class_lookup();
        let inverse_class: Vec<usize> = classes
            .iter()
            .map(|c| class_lookup[&c.representative.inverse()])
            .collect();
        let power_map: Vec<Vec<usize>> = classes
            .iter()
            .map(|c| {
                let e = c.element_order;
                let mut x = Permutation::identity(group.degree());
                let mut pm = Vec::with_capacity(e);
                for _ in 0..e {
                    pm.push(class_lookup[&x]);
                    x = x.compose(&c.representative);
                }
                pm
            })
            .collect();
        Ok(CharacterTable {
            group: group.clone(),
            classes,
            class_lookup,
            inverse_class,
            power_map,
            characters,
            degrees,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn characters(&self) -> &[Vec<CyclotomicNumber>] {
        &self.characters
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn value(&self, chi: usize, class: usize) -> &CyclotomicNumber {
        &self.characters[chi][class]
    }

    /// Class index of an arbitrary group element.
    pub fn class_of(&self, g: &Permutation) -> Result<usize, ChartabError> {
        self.class_lookup
            .get(g)
            .copied()
            .ok_or(ChartabError::NotAMember)
    }

    pub fn power_class(&self, class: usize, k: usize) -> usize {
        let pm = &self.power_map[class];
        pm[k % pm.len()]
    }

    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse_class[class]
    }

    /// Character value at an element (rather than a class index).
    pub fn value_at(&self, chi: usize, g: &Permutation) -> Result<&CyclotomicNumber, ChartabError> {
        Ok(&self.characters[chi][self.class_of(g)?])
    }

    /// The multiplicities `(N_0, ..., N_{e-1})` of the eigenvalues
    /// `zeta_e^alpha` of `g` acting in the irreducible representation with
    /// character `chi`; `e = order(g)`. Computed by the exact DFT
    /// `N_alpha = (1/e) sum_k chi(g^k) zeta_e^{-alpha k}`.
    pub fn eigenvalue_multiplicities(
        &self,
        chi: usize,
        g: &Permutation,
    ) -> Result<Vec<u64>, ChartabError> {
        let e = g.order();
        let base = self.class_of(g)?;
        let _ = base;
        // character values along the cyclic group generated by g
        let mut vals = Vec::with_capacity(e);
        let mut x = Permutation::identity(g.degree());
        for _ in 0..e {
            vals.push(self.characters[chi][self.class_of(&x)?].clone());
            x = x.compose(g);
        }
        let mut out = Vec::with_capacity(e);
        let mut total = 0u64;
        for alpha in 0..e {
            let mut acc = CyclotomicNumber::zero();
            for (k, v) in vals.iter().enumerate() {
                let twist = CyclotomicNumber::root_of_unity(
                    e as u32,
                    -((alpha * k) as i64),
                )
                .map_err(|e| ChartabError::Inconsistent(e.to_string()))?;
                acc = acc.add(&v.mul(&twist));
            }
            let acc = acc
                .div_rational(&rat(e as i64))
                .map_err(|e| ChartabError::Inconsistent(e.to_string()))?;
            let n = acc.as_integer().map_err(|_| {
                ChartabError::Inconsistent(format!(
                    "eigenvalue multiplicity not an integer: {acc}"
                ))
            })?;
            if n.is_negative() {
                return Err(ChartabError::Inconsistent(
                    "negative eigenvalue multiplicity".into(),
                ));
            }
            let n: u64 = n.to_string().parse().unwrap();
            total += n;
            out.push(n);
        }
        if total != self.degrees[chi] {
            return Err(ChartabError::Inconsistent(format!(
                "eigenvalue multiplicities sum to {total}, expected degree {}",
                self.degrees[chi]
            )));
        }
        Ok(out)
    }

    /// Dimension of the `H`-invariant subspace of the irreducible `chi`:
    /// `(1/|H|) sum_{h in H} chi(h)`.
    pub fn fixed_dim(&self, chi: usize, h: &PermGroup) -> Result<u64, ChartabError> {
        let mut acc = CyclotomicNumber::zero();
        for e in h.elements() {
            acc = acc.add(&self.characters[chi][self.class_of(e)?]);
        }
        let acc = acc
            .div_rational(&rat(h.order() as i64))
            .map_err(|e| ChartabError::Inconsistent(e.to_string()))?;
        let n = acc
            .as_integer()
            .map_err(|_| ChartabError::Inconsistent(format!("fixed dimension not integral: {acc}")))?;
        if n.is_negative() {
            return Err(ChartabError::Inconsistent(
                "negative fixed dimension".into(),
            ));
        }
        Ok(n.to_string().parse().unwrap())
    }

    /// JSON export for external verification.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group_order": self.group.order(),
            "degree": self.group.degree(),
            "classes": self.classes.iter().map(|c| serde_json::json!({
                "representative": c.representative,
                "size": c.size,
                "element_order": c.element_order,
            })).collect::<Vec<_>>(),
            "characters": self.characters,
            "degrees": self.degrees,
        })
    }

    // -- construction --------------------------------------------------------

    fn build(group: &PermGroup) -> Result<CharacterTable, ChartabError> {
        let order = group.order();
        if order > TABLE_ORDER_CAP {
            return Err(ChartabError::OrderCap(order, TABLE_ORDER_CAP));
        }
        let classes: Vec<ClassInfo> = group
            .conjugacy_classes()
            .iter()
            .map(|c| ClassInfo {
                representative: c.representative.clone(),
                size: c.size,
                element_order: c.element_order,
            })
            .collect();
        let r = classes.len();
        let class_lookup = group.class_lookup();

        let inverse_class: Vec<usize> = classes
            .iter()
            .map(|c| class_lookup[&c.representative.inverse()])
            .collect();
        let power_map: Vec<Vec<usize>> = classes
            .iter()
            .map(|c| {
                let e = c.element_order;
                let mut x = Permutation::identity(group.degree());
                let mut pm = Vec::with_capacity(e);
                for _ in 0..e {
                    pm.push(class_lookup[&x]);
                    x = x.compose(&c.representative);
                }
                pm
            })
            .collect();

        // exponent and the working prime
        let exponent = classes
            .iter()
            .fold(1usize, |acc, c| num::integer::lcm(acc, c.element_order));
        let p = working_prime(exponent as u64, order as u64);
        let z = element_of_order(p, exponent as u64);

        // class multiplication coefficients a[i][j][k] mod p,
        // as matrices A_i with (A_i)[j][k] = a_{ijk}
        let mut mats = vec![vec![vec![0u64; r]; r]; r];
        for (k, ck) in classes.iter().enumerate() {
            let zk = &ck.representative;
            for x in group.elements() {
                let i = class_lookup[x];
                let y = x.inverse().compose(zk);
                let j = class_lookup[&y];
                mats[i][j][k] += 1;
            }
        }
        for mi in mats.iter_mut() {
            for row in mi.iter_mut() {
                for v in row.iter_mut() {
                    *v %= p;
                }
            }
        }

        // split the r-dimensional space into common eigenspaces
        let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity_basis(r)];
        let mut matrix_order: Vec<usize> = (1..r).collect();
        matrix_order.sort_by_key(|&i| (classes[i].size, i));
        for &mi in &matrix_order {
            if spaces.iter().all(|s| s.len() == 1) {
                break;
            }
            let mut next = Vec::new();
            for basis in spaces {
                if basis.len() == 1 {
                    next.push(basis);
                    continue;
                }
                next.extend(split_space(&mats[mi], &basis, p));
            }
            spaces = next;
        }
        if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
            return Err(ChartabError::Inconsistent(format!(
                "eigenspace splitting produced {} spaces for {} classes",
                spaces.len(),
                r
            )));
        }

        // recover mod-p characters
        let inv_mod = |v: u64| PrimeFieldElement { value: v % p, prime: p }.inv().value;
        let mut theta_rows: Vec<Vec<u64>> = Vec::with_capacity(r);
        let mut degrees_raw: Vec<u64> = Vec::with_capacity(r);
        for space in &spaces {
            let mut w = space[0].clone();
            if w[0] == 0 {
                return Err(ChartabError::Inconsistent(
                    "eigenvector vanishes at the identity class".into(),
                ));
            }
            let w0inv = inv_mod(w[0]);
            for v in w.iter_mut() {
                *v = *v * w0inv % p;
            }
            // d^2 = |G| / sum_k w_k w_{k^{-1}} / |C_k|
            let mut s = 0u64;
            for k in 0..r {
                let term = w[k] as u128 * w[inverse_class[k]] as u128 % p as u128;
                let term = term * inv_mod(classes[k].size as u64 % p) as u128 % p as u128;
                s = ((s as u128 + term) % p as u128) as u64;
            }
            if s == 0 {
                return Err(ChartabError::Inconsistent("degree recovery failed".into()));
            }
            let d2 = (order as u64 % p) as u128 * inv_mod(s) as u128 % p as u128;
            let mut degree = 0u64;
            let mut dd = 1u64;
            while dd * dd <= order as u64 {
                if (dd * dd) % p == d2 as u64 && order as u64 % dd == 0 {
                    degree = dd;
                    break;
                }
                dd += 1;
            }
            if degree == 0 {
                return Err(ChartabError::Inconsistent(
                    "no admissible degree matches the eigenvector".into(),
                ));
            }
            // theta(g_k) = d * w_k / |C_k|
            let theta: Vec<u64> = (0..r)
                .map(|k| {
                    let t = degree as u128 * w[k] as u128 % p as u128;
                    (t * inv_mod(classes[k].size as u64 % p) as u128 % p as u128) as u64
                })
                .collect();
            theta_rows.push(theta);
            degrees_raw.push(degree);
        }

        // lift to cyclotomics
        let mut characters_raw: Vec<Vec<CyclotomicNumber>> = Vec::with_capacity(r);
        for (row, theta) in theta_rows.iter().enumerate() {
            let d = degrees_raw[row];
            let mut vals = Vec::with_capacity(r);
            for k in 0..r {
                let e = classes[k].element_order as u64;
                let xi = PrimeFieldElement {
                    value: z,
                    prime: p,
                }
                .pow(exponent as u64 / e);
                let einv = inv_mod(e % p);
                let mut value = CyclotomicNumber::zero();
                for alpha in 0..e {
                    let mut acc = 0u128;
                    for t in 0..e {
                        let th = theta[power_map[k][t as usize]];
                        // xi^{-alpha t}
                        let tw = xi.pow(alpha * t % e).inv().value;
                        acc = (acc + th as u128 * tw as u128) % p as u128;
                    }
                    let m_alpha = (acc * einv as u128 % p as u128) as u64;
                    if m_alpha > d {
                        return Err(ChartabError::Inconsistent(format!(
                            "lifted multiplicity {m_alpha} exceeds degree {d}"
                        )));
                    }
                    if m_alpha > 0 {
                        let root = CyclotomicNumber::root_of_unity(e as u32, alpha as i64)
                            .map_err(|e| ChartabError::Inconsistent(e.to_string()))?;
                        value = value.add(&root.scale(&rat(m_alpha as i64)));
                    }
                }
                vals.push(value);
            }
            characters_raw.push(vals);
        }

        // canonical ordering: trivial character first, then by degree and values
        let mut idx: Vec<usize> = (0..r).collect();
        let is_trivial =
            |row: &Vec<CyclotomicNumber>| row.iter().all(|v| *v == CyclotomicNumber::one());
        idx.sort_by(|&a, &b| {
            let ta = is_trivial(&characters_raw[a]);
            let tb = is_trivial(&characters_raw[b]);
            tb.cmp(&ta)
                .then(degrees_raw[a].cmp(&degrees_raw[b]))
                .then_with(|| characters_raw[a].cmp(&characters_raw[b]))
        });
        let characters: Vec<Vec<CyclotomicNumber>> =
            idx.iter().map(|&i| characters_raw[i].clone()).collect();
        let degrees: Vec<u64> = idx.iter().map(|&i| degrees_raw[i]).collect();

        let table = CharacterTable {
            group: group.clone(),
            classes,
            class_lookup,
            inverse_class,
            power_map,
            characters,
            degrees,
        };
        table.verify()?;
        Ok(table)
    }

    /// Invariants checked on every constructed table.
    fn verify(&self) -> Result<(), ChartabError> {
        let r = self.classes.len();
        let order = self.group.order() as u64;
        if self.characters.len() != r {
            return Err(ChartabError::Inconsistent(
                "character count differs from class count".into(),
            ));
        }
        // exactly one trivial character, at index 0
        let trivial_count = self
            .characters
            .iter()
            .filter(|row| row.iter().all(|v| *v == CyclotomicNumber::one()))
            .count();
        if trivial_count != 1 || !self.characters[0].iter().all(|v| *v == CyclotomicNumber::one()) {
            return Err(ChartabError::Inconsistent(
                "trivial character missing or misplaced".into(),
            ));
        }
        // sum of squared degrees; degree divides order
        let mut sum = 0u64;
        for (i, &d) in self.degrees.iter().enumerate() {
            if order % d != 0 {
                return Err(ChartabError::Inconsistent(format!(
                    "degree {d} does not divide the group order"
                )));
            }
            let at_identity = self.characters[i][0]
                .as_integer()
                .map_err(|_| ChartabError::Inconsistent("non-integral degree".into()))?;
            if at_identity != num::BigInt::from(d) {
                return Err(ChartabError::Inconsistent(
                    "character value at identity differs from recovered degree".into(),
                ));
            }
            sum += d * d;
        }
        if sum != order {
            return Err(ChartabError::Inconsistent(format!(
                "sum of squared degrees {sum} != |G| = {order}"
            )));
        }
        // first orthogonality
        for a in 0..r {
            for b in a..r {
                let mut acc = CyclotomicNumber::zero();
                for k in 0..r {
                    let term = self.characters[a][k]
                        .mul(&self.characters[b][k].conjugate())
                        .scale(&rat(self.classes[k].size as i64));
                    acc = acc.add(&term);
                }
                let expected = if a == b { rat(order as i64) } else { rat(0) };
                if acc != CyclotomicNumber::from_rational(expected) {
                    return Err(ChartabError::Inconsistent(format!(
                        "row orthogonality fails for characters {a}, {b}"
                    )));
                }
            }
        }
        // second (column) orthogonality
        for k in 0..r {
            for l in k..r {
                let mut acc = CyclotomicNumber::zero();
                for a in 0..r {
                    acc = acc.add(&self.characters[a][k].mul(&self.characters[a][l].conjugate()));
                }
                let expected = if k == l {
                    rat((order as usize / self.classes[k].size) as i64)
                } else {
                    rat(0)
                };
                if acc != CyclotomicNumber::from_rational(expected) {
                    return Err(ChartabError::Inconsistent(format!(
                        "column orthogonality fails for classes {k}, {l}"
                    )));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// F_p linear algebra for the eigenspace splitting
// ---------------------------------------------------------------------------

fn identity_basis(r: usize) -> Vec<Vec<u64>> {
    (0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()
}

/// Split `basis` (rows spanning an A-invariant subspace) into the eigenspaces
/// of `a` restricted to it.
fn split_space(a: &[Vec<u64>], raw_basis: &[Vec<u64>], p: u64) -> Vec<Vec<Vec<u64>>> {
    let r = raw_basis[0].len();
    // work with the reduced echelon form of the basis throughout, so that
    // coordinates from `express` refer to the same rows we map back through
    let (echelon, pivots) = row_reduce(raw_basis.to_vec(), p);
    let basis: Vec<Vec<u64>> = echelon
        .iter()
        .take(pivots.len())
        .cloned()
        .collect();
    let s = basis.len();
    let echelon = basis.clone();
    // restricted matrix: row t = coords of A * basis[t]
    let mut restricted = vec![vec![0u64; s]; s];
    for (t, bvec) in basis.iter().enumerate() {
        let mut img = vec![0u64; r];
        for (j, row) in a.iter().enumerate() {
            let mut acc = 0u128;
            for k in 0..r {
                acc += row[k] as u128 * bvec[k] as u128;
            }
            img[j] = (acc % p as u128) as u64;
        }
        let coords = express(&echelon, &pivots, &img, p)
            .expect("class matrices preserve the common eigenspaces");
        restricted[t] = coords;
    }
    // transpose convention: we want M with M * x = coords of A*(x in basis);
    // restricted[t] currently holds coords of A*b_t, i.e. columns of M.
    let mut m = vec![vec![0u64; s]; s];
    for t in 0..s {
        for u in 0..s {
            m[u][t] = restricted[t][u];
        }
    }
    let eigenvalues = matrix_eigenvalues(&m, p);
    let mut out = Vec::new();
    for lam in eigenvalues {
        let mut shifted = m.clone();
        for i in 0..s {
            shifted[i][i] = (shifted[i][i] + p - lam) % p;
        }
        let ns = nullspace(&shifted, p);
        if ns.is_empty() {
            continue;
        }
        // map coordinate vectors back through the basis
        let sub: Vec<Vec<u64>> = ns
            .iter()
            .map(|coords| {
                let mut v = vec![0u64; r];
                for (t, &c) in coords.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for k in 0..r {
                        let acc = c as u128 * basis[t][k] as u128 % p as u128;
                        v[k] = ((v[k] as u128 + acc) % p as u128) as u64;
                    }
                }
                v
            })
            .collect();
        out.push(sub);
    }
    out
}

/// Eigenvalues of an `s x s` matrix over `F_p`, found as the roots of the
/// characteristic polynomial (computed by interpolation).
fn matrix_eigenvalues(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let s = m.len();
    // evaluate det(M - x I) at s+1 points, interpolate, scan all of F_p
    let xs: Vec<u64> = (0..=s as u64).collect();
    let ys: Vec<u64> = xs
        .iter()
        .map(|&x| {
            let mut shifted = m.to_vec();
            for i in 0..s {
                shifted[i][i] = (shifted[i][i] + p - x % p) % p;
            }
            determinant(&shifted, p)
        })
        .collect();
    let coeffs = lagrange_interpolate(&xs, &ys, p);
    let mut roots = Vec::new();
    for lam in 0..p {
        let mut acc = 0u128;
        let mut xp = 1u64;
        for &c in &coeffs {
            acc = (acc + c as u128 * xp as u128) % p as u128;
            xp = (xp as u128 * lam as u128 % p as u128) as u64;
        }
        if acc == 0 {
            roots.push(lam);
        }
    }
    roots
}

fn determinant(m: &[Vec<u64>], p: u64) -> u64 {
    let s = m.len();
    let mut a = m.to_vec();
    let mut det = 1u64;
    for col in 0..s {
        let Some(pivot) = (col..s).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            a.swap(pivot, col);
            det = p - det;
            if det == p {
                det = 0;
            }
        }
        let pv = a[col][col];
        det = (det as u128 * pv as u128 % p as u128) as u64;
        let pv_inv = PrimeFieldElement { value: pv, prime: p }.inv().value;
        for r in col + 1..s {
            if a[r][col] != 0 {
                let f = (a[r][col] as u128 * pv_inv as u128 % p as u128) as u64;
                for c in col..s {
                    let t = (f as u128 * a[col][c] as u128 % p as u128) as u64;
                    a[r][c] = (a[r][c] + p - t) % p;
                }
            }
        }
    }
    det % p
}

fn lagrange_interpolate(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut coeffs = vec![0u64; n];
    for i in 0..n {
        // numerator polynomial prod_{j != i} (x - x_j)
        let mut num = vec![0u64; n];
        num[0] = 1;
        let mut deg = 0;
        let mut denom = 1u64;
        for j in 0..n {
            if j == i {
                continue;
            }
            // multiply num by (x - x_j)
            let neg = (p - xs[j] % p) % p;
            let mut next = vec![0u64; n];
            for k in 0..=deg {
                next[k + 1] = (next[k + 1] + num[k]) % p;
                next[k] = ((next[k] as u128 + num[k] as u128 * neg as u128) % p as u128) as u64;
            }
            num = next;
            deg += 1;
            denom = (denom as u128 * ((xs[i] + p - xs[j]) % p) as u128 % p as u128) as u64;
        }
        let scale = (ys[i] as u128
            * PrimeFieldElement { value: denom, prime: p }.inv().value as u128
            % p as u128) as u64;
        for k in 0..n {
            coeffs[k] = ((coeffs[k] as u128 + num[k] as u128 * scale as u128) % p as u128) as u64;
        }
    }
    coeffs
}

/// Row-reduce over F_p; returns the echelon rows and pivot columns.
fn row_reduce(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let rcount = rows.len();
    let cols = rows[0].len();
    let mut pivots = Vec::new();
    let mut pr = 0usize;
    for col in 0..cols {
        let Some(idx) = (pr..rcount).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pr, idx);
        let inv = PrimeFieldElement { value: rows[pr][col], prime: p }.inv().value;
        for c in 0..cols {
            rows[pr][c] = (rows[pr][c] as u128 * inv as u128 % p as u128) as u64;
        }
        for r in 0..rcount {
            if r != pr && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..cols {
                    let t = (f as u128 * rows[pr][c] as u128 % p as u128) as u64;
                    rows[r][c] = (rows[r][c] + p - t) % p;
                }
            }
        }
        pivots.push(col);
        pr += 1;
        if pr == rcount {
            break;
        }
    }
    (rows, pivots)
}

/// Express `v` in the span of reduced-echelon `rows`; returns coordinates.
fn express(rows: &[Vec<u64>], pivots: &[usize], v: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut rem = v.to_vec();
    let mut coords = vec![0u64; rows.len()];
    for (r, &pc) in pivots.iter().enumerate() {
        let c = rem[pc];
        if c != 0 {
            coords[r] = c;
            for k in 0..rem.len() {
                let t = (c as u128 * rows[r][k] as u128 % p as u128) as u64;
                rem[k] = (rem[k] + p - t) % p;
            }
        }
    }
    if rem.iter().all(|&x| x == 0) {
        Some(coords)
    } else {
        None
    }
}

fn nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let s = m.len();
    let (rows, pivots) = row_reduce(m.to_vec(), p);
    let pivot_set: Vec<usize> = pivots.clone();
    let free: Vec<usize> = (0..s).filter(|c| !pivot_set.contains(c)).collect();
    let mut out = Vec::new();
    for &fc in &free {
        let mut v = vec![0u64; s];
        v[fc] = 1;
        for (r, &pc) in pivot_set.iter().enumerate() {
            // pivot var = -row[fc]
            v[pc] = (p - rows[r][fc] % p) % p;
        }
        out.push(v);
    }
    out
}

// ---------------------------------------------------------------------------
// primes
// ---------------------------------------------------------------------------

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p = 1 (mod exponent)` with `p > 2 sqrt(order)`.
fn working_prime(exponent: u64, order: u64) -> u64 {
    let bound = (2.0 * (order as f64).sqrt()).floor() as u64;
    let mut p = exponent + 1;
    while !(p > bound && is_prime(p)) {
        p += exponent;
    }
    p
}

/// A fixed element of exact multiplicative order `m` in `F_p*`.
fn element_of_order(p: u64, m: u64) -> u64 {
    // find a primitive root, then power down
    let factors = prime_factors(p - 1);
    let mut g = 2u64;
    loop {
        let ok = factors.iter().all(|&q| {
            PrimeFieldElement { value: g, prime: p }
                .pow((p - 1) / q)
                .value
                != 1
        });
        if ok {
            break;
        }
        g += 1;
    }
    PrimeFieldElement { value: g, prime: p }.pow((p - 1) / m).value
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
