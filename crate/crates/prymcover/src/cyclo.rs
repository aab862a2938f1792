//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are kept in the power basis `{zeta_N^i : 0 <= i < phi(N)}`,
//! reduced modulo the N-th cyclotomic polynomial, with the conductor
//! minimized on every normalization. All arithmetic is exact over
//! `num::BigRational`; nothing on the correctness path ever touches floats.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = num::BigRational;

/// Default cap on conductors; the group exponents this crate meets stay far
/// below it.
pub const DEFAULT_CONDUCTOR_CAP: u32 = 1000;

#[derive(Debug, Error)]
pub enum CycloError {
    #[error("conductor {0} exceeds cap {1}")]
    ConductorCap(u32, u32),
    #[error("value is not a rational integer")]
    NotAnInteger,
    #[error("value is not rational")]
    NotRational,
    #[error("division by zero")]
    DivisionByZero,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            out.push(d);
        }
    }
    out
}

/// Coefficients (ascending degree) of the N-th cyclotomic polynomial, monic
/// with integer coefficients. Computed by `(x^n - 1) / prod_{d|n, d<n} Phi_d`
/// and cached.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    static CACHE: Lazy<Mutex<HashMap<u32, Vec<BigInt>>>> = Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(p) = CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        let mut acc = num;
        for d in divisors(n) {
            if d < n {
                let phi_d = cyclotomic_polynomial(d);
                acc = int_poly_div_exact(&acc, &phi_d);
            }
        }
        acc
    };
    CACHE.lock().unwrap().insert(n, poly.clone());
    poly
}

/// Exact division of integer polynomials (ascending coefficients); the
/// divisor is monic and the division has zero remainder by construction.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        quot[k] = c.clone();
        if !c.is_zero() {
            for j in 0..=dd {
                let t = &den[j] * &c;
                rem[k + j] -= t;
            }
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    while quot.len() > 1 && quot.last().unwrap().is_zero() {
        quot.pop();
    }
    quot
}

// ---------------------------------------------------------------------------
// CyclotomicNumber
// ---------------------------------------------------------------------------

/// An element of `Q(zeta_N)` in canonical form: `coeffs[i]` multiplies
/// `zeta_N^i`, `coeffs.len() == phi(N)`, and `N` is minimal for the value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        CyclotomicNumber {
            conductor: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        CyclotomicNumber {
            conductor: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        CyclotomicNumber {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// `zeta_N^k`, in canonical form.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self, CycloError> {
        Self::root_of_unity_capped(n, k, DEFAULT_CONDUCTOR_CAP)
    }

    pub fn root_of_unity_capped(n: u32, k: i64, cap: u32) -> Result<Self, CycloError> {
        if n == 0 || n > cap {
            return Err(CycloError::ConductorCap(n, cap));
        }
        let kk = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![Rational::zero(); n as usize];
        raw[kk] = Rational::one();
        Ok(Self::from_raw_poly(n, raw))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Build from an arbitrary-degree polynomial in `zeta_n` (ascending
    /// coefficients), reducing and minimizing the conductor.
    fn from_raw_poly(n: u32, mut raw: Vec<Rational>) -> Self {
        // exponents mod n
        if raw.len() > n as usize {
            let mut folded = vec![Rational::zero(); n as usize];
            for (i, c) in raw.into_iter().enumerate() {
                folded[i % n as usize] += c;
            }
            raw = folded;
        }
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        // reduce mod Phi_n (monic)
        if raw.len() > deg {
            for k in (deg..raw.len()).rev() {
                let c = raw[k].clone();
                if !c.is_zero() {
                    for j in 0..deg {
                        let t = Rational::from_integer(phi[j].clone()) * &c;
                        raw[k - deg + j] -= t;
                    }
                }
                raw[k] = Rational::zero();
            }
        }
        raw.truncate(deg.max(1));
        raw.resize(deg.max(1), Rational::zero());
        let elem = CyclotomicNumber {
            conductor: n,
            coeffs: raw,
        };
        elem.minimize_conductor()
    }

    /// Apply the Galois automorphism `zeta_N -> zeta_N^a` (`a` coprime to N).
    pub fn galois(&self, a: u32) -> Self {
        let n = self.conductor;
        let mut raw = vec![Rational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(i as u64 * a as u64 % n as u64) as usize] += c;
            }
        }
        Self::from_raw_poly(n, raw)
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conjugate(&self) -> Self {
        if self.conductor == 1 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
    }

    fn minimize_conductor(self) -> Self {
        if self.conductor == 1 {
            return self;
        }
        let n = self.conductor;
        for m in divisors(n) {
            if m == n {
                break;
            }
            // fixed by Gal(Q(z_n)/Q(z_m)) = { sigma_a : a = 1 mod m }?
            let subgroup: Vec<u32> = (1..n)
                .filter(|&a| num::integer::gcd(a, n) == 1 && a % m == 1)
                .collect();
            let invariant = subgroup.iter().all(|&a| self.galois_raw_eq(a));
            if invariant {
                if let Some(smaller) = self.rewrite_in_conductor(m) {
                    return smaller;
                }
            }
        }
        self
    }

    /// Check `galois(a) == self` without re-minimizing (used internally by
    /// the minimizer to avoid recursion).
    fn galois_raw_eq(&self, a: u32) -> bool {
        let n = self.conductor;
        let mut raw = vec![Rational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(i as u64 * a as u64 % n as u64) as usize] += c;
            }
        }
        // reduce without minimization
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        for k in (deg..raw.len()).rev() {
            let c = raw[k].clone();
            if !c.is_zero() {
                for j in 0..deg {
                    let t = Rational::from_integer(phi[j].clone()) * &c;
                    raw[k - deg + j] -= t;
                }
            }
            raw[k] = Rational::zero();
        }
        raw.truncate(deg.max(1));
        raw.iter().zip(self.coeffs.iter()).all(|(a, b)| a == b)
    }

    /// Solve for the representation in `Q(zeta_m)`, `m | conductor`.
    fn rewrite_in_conductor(&self, m: u32) -> Option<CyclotomicNumber> {
        let n = self.conductor;
        let phi_n = euler_phi(n) as usize;
        let phi_m = euler_phi(m) as usize;
        // basis vectors: zeta_m^j = zeta_n^{j n/m}, reduced to the power basis
        let step = (n / m) as usize;
        let mut basis: Vec<Vec<Rational>> = Vec::with_capacity(phi_m);
        for j in 0..phi_m {
            let mut raw = vec![Rational::zero(); n as usize];
            raw[(j * step) % n as usize] = Rational::one();
            let phi = cyclotomic_polynomial(n);
            let deg = phi.len() - 1;
            for k in (deg..raw.len()).rev() {
                let c = raw[k].clone();
                if !c.is_zero() {
                    for jj in 0..deg {
                        let t = Rational::from_integer(phi[jj].clone()) * &c;
                        raw[k - deg + jj] -= t;
                    }
                }
                raw[k] = Rational::zero();
            }
            raw.truncate(deg.max(1));
            basis.push(raw);
        }
        // solve basis^T x = coeffs by Gaussian elimination
        let rows = phi_n;
        let cols = phi_m;
        let mut aug: Vec<Vec<Rational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<Rational> = (0..cols).map(|c| basis[c][r].clone()).collect();
                row.push(self.coeffs.get(r).cloned().unwrap_or_else(Rational::zero));
                row
            })
            .collect();
        let mut pivot_row = 0usize;
        let mut pivots = Vec::new();
        for col in 0..cols {
            let Some(r) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(pivot_row, r);
            let inv = aug[pivot_row][col].clone();
            for c in col..=cols {
                let v = aug[pivot_row][c].clone() / &inv;
                aug[pivot_row][c] = v;
            }
            for r in 0..rows {
                if r != pivot_row && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=cols {
                        let t = aug[pivot_row][c].clone() * &f;
                        aug[r][c] -= t;
                    }
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
            if pivot_row == rows {
                break;
            }
        }
        // consistency: zero rows must have zero rhs
        for r in pivot_row..rows {
            if !aug[r][cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rational::zero(); cols];
        for &(r, c) in &pivots {
            x[c] = aug[r][cols].clone();
        }
        let candidate = CyclotomicNumber {
            conductor: m,
            coeffs: {
                let mut v = x;
                v.truncate(phi_m.max(1));
                v.resize(phi_m.max(1), Rational::zero());
                v
            },
        };
        Some(candidate)
    }

    /// Embed into `Q(zeta_l)` for `conductor | l`, without re-minimizing.
    pub fn embedded_coeffs(&self, l: u32) -> Vec<Rational> {
        assert!(l % self.conductor == 0);
        let step = (l / self.conductor) as usize;
        let mut raw = vec![Rational::zero(); l as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(i * step) % l as usize] += c;
            }
        }
        let phi = cyclotomic_polynomial(l);
        let deg = phi.len() - 1;
        for k in (deg..raw.len()).rev() {
            let c = raw[k].clone();
            if !c.is_zero() {
                for j in 0..deg {
                    let t = Rational::from_integer(phi[j].clone()) * &c;
                    raw[k - deg + j] -= t;
                }
            }
            raw[k] = Rational::zero();
        }
        raw.truncate(deg.max(1));
        raw.resize(deg.max(1), Rational::zero());
        raw
    }

    pub fn add(&self, other: &Self) -> Self {
        let l = num::integer::lcm(self.conductor, other.conductor);
        let a = self.embedded_coeffs(l);
        let b = other.embedded_coeffs(l);
        let raw: Vec<Rational> = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        Self::from_raw_poly(l, raw)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = num::integer::lcm(self.conductor, other.conductor);
        let a = self.embedded_coeffs(l);
        let b = other.embedded_coeffs(l);
        let mut raw = vec![Rational::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x.clone() * y;
                }
            }
        }
        Self::from_raw_poly(l, raw)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c.clone() * q).collect(),
        }
    }

    /// Division by a rational scalar.
    pub fn div_rational(&self, q: &Rational) -> Result<Self, CycloError> {
        if q.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        Ok(self.scale(&(Rational::one() / q)))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial. Off every hot path; used only in tests and
    /// for completeness.
    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(Rational::one() / q));
        }
        let n = self.conductor;
        let phi: Vec<Rational> = cyclotomic_polynomial(n)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        // extended euclid on (phi, self)
        let (mut r0, mut r1) = (phi, self.coeffs.clone());
        let (mut t0, mut t1) = (vec![Rational::zero()], vec![Rational::one()]);
        loop {
            trim(&mut r1);
            if poly_deg(&r1) == 0 {
                break;
            }
            let (q, rem) = poly_divmod(&r0, &r1);
            r0 = std::mem::replace(&mut r1, rem);
            let qt1 = poly_mul(&q, &t1);
            let new_t = poly_sub(&t0, &qt1);
            t0 = std::mem::replace(&mut t1, new_t);
        }
        let c = r1[0].clone();
        let inv_coeffs: Vec<Rational> = t1.into_iter().map(|x| x / &c).collect();
        Ok(Self::from_raw_poly(n, inv_coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.conductor == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Result<BigInt, CycloError> {
        let q = self.as_rational().ok_or(CycloError::NotRational)?;
        if q.denom().is_one() {
            Ok(q.numer().clone())
        } else {
            Err(CycloError::NotAnInteger)
        }
    }

    /// Display-only complex embedding with `zeta_N = exp(2 pi i / N)`.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = rational_to_f64(c);
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / n;
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }
}

fn rational_to_f64(q: &Rational) -> f64 {
    let n = q.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let d = q.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    n / d
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn poly_deg(p: &[Rational]) -> usize {
    let mut d = p.len();
    while d > 1 && p[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = poly_deg(den);
    let mut rem = num.to_vec();
    trim(&mut rem);
    if poly_deg(&rem) < dd {
        return (vec![Rational::zero()], rem);
    }
    let nd = poly_deg(&rem);
    let lead = den[dd].clone();
    let mut quot = vec![Rational::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone() / &lead;
        quot[k] = c.clone();
        if !c.is_zero() {
            for j in 0..=dd {
                let t = den[j].clone() * &c;
                rem[k + j] -= t;
            }
        }
    }
    rem.truncate(dd.max(1));
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x.clone() * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect()
}

impl PartialOrd for CyclotomicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural total order (conductor, then coefficients); used only for
/// deterministic orderings, not as a numeric comparison.
impl Ord for CyclotomicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first && c.is_positive() {
                write!(f, "+")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                if *c == -Rational::one() {
                    write!(f, "-")?;
                } else if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                write!(f, "z_{}", self.conductor)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut s = ser.serialize_struct("CyclotomicNumber", 2)?;
        s.serialize_field("conductor", &self.conductor)?;
        let coeffs: Vec<[String; 2]> = self
            .coeffs
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

#[derive(Deserialize)]
struct CycloWire {
    conductor: u32,
    coeffs: Vec<[String; 2]>,
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let w = CycloWire::deserialize(de)?;
        let coeffs: Result<Vec<Rational>, _> = w
            .coeffs
            .iter()
            .map(|[n, d]| {
                let num: BigInt = n.parse().map_err(serde::de::Error::custom)?;
                let den: BigInt = d.parse().map_err(serde::de::Error::custom)?;
                if den.is_zero() {
                    return Err(serde::de::Error::custom("zero denominator"));
                }
                Ok(Rational::new(num, den))
            })
            .collect();
        Ok(CyclotomicNumber::from_raw_poly(w.conductor, coeffs?))
    }
}

// ---------------------------------------------------------------------------
// Prime field helper
// ---------------------------------------------------------------------------

/// An element of `F_p`; internal to the character-table machinery.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeFieldElement {
    pub value: u64,
    pub prime: u64,
}

impl PrimeFieldElement {
    pub fn new(value: i64, prime: u64) -> Self {
        PrimeFieldElement {
            value: value.rem_euclid(prime as i64) as u64,
            prime,
        }
    }

    pub fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.prime, o.prime);
        PrimeFieldElement {
            value: (self.value + o.value) % self.prime,
            prime: self.prime,
        }
    }

    pub fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.prime, o.prime);
        PrimeFieldElement {
            value: (self.value + self.prime - o.value) % self.prime,
            prime: self.prime,
        }
    }

    pub fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.prime, o.prime);
        PrimeFieldElement {
            value: (self.value as u128 * o.value as u128 % self.prime as u128) as u64,
            prime: self.prime,
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = PrimeFieldElement {
            value: 1,
            prime: self.prime,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Self {
        self.pow(self.prime - 2)
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}
