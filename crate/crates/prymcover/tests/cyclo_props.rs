//! Exact cyclotomic arithmetic: worked values and field properties.

use proptest::prelude::*;
use prymcover::cyclo::{euler_phi, rat, rat_frac, CyclotomicNumber};

fn zeta(n: u32, k: i64) -> CyclotomicNumber {
    CyclotomicNumber::root_of_unity(n, k).unwrap()
}

fn from_coeffs(n: u32, coeffs: &[i64]) -> CyclotomicNumber {
    let mut acc = CyclotomicNumber::zero();
    for (k, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            acc = acc.add(&zeta(n, k as i64).scale(&rat(c)));
        }
    }
    acc
}

#[test]
fn root_of_unity_identities() {
    assert_eq!(zeta(4, 2), CyclotomicNumber::from_integer(-1));
    // sum of the two primitive cube roots
    assert_eq!(zeta(3, 1).add(&zeta(3, 2)), CyclotomicNumber::from_integer(-1));
    // full vanishing sums for primes
    for p in [3u32, 5, 7] {
        let mut s = CyclotomicNumber::zero();
        for k in 0..p {
            s = s.add(&zeta(p, k as i64));
        }
        assert!(s.is_zero(), "sum of all {p}-th roots");
    }
    // zeta_N^N = 1
    assert_eq!(zeta(12, 12), CyclotomicNumber::one());
    // conductor cap
    assert!(CyclotomicNumber::root_of_unity(2000, 1).is_err());
}

#[test]
fn arithmetic_examples() {
    let one = CyclotomicNumber::one();
    let i = zeta(4, 1);
    assert_eq!(one.add(&i).mul(&one.sub(&i)), CyclotomicNumber::from_integer(2));
    assert_eq!(zeta(8, 1).conjugate(), zeta(8, 7));
    // mixed-conductor embedding: zeta_6 = zeta_3 + 1
    assert!(zeta(6, 1).sub(&zeta(3, 1)).sub(&one).is_zero());
    // as_integer only on rational integers
    assert!(zeta(5, 1).as_integer().is_err());
    assert!(CyclotomicNumber::from_rational(rat_frac(1, 2)).as_integer().is_err());
    assert_eq!(
        CyclotomicNumber::from_integer(7).as_integer().unwrap(),
        num::BigInt::from(7)
    );
}

#[test]
fn conductor_minimization() {
    // (zeta_8)^2 has conductor 4, (zeta_8)^4 is rational
    assert_eq!(zeta(8, 2).conductor(), 4);
    assert_eq!(zeta(8, 4).conductor(), 1);
    // 1 + zeta_3 + zeta_3^2 collapses to 0 at conductor 1
    let s = CyclotomicNumber::one().add(&zeta(3, 1)).add(&zeta(3, 2));
    assert!(s.is_zero());
    assert_eq!(s.conductor(), 1);
    // embedding into a larger conductor then renormalizing is the identity
    let x = zeta(5, 2).add(&CyclotomicNumber::from_integer(3));
    let coeffs15 = x.embedded_coeffs(15);
    let wire = serde_json::json!({
        "conductor": 15,
        "coeffs": coeffs15
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect::<Vec<_>>(),
    });
    let back: CyclotomicNumber = serde_json::from_value(wire).unwrap();
    assert_eq!(back, x);
    assert_eq!(back.conductor(), 5);
}

#[test]
fn inverses() {
    let x = zeta(5, 1).add(&CyclotomicNumber::from_integer(2));
    let inv = x.inverse().unwrap();
    assert_eq!(x.mul(&inv), CyclotomicNumber::one());
    assert!(CyclotomicNumber::zero().inverse().is_err());
    assert!(CyclotomicNumber::one().div_rational(&rat(0)).is_err());
}

/// Three random elements of a random small cyclotomic field.
fn arb_triple() -> impl Strategy<Value = (u32, Vec<i64>, Vec<i64>, Vec<i64>)> {
    prop::sample::select(vec![3u32, 4, 5, 8, 12]).prop_flat_map(|n| {
        let phi = euler_phi(n) as usize;
        (
            Just(n),
            proptest::collection::vec(-4i64..=4, phi),
            proptest::collection::vec(-4i64..=4, phi),
            proptest::collection::vec(-4i64..=4, phi),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms((n, ca, cb, cc) in arb_triple()) {
        let a = from_coeffs(n, &ca);
        let b = from_coeffs(n, &cb);
        let c = from_coeffs(n, &cc);
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(a.mul(&inv), CyclotomicNumber::one());
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism((n, ca, cb, _cc) in arb_triple()) {
        let a = from_coeffs(n, &ca);
        let b = from_coeffs(n, &cb);
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.add(&b).conjugate(), a.conjugate().add(&b.conjugate()));
        prop_assert_eq!(a.mul(&b).conjugate(), a.conjugate().mul(&b.conjugate()));
    }

    #[test]
    fn serialization_roundtrip((n, ca, _cb, _cc) in arb_triple()) {
        let a = from_coeffs(n, &ca);
        let json = serde_json::to_string(&a).unwrap();
        let back: CyclotomicNumber = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }
}
