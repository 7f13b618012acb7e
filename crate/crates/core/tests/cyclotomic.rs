use colorlie_core::cyclotomic::{cyclotomic_poly, totient, Cyclotomic, RootLevel, MAX_ORDER};
use colorlie_core::Error;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-9
}

#[test]
fn cube_root_relations() {
    let j = Cyclotomic::j1();
    assert!(j.pow(3).is_one());
    assert!((Cyclotomic::one() + &j + j.pow(2)).is_zero());
    assert_eq!(j.inv().unwrap(), j.pow(2));
    assert_eq!(j.conj(), j.pow(2));
    assert_eq!(j.level().unwrap(), RootLevel(3));
    assert_eq!((-&j).level().unwrap(), RootLevel(6));
}

#[test]
fn mixed_orders_lift_to_lcm() {
    let i = Cyclotomic::root_of_unity(4, 1);
    let j = Cyclotomic::j1();
    let p = &i * &j;
    assert_eq!(p.lowered().order(), 12);
    assert!(close(p.to_complex(), i.to_complex() * j.to_complex()));
    // ζ12^3 = i
    assert_eq!(Cyclotomic::root_of_unity(12, 3), i);
}

#[test]
fn order_cap_is_enforced() {
    let a = Cyclotomic::root_of_unity(7, 1);
    let b = Cyclotomic::root_of_unity(11, 1);
    let c = Cyclotomic::root_of_unity(13, 1);
    let ab = a.try_mul(&b).unwrap();
    assert!(ab.order() <= MAX_ORDER);
    assert!(matches!(ab.try_mul(&c), Err(Error::Order(_))));
}

#[test]
fn division_by_zero() {
    assert_eq!(Cyclotomic::zero().inv(), Err(Error::DivisionByZero));
    assert_eq!(
        Cyclotomic::one().try_div(&Cyclotomic::zero()),
        Err(Error::DivisionByZero)
    );
}

#[test]
fn not_a_root() {
    assert_eq!(Cyclotomic::from_int(2).level(), Err(Error::NotRootOfUnity));
    assert_eq!(Cyclotomic::zero().level(), Err(Error::NotRootOfUnity));
    assert_eq!(Cyclotomic::one().level().unwrap(), RootLevel(1));
}

#[test]
fn cyclotomic_polynomials() {
    assert_eq!(cyclotomic_poly(3), &[1, 1, 1]);
    assert_eq!(cyclotomic_poly(4), &[1, 0, 1]);
    assert_eq!(cyclotomic_poly(6), &[1, -1, 1]);
    for n in [1u32, 5, 12, 30, 105] {
        assert_eq!(cyclotomic_poly(n).len() as u64 - 1, totient(n as u64));
    }
}

#[test]
fn norm_of_sum_of_roots() {
    // |1 + j|² = |−j²|² = 1
    let v = Cyclotomic::one() + Cyclotomic::j1();
    assert_eq!(v.norm(), BigRational::from_integer(1.into()));
    assert_eq!(v.level().unwrap(), RootLevel(6));
}

#[test]
fn display_forms() {
    assert_eq!(Cyclotomic::j1().to_string(), "z3^1");
    assert_eq!(Cyclotomic::from_int(-1).to_string(), "-1");
    assert_eq!(Cyclotomic::frac(1, 2).to_string(), "1/2");
}

#[test]
fn json_round_trip() {
    let v = Cyclotomic::root_of_unity(12, 5) + Cyclotomic::frac(-3, 7);
    let s = serde_json::to_string(&v).unwrap();
    let back: Cyclotomic = serde_json::from_str(&s).unwrap();
    assert_eq!(back, v);
}

fn small() -> impl Strategy<Value = Cyclotomic> {
    let orders = prop::sample::select(vec![1u32, 2, 3, 4, 6, 8, 12]);
    (orders, prop::collection::vec((-4i64..=4, 1i64..=3), 1..4)).prop_map(|(k, terms)| {
        terms
            .iter()
            .enumerate()
            .fold(Cyclotomic::zero(), |acc, (e, &(n, d))| {
                acc + Cyclotomic::root_of_unity(k, e as i64) * Cyclotomic::frac(n, d)
            })
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in small(), b in small(), c in small()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn matches_complex_evaluation(a in small(), b in small()) {
        prop_assert!(close((&a * &b).to_complex(), a.to_complex() * b.to_complex()));
        prop_assert!(close((&a + &b).to_complex(), a.to_complex() + b.to_complex()));
        prop_assert!(close(a.conj().to_complex(), a.to_complex().conj()));
        prop_assert!(((&a * &a.conj()).to_complex().re - a.to_complex().norm_sqr()).abs() < 1e-9);
        prop_assert!((a.norm().to_f64().unwrap() - field_norm(&a)).abs() < 1e-6);
    }

    #[test]
    fn inverse(a in small()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn galois_is_a_homomorphism(a in small(), b in small(), k in prop::sample::select(vec![1i64, 5, 7, 11])) {
        let order = 24;
        let (a, b) = (a.lift(order).unwrap(), b.lift(order).unwrap());
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
    }

    #[test]
    fn equality_is_order_independent(a in small()) {
        let lifted = a.lift(24).unwrap();
        prop_assert_eq!(&lifted, &a);
        prop_assert_eq!(lifted.canonical_key(), a.canonical_key());
    }

    #[test]
    fn root_levels(k in 1u32..=40, e in 0i64..40) {
        let z = Cyclotomic::root_of_unity(k, e);
        let expect = k / num_integer::gcd(k, e.rem_euclid(k as i64) as u32).max(1);
        let expect = if e.rem_euclid(k as i64) == 0 { 1 } else { expect };
        prop_assert_eq!(z.level().unwrap(), RootLevel(expect));
    }
}

// product of the complex embeddings over the Galois conjugates
fn field_norm(a: &Cyclotomic) -> f64 {
    let m = a.order() as i64;
    (1..=m.max(1))
        .filter(|k| num_integer::gcd(*k, m) == 1)
        .map(|k| a.galois(k).to_complex())
        .fold(Complex64::new(1.0, 0.0), |acc, z| acc * z)
        .re
}
