use colorlie_core::grading::*;
use colorlie_core::{Cyclotomic, Exec};
use proptest::prelude::*;

fn j() -> Cyclotomic {
    Cyclotomic::j1()
}

// ε((a1,a2),(b1,b2)) = j^{a1 b2 − a2 b1}: the two-trit bicharacter written out by hand
fn z3z3_oracle(a: &str, b: &str, j: &Cyclotomic) -> Cyclotomic {
    let d = |s: &str, i: usize| (s.as_bytes()[i] - b'0') as i64;
    j.pow(d(a, 0) * d(b, 1) - d(a, 1) * d(b, 0))
}

#[test]
fn z3z3_matches_bicharacter_form() {
    let t = canonical_z3z3(&j()).unwrap();
    let labels: Vec<String> = Shape::new(0, 2)
        .elements()
        .iter()
        .map(|e| e.label())
        .collect();
    for a in &labels {
        for b in &labels {
            assert_eq!(*t.eps(a, b).unwrap(), z3z3_oracle(a, b, &j()), "{a} {b}");
        }
    }
}

#[test]
fn printed_rows() {
    let t = canonical_z3z3(&j()).unwrap();
    let (one, j, j2) = (Cyclotomic::one(), j(), j().pow(2));
    let row_11 = [&one, &j, &j2, &j2, &one, &j, &j, &j2, &one];
    let row_21 = [&one, &j2, &j, &j2, &j, &one, &j, &one, &j2];
    for k in 0..9 {
        assert_eq!(t.at(4, k), row_11[k]);
        assert_eq!(t.at(7, k), row_21[k]);
    }
}

#[test]
fn canonical_tables_are_valid() {
    for jv in [Cyclotomic::one(), j(), j().pow(2)] {
        assert!(validate_table(&canonical_z3z3(&jv).unwrap())
            .unwrap()
            .is_valid());
        for d in [1, -1] {
            let t = canonical_z2z3z3(&jv, &Cyclotomic::from_int(d)).unwrap();
            assert!(validate_table(&t).unwrap().is_valid());
            assert_eq!(t.shape(), Shape::new(1, 2));
        }
    }
}

#[test]
fn z2_block_structure() {
    // U U / U δU
    let delta = Cyclotomic::from_int(-1);
    let u = canonical_z3z3(&j()).unwrap();
    let t = canonical_z2z3z3(&j(), &delta).unwrap();
    for a in 0..9 {
        for b in 0..9 {
            assert_eq!(t.at(a, b), u.at(a, b));
            assert_eq!(t.at(a + 9, b), u.at(a, b));
            assert_eq!(t.at(a, b + 9), u.at(a, b));
            assert_eq!(*t.at(a + 9, b + 9), &delta * u.at(a, b));
        }
    }
}

#[test]
fn z3_iteration_is_trivial() {
    let t = iterate_z3(&FactorTable::trivial());
    assert_eq!(t.order(), 3);
    assert!(t.entries().iter().all(|e| e.is_one()));
}

#[test]
fn invalid_delta() {
    assert!(iterate_z2(&FactorTable::trivial(), &Cyclotomic::from_int(2)).is_err());
}

#[test]
fn broken_table_reports_violations() {
    let mut t = canonical_z3z3(&j()).unwrap();
    let a = GroupElement::new(&[], &[0, 1]);
    let b = GroupElement::new(&[], &[1, 0]);
    t.set(&a, &b, Cyclotomic::one());
    let r = validate_table(&t).unwrap();
    assert!(!r.is_valid());
}

#[test]
fn search_counts() {
    let t = search_tables(0, 2, 3).unwrap();
    assert_eq!(t.len(), 3);
    assert_eq!(classify_inequivalent(&t).unwrap().len(), 2);
    let t = search_tables(1, 2, 3).unwrap();
    assert_eq!(t.len(), 6);
    assert_eq!(classify_inequivalent(&t).unwrap().len(), 4);
}

#[test]
fn search_is_policy_independent() {
    let a = search_tables_with(1, 1, 6, DEFAULT_BUDGET, Exec::Sequential).unwrap();
    let b = search_tables_with(1, 1, 6, DEFAULT_BUDGET, Exec::Parallel).unwrap();
    assert_eq!(a, b);
    assert!(a.iter().all(|t| validate_table(t).unwrap().is_valid()));
}

#[test]
fn j1_and_j2_tables_are_equivalent() {
    let t = vec![
        canonical_z3z3(&j()).unwrap(),
        canonical_z3z3(&j().pow(2)).unwrap(),
    ];
    assert_eq!(classify_inequivalent(&t).unwrap().len(), 1);
}

#[test]
fn labels_round_trip() {
    for shape in [Shape::new(0, 2), Shape::new(1, 2), Shape::new(2, 0)] {
        for e in shape.elements() {
            assert_eq!(GroupElement::parse(shape, &e.label()).unwrap(), e);
            assert_eq!(GroupElement::from_index(shape, e.index()), e);
        }
    }
    assert!(GroupElement::parse(Shape::new(1, 2), "1_3").is_err());
}

#[test]
fn table_json_round_trip() {
    let t = canonical_z2z3z3(&j(), &Cyclotomic::from_int(-1)).unwrap();
    let s = serde_json::to_string(&t).unwrap();
    let back: FactorTable = serde_json::from_str(&s).unwrap();
    assert_eq!(back, t);
}

fn element(shape: Shape) -> impl Strategy<Value = GroupElement> {
    (0..shape.order()).prop_map(move |i| GroupElement::from_index(shape, i))
}

proptest! {
    #[test]
    fn group_laws(a in element(Shape::new(1, 2)), b in element(Shape::new(1, 2))) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.add(&a.neg()).is_identity());
        prop_assert_eq!(a.scale(a.order()), GroupElement::identity(a.shape()));
    }

    #[test]
    fn canonical_table_is_bicharacter(
        a in element(Shape::new(1, 2)),
        b in element(Shape::new(1, 2)),
        c in element(Shape::new(1, 2)),
        d in prop::sample::select(vec![1i64, -1]),
    ) {
        let t = canonical_z2z3z3(&j(), &Cyclotomic::from_int(d)).unwrap();
        prop_assert!((t.get(&a, &b) * t.get(&b, &a)).is_one());
        prop_assert_eq!(t.get(&a, &b.add(&c)).clone(), t.get(&a, &b) * t.get(&a, &c));
        prop_assert_eq!(t.get(&a.add(&b), &c).clone(), t.get(&a, &c) * t.get(&b, &c));
    }

    #[test]
    fn dot_tables_are_valid(p in 1usize..=3) {
        prop_assert!(validate_table(&z2_dot_table(p)).unwrap().is_valid());
    }
}
