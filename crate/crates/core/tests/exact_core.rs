use std::sync::Arc;

use proptest::prelude::*;

use dpoisson::{MultiPoly, One, QMatrix, Rational, RelationSet, SparseEchelon, Zero};

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn vars() -> Arc<[String]> {
    vec!["x".to_string(), "y".to_string(), "z".to_string()].into()
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((-4i64..=4, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|terms| {
        let v = vars();
        terms
            .iter()
            .fold(MultiPoly::zero_in(&v), |acc, &(c, a, b, e)| {
                let m = MultiPoly::var(&v, 0).pow(a).unwrap()
                    * MultiPoly::var(&v, 1).pow(b).unwrap()
                    * MultiPoly::var(&v, 2).pow(e).unwrap();
                acc + m.scale(&Rational::from(c))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() + Rational::zero(), a.clone());
        prop_assert_eq!(a.clone() * Rational::one(), a.clone());
        prop_assert!((a.clone() + (-a.clone())).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.recip().unwrap(), Rational::one());
        }
    }

    #[test]
    fn rational_text_round_trip(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn polynomial_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn polynomial_text_round_trip(p in poly()) {
        prop_assert_eq!(MultiPoly::parse(&p.to_string(), &vars()).unwrap(), p);
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(), q in poly(), pt in prop::collection::vec(rational(), 3)) {
        prop_assert_eq!((&p * &q).evaluate(&pt), p.evaluate(&pt) * q.evaluate(&pt));
        prop_assert_eq!((&p + &q).evaluate(&pt), p.evaluate(&pt) + q.evaluate(&pt));
    }

    #[test]
    fn normal_form_respects_products(p in poly(), q in poly()) {
        let v = vars();
        let rels = RelationSet::from_relations(&v, &[
            MultiPoly::parse("x^2 + y^2 - 1", &v).unwrap(),
            MultiPoly::parse("z^2 - y", &v).unwrap(),
        ]).unwrap();
        let nf = |f: &MultiPoly| rels.normal_form(f).unwrap();
        prop_assert_eq!(nf(&(&p * &q)), nf(&(&nf(&p) * &nf(&q))));
        prop_assert_eq!(nf(&nf(&p)), nf(&p));
    }

    #[test]
    fn leibniz_rule_for_partials(p in poly(), q in poly(), k in 0usize..3) {
        prop_assert_eq!((&p * &q).partial(k), &(&p.partial(k) * &q) + &(&p * &q.partial(k)));
    }

    #[test]
    fn sparse_echelon_agrees_with_dense_rank(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 1..8)) {
        let dense: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect();
        let m = QMatrix::from_rows(dense.clone(), 6).unwrap();
        let mut e = SparseEchelon::new(6);
        for r in &dense {
            e.add_row(r.iter().enumerate().filter(|(_, x)| !x.is_zero()));
        }
        prop_assert_eq!(e.rank(), m.rank());
        let null = e.nullspace();
        prop_assert_eq!(null.len(), 6 - m.rank());
        for v in &null {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        for r in &dense {
            prop_assert!(e.contains(r.iter().enumerate().filter(|(_, x)| !x.is_zero())));
        }
    }
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(Rational::new(1, 0).is_err());
    assert!(Rational::zero().recip().is_err());
    assert!("3/0".parse::<Rational>().is_err());
}

#[test]
fn embedding_into_foreign_variables_fails() {
    let a: Arc<[String]> = vec!["a".to_string()].into();
    let b: Arc<[String]> = vec!["b".to_string()].into();
    assert!(MultiPoly::var(&a, 0).embed(&b).is_err());
    assert!(MultiPoly::constant(Rational::from(2)).embed(&b).is_ok());
}

#[test]
fn inverse_round_trip() {
    let m = QMatrix::from_i64(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
    let inv = m.inverse().unwrap();
    assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(3));
    assert!(QMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_err());
}

#[test]
fn oversized_products_are_refused() {
    let v: Arc<[String]> = vec!["x".to_string(), "y".to_string(), "alpha".to_string()].into();
    assert!(MultiPoly::parse("((x+y)^64*(x+alpha)^64)^3", &v).is_err());
    assert!(MultiPoly::parse("(x+y)^65", &v).is_err());
    assert_eq!(MultiPoly::parse("(x+y)^64", &v).unwrap().num_terms(), 65);
}
