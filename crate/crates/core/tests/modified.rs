mod common;

use proptest::prelude::*;

use common::{Bracket, Units};
use dpoisson::algebra::FDAlgebra;
use dpoisson::bracket::{check_leibniz, check_leibniz_first, check_skew};
use dpoisson::modified::{flat_bracket, h0_jacobi_check, h0_skew_check, solve_modified};
use dpoisson::solver::{compare_with_family, in_span};
use dpoisson::{presets, Rational, Zero};

/// In the upper triangular matrices, commutators are exactly the multiples of `e0`.
fn is_commutator(x: &[Rational]) -> bool {
    x[1].is_zero() && x[2].is_zero()
}

fn oracle_accepts(units: &Units, db: &dpoisson::bracket::DoubleBracket<Rational>) -> bool {
    let b = Bracket::new(units, db);
    b.leibniz_second_holds()
        && b.leibniz_first_holds()
        && b.h0_skew_holds_mod_commutators(is_commutator)
        && b.h0_jacobi_holds()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn seven_parameter_family_satisfies_the_axioms(point in prop::collection::vec(-5i64..=5, 7)) {
        let pt: Vec<Rational> = point.iter().map(|&k| Rational::from(k)).collect();
        let db = presets::mdpb_family().at_point(&pt);
        let a = FDAlgebra::a2();
        prop_assert!(oracle_accepts(&Units::a2(), &db));
        prop_assert!(check_leibniz(&a, &db).is_empty() && check_leibniz_first(&a, &db).is_empty());
        prop_assert!(h0_skew_check(&a, &db) && h0_jacobi_check(&a, &db));
        prop_assert!(flat_bracket(&a, &db).unwrap().is_zero());
    }
}

#[test]
fn family_satisfies_the_axioms_symbolically() {
    let a = FDAlgebra::a2();
    let f = presets::mdpb_family();
    assert!(check_leibniz(&a, &f).is_empty());
    assert!(check_leibniz_first(&a, &f).is_empty());
    assert!(h0_skew_check(&a, &f));
    assert!(h0_jacobi_check(&a, &f));
    let flat = flat_bracket(&a, &f).unwrap();
    assert_eq!(flat.basis.len(), 2);
    assert!(flat.is_zero());
}

#[test]
fn extra_direction_passes_the_oracle() {
    let a = FDAlgebra::a2();
    let extra = presets::mdpb_extra_direction();
    assert!(oracle_accepts(&Units::a2(), &extra));
    assert!(h0_skew_check(&a, &extra) && h0_jacobi_check(&a, &extra));
    assert!(
        !check_skew(&extra).is_empty(),
        "the extra direction is not a double bracket"
    );
}

#[test]
fn solution_space_contains_the_family_and_one_more_direction() {
    let a = FDAlgebra::a2();
    let v = solve_modified(&a);
    assert_eq!(v.nullspace_dim(), 8);
    assert!(v.quadratic_constraints.is_empty());
    let cmp = compare_with_family(&v, &presets::mdpb_family());
    assert_eq!(cmp.family_dim, 7);
    assert!(cmp.contained && !cmp.equal);
    assert!(in_span(&v, &presets::mdpb_extra_direction()));
}

#[test]
fn every_basis_solution_passes_the_oracle() {
    let a = FDAlgebra::a2();
    let v = solve_modified(&a);
    let g = v.general_element();
    for k in 0..v.nullspace_dim() {
        let mut pt = vec![Rational::zero(); v.nullspace_dim()];
        pt[k] = Rational::from(1);
        assert!(
            oracle_accepts(&Units::a2(), &g.at_point(&pt)),
            "basis solution {k}"
        );
    }
}

#[test]
fn first_leibniz_rule_agrees_with_the_oracle_on_a_double_bracket() {
    let db = presets::alpha_family("A").at_point(&[Rational::from(1)]);
    let units = Units::a2();
    let b = Bracket::new(&units, &db);
    assert_eq!(
        check_leibniz_first(&FDAlgebra::a2(), &db).is_empty(),
        b.leibniz_first_holds()
    );
}
