mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::{Bracket, Units};
use dpoisson::algebra::FDAlgebra;
use dpoisson::chart::{
    chart_consistency, chart_trace_residuals, register_chart_rep2_a2, register_chart_rep3_a2,
    FrameChoice,
};
use dpoisson::inner::{inner_bracket, WedgeElement};
use dpoisson::rep::{
    induce, induce_rational, poisson_eval, trace_residuals_at, CoordRing, PoissonTable, RepPoint,
};
use dpoisson::{presets, MultiPoly, QMatrix, Rational, Zero};

fn q(k: i64) -> Rational {
    Rational::from(k)
}

fn alpha_table(n: usize) -> PoissonTable {
    induce(&FDAlgebra::a2(), &presets::alpha_family("A"), n).unwrap()
}

#[test]
fn induced_entries_by_hand() {
    let t = alpha_table(2);
    let r = t.ring();
    let v = r.vars();
    let p = |s: &str| MultiPoly::parse(s, v).unwrap();
    let e = |g, i, j| r.index(g, i, j);
    assert_eq!(t.get(e(0, 0, 0), e(1, 0, 0)), &p("A*e0_11^2"));
    assert_eq!(t.get(e(0, 0, 0), e(1, 1, 1)), &p("A*e0_12*e0_21"));
    assert_eq!(t.get(e(1, 0, 0), e(0, 0, 0)), &p("-A*e0_11^2"));
    assert!(t.get(e(0, 0, 0), e(0, 1, 1)).is_zero());
    assert!(t.is_antisymmetric());
}

/// `{(x)_ij, (y)_pq} = Σ {{x,y}}′_pj {{x,y}}″_iq`, evaluated with the oracle's
/// bracket and explicit matrices.
fn oracle_table_value(
    b: &Bracket,
    mats: &[Vec<Vec<Rational>>],
    x: usize,
    y: usize,
    ij: (usize, usize),
    pq: (usize, usize),
) -> Rational {
    let n = b.alg.dim();
    let t = b.eval(&b.alg.basis(x), &b.alg.basis(y));
    let mut out = Rational::zero();
    for u in 0..n {
        for w in 0..n {
            let c = &t[u * n + w];
            if !c.is_zero() {
                out += &(c.clone() * mats[u][pq.0][ij.1].clone() * mats[w][ij.0][pq.1].clone());
            }
        }
    }
    out
}

#[test]
fn induced_table_matches_the_oracle_at_points() {
    let m2 = FDAlgebra::matrix(2).unwrap();
    let units = Units::mat(2);
    let r = WedgeElement::wedge(&m2.basis_element(1), &m2.basis_element(3)).add(
        &WedgeElement::wedge(&m2.basis_element(0), &m2.basis_element(2)),
    );
    let db = inner_bracket(&m2, &r);
    let oracle = Bracket::new(&units, &db);
    let t = induce_rational(&m2, &db, 2).unwrap();
    let g = QMatrix::from_i64(&[&[1, 2], &[1, 3]]);
    let point = RepPoint::matrix_standard(2).unwrap().conjugate(&g).unwrap();
    let coords = point.coordinates(&[]);
    let mats: Vec<Vec<Vec<Rational>>> = (0..4)
        .map(|a| {
            (0..2)
                .map(|i| {
                    (0..2)
                        .map(|j| coords[(a * 2 + i) * 2 + j].clone())
                        .collect()
                })
                .collect()
        })
        .collect();
    let values = t.evaluate(&coords).unwrap();
    let ring = t.ring();
    let m = ring.num_entries();
    for u in 0..m {
        for v in 0..m {
            let ((x, i, j), (y, p, qq)) = (ring.position(u), ring.position(v));
            assert_eq!(
                values[u * m + v],
                oracle_table_value(&oracle, &mats, x, y, (i, j), (p, qq))
            );
        }
    }
}

#[test]
fn traces_are_casimirs_at_points() {
    let a2 = FDAlgebra::a2();
    let m2 = FDAlgebra::matrix(2).unwrap();
    let g = QMatrix::from_i64(&[&[2, 1], &[1, 1]]);
    let sum = RepPoint::direct_sum(&[
        RepPoint::a2_simple(1).unwrap(),
        RepPoint::a2_simple(2).unwrap(),
    ])
    .unwrap();
    let cases = [
        (&a2, RepPoint::a2_standard()),
        (&a2, RepPoint::a2_standard().conjugate(&g).unwrap()),
        (&a2, sum.conjugate(&g).unwrap()),
        (
            &m2,
            RepPoint::matrix_standard(2).unwrap().conjugate(&g).unwrap(),
        ),
    ];
    for (alg, point) in &cases {
        let mut els: Vec<_> = (0..alg.dim()).map(|i| alg.basis_element(i)).collect();
        els.push(alg.unit());
        for x in 0..els.len() {
            for y in x + 1..els.len() {
                let t = induce_rational(
                    alg,
                    &inner_bracket(alg, &WedgeElement::wedge(&els[x], &els[y])),
                    2,
                )
                .unwrap();
                assert!(
                    trace_residuals_at(&t, point, &[]).unwrap().is_empty(),
                    "{} {x}∧{y}",
                    alg.name()
                );
            }
        }
    }
}

#[test]
fn traces_are_casimirs_through_the_chart() {
    let ch = register_chart_rep2_a2("A").unwrap();
    assert!(chart_trace_residuals(&ch, &alpha_table(2))
        .unwrap()
        .is_empty());
}

#[test]
fn traces_are_casimirs_for_the_whole_a2_family() {
    let a2 = FDAlgebra::a2();
    let g = QMatrix::from_i64(&[&[2, 1], &[1, 1]]);
    let point = RepPoint::a2_standard().conjugate(&g).unwrap();
    for pt in [[0, 1, 0], [1, -1, 1], [0, 0, 1]] {
        let t = induce_rational(&a2, &presets::a2_double_family().at_point(&pt.map(q)), 2).unwrap();
        assert!(trace_residuals_at(&t, &point, &[]).unwrap().is_empty());
    }
    let mut raw = dpoisson::bracket::DoubleBracket::zero(3);
    raw.set(1, 1, 1, 1, q(1));
    let t = induce_rational(&a2, &raw, 2).unwrap();
    assert!(!trace_residuals_at(&t, &point, &[]).unwrap().is_empty());
}

#[test]
fn rep2_chart_is_exact_and_detects_mutation() {
    let ch = register_chart_rep2_a2("A").unwrap();
    assert!(ch.relation_residuals().unwrap().is_empty());
    let ok = chart_consistency(&ch, &alpha_table(2)).unwrap();
    assert!(ok.ok());
    assert_eq!(ok.pairs_checked, 144);
    let doubled = induce(
        &FDAlgebra::a2(),
        &presets::alpha_family("A").scale(&q(2)),
        2,
    )
    .unwrap();
    assert!(!chart_consistency(&ch, &doubled).unwrap().ok());
}

#[test]
fn rep3_bivector_rank() {
    let ch = register_chart_rep3_a2(FrameChoice::Standard, "A").unwrap();
    let pt = |ca: i64, cb: i64| [0, 0, ca, cb, 1, 0, 1].map(q);
    assert_eq!(ch.bivector.rank_at(&pt(2, 0)), 2);
    assert_eq!(ch.bivector.rank_at(&pt(0, 0)), 0);
    assert_eq!(ch.bivector.rank_at(&pt(1, 3)), 2);
}

#[test]
fn coordinate_ring_validation() {
    let a2 = FDAlgebra::a2();
    assert!(CoordRing::new(&a2, 0, &[]).is_err());
    assert!(CoordRing::new(&a2, 2, &["e0_11".to_string()]).is_err());
    let r = CoordRing::new(&a2, 2, &["A".to_string()]).unwrap();
    assert_eq!(r.num_entries(), 12);
    assert_eq!(r.vars().len(), 13);
    assert_eq!(r.position(r.index(2, 1, 0)), (2, 1, 0));
}

#[test]
fn rep_point_validation() {
    let a2 = FDAlgebra::a2();
    let z = QMatrix::zeros(2, 2);
    let id = QMatrix::identity(2);
    assert!(RepPoint::new(&a2, vec![z.clone(), id.clone(), z.clone()]).is_ok());
    assert!(RepPoint::new(&a2, vec![id.clone(), id.clone(), z.clone()]).is_err());
    assert!(RepPoint::new(&a2, vec![z.clone(), z.clone(), z]).is_err());
    assert!(RepPoint::a2_simple(3).is_err());
}

fn ring_poly(vars: Arc<[String]>) -> impl Strategy<Value = MultiPoly> {
    let m = vars.len();
    prop::collection::vec((-3i64..=3, 0..m, 0..m + 1), 1..=3).prop_map(move |terms| {
        terms
            .iter()
            .fold(MultiPoly::zero_in(&vars), |acc, &(c, x, y)| {
                let mut p = MultiPoly::var(&vars, x).scale(&q(c));
                if y < m {
                    p = &p * &MultiPoly::var(&vars, y);
                }
                acc + p
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn induced_bracket_is_an_antisymmetric_biderivation(
        (f, g, h) in {
            let v = alpha_table(2).ring().vars().clone();
            (ring_poly(v.clone()), ring_poly(v.clone()), ring_poly(v))
        }
    ) {
        let t = alpha_table(2);
        let fg = poisson_eval(&t, &f, &g).unwrap();
        prop_assert_eq!(&fg, &(-poisson_eval(&t, &g, &f).unwrap()));
        let lhs = poisson_eval(&t, &f, &(&g * &h)).unwrap();
        let rhs = &(&fg * &h) + &(&g * &poisson_eval(&t, &f, &h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
