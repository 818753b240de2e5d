use std::path::PathBuf;
use std::sync::Arc;

use dpoisson::algebra::FDAlgebra;
use dpoisson::inner::{inner_bracket, WedgeElement};
use dpoisson::io::{
    algebra_to_json, bracket_to_json, parse_algebra_json, parse_bracket_json, parse_wedge_json,
    referenced_algebra,
};
use dpoisson::{presets, MultiPoly, Rational};

#[test]
fn algebra_round_trips() {
    for name in ["a2", "mat2", "mat1+mat1", "a2+mat1"] {
        let alg = presets::algebra(name).unwrap();
        assert_eq!(
            parse_algebra_json(&algebra_to_json(&alg)).unwrap(),
            alg,
            "{name}"
        );
    }
}

#[test]
fn bracket_round_trips() {
    let alg = FDAlgebra::a2();
    for db in [
        presets::a2_double_family(),
        presets::mdpb_family(),
        presets::alpha_family("A"),
    ] {
        let text = bracket_to_json(&db, Some("a2"), false);
        let spec = parse_bracket_json(&text, &alg).unwrap();
        assert_eq!(spec.bracket, db);
        assert_eq!(spec.algebra.as_deref(), Some("a2"));
        assert_eq!(referenced_algebra(&text).unwrap().as_deref(), Some("a2"));
    }
}

#[test]
fn bracket_slots_by_name_and_index_agree() {
    let alg = FDAlgebra::a2();
    let by_name = parse_bracket_json(
        r#"{"params": ["A"], "coeffs": [["e0", "e1", "e0", "e0", "A"]]}"#,
        &alg,
    )
    .unwrap();
    let by_index =
        parse_bracket_json(r#"{"params": ["A"], "coeffs": [[0, 1, 0, 0, "A"]]}"#, &alg).unwrap();
    assert_eq!(by_name.bracket, by_index.bracket);
    let vars: Arc<[String]> = vec!["A".to_string()].into();
    assert_eq!(by_name.bracket.get(0, 1, 0, 0), &MultiPoly::var(&vars, 0));
}

#[test]
fn malformed_inputs_are_rejected() {
    let alg = FDAlgebra::a2();
    for bad in [
        r#"{"coeffs": [[3, 0, 0, 0, 1]]}"#,
        r#"{"coeffs": [["e9", 0, 0, 0, 1]]}"#,
        r#"{"params": ["A", "A"], "coeffs": []}"#,
        r#"{"coeffs": [[0, 1, 0, 0, "B"]]}"#,
        r#"{"coeffs": [], "extra": 1}"#,
        r#"{"coeffs": [[0, 1, 0, 0, "1/0"]]}"#,
        "not json",
    ] {
        assert!(parse_bracket_json(bad, &alg).is_err(), "{bad}");
    }
    for bad in [
        r#"{"name": "x", "basis": ["u"], "unit": ["0"], "mul": [[0, 0, 0, "1"]]}"#,
        r#"{"name": "x", "basis": ["u", "a", "b"], "unit": ["1", "0", "0"], "mul": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [0, 2, 2, "1"], [2, 0, 2, "1"], [1, 1, 2, "1"], [2, 1, 1, "1"]]}"#,
        r#"{"name": "x", "basis": ["u"], "unit": ["1"], "mul": [[0, 0, 5, "1"]]}"#,
    ] {
        assert!(parse_algebra_json(bad).is_err(), "{bad}");
    }
    let big: Vec<String> = (0..40).map(|i| format!("\"b{i}\"")).collect();
    let text = format!(
        r#"{{"name": "big", "basis": [{}], "unit": []}}"#,
        big.join(",")
    );
    assert!(parse_algebra_json(&text).is_err());
}

#[test]
fn wedge_files() {
    let alg = FDAlgebra::a2();
    let r = parse_wedge_json(
        r#"{"algebra": "a2", "terms": [["1", "e0", "2"], ["e0", "e1", "-1/2"]]}"#,
        &alg,
    )
    .unwrap();
    let expected = WedgeElement::wedge(&alg.unit(), &alg.basis_element(0))
        .scale(&Rational::from(2))
        .add(
            &WedgeElement::wedge(&alg.basis_element(0), &alg.basis_element(1))
                .scale(&"-1/2".parse().unwrap()),
        );
    assert_eq!(r, expected);
    assert!(parse_wedge_json(r#"{"terms": [["e5", "e0", "1"]]}"#, &alg).is_err());
}

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(PathBuf, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .map(|p| {
            let s = String::from_utf8_lossy(&std::fs::read(&p).unwrap()).into_owned();
            (p, s)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn fuzz_seeds_replay() {
    for (_, s) in seeds("parse_rational") {
        if let Ok(q) = s.parse::<Rational>() {
            assert_eq!(q.to_string().parse::<Rational>().unwrap(), q);
        }
    }
    let vars: Arc<[String]> = ["x", "y", "alpha"]
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .into();
    for (_, s) in seeds("parse_poly") {
        if let Ok(p) = MultiPoly::parse(&s, &vars) {
            assert_eq!(MultiPoly::parse(&p.to_string(), &vars).unwrap(), p);
        }
    }
    for (_, s) in seeds("parse_algebra_json") {
        if let Ok(alg) = parse_algebra_json(&s) {
            assert_eq!(parse_algebra_json(&algebra_to_json(&alg)).unwrap(), alg);
        }
    }
    let a2 = FDAlgebra::a2();
    for (_, s) in seeds("parse_bracket_json") {
        if let Ok(spec) = parse_bracket_json(&s, &a2) {
            let text = bracket_to_json(&spec.bracket, spec.algebra.as_deref(), spec.modified);
            assert_eq!(
                parse_bracket_json(&text, &a2).unwrap().bracket,
                spec.bracket
            );
        }
    }
    for (_, s) in seeds("parse_wedge_json") {
        if let Ok(r) = parse_wedge_json(&s, &a2) {
            let _ = inner_bracket(&a2, &r);
        }
    }
}
