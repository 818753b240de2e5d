#![no_main]

use dpoisson::algebra::FDAlgebra;
use dpoisson::io::{bracket_to_json, parse_bracket_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let alg = FDAlgebra::a2();
    if let Ok(spec) = parse_bracket_json(data, &alg) {
        let text = bracket_to_json(&spec.bracket, spec.algebra.as_deref(), spec.modified);
        let again = parse_bracket_json(&text, &alg).unwrap();
        assert_eq!(again.bracket.coeffs().len(), spec.bracket.coeffs().len());
    }
});
