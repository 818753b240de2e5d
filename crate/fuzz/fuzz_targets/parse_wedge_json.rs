#![no_main]

use dpoisson::algebra::FDAlgebra;
use dpoisson::inner::inner_bracket;
use dpoisson::io::parse_wedge_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let alg = FDAlgebra::a2();
    if let Ok(r) = parse_wedge_json(data, &alg) {
        let _ = inner_bracket(&alg, &r);
    }
});
