#![no_main]

use dpoisson::io::{algebra_to_json, parse_algebra_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(alg) = parse_algebra_json(data) {
        assert_eq!(parse_algebra_json(&algebra_to_json(&alg)).unwrap(), alg);
    }
});
