#![no_main]

use std::sync::Arc;

use dpoisson::MultiPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let vars: Arc<[String]> = ["x", "y", "alpha"].iter().map(|s| s.to_string()).collect::<Vec<_>>().into();
    if let Ok(p) = MultiPoly::parse(data, &vars) {
        assert_eq!(MultiPoly::parse(&p.to_string(), &vars).unwrap(), p);
    }
});
