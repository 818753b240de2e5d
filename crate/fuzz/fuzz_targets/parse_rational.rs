#![no_main]

use dpoisson::Rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(q) = data.parse::<Rational>() {
        assert_eq!(q.to_string().parse::<Rational>().unwrap(), q);
    }
});
