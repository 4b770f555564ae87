#![no_main]

use libfuzzer_sys::fuzz_target;
use quante2::exprio::parse_expr;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        // syntax errors are fine, panics are not
        let _ = parse_expr(s);
    }
});
