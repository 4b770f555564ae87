#![no_main]

use libfuzzer_sys::fuzz_target;
use quante2::catalog::get_preset;
use quante2::exprio::{format_poly, parse_poly};

// Anything that parses must print to text that parses back to the same
// element, as long as the coefficients stay Laurent polynomials.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.contains('/') {
        return;
    }
    let pre = get_preset("qe2-nonstd").unwrap();
    let t = pre.tower().unwrap();
    let Ok(x) = parse_poly(s, t) else { return };
    let printed = format_poly(&x, t);
    let back = parse_poly(&printed, t).unwrap_or_else(|e| panic!("{:?} -> {:?}: {}", s, printed, e));
    assert_eq!(back, x, "{:?} -> {:?}", s, printed);
});
