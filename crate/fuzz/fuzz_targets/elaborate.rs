#![no_main]

use libfuzzer_sys::fuzz_target;
use quante2::catalog::get_preset;
use quante2::exprio::{parse_expr, elaborate_expr, elaborate_poly};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(ast) = parse_expr(s) else { return };
    let pre = get_preset("qe2-nonstd").unwrap();
    let t = pre.tower().unwrap();
    let _ = elaborate_poly(&ast, t);
    let _ = elaborate_expr(&ast, &[t.as_ref(), t.as_ref()]);
});
