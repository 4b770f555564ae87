#![no_main]

use libfuzzer_sys::fuzz_target;
use quante2::catalog::load_preset_str;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = load_preset_str(s);
    }
});
