#![no_main]

use libfuzzer_sys::fuzz_target;
use outer_billiards::poly::parse::parse_poly;

// The grammar parser must never panic; malformed input comes back as a
// positioned parse error.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_poly(text);
    }
});
