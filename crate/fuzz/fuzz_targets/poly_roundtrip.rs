#![no_main]

use libfuzzer_sys::fuzz_target;
use outer_billiards::poly::parse::parse_poly;

// Anything the parser accepts must survive a canonical print/reparse cycle
// unchanged.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(poly) = parse_poly(text) {
            let printed = poly.to_string();
            let reparsed = parse_poly(&printed)
                .unwrap_or_else(|e| panic!("canonical form {printed:?} failed to parse: {e}"));
            assert_eq!(reparsed, poly, "round trip changed {printed:?}");
        }
    }
});
