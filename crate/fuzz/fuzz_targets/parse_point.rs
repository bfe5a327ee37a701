#![no_main]

use libfuzzer_sys::fuzz_target;
use outer_billiards::poly::parse::{parse_axes, parse_point};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(p) = parse_point(text) {
            assert!(p[0].is_finite() && p[1].is_finite());
        }
        if let Ok((a, b)) = parse_axes(text) {
            assert!(a > 0.0 && b > 0.0);
        }
    }
});
