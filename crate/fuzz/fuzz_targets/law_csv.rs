#![no_main]

use frechet_core::io::parse_law;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // auto-detection routes to either parser
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_law(text);
    }
});
