#![no_main]

use frechet_core::divergence::{hellinger, total_variation};
use frechet_core::io::parse_discrete_law_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(law) = parse_discrete_law_json(text) {
        let _ = total_variation(&law, &law);
        let _ = hellinger(&law, &law);
    }
});
