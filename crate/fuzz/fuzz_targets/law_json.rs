#![no_main]

use frechet_core::io::parse_law_json;
use frechet_core::law::{kolmogorov, wasserstein_p};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(law) = parse_law_json(text) {
        let _ = wasserstein_p(&law, &law, 2.0);
        let _ = kolmogorov(&law, &law);
    }
});
