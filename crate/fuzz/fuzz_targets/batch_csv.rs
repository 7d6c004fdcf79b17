#![no_main]

use frechet_core::gaussian::estimate_gaussian;
use frechet_core::io::parse_batch_csv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(batch) = parse_batch_csv(text) {
        if batch.dim() <= 8 {
            let _ = estimate_gaussian(&batch);
        }
    }
});
