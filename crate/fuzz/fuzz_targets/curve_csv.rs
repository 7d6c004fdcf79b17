#![no_main]

use frechet_core::curve::{discrete_frechet, frechet_distance};
use frechet_core::io::parse_curve_csv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_curve_csv(text) {
        // small curves only; the distance itself must not panic either
        if p.len() <= 16 {
            let _ = discrete_frechet(&p, &p);
            let _ = frechet_distance(&p, &p.reversed(), 1e-6);
        }
    }
});
