#![no_main]

use libfuzzer_sys::fuzz_target;
use phasekit::io::{grid_to_csv, grid_to_pgm, parse_grid_csv, GrayScale};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_grid_csv(text) {
        let again = parse_grid_csv(&grid_to_csv(&w)).expect("serialized grid reparses");
        assert_eq!(w.values().len(), again.values().len());
        let _ = grid_to_pgm(&w, GrayScale::for_grid(&w), 1);
    }
});
