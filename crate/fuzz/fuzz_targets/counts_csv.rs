#![no_main]

use libfuzzer_sys::fuzz_target;
use phasekit::io::{counts_to_csv, parse_counts_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = parse_counts_csv(text) {
        let again = parse_counts_csv(&counts_to_csv(&rows)).expect("serialized counts reparse");
        assert_eq!(rows.len(), again.len());
    }
});
