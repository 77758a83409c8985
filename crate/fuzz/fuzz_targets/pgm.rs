#![no_main]

use libfuzzer_sys::fuzz_target;
use phasekit::io::parse_pgm;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((w, h, px)) = parse_pgm(text) {
        assert_eq!(px.len(), w * h);
    }
});
