#![no_main]

use libfuzzer_sys::fuzz_target;
use phasekit::io::{clifford_to_json, parse_clifford_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((s, a)) = parse_clifford_json(text) {
        let (s2, a2) = parse_clifford_json(&clifford_to_json(&s, &a)).expect("serialized label reparses");
        assert_eq!(a, a2);
        assert!(s2.is_symplectic());
    }
});
