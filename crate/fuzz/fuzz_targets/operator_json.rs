#![no_main]

use libfuzzer_sys::fuzz_target;
use phasekit::io::{operator_to_json, parse_operator_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(op) = parse_operator_json(text) {
        let again = parse_operator_json(&operator_to_json(&op)).expect("serialized operator reparses");
        assert_eq!(op.matrix(), again.matrix());
    }
});
