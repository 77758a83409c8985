#![no_main]

use libfuzzer_sys::fuzz_target;
use phasekit::io::{parse_state_json, state_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(psi) = parse_state_json(text) {
        let again = parse_state_json(&state_to_json(&psi)).expect("serialized state reparses");
        assert_eq!(psi.modulus(), again.modulus());
    }
});
