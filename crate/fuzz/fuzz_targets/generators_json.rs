#![no_main]

use libfuzzer_sys::fuzz_target;
use phasekit::io::{generators_to_json, parse_generators_json, parse_submodule_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_generators_json(text) {
        parse_generators_json(&generators_to_json(&g)).expect("serialized generators reparse");
    }
    let _ = parse_submodule_json(text);
});
