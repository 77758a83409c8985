#![no_main]

use libfuzzer_sys::fuzz_target;
use phasekit::io::{ConfigFormat, RunConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for format in [ConfigFormat::Toml, ConfigFormat::Json] {
        if let Ok(cfg) = RunConfig::parse(text, format) {
            let _ = cfg.validate();
            let _ = cfg.budget();
            let _ = cfg.thresholds();
        }
    }
});
