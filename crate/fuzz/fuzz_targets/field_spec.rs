#![no_main]

use libfuzzer_sys::fuzz_target;
use phasekit::galois::GaloisField;
use phasekit::io::parse_field_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_field_spec(text) {
        if let Ok(f) = GaloisField::from_spec(&spec) {
            let one = f.scalar(1);
            for x in f.elements().into_iter().skip(1) {
                assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), one);
            }
        }
    }
});
