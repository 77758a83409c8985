//! Every checked-in fuzz seed must parse and survive a serialize round trip.

use std::fs;
use std::path::PathBuf;

use phasekit::galois::GaloisField;
use phasekit::io::*;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.display().to_string(), fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn state_and_operator_seeds() {
    for (name, text) in seeds("state_json") {
        let psi = parse_state_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        parse_state_json(&state_to_json(&psi)).unwrap();
    }
    for (name, text) in seeds("operator_json") {
        let op = parse_operator_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_operator_json(&operator_to_json(&op)).unwrap().matrix(), op.matrix());
    }
}

#[test]
fn grid_and_image_seeds() {
    for (name, text) in seeds("grid_csv") {
        let w = parse_grid_csv(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(grid_to_csv(&w), text);
    }
    for (name, text) in seeds("pgm") {
        let (w, h, px) = parse_pgm(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(px.len(), w * h);
    }
}

#[test]
fn structure_seeds() {
    for (name, text) in seeds("generators_json") {
        let g = parse_generators_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        parse_generators_json(&generators_to_json(&g)).unwrap();
    }
    for (name, text) in seeds("counts_csv") {
        let rows = parse_counts_csv(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(counts_to_csv(&rows), text);
    }
    for (name, text) in seeds("clifford_json") {
        let (s, a) = parse_clifford_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_clifford_json(&clifford_to_json(&s, &a)).unwrap().1, a);
    }
}

#[test]
fn config_seeds() {
    for (name, text) in seeds("field_spec") {
        let spec = parse_field_spec(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        GaloisField::from_spec(&spec).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    for (name, text) in seeds("run_config") {
        let format = if name.ends_with(".json") { ConfigFormat::Json } else { ConfigFormat::Toml };
        let cfg = RunConfig::parse(&text, format).unwrap_or_else(|e| panic!("{name}: {e}"));
        cfg.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
