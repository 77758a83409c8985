//! File formats: state and operator JSON, Wigner grid CSV/PGM/SVG,
//! generator-matrix JSON, count CSV, Clifford JSON and run configuration.
//!
//! Every parser validates sizes before allocating and reports problems as
//! [`Error::Parse`] or the domain error of the offending value.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::FieldSpec;
use crate::hudson::Thresholds;
use crate::linalg::{CMatrix, DenseOperator, StateVector};
use crate::phasespace::{PhaseVector, Submodule, SymplecticMatrix, ENUMERATION_BUDGET};
use crate::stabilizer::{CountReport, GeneratorMatrix};
use crate::wigner::WignerGrid;
use crate::zmod::{Modulus, RingVector};

/// Largest Hilbert-space dimension accepted from files.
pub const MAX_FILE_DIM: usize = 729;

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

/// `Modulus::new` plus a dimension cap, without overflowing.
pub fn checked_modulus(d: u64, n: usize, max_dim: usize) -> Result<Modulus> {
    let m = Modulus::new(d, n)?;
    let dim = (d as usize).checked_pow(n as u32).filter(|&x| x <= max_dim);
    match dim {
        Some(_) => Ok(m),
        None => Err(Error::BudgetExceeded { size: u64::MAX.min(d.saturating_pow(n.min(64) as u32)), limit: max_dim as u64 }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    d: u64,
    n: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// `{"d": 3, "n": 1, "amplitudes": [[re, im], ...]}` in lexicographic order.
pub fn parse_state_json(text: &str) -> Result<StateVector> {
    let f: StateFile = serde_json::from_str(text).map_err(parse_err)?;
    let m = checked_modulus(f.d, f.n, MAX_FILE_DIM)?;
    StateVector::new(m, f.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
}

pub fn state_to_json(psi: &StateVector) -> String {
    let m = psi.modulus();
    let f = StateFile {
        d: m.d() as u64,
        n: m.n(),
        amplitudes: psi.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
    };
    serde_json::to_string_pretty(&f).expect("plain data serializes")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorFile {
    d: u64,
    n: usize,
    /// Row-major `[[re, im], ...]` rows.
    entries: Vec<Vec<[f64; 2]>>,
}

/// `{"d", "n", "entries": [[[re, im], ...], ...]}`, rows indexed by `Q`.
pub fn parse_operator_json(text: &str) -> Result<DenseOperator> {
    let f: OperatorFile = serde_json::from_str(text).map_err(parse_err)?;
    let m = checked_modulus(f.d, f.n, MAX_FILE_DIM)?;
    let dim = m.dim();
    if f.entries.len() != dim || f.entries.iter().any(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: f.entries.len() });
    }
    if f.entries.iter().flatten().any(|z| !z[0].is_finite() || !z[1].is_finite()) {
        return Err(Error::Parse("non-finite matrix entry".into()));
    }
    DenseOperator::new(m, CMatrix::from_fn(dim, dim, |r, c| Complex64::new(f.entries[r][c][0], f.entries[r][c][1])))
}

pub fn operator_to_json(op: &DenseOperator) -> String {
    let m = op.modulus();
    let mat = op.matrix();
    let f = OperatorFile {
        d: m.d() as u64,
        n: m.n(),
        entries: (0..m.dim()).map(|r| (0..m.dim()).map(|c| [mat[(r, c)].re, mat[(r, c)].im]).collect()).collect(),
    };
    serde_json::to_string_pretty(&f).expect("plain data serializes")
}

fn grid_header(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("p{i}")).chain((1..=n).map(|i| format!("q{i}"))).chain(std::iter::once("value".into())).collect()
}

/// Header `p1..pn,q1..qn,value`, rows in phase-space index order. Values
/// use the shortest representation that parses back to the same `f64`.
pub fn grid_to_csv(w: &WignerGrid) -> String {
    let m = w.modulus();
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(grid_header(m.n())).expect("in-memory write");
    for (i, v) in w.values().iter().enumerate() {
        let mut row: Vec<String> = w.point(i).coords().iter().map(u32::to_string).collect();
        row.push(format!("{v:?}"));
        out.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(out.into_inner().expect("in-memory flush")).expect("ascii")
}

/// Inverse of [`grid_to_csv`]; rows may come in any order but every point
/// must appear exactly once.
pub fn parse_grid_csv(text: &str) -> Result<WignerGrid> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().map_err(parse_err)?.iter().map(|s| s.trim().to_string()).collect();
    if header.len() < 3 || header.len() % 2 == 0 {
        return Err(Error::Parse("header must be p1..pn,q1..qn,value".into()));
    }
    let n = (header.len() - 1) / 2;
    if header != grid_header(n) {
        return Err(Error::Parse(format!("expected header {}", grid_header(n).join(","))));
    }
    let mut rows: Vec<(Vec<u64>, f64)> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(parse_err)?;
        if rec.len() != header.len() {
            return Err(Error::Parse(format!("row has {} fields, expected {}", rec.len(), header.len())));
        }
        if rows.len() >= MAX_FILE_DIM * MAX_FILE_DIM {
            return Err(Error::BudgetExceeded { size: rows.len() as u64 + 1, limit: (MAX_FILE_DIM * MAX_FILE_DIM) as u64 });
        }
        let coords = rec.iter().take(2 * n).map(|s| s.trim().parse::<u64>().map_err(parse_err)).collect::<Result<Vec<_>>>()?;
        let value: f64 = rec[2 * n].trim().parse().map_err(parse_err)?;
        if !value.is_finite() {
            return Err(Error::Parse("non-finite value".into()));
        }
        rows.push((coords, value));
    }
    // d^{2n} rows
    let d = (1..=MAX_FILE_DIM as u64)
        .find(|&d| d.checked_pow(2 * n as u32).is_some_and(|x| x == rows.len() as u64))
        .ok_or_else(|| Error::Parse(format!("{} rows is not d^{}", rows.len(), 2 * n)))?;
    let m = checked_modulus(d, n, MAX_FILE_DIM)?;
    let mut values = vec![f64::NAN; m.phase_points()];
    for (coords, value) in rows {
        if coords.iter().any(|&c| c >= d) {
            return Err(Error::Parse(format!("coordinate out of range for d={d}")));
        }
        let idx = coords.iter().fold(0usize, |acc, &c| acc * d as usize + c as usize);
        if !values[idx].is_nan() {
            return Err(Error::Parse(format!("duplicate point {coords:?}")));
        }
        values[idx] = value;
    }
    WignerGrid::new(m, values)
}

/// Affine gray map `gray = round(255 (value - lo) / (hi - lo))`, clamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrayScale {
    pub lo: f64,
    pub hi: f64,
}

impl GrayScale {
    /// Black at `min(0, min W)`, white at `max W`.
    pub fn for_grid(w: &WignerGrid) -> Self {
        let lo = w.min().min(0.0);
        let hi = w.max();
        GrayScale { lo, hi: if hi > lo { hi } else { lo + 1.0 } }
    }

    pub fn gray(&self, v: f64) -> u8 {
        let t = ((v - self.lo) / (self.hi - self.lo)).clamp(0.0, 1.0);
        (255.0 * t).round() as u8
    }
}

/// Column = p-block index, row = q-block index with the largest `q` on top,
/// so the origin sits bottom left. Each point is a `cell x cell` block.
fn raster(w: &WignerGrid, scale: GrayScale, cell: usize) -> (usize, Vec<Vec<u8>>) {
    let side = w.modulus().dim();
    let px = side * cell;
    let mut rows = vec![vec![0u8; px]; px];
    for (i, &v) in w.values().iter().enumerate() {
        let (pb, qb) = (i / side, i % side);
        let g = scale.gray(v);
        for y in 0..cell {
            for x in 0..cell {
                rows[(side - 1 - qb) * cell + y][pb * cell + x] = g;
            }
        }
    }
    (px, rows)
}

/// Plain PGM (P2).
pub fn grid_to_pgm(w: &WignerGrid, scale: GrayScale, cell: usize) -> String {
    let cell = cell.max(1);
    let (px, rows) = raster(w, scale, cell);
    let mut out = String::new();
    out.push_str("P2\n");
    let _ = writeln!(out, "# gray = round(255 * (value - lo) / (hi - lo)), clamped; lo = {:?} (black), hi = {:?} (white)", scale.lo, scale.hi);
    let _ = writeln!(out, "# columns: p, rows: q from top (largest) to bottom (0); {cell}x{cell} pixels per point");
    let _ = writeln!(out, "{px} {px}\n255");
    for row in rows {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Minimal P2 reader, used by tests and the fuzz harness.
pub fn parse_pgm(text: &str) -> Result<(usize, usize, Vec<u8>)> {
    let mut tokens = text.lines().map(|l| l.split('#').next().unwrap_or("")).flat_map(str::split_whitespace);
    if tokens.next() != Some("P2") {
        return Err(Error::Parse("missing P2 magic".into()));
    }
    let mut num = |what: &str| -> Result<usize> {
        tokens.next().ok_or_else(|| Error::Parse(format!("missing {what}")))?.parse::<usize>().map_err(parse_err)
    };
    let (wd, ht, maxval) = (num("width")?, num("height")?, num("maxval")?);
    if maxval == 0 || maxval > 255 {
        return Err(Error::Parse(format!("unsupported maxval {maxval}")));
    }
    let total = wd.checked_mul(ht).filter(|&t| t <= 1 << 24).ok_or_else(|| Error::Parse("image too large".into()))?;
    let mut px = Vec::with_capacity(total);
    for _ in 0..total {
        let v = num("pixel")?;
        if v > maxval {
            return Err(Error::Parse(format!("pixel {v} exceeds maxval")));
        }
        px.push(v as u8);
    }
    if tokens.next().is_some() {
        return Err(Error::Parse("trailing data".into()));
    }
    Ok((wd, ht, px))
}

/// Heatmap with the PGM layout; `overlays` are sets of phase-space indices
/// outlined in color, one color per set.
pub fn grid_to_svg(w: &WignerGrid, scale: GrayScale, cell: usize, overlays: &[Vec<usize>]) -> String {
    const COLORS: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];
    let cell = cell.max(1);
    let side = w.modulus().dim();
    let px = side * cell;
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{px}" height="{px}" viewBox="0 0 {px} {px}">"#);
    for (i, &v) in w.values().iter().enumerate() {
        let (pb, qb) = (i / side, i % side);
        let g = scale.gray(v);
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{cell}" height="{cell}" fill="rgb({g},{g},{g})"><title>{:?}</title></rect>"#,
            pb * cell,
            (side - 1 - qb) * cell,
            v
        );
    }
    for (k, set) in overlays.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let inset = 2 + 2 * (k % 4);
        for &i in set {
            let (pb, qb) = (i / side, i % side);
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
                pb * cell + inset,
                (side - 1 - qb) * cell + inset,
                cell.saturating_sub(2 * inset),
                cell.saturating_sub(2 * inset)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorFile {
    d: u64,
    n: usize,
    /// Column-major: each inner array is one generator `(p, q)`.
    columns: Vec<Vec<i64>>,
}

pub fn generators_to_json(g: &GeneratorMatrix) -> String {
    let f = GeneratorFile {
        d: g.d as u64,
        n: g.n,
        columns: g.columns.iter().map(|c| c.coords().iter().map(|&x| x as i64).collect()).collect(),
    };
    serde_json::to_string(&f).expect("plain data serializes")
}

/// `{"d": 3, "n": 1, "columns": [[p.., q..], ...]}`.
pub fn parse_generators_json(text: &str) -> Result<GeneratorMatrix> {
    let f: GeneratorFile = serde_json::from_str(text).map_err(parse_err)?;
    let m = checked_modulus(f.d, f.n, MAX_FILE_DIM)?;
    if m.phase_points() as u64 > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded { size: m.phase_points() as u64, limit: ENUMERATION_BUDGET });
    }
    if f.columns.len() > 4 * f.n {
        return Err(Error::Parse(format!("at most {} generators", 4 * f.n)));
    }
    let columns = f
        .columns
        .iter()
        .map(|c| {
            if c.len() != 2 * f.n {
                return Err(Error::DimensionMismatch { expected: 2 * f.n, found: c.len() });
            }
            Ok(RingVector::new(m.d(), c))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorMatrix { d: m.d(), n: f.n, columns })
}

/// The submodule spanned by a generator file.
pub fn parse_submodule_json(text: &str) -> Result<Submodule> {
    Ok(parse_generators_json(text)?.span())
}

/// `n,m,d,iso,stabs,enumerated`; missing values are empty fields.
pub fn counts_to_csv(rows: &[CountReport]) -> String {
    let mut out = csv::Writer::from_writer(Vec::new());
    for r in rows {
        out.serialize(r).expect("in-memory write");
    }
    if rows.is_empty() {
        out.write_record(["n", "m", "d", "iso", "stabs", "enumerated"]).expect("in-memory write");
    }
    String::from_utf8(out.into_inner().expect("in-memory flush")).expect("ascii")
}

pub fn parse_counts_csv(text: &str) -> Result<Vec<CountReport>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().map_err(parse_err)?.iter().map(str::to_string).collect();
    if header != ["n", "m", "d", "iso", "stabs", "enumerated"] {
        return Err(Error::Parse("expected header n,m,d,iso,stabs,enumerated".into()));
    }
    rdr.deserialize().map(|r| r.map_err(parse_err)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CliffordFile {
    d: u64,
    n: usize,
    /// Row-major rows of the `2n x 2n` matrix.
    #[serde(rename = "S")]
    s: Vec<Vec<i64>>,
    a: Vec<i64>,
}

/// `{"S": [[..], ..], "a": [..], "d": 3, "n": 1}`; validates `S` symplectic.
pub fn parse_clifford_json(text: &str) -> Result<(SymplecticMatrix, PhaseVector)> {
    let f: CliffordFile = serde_json::from_str(text).map_err(parse_err)?;
    let m = checked_modulus(f.d, f.n, MAX_FILE_DIM)?;
    let k = 2 * f.n;
    if f.s.len() != k || f.s.iter().any(|r| r.len() != k) {
        return Err(Error::DimensionMismatch { expected: k, found: f.s.len() });
    }
    if f.a.len() != k {
        return Err(Error::DimensionMismatch { expected: k, found: f.a.len() });
    }
    let entries: Vec<i64> = f.s.concat();
    let s = SymplecticMatrix::new(m.d(), f.n, &entries)?;
    Ok((s, PhaseVector::new(m.d(), &f.a[..f.n], &f.a[f.n..])))
}

pub fn clifford_to_json(s: &SymplecticMatrix, a: &PhaseVector) -> String {
    let k = 2 * s.n();
    let f = CliffordFile {
        d: s.modulus() as u64,
        n: s.n(),
        s: (0..k).map(|r| (0..k).map(|c| s.entry(r, c) as i64).collect()).collect(),
        a: a.coords().iter().map(|&x| x as i64).collect(),
    };
    serde_json::to_string(&f).expect("plain data serializes")
}

pub fn parse_field_spec(text: &str) -> Result<FieldSpec> {
    let spec: FieldSpec = serde_json::from_str(text).map_err(parse_err)?;
    if spec.poly.as_ref().is_some_and(|p| p.len() > 16) {
        return Err(Error::Parse("polynomial degree too large".into()));
    }
    Ok(spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Pgm,
    Svg,
    Json,
}

/// Optional overrides of the numerical thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub negativity: Option<f64>,
    pub support: Option<f64>,
    pub matching: Option<f64>,
}

/// Settings shared by all commands. Defaults: seed 0, budget 6561,
/// format csv, no output directory.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub d: Option<u64>,
    pub n: Option<usize>,
    pub seed: u64,
    /// Largest `d^{2n}` to enumerate; cannot exceed the library budget.
    pub budget: Option<u64>,
    pub format: OutputFormat,
    pub out: Option<String>,
    pub tolerances: ToleranceOverrides,
    pub field: Option<FieldSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigFormat {
    Toml,
    Json,
}

impl RunConfig {
    pub fn parse(text: &str, format: ConfigFormat) -> Result<Self> {
        let cfg: RunConfig = match format {
            ConfigFormat::Toml => toml::from_str(text).map_err(parse_err)?,
            ConfigFormat::Json => serde_json::from_str(text).map_err(parse_err)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Format chosen by extension: `.json` is JSON, anything else TOML.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let format = match path.extension().and_then(|e| e.to_str()) {
            Some("json") => ConfigFormat::Json,
            _ => ConfigFormat::Toml,
        };
        RunConfig::parse(&text, format)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(d) = self.d {
            Modulus::new(d, self.n.unwrap_or(1))?;
        }
        if self.n == Some(0) {
            return Err(Error::ZeroParticles);
        }
        for (name, v) in [
            ("negativity", self.tolerances.negativity),
            ("support", self.tolerances.support),
            ("matching", self.tolerances.matching),
        ] {
            if v.is_some_and(|x| !x.is_finite()) {
                return Err(Error::Parse(format!("tolerance {name} must be finite")));
            }
        }
        Ok(())
    }

    pub fn budget(&self) -> u64 {
        self.budget.unwrap_or(ENUMERATION_BUDGET).min(ENUMERATION_BUDGET)
    }

    pub fn thresholds(&self) -> Thresholds {
        let base = Thresholds::default();
        Thresholds {
            negativity: self.tolerances.negativity.unwrap_or(base.negativity),
            support: self.tolerances.support.unwrap_or(base.support),
            matching: self.tolerances.matching.unwrap_or(base.matching),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hudson::counterexample_mixture;
    use crate::stabilizer::count_report;
    use crate::wigner::wigner_pure;

    fn m31() -> Modulus {
        Modulus::new(3, 1).unwrap()
    }

    #[test]
    fn state_round_trip() {
        let psi = StateVector::basis(m31(), 1);
        assert_eq!(parse_state_json(&state_to_json(&psi)).unwrap(), psi);
        let text = r#"{"d": 3, "n": 1, "amplitudes": [[1, 0], [0, 0], [0, 0]]}"#;
        assert_eq!(parse_state_json(text).unwrap(), StateVector::basis(m31(), 0));
    }

    #[test]
    fn state_errors() {
        assert!(matches!(parse_state_json("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_state_json(r#"{"d":4,"n":1,"amplitudes":[]}"#), Err(Error::UnsupportedModulus(4))));
        assert!(matches!(parse_state_json(r#"{"d":3,"n":1,"amplitudes":[[1,0]]}"#), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(parse_state_json(r#"{"d":3,"n":40,"amplitudes":[]}"#), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(parse_state_json(r#"{"d":3,"n":1,"amplitudes":[[1,0],[0,0],[0,0]],"x":1}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn grid_csv_round_trip() {
        let w = wigner_pure(&StateVector::basis(m31(), 0));
        let text = grid_to_csv(&w);
        assert!(text.starts_with("p1,q1,value\n"));
        assert_eq!(text.lines().count(), 10);
        assert_eq!(text.lines().filter(|l| l.ends_with(",0.3333333333333333")).count(), 3);
        let back = parse_grid_csv(&text).unwrap();
        assert_eq!(back.values(), w.values());
        assert_eq!(back.min(), w.min());
        assert_eq!(back.sum(), w.sum());
    }

    #[test]
    fn grid_csv_errors() {
        assert!(parse_grid_csv("p1,q1,value\n0,0,1\n").is_err());
        assert!(parse_grid_csv("a,b,c\n").is_err());
        let dup = "p1,q1,value\n".to_string() + &"0,0,0.1\n".repeat(9);
        assert!(matches!(parse_grid_csv(&dup), Err(Error::Parse(_))));
    }

    #[test]
    fn pgm_palette() {
        let (_, w) = counterexample_mixture();
        let scale = GrayScale::for_grid(&w);
        assert_eq!(scale.lo, 0.0);
        let text = grid_to_pgm(&w, scale, 1);
        let (wd, ht, px) = parse_pgm(&text).unwrap();
        assert_eq!((wd, ht), (3, 3));
        assert_eq!(px.iter().filter(|&&g| g == 0).count(), 3);
        assert_eq!(px.iter().filter(|&&g| g == 255).count(), 6);
        // origin bottom left
        assert_eq!(px[6], 0);
        assert_eq!(grid_to_pgm(&w, scale, 1), text);
        let svg = grid_to_svg(&w, scale, 20, &[vec![0, 1, 2]]);
        assert!(svg.contains("stroke=\"#d62728\"") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn generators_round_trip() {
        let g = GeneratorMatrix { d: 3, n: 1, columns: vec![RingVector::new(3, &[0, 1])] };
        let text = generators_to_json(&g);
        assert_eq!(text, r#"{"d":3,"n":1,"columns":[[0,1]]}"#);
        assert_eq!(parse_generators_json(&text).unwrap(), g);
        assert_eq!(parse_submodule_json(&text).unwrap().len(), 3);
        assert!(parse_generators_json(r#"{"d":3,"n":1,"columns":[[0,1,2]]}"#).is_err());
    }

    #[test]
    fn counts_round_trip() {
        let rows = vec![count_report(1, 1, 3, ENUMERATION_BUDGET).unwrap(), count_report(2, 2, 3, ENUMERATION_BUDGET).unwrap()];
        let text = counts_to_csv(&rows);
        assert!(text.starts_with("n,m,d,iso,stabs,enumerated\n1,1,3,4,12,4\n"));
        assert_eq!(parse_counts_csv(&text).unwrap(), rows);
    }

    #[test]
    fn clifford_round_trip() {
        let s = SymplecticMatrix::j(3, 1);
        let a = PhaseVector::new(3, &[1], &[2]);
        let text = clifford_to_json(&s, &a);
        assert_eq!(parse_clifford_json(&text).unwrap(), (s, a));
        assert!(matches!(
            parse_clifford_json(r#"{"S":[[1,1],[1,1]],"a":[0,0],"d":3,"n":1}"#),
            Err(Error::NotSymplectic(3))
        ));
    }

    #[test]
    fn run_config() {
        let toml_text = "d = 5\nn = 1\nseed = 7\nformat = \"pgm\"\n[tolerances]\nnegativity = -1e-8\n";
        let cfg = RunConfig::parse(toml_text, ConfigFormat::Toml).unwrap();
        assert_eq!((cfg.d, cfg.seed, cfg.format), (Some(5), 7, OutputFormat::Pgm));
        assert_eq!(cfg.thresholds().negativity, -1e-8);
        assert_eq!(cfg.budget(), ENUMERATION_BUDGET);
        let json = r#"{"d": 3, "field": {"p": 3, "n": 2, "poly": [1, 0, 1]}}"#;
        assert_eq!(RunConfig::parse(json, ConfigFormat::Json).unwrap().field.unwrap().n, 2);
        assert!(RunConfig::parse("d = 4", ConfigFormat::Toml).is_err());
        assert!(RunConfig::parse("colour = 1", ConfigFormat::Toml).is_err());
    }

    #[test]
    fn operator_round_trip() {
        let op = crate::wigner::parity(m31()).to_dense();
        assert_eq!(parse_operator_json(&operator_to_json(&op)).unwrap(), op);
    }
}
