use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use phasekit::clifford::{clifford_from_affine, recognize_clifford, Recognition};
use phasekit::galois::{field_vs_module_stabilizer_gap_in, verify_factorization_in, GaloisField, GAP_BUDGET};
use phasekit::hudson::{
    antisymmetric_projector_exact, classify_with, counterexample_mixture, stabilizer_decomposition_feasible,
    verify_hudson, ClassificationResult, DecompositionResult,
};
use phasekit::io::{
    clifford_to_json, counts_to_csv, generators_to_json, grid_to_csv, grid_to_pgm, grid_to_svg, operator_to_json,
    parse_clifford_json, parse_field_spec, parse_grid_csv, parse_operator_json, parse_state_json, GrayScale,
    OutputFormat, RunConfig,
};
use phasekit::stabilizer::{count_report, enumerate_stabilizer_states, StabilizerDescriptor};
use phasekit::wigner::{wigner_exact, wigner_pure, WignerGrid};
use phasekit::{Error, Modulus};

use crate::opts::{CliffordCommand, Cli, Command, GlobalOpts};

/// Flags layered over the config file.
struct Settings {
    config: RunConfig,
    out: Option<PathBuf>,
}

impl Settings {
    fn resolve(g: GlobalOpts) -> Result<Self> {
        let mut config = match &g.config {
            Some(path) => RunConfig::from_path(path)?,
            None => RunConfig::default(),
        };
        config.d = g.d.or(config.d);
        config.n = g.n.or(config.n);
        config.seed = g.seed.unwrap_or(config.seed);
        config.budget = g.budget.or(config.budget);
        if let Some(f) = g.format {
            config.format = f.into();
        }
        config.validate()?;
        // flag (or env) wins over the config file
        let out = g.out.or_else(|| config.out.as_ref().map(PathBuf::from));
        Ok(Settings { config, out })
    }

    fn modulus(&self) -> Result<Modulus> {
        let d = self.config.d.ok_or_else(|| anyhow!("--d is required"))?;
        Ok(Modulus::new(d, self.config.n.unwrap_or(1))?)
    }

    fn check_budget(&self, m: Modulus) -> Result<()> {
        let size = m.phase_points() as u64;
        let limit = self.config.budget();
        if size > limit {
            return Err(Error::BudgetExceeded { size, limit }.into());
        }
        Ok(())
    }

    fn out_dir(&self) -> Result<Option<&Path>> {
        if let Some(dir) = &self.out {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        Ok(self.out.as_deref())
    }
}

pub fn run(cli: Cli) -> Result<u8> {
    let settings = Settings::resolve(cli.global)?;
    match cli.command {
        Command::Wigner { state, from_grid, cell } => match (state, from_grid) {
            (_, Some(grid)) => grid_stats(&grid),
            (Some(state), None) => wigner(&settings, &state, cell),
            (None, None) => bail!("a state file or --from-grid is required"),
        },
        Command::Classify { state } => classify(&settings, &state),
        Command::Count { particles, rank, dim } => count(&settings, particles, rank, dim),
        Command::Enumerate => enumerate(&settings),
        Command::Harness { samples, timing } => harness(&settings, samples, timing),
        Command::Counterexample { cell } => counterexample(&settings, cell),
        Command::Galois { prime, degree, field } => galois(&settings, prime, degree, field.as_deref()),
        Command::Clifford(CliffordCommand::Synth { file }) => clifford_synth(&settings, &file),
        Command::Clifford(CliffordCommand::Recognize { file }) => clifford_recognize(&file),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn grid_json(w: &WignerGrid) -> Value {
    json!({
        "d": w.modulus().d(),
        "n": w.modulus().n(),
        "min": w.min(),
        "sum": w.sum(),
        "values": w.values(),
    })
}

fn render(w: &WignerGrid, format: OutputFormat, cell: usize) -> String {
    let scale = GrayScale::for_grid(w);
    match format {
        OutputFormat::Csv => grid_to_csv(w),
        OutputFormat::Pgm => grid_to_pgm(w, scale, cell),
        OutputFormat::Svg => grid_to_svg(w, scale, cell, &[]),
        OutputFormat::Json => serde_json::to_string_pretty(&grid_json(w)).expect("json values serialize") + "\n",
    }
}

fn extension(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Pgm => "pgm",
        OutputFormat::Svg => "svg",
        OutputFormat::Json => "json",
    }
}

/// Without an output directory the chosen format goes to stdout; with one,
/// the CSV is always written next to the chosen format.
fn wigner(s: &Settings, state: &Path, cell: usize) -> Result<u8> {
    let psi = parse_state_json(&read(state)?)?;
    let w = wigner_pure(&psi);
    let format = s.config.format;
    match s.out_dir()? {
        None => print!("{}", render(&w, format, cell)),
        Some(dir) => {
            let stem = state.file_stem().and_then(|x| x.to_str()).unwrap_or("wigner");
            let mut written = vec![write(dir, &format!("{stem}.csv"), &grid_to_csv(&w))?];
            if format != OutputFormat::Csv {
                written.push(write(dir, &format!("{stem}.{}", extension(format)), &render(&w, format, cell))?);
            }
            for p in written {
                println!("{}", p.display());
            }
        }
    }
    Ok(0)
}

fn grid_stats(path: &Path) -> Result<u8> {
    let w = parse_grid_csv(&read(path)?)?;
    let argmin = w.point(w.argmin());
    print_json(&json!({
        "d": w.modulus().d(),
        "n": w.modulus().n(),
        "points": w.values().len(),
        "min": w.min(),
        "argmin": argmin.coords(),
        "sum": w.sum(),
    }));
    Ok(0)
}

fn descriptor_json(desc: &StabilizerDescriptor) -> Value {
    let g: Value = serde_json::from_str(&generators_to_json(&desc.generator_matrix())).expect("valid json");
    json!({ "generators": g["columns"], "offset": desc.offset().coords() })
}

fn classify(s: &Settings, state: &Path) -> Result<u8> {
    let psi = parse_state_json(&read(state)?)?;
    let m = psi.modulus();
    let (verdict, code) = match classify_with(&psi, &s.config.thresholds())? {
        ClassificationResult::Stabilizer { descriptor } => {
            let mut v = descriptor_json(&descriptor);
            v["verdict"] = json!("stabilizer");
            (v, 0)
        }
        ClassificationResult::NegativeWigner { point, value } => {
            (json!({ "verdict": "negative_wigner", "point": point.coords(), "value": value }), 1)
        }
        ClassificationResult::NotPure { defect } => (json!({ "verdict": "not_pure", "defect": defect }), 1),
    };
    let mut out = json!({ "d": m.d(), "n": m.n() });
    out.as_object_mut().expect("object").extend(verdict.as_object().expect("object").clone());
    print_json(&out);
    Ok(code)
}

fn count(s: &Settings, n: u32, m: u32, d: u64) -> Result<u8> {
    let report = count_report(n, m, d, s.config.budget())?;
    let ok = report.consistent();
    match s.config.format {
        OutputFormat::Json => print_json(&serde_json::to_value(&report)?),
        _ => print!("{}", counts_to_csv(&[report])),
    }
    Ok(if ok { 0 } else { 1 })
}

fn enumerate(s: &Settings) -> Result<u8> {
    let m = s.modulus()?;
    s.check_budget(m)?;
    let states = enumerate_stabilizer_states(m)?;
    match s.config.format {
        OutputFormat::Json => {
            let list: Vec<Value> = states.iter().map(|(desc, _)| descriptor_json(desc)).collect();
            print_json(&json!({ "d": m.d(), "n": m.n(), "count": list.len(), "states": list }));
        }
        _ => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(["index", "generators", "offset"])?;
            for (i, (desc, _)) in states.iter().enumerate() {
                let v = descriptor_json(desc);
                w.write_record([i.to_string(), v["generators"].to_string(), v["offset"].to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(0)
}

fn harness(s: &Settings, samples: usize, timing: bool) -> Result<u8> {
    let m = s.modulus()?;
    s.check_budget(m)?;
    let mut report = verify_hudson(m, samples, s.config.seed)?;
    if !timing {
        // keeps reports byte-identical across runs
        report.elapsed_ms = None;
    }
    let text = serde_json::to_string_pretty(&report)? + "\n";
    match s.out_dir()? {
        Some(dir) => println!("{}", write(dir, "harness.json", &text)?.display()),
        None => print!("{text}"),
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn counterexample(s: &Settings, cell: usize) -> Result<u8> {
    let dir = s.out_dir()?.unwrap_or(Path::new("."));
    let m = Modulus::new(3, 1)?;
    let minus = wigner_exact(&antisymmetric_projector_exact(m))?;
    let (_, mixture) = counterexample_mixture();
    let mut files = Vec::new();
    for (name, w) in [("psi_minus", &minus), ("mixture", &mixture)] {
        let scale = GrayScale::for_grid(w);
        files.push(write(dir, &format!("{name}.csv"), &grid_to_csv(w))?);
        files.push(write(dir, &format!("{name}.pgm"), &grid_to_pgm(w, scale, cell))?);
        files.push(write(dir, &format!("{name}.svg"), &grid_to_svg(w, scale, cell, &[]))?);
    }
    let summary = match stabilizer_decomposition_feasible(&mixture)? {
        DecompositionResult::Feasible { .. } => json!({ "lp": "feasible" }),
        DecompositionResult::Infeasible { certificate, elimination } => {
            let overlays: Vec<Vec<usize>> = elimination.surviving.iter().map(|d| d.support_indices()).collect();
            let scale = GrayScale::for_grid(&mixture);
            files.push(write(dir, "surviving_lines.svg", &grid_to_svg(&mixture, scale, cell, &overlays))?);
            json!({
                "lp": "infeasible",
                "certificate": certificate.y.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "zeros": elimination.zeros.iter().map(|&i| mixture.point(i).coords().to_vec()).collect::<Vec<_>>(),
                "surviving_lines": elimination.surviving.iter().map(descriptor_json).collect::<Vec<_>>(),
                "surviving_feasible": elimination.surviving_feasible,
            })
        }
    };
    let exact: Vec<String> = mixture.exact().expect("exact grid").iter().map(|r| r.to_string()).collect();
    let mut out = json!({ "mixture_values": exact, "files": files });
    out.as_object_mut().expect("object").extend(summary.as_object().expect("object").clone());
    write(dir, "counterexample.json", &(serde_json::to_string_pretty(&out)? + "\n"))?;
    print_json(&out);
    Ok(0)
}

fn galois(s: &Settings, p: u64, n: usize, field: Option<&Path>) -> Result<u8> {
    let spec = match field {
        Some(path) => Some(parse_field_spec(&read(path)?)?),
        None => s.config.field.clone().filter(|f| f.p == p && f.n == n),
    };
    let f = match spec {
        Some(spec) if spec.p != p || spec.n != n => bail!("field spec is for p={}, n={}", spec.p, spec.n),
        Some(spec) => GaloisField::from_spec(&spec)?,
        None => GaloisField::new(p, n, None)?,
    };
    let factorization = verify_factorization_in(&f)?;
    let gap = if (f.order() as u64) <= GAP_BUDGET { Some(field_vs_module_stabilizer_gap_in(&f)?) } else { None };
    let ok = factorization.exact() && gap.as_ref().is_none_or(|g| g.images_maximal_isotropic && g.states_coincide);
    print_json(&json!({
        "factorization": if factorization.exact() { "exact" } else { "mismatch" },
        "factorization_report": factorization,
        "gap": gap,
    }));
    Ok(if ok { 0 } else { 1 })
}

fn clifford_synth(s: &Settings, file: &Path) -> Result<u8> {
    let (sm, a) = parse_clifford_json(&read(file)?)?;
    let c = clifford_from_affine(&sm, &a)?;
    let text = operator_to_json(&c.unitary) + "\n";
    match s.out_dir()? {
        Some(dir) => println!("{}", write(dir, "unitary.json", &text)?.display()),
        None => print!("{text}"),
    }
    Ok(0)
}

fn clifford_recognize(file: &Path) -> Result<u8> {
    let u = parse_operator_json(&read(file)?)?;
    match recognize_clifford(&u)? {
        Recognition::Clifford { s, a, residual } => {
            let mut v: Value = serde_json::from_str(&clifford_to_json(&s, &a))?;
            v["clifford"] = json!(true);
            v["residual"] = json!(residual);
            print_json(&v);
            Ok(0)
        }
        Recognition::NotClifford { witness, spread } => {
            print_json(&json!({ "clifford": false, "witness": witness.coords(), "spread": spread }));
            Ok(1)
        }
    }
}
