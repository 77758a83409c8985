//! Positivity of Wigner functions: the pure-state classifier, the lemmas
//! behind it as runnable diagnostics, and the mixed-state counterexample.

use std::time::Instant;

use nalgebra::SymmetricEigen;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::antisymmetric;
use crate::error::{Error, Result};
use crate::linalg::{random_state, CMatrix, DenseOperator, ExactOperator, StateVector};
use crate::lp::{feasibility, FarkasCertificate, Feasibility};
use crate::phasespace::{
    enumerate_maximal_isotropic, fourier_on_submodule, is_affine, is_balanced, FormKind, PhaseVector, Submodule,
    ENUMERATION_BUDGET,
};
use crate::stabilizer::{enumerate_stabilizer_states, stabilizer_state, stabilizer_wigner_exact, StabilizerDescriptor};
use crate::weyl::{configuration_points, weyl};
use crate::wigner::{parity, wigner_exact, wigner_pure, WignerGrid};
use crate::zmod::{Modulus, RingVector};

/// Values below this count as negative.
pub const NEGATIVITY_THRESHOLD: f64 = -1e-9;
/// Values above this count as support.
pub const SUPPORT_THRESHOLD: f64 = 1e-7;
/// Largest accepted distance between a state and its reconstruction.
pub const MATCH_TOL: f64 = 1e-9;

/// Classifier thresholds; the defaults are the constants above.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub negativity: f64,
    pub support: f64,
    pub matching: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { negativity: NEGATIVITY_THRESHOLD, support: SUPPORT_THRESHOLD, matching: MATCH_TOL }
    }
}

/// `K(q, x) = psi(q + x/2) conj(psi(q - x/2))` for every `x`, in index order.
pub fn self_correlation(psi: &StateVector, q: &RingVector) -> Result<Vec<Complex64>> {
    let m = psi.modulus();
    if q.len() != m.n() || q.modulus() != m.d() {
        return Err(Error::DimensionMismatch { expected: m.n(), found: q.len() });
    }
    let h = m.half() as i64;
    Ok(configuration_points(m)
        .iter()
        .map(|x| {
            let half_x = RingVector::new(m.d(), &x.iter().map(|&c| c as i64 * h).collect::<Vec<_>>());
            psi.amplitude((q + &half_x).index()) * psi.amplitude((q - &half_x).index()).conj()
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BochnerMode {
    Psd,
    ConstantModulus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BochnerReport {
    /// Eigenvalues of the translation matrix, ascending (Hermitian case).
    pub spectrum: Vec<f64>,
    pub min_eigenvalue: f64,
    pub hermitian: bool,
    pub psd: bool,
    /// Largest gap between the spectrum and `|M|^{1/2} f_hat` over characters.
    pub fourier_residual: f64,
    /// Only computed in constant-modulus mode.
    pub constant_modulus: Option<bool>,
}

/// `f` is listed in the order of `m.elements()`; `M` lives in configuration
/// space and characters use the dot product.
pub fn bochner_test(f: &[Complex64], m: &Submodule, mode: BochnerMode) -> Result<BochnerReport> {
    if f.len() != m.len() {
        return Err(Error::DomainMismatch);
    }
    let elems: Vec<RingVector> = m.elements().collect();
    let k = elems.len();
    let at = |v: &RingVector| f[m.position(v).expect("closed under subtraction")];
    let a = CMatrix::from_fn(k, k, |r, c| at(&(&elems[r] - &elems[c])));
    let hermitian = (&a - a.adjoint()).iter().all(|z| z.norm() < 1e-12);
    let scale = (k as f64).sqrt();
    let mut fourier: Vec<f64> = fourier_on_submodule(f, m, FormKind::Orthogonal)?.iter().map(|(_, z)| z.re * scale).collect();
    fourier.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (spectrum, fourier_residual) = if hermitian {
        let mut ev: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
        ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let res = ev.iter().zip(&fourier).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        (ev, res)
    } else {
        (fourier.clone(), 0.0)
    };
    let min_eigenvalue = spectrum.first().copied().unwrap_or(0.0);
    let psd = hermitian && min_eigenvalue >= NEGATIVITY_THRESHOLD;
    let constant_modulus = (mode == BochnerMode::ConstantModulus).then(|| {
        elems.iter().filter(|q| !q.is_zero()).all(|q| {
            let s: Complex64 = elems.iter().map(|x| at(x).conj() * at(&(x - q))).sum();
            s.norm() < 1e-9
        })
    });
    Ok(BochnerReport { spectrum, min_eigenvalue, hermitian, psd, fourier_residual, constant_modulus })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulusReport {
    /// `(q, x, deficit)` where `|psi(q)|^2 < |psi(q-x)||psi(q+x)| - 1e-10`,
    /// first 64 only.
    pub violations: Vec<(usize, usize, f64)>,
    pub violation_count: usize,
    pub support: Vec<usize>,
    pub balanced: bool,
    pub affine: bool,
    /// `max - min` of `|psi|` over the support.
    pub spread: f64,
}

pub fn modulus_diagnostics(psi: &StateVector) -> ModulusReport {
    let m = psi.modulus();
    let (d, n) = (m.d(), m.n());
    let pts: Vec<RingVector> = (0..m.dim()).map(|i| RingVector::from_index(d, n, i)).collect();
    let abs: Vec<f64> = (0..m.dim()).map(|i| psi.amplitude(i).norm()).collect();
    let mut violations = Vec::new();
    let mut violation_count = 0;
    for (qi, q) in pts.iter().enumerate() {
        for (xi, x) in pts.iter().enumerate() {
            let rhs = abs[(q - x).index()] * abs[(q + x).index()];
            let deficit = rhs - abs[qi] * abs[qi];
            if deficit > 1e-10 {
                violation_count += 1;
                if violations.len() < 64 {
                    violations.push((qi, xi, deficit));
                }
            }
        }
    }
    let max = abs.iter().copied().fold(0.0, f64::max);
    let support: Vec<usize> = (0..m.dim()).filter(|&i| abs[i] > 1e-7 * max.max(1e-300)).collect();
    let set: Vec<RingVector> = support.iter().map(|&i| pts[i].clone()).collect();
    let on: Vec<f64> = support.iter().map(|&i| abs[i]).collect();
    let spread = on.iter().copied().fold(f64::NEG_INFINITY, f64::max) - on.iter().copied().fold(f64::INFINITY, f64::min);
    ModulusReport {
        violations,
        violation_count,
        balanced: is_balanced(&set),
        affine: is_affine(&set),
        support,
        spread: if spread.is_finite() { spread } else { 0.0 },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ClassificationResult {
    Stabilizer { descriptor: StabilizerDescriptor },
    NegativeWigner { point: PhaseVector, value: f64 },
    NotPure { defect: f64 },
}

/// Classifies a pure state by the sign of its Wigner function. A
/// non-negative Wigner function must come from a stabilizer state; if the
/// reconstruction fails, `TheoremViolation` is returned.
pub fn classify(psi: &StateVector) -> Result<ClassificationResult> {
    classify_with(psi, &Thresholds::default())
}

pub fn classify_with(psi: &StateVector, t: &Thresholds) -> Result<ClassificationResult> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(norm));
    }
    let w = wigner_pure(psi);
    let min_index = w.argmin();
    if w.values()[min_index] < t.negativity {
        return Ok(ClassificationResult::NegativeWigner { point: w.point(min_index), value: w.values()[min_index] });
    }
    let descriptor = descriptor_from_support(&w, t.support)?;
    // near-zero values are settled by the exact grid of the reconstruction
    let exact = stabilizer_wigner_exact(&descriptor)?;
    let gap = exact.max_abs_diff(&w);
    if gap > t.matching {
        return Err(Error::TheoremViolation(format!("Wigner grid differs from its stabilizer reconstruction by {gap:e}")));
    }
    let dist = stabilizer_state(&descriptor)?.distance_up_to_phase(psi);
    if dist > t.matching {
        return Err(Error::TheoremViolation(format!("state differs from its stabilizer reconstruction by {dist:e}")));
    }
    Ok(ClassificationResult::Stabilizer { descriptor })
}

/// `T = support(W)`, `v = min T`, `M = T - v`; checks `M` is a maximal
/// isotropic submodule.
pub fn descriptor_from_grid(w: &WignerGrid) -> Result<StabilizerDescriptor> {
    descriptor_from_support(w, SUPPORT_THRESHOLD)
}

fn descriptor_from_support(w: &WignerGrid, threshold: f64) -> Result<StabilizerDescriptor> {
    let m = w.modulus();
    let support = w.support(threshold);
    if support.len() != m.dim() {
        return Err(Error::TheoremViolation(format!("support has {} points, expected {}", support.len(), m.dim())));
    }
    let v0 = w.point(support[0]);
    let shifted: Vec<RingVector> = support.iter().map(|&i| w.point(i).sub(&v0).as_ring_vector().clone()).collect();
    let sub = Submodule::closure(m.d(), 2 * m.n(), &shifted);
    if sub.len() != support.len() {
        return Err(Error::TheoremViolation("support is not a coset of a submodule".into()));
    }
    if !sub.is_isotropic() {
        return Err(Error::TheoremViolation("support direction is not isotropic".into()));
    }
    StabilizerDescriptor::new(sub.reduced(), v0).map_err(|e| Error::TheoremViolation(e.to_string()))
}

/// Mixed-state entry point: impure inputs get `NotPure`, pure ones are
/// classified through their leading eigenvector.
pub fn classify_operator(rho: &DenseOperator) -> Result<ClassificationResult> {
    let purity = rho.mul(rho).trace().re;
    let defect = (purity - 1.0).abs();
    if defect > 1e-9 {
        return Ok(ClassificationResult::NotPure { defect });
    }
    let eig = SymmetricEigen::new(rho.matrix().clone());
    let top = (0..eig.eigenvalues.len()).max_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap()).unwrap();
    let psi = StateVector::from_vector(rho.modulus(), eig.eigenvectors.column(top).into_owned());
    classify(&psi.normalized())
}

/// Counts from a forward and sampled-converse run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub d: u32,
    pub n: usize,
    pub seed: u64,
    pub forward_total: usize,
    pub forward_passed: usize,
    pub samples: usize,
    pub negative: usize,
    pub stabilizer_hits: usize,
    pub theorem_violations: usize,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u128>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.theorem_violations == 0 && self.forward_passed == self.forward_total
    }
}

/// Every enumerated stabilizer state must classify as itself; every random
/// state must be negative or a verified stabilizer state.
pub fn verify_hudson(m: Modulus, samples: usize, seed: u64) -> Result<HarnessReport> {
    let start = Instant::now();
    let mut report = HarnessReport {
        d: m.d(),
        n: m.n(),
        seed,
        forward_total: 0,
        forward_passed: 0,
        samples,
        negative: 0,
        stabilizer_hits: 0,
        theorem_violations: 0,
        violations: Vec::new(),
        elapsed_ms: None,
    };
    for (desc, psi) in enumerate_stabilizer_states(m)? {
        report.forward_total += 1;
        match classify(&psi) {
            Ok(ClassificationResult::Stabilizer { descriptor }) if descriptor == desc => report.forward_passed += 1,
            Ok(other) => report.violations.push(format!("forward: {:?} classified as {other:?}", desc.offset())),
            Err(e) => {
                report.theorem_violations += 1;
                report.violations.push(format!("forward: {e}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let psi = random_state(m, &mut rng);
        match classify(&psi) {
            Ok(ClassificationResult::NegativeWigner { .. }) => report.negative += 1,
            Ok(ClassificationResult::Stabilizer { .. }) => report.stabilizer_hits += 1,
            Ok(ClassificationResult::NotPure { .. }) => report.violations.push(format!("sample {i}: reported impure")),
            Err(e) => {
                report.theorem_violations += 1;
                report.violations.push(format!("sample {i}: {e}"));
            }
        }
    }
    report.elapsed_ms = Some(start.elapsed().as_millis());
    Ok(report)
}

/// `P_- = (1 - A(0)) / 2`.
pub fn antisymmetric_projector(m: Modulus) -> DenseOperator {
    antisymmetric(m)
}

pub fn antisymmetric_projector_exact(m: Modulus) -> ExactOperator {
    ExactOperator::identity(m).sub(&parity(m).to_exact()).scale(Rational64::new(1, 2))
}

/// Translates of `P_-` used in the mixture, as `(p, q)` with `d = 3`.
pub const COUNTEREXAMPLE_TRANSLATES: [(i64, i64); 3] = [(0, 0), (-1, 0), (-1, -1)];

/// `rho = (1/3) sum_a w(a) P_- w(a)^dagger` over the three translates, for
/// `d = 3`, with its exact Wigner grid.
pub fn counterexample_mixture() -> (DenseOperator, WignerGrid) {
    let m = Modulus::new(3, 1).expect("d = 3 is valid");
    let minus = antisymmetric_projector_exact(m);
    let mut acc = ExactOperator::zeros(m);
    for (p, q) in COUNTEREXAMPLE_TRANSLATES {
        let w = weyl(m, &PhaseVector::new(3, &[p], &[q])).to_exact();
        acc = acc.add(&w.mul(&minus).mul(&w.adjoint()));
    }
    let rho = acc.scale(Rational64::new(1, 3));
    let grid = wigner_exact(&rho).expect("Hermitian operator over Q(omega) has rational Wigner values");
    (rho.to_dense(), grid)
}

/// The zero set of the counterexample grid leaves these lines.
#[derive(Debug, Clone, PartialEq)]
pub struct EliminationTrace {
    /// Phase-space indices where `W = 0`.
    pub zeros: Vec<usize>,
    /// Stabilizer states whose support avoids every zero.
    pub surviving: Vec<StabilizerDescriptor>,
    /// Whether `W` is a non-negative combination of the surviving lines.
    pub surviving_feasible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DecompositionResult {
    Feasible { weights: Vec<(StabilizerDescriptor, BigRational)> },
    Infeasible { certificate: FarkasCertificate, elimination: EliminationTrace },
}

impl DecompositionResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, DecompositionResult::Feasible { .. })
    }
}

fn big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Decides whether `W = sum_i lambda_i W_i` over single-particle stabilizer
/// states with `lambda >= 0`, exactly. Rows are the phase points plus
/// `sum lambda = sum W`.
pub fn stabilizer_decomposition_feasible(w: &WignerGrid) -> Result<DecompositionResult> {
    let m = w.modulus();
    if m.n() != 1 || m.d() > 7 {
        return Err(Error::BudgetExceeded { size: m.phase_points() as u64, limit: 49 });
    }
    let exact = w.exact().ok_or_else(|| Error::NotExact("grid has no exact values".into()))?;
    let states: Vec<StabilizerDescriptor> = enumerate_stabilizer_states(m)?.into_iter().map(|(d, _)| d).collect();
    let columns: Vec<Vec<BigRational>> = states
        .iter()
        .map(|d| Ok(stabilizer_wigner_exact(d)?.exact().expect("exact grid").iter().map(|&r| big(r)).collect()))
        .collect::<Result<_>>()?;
    let rows = m.phase_points();
    let build = |cols: &[&Vec<BigRational>]| -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let mut a: Vec<Vec<BigRational>> = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        a.push(vec![BigRational::one(); cols.len()]);
        let mut b: Vec<BigRational> = exact.iter().map(|&r| big(r)).collect();
        b.push(exact.iter().map(|&r| big(r)).sum());
        (a, b)
    };
    let all: Vec<&Vec<BigRational>> = columns.iter().collect();
    let (a, b) = build(&all);
    match feasibility(&a, &b)? {
        Feasibility::Feasible(x) => Ok(DecompositionResult::Feasible {
            weights: states.into_iter().zip(x).filter(|(_, l)| !l.is_zero()).collect(),
        }),
        Feasibility::Infeasible(certificate) => {
            let zeros: Vec<usize> = (0..rows).filter(|&i| exact[i].is_zero()).collect();
            let keep: Vec<usize> = (0..states.len()).filter(|&k| zeros.iter().all(|&z| columns[k][z].is_zero())).collect();
            let kept: Vec<&Vec<BigRational>> = keep.iter().map(|&k| &columns[k]).collect();
            let surviving_feasible = if kept.is_empty() {
                exact.iter().all(|r| r.is_zero())
            } else {
                let (a2, b2) = build(&kept);
                feasibility(&a2, &b2)?.is_feasible()
            };
            let surviving = keep.into_iter().map(|k| states[k].clone()).collect();
            Ok(DecompositionResult::Infeasible { certificate, elimination: EliminationTrace { zeros, surviving, surviving_feasible } })
        }
    }
}

/// For a state with `W(0) > 0`, `{(p, 0) : W(p, 0) > 0}` is a submodule.
pub fn momentum_axis_support_is_submodule(w: &WignerGrid) -> bool {
    let m = w.modulus();
    let axis: Vec<RingVector> = w
        .support(SUPPORT_THRESHOLD)
        .into_iter()
        .map(|i| w.point(i))
        .filter(|v| v.q().iter().all(|&c| c == 0))
        .map(|v| v.as_ring_vector().clone())
        .collect();
    Submodule::closure(m.d(), 2 * m.n(), &axis).len() == axis.len()
}

/// Number of maximal isotropic submodules, for reports.
pub fn maximal_isotropic_count(m: Modulus) -> Result<usize> {
    Ok(enumerate_maximal_isotropic(m)?.len())
}

pub fn within_budget(m: Modulus) -> bool {
    (m.phase_points() as u64) <= ENUMERATION_BUDGET
}
