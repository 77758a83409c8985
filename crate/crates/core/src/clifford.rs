//! Clifford operators.
//!
//! `mu(S)` is synthesized by intertwiner averaging
//! `T(X) = d^{-2n} sum_v w(Sv) X w(v)^dagger`, which is proportional to
//! `mu(S)` for generic `X`. General Clifford elements are `w(a) mu(S)` and
//! satisfy `U w(v) U^dagger = chi([a, Sv]) w(Sv)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{random_gaussian_matrix, random_state, CMatrix, DenseOperator};
use crate::phasespace::{symp, PhaseVector, SymplecticMatrix};
use crate::weyl::{characteristic_function, weyl};
use crate::wigner::{parity, phase_point_at, wigner_complex, wigner_of_operator};
use crate::zmod::{reduce, root_of_unity, Modulus, RingVector};

/// Seed for the averaging input of [`metaplectic`].
pub const SYNTHESIS_SEED: u64 = 0x5eed_0d15_c0de;
const SYNTHESIS_RETRIES: usize = 16;
const INTERTWINING_TOL: f64 = 1e-9;

/// `mu(S)`, phase fixed so that the first nonzero entry of the first
/// nonzero column is real positive.
pub fn metaplectic(s: &SymplecticMatrix) -> Result<DenseOperator> {
    if !s.is_symplectic() {
        return Err(Error::NotSymplectic(s.modulus()));
    }
    let m = Modulus::new(s.modulus() as u64, s.n())?;
    let dim = m.dim();
    let pts: Vec<PhaseVector> = (0..m.phase_points()).map(|i| PhaseVector::from_index(m, i)).collect();
    let pairs: Vec<_> = pts.iter().map(|v| (weyl(m, &s.apply(v)), weyl(m, v).adjoint())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SYNTHESIS_SEED);
    for _ in 0..SYNTHESIS_RETRIES {
        let x = random_gaussian_matrix(dim, &mut rng);
        let mut t = CMatrix::zeros(dim, dim);
        for (ws, wv) in &pairs {
            t += wv.right_mul(&ws.left_mul(&x));
        }
        t /= Complex64::new(m.phase_points() as f64, 0.0);
        // T = c mu(S) so T^dagger T = |c|^2 1
        let scale = ((t.adjoint() * &t).trace().re / dim as f64).sqrt();
        if !(scale > 1e-6) {
            continue;
        }
        let u = DenseOperator::new(m, t / Complex64::new(scale, 0.0))?.phase_canonical();
        if intertwining_residual(&u, s, &PhaseVector::zero(m)) < INTERTWINING_TOL {
            return Ok(u);
        }
    }
    Err(Error::SynthesisFailure(SYNTHESIS_RETRIES))
}

/// Largest deviation of `U w(e_j) U^dagger` from `chi([a, S e_j]) w(S e_j)`
/// over the `2n` unit vectors.
pub fn intertwining_residual(u: &DenseOperator, s: &SymplecticMatrix, a: &PhaseVector) -> f64 {
    let m = u.modulus();
    let d = m.d();
    let mut worst: f64 = 0.0;
    for j in 0..2 * m.n() {
        let e = PhaseVector::from_ring_vector(RingVector::unit(d, 2 * m.n(), j));
        let se = s.apply(&e);
        let lhs = u.conjugate(&weyl(m, &e).to_dense());
        let rhs = weyl(m, &se).times_phase(symp(d, a.coords(), se.coords()) as i64).to_dense();
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    worst
}

/// `w(a) mu(S)` with its affine label.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordElement {
    pub s: SymplecticMatrix,
    pub a: PhaseVector,
    pub unitary: DenseOperator,
}

impl CliffordElement {
    /// Affine label of `self * other`: `v -> S(Tv + b) + a`.
    pub fn compose_label(&self, other: &CliffordElement) -> (SymplecticMatrix, PhaseVector) {
        (self.s.compose(&other.s), self.s.apply(&other.a).add(&self.a))
    }

    /// Image of a phase-space point under `v -> Sv + a`.
    pub fn act(&self, v: &PhaseVector) -> PhaseVector {
        self.s.apply(v).add(&self.a)
    }
}

pub fn clifford_from_affine(s: &SymplecticMatrix, a: &PhaseVector) -> Result<CliffordElement> {
    let mu = metaplectic(s)?;
    let m = mu.modulus();
    if a.n() != m.n() || a.modulus() != m.d() {
        return Err(Error::DimensionMismatch { expected: 2 * m.n(), found: 2 * a.n() });
    }
    let unitary = DenseOperator::new(m, weyl(m, a).left_mul(mu.matrix()))?;
    Ok(CliffordElement { s: s.clone(), a: a.clone(), unitary })
}

/// Result of [`recognize_clifford`].
#[derive(Debug, Clone, PartialEq)]
pub enum Recognition {
    Clifford { s: SymplecticMatrix, a: PhaseVector, residual: f64 },
    /// `U w(witness) U^dagger` is not a multiple of a single Weyl operator;
    /// `spread = 1 - max |coefficient|^2` in the normalized Weyl expansion.
    NotClifford { witness: PhaseVector, spread: f64 },
}

impl Recognition {
    pub fn is_clifford(&self) -> bool {
        matches!(self, Recognition::Clifford { .. })
    }
}

const RECOGNITION_TOL: f64 = 1e-8;

/// Decides whether `U` normalizes the Weyl group and, if so, extracts
/// `(S, a)` with `U = w(a) mu(S)` up to phase.
pub fn recognize_clifford(u: &DenseOperator) -> Result<Recognition> {
    u.ensure_unitary(1e-10)?;
    let m = u.modulus();
    let (d, n) = (m.d(), m.n());
    let mut columns = Vec::with_capacity(2 * n);
    let mut phases = Vec::with_capacity(2 * n);
    for j in 0..2 * n {
        let e = PhaseVector::from_ring_vector(RingVector::unit(d, 2 * n, j));
        let c = u.conjugate(&weyl(m, &e).to_dense());
        // Xi is the normalized Weyl expansion of a unitary: sum |.|^2 = 1
        let xi = characteristic_function(&c);
        let (best, coeff) = xi.iter().enumerate().map(|(i, z)| (i, *z)).max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap()).unwrap();
        let spread = 1.0 - coeff.norm_sqr();
        if spread > RECOGNITION_TOL {
            return Ok(Recognition::NotClifford { witness: e, spread });
        }
        let k = (coeff.arg() / (2.0 * std::f64::consts::PI) * d as f64).round() as i64;
        if (coeff - root_of_unity(k, d)).norm() > 1e-6 {
            return Ok(Recognition::NotClifford { witness: e, spread });
        }
        columns.push(PhaseVector::from_index(m, best).as_ring_vector().clone());
        phases.push(reduce(k, d));
    }
    let s = match SymplecticMatrix::from_columns(d, n, &columns) {
        Ok(s) => s,
        Err(_) => return Ok(Recognition::NotClifford { witness: PhaseVector::zero(m), spread: 0.0 }),
    };
    // [a, S e_j] = t_j; with b = S^{-1} a: b_q = -t_p-block, b_p = t_q-block
    let mut p = vec![0i64; n];
    let mut q = vec![0i64; n];
    for i in 0..n {
        q[i] = -(phases[i] as i64);
        p[i] = phases[n + i] as i64;
    }
    let a = s.apply(&PhaseVector::new(d, &p, &q));
    let rebuilt = clifford_from_affine(&s, &a)?;
    let (_, residual) = u.proportionality(&rebuilt.unitary);
    Ok(Recognition::Clifford { s, a, residual })
}

/// Result of [`permutation_action`].
#[derive(Debug, Clone, PartialEq)]
pub enum PermutationResult {
    /// `U A(v) U^dagger = A(perm[v])`.
    Permutation(Vec<usize>),
    NotPermutation { witness: PhaseVector, best_overlap: f64 },
}

/// Tests whether conjugation by `U` permutes the phase-point operators.
pub fn permutation_action(u: &DenseOperator) -> Result<PermutationResult> {
    u.ensure_unitary(1e-10)?;
    let m = u.modulus();
    let total = m.phase_points();
    let mut perm = Vec::with_capacity(total);
    let mut seen = vec![false; total];
    for v in 0..total {
        let c = u.conjugate(&phase_point_at(m, v).to_dense());
        // c = sum_v' coeff(v') A(v'), coeff(v') = d^{-n} tr(A(v') c)
        let coeffs = wigner_complex(&c);
        let (best, z) = coeffs.values.iter().enumerate().max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap()).unwrap();
        let off: f64 = coeffs.values.iter().enumerate().filter(|(i, _)| *i != best).map(|(_, z)| z.norm()).fold(0.0, f64::max);
        if (z - Complex64::new(1.0, 0.0)).norm() > RECOGNITION_TOL || off > RECOGNITION_TOL || seen[best] {
            return Ok(PermutationResult::NotPermutation { witness: PhaseVector::from_index(m, v), best_overlap: z.norm() });
        }
        seen[best] = true;
        perm.push(best);
    }
    Ok(PermutationResult::Permutation(perm))
}

/// Which probe family an input came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    Stabilizer,
    TranslatedAntisymmetric,
    RandomMixture,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeViolation {
    pub kind: ProbeKind,
    pub index: usize,
    /// Minimum Wigner value of the image.
    pub min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub inputs_tested: usize,
    pub violations: Vec<ProbeViolation>,
    /// Negative-minimum inputs whose image has a different minimum.
    pub min_value_mismatches: usize,
    pub min_value_checked: usize,
}

impl ProbeReport {
    pub fn worst(&self) -> Option<&ProbeViolation> {
        self.violations.iter().min_by(|a, b| a.min.partial_cmp(&b.min).unwrap())
    }
}

/// Positivity threshold for probe images.
pub const POSITIVITY_TOL: f64 = 1e-9;

/// Applies `U` to positive-Wigner inputs and reports images with negative
/// values; also compares minima of negative inputs before and after.
pub fn positivity_preservation_probe(u: &DenseOperator, sample_count: usize, seed: u64) -> Result<ProbeReport> {
    u.ensure_unitary(1e-10)?;
    let m = u.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport { inputs_tested: 0, violations: Vec::new(), min_value_mismatches: 0, min_value_checked: 0 };
    let check = |kind: ProbeKind, index: usize, rho: &DenseOperator, report: &mut ProbeReport| {
        report.inputs_tested += 1;
        let w = wigner_of_operator(&u.conjugate(rho));
        let min = w.min();
        if min < -POSITIVITY_TOL {
            report.violations.push(ProbeViolation { kind, index, min });
        }
    };

    let stabs = crate::stabilizer::enumerate_stabilizer_states(m)?;
    let projectors: Vec<DenseOperator> = stabs.iter().map(|(_, psi)| psi.projector()).collect();
    for (i, p) in projectors.iter().enumerate() {
        check(ProbeKind::Stabilizer, i, p, &mut report);
    }

    // sigma(a) = (w(a) P_- w(a)^dagger + c 1) / tr with c chosen so min W = 0
    let dim = m.dim() as f64;
    let minus = antisymmetric(m);
    let c = (dim - 1.0) / 2.0;
    let mut translated = Vec::with_capacity(m.phase_points());
    for ai in 0..m.phase_points() {
        let a = PhaseVector::from_index(m, ai);
        let rho_a = weyl(m, &a).to_dense().conjugate(&minus);
        let sigma = rho_a.add(&DenseOperator::identity(m).scale(Complex64::new(c, 0.0)));
        let tr = sigma.trace().re;
        check(ProbeKind::TranslatedAntisymmetric, ai, &sigma.scale(Complex64::new(1.0 / tr, 0.0)), &mut report);
        translated.push(rho_a.scale(Complex64::new(1.0 / rho_a.trace().re, 0.0)));
    }

    for i in 0..sample_count {
        let k = rng.random_range(1..=projectors.len().min(4));
        let mut acc = DenseOperator::zeros(m);
        let mut total = 0.0;
        for _ in 0..k {
            let wgt: f64 = rng.random_range(0.05..1.0);
            acc = acc.add(&projectors[rng.random_range(0..projectors.len())].scale(Complex64::new(wgt, 0.0)));
            total += wgt;
        }
        check(ProbeKind::RandomMixture, i, &acc.scale(Complex64::new(1.0 / total, 0.0)), &mut report);
    }

    let mut negatives = translated;
    for _ in 0..sample_count {
        negatives.push(random_state(m, &mut rng).projector());
    }
    for rho in &negatives {
        let before = wigner_of_operator(rho).min();
        if before >= -POSITIVITY_TOL {
            continue;
        }
        report.min_value_checked += 1;
        let after = wigner_of_operator(&u.conjugate(rho)).min();
        if (before - after).abs() > 1e-9 {
            report.min_value_mismatches += 1;
        }
    }
    Ok(report)
}

/// `P_- = (1 - A(0)) / 2`.
pub(crate) fn antisymmetric(m: Modulus) -> DenseOperator {
    DenseOperator::identity(m).sub(&parity(m).to_dense()).scale(Complex64::new(0.5, 0.0))
}

/// A random Clifford element from random symplectic and translation parts.
pub fn random_clifford<R: Rng + ?Sized>(m: Modulus, rng: &mut R) -> Result<CliffordElement> {
    let s = crate::phasespace::random_symplectic(m, rng);
    let a = PhaseVector::from_index(m, rng.random_range(0..m.phase_points()));
    clifford_from_affine(&s, &a)
}
