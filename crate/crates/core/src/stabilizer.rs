//! Stabilizer states and codes.
//!
//! For isotropic `M` and offset `v`, `P = |M|^{-1} sum_{m in M} chi([v, m]) w(m)`
//! projects onto the joint eigenspace `chi([v, m]) w(m) psi = psi`. When `M`
//! is maximal the projector has rank one and its range is `|M, v>`.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DenseOperator, ExactOperator, StateVector};
use crate::phasespace::{
    characters_of, enumerate_isotropic, enumerate_maximal_isotropic, symp, FormKind, PhaseVector, Submodule,
    ENUMERATION_BUDGET,
};
use crate::weyl::{configuration_points, weyl};
use crate::wigner::{wigner_exact, WignerGrid};
use crate::zmod::{inv_mod, is_odd_prime, prime_power, reduce, root_of_unity, Modulus, RingVector};

/// `|M, v>` with `M` maximal isotropic and `v` the least member of `v + M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StabilizerDescriptor {
    m: Submodule,
    v: PhaseVector,
}

impl StabilizerDescriptor {
    pub fn new(m: Submodule, v: PhaseVector) -> Result<Self> {
        check_isotropic(&m)?;
        let needed = (m.modulus() as usize).pow((m.ambient_dim() / 2) as u32);
        if m.len() != needed {
            return Err(Error::NotMaximal { size: m.len(), needed });
        }
        if v.modulus() != m.modulus() || 2 * v.n() != m.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: m.ambient_dim(), found: 2 * v.n() });
        }
        let v = PhaseVector::from_ring_vector(m.coset_representative(v.as_ring_vector()));
        Ok(StabilizerDescriptor { m, v })
    }

    pub fn submodule(&self) -> &Submodule {
        &self.m
    }

    pub fn offset(&self) -> &PhaseVector {
        &self.v
    }

    pub fn modulus(&self) -> Modulus {
        Modulus::new(self.m.modulus() as u64, self.m.ambient_dim() / 2).expect("validated on construction")
    }

    /// `M + v` as phase-space indices, sorted.
    pub fn support_indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.m.translate(self.v.as_ring_vector()).iter().map(|x| x.index()).collect();
        out.sort_unstable();
        out
    }

    pub fn generator_matrix(&self) -> GeneratorMatrix {
        GeneratorMatrix { d: self.m.modulus(), n: self.m.ambient_dim() / 2, columns: self.m.reduced().generators().to_vec() }
    }
}

/// Columns generate `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMatrix {
    pub d: u32,
    pub n: usize,
    pub columns: Vec<RingVector>,
}

impl GeneratorMatrix {
    pub fn span(&self) -> Submodule {
        Submodule::closure(self.d, 2 * self.n, &self.columns)
    }
}

fn check_isotropic(m: &Submodule) -> Result<()> {
    if m.ambient_dim() % 2 != 0 || !m.is_isotropic() {
        return Err(Error::NotIsotropic);
    }
    Ok(())
}

fn modulus_of(m: &Submodule) -> Result<Modulus> {
    Modulus::new(m.modulus() as u64, m.ambient_dim() / 2)
}

/// `P = |M|^{-1} sum_m chi([v, m]) w(m)`; rank `d^n / |M|`.
pub fn stabilizer_projector(m: &Submodule, v: &PhaseVector) -> Result<DenseOperator> {
    check_isotropic(m)?;
    let modulus = modulus_of(m)?;
    let d = modulus.d();
    let dim = modulus.dim();
    let mut acc = CMatrix::zeros(dim, dim);
    let weight = 1.0 / m.len() as f64;
    for x in m.elements() {
        let x = PhaseVector::from_ring_vector(x);
        let w = weyl(modulus, &x);
        let t = symp(d, v.coords(), x.coords()) as i64;
        for y in 0..dim {
            acc[(w.target(y), y)] += root_of_unity(t + w.phase_exponent(y) as i64, d) * weight;
        }
    }
    DenseOperator::new(modulus, acc)
}

/// The same projector over `Q(omega)`.
pub fn stabilizer_projector_exact(m: &Submodule, v: &PhaseVector) -> Result<ExactOperator> {
    check_isotropic(m)?;
    let modulus = modulus_of(m)?;
    let d = modulus.d();
    let weight = Rational64::new(1, m.len() as i64);
    let mut out = ExactOperator::zeros(modulus);
    for x in m.elements() {
        let x = PhaseVector::from_ring_vector(x);
        let w = weyl(modulus, &x);
        let t = symp(d, v.coords(), x.coords()) as i64;
        for y in 0..modulus.dim() {
            out.get_mut(w.target(y), y).add_root(t + w.phase_exponent(y) as i64, weight);
        }
    }
    Ok(out)
}

/// A state with entries `omega^{phase[y]} / sqrt(|support|)` on its support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseState {
    pub modulus: Modulus,
    pub phases: Vec<Option<u32>>,
}

impl PhaseState {
    /// Reads off support and root-of-unity phases relative to the first
    /// nonzero amplitude; `None` if the state is not of this form.
    pub fn from_state(psi: &StateVector) -> Option<PhaseState> {
        let m = psi.modulus();
        let d = m.d();
        let max = psi.amplitudes().iter().map(|z| z.norm()).fold(0.0, f64::max);
        let support: Vec<usize> = (0..m.dim()).filter(|&y| psi.amplitude(y).norm() > 1e-6 * max).collect();
        let first = psi.amplitude(*support.first()?);
        let expected = (support.len() as f64).sqrt().recip() * psi.norm();
        let mut phases = vec![None; m.dim()];
        for &y in &support {
            let z = psi.amplitude(y) / first;
            if (psi.amplitude(y).norm() - expected).abs() > 1e-8 {
                return None;
            }
            let k = (z.arg() / std::f64::consts::TAU * d as f64).round() as i64;
            if (z - root_of_unity(k, d)).norm() > 1e-6 {
                return None;
            }
            phases[y] = Some(reduce(k, d));
        }
        Some(PhaseState { modulus: m, phases })
    }

    pub fn support_size(&self) -> usize {
        self.phases.iter().filter(|p| p.is_some()).count()
    }

    pub fn to_state(&self) -> StateVector {
        let norm = (self.support_size() as f64).sqrt().recip();
        let d = self.modulus.d();
        let amps = self
            .phases
            .iter()
            .map(|p| p.map_or(Complex64::new(0.0, 0.0), |k| root_of_unity(k as i64, d) * norm))
            .collect();
        StateVector::new(self.modulus, amps).expect("dimension matches")
    }

    /// `|psi><psi|` over `Q(omega)`.
    pub fn projector_exact(&self) -> ExactOperator {
        ExactOperator::phase_projector(self.modulus, &self.phases, Rational64::new(1, self.support_size() as i64))
    }
}

/// Checks `chi([v, m]) w(m) psi = psi` for every `m in M` in exact arithmetic.
pub fn verify_eigen_equations(desc: &StabilizerDescriptor, psi: &PhaseState) -> bool {
    let modulus = desc.modulus();
    let d = modulus.d();
    desc.m.elements().all(|x| {
        let x = PhaseVector::from_ring_vector(x);
        let w = weyl(modulus, &x);
        let t = symp(d, desc.v.coords(), x.coords());
        (0..modulus.dim()).all(|y| match psi.phases[y] {
            None => psi.phases[w.target(y)].is_none(),
            Some(py) => psi.phases[w.target(y)] == Some((py + t + w.phase_exponent(y)) % d),
        })
    })
}

/// `|M, v>` with the first nonzero amplitude real positive; the eigenvalue
/// equations are verified symbolically before returning.
pub fn stabilizer_state(desc: &StabilizerDescriptor) -> Result<StateVector> {
    Ok(stabilizer_phase_state(desc)?.to_state())
}

pub fn stabilizer_phase_state(desc: &StabilizerDescriptor) -> Result<PhaseState> {
    let p = stabilizer_projector(&desc.m, &desc.v)?;
    let dim = p.dim();
    let col = (0..dim)
        .max_by(|&a, &b| p.get(a, a).re.partial_cmp(&p.get(b, b).re).unwrap())
        .expect("nonempty");
    let amps = (0..dim).map(|r| p.get(r, col)).collect();
    let psi = StateVector::new(p.modulus(), amps)?.normalized();
    let ps = PhaseState::from_state(&psi)
        .ok_or_else(|| Error::TheoremViolation("stabilizer projector column is not a phase state".into()))?;
    if !verify_eigen_equations(desc, &ps) {
        return Err(Error::TheoremViolation("eigenvalue equations fail for rounded stabilizer state".into()));
    }
    Ok(ps)
}

/// Exact Wigner function of `|M, v>`.
pub fn stabilizer_wigner_exact(desc: &StabilizerDescriptor) -> Result<WignerGrid> {
    wigner_exact(&stabilizer_phase_state(desc)?.projector_exact())
}

/// `theta` symmetric over `Z_d`, offset `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStateSpec {
    pub theta: Vec<Vec<i64>>,
    pub x: RingVector,
}

fn check_theta(theta: &[Vec<i64>], n: usize, d: u32) -> Result<Vec<Vec<u32>>> {
    if theta.len() != n || theta.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: theta.len() });
    }
    let t: Vec<Vec<u32>> = theta.iter().map(|r| r.iter().map(|&c| reduce(c, d)).collect()).collect();
    for i in 0..n {
        for j in 0..n {
            if t[i][j] != t[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    Ok(t)
}

/// `psi(q) = d^{-n/2} omega^{q theta q + x q}`.
pub fn gaussian_amplitudes(theta: &[Vec<i64>], x: &RingVector) -> Result<StateVector> {
    Ok(gaussian_phase_state(theta, x)?.to_state())
}

fn gaussian_phase_state(theta: &[Vec<i64>], x: &RingVector) -> Result<PhaseState> {
    let d = x.modulus();
    let n = x.len();
    let t = check_theta(theta, n, d)?;
    let modulus = Modulus::new(d as u64, n)?;
    let phases = configuration_points(modulus)
        .iter()
        .map(|q| {
            let mut e: i64 = 0;
            for i in 0..n {
                e += x.coords()[i] as i64 * q[i] as i64;
                for j in 0..n {
                    e += q[i] as i64 * t[i][j] as i64 * q[j] as i64;
                }
            }
            Some(reduce(e, d))
        })
        .collect();
    Ok(PhaseState { modulus, phases })
}

/// The graph state of `spec`: `M` spanned by the columns `(2 theta e_i, e_i)`
/// and `v = (x, 0)`, so that `[v, m_i] = x_i`.
pub fn graph_state(spec: &GraphStateSpec) -> Result<(StabilizerDescriptor, StateVector)> {
    let d = spec.x.modulus();
    let n = spec.x.len();
    let t = check_theta(&spec.theta, n, d)?;
    let gens: Vec<RingVector> = (0..n)
        .map(|i| {
            let mut c: Vec<i64> = (0..n).map(|r| 2 * t[r][i] as i64).collect();
            c.extend((0..n).map(|r| (r == i) as i64));
            RingVector::new(d, &c)
        })
        .collect();
    let m = Submodule::closure(d, 2 * n, &gens);
    let x: Vec<i64> = spec.x.coords().iter().map(|&c| c as i64).collect();
    let desc = StabilizerDescriptor::new(m, PhaseVector::new(d, &x, &vec![0; n]))?;
    let ps = gaussian_phase_state(&spec.theta, &spec.x)?;
    if !verify_eigen_equations(&desc, &ps) {
        return Err(Error::TheoremViolation("graph state fails its eigenvalue equations".into()));
    }
    Ok((desc, ps.to_state()))
}

/// Recovers `(theta, x)` with `psi ~ omega^{q theta q + x q}` from a
/// full-support state, using second differences of the phase exponents.
pub fn recover_gaussian(psi: &StateVector) -> Option<(Vec<Vec<i64>>, RingVector)> {
    let ps = PhaseState::from_state(&psi.phase_canonical())?;
    let m = ps.modulus;
    let (d, n) = (m.d(), m.n());
    if ps.support_size() != m.dim() {
        return None;
    }
    let half = m.half() as i64;
    let idx = |q: &[i64]| q.iter().fold(0usize, |acc, &c| acc * d as usize + reduce(c, d) as usize);
    let k = |q: &[i64]| ps.phases[idx(q)].expect("full support") as i64;
    let unit = |i: usize, s: i64| -> Vec<i64> { (0..n).map(|r| if r == i { s } else { 0 }).collect() };
    let mut theta = vec![vec![0i64; n]; n];
    let mut x = vec![0i64; n];
    for i in 0..n {
        // k(2e_i) - 2k(e_i) + k(0) = 2 theta_ii
        theta[i][i] = reduce(half * (k(&unit(i, 2)) - 2 * k(&unit(i, 1))), d) as i64;
        x[i] = reduce(k(&unit(i, 1)) - theta[i][i], d) as i64;
        for j in 0..i {
            let mut e = unit(i, 1);
            e[j] = 1;
            // k(e_i + e_j) - k(e_i) - k(e_j) = 2 theta_ij
            let t = reduce(half * (k(&e) - k(&unit(i, 1)) - k(&unit(j, 1))), d) as i64;
            theta[i][j] = t;
            theta[j][i] = t;
        }
    }
    let x = RingVector::new(d, &x);
    let candidate = gaussian_phase_state(&theta, &x).ok()?;
    (candidate == ps).then_some((theta, x))
}

/// Every stabilizer state: one per maximal isotropic `M` and coset of `M`.
pub fn enumerate_stabilizer_states(m: Modulus) -> Result<Vec<(StabilizerDescriptor, StateVector)>> {
    let mut out = Vec::new();
    for sub in enumerate_maximal_isotropic(m)? {
        for ch in characters_of(&sub, FormKind::Symplectic) {
            let desc = StabilizerDescriptor::new(sub.clone(), PhaseVector::from_ring_vector(ch.representative))?;
            let psi = stabilizer_state(&desc)?;
            out.push((desc, psi));
        }
    }
    Ok(out)
}

/// `[n, m]_d = prod_{i<m} (d^{n-i} - 1) / (d^{i+1} - 1)`.
pub fn gauss_coefficient(n: u32, m: u32, d: u64) -> Result<BigUint> {
    prime_power(d).ok_or(Error::NotPrimePower(d))?;
    if m > n {
        return Ok(BigUint::zero());
    }
    let d = BigUint::from(d);
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m {
        num *= d.pow(n - i) - &one;
        den *= d.pow(i + 1) - &one;
    }
    Ok(num / den)
}

/// Number of `m`-dimensional isotropic subspaces of `F_d^{2n}`.
pub fn count_isotropic(n: u32, m: u32, d: u64) -> Result<BigUint> {
    let mut out = gauss_coefficient(n, m, d)?;
    let db = BigUint::from(d);
    for i in 0..m {
        out *= db.pow(n - i) + BigUint::one();
    }
    Ok(out)
}

/// `d^m Iso(n, m, d)`.
pub fn count_stabilizer_codes(n: u32, m: u32, d: u64) -> Result<BigUint> {
    Ok(BigUint::from(d).pow(m) * count_isotropic(n, m, d)?)
}

/// `Stabs(n, n, d) / Stabs(1, 1, d^n)` and whether it is at least
/// `d^{(n^2 - n)/2}`.
pub fn multiparticle_ratio(n: u32, d: u64) -> Result<(BigRational, bool)> {
    prime_power(d).ok_or(Error::NotPrimePower(d))?;
    let num = count_stabilizer_codes(n, n, d)?;
    let big_d = BigUint::from(d).pow(n);
    let den = &big_d * (&big_d + BigUint::one());
    let ratio = BigRational::new(num.into(), den.into());
    let bound = BigRational::from_integer(BigUint::from(d).pow((n * n - n) / 2).into());
    let holds = ratio >= bound;
    Ok((ratio, holds))
}

/// Formula and enumeration counts side by side. The formula is only
/// reported for prime `d`, where `Z_d` is a field; composite `d` is
/// enumeration-only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub n: u32,
    pub m: u32,
    pub d: u64,
    #[serde(with = "big_opt")]
    pub iso: Option<BigUint>,
    #[serde(with = "big_opt")]
    pub stabs: Option<BigUint>,
    /// Enumerated isotropic submodules of size `d^m`.
    #[serde(with = "big_opt")]
    pub enumerated: Option<BigUint>,
}

impl CountReport {
    pub fn consistent(&self) -> bool {
        match (&self.iso, &self.enumerated) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

/// Big integers as decimal strings.
mod big_opt {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(b) => s.serialize_some(&b.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let raw: Option<String> = Option::deserialize(d)?;
        raw.map(|t| t.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

pub fn count_report(n: u32, m: u32, d: u64, budget: u64) -> Result<CountReport> {
    let modulus = Modulus::new(d, n as usize)?;
    let (iso, stabs) = if is_odd_prime(d) {
        (Some(count_isotropic(n, m, d)?), Some(count_stabilizer_codes(n, m, d)?))
    } else {
        (None, None)
    };
    let size = d.checked_pow(2 * n).unwrap_or(u64::MAX);
    let enumerated = if size <= budget.min(ENUMERATION_BUDGET) {
        let target = (d as usize).pow(m);
        Some(BigUint::from(enumerate_isotropic(modulus)?.iter().filter(|s| s.len() == target).count()))
    } else if iso.is_none() {
        return Err(Error::BudgetExceeded { size, limit: budget.min(ENUMERATION_BUDGET) });
    } else {
        None
    };
    Ok(CountReport { n, m, d, iso, stabs, enumerated })
}

/// Solves `[v, m_i] = t_i` for `v` given generator values; used to rebuild
/// a descriptor from eigenvalues. Returns `None` if no solution exists.
pub fn offset_from_eigenvalues(m: &Submodule, values: &[(RingVector, u32)]) -> Option<PhaseVector> {
    let modulus = modulus_of(m).ok()?;
    (0..modulus.phase_points()).map(|i| PhaseVector::from_index(modulus, i)).find(|v| {
        values.iter().all(|(g, t)| symp(modulus.d(), v.coords(), g.coords()) == *t)
    })
}

/// `2^{-1}` in `Z_d`.
pub fn half(d: u32) -> u32 {
    inv_mod(2, d).expect("odd modulus")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wigner::wigner_pure;

    fn md(d: u64, n: usize) -> Modulus {
        Modulus::new(d, n).unwrap()
    }

    fn sub(d: u32, dim: usize, gens: &[&[i64]]) -> Submodule {
        Submodule::closure(d, dim, &gens.iter().map(|g| RingVector::new(d, g)).collect::<Vec<_>>())
    }

    #[test]
    fn projector_examples() {
        let m3 = md(3, 1);
        let boosts = sub(3, 2, &[&[1, 0]]);
        let p = stabilizer_projector(&boosts, &PhaseVector::zero(m3)).unwrap();
        assert!(p.max_abs_diff(&StateVector::basis(m3, 0).projector()) < 1e-14);
        let triv = Submodule::trivial(3, 2);
        assert!(stabilizer_projector(&triv, &PhaseVector::zero(m3)).unwrap().max_abs_diff(&DenseOperator::identity(m3)) < 1e-14);
        assert_eq!(stabilizer_projector(&Submodule::full(3, 2), &PhaseVector::zero(m3)), Err(Error::NotIsotropic));
    }

    #[test]
    fn state_examples() {
        let m3 = md(3, 1);
        let d1 = StabilizerDescriptor::new(sub(3, 2, &[&[1, 0]]), PhaseVector::zero(m3)).unwrap();
        assert!(stabilizer_state(&d1).unwrap().distance_up_to_phase(&StateVector::basis(m3, 0)) < 1e-14);
        let d2 = StabilizerDescriptor::new(sub(3, 2, &[&[0, 1]]), PhaseVector::zero(m3)).unwrap();
        let psi = stabilizer_state(&d2).unwrap();
        for y in 0..3 {
            assert!((psi.amplitude(y) - Complex64::new(3f64.sqrt().recip(), 0.0)).norm() < 1e-14);
        }
        // GHZ-type: X (x) X and Z (x) Z^{-1}
        let ghz = sub(3, 4, &[&[0, 0, 1, 1], &[1, 2, 0, 0]]);
        let dg = StabilizerDescriptor::new(ghz, PhaseVector::zero(md(3, 2))).unwrap();
        let psi = stabilizer_state(&dg).unwrap();
        for y in 0..9 {
            let expected = if y == 0 || y == 4 || y == 8 { 3f64.sqrt().recip() } else { 0.0 };
            assert!((psi.amplitude(y).norm() - expected).abs() < 1e-14);
        }
        assert!(matches!(
            StabilizerDescriptor::new(Submodule::trivial(3, 2), PhaseVector::zero(m3)),
            Err(Error::NotMaximal { .. })
        ));
    }

    #[test]
    fn graph_state_examples() {
        let spec = GraphStateSpec { theta: vec![vec![1]], x: RingVector::new(3, &[0]) };
        let (desc, psi) = graph_state(&spec).unwrap();
        let c = 3f64.sqrt().recip();
        for (y, k) in [(0usize, 0i64), (1, 1), (2, 1)] {
            assert!((psi.amplitude(y) - root_of_unity(k, 3) * c).norm() < 1e-14);
        }
        let w = wigner_pure(&psi);
        let supp = desc.support_indices();
        for i in 0..9 {
            let e = if supp.contains(&i) { 1.0 / 3.0 } else { 0.0 };
            assert!((w.values()[i] - e).abs() < 1e-14);
        }
        let bad = GraphStateSpec { theta: vec![vec![0, 1], vec![2, 0]], x: RingVector::new(3, &[0, 0]) };
        assert_eq!(graph_state(&bad).unwrap_err(), Error::NotSymmetric);
    }

    #[test]
    fn gaussian_d5_exact_eigen() {
        let spec = GraphStateSpec { theta: vec![vec![2]], x: RingVector::new(5, &[1]) };
        let (desc, psi) = graph_state(&spec).unwrap();
        let ps = PhaseState::from_state(&psi).unwrap();
        assert!(verify_eigen_equations(&desc, &ps));
        let g = gaussian_amplitudes(&spec.theta, &spec.x).unwrap();
        assert!(g.distance_up_to_phase(&psi) < 1e-14);
        assert!(g.amplitudes().iter().all(|z| (z.norm() - 5f64.sqrt().recip()).abs() < 1e-14));
    }

    #[test]
    fn two_qutrit_graph_state_wigner() {
        let spec = GraphStateSpec { theta: vec![vec![0, 1], vec![1, 0]], x: RingVector::new(3, &[0, 0]) };
        let (desc, _) = graph_state(&spec).unwrap();
        let w = stabilizer_wigner_exact(&desc).unwrap();
        let nine = Rational64::new(1, 9);
        let count = w.exact().unwrap().iter().filter(|&&v| v == nine).count();
        assert_eq!(count, 9);
        assert_eq!(w.exact_sum(), Some(Rational64::one()));
    }

    #[test]
    fn enumeration_counts() {
        for (d, n, expected) in [(3u64, 1usize, 12usize), (5, 1, 30), (3, 2, 360)] {
            let all = enumerate_stabilizer_states(md(d, n)).unwrap();
            assert_eq!(all.len(), expected);
            assert_eq!(BigUint::from(expected), count_stabilizer_codes(n as u32, n as u32, d).unwrap());
        }
    }

    #[test]
    fn enumerated_states_lemma3_exact() {
        for (d, n) in [(3u64, 1usize), (5, 1), (3, 2)] {
            let mm = md(d, n);
            let inv = Rational64::new(1, mm.dim() as i64);
            for (desc, _) in enumerate_stabilizer_states(mm).unwrap() {
                let w = stabilizer_wigner_exact(&desc).unwrap();
                let supp = desc.support_indices();
                for (i, &v) in w.exact().unwrap().iter().enumerate() {
                    assert_eq!(v, if supp.binary_search(&i).is_ok() { inv } else { Rational64::zero() });
                }
            }
        }
    }

    #[test]
    fn gaussian_recovery_for_full_support_states() {
        for (d, n) in [(3u64, 1usize), (5, 1), (3, 2)] {
            let mm = md(d, n);
            let states = enumerate_stabilizer_states(mm).unwrap();
            let mut full = 0;
            for (_, psi) in &states {
                let ps = PhaseState::from_state(psi).unwrap();
                if ps.support_size() == mm.dim() {
                    full += 1;
                    let (theta, x) = recover_gaussian(psi).expect("full-support stabilizer state is Gaussian");
                    let g = gaussian_amplitudes(&theta, &x).unwrap();
                    assert!(g.distance_up_to_phase(psi) < 1e-12);
                }
            }
            assert_eq!(full, (d as usize).pow((n * (n + 1) / 2) as u32) * mm.dim());
        }
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_isotropic(1, 1, 3).unwrap(), BigUint::from(4u32));
        assert_eq!(count_stabilizer_codes(1, 1, 3).unwrap(), BigUint::from(12u32));
        assert_eq!(count_isotropic(2, 1, 3).unwrap(), BigUint::from(40u32));
        assert_eq!(count_isotropic(2, 2, 3).unwrap(), BigUint::from(40u32));
        assert_eq!(count_stabilizer_codes(2, 2, 3).unwrap(), BigUint::from(360u32));
        assert_eq!(count_isotropic(1, 1, 9).unwrap(), BigUint::from(10u32));
        assert_eq!(count_isotropic(1, 1, 15), Err(Error::NotPrimePower(15)));
        let (r, ok) = multiparticle_ratio(2, 3).unwrap();
        assert_eq!(r, BigRational::from_integer(4.into()));
        assert!(ok);
        assert_eq!(multiparticle_ratio(1, 5).unwrap().0, BigRational::one());
        let (r, ok) = multiparticle_ratio(3, 3).unwrap();
        assert_eq!(r, BigRational::from_integer(40.into()));
        assert!(ok);
    }

    #[test]
    fn count_reports_agree_with_enumeration() {
        for (n, m, d) in [(1u32, 1u32, 3u64), (1, 1, 5), (2, 1, 3), (2, 2, 3)] {
            let r = count_report(n, m, d, ENUMERATION_BUDGET).unwrap();
            assert!(r.enumerated.is_some() && r.consistent(), "{r:?}");
        }
        let r = count_report(1, 1, 9, ENUMERATION_BUDGET).unwrap();
        assert!(r.iso.is_none() && r.enumerated.is_some());
    }

    #[test]
    fn code_ranks_match_dimension() {
        let mm = md(3, 2);
        for s in enumerate_isotropic(mm).unwrap() {
            let p = stabilizer_projector(&s, &PhaseVector::zero(mm)).unwrap();
            let rank = p.trace().re.round() as usize;
            assert_eq!(rank, 9 / s.len());
            assert!(p.mul(&p).max_abs_diff(&p) < 1e-12);
            assert!(p.hermiticity_residual() < 1e-14);
        }
    }
}
