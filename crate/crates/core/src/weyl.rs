//! The Weyl representation: shift and boost operators, Weyl operators
//! `w(p, q) = chi(-2^{-1} p.q) z(p) x(q)` and characteristic functions.
//!
//! Weyl operators are monomial matrices, so they are kept in the exact
//! [`MonomialOperator`] form (a permutation plus root-of-unity exponents) and
//! only converted to dense complex matrices at the boundary.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::One;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DenseOperator, ExactOperator, StateVector};
use crate::phasespace::{symp, PhaseVector};
use crate::zmod::{reduce, root_of_unity, Modulus, RingElement, RingVector};

/// An element `(v, t)` of the Heisenberg group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeisenbergLabel {
    pub v: PhaseVector,
    pub t: RingElement,
}

impl HeisenbergLabel {
    pub fn new(v: PhaseVector, t: i64) -> Self {
        let d = v.modulus();
        HeisenbergLabel { v, t: RingElement::new(t, d) }
    }

    pub fn from_vector(v: PhaseVector) -> Self {
        Self::new(v, 0)
    }

    /// `(v1, t1)(v2, t2) = (v1 + v2, t1 + t2 + 2^{-1}[v1, v2])`.
    pub fn compose(&self, other: &HeisenbergLabel) -> HeisenbergLabel {
        let d = self.v.modulus();
        let half = ((d + 1) / 2) as i64;
        let s = symp(d, self.v.coords(), other.v.coords()) as i64;
        HeisenbergLabel::new(self.v.add(&other.v), self.t.value() as i64 + other.t.value() as i64 + half * s)
    }
}

/// `|y> -> omega^{phase[y]} |perm[y]>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOperator {
    modulus: Modulus,
    perm: Vec<usize>,
    phase: Vec<u32>,
}

impl MonomialOperator {
    pub fn identity(modulus: Modulus) -> Self {
        let dim = modulus.dim();
        MonomialOperator { modulus, perm: (0..dim).collect(), phase: vec![0; dim] }
    }

    pub fn from_parts(modulus: Modulus, perm: Vec<usize>, phase: Vec<u32>) -> Self {
        debug_assert_eq!(perm.len(), modulus.dim());
        MonomialOperator { modulus, perm, phase }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Target basis index of `|y>`.
    pub fn target(&self, y: usize) -> usize {
        self.perm[y]
    }

    /// Root-of-unity exponent attached to `|y>`.
    pub fn phase_exponent(&self, y: usize) -> u32 {
        self.phase[y]
    }

    /// `self * other`.
    pub fn compose(&self, other: &MonomialOperator) -> MonomialOperator {
        let d = self.modulus.d();
        let perm = other.perm.iter().map(|&y| self.perm[y]).collect();
        let phase = other.perm.iter().zip(&other.phase).map(|(&y, &ph)| (ph + self.phase[y]) % d).collect();
        MonomialOperator { modulus: self.modulus, perm, phase }
    }

    pub fn adjoint(&self) -> MonomialOperator {
        let d = self.modulus.d();
        let dim = self.perm.len();
        let mut perm = vec![0; dim];
        let mut phase = vec![0; dim];
        for y in 0..dim {
            perm[self.perm[y]] = y;
            phase[self.perm[y]] = (d - self.phase[y]) % d;
        }
        MonomialOperator { modulus: self.modulus, perm, phase }
    }

    /// Multiplies by the central phase `chi(t)`.
    pub fn times_phase(&self, t: i64) -> MonomialOperator {
        let d = self.modulus.d();
        let phase = self.phase.iter().map(|&p| reduce(p as i64 + t, d)).collect();
        MonomialOperator { modulus: self.modulus, perm: self.perm.clone(), phase }
    }

    pub fn trace(&self) -> Cyclotomic {
        let d = self.modulus.d();
        let mut t = Cyclotomic::zero(d);
        for (y, &py) in self.perm.iter().enumerate() {
            if py == y {
                t.add_root(self.phase[y] as i64, Rational64::one());
            }
        }
        t
    }

    pub fn to_dense(&self) -> DenseOperator {
        let dim = self.perm.len();
        let d = self.modulus.d();
        let mut m = CMatrix::zeros(dim, dim);
        for y in 0..dim {
            m[(self.perm[y], y)] = root_of_unity(self.phase[y] as i64, d);
        }
        DenseOperator::new(self.modulus, m).expect("dimension matches modulus")
    }

    pub fn to_exact(&self) -> ExactOperator {
        let mut out = ExactOperator::zeros(self.modulus);
        let d = self.modulus.d();
        for y in 0..self.perm.len() {
            *out.get_mut(self.perm[y], y) = Cyclotomic::root(d, self.phase[y] as i64);
        }
        out
    }

    pub fn apply(&self, psi: &StateVector) -> StateVector {
        let d = self.modulus.d();
        let mut out = vec![Complex64::new(0.0, 0.0); self.perm.len()];
        for y in 0..self.perm.len() {
            out[self.perm[y]] = root_of_unity(self.phase[y] as i64, d) * psi.amplitude(y);
        }
        StateVector::new(self.modulus, out).expect("dimension matches modulus")
    }

    /// `tr(self * rho)` in O(d^n).
    pub fn trace_with(&self, rho: &DenseOperator) -> Complex64 {
        let d = self.modulus.d();
        (0..self.perm.len()).map(|y| root_of_unity(self.phase[y] as i64, d) * rho.get(y, self.perm[y])).sum()
    }

    /// `tr(self * rho)` for exact `rho`.
    pub fn trace_with_exact(&self, rho: &ExactOperator) -> Cyclotomic {
        let mut t = Cyclotomic::zero(self.modulus.d());
        for y in 0..self.perm.len() {
            t += &rho.get(y, self.perm[y]).mul_root(self.phase[y] as i64);
        }
        t
    }

    /// `self * X` for a dense `X`.
    pub fn left_mul(&self, x: &CMatrix) -> CMatrix {
        let d = self.modulus.d();
        let dim = self.perm.len();
        let mut out = CMatrix::zeros(dim, dim);
        for y in 0..dim {
            let ph = root_of_unity(self.phase[y] as i64, d);
            for c in 0..dim {
                out[(self.perm[y], c)] = ph * x[(y, c)];
            }
        }
        out
    }

    /// `X * self`.
    pub fn right_mul(&self, x: &CMatrix) -> CMatrix {
        let d = self.modulus.d();
        let dim = self.perm.len();
        let mut out = CMatrix::zeros(dim, dim);
        for y in 0..dim {
            let ph = root_of_unity(self.phase[y] as i64, d);
            for r in 0..dim {
                out[(r, y)] = x[(r, self.perm[y])] * ph;
            }
        }
        out
    }
}

/// Coordinates of every basis state, in index order.
pub(crate) fn configuration_points(m: Modulus) -> Vec<Vec<u32>> {
    (0..m.dim()).map(|i| RingVector::from_index(m.d(), m.n(), i).coords().to_vec()).collect()
}

fn q_index(d: u32, coords: &[u32]) -> usize {
    coords.iter().fold(0usize, |acc, &c| acc * d as usize + c as usize)
}

fn check_len(m: Modulus, len: usize) -> Result<()> {
    if len != m.n() {
        return Err(Error::DimensionMismatch { expected: m.n(), found: len });
    }
    Ok(())
}

/// `x(q)|y> = |y + q>`.
pub fn shift(m: Modulus, q: &RingVector) -> Result<MonomialOperator> {
    check_len(m, q.len())?;
    Ok(weyl_raw(m, &vec![0; m.n()], q.coords(), 0, false))
}

/// `z(p)|y> = chi(p.y)|y>`.
pub fn boost(m: Modulus, p: &RingVector) -> Result<MonomialOperator> {
    check_len(m, p.len())?;
    Ok(weyl_raw(m, p.coords(), &vec![0; m.n()], 0, false))
}

/// `z(p) x(q)` times `chi(t)`, optionally with the Weyl phase `chi(-2^{-1}p.q)`.
fn weyl_raw(m: Modulus, p: &[u32], q: &[u32], t: i64, weyl_phase: bool) -> MonomialOperator {
    let d = m.d();
    let half = m.half() as i64;
    let pq: i64 = p.iter().zip(q).map(|(&a, &b)| a as i64 * b as i64).sum();
    let base = t + if weyl_phase { -half * pq } else { 0 };
    let dim = m.dim();
    let mut perm = vec![0usize; dim];
    let mut phase = vec![0u32; dim];
    let mut x = vec![0u32; m.n()];
    for (y, yc) in configuration_points(m).iter().enumerate() {
        for i in 0..m.n() {
            x[i] = (yc[i] + q[i]) % d;
        }
        let px: i64 = p.iter().zip(&x).map(|(&a, &b)| a as i64 * b as i64).sum();
        perm[y] = q_index(d, &x);
        phase[y] = reduce(base + px, d);
    }
    MonomialOperator { modulus: m, perm, phase }
}

/// `w(v, t) = chi(t) w(v)`.
pub fn weyl_operator(m: Modulus, label: &HeisenbergLabel) -> Result<MonomialOperator> {
    check_len(m, label.v.n())?;
    if label.v.modulus() != m.d() {
        return Err(Error::ModulusMismatch(m.d(), label.v.modulus()));
    }
    Ok(weyl_raw(m, label.v.p(), label.v.q(), label.t.value() as i64, true))
}

/// `w(v)` for a phase-space vector.
pub fn weyl(m: Modulus, v: &PhaseVector) -> MonomialOperator {
    debug_assert_eq!(v.n(), m.n());
    weyl_raw(m, v.p(), v.q(), 0, true)
}

/// `w(v)` for a phase-space index.
pub fn weyl_at(m: Modulus, index: usize) -> MonomialOperator {
    weyl(m, &PhaseVector::from_index(m, index))
}

/// `w(p_1, q_1) (x) ... (x) w(p_n, q_n)` assembled as a dense Kronecker product.
pub fn weyl_tensor_product(m: Modulus, v: &PhaseVector) -> DenseOperator {
    let single = Modulus::new(m.d() as u64, 1).expect("valid modulus");
    let d = m.d();
    let mut acc: Option<DenseOperator> = None;
    for i in 0..m.n() {
        let site = weyl(single, &PhaseVector::new(d, &[v.p()[i] as i64], &[v.q()[i] as i64])).to_dense();
        acc = Some(match acc {
            None => site,
            Some(a) => a.kron(&site).expect("same d"),
        });
    }
    acc.expect("n >= 1")
}

/// `(w(p, q) psi)(x) = chi(-2^{-1} p.q + p.x) psi(x - q)`, times `chi(t)`,
/// without forming the matrix.
pub fn weyl_apply(label: &HeisenbergLabel, psi: &StateVector) -> Result<StateVector> {
    let m = psi.modulus();
    if label.v.n() != m.n() {
        return Err(Error::DimensionMismatch { expected: 2 * m.n(), found: 2 * label.v.n() });
    }
    if label.v.modulus() != m.d() {
        return Err(Error::ModulusMismatch(m.d(), label.v.modulus()));
    }
    let d = m.d();
    let half = m.half() as i64;
    let (p, q) = (label.v.p(), label.v.q());
    let pq: i64 = p.iter().zip(q).map(|(&a, &b)| a as i64 * b as i64).sum();
    let mut src = vec![0u32; m.n()];
    let out = configuration_points(m)
        .iter()
        .map(|x| {
            for i in 0..m.n() {
                src[i] = (x[i] + d - q[i]) % d;
            }
            let px: i64 = p.iter().zip(x).map(|(&a, &b)| a as i64 * b as i64).sum();
            root_of_unity(label.t.value() as i64 - half * pq + px, d) * psi.amplitude(q_index(d, &src))
        })
        .collect();
    StateVector::new(m, out)
}

/// `Xi_rho(v) = d^{-n} tr(w(v)^dagger rho)` for every `v`, in index order.
pub fn characteristic_function(rho: &DenseOperator) -> Vec<Complex64> {
    let m = rho.modulus();
    let scale = 1.0 / m.dim() as f64;
    (0..m.phase_points()).map(|i| weyl_at(m, i).adjoint().trace_with(rho) * scale).collect()
}

/// `rho = sum_v Xi(v) w(v)`.
pub fn from_characteristic(m: Modulus, xi: &[Complex64]) -> DenseOperator {
    let dim = m.dim();
    let mut acc = CMatrix::zeros(dim, dim);
    for (i, &c) in xi.iter().enumerate() {
        if c.norm() == 0.0 {
            continue;
        }
        let w = weyl_at(m, i);
        for y in 0..dim {
            acc[(w.target(y), y)] += c * root_of_unity(w.phase_exponent(y) as i64, m.d());
        }
    }
    DenseOperator::new(m, acc).expect("dimension matches modulus")
}
