//! Discrete Wigner functions.
//!
//! `W_rho(a) = d^{-n} tr(A(a) rho)` with phase-point operators
//! `A(a) = d^{-n} sum_b conj(chi([a, b])) w(b)^dagger`. Since `A(0)` is the
//! parity operator and `A(a) = w(2a) A(0)`, every `A(a)` is monomial and a
//! Wigner value costs `O(d^n)`.
//!
//! Grids are indexed by phase-space index: `(p_1..p_n, q_1..q_n)` in
//! lexicographic order.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::clifford::metaplectic;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DenseOperator, ExactOperator, StateVector};
use crate::phasespace::{symp, symplectic_group_single, PhaseVector, SymplecticMatrix};
use crate::weyl::{configuration_points, weyl, weyl_at, MonomialOperator};
use crate::zmod::{is_odd_prime, root_of_unity, Modulus};

/// Real-valued Wigner function with optional exact values.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    modulus: Modulus,
    values: Vec<f64>,
    exact: Option<Vec<Rational64>>,
}

impl WignerGrid {
    pub fn new(modulus: Modulus, values: Vec<f64>) -> Result<Self> {
        if values.len() != modulus.phase_points() {
            return Err(Error::DimensionMismatch { expected: modulus.phase_points(), found: values.len() });
        }
        Ok(WignerGrid { modulus, values, exact: None })
    }

    pub fn from_exact(modulus: Modulus, exact: Vec<Rational64>) -> Result<Self> {
        if exact.len() != modulus.phase_points() {
            return Err(Error::DimensionMismatch { expected: modulus.phase_points(), found: exact.len() });
        }
        let values = exact.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect();
        Ok(WignerGrid { modulus, values, exact: Some(exact) })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn exact(&self) -> Option<&[Rational64]> {
        self.exact.as_deref()
    }

    pub fn value(&self, v: &PhaseVector) -> f64 {
        self.values[v.index()]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Index of the first minimal value.
    pub fn argmin(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v < self.values[best] {
                best = i;
            }
        }
        best
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn exact_sum(&self) -> Option<Rational64> {
        self.exact.as_ref().map(|e| e.iter().copied().sum())
    }

    /// Indices with value above `threshold`.
    pub fn support(&self, threshold: f64) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] > threshold).collect()
    }

    pub fn point(&self, index: usize) -> PhaseVector {
        PhaseVector::from_index(self.modulus, index)
    }

    pub fn max_abs_diff(&self, other: &WignerGrid) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// A complex-valued phase-space function, e.g. a star product.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGrid {
    pub modulus: Modulus,
    pub values: Vec<Complex64>,
}

impl ComplexGrid {
    pub fn from_real(grid: &WignerGrid) -> Self {
        ComplexGrid { modulus: grid.modulus, values: grid.values.iter().map(|&x| Complex64::new(x, 0.0)).collect() }
    }

    pub fn max_abs_diff(&self, other: &ComplexGrid) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// The operator `A(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePointOperator {
    pub a: PhaseVector,
    pub operator: MonomialOperator,
}

impl PhasePointOperator {
    pub fn to_dense(&self) -> DenseOperator {
        self.operator.to_dense()
    }
}

/// `A(0)|q> = |-q>`.
pub fn parity(m: Modulus) -> MonomialOperator {
    let d = m.d();
    let perm = configuration_points(m)
        .iter()
        .map(|q| q.iter().fold(0usize, |acc, &c| acc * d as usize + ((d - c) % d) as usize))
        .collect();
    MonomialOperator::from_parts(m, perm, vec![0; m.dim()])
}

/// `A(a) = w(2a) A(0)`.
pub fn phase_point_operator(m: Modulus, a: &PhaseVector) -> PhasePointOperator {
    PhasePointOperator { a: a.clone(), operator: weyl(m, &a.scale(2)).compose(&parity(m)) }
}

pub fn phase_point_at(m: Modulus, index: usize) -> MonomialOperator {
    phase_point_operator(m, &PhaseVector::from_index(m, index)).operator
}

/// `A(a)` straight from its defining sum, in exact arithmetic.
pub fn phase_point_operator_by_sum(m: Modulus, a: &PhaseVector) -> ExactOperator {
    let d = m.d();
    let weight = Rational64::new(1, m.dim() as i64);
    let mut out = ExactOperator::zeros(m);
    for b in 0..m.phase_points() {
        let bv = PhaseVector::from_index(m, b);
        let wd = weyl(m, &bv).adjoint();
        let phase = -(symp(d, a.coords(), bv.coords()) as i64);
        for y in 0..m.dim() {
            out.get_mut(wd.target(y), y).add_root(phase + wd.phase_exponent(y) as i64, weight);
        }
    }
    out
}

/// `W_rho(a) = d^{-n} tr(A(a) rho)`; real part kept, `rho` assumed Hermitian.
pub fn wigner_of_operator(rho: &DenseOperator) -> WignerGrid {
    let c = wigner_complex(rho);
    let values = c.values.iter().map(|z| z.re).collect();
    WignerGrid { modulus: rho.modulus(), values, exact: None }
}

/// `d^{-n} tr(A(a) X)` for arbitrary `X`.
pub fn wigner_complex(x: &DenseOperator) -> ComplexGrid {
    let m = x.modulus();
    let scale = 1.0 / m.dim() as f64;
    let values = (0..m.phase_points()).map(|a| phase_point_at(m, a).trace_with(x) * scale).collect();
    ComplexGrid { modulus: m, values }
}

/// `(F f)(a) = |V|^{-1/2} sum_b conj(chi([a, b])) f(b)`.
pub fn symplectic_fourier(m: Modulus, f: &[Complex64]) -> Vec<Complex64> {
    let d = m.d();
    let pts: Vec<PhaseVector> = (0..m.phase_points()).map(|i| PhaseVector::from_index(m, i)).collect();
    let norm = (m.phase_points() as f64).sqrt().recip();
    pts.iter()
        .map(|a| {
            pts.iter()
                .zip(f)
                .map(|(b, &fb)| root_of_unity(-(symp(d, a.coords(), b.coords()) as i64), d) * fb)
                .sum::<Complex64>()
                * norm
        })
        .collect()
}

/// The Wigner function as the symplectic Fourier transform of the
/// characteristic function.
pub fn wigner_via_characteristic(rho: &DenseOperator) -> ComplexGrid {
    let m = rho.modulus();
    let xi = crate::weyl::characteristic_function(rho);
    ComplexGrid { modulus: m, values: symplectic_fourier(m, &xi) }
}

/// Exact Wigner values of an operator over `Q(omega)`; fails if some value
/// is not rational.
pub fn wigner_exact(rho: &ExactOperator) -> Result<WignerGrid> {
    let m = rho.modulus();
    let scale = Rational64::new(1, m.dim() as i64);
    let mut exact = Vec::with_capacity(m.phase_points());
    for a in 0..m.phase_points() {
        let t: Cyclotomic = phase_point_at(m, a).trace_with_exact(rho);
        let r = t.as_rational().ok_or_else(|| Error::NotExact(format!("W at index {a} is {t:?}")))?;
        exact.push(r * scale);
    }
    WignerGrid::from_exact(m, exact)
}

/// `W(p, q) = d^{-n} sum_xi conj(chi(xi.p)) conj(psi(q - xi/2)) psi(q + xi/2)`.
pub fn wigner_pure(psi: &StateVector) -> WignerGrid {
    let m = psi.modulus();
    let (d, n) = (m.d(), m.n());
    let half = m.half();
    let qs = configuration_points(m);
    let idx = |c: &[u32]| c.iter().fold(0usize, |acc, &x| acc * d as usize + x as usize);
    let dim = m.dim();
    let scale = 1.0 / dim as f64;
    // K(q, xi) = conj(psi(q - xi/2)) psi(q + xi/2)
    let mut values = vec![0.0; m.phase_points()];
    let mut plus = vec![0u32; n];
    let mut minus = vec![0u32; n];
    for (qi, q) in qs.iter().enumerate() {
        let corr: Vec<Complex64> = qs
            .iter()
            .map(|xi| {
                for k in 0..n {
                    let h = ((xi[k] as u64 * half as u64) % d as u64) as u32;
                    plus[k] = (q[k] + h) % d;
                    minus[k] = (q[k] + d - h) % d;
                }
                psi.amplitude(idx(&minus)).conj() * psi.amplitude(idx(&plus))
            })
            .collect();
        for (pi, p) in qs.iter().enumerate() {
            let s: Complex64 = qs
                .iter()
                .zip(&corr)
                .map(|(xi, &k)| {
                    let dot: i64 = xi.iter().zip(p).map(|(&a, &b)| a as i64 * b as i64).sum();
                    root_of_unity(-dot, d) * k
                })
                .sum();
            values[pi * dim + qi] = s.re * scale;
        }
    }
    WignerGrid { modulus: m, values, exact: None }
}

/// Which marginal to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Sum over momenta: a distribution over positions `q`.
    Position,
    /// Sum over positions: a distribution over momenta `p`.
    Momentum,
}

pub fn marginal(w: &WignerGrid, direction: Direction) -> Vec<f64> {
    let dim = w.modulus.dim();
    let mut out = vec![0.0; dim];
    for (i, &v) in w.values.iter().enumerate() {
        let (p, q) = (i / dim, i % dim);
        match direction {
            Direction::Position => out[q] += v,
            Direction::Momentum => out[p] += v,
        }
    }
    out
}

/// `psi_hat(p) = d^{-n/2} sum_x conj(chi(p.x)) psi(x)`.
pub fn fourier_state(psi: &StateVector) -> StateVector {
    let m = psi.modulus();
    let d = m.d();
    let qs = configuration_points(m);
    let norm = (m.dim() as f64).sqrt().recip();
    let amps = qs
        .iter()
        .map(|p| {
            qs.iter()
                .enumerate()
                .map(|(xi, x)| {
                    let dot: i64 = x.iter().zip(p).map(|(&a, &b)| a as i64 * b as i64).sum();
                    root_of_unity(-dot, d) * psi.amplitude(xi)
                })
                .sum::<Complex64>()
                * norm
        })
        .collect();
    StateVector::new(m, amps).expect("dimension preserved")
}

/// `(W1 * W2)(u) = d^{-n} sum_{v,w} W1(u+v) W2(u+w) conj(chi(2[v, w]))`, so
/// that `W_{XY} = W_X * W_Y`. The factor 2 comes from
/// `tr(A(u)A(v)A(w)) = chi(2([v,u] + [u,w] + [w,v]))`.
pub fn moyal_product(w1: &ComplexGrid, w2: &ComplexGrid) -> Result<ComplexGrid> {
    star_with_kernel(w1, w2, 2)
}

/// The star product with kernel `conj(chi(k [v, w]))`.
pub fn star_with_kernel(w1: &ComplexGrid, w2: &ComplexGrid, k: i64) -> Result<ComplexGrid> {
    if w1.modulus != w2.modulus {
        return Err(Error::DimensionMismatch { expected: w1.modulus.phase_points(), found: w2.modulus.phase_points() });
    }
    let m = w1.modulus;
    let d = m.d();
    let total = m.phase_points();
    let pts: Vec<PhaseVector> = (0..total).map(|i| PhaseVector::from_index(m, i)).collect();
    let scale = 1.0 / m.dim() as f64;
    let mut values = Vec::with_capacity(total);
    for u in &pts {
        let shifted: Vec<usize> = pts.iter().map(|v| u.add(v).index()).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (vi, v) in pts.iter().enumerate() {
            let a = w1.values[shifted[vi]];
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let inner: Complex64 = pts
                .iter()
                .enumerate()
                .map(|(wi, w)| w2.values[shifted[wi]] * root_of_unity(-k * symp(d, v.coords(), w.coords()) as i64, d))
                .sum();
            acc += a * inner;
        }
        values.push(acc * scale);
    }
    Ok(ComplexGrid { modulus: m, values })
}

/// `W'(S v + a) = W(v)`.
pub fn affine_transform_grid(w: &WignerGrid, s: &SymplecticMatrix, a: &PhaseVector) -> Result<WignerGrid> {
    if !s.is_symplectic() {
        return Err(Error::NotSymplectic(s.modulus()));
    }
    let m = w.modulus;
    let mut values = vec![0.0; w.values.len()];
    let mut exact = w.exact.as_ref().map(|e| vec![Rational64::from_integer(0); e.len()]);
    for i in 0..w.values.len() {
        let v = PhaseVector::from_index(m, i);
        let j = s.apply(&v).add(a).index();
        values[j] = w.values[i];
        if let (Some(dst), Some(src)) = (exact.as_mut(), w.exact.as_ref()) {
            dst[j] = src[i];
        }
    }
    Ok(WignerGrid { modulus: m, values, exact })
}

/// `rho = sum_v W(v) A(v)`.
pub fn operator_from_wigner(w: &ComplexGrid) -> DenseOperator {
    let m = w.modulus;
    let dim = m.dim();
    let mut acc = CMatrix::zeros(dim, dim);
    for (i, &c) in w.values.iter().enumerate() {
        let a = phase_point_at(m, i);
        for y in 0..dim {
            acc[(a.target(y), y)] += c * root_of_unity(a.phase_exponent(y) as i64, m.d());
        }
    }
    DenseOperator::new(m, acc).expect("dimension matches")
}

/// Outcome of solving the covariance constraints for an alternative `A'(0)`.
#[derive(Debug, Clone)]
pub struct UniquenessReport {
    pub d: u32,
    pub group_order: usize,
    /// Eigenvalues of the stacked commutator Gram matrix, ascending.
    pub spectrum: Vec<f64>,
    pub nullity: usize,
    /// Smallest eigenvalue outside the null space.
    pub gap: f64,
    /// Largest residual of a null vector after projecting onto `span{1, A(0)}`.
    pub span_residual: f64,
    /// Coefficients of `A'(0)` in `{1, A(0)}` fixed by the marginal axiom.
    pub marginal_coefficients: (Complex64, Complex64),
    /// `max |A'(0) - A(0)|` for the marginal-constrained solution.
    pub marginal_residual: f64,
}

/// Numerical threshold separating null eigenvalues from the rest.
pub const UNIQUENESS_RANK_GAP: f64 = 1e-8;

/// Solves `[A'(0), mu(S)] = 0` for every `S` in `Sp(2, Z_d)` and then the
/// marginal constraint, for prime `d <= 5` and one particle.
pub fn axiomatic_uniqueness_check(d: u32) -> Result<UniquenessReport> {
    if d > 5 {
        return Err(Error::BudgetExceeded { size: d as u64, limit: 5 });
    }
    if !is_odd_prime(d as u64) {
        return Err(Error::UnsupportedModulus(d as u64));
    }
    let m = Modulus::new(d as u64, 1)?;
    let dim = m.dim();
    let group = symplectic_group_single(d);
    let nvar = dim * dim;
    let mut gram = DMatrix::<Complex64>::zeros(nvar, nvar);
    let eye = CMatrix::identity(dim, dim);
    for s in &group {
        let u = metaplectic(s)?.into_matrix();
        // vec(XU - UX) = (U^T (x) 1 - 1 (x) U) vec(X), column-major vec
        let k = u.transpose().kronecker(&eye) - eye.kronecker(&u);
        gram += k.adjoint() * &k;
    }
    let eig = SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..nvar).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let spectrum: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let nullity = spectrum.iter().filter(|&&e| e.abs() < UNIQUENESS_RANK_GAP).count();
    let gap = spectrum.get(nullity).copied().unwrap_or(f64::INFINITY);
    let null_basis: Vec<CMatrix> = order[..nullity]
        .iter()
        .map(|&i| {
            let col = eig.eigenvectors.column(i);
            CMatrix::from_fn(dim, dim, |r, c| col[c * dim + r])
        })
        .collect();

    // projection of each null vector onto span{1, A(0)} (orthogonal pair)
    let a0 = parity(m).to_dense().into_matrix();
    let inner = |x: &CMatrix, y: &CMatrix| x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum::<Complex64>();
    let proj = |x: &CMatrix| -> CMatrix {
        let c1 = inner(&eye, x) / inner(&eye, &eye);
        // Gram-Schmidt: A(0) minus its identity component
        let a0p = &a0 - eye.map(|e| e * (inner(&eye, &a0) / inner(&eye, &eye)));
        let c2 = inner(&a0p, x) / inner(&a0p, &a0p);
        eye.map(|e| e * c1) + a0p.map(|e| e * c2)
    };
    let span_residual =
        null_basis.iter().map(|x| (x - proj(x)).iter().map(|z| z.norm()).fold(0.0, f64::max)).fold(0.0, f64::max);

    // marginal axiom: sum_p d^{-1} tr(A'(p, q)|a><a|) = delta_{a,q}
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut rhs: Vec<Complex64> = Vec::new();
    for q in 0..d as i64 {
        for a in 0..dim {
            let row = null_basis
                .iter()
                .map(|nk| {
                    (0..d as i64)
                        .map(|p| {
                            let w = weyl(m, &PhaseVector::new(d, &[p], &[q])).to_dense().into_matrix();
                            let ap = &w * nk * w.adjoint();
                            ap[(a, a)]
                        })
                        .sum::<Complex64>()
                        / dim as f64
                })
                .collect();
            rows.push(row);
            rhs.push(Complex64::new(((a as i64) == q) as u8 as f64, 0.0));
        }
    }
    let sys = DMatrix::from_fn(rows.len(), nullity, |r, c| rows[r][c]);
    let b = nalgebra::DVector::from_vec(rhs);
    let svd = sys.svd(true, true);
    let coeffs = svd.solve(&b, 1e-12).map_err(|e| Error::NotExact(e.to_string()))?;
    let mut aprime = CMatrix::zeros(dim, dim);
    for (k, nk) in null_basis.iter().enumerate() {
        aprime += nk.map(|z| z * coeffs[k]);
    }
    let marginal_residual = (&aprime - &a0).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let c1 = inner(&eye, &aprime) / dim as f64;
    let c2 = inner(&(a0.clone() - eye.map(|e| e / dim as f64)), &aprime)
        / inner(&(a0.clone() - eye.map(|e| e / dim as f64)), &(a0.clone() - eye.map(|e| e / dim as f64)));
    let _ = Complex64::one();
    Ok(UniquenessReport {
        d,
        group_order: group.len(),
        spectrum,
        nullity,
        gap,
        span_residual,
        marginal_coefficients: (c1 - c2 / dim as f64, c2),
        marginal_residual,
    })
}

/// Wigner function of `w(a)` applied to a grid index: helper for translations.
pub fn translate_index(m: Modulus, index: usize, a: &PhaseVector) -> usize {
    PhaseVector::from_index(m, index).add(a).index()
}

/// `W` of the Weyl operator `w(index)` is not needed elsewhere; expose the
/// monomial for callers building operators from labels.
pub fn weyl_monomial(m: Modulus, index: usize) -> MonomialOperator {
    weyl_at(m, index)
}
