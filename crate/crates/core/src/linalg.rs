//! Dense state vectors and operators on `C^{d^n}`, plus an exact operator
//! type over the cyclotomic field.
//!
//! Basis states `|q>` are ordered lexicographically in `q = (q_1, ..., q_n)`
//! with `q_n` varying fastest, matching the left-to-right tensor order.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::Rational64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::zmod::Modulus;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A vector in the `d^n`-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    modulus: Modulus,
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(modulus: Modulus, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != modulus.dim() {
            return Err(Error::DimensionMismatch { expected: modulus.dim(), found: amplitudes.len() });
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::Parse("non-finite amplitude".into()));
        }
        Ok(StateVector { modulus, amplitudes: CVector::from_vec(amplitudes) })
    }

    /// The computational basis vector `|index>`.
    pub fn basis(modulus: Modulus, index: usize) -> Self {
        let mut a = CVector::zeros(modulus.dim());
        a[index] = ONE;
        StateVector { modulus, amplitudes: a }
    }

    pub fn from_vector(modulus: Modulus, amplitudes: CVector) -> Self {
        assert_eq!(amplitudes.len(), modulus.dim());
        StateVector { modulus, amplitudes }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Self {
        StateVector { modulus: self.modulus, amplitudes: self.amplitudes.unscale(self.norm()) }
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Multiplies by a global phase so that the first non-negligible
    /// amplitude is real and positive.
    pub fn phase_canonical(&self) -> Self {
        let max = self.amplitudes.iter().map(|a| a.norm()).fold(0.0, f64::max);
        let Some(first) = self.amplitudes.iter().find(|a| a.norm() > 1e-9 * max.max(1e-300)) else {
            return self.clone();
        };
        let phase = first.conj() / first.norm();
        StateVector { modulus: self.modulus, amplitudes: self.amplitudes.map(|a| a * phase) }
    }

    /// `min_theta || self - e^{i theta} other ||`.
    pub fn distance_up_to_phase(&self, other: &StateVector) -> f64 {
        let ov = other.inner(self);
        let phase = if ov.norm() > 0.0 { ov / ov.norm() } else { ONE };
        (&self.amplitudes - other.amplitudes.map(|a| a * phase)).norm()
    }

    pub fn projector(&self) -> DenseOperator {
        DenseOperator { modulus: self.modulus, matrix: &self.amplitudes * self.amplitudes.adjoint() }
    }
}

/// A `d^n x d^n` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    modulus: Modulus,
    matrix: CMatrix,
}

impl DenseOperator {
    pub fn new(modulus: Modulus, matrix: CMatrix) -> Result<Self> {
        let dim = modulus.dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: matrix.nrows().max(matrix.ncols()) });
        }
        Ok(DenseOperator { modulus, matrix })
    }

    pub fn identity(modulus: Modulus) -> Self {
        let dim = modulus.dim();
        DenseOperator { modulus, matrix: CMatrix::identity(dim, dim) }
    }

    pub fn zeros(modulus: Modulus) -> Self {
        let dim = modulus.dim();
        DenseOperator { modulus, matrix: CMatrix::zeros(dim, dim) }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.matrix[(r, c)]
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator { modulus: self.modulus, matrix: self.matrix.adjoint() }
    }

    pub fn mul(&self, other: &DenseOperator) -> Self {
        DenseOperator { modulus: self.modulus, matrix: &self.matrix * &other.matrix }
    }

    pub fn add(&self, other: &DenseOperator) -> Self {
        DenseOperator { modulus: self.modulus, matrix: &self.matrix + &other.matrix }
    }

    pub fn sub(&self, other: &DenseOperator) -> Self {
        DenseOperator { modulus: self.modulus, matrix: &self.matrix - &other.matrix }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        DenseOperator { modulus: self.modulus, matrix: self.matrix.map(|x| x * s) }
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn apply(&self, psi: &StateVector) -> StateVector {
        StateVector { modulus: self.modulus, amplitudes: &self.matrix * &psi.amplitudes }
    }

    /// `U rho U^dagger`.
    pub fn conjugate(&self, rho: &DenseOperator) -> Self {
        DenseOperator { modulus: self.modulus, matrix: &self.matrix * &rho.matrix * self.matrix.adjoint() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.norm()
    }

    /// Largest entry modulus of `U^dagger U - 1`.
    pub fn unitarity_residual(&self) -> f64 {
        let dim = self.dim();
        let p = self.matrix.adjoint() * &self.matrix - CMatrix::identity(dim, dim);
        p.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn ensure_unitary(&self, tol: f64) -> Result<()> {
        let r = self.unitarity_residual();
        if r > tol {
            Err(Error::NotUnitary(r))
        } else {
            Ok(())
        }
    }

    pub fn hermiticity_residual(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        (&self.matrix - &other.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// If `self = c * other` for a unit-modulus `c`, returns `(c, residual)`
    /// where the residual is the largest entrywise deviation.
    pub fn proportionality(&self, other: &DenseOperator) -> (Complex64, f64) {
        let ip = other.matrix.iter().zip(self.matrix.iter()).map(|(a, b)| a.conj() * b).sum::<Complex64>();
        let c = if ip.norm() > 0.0 { ip / ip.norm() } else { ONE };
        let res = self.matrix.iter().zip(other.matrix.iter()).map(|(a, b)| (a - c * b).norm()).fold(0.0, f64::max);
        (c, res)
    }

    /// Kronecker product; the moduli must share `d`.
    pub fn kron(&self, other: &DenseOperator) -> Result<Self> {
        if self.modulus.d() != other.modulus.d() {
            return Err(Error::ModulusMismatch(self.modulus.d(), other.modulus.d()));
        }
        let m = Modulus::new(self.modulus.d() as u64, self.modulus.n() + other.modulus.n())?;
        Ok(DenseOperator { modulus: m, matrix: self.matrix.kronecker(&other.matrix) })
    }

    /// Fixes the global phase: the first nonzero entry of the first nonzero
    /// column becomes real positive.
    pub fn phase_canonical(&self) -> Self {
        let max = self.matrix.iter().map(|a| a.norm()).fold(0.0, f64::max);
        let dim = self.dim();
        for c in 0..dim {
            for r in 0..dim {
                let z = self.matrix[(r, c)];
                if z.norm() > 1e-9 * max.max(1e-300) {
                    return self.scale(z.conj() / z.norm());
                }
            }
        }
        self.clone()
    }
}

/// Dense operator over `Q(omega_d)`, row-major.
#[derive(Debug, Clone)]
pub struct ExactOperator {
    modulus: Modulus,
    entries: Vec<Cyclotomic>,
}

impl ExactOperator {
    pub fn zeros(modulus: Modulus) -> Self {
        let dim = modulus.dim();
        ExactOperator { modulus, entries: vec![Cyclotomic::zero(modulus.d()); dim * dim] }
    }

    pub fn identity(modulus: Modulus) -> Self {
        let mut out = Self::zeros(modulus);
        let dim = modulus.dim();
        for i in 0..dim {
            out.entries[i * dim + i] = Cyclotomic::one(modulus.d());
        }
        out
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.modulus.dim()
    }

    pub fn get(&self, r: usize, c: usize) -> &Cyclotomic {
        &self.entries[r * self.dim() + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Cyclotomic {
        let dim = self.dim();
        &mut self.entries[r * dim + c]
    }

    /// `|psi><psi|` scaled by `weight` for a vector with entries
    /// `omega^{phase}` on its support and zero elsewhere.
    pub fn phase_projector(modulus: Modulus, phases: &[Option<u32>], weight: Rational64) -> Self {
        let mut out = Self::zeros(modulus);
        let dim = modulus.dim();
        for (r, pr) in phases.iter().enumerate() {
            let Some(pr) = pr else { continue };
            for (c, pc) in phases.iter().enumerate() {
                let Some(pc) = pc else { continue };
                out.entries[r * dim + c].add_root(*pr as i64 - *pc as i64, weight);
            }
        }
        out
    }

    pub fn add(&self, other: &ExactOperator) -> Self {
        ExactOperator { modulus: self.modulus, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &ExactOperator) -> Self {
        ExactOperator { modulus: self.modulus, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, r: Rational64) -> Self {
        ExactOperator { modulus: self.modulus, entries: self.entries.iter().map(|a| a.scale(r)).collect() }
    }

    pub fn mul(&self, other: &ExactOperator) -> Self {
        let dim = self.dim();
        let mut out = Self::zeros(self.modulus);
        for r in 0..dim {
            for t in 0..dim {
                let a = &self.entries[r * dim + t];
                if a.is_zero() {
                    continue;
                }
                for c in 0..dim {
                    let b = &other.entries[t * dim + c];
                    out.entries[r * dim + c] += &(a * b);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let dim = self.dim();
        let mut out = Self::zeros(self.modulus);
        for r in 0..dim {
            for c in 0..dim {
                out.entries[c * dim + r] = self.entries[r * dim + c].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Cyclotomic {
        let dim = self.dim();
        let mut t = Cyclotomic::zero(self.modulus.d());
        for i in 0..dim {
            t += &self.entries[i * dim + i];
        }
        t
    }

    pub fn exact_eq(&self, other: &ExactOperator) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a.exact_eq(b))
    }

    pub fn to_dense(&self) -> DenseOperator {
        let dim = self.dim();
        let m = CMatrix::from_fn(dim, dim, |r, c| self.entries[r * dim + c].to_complex());
        DenseOperator { modulus: self.modulus, matrix: m }
    }
}

/// Vector of independent standard complex Gaussians, normalized.
pub fn random_state<R: Rng + ?Sized>(modulus: Modulus, rng: &mut R) -> StateVector {
    let dim = modulus.dim();
    let v = CVector::from_fn(dim, |_, _| gaussian(rng));
    StateVector::from_vector(modulus, v.unscale(v.norm()))
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Random Hermitian matrix `(G + G^dagger)/2` with Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(modulus: Modulus, rng: &mut R) -> DenseOperator {
    let dim = modulus.dim();
    let g = CMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    let h = (&g + g.adjoint()).map(|x| x * 0.5);
    DenseOperator { modulus, matrix: h }
}

/// Random density matrix `G G^dagger / tr`.
pub fn random_density<R: Rng + ?Sized>(modulus: Modulus, rng: &mut R) -> DenseOperator {
    let dim = modulus.dim();
    let g = CMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    let h = &g * g.adjoint();
    let t = h.trace();
    DenseOperator { modulus, matrix: h.map(|x| x / t) }
}

/// Complex Gaussian matrix as a raw `CMatrix`.
pub fn random_gaussian_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| gaussian(rng))
}

/// Haar-random unitary via QR with the diagonal phase fix.
pub fn haar_unitary<R: Rng + ?Sized>(modulus: Modulus, rng: &mut R) -> DenseOperator {
    let dim = modulus.dim();
    let g = random_gaussian_matrix(dim, rng);
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for c in 0..dim {
        let rd = r[(c, c)];
        let ph = if rd.norm() > 0.0 { rd / rd.norm() } else { ONE };
        for row in 0..dim {
            q[(row, c)] *= ph;
        }
    }
    DenseOperator { modulus, matrix: q }
}

/// Diagonal operator with the given entries.
pub fn diagonal(modulus: Modulus, diag: &[Complex64]) -> DenseOperator {
    let dim = modulus.dim();
    let mut m = CMatrix::from_element(dim, dim, ZERO);
    for (i, &z) in diag.iter().enumerate() {
        m[(i, i)] = z;
    }
    DenseOperator { modulus, matrix: m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = Modulus::new(3, 2).unwrap();
        let u = haar_unitary(m, &mut rng);
        assert!(u.unitarity_residual() < 1e-12);
    }

    #[test]
    fn random_objects_have_expected_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = Modulus::new(5, 1).unwrap();
        assert!((random_state(m, &mut rng).norm() - 1.0).abs() < 1e-12);
        assert!(random_hermitian(m, &mut rng).hermiticity_residual() < 1e-15);
        let rho = random_density(m, &mut rng);
        assert!((rho.trace() - ONE).norm() < 1e-12);
    }

    #[test]
    fn exact_projector_is_idempotent() {
        let m = Modulus::new(3, 1).unwrap();
        let p = ExactOperator::phase_projector(m, &[Some(0), Some(1), Some(1)], Rational64::new(1, 3));
        assert!(p.mul(&p).exact_eq(&p));
        assert_eq!(p.trace().as_rational(), Some(Rational64::from_integer(1)));
        assert!(p.adjoint().exact_eq(&p));
    }

    #[test]
    fn proportionality_detects_phase() {
        let m = Modulus::new(3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = haar_unitary(m, &mut rng);
        let c = Complex64::from_polar(1.0, 0.7);
        let (found, res) = u.scale(c).proportionality(&u);
        assert!(res < 1e-12 && (found - c).norm() < 1e-12);
    }
}
