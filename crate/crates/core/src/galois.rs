//! Prime-power dimensions: `F_{p^n}` arithmetic, trace and dual bases, the
//! relabeling map `iota` onto `Z_p^{2n}`, and the single- versus
//! multi-particle stabilizer gap.
//!
//! Elements are stored by their coefficients in the polynomial basis
//! `1, t, ..., t^{n-1}`; the configurable basis `b_i` only enters through
//! [`GaloisField::coordinates`] and the dual pairing.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ExactOperator;
use crate::phasespace::{enumerate_maximal_isotropic, PhaseVector, Submodule};
use crate::stabilizer::{multiparticle_ratio, stabilizer_projector_exact};
use crate::weyl::{weyl, MonomialOperator};
use crate::wigner::phase_point_operator;
use crate::zmod::{inv_mod, is_odd_prime, reduce, Modulus, RingVector, UnitPhase};

/// Largest field order handled.
pub const FIELD_BUDGET: u64 = 81;
/// Largest field order for the stabilizer-gap enumeration.
pub const GAP_BUDGET: u64 = 9;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    /// Coefficients of `1, t, ..., t^{n-1}`.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// `{"p": 3, "n": 2, "poly": [1, 0, 1]}`; `poly` lists `c_0..c_n` and must be
/// monic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: u32,
    n: usize,
    /// `c_0..c_{n-1}` of the monic modulus polynomial.
    poly: Vec<u32>,
    basis: Vec<FieldElement>,
    dual: Vec<FieldElement>,
}

/// `t^2 + 1` for `F_9`, `t^3 - t + 1` for `F_27`, `t^2 + 2` when irreducible,
/// otherwise the first monic irreducible polynomial in lexicographic order.
pub fn default_polynomial(p: u32, n: usize) -> Vec<i64> {
    match (p, n) {
        (_, 1) => vec![0, 1],
        (3, 2) => vec![1, 0, 1],
        (3, 3) => vec![1, -1, 0, 1],
        _ => {
            if n == 2 && is_irreducible(p, &[2, 0]) {
                return vec![2, 0, 1];
            }
            let total = (p as usize).pow(n as u32);
            (0..total)
                .map(|i| RingVector::from_index(p, n, i).coords().iter().rev().copied().collect::<Vec<u32>>())
                .find(|c| is_irreducible(p, c))
                .map(|c| c.iter().map(|&x| x as i64).chain(std::iter::once(1)).collect())
                .expect("an irreducible polynomial exists in every degree")
        }
    }
}

fn poly_mul(p: u32, poly: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = poly.len();
    let mut prod = vec![0u64; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as u64 * y as u64;
        }
    }
    let p64 = p as u64;
    // t^n = -(c_0 + ... + c_{n-1} t^{n-1})
    for k in (n..2 * n).rev() {
        let top = prod[k] % p64;
        prod[k] = 0;
        if top != 0 {
            for (i, &c) in poly.iter().enumerate() {
                prod[k - n + i] += (p64 - c as u64) * top;
            }
        }
    }
    prod[..n].iter().map(|&x| (x % p64) as u32).collect()
}

/// The quotient ring is a field iff it has no zero divisors; checked by
/// brute force, which is cheap within the budget.
fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let n = poly.len();
    if n == 1 {
        return true;
    }
    let total = (p as usize).pow(n as u32);
    let elems: Vec<Vec<u32>> = (1..total).map(|i| RingVector::from_index(p, n, i).coords().to_vec()).collect();
    elems.iter().all(|a| elems.iter().all(|b| poly_mul(p, poly, a, b).iter().any(|&c| c != 0)))
}

fn solve_mod(p: u32, mut a: Vec<Vec<u32>>) -> Option<Vec<Vec<u32>>> {
    let n = a.len();
    let mut inv: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let s = inv_mod(a[col][col], p)?;
        for j in 0..n {
            a[col][j] = ((a[col][j] as u64 * s as u64) % p as u64) as u32;
            inv[col][j] = ((inv[col][j] as u64 * s as u64) % p as u64) as u32;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col] as u64;
                for j in 0..n {
                    a[r][j] = ((a[r][j] as u64 + (p as u64 - f) * a[col][j] as u64) % p as u64) as u32;
                    inv[r][j] = ((inv[r][j] as u64 + (p as u64 - f) * inv[col][j] as u64) % p as u64) as u32;
                }
            }
        }
    }
    Some(inv)
}

impl GaloisField {
    /// `F_p[t]/(poly)` with the polynomial basis. `poly` lists `c_0..c_n`.
    pub fn new(p: u64, n: usize, poly: Option<&[i64]>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroParticles);
        }
        let order = u32::try_from(n).ok().and_then(|k| p.checked_pow(k)).unwrap_or(u64::MAX);
        if order > FIELD_BUDGET {
            return Err(Error::BudgetExceeded { size: order, limit: FIELD_BUDGET });
        }
        if !is_odd_prime(p) {
            return Err(Error::NotPrimePower(p));
        }
        let p = p as u32;
        let given = poly.map(|c| c.to_vec()).unwrap_or_else(|| default_polynomial(p, n));
        if given.len() != n + 1 || reduce(given[n], p) != 1 {
            return Err(Error::Parse(format!("modulus polynomial must be monic of degree {n}")));
        }
        let poly: Vec<u32> = given[..n].iter().map(|&c| reduce(c, p)).collect();
        if !is_irreducible(p, &poly) {
            return Err(Error::Reducible(p));
        }
        let mut field = GaloisField { p, n, poly, basis: Vec::new(), dual: Vec::new() };
        let basis: Vec<FieldElement> = (0..n).map(|i| field.monomial(i)).collect();
        field.set_basis(basis)?;
        Ok(field)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        GaloisField::new(spec.p, spec.n, spec.poly.as_deref())
    }

    /// Replaces the primal basis; the dual basis is recomputed.
    pub fn with_basis(mut self, basis: Vec<FieldElement>) -> Result<Self> {
        self.set_basis(basis)?;
        Ok(self)
    }

    fn set_basis(&mut self, basis: Vec<FieldElement>) -> Result<()> {
        if basis.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: basis.len() });
        }
        self.dual = self.dual_basis(&basis)?;
        self.basis = basis;
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.n as u32)
    }

    /// `c_0..c_n` including the leading 1.
    pub fn polynomial(&self) -> Vec<u32> {
        self.poly.iter().copied().chain(std::iter::once(1)).collect()
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn dual(&self) -> &[FieldElement] {
        &self.dual
    }

    /// Tensor modulus `(p, n)` of the relabeled picture.
    pub fn tensor_modulus(&self) -> Modulus {
        Modulus::new(self.p as u64, self.n).expect("odd prime and n >= 1")
    }

    pub fn element(&self, coeffs: &[i64]) -> FieldElement {
        let mut c: Vec<u32> = coeffs.iter().map(|&x| reduce(x, self.p)).collect();
        c.resize(self.n, 0);
        FieldElement { coeffs: c }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.n] }
    }

    pub fn scalar(&self, k: i64) -> FieldElement {
        self.element(&[k])
    }

    /// `t^i` for `i < n`.
    pub fn monomial(&self, i: usize) -> FieldElement {
        let mut c = vec![0; self.n];
        c[i] = 1;
        FieldElement { coeffs: c }
    }

    /// Elements in index order (polynomial coefficients, `c_0` most significant).
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    pub fn element_at(&self, index: usize) -> FieldElement {
        FieldElement { coeffs: RingVector::from_index(self.p, self.n, index).coords().to_vec() }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + y) % self.p).collect() }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + self.p - y) % self.p).collect() }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement { coeffs: poly_mul(self.p, &self.poly, &a.coeffs, &b.coeffs) }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.scalar(1);
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| self.pow(a, self.order() as u64 - 2))
    }

    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// `Tr f = sum_k f^{p^k}`, an element of the base field.
    pub fn trace(&self, f: &FieldElement) -> u32 {
        let mut acc = self.zero();
        let mut x = f.clone();
        for _ in 0..self.n {
            acc = self.add(&acc, &x);
            x = self.frobenius(&x);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0), "trace left the base field");
        acc.coeffs[0]
    }

    /// `b^i` with `Tr(b^i b_j) = delta_ij`, from the inverse Gram matrix.
    pub fn dual_basis(&self, basis: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let gram: Vec<Vec<u32>> =
            basis.iter().map(|bi| basis.iter().map(|bj| self.trace(&self.mul(bi, bj))).collect()).collect();
        let ginv = solve_mod(self.p, gram).ok_or(Error::SingularGram)?;
        Ok((0..basis.len())
            .map(|i| {
                basis.iter().enumerate().fold(self.zero(), |acc, (k, bk)| self.add(&acc, &self.mul(&self.scalar(ginv[i][k] as i64), bk)))
            })
            .collect())
    }

    /// `f^i = Tr(f b^i)`, so that `f = sum_i f^i b_i`.
    pub fn coordinates(&self, f: &FieldElement) -> Vec<u32> {
        self.dual.iter().map(|b| self.trace(&self.mul(f, b))).collect()
    }

    /// `f_j = Tr(f b_j)`, so that `f = sum_j f_j b^j`.
    pub fn dual_coordinates(&self, f: &FieldElement) -> Vec<u32> {
        self.basis.iter().map(|b| self.trace(&self.mul(f, b))).collect()
    }

    pub fn from_coordinates(&self, c: &[u32]) -> FieldElement {
        self.combine(&self.basis, c)
    }

    pub fn from_dual_coordinates(&self, c: &[u32]) -> FieldElement {
        self.combine(&self.dual, c)
    }

    fn combine(&self, basis: &[FieldElement], c: &[u32]) -> FieldElement {
        basis.iter().zip(c).fold(self.zero(), |acc, (b, &k)| self.add(&acc, &self.mul(&self.scalar(k as i64), b)))
    }

    /// `chi_{p^n}(f) = chi_p(Tr f)`.
    pub fn character(&self, f: &FieldElement) -> UnitPhase {
        UnitPhase::new(self.trace(f) as i64, self.p)
    }

    /// `(p, q) -> (p_1..p_n, q^1..q^n)`: momentum in the dual basis,
    /// position in the primal one.
    pub fn iota(&self, p: &FieldElement, q: &FieldElement) -> PhaseVector {
        let pc: Vec<i64> = self.dual_coordinates(p).into_iter().map(i64::from).collect();
        let qc: Vec<i64> = self.coordinates(q).into_iter().map(i64::from).collect();
        PhaseVector::new(self.p, &pc, &qc)
    }

    pub fn iota_inverse(&self, v: &PhaseVector) -> (FieldElement, FieldElement) {
        (self.from_dual_coordinates(v.p()), self.from_coordinates(v.q()))
    }

    /// Hilbert-space index of `|q>` under `|q> -> (x)_i |q^i>`.
    pub fn state_index(&self, q: &FieldElement) -> usize {
        self.coordinates(q).iter().fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    /// `[u, v] = u_p v_q - u_q v_p` in the field.
    pub fn symplectic(&self, u: &(FieldElement, FieldElement), v: &(FieldElement, FieldElement)) -> FieldElement {
        self.sub(&self.mul(&u.0, &v.1), &self.mul(&u.1, &v.0))
    }

    /// `w(p, q)|y> = chi(2^{-1} p q + p y)|y + q>` with field characters.
    pub fn field_weyl(&self, p: &FieldElement, q: &FieldElement) -> MonomialOperator {
        let m = self.tensor_modulus();
        let half = self.scalar(m.half() as i64);
        let base = self.mul(&half, &self.mul(p, q));
        let mut perm = vec![0; m.dim()];
        let mut phase = vec![0; m.dim()];
        for y in self.elements() {
            let src = self.state_index(&y);
            perm[src] = self.state_index(&self.add(&y, q));
            phase[src] = self.trace(&self.add(&base, &self.mul(p, &y)));
        }
        MonomialOperator::from_parts(m, perm, phase)
    }

    /// `|y> -> |-y>`.
    pub fn field_parity(&self) -> MonomialOperator {
        let m = self.tensor_modulus();
        let mut perm = vec![0; m.dim()];
        for y in self.elements() {
            perm[self.state_index(&y)] = self.state_index(&self.neg(&y));
        }
        MonomialOperator::from_parts(m, perm, vec![0; m.dim()])
    }

    /// `A(p, q) = w(2p, 2q) A(0)`.
    pub fn field_phase_point(&self, p: &FieldElement, q: &FieldElement) -> MonomialOperator {
        let two = self.scalar(2);
        self.field_weyl(&self.mul(&two, p), &self.mul(&two, q)).compose(&self.field_parity())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub p: u32,
    pub n: usize,
    pub polynomial: Vec<u32>,
    pub labels: usize,
    pub weyl_matches: usize,
    pub phase_point_matches: usize,
    pub character_factorizes: bool,
}

impl FactorizationReport {
    pub fn exact(&self) -> bool {
        self.weyl_matches == self.labels && self.phase_point_matches == self.labels && self.character_factorizes
    }
}

/// Default field for `(p, n)`.
pub fn verify_factorization(p: u64, n: usize) -> Result<FactorizationReport> {
    verify_factorization_in(&GaloisField::new(p, n, None)?)
}

/// Compares field Weyl and phase-point operators with the tensor ones at
/// `iota(p, q)`, exactly, for every label.
pub fn verify_factorization_in(field: &GaloisField) -> Result<FactorizationReport> {
    let m = field.tensor_modulus();
    let elems = field.elements();
    let mut weyl_matches = 0;
    let mut phase_point_matches = 0;
    let mut character_factorizes = true;
    for p in &elems {
        for q in &elems {
            let v = field.iota(p, q);
            if field.field_weyl(p, q) == weyl(m, &v) {
                weyl_matches += 1;
            }
            if field.field_phase_point(p, q) == phase_point_operator(m, &v).operator {
                phase_point_matches += 1;
            }
            let lhs = field.trace(&field.mul(p, q));
            let rhs = v.p().iter().zip(v.q()).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % field.p() as u64;
            character_factorizes &= lhs as u64 == rhs;
        }
    }
    Ok(FactorizationReport {
        p: field.p(),
        n: field.degree(),
        polynomial: field.polynomial(),
        labels: elems.len() * elems.len(),
        weyl_matches,
        phase_point_matches,
        character_factorizes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub p: u32,
    pub n: usize,
    /// Lines of `F_{p^n}^2`.
    pub field_lines: usize,
    pub field_states: usize,
    /// Maximal isotropic subspaces of `Z_p^{2n}`.
    pub module_subspaces: usize,
    pub module_states: usize,
    /// Every line maps to a maximal isotropic subspace.
    pub images_maximal_isotropic: bool,
    /// Field and tensor stabilizer projectors agree exactly.
    pub states_coincide: bool,
    /// Subspaces whose preimage is closed under field scalars.
    pub field_closed_subspaces: usize,
    /// Generators of a subspace whose preimage is not field-closed.
    pub witness: Option<Vec<Vec<u32>>>,
    /// `module_states / field_states` as `(numerator, denominator)`.
    pub ratio: (u64, u64),
    /// Agrees with the counting formula.
    pub ratio_matches_formula: bool,
    /// At least `p^{(n^2 - n)/2}`.
    pub ratio_bound_holds: bool,
}

impl GapReport {
    pub fn has_gap(&self) -> bool {
        self.module_states > self.field_states
    }
}

pub fn field_vs_module_stabilizer_gap(p: u64, n: usize) -> Result<GapReport> {
    field_vs_module_stabilizer_gap_in(&GaloisField::new(p, n, None)?)
}

/// Lines of `F^2` (all isotropic) against maximal isotropic subspaces of
/// `Z_p^{2n}`, with stabilizer states compared exactly.
pub fn field_vs_module_stabilizer_gap_in(field: &GaloisField) -> Result<GapReport> {
    let order = field.order() as u64;
    if order > GAP_BUDGET {
        return Err(Error::BudgetExceeded { size: order, limit: GAP_BUDGET });
    }
    let m = field.tensor_modulus();
    let (p, n) = (field.p(), field.degree());
    let elems = field.elements();
    let one = field.scalar(1);
    let mut directions: Vec<(FieldElement, FieldElement)> = elems.iter().map(|l| (one.clone(), l.clone())).collect();
    directions.push((field.zero(), one.clone()));

    let mut images_maximal_isotropic = true;
    let mut states_coincide = true;
    let weight = Rational64::new(1, elems.len() as i64);
    for dir in &directions {
        let line: Vec<(FieldElement, FieldElement)> =
            elems.iter().map(|l| (field.mul(l, &dir.0), field.mul(l, &dir.1))).collect();
        let image: Vec<RingVector> = line.iter().map(|(a, b)| field.iota(a, b).as_ring_vector().clone()).collect();
        let sub = Submodule::closure(p, 2 * n, &image);
        images_maximal_isotropic &= sub.len() == line.len() && sub.is_maximal_isotropic();
        // offsets along a complementary line hit every coset once
        let comp = if dir.0.is_zero() { (one.clone(), field.zero()) } else { (field.zero(), one.clone()) };
        for l in &elems {
            let v = (field.mul(l, &comp.0), field.mul(l, &comp.1));
            let mut proj = ExactOperator::zeros(m);
            for u in &line {
                let t = field.trace(&field.symplectic(&v, u)) as i64;
                proj = proj.add(&field.field_weyl(&u.0, &u.1).times_phase(t).to_exact());
            }
            let proj = proj.scale(weight);
            let tensor = stabilizer_projector_exact(&sub, &field.iota(&v.0, &v.1))?;
            states_coincide &= proj.exact_eq(&tensor);
        }
    }

    let subspaces = enumerate_maximal_isotropic(m)?;
    let t = if n > 1 { field.monomial(1) } else { one.clone() };
    let closed = |s: &Submodule| {
        s.elements().all(|e| {
            let (a, b) = field.iota_inverse(&PhaseVector::from_ring_vector(e));
            s.contains(field.iota(&field.mul(&t, &a), &field.mul(&t, &b)).as_ring_vector())
        })
    };
    let field_closed_subspaces = subspaces.iter().filter(|s| closed(s)).count();
    let witness = if n == 2 {
        let bell = Submodule::closure(p, 4, &[RingVector::new(p, &[0, 0, 1, 1]), RingVector::new(p, &[1, -1, 0, 0])]);
        if closed(&bell) {
            subspaces.iter().find(|s| !closed(s)).map(|s| s.generators().to_vec())
        } else {
            Some(bell.generators().to_vec())
        }
    } else {
        subspaces.iter().find(|s| !closed(s)).map(|s| s.generators().to_vec())
    }
    .map(|g| g.iter().map(|v| v.coords().to_vec()).collect());

    let field_states = directions.len() * elems.len();
    let module_states = subspaces.len() * elems.len();
    let g = num_integer::gcd(module_states as u64, field_states as u64);
    let ratio = (module_states as u64 / g, field_states as u64 / g);
    let (formula, bound) = multiparticle_ratio(n as u32, p as u64)?;
    let ratio_matches_formula = formula == num_rational::BigRational::new(ratio.0.into(), ratio.1.into());
    Ok(GapReport {
        p,
        n,
        field_lines: directions.len(),
        field_states,
        module_subspaces: subspaces.len(),
        module_states,
        images_maximal_isotropic,
        states_coincide,
        field_closed_subspaces,
        witness,
        ratio,
        ratio_matches_formula,
        ratio_bound_holds: bound,
    })
}
