//! Symplectic geometry of the phase space `V = Z_d^{2n}`.
//!
//! Phase-space vectors are stored as `(p_1, ..., p_n, q_1, ..., q_n)`, so the
//! symplectic form is `[u, v] = u_p . v_q - u_q . v_p`. Submodules are stored
//! as generators plus the full sorted set of element indices; for composite
//! `d` they need not be free.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zmod::{element_order, factorize, for_each_vector, inv_mod, reduce, Modulus, RingElement, RingVector, UnitPhase};

/// Largest ambient space `d^{2n}` the exhaustive enumerators accept.
pub const ENUMERATION_BUDGET: u64 = 6561;

/// A point `(p, q)` of phase space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PhaseVector(RingVector);

impl PhaseVector {
    pub fn new(d: u32, p: &[i64], q: &[i64]) -> Self {
        assert_eq!(p.len(), q.len(), "momentum and position blocks differ in length");
        let coords: Vec<i64> = p.iter().chain(q).copied().collect();
        PhaseVector(RingVector::new(d, &coords))
    }

    pub fn from_ring_vector(v: RingVector) -> Self {
        assert!(v.len() % 2 == 0, "phase-space vectors have even length");
        PhaseVector(v)
    }

    pub fn zero(m: Modulus) -> Self {
        PhaseVector(RingVector::zero(m.d(), 2 * m.n()))
    }

    pub fn from_index(m: Modulus, index: usize) -> Self {
        PhaseVector(RingVector::from_index(m.d(), 2 * m.n(), index))
    }

    pub fn index(&self) -> usize {
        self.0.index()
    }

    pub fn n(&self) -> usize {
        self.0.len() / 2
    }

    pub fn modulus(&self) -> u32 {
        self.0.modulus()
    }

    pub fn p(&self) -> &[u32] {
        &self.0.coords()[..self.n()]
    }

    pub fn q(&self) -> &[u32] {
        &self.0.coords()[self.n()..]
    }

    pub fn coords(&self) -> &[u32] {
        self.0.coords()
    }

    pub fn as_ring_vector(&self) -> &RingVector {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, k: i64) -> Self {
        PhaseVector(self.0.scale(k))
    }

    pub fn add(&self, other: &PhaseVector) -> Self {
        PhaseVector(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &PhaseVector) -> Self {
        PhaseVector(&self.0 - &other.0)
    }

    pub fn neg(&self) -> Self {
        PhaseVector(-&self.0)
    }

    pub fn order(&self) -> u32 {
        element_order(self.modulus(), self.coords())
    }
}

impl fmt::Display for PhaseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `[a, b]` on raw coordinate slices of length `2n`.
#[inline]
pub fn symp(d: u32, a: &[u32], b: &[u32]) -> u32 {
    let n = a.len() / 2;
    let mut s: i64 = 0;
    for i in 0..n {
        s += a[i] as i64 * b[n + i] as i64 - a[n + i] as i64 * b[i] as i64;
    }
    reduce(s, d)
}

#[inline]
fn dot(d: u32, a: &[u32], b: &[u32]) -> u32 {
    let s: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
    (s % d as u64) as u32
}

/// The standard symplectic inner product `u^T J v`.
pub fn symplectic_form(u: &PhaseVector, v: &PhaseVector) -> Result<RingElement> {
    if u.coords().len() != v.coords().len() {
        return Err(Error::DimensionMismatch { expected: u.coords().len(), found: v.coords().len() });
    }
    if u.modulus() != v.modulus() {
        return Err(Error::ModulusMismatch(u.modulus(), v.modulus()));
    }
    Ok(RingElement::new(symp(u.modulus(), u.coords(), v.coords()) as i64, u.modulus()))
}

/// Which bilinear form a complement or character refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    /// `[u, v]` on `Z_d^{2n}`.
    Symplectic,
    /// `u . v` on `Z_d^k`.
    Orthogonal,
}

impl FormKind {
    #[inline]
    pub fn eval(self, d: u32, a: &[u32], b: &[u32]) -> u32 {
        match self {
            FormKind::Symplectic => symp(d, a, b),
            FormKind::Orthogonal => dot(d, a, b),
        }
    }
}

/// A subset of `Z_d^k` closed under addition and scalar multiplication.
/// Equality compares element sets, not generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Submodule {
    d: u32,
    dim: usize,
    generators: Vec<RingVector>,
    elements: Vec<usize>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.dim == other.dim && self.elements == other.elements
    }
}

impl Eq for Submodule {}

impl std::hash::Hash for Submodule {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.d, self.dim, &self.elements).hash(state);
    }
}

impl Submodule {
    /// Smallest submodule containing `generators`, by worklist saturation.
    pub fn closure(d: u32, dim: usize, generators: &[RingVector]) -> Self {
        let gens: Vec<Vec<u32>> = generators
            .iter()
            .map(|g| {
                assert_eq!(g.len(), dim, "generator length differs from ambient dimension");
                g.coords().to_vec()
            })
            .filter(|g| g.iter().any(|&c| c != 0))
            .collect();
        let elements = saturate(d, dim, &gens);
        Submodule { d, dim, generators: generators.to_vec(), elements }
    }

    /// The trivial submodule `{0}`.
    pub fn trivial(d: u32, dim: usize) -> Self {
        Submodule { d, dim, generators: Vec::new(), elements: vec![0] }
    }

    /// The whole ambient space.
    pub fn full(d: u32, dim: usize) -> Self {
        let gens: Vec<RingVector> = (0..dim).map(|i| RingVector::unit(d, dim, i)).collect();
        let total = (d as usize).pow(dim as u32);
        Submodule { d, dim, generators: gens, elements: (0..total).collect() }
    }

    /// Builds a submodule from a sorted element set already known to be
    /// closed, extracting a generating set greedily.
    fn from_closed_elements(d: u32, dim: usize, elements: Vec<usize>) -> Self {
        let mut gens: Vec<Vec<u32>> = Vec::new();
        let mut current: HashSet<usize> = HashSet::from([0]);
        for &e in &elements {
            if !current.contains(&e) {
                gens.push(RingVector::from_index(d, dim, e).coords().to_vec());
                current = saturate(d, dim, &gens).into_iter().collect();
            }
        }
        debug_assert_eq!(current.len(), elements.len());
        let generators = gens.into_iter().map(|g| RingVector::from_residues(d, g)).collect();
        Submodule { d, dim, generators, elements }
    }

    /// Same element set with a greedily extracted generating set.
    pub fn reduced(&self) -> Submodule {
        Submodule::from_closed_elements(self.d, self.dim, self.elements.clone())
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_size(&self) -> usize {
        (self.d as usize).pow(self.dim as u32)
    }

    pub fn generators(&self) -> &[RingVector] {
        &self.generators
    }

    /// Sorted lexicographic indices of the elements.
    pub fn element_indices(&self) -> &[usize] {
        &self.elements
    }

    pub fn elements(&self) -> impl Iterator<Item = RingVector> + '_ {
        self.elements.iter().map(move |&i| RingVector::from_index(self.d, self.dim, i))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.elements.binary_search(&index).is_ok()
    }

    pub fn contains(&self, v: &RingVector) -> bool {
        v.len() == self.dim && self.contains_index(v.index())
    }

    /// Position of an element in the sorted element list.
    pub fn position(&self, v: &RingVector) -> Option<usize> {
        self.elements.binary_search(&v.index()).ok()
    }

    fn generator_coords(&self) -> Vec<Vec<u32>> {
        self.generators.iter().map(|g| g.coords().to_vec()).collect()
    }

    /// True when the symplectic form vanishes on all pairs.
    pub fn is_isotropic(&self) -> bool {
        assert!(self.dim % 2 == 0, "isotropy needs a phase space of even dimension");
        let gens = self.generator_coords();
        gens.iter().all(|a| gens.iter().all(|b| symp(self.d, a, b) == 0))
    }

    /// Isotropic with `|M| = d^n`.
    pub fn is_maximal_isotropic(&self) -> bool {
        self.is_isotropic() && self.len() == (self.d as usize).pow((self.dim / 2) as u32)
    }

    /// `{v : form(v, m) = 0 for all m in M}`.
    pub fn complement(&self, kind: FormKind) -> Submodule {
        let gens = self.generator_coords();
        let mut elements = Vec::new();
        for_each_vector(self.d, self.dim, |i, v| {
            if gens.iter().all(|g| kind.eval(self.d, v, g) == 0) {
                elements.push(i);
            }
        });
        Submodule::from_closed_elements(self.d, self.dim, elements)
    }

    /// Translates every element by `v`.
    pub fn translate(&self, v: &RingVector) -> Vec<RingVector> {
        self.elements().map(|m| &m + v).collect()
    }

    /// Lexicographically least element of the coset `v + M`.
    pub fn coset_representative(&self, v: &RingVector) -> RingVector {
        self.elements().map(|m| &m + v).min().expect("submodules contain 0")
    }
}

/// Additive closure of `gens` inside `Z_d^dim`; scalar multiples are repeated sums.
fn saturate(d: u32, dim: usize, gens: &[Vec<u32>]) -> Vec<usize> {
    let mut seen: HashSet<usize> = HashSet::from([0]);
    let mut queue: VecDeque<Vec<u32>> = VecDeque::from([vec![0u32; dim]]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<u32> = x.iter().zip(g).map(|(&a, &b)| (a + b) % d).collect();
            let idx = y.iter().fold(0usize, |acc, &c| acc * d as usize + c as usize);
            if seen.insert(idx) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<usize> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// An affine set `M + v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSet {
    pub base: RingVector,
    pub direction: Submodule,
}

impl AffineSet {
    pub fn points(&self) -> BTreeSet<RingVector> {
        self.direction.translate(&self.base).into_iter().collect()
    }

    pub fn contains(&self, v: &RingVector) -> bool {
        self.direction.contains(&(v - &self.base))
    }
}

/// True iff the midpoint `2^{-1}(a + b)` of any two members is a member.
pub fn is_balanced(set: &[RingVector]) -> bool {
    let Some(first) = set.first() else { return true };
    let d = first.modulus();
    let half = ((d + 1) / 2) as i64;
    let members: HashSet<&RingVector> = set.iter().collect();
    set.iter().all(|a| set.iter().all(|b| members.contains(&(a + b).scale(half))))
}

/// Smallest affine set containing `set`.
pub fn affine_hull(set: &[RingVector]) -> Option<AffineSet> {
    let base = set.iter().min()?.clone();
    let diffs: Vec<RingVector> = set.iter().map(|s| s - &base).collect();
    let direction = Submodule::closure(base.modulus(), base.len(), &diffs);
    Some(AffineSet { base, direction })
}

/// True when `set` equals its affine hull.
pub fn is_affine(set: &[RingVector]) -> bool {
    let Some(hull) = affine_hull(set) else { return true };
    let distinct: BTreeSet<&RingVector> = set.iter().collect();
    hull.direction.len() == distinct.len()
}

/// The character `s -> chi(form(x, s))` of a submodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupCharacter {
    pub representative: RingVector,
    pub kind: FormKind,
}

impl SubgroupCharacter {
    pub fn evaluate(&self, s: &RingVector) -> UnitPhase {
        let d = self.representative.modulus();
        UnitPhase::new(self.kind.eval(d, self.representative.coords(), s.coords()) as i64, d)
    }
}

/// The `|M|` distinct characters of `M`, one per coset of the complement,
/// each represented by the lexicographically least coset member.
pub fn characters_of(m: &Submodule, kind: FormKind) -> Vec<SubgroupCharacter> {
    let perp = m.complement(kind);
    let mut reps: BTreeSet<RingVector> = BTreeSet::new();
    let mut covered: HashSet<usize> = HashSet::new();
    for_each_vector(m.d, m.dim, |i, _| {
        if covered.contains(&i) {
            return;
        }
        let x = RingVector::from_index(m.d, m.dim, i);
        for y in perp.translate(&x) {
            covered.insert(y.index());
        }
        reps.insert(x);
    });
    reps.into_iter().map(|representative| SubgroupCharacter { representative, kind }).collect()
}

/// `f_hat(zeta) = |M|^{-1/2} sum_s zeta(s) f(s)`, with `f` listed in the order
/// of `m.elements()` and the output in the order of `characters_of`.
pub fn fourier_on_submodule(f: &[Complex64], m: &Submodule, kind: FormKind) -> Result<Vec<(SubgroupCharacter, Complex64)>> {
    if f.len() != m.len() {
        return Err(Error::DomainMismatch);
    }
    let norm = (m.len() as f64).sqrt().recip();
    let elems: Vec<RingVector> = m.elements().collect();
    Ok(characters_of(m, kind)
        .into_iter()
        .map(|zeta| {
            let s: Complex64 = elems.iter().zip(f).map(|(e, &fv)| zeta.evaluate(e).to_complex() * fv).sum();
            (zeta, s * norm)
        })
        .collect())
}

/// Every isotropic submodule of `Z_d^{2n}`, sorted by element set.
pub fn enumerate_isotropic(m: Modulus) -> Result<Vec<Submodule>> {
    let size = (m.d() as u64).pow(2 * m.n() as u32);
    if size > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded { size, limit: ENUMERATION_BUDGET });
    }
    let (d, dim) = (m.d(), 2 * m.n());
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([Submodule::trivial(d, dim)]);
    seen.insert(vec![0]);
    while let Some(cur) = queue.pop_front() {
        let gens = cur.generator_coords();
        for_each_vector(d, dim, |i, v| {
            if cur.contains_index(i) || !gens.iter().all(|g| symp(d, v, g) == 0) {
                return;
            }
            let mut g2 = gens.clone();
            g2.push(v.to_vec());
            let elements = saturate(d, dim, &g2);
            if seen.insert(elements.clone()) {
                let generators = g2.into_iter().map(|g| RingVector::from_residues(d, g)).collect();
                queue.push_back(Submodule { d, dim, generators, elements });
            }
        });
        out.push(cur);
    }
    out.sort_by(|a, b| a.elements.cmp(&b.elements));
    Ok(out)
}

/// Every maximal isotropic submodule (`|M| = d^n`), sorted by element set.
pub fn enumerate_maximal_isotropic(m: Modulus) -> Result<Vec<Submodule>> {
    let target = m.dim();
    Ok(enumerate_isotropic(m)?.into_iter().filter(|s| s.len() == target).collect())
}

/// A `2n x 2n` matrix over `Z_d` preserving the symplectic form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymplecticMatrix {
    d: u32,
    n: usize,
    /// Row-major entries.
    entries: Vec<u32>,
}

impl SymplecticMatrix {
    /// Validates `S^T J S = J`.
    pub fn new(d: u32, n: usize, entries: &[i64]) -> Result<Self> {
        let k = 2 * n;
        if entries.len() != k * k {
            return Err(Error::DimensionMismatch { expected: k * k, found: entries.len() });
        }
        let s = SymplecticMatrix { d, n, entries: entries.iter().map(|&e| reduce(e, d)).collect() };
        if !s.is_symplectic() {
            return Err(Error::NotSymplectic(d));
        }
        Ok(s)
    }

    fn unchecked(d: u32, n: usize, entries: Vec<u32>) -> Self {
        SymplecticMatrix { d, n, entries }
    }

    pub fn identity(d: u32, n: usize) -> Self {
        let k = 2 * n;
        let mut e = vec![0u32; k * k];
        for i in 0..k {
            e[i * k + i] = 1;
        }
        Self::unchecked(d, n, e)
    }

    /// `J = [[0, 1], [-1, 0]]` in block form.
    pub fn j(d: u32, n: usize) -> Self {
        let k = 2 * n;
        let mut e = vec![0u32; k * k];
        for i in 0..n {
            e[i * k + n + i] = 1;
            e[(n + i) * k + i] = d - 1;
        }
        Self::unchecked(d, n, e)
    }

    /// `-1`.
    pub fn minus_identity(d: u32, n: usize) -> Self {
        let k = 2 * n;
        let mut e = vec![0u32; k * k];
        for i in 0..k {
            e[i * k + i] = d - 1;
        }
        Self::unchecked(d, n, e)
    }

    /// Matrix with the given columns, checked for symplecticity.
    pub fn from_columns(d: u32, n: usize, columns: &[RingVector]) -> Result<Self> {
        let k = 2 * n;
        let mut e = vec![0u32; k * k];
        for (c, col) in columns.iter().enumerate() {
            for r in 0..k {
                e[r * k + c] = col.coords()[r];
            }
        }
        let s = Self::unchecked(d, n, e);
        if !s.is_symplectic() {
            return Err(Error::NotSymplectic(d));
        }
        Ok(s)
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn entry(&self, r: usize, c: usize) -> u32 {
        self.entries[r * 2 * self.n + c]
    }

    pub fn column(&self, c: usize) -> PhaseVector {
        let k = 2 * self.n;
        PhaseVector(RingVector::from_residues(self.d, (0..k).map(|r| self.entries[r * k + c]).collect()))
    }

    pub fn apply_coords(&self, v: &[u32]) -> Vec<u32> {
        let k = 2 * self.n;
        (0..k)
            .map(|r| {
                let s: u64 = (0..k).map(|c| self.entries[r * k + c] as u64 * v[c] as u64).sum();
                (s % self.d as u64) as u32
            })
            .collect()
    }

    pub fn apply(&self, v: &PhaseVector) -> PhaseVector {
        PhaseVector(RingVector::from_residues(self.d, self.apply_coords(v.coords())))
    }

    pub fn compose(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        let k = 2 * self.n;
        let mut e = vec![0u32; k * k];
        for r in 0..k {
            for c in 0..k {
                let s: u64 = (0..k).map(|t| self.entries[r * k + t] as u64 * other.entries[t * k + c] as u64).sum();
                e[r * k + c] = (s % self.d as u64) as u32;
            }
        }
        Self::unchecked(self.d, self.n, e)
    }

    pub fn transpose(&self) -> SymplecticMatrix {
        let k = 2 * self.n;
        let mut e = vec![0u32; k * k];
        for r in 0..k {
            for c in 0..k {
                e[c * k + r] = self.entries[r * k + c];
            }
        }
        Self::unchecked(self.d, self.n, e)
    }

    /// `S^{-1} = -J S^T J`.
    pub fn inverse(&self) -> SymplecticMatrix {
        let j = Self::j(self.d, self.n);
        let m = Self::minus_identity(self.d, self.n);
        m.compose(&j).compose(&self.transpose()).compose(&j)
    }

    pub fn is_symplectic(&self) -> bool {
        let j = Self::j(self.d, self.n);
        self.transpose().compose(&j).compose(self) == j
    }
}

/// Symplectic basis of `Z_q^{2n}` (q a prime power) whose first vector is
/// the unimodular `first`. Returned as columns `(e_1..e_n, f_1..f_n)`.
fn symplectic_basis_from(q: u32, n: usize, first: &[u32]) -> Vec<Vec<u32>> {
    let k = 2 * n;
    let unit = |i: usize| -> Vec<u32> {
        let mut v = vec![0u32; k];
        v[i] = 1;
        v
    };
    let scale = |v: &[u32], s: u32| -> Vec<u32> { v.iter().map(|&x| ((x as u64 * s as u64) % q as u64) as u32).collect() };
    let mut es: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut fs: Vec<Vec<u32>> = Vec::with_capacity(n);

    // hyperbolic partner for the first vector
    let e1 = first.to_vec();
    let (j, c) = (0..k)
        .find_map(|j| {
            let c = symp(q, &e1, &unit(j));
            inv_mod(c, q).map(|ci| (j, ci))
        })
        .expect("first vector must be unimodular");
    let f1 = scale(&unit(j), c);
    es.push(e1);
    fs.push(f1);

    // spanning set of the orthogonal complement, refined couple by couple
    let mut span: Vec<Vec<u32>> = (0..k).map(unit).collect();
    let project = |x: &[u32], e: &[u32], f: &[u32]| -> Vec<u32> {
        // x - [x,f] e + [x,e] f
        let a = symp(q, x, f) as u64;
        let b = symp(q, x, e) as u64;
        (0..x.len())
            .map(|i| ((x[i] as u64 + (q as u64 - a) * e[i] as u64 + b * f[i] as u64) % q as u64) as u32)
            .collect()
    };
    span = span.iter().map(|x| project(x, &es[0], &fs[0])).collect();
    for _ in 1..n {
        let (u, v, c) = span
            .iter()
            .enumerate()
            .find_map(|(i, u)| {
                span.iter().skip(i + 1).find_map(|v| inv_mod(symp(q, u, v), q).map(|c| (u.clone(), v.clone(), c)))
            })
            .expect("complement of a hyperbolic plane is non-degenerate");
        let f = scale(&v, c);
        span = span.iter().map(|x| project(x, &u, &f)).collect();
        es.push(u);
        fs.push(f);
    }
    es.into_iter().chain(fs).collect()
}

fn matrix_from_columns(q: u32, cols: &[Vec<u32>]) -> Vec<u32> {
    let k = cols.len();
    let mut e = vec![0u32; k * k];
    for (c, col) in cols.iter().enumerate() {
        for r in 0..k {
            e[r * k + c] = col[r] % q;
        }
    }
    e
}

/// A symplectic `S` with `S a = b`, built from hyperbolic couples modulo each
/// prime-power factor of `d` and glued by the Chinese remainder theorem.
pub fn find_symplectic_similarity(a: &PhaseVector, b: &PhaseVector) -> Result<SymplecticMatrix> {
    let d = a.modulus();
    let n = a.n();
    if b.modulus() != d {
        return Err(Error::ModulusMismatch(d, b.modulus()));
    }
    if b.n() != n {
        return Err(Error::DimensionMismatch { expected: 2 * n, found: 2 * b.n() });
    }
    let (oa, ob) = (a.order(), b.order());
    if oa != ob {
        return Err(Error::OrderMismatch(oa, ob));
    }
    let k = 2 * n;
    let mut total = vec![0u64; k * k];
    for (p, e) in factorize(d as u64) {
        let q = p.pow(e) as u32;
        let local = |v: &PhaseVector| -> Vec<u32> {
            let x: Vec<u32> = v.coords().iter().map(|&c| c % q).collect();
            let g = x.iter().fold(q, |g, &c| g.gcd(&c));
            // the zero vector (g = q) is fixed by the identity
            if g == q {
                return Vec::new();
            }
            x.iter().map(|&c| c / g).collect()
        };
        let (ua, ub) = (local(a), local(b));
        let s_local: Vec<u32> = if ua.is_empty() {
            SymplecticMatrix::identity(q, n).entries
        } else {
            let ba = SymplecticMatrix::unchecked(q, n, matrix_from_columns(q, &symplectic_basis_from(q, n, &ua)));
            let bb = SymplecticMatrix::unchecked(q, n, matrix_from_columns(q, &symplectic_basis_from(q, n, &ub)));
            bb.compose(&ba.inverse()).entries
        };
        // CRT idempotent: 1 mod q, 0 mod d/q
        let rest = d / q;
        let idem = (rest as u64 * inv_mod(rest % q, q).unwrap_or(1) as u64) % d as u64;
        for (t, &s) in total.iter_mut().zip(&s_local) {
            *t = (*t + idem * s as u64) % d as u64;
        }
    }
    let s = SymplecticMatrix::unchecked(d, n, total.into_iter().map(|x| x as u32).collect());
    debug_assert!(s.is_symplectic());
    debug_assert_eq!(&s.apply(a), b);
    Ok(s)
}

/// A random symplectic matrix assembled from random hyperbolic couples.
pub fn random_symplectic<R: Rng + ?Sized>(m: Modulus, rng: &mut R) -> SymplecticMatrix {
    let (d, n) = (m.d(), m.n());
    let k = 2 * n;
    let rand_vec = |rng: &mut R| -> Vec<u32> { (0..k).map(|_| rng.random_range(0..d)).collect() };
    loop {
        let mut es: Vec<Vec<u32>> = Vec::new();
        let mut fs: Vec<Vec<u32>> = Vec::new();
        let mut ok = true;
        for _ in 0..n {
            let project = |x: Vec<u32>, es: &[Vec<u32>], fs: &[Vec<u32>]| -> Vec<u32> {
                let mut y = x;
                for (e, f) in es.iter().zip(fs) {
                    let a = symp(d, &y, f) as u64;
                    let b = symp(d, &y, e) as u64;
                    y = (0..k)
                        .map(|i| ((y[i] as u64 + (d as u64 - a) * e[i] as u64 + b * f[i] as u64) % d as u64) as u32)
                        .collect();
                }
                y
            };
            let mut found = None;
            for _ in 0..64 {
                let e = project(rand_vec(rng), &es, &fs);
                let f = project(rand_vec(rng), &es, &fs);
                if let Some(c) = inv_mod(symp(d, &e, &f), d) {
                    let f: Vec<u32> = f.iter().map(|&x| ((x as u64 * c as u64) % d as u64) as u32).collect();
                    found = Some((e, f));
                    break;
                }
            }
            match found {
                Some((e, f)) => {
                    es.push(e);
                    fs.push(f);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let cols: Vec<Vec<u32>> = es.into_iter().chain(fs).collect();
            let s = SymplecticMatrix::unchecked(d, n, matrix_from_columns(d, &cols));
            debug_assert!(s.is_symplectic());
            return s;
        }
    }
}

/// All of `Sp(2, Z_d) = SL(2, Z_d)`, in lexicographic entry order.
pub fn symplectic_group_single(d: u32) -> Vec<SymplecticMatrix> {
    let mut out = Vec::new();
    for_each_vector(d, 4, |_, e| {
        let det = reduce(e[0] as i64 * e[3] as i64 - e[1] as i64 * e[2] as i64, d);
        if det == 1 {
            out.push(SymplecticMatrix::unchecked(d, 1, e.to_vec()));
        }
    });
    out
}
