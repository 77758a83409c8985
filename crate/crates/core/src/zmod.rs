//! Arithmetic in `Z_d` for odd `d`, symbolic `d`-th roots of unity and
//! element orders.
//!
//! Vectors over `Z_d` are indexed lexicographically with the last coordinate
//! varying fastest, so the index of `(x_1, ..., x_k)` is `sum x_i d^(k-i)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduces a signed integer into `[0, d)`.
#[inline]
pub fn reduce(x: i64, d: u32) -> u32 {
    x.rem_euclid(d as i64) as u32
}

/// Multiplicative inverse of `a` modulo `d`, if it exists.
pub fn inv_mod(a: u32, d: u32) -> Option<u32> {
    let g = (a as i64).extended_gcd(&(d as i64));
    if g.gcd != 1 {
        return None;
    }
    Some(reduce(g.x, d))
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut k = 3;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= m {
        if m % k == 0 {
            let mut e = 0;
            while m % k == 0 {
                m /= k;
                e += 1;
            }
            out.push((k, e));
        }
        k += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Returns `(p, k)` when `m = p^k` for a prime `p`.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    match factorize(m).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Validated pair of local dimension `d` (odd, at least 3) and particle
/// count `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawModulus")]
pub struct Modulus {
    d: u32,
    n: usize,
}

#[derive(Deserialize)]
struct RawModulus {
    d: u64,
    n: usize,
}

impl TryFrom<RawModulus> for Modulus {
    type Error = Error;
    fn try_from(raw: RawModulus) -> Result<Self> {
        Modulus::new(raw.d, raw.n)
    }
}

impl Modulus {
    pub fn new(d: u64, n: usize) -> Result<Self> {
        if d < 3 || d % 2 == 0 || d > u32::MAX as u64 {
            return Err(Error::UnsupportedModulus(d));
        }
        if n == 0 {
            return Err(Error::ZeroParticles);
        }
        Ok(Modulus { d: d as u32, n })
    }

    #[inline]
    pub fn d(&self) -> u32 {
        self.d
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `2^{-1} = (d+1)/2`.
    #[inline]
    pub fn half(&self) -> u32 {
        (self.d + 1) / 2
    }

    /// Hilbert-space dimension `d^n`.
    pub fn dim(&self) -> usize {
        (self.d as usize).pow(self.n as u32)
    }

    /// Number of phase-space points `d^{2n}`.
    pub fn phase_points(&self) -> usize {
        self.dim() * self.dim()
    }

    pub fn element(&self, value: i64) -> RingElement {
        RingElement::new(value, self.d)
    }

    pub fn chi(&self, k: i64) -> UnitPhase {
        UnitPhase::new(k, self.d)
    }
}

/// A residue modulo `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    value: u32,
    modulus: u32,
}

impl RingElement {
    pub fn new(value: i64, modulus: u32) -> Self {
        RingElement { value: reduce(value, modulus), modulus }
    }

    #[inline]
    pub fn value(&self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        RingElement::new(self.value as i64 + rhs.value as i64, self.modulus)
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        RingElement::new(self.value as i64 - rhs.value as i64, self.modulus)
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        RingElement::new(self.value as i64 * rhs.value as i64, self.modulus)
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> Self {
        RingElement::new(-(self.value as i64), self.modulus)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Multiplicative inverse in `Z_d`.
pub fn inv(a: RingElement) -> Result<RingElement> {
    inv_mod(a.value, a.modulus)
        .map(|b| RingElement { value: b, modulus: a.modulus })
        .ok_or(Error::NotInvertible(a.value, a.modulus))
}

/// The symbolic phase `exp(2 pi i k / d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnitPhase {
    k: u32,
    d: u32,
}

impl UnitPhase {
    pub fn new(k: i64, d: u32) -> Self {
        UnitPhase { k: reduce(k, d), d }
    }

    pub fn one(d: u32) -> Self {
        UnitPhase { k: 0, d }
    }

    #[inline]
    pub fn numerator(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn denominator(&self) -> u32 {
        self.d
    }

    pub fn conj(&self) -> Self {
        UnitPhase::new(-(self.k as i64), self.d)
    }

    pub fn pow(&self, e: i64) -> Self {
        UnitPhase::new((self.k as i64) * e, self.d)
    }

    pub fn to_complex(&self) -> Complex64 {
        root_of_unity(self.k as i64, self.d)
    }
}

impl Mul for UnitPhase {
    type Output = UnitPhase;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.d, rhs.d);
        UnitPhase::new(self.k as i64 + rhs.k as i64, self.d)
    }
}

/// `chi(k) = exp(2 pi i k / d)` as a symbolic phase.
pub fn chi(k: RingElement) -> UnitPhase {
    UnitPhase { k: k.value, d: k.modulus }
}

/// Floating value of `exp(2 pi i k / d)`.
#[inline]
pub fn root_of_unity(k: i64, d: u32) -> Complex64 {
    let k = reduce(k, d);
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let theta = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64);
    Complex64::new(theta.cos(), theta.sin())
}

/// A tuple of residues modulo `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingVector {
    d: u32,
    coords: Vec<u32>,
}

impl RingVector {
    pub fn new(d: u32, coords: &[i64]) -> Self {
        RingVector { d, coords: coords.iter().map(|&c| reduce(c, d)).collect() }
    }

    pub fn from_residues(d: u32, coords: Vec<u32>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < d));
        RingVector { d, coords }
    }

    pub fn zero(d: u32, len: usize) -> Self {
        RingVector { d, coords: vec![0; len] }
    }

    pub fn unit(d: u32, len: usize, i: usize) -> Self {
        let mut v = Self::zero(d, len);
        v.coords[i] = 1;
        v
    }

    /// Decodes a lexicographic index.
    pub fn from_index(d: u32, len: usize, mut index: usize) -> Self {
        let mut coords = vec![0u32; len];
        for c in coords.iter_mut().rev() {
            *c = (index % d as usize) as u32;
            index /= d as usize;
        }
        RingVector { d, coords }
    }

    pub fn index(&self) -> usize {
        self.coords.iter().fold(0usize, |acc, &c| acc * self.d as usize + c as usize)
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.d
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = reduce(k, self.d) as u64;
        RingVector {
            d: self.d,
            coords: self.coords.iter().map(|&c| ((c as u64 * k) % self.d as u64) as u32).collect(),
        }
    }

    pub fn dot(&self, other: &RingVector) -> u32 {
        debug_assert_eq!(self.len(), other.len());
        let s: u64 = self.coords.iter().zip(&other.coords).map(|(&a, &b)| a as u64 * b as u64).sum();
        (s % self.d as u64) as u32
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &RingVector) -> RingVector {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        RingVector { d: self.d, coords }
    }
}

impl Add for &RingVector {
    type Output = RingVector;
    fn add(self, rhs: Self) -> RingVector {
        debug_assert_eq!(self.len(), rhs.len());
        RingVector {
            d: self.d,
            coords: self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| (a + b) % self.d).collect(),
        }
    }
}

impl Sub for &RingVector {
    type Output = RingVector;
    fn sub(self, rhs: Self) -> RingVector {
        debug_assert_eq!(self.len(), rhs.len());
        RingVector {
            d: self.d,
            coords: self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| (a + self.d - b) % self.d).collect(),
        }
    }
}

impl Neg for &RingVector {
    type Output = RingVector;
    fn neg(self) -> RingVector {
        RingVector { d: self.d, coords: self.coords.iter().map(|&a| (self.d - a) % self.d).collect() }
    }
}

impl fmt::Display for RingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Least `l >= 1` with `l * x = 0`, i.e. `d / gcd(x_1, ..., x_k, d)`.
pub fn element_order(d: u32, components: &[u32]) -> u32 {
    let g = components.iter().fold(d, |g, &c| g.gcd(&c));
    d / g
}

/// Calls `f` with every index in `0..d^len` decoded as a coordinate slice.
pub fn for_each_vector(d: u32, len: usize, mut f: impl FnMut(usize, &[u32])) {
    let mut coords = vec![0u32; len];
    let total = (d as usize).pow(len as u32);
    for index in 0..total {
        f(index, &coords);
        for c in coords.iter_mut().rev() {
            *c += 1;
            if *c < d {
                break;
            }
            *c = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_two() {
        for d in [3u32, 5, 7, 9, 15, 255] {
            let m = Modulus::new(d as u64, 1).unwrap();
            assert_eq!(inv(m.element(2)).unwrap().value(), (d + 1) / 2);
            assert_eq!(m.half(), (d + 1) / 2);
        }
        let three = RingElement::new(3, 9);
        assert_eq!(inv(three), Err(Error::NotInvertible(3, 9)));
    }

    #[test]
    fn inverses_exhaustive() {
        for d in [3u32, 5, 7, 9, 15] {
            for a in 0..d {
                let e = RingElement::new(a as i64, d);
                match inv(e) {
                    Ok(b) => assert_eq!((e * b).value(), 1),
                    Err(_) => assert_ne!(a.gcd(&d), 1),
                }
            }
        }
    }

    #[test]
    fn rejects_even_and_trivial_moduli() {
        assert_eq!(Modulus::new(2, 1), Err(Error::UnsupportedModulus(2)));
        assert_eq!(Modulus::new(1, 1), Err(Error::UnsupportedModulus(1)));
        assert_eq!(Modulus::new(8, 1), Err(Error::UnsupportedModulus(8)));
        assert_eq!(Modulus::new(3, 0), Err(Error::ZeroParticles));
    }

    #[test]
    fn chi_values() {
        let one = chi(RingElement::new(0, 3)).to_complex();
        assert_eq!(one, Complex64::new(1.0, 0.0));
        let w = chi(RingElement::new(1, 3));
        assert_eq!(w.pow(3), UnitPhase::one(3));
        let z = w.to_complex();
        let expected = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((z - expected).norm() < 1e-15);
        assert!((z.re + 0.5).abs() < 1e-15 && (z.im - 0.866_025_403_784_438_6).abs() < 1e-15);
    }

    #[test]
    fn orders() {
        assert_eq!(element_order(9, &[3]), 3);
        assert_eq!(element_order(5, &[0]), 1);
        // brute force for (3, 6) in Z_9^2
        let v = RingVector::new(9, &[3, 6]);
        let brute = (1..=9).find(|&l| v.scale(l).is_zero()).unwrap();
        assert_eq!(element_order(9, v.coords()), brute as u32);
        assert_eq!(brute, 3);
    }

    #[test]
    fn index_roundtrip_and_enumeration_order() {
        let mut seen = Vec::new();
        for_each_vector(3, 2, |i, c| {
            let v = RingVector::from_residues(3, c.to_vec());
            assert_eq!(v.index(), i);
            assert_eq!(RingVector::from_index(3, 2, i), v);
            seen.push(v);
        });
        assert_eq!(seen[1].coords(), &[0, 1]);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(45), vec![(3, 2), (5, 1)]);
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(15), None);
        assert!(is_odd_prime(7) && !is_odd_prime(9) && !is_odd_prime(2));
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn character_is_additive(d in prop::sample::select(vec![3u32, 5, 7, 9, 15]), a in 0i64..1000, b in 0i64..1000) {
            let pa = chi(RingElement::new(a, d));
            let pb = chi(RingElement::new(b, d));
            prop_assert_eq!(pa * pb, chi(RingElement::new(a + b, d)));
        }
    }
}
