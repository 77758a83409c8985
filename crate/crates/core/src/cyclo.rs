//! Exact arithmetic in the cyclotomic field `Q(omega)`, `omega = exp(2 pi i / d)`.
//!
//! Elements are stored as coefficient vectors over `1, omega, ..., omega^{d-1}`,
//! i.e. in `Q[x]/(x^d - 1)`. The representation is not unique; equality and
//! rationality tests reduce modulo the cyclotomic polynomial `Phi_d`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::zmod::{reduce, root_of_unity};

/// Integer coefficients of `Phi_d`, lowest degree first.
pub fn cyclotomic_polynomial(d: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    // x^d - 1 divided by Phi_e for every proper divisor e of d.
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in 1..d {
        if d % e == 0 {
            num = divide_monic(&num, &cyclotomic_polynomial(e));
        }
    }
    cache.lock().unwrap().insert(d, num.clone());
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// An element of `Q(omega_d)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    coeffs: Vec<Rational64>,
}

impl Cyclotomic {
    pub fn zero(d: u32) -> Self {
        Cyclotomic { coeffs: vec![Rational64::zero(); d as usize] }
    }

    pub fn one(d: u32) -> Self {
        Self::root(d, 0)
    }

    /// `omega^k`.
    pub fn root(d: u32, k: i64) -> Self {
        let mut c = Self::zero(d);
        c.coeffs[reduce(k, d) as usize] = Rational64::one();
        c
    }

    pub fn rational(d: u32, r: Rational64) -> Self {
        let mut c = Self::zero(d);
        c.coeffs[0] = r;
        c
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn raw_coeffs(&self) -> &[Rational64] {
        &self.coeffs
    }

    /// Adds `r * omega^k` in place.
    #[inline]
    pub fn add_root(&mut self, k: i64, r: Rational64) {
        let d = self.order();
        self.coeffs[reduce(k, d) as usize] += r;
    }

    /// Multiplication by `omega^k` (a cyclic shift).
    pub fn mul_root(&self, k: i64) -> Self {
        let d = self.order();
        let s = reduce(k, d) as usize;
        let mut out = Self::zero(d);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(i + s) % d as usize] = *c;
        }
        out
    }

    pub fn scale(&self, r: Rational64) -> Self {
        Cyclotomic { coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Complex conjugation, `omega^k -> omega^{-k}`.
    pub fn conj(&self) -> Self {
        let d = self.order() as usize;
        let mut out = Self::zero(d as u32);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(d - i) % d] = *c;
        }
        out
    }

    /// Canonical coordinates: the remainder modulo `Phi_d`, of length `phi(d)`.
    pub fn canonical(&self) -> Vec<Rational64> {
        let phi = cyclotomic_polynomial(self.order());
        let deg = phi.len() - 1;
        let mut rem = self.coeffs.clone();
        for i in (deg..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            for (j, &b) in phi.iter().enumerate() {
                rem[i - deg + j] -= c * Rational64::from_integer(b);
            }
        }
        rem.truncate(deg);
        rem
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational64> {
        let c = self.canonical();
        if c.iter().skip(1).all(Zero::is_zero) {
            Some(c.first().copied().unwrap_or_else(Rational64::zero))
        } else {
            None
        }
    }

    /// Exponent `k` when the element equals `omega^k` exactly.
    pub fn as_root(&self) -> Option<u32> {
        let d = self.order();
        (0..d).find(|&k| (self - &Cyclotomic::root(d, k as i64)).is_zero())
    }

    pub fn exact_eq(&self, other: &Cyclotomic) -> bool {
        (self - other).is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        let d = self.order();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| root_of_unity(k as i64, d) * (*c.numer() as f64 / *c.denom() as f64))
            .sum()
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c}*w^{k}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Cyclotomic {
        Cyclotomic { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Cyclotomic {
        Cyclotomic { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Cyclotomic {
        let d = self.coeffs.len();
        let mut out = Cyclotomic::zero(d as u32);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[(i + j) % d] += a * b;
                }
            }
        }
        out
    }
}
