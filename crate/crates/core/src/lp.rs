//! Exact feasibility of `A x = b, x >= 0` over the rationals.
//!
//! Phase one of the simplex method on `A x + s = b` (rows sign-flipped so
//! that `b >= 0`) with Bland's rule. When the artificial optimum is
//! positive the simplex multipliers give a Farkas vector `y` with
//! `y^T A >= 0` and `y^T b < 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `y` with `y^T A >= 0` componentwise and `y^T b < 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FarkasCertificate {
    pub y: Vec<BigRational>,
}

impl FarkasCertificate {
    /// Checks the certificate exactly against the original system.
    pub fn verify(&self, a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
        if self.y.len() != a.len() || b.len() != a.len() {
            return false;
        }
        let cols = a.first().map_or(0, |r| r.len());
        let yb: BigRational = self.y.iter().zip(b).map(|(y, bi)| y * bi).sum();
        yb.is_negative()
            && (0..cols).all(|j| {
                let s: BigRational = self.y.iter().zip(a).map(|(y, row)| y * &row[j]).sum();
                !s.is_negative()
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible(FarkasCertificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Decides `A x = b, x >= 0`; the returned witness is verified exactly.
pub fn feasibility(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Feasibility> {
    let m = a.len();
    if b.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: b.len() });
    }
    let n = a.first().map_or(0, |r| r.len());
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: a.iter().map(|r| r.len()).find(|&l| l != n).unwrap_or(n) });
    }
    let width = n + m;
    let flip: Vec<bool> = b.iter().map(|x| x.is_negative()).collect();
    // tableau rows: [A | I | b], sign-flipped where b < 0
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let sign = if flip[i] { -BigRational::one() } else { BigRational::one() };
            let mut row: Vec<BigRational> = a[i].iter().map(|x| x * &sign).collect();
            row.extend((0..m).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
            row.push(&b[i] * &sign);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..width).collect();
    // reduced costs of min sum(s): c_j - 1^T column_j
    let mut cost: Vec<BigRational> = (0..=width)
        .map(|j| {
            let base = if (n..width).contains(&j) { BigRational::one() } else { BigRational::zero() };
            t.iter().fold(base, |acc, row| acc - &row[j])
        })
        .collect();

    // Bland's rule: first improving column, lowest-index basic variable on ties
    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // cannot happen: the phase-one objective is bounded below by 0
            return Err(Error::NotExact("unbounded phase-one objective".into()));
        };
        pivot(&mut t, &mut cost, r, enter);
        basis[r] = enter;
    }

    // -cost[width] is the optimal sum of artificials
    if cost[width].is_negative() {
        // y_i = 1 - reduced cost of artificial i, then z = -y undoes the flip
        let y: Vec<BigRational> = (0..m)
            .map(|i| {
                let yi = BigRational::one() - &cost[n + i];
                if flip[i] {
                    yi
                } else {
                    -yi
                }
            })
            .collect();
        let cert = FarkasCertificate { y };
        if !cert.verify(a, b) {
            return Err(Error::NotExact("Farkas certificate failed verification".into()));
        }
        return Ok(Feasibility::Infeasible(cert));
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width].clone();
        }
    }
    let ok = (0..m).all(|i| a[i].iter().zip(&x).map(|(aij, xj)| aij * xj).sum::<BigRational>() == b[i]);
    if !ok {
        return Err(Error::NotExact("primal solution failed verification".into()));
    }
    Ok(Feasibility::Feasible(x))
}

fn pivot(t: &mut [Vec<BigRational>], cost: &mut [BigRational], r: usize, c: usize) {
    let p = t[r][c].clone();
    for x in t[r].iter_mut() {
        *x /= &p;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, pr) in row.iter_mut().zip(&prow) {
            *x -= &f * pr;
        }
    }
    let f = cost[c].clone();
    if !f.is_zero() {
        for (x, pr) in cost.iter_mut().zip(&prow) {
            *x -= &f * pr;
        }
    }
}
