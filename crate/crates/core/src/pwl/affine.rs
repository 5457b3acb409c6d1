//! Affine maps `x ↦ A·x + B` and their recovery from simplex correspondences.

use num::{BigInt, One, Zero};

use super::PwlError;
use crate::rational::{Point, Rational};

/// Affine map with integer matrix and translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMapZ {
    pub a: Vec<Vec<BigInt>>,
    pub b: Vec<BigInt>,
}

/// Affine map with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMapQ {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
}

impl AffineMapZ {
    pub fn from_i64(a: &[&[i64]], b: &[i64]) -> Self {
        AffineMapZ {
            a: a.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            b: b.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn identity(d: usize) -> Self {
        let a = (0..d)
            .map(|i| (0..d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        AffineMapZ { a, b: vec![BigInt::zero(); d] }
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn apply(&self, p: &[Rational]) -> Point {
        self.to_rational().apply(p)
    }

    /// `A·v` (the linear part only).
    pub fn linear(&self, v: &[Rational]) -> Point {
        self.a
            .iter()
            .map(|row| row.iter().zip(v).map(|(c, x)| Rational::from_integer(c.clone()) * x).sum())
            .collect()
    }

    pub fn det(&self) -> BigInt {
        let q = self.to_rational();
        let d = det(&q.a);
        debug_assert!(d.is_integer());
        d.to_integer()
    }

    pub fn to_rational(&self) -> AffineMapQ {
        let r = |x: &BigInt| Rational::from_integer(x.clone());
        AffineMapQ {
            a: self.a.iter().map(|row| row.iter().map(r).collect()).collect(),
            b: self.b.iter().map(r).collect(),
        }
    }
}

impl AffineMapQ {
    pub fn apply(&self, p: &[Rational]) -> Point {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, c)| row.iter().zip(p).map(|(x, y)| x * y).sum::<Rational>() + c)
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().flatten().chain(&self.b).all(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<AffineMapZ> {
        self.is_integral().then(|| AffineMapZ {
            a: self.a.iter().map(|row| row.iter().map(|x| x.to_integer()).collect()).collect(),
            b: self.b.iter().map(|x| x.to_integer()).collect(),
        })
    }
}

/// Determinant by exact Gaussian elimination.
pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        d *= &a[col][col];
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    d
}

/// Inverse by Gauss–Jordan elimination; `None` if singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn matmul(x: &[Vec<Rational>], y: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let k = y.len();
    let m = y[0].len();
    x.iter()
        .map(|row| (0..m).map(|j| (0..k).map(|t| &row[t] * &y[t][j]).sum()).collect())
        .collect()
}

/// Homogeneous coordinates: column `i` is `(p_i, 1)`.
fn homogeneous(points: &[Point]) -> Vec<Vec<Rational>> {
    let d = points.len() - 1;
    (0..=d)
        .map(|r| points.iter().map(|p| if r < d { p[r].clone() } else { Rational::one() }).collect())
        .collect()
}

/// The unique affine map sending `source[i]` to `target[i]`, obtained as
/// `[target | 1] · [source | 1]^{-1}` in homogeneous coordinates.
pub fn affine_from_simplex_pair(source: &[Point], target: &[Point]) -> Result<AffineMapQ, PwlError> {
    let d = source.first().map_or(0, Vec::len);
    if source.len() != d + 1 || target.len() != d + 1 || d == 0 {
        return Err(PwlError::DegenerateSimplex);
    }
    if source.iter().chain(target).any(|p| p.len() != d) {
        return Err(PwlError::DimensionMismatch(d, d + 1));
    }
    let inv = inverse(&homogeneous(source)).ok_or(PwlError::DegenerateSimplex)?;
    let m = matmul(&homogeneous(target), &inv);
    Ok(AffineMapQ {
        a: m[..d].iter().map(|row| row[..d].to_vec()).collect(),
        b: m[..d].iter().map(|row| row[d].clone()).collect(),
    })
}
