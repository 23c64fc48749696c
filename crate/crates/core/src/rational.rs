//! Exact rational vectors and the handful of dense linear-algebra routines
//! the lattice code needs.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A vector with exact rational coordinates in some ambient `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| rat(c)).collect())
    }

    /// Integer coordinates divided by a common denominator.
    pub fn from_scaled(coords: &[i64], denominator: i64) -> Self {
        RationalVector(coords.iter().map(|&c| frac(c, denominator)).collect())
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dot(&self, other: &Self) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RationalVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&rat(k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// `sum_i coeffs[i] * basis[i]`.
    pub fn combination(coeffs: &[Rational], basis: &[RationalVector], dim: usize) -> Self {
        let mut out = Self::zero(dim);
        for (c, b) in coeffs.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.0.iter_mut().zip(&b.0) {
                *o += c * x;
            }
        }
        out
    }

    pub fn int_combination(coeffs: &[i64], basis: &[RationalVector], dim: usize) -> Self {
        let coeffs: Vec<Rational> = coeffs.iter().map(|&c| rat(c)).collect();
        Self::combination(&coeffs, basis, dim)
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: Self) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: Self) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub type RationalMatrix = Vec<Vec<Rational>>;

/// Inverse of a square rational matrix, `None` when singular.
pub fn invert(m: &RationalMatrix) -> Option<RationalMatrix> {
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
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn gram(basis: &[RationalVector]) -> RationalMatrix {
    basis
        .iter()
        .map(|a| basis.iter().map(|b| a.dot(b)).collect())
        .collect()
}

/// Coordinates of `v` with respect to a linearly independent family, or
/// `None` when `v` is outside its span.
pub fn coordinates(basis: &[RationalVector], v: &RationalVector) -> Option<Vec<Rational>> {
    CoordinateSystem::new(basis)?.coordinates(v)
}

/// A linearly independent family together with its dual family inside the
/// span, so that repeated coordinate solves cost a few dot products.
#[derive(Clone, Debug)]
pub struct CoordinateSystem {
    basis: Vec<RationalVector>,
    dual: Vec<RationalVector>,
}

impl CoordinateSystem {
    /// `None` when the family is linearly dependent.
    pub fn new(basis: &[RationalVector]) -> Option<Self> {
        Some(CoordinateSystem {
            basis: basis.to_vec(),
            dual: dual_basis(basis)?,
        })
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.basis
    }

    pub fn coordinates(&self, v: &RationalVector) -> Option<Vec<Rational>> {
        let coeffs: Vec<Rational> = self.dual.iter().map(|d| d.dot(v)).collect();
        (RationalVector::combination(&coeffs, &self.basis, v.dim()) == *v).then_some(coeffs)
    }
}

/// Basis of the dual lattice `{x in span : (x, b) in Z for all b}`.
pub fn dual_basis(basis: &[RationalVector]) -> Option<Vec<RationalVector>> {
    let inv = invert(&gram(basis))?;
    let dim = basis.first().map_or(0, RationalVector::dim);
    Some(
        inv.iter()
            .map(|row| RationalVector::combination(row, basis, dim))
            .collect(),
    )
}

/// Converts an integral rational to `BigInt`.
pub fn to_integer(q: &Rational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}
