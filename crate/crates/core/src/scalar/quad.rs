use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{Rational, Scalar, ScalarError};

/// `a + b·√d` with rational `a`, `b` and a fixed positive rational radicand `d`.
///
/// The radicand is stored as given; it is never reduced to a square-free
/// part. Values with different radicands are never compared or combined.
/// If `d` is a rational square the pair still behaves as an element of the
/// ring `Q[x]/(x² - d)`; only [`QuadExt::checked_inv`] notices, when the
/// norm `a² - b²d` vanishes.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuadRepr")]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: Rational,
}

#[derive(Deserialize)]
struct QuadRepr {
    a: Rational,
    b: Rational,
    d: Rational,
}

impl TryFrom<QuadRepr> for QuadExt {
    type Error = ScalarError;

    fn try_from(r: QuadRepr) -> Result<Self, Self::Error> {
        QuadExt::new(r.a, r.b, r.d)
    }
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self, ScalarError> {
        if d.sign() != Ordering::Greater {
            return Err(ScalarError::NonPositiveRadicand(d));
        }
        Ok(QuadExt { a, b, d })
    }

    /// `√d` itself.
    pub fn sqrt_of(d: Rational) -> Result<Self, ScalarError> {
        QuadExt::new(Rational::zero(), Rational::one(), d)
    }

    pub fn from_rational(a: Rational, d: Rational) -> Result<Self, ScalarError> {
        QuadExt::new(a, Rational::zero(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    /// `a² - b²d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    pub fn conjugate(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    fn same_radicand(&self, other: &Self) -> Result<(), ScalarError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(ScalarError::RadicandMismatch {
                left: Box::new(self.d.clone()),
                right: Box::new(other.d.clone()),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_radicand(other)?;
        Ok(QuadExt {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.d.clone(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_radicand(other)?;
        Ok(QuadExt {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d: self.d.clone(),
        })
    }

    /// `(a₁a₂ + b₁b₂d) + (a₁b₂ + a₂b₁)√d`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_radicand(other)?;
        Ok(QuadExt {
            a: &self.a * &other.a + &self.b * &other.b * &self.d,
            b: &self.a * &other.b + &other.a * &self.b,
            d: self.d.clone(),
        })
    }

    /// `(a - b√d) / (a² - b²d)`.
    pub fn checked_inv(&self) -> Result<Self, ScalarError> {
        if self.a.is_zero() && self.b.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let norm = self.norm();
        if norm.is_zero() {
            return Err(ScalarError::DegenerateNorm(Box::new(self.clone())));
        }
        let inv = norm.recip()?;
        Ok(QuadExt {
            a: &self.a * &inv,
            b: -(&self.b * &inv),
            d: self.d.clone(),
        })
    }

    fn expect_same(&self, other: &Self) {
        if let Err(e) = self.same_radicand(other) {
            panic!("{e}");
        }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{} + ", self.a)?;
        }
        write!(f, "({})*sqrt({})", self.b, self.d)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}*sqrt({:?}))", self.a, self.b, self.d)
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        self.expect_same(&rhs);
        QuadExt {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            d: self.d,
        }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        self.expect_same(&rhs);
        QuadExt {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
            d: self.d,
        }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        self.expect_same(&rhs);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &self.d;
        let b = &self.a * &rhs.b + &rhs.a * &self.b;
        QuadExt { a, b, d: self.d }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Scalar for QuadExt {
    fn zero_like(&self) -> Self {
        QuadExt {
            a: Rational::zero(),
            b: Rational::zero(),
            d: self.d.clone(),
        }
    }

    fn one_like(&self) -> Self {
        QuadExt {
            a: Rational::one(),
            b: Rational::zero(),
            d: self.d.clone(),
        }
    }

    fn embed(&self, r: &Rational) -> Self {
        QuadExt {
            a: r.clone(),
            b: Rational::zero(),
            d: self.d.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    // sign(a + b√d) with d > 0: when a and b disagree, compare a² with b²d.
    fn sign(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == Ordering::Equal || sa == sb {
            return sa;
        }
        if sa == Ordering::Equal {
            return sb;
        }
        match (&self.a * &self.a).cmp(&(&self.b * &self.b * &self.d)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    fn inverse(&self) -> Result<Self, ScalarError> {
        self.checked_inv()
    }

    fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * self.d.to_f64().sqrt()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), ScalarError> {
        self.same_radicand(other)
    }

    fn to_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }
}
