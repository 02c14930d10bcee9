//! Exact number tower.
//!
//! Two concrete fields are provided: [`Rational`], arbitrary precision
//! rationals, and [`QuadExt`], the quadratic extension `Q(√d)` for a fixed
//! positive rational radicand `d`. Geometry code is written against the
//! [`Scalar`] trait so the same routines run over either field.
//!
//! Arithmetic through the `std::ops` traits is infallible. Mixing two
//! [`QuadExt`] values with different radicands through those operators
//! panics; the `checked_*` methods on [`QuadExt`] and
//! [`Scalar::check_compatible`] report the mismatch as a [`ScalarError`].

mod quad;
mod rational;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use quad::QuadExt;
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand mismatch: {left} vs {right}")]
    RadicandMismatch {
        left: Box<Rational>,
        right: Box<Rational>,
    },
    #[error("radicand must be positive, got {0}")]
    NonPositiveRadicand(Rational),
    #[error("a^2 - b^2 d vanishes for {0}; the radicand is a rational square")]
    DegenerateNorm(Box<QuadExt>),
    #[error("cannot parse {input:?} as a rational: {reason}")]
    Parse { input: String, reason: String },
}

/// An exact ordered field element.
///
/// Elements of [`QuadExt`] carry their radicand, so constants are built
/// from an existing value (`zero_like`, `one_like`, `embed`) rather than
/// from nothing.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;

    fn one_like(&self) -> Self;

    /// The rational `r` as an element of the same field as `self`.
    fn embed(&self, r: &Rational) -> Self;

    fn is_zero(&self) -> bool;

    /// Sign of the exact value: `Less`, `Equal` or `Greater` than zero.
    fn sign(&self) -> Ordering;

    fn inverse(&self) -> Result<Self, ScalarError>;

    fn to_f64(&self) -> f64;

    fn check_compatible(&self, other: &Self) -> Result<(), ScalarError>;

    /// The value as a rational, when it has no irrational part.
    fn to_rational(&self) -> Option<Rational>;

    fn cmp_exact(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }

    fn div_exact(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * other.inverse()?)
    }

    /// Sign as `-1`, `0` or `1`.
    fn sign_i8(&self) -> i8 {
        match self.sign() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }
}

/// Product of a sequence of scalars; `None` for an empty sequence.
pub fn product<'a, S: Scalar + 'a>(items: impl IntoIterator<Item = &'a S>) -> Option<S> {
    items.into_iter().fold(None, |acc: Option<S>, x| match acc {
        None => Some(x.clone()),
        Some(p) => Some(p * x.clone()),
    })
}
