//! Vectors in 3-space over a [`Scalar`] field.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::{Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Serialized as a 3-element array `[x, y, z]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[S; 3]", into = "[S; 3]")]
#[serde(bound(
    serialize = "S: Serialize + Clone",
    deserialize = "S: Deserialize<'de>"
))]
pub struct Vec3<S = Rational> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S> From<[S; 3]> for Vec3<S> {
    fn from([x, y, z]: [S; 3]) -> Self {
        Vec3 { x, y, z }
    }
}

impl<S> From<Vec3<S>> for [S; 3] {
    fn from(v: Vec3<S>) -> Self {
        [v.x, v.y, v.z]
    }
}

impl<S: fmt::Display> fmt::Display for Vec3<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl<S: fmt::Debug> fmt::Debug for Vec3<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?})", self.x, self.y, self.z)
    }
}

impl<S> Vec3<S> {
    pub const fn new(x: S, y: S, z: S) -> Self {
        Vec3 { x, y, z }
    }

    pub fn map<T>(&self, mut f: impl FnMut(&S) -> T) -> Vec3<T> {
        Vec3 {
            x: f(&self.x),
            y: f(&self.y),
            z: f(&self.z),
        }
    }

    pub fn components(&self) -> [&S; 3] {
        [&self.x, &self.y, &self.z]
    }
}

impl Vec3<Rational> {
    /// Integer coordinates, mostly for tests and fixtures.
    pub fn int(x: i64, y: i64, z: i64) -> Self {
        Vec3::new(x.into(), y.into(), z.into())
    }
}

impl<S: Scalar> Vec3<S> {
    pub fn zero_like(&self) -> Self {
        let z = self.x.zero_like();
        Vec3::new(z.clone(), z.clone(), z)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|c| c.clone() * k.clone())
    }

    /// Lifts a rational vector into the field of `like`.
    pub fn embed(like: &S, v: &Vec3<Rational>) -> Self {
        v.map(|c| like.embed(c))
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }

    /// Verifies every component lives in the same field as `other`'s.
    pub fn check_compatible(&self, other: &Self) -> Result<(), ScalarError> {
        let anchor = &self.x;
        for c in self.components().into_iter().chain(other.components()) {
            anchor.check_compatible(c)?;
        }
        Ok(())
    }
}

impl<S: Scalar> Add for Vec3<S> {
    type Output = Vec3<S>;
    fn add(self, rhs: Self) -> Self {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<S: Scalar> Add for &Vec3<S> {
    type Output = Vec3<S>;
    fn add(self, rhs: Self) -> Vec3<S> {
        self.clone() + rhs.clone()
    }
}

impl<S: Scalar> Sub for Vec3<S> {
    type Output = Vec3<S>;
    fn sub(self, rhs: Self) -> Self {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<S: Scalar> Sub for &Vec3<S> {
    type Output = Vec3<S>;
    fn sub(self, rhs: Self) -> Vec3<S> {
        self.clone() - rhs.clone()
    }
}

impl<S: Scalar> Neg for Vec3<S> {
    type Output = Vec3<S>;
    fn neg(self) -> Self {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl<S: Scalar> Neg for &Vec3<S> {
    type Output = Vec3<S>;
    fn neg(self) -> Vec3<S> {
        -self.clone()
    }
}

pub fn dot<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>) -> S {
    a.x.clone() * b.x.clone() + a.y.clone() * b.y.clone() + a.z.clone() * b.z.clone()
}

/// Right-handed cross product.
pub fn cross<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>) -> Vec3<S> {
    Vec3::new(
        a.y.clone() * b.z.clone() - a.z.clone() * b.y.clone(),
        a.z.clone() * b.x.clone() - a.x.clone() * b.z.clone(),
        a.x.clone() * b.y.clone() - a.y.clone() * b.x.clone(),
    )
}

/// Mixed product `(a, [b, c])`: the determinant with rows `a`, `b`, `c`.
pub fn mixed<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>, c: &Vec3<S>) -> S {
    dot(a, &cross(b, c))
}

pub fn checked_dot<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>) -> Result<S, ScalarError> {
    a.check_compatible(b)?;
    Ok(dot(a, b))
}

pub fn checked_cross<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>) -> Result<Vec3<S>, ScalarError> {
    a.check_compatible(b)?;
    Ok(cross(a, b))
}

pub fn checked_mixed<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>, c: &Vec3<S>) -> Result<S, ScalarError> {
    a.check_compatible(b)?;
    a.check_compatible(c)?;
    Ok(mixed(a, b, c))
}

/// Cyclic sum `Σ [pᵢ, pᵢ₊₁]`: twice the oriented area vector of the closed
/// polygon through `points`. It does not depend on the origin.
pub fn area_vector<S: Scalar>(points: &[Vec3<S>]) -> Result<Vec3<S>, GeomError> {
    if points.len() < 3 {
        return Err(GeomError::TooFewPoints(points.len()));
    }
    for p in &points[1..] {
        points[0].check_compatible(p)?;
    }
    let n = points.len();
    let sum = (0..n)
        .map(|i| cross(&points[i], &points[(i + 1) % n]))
        .fold(points[0].zero_like(), |acc, c| acc + c);
    Ok(sum)
}

/// Sum of a non-empty list of vectors; `None` when empty.
pub fn sum<S: Scalar>(vs: &[Vec3<S>]) -> Option<Vec3<S>> {
    let first = vs.first()?;
    Some(vs.iter().fold(first.zero_like(), |acc, v| acc + v.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QuadExt;

    fn v(x: i64, y: i64, z: i64) -> Vec3 {
        Vec3::int(x, y, z)
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot(&v(1, 0, 0), &v(0, 1, 0)), Rational::zero());
        assert_eq!(dot(&v(1, 1, 2), &v(-5, 3, 1)), Rational::zero());
        assert_eq!(dot(&v(2, 2, 1), &v(3, -1, 1)), Rational::from(5));
    }

    #[test]
    fn cross_examples() {
        assert_eq!(cross(&v(1, 0, 0), &v(0, 1, 0)), v(0, 0, 1));
        assert_eq!(cross(&v(1, 1, 2), &v(1, 2, -1)), v(-5, 3, 1));
        assert_eq!(cross(&v(2, 2, 1), &v(3, -1, 1)), v(3, 1, -8));
    }

    #[test]
    fn mixed_examples() {
        assert_eq!(
            mixed(&v(1, 0, 0), &v(0, 1, 0), &v(0, 0, 1)),
            Rational::one()
        );
        assert_eq!(
            mixed(&v(0, 0, 1), &v(2, -1, 3), &v(-1, 5, 2)),
            Rational::from(9)
        );
    }

    #[test]
    fn area_vector_examples() {
        let tri = [v(0, 0, 0), v(1, 0, 0), v(0, 1, 0)];
        assert_eq!(area_vector(&tri).unwrap(), v(0, 0, 1));

        let pentagon = [
            v(2, 2, 1),
            v(3, -1, 1),
            v(-3, 1, 1),
            v(-4, 0, 1),
            v(-1, -1, 1),
        ];
        assert_eq!(area_vector(&pentagon).unwrap(), v(0, 0, 0));

        let back_and_forth = [v(0, 0, 0), v(1, 2, 3), v(4, -1, 2), v(1, 2, 3)];
        assert_eq!(area_vector(&back_and_forth).unwrap(), v(0, 0, 0));

        assert_eq!(
            area_vector(&[v(0, 0, 0), v(1, 0, 0)]),
            Err(GeomError::TooFewPoints(2))
        );
    }

    #[test]
    fn mismatched_radicands_are_reported() {
        let s2 = QuadExt::sqrt_of(Rational::from(2)).unwrap();
        let s3 = QuadExt::sqrt_of(Rational::from(3)).unwrap();
        let a = Vec3::new(s2.clone(), s2.zero_like(), s2.zero_like());
        let b = Vec3::new(s3.clone(), s3.zero_like(), s3.zero_like());
        assert!(checked_dot(&a, &b).is_err());
        assert!(checked_cross(&a, &b).is_err());
        assert!(checked_mixed(&a, &a, &b).is_err());
        assert!(checked_dot(&a, &a).is_ok());
        assert!(area_vector(&[a.clone(), a, b]).is_err());
    }

    #[test]
    fn serializes_as_array() {
        let p = Vec3::new(
            Rational::new(1, 2).unwrap(),
            Rational::from(-3),
            Rational::zero(),
        );
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/2","-3","0"]"#);
        let back: Vec3 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
