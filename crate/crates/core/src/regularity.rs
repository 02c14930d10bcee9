//! Regularity of generic polygons and construction of support systems.
//!
//! A support system of `P` is a list `u₁ … uₙ` with `[uᵢ, uᵢ₊₁] = vᵢ₊₁`
//! for every `i` (so `[uₙ, u₁] = v₁`). Each `uₖ` must be a multiple of
//! `[vₖ, vₖ₊₁]`, and the multipliers are forced up to one free factor:
//!
//! * `c₁ = 1`, `cₖ₊₁ = 1 / (cₖ Δₖ)` gives the basis `uₖ = cₖ [vₖ, vₖ₊₁]`
//!   satisfying every condition except the closing one;
//! * scaling even-indexed vectors by `α` and odd-indexed ones by `1/α`
//!   preserves those conditions and rescales `[uₙ, u₁]` by `1/α²` when `n`
//!   is odd (and leaves it unchanged when `n` is even).
//!
//! For even `n` the closing condition holds iff `Δ₁Δ₃⋯Δₙ₋₁ = Δ₂Δ₄⋯Δₙ`, and
//! then every nonzero `α` works. For odd `n` it pins `α² = Δ₁Δ₃⋯Δₙ /
//! Δ₂Δ₄⋯Δₙ₋₁`, solvable iff `Δ₁Δ₂⋯Δₙ > 0`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::geom3::{cross, mixed, Vec3};
use crate::polygon::{Deltas, EdgeVectors, PolygonError};
use crate::scalar::{QuadExt, Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegularityError {
    #[error("polygon is not generic: Δ{0} = 0")]
    NonGeneric(usize),
    #[error("polygon is not regular: {0}")]
    NotRegular(String),
    #[error("scaling parameter must be nonzero")]
    ZeroAlpha,
    #[error("alpha^2 = {got} but this polygon needs alpha^2 = {expected}")]
    AlphaMismatch { expected: String, got: String },
    #[error("expected {expected} vectors, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("support basis check failed at [u{index}, u{next}] (internal error)", next = .index + 1)]
    BasisCheck { index: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl From<PolygonError> for RegularityError {
    fn from(e: PolygonError) -> Self {
        match e {
            PolygonError::ZeroDelta(i) => RegularityError::NonGeneric(i),
            other => RegularityError::NotRegular(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct RegularityVerdict<S = Rational> {
    pub regular: bool,
    pub parity: Parity,
    pub n: usize,
    /// Even `n`: odd-index product minus even-index product.
    /// Odd `n`: the product of all `Δᵢ`.
    pub evidence: S,
    /// `Δ₁Δ₃Δ₅…`
    pub odd_product: S,
    /// `Δ₂Δ₄Δ₆…`
    pub even_product: S,
    /// Odd `n` only: `Δ₁Δ₃⋯Δₙ / Δ₂Δ₄⋯Δₙ₋₁`. Positive exactly when regular.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_squared: Option<S>,
}

impl<S: Scalar> RegularityVerdict<S> {
    /// Human-readable statement of the condition that decided the verdict.
    pub fn condition(&self) -> String {
        match self.parity {
            Parity::Even => {
                let (odd, even) = if self.n == 4 {
                    ("Δ1Δ3".to_string(), "Δ2Δ4".to_string())
                } else {
                    (format!("Δ1Δ3…Δ{}", self.n - 1), format!("Δ2Δ4…Δ{}", self.n))
                };
                format!(
                    "{odd} = {} {} {even} = {}",
                    self.odd_product,
                    if self.regular { "=" } else { "≠" },
                    self.even_product
                )
            }
            Parity::Odd => format!(
                "Δ1Δ2…Δ{} = {} (odd-index product {}, even-index product {}) is {}",
                self.n,
                self.evidence,
                self.odd_product,
                self.even_product,
                if self.regular {
                    "positive"
                } else {
                    "not positive"
                }
            ),
        }
    }
}

pub fn check_regularity<S: Scalar>(d: &Deltas<S>) -> Result<RegularityVerdict<S>, RegularityError> {
    d.require_nonzero()?;
    let n = d.len();
    let parity = Parity::of(n);
    let odd_product = d.odd_product();
    let even_product = d.even_product();
    let verdict = match parity {
        Parity::Even => {
            let evidence = odd_product.clone() - even_product.clone();
            RegularityVerdict {
                regular: evidence.is_zero(),
                parity,
                n,
                evidence,
                odd_product,
                even_product,
                alpha_squared: None,
            }
        }
        Parity::Odd => {
            let evidence = d.total_product();
            let alpha_squared = odd_product.div_exact(&even_product)?;
            RegularityVerdict {
                regular: evidence.sign() == Ordering::Greater,
                parity,
                n,
                evidence,
                odd_product,
                even_product,
                alpha_squared: Some(alpha_squared),
            }
        }
    };
    Ok(verdict)
}

/// The unscaled vectors `uₖ = cₖ [vₖ, vₖ₊₁]` with `c₁ = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "S: Serialize + Clone",
    deserialize = "S: Deserialize<'de>"
))]
pub struct SupportBasis<S = Rational> {
    pub u: Vec<Vec3<S>>,
    pub c: Vec<S>,
}

pub fn support_basis<S: Scalar>(
    v: &EdgeVectors<S>,
    d: &Deltas<S>,
) -> Result<SupportBasis<S>, RegularityError> {
    if v.len() != d.len() {
        return Err(RegularityError::LengthMismatch {
            expected: v.len(),
            got: d.len(),
        });
    }
    d.require_nonzero()?;
    let n = v.len();
    let mut c = Vec::with_capacity(n);
    c.push(d.delta(1).one_like());
    for k in 1..n {
        let next = (c[k - 1].clone() * d.delta(k).clone()).inverse()?;
        c.push(next);
    }
    let u: Vec<Vec3<S>> = (0..n)
        .map(|k| cross(v.get(k), v.get(k + 1)).scale(&c[k]))
        .collect();
    for k in 0..n - 1 {
        if &cross(&u[k], &u[k + 1]) != v.get(k + 1) {
            return Err(RegularityError::BasisCheck { index: k + 1 });
        }
    }
    Ok(SupportBasis { u, c })
}

/// `[uₙ, u₁] − v₁`; zero iff the unscaled basis already closes.
pub fn closure_defect<S: Scalar>(basis: &SupportBasis<S>, v: &EdgeVectors<S>) -> Vec3<S> {
    let n = basis.u.len();
    cross(&basis.u[n - 1], &basis.u[0]) - v.get(0).clone()
}

/// A full support system `u′₁ … u′ₙ`, with `u′ᵢ = α uᵢ` for even `i` and
/// `u′ᵢ = uᵢ / α` for odd `i` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "S: Serialize + Clone",
    deserialize = "S: Deserialize<'de>"
))]
pub struct SupportSystem<S = Rational> {
    pub alpha: S,
    pub parity: Parity,
    #[serde(rename = "u")]
    pub uprime: Vec<Vec3<S>>,
}

impl<S: Scalar> SupportSystem<S> {
    /// Wraps vectors obtained elsewhere; run [`verify_support`] before trusting them.
    pub fn from_vectors(uprime: Vec<Vec3<S>>, alpha: S) -> Self {
        let parity = Parity::of(uprime.len());
        SupportSystem {
            alpha,
            parity,
            uprime,
        }
    }

    pub fn len(&self) -> usize {
        self.uprime.len()
    }

    pub fn is_empty(&self) -> bool {
        self.uprime.is_empty()
    }
}

/// Scales `basis` by `alpha`. The scalar type of `alpha` decides the field
/// of the result: a [`Rational`] for even `n` (or an odd `n` whose `α²`
/// happens to be a rational square), a [`QuadExt`] otherwise.
pub fn support_system<S: Scalar>(
    basis: &SupportBasis<Rational>,
    verdict: &RegularityVerdict<Rational>,
    alpha: &S,
) -> Result<SupportSystem<S>, RegularityError> {
    if !verdict.regular {
        return Err(RegularityError::NotRegular(verdict.condition()));
    }
    if basis.u.len() != verdict.n {
        return Err(RegularityError::LengthMismatch {
            expected: verdict.n,
            got: basis.u.len(),
        });
    }
    if alpha.is_zero() {
        return Err(RegularityError::ZeroAlpha);
    }
    if let Some(a2) = &verdict.alpha_squared {
        let sq = alpha.clone() * alpha.clone();
        if sq != alpha.embed(a2) {
            return Err(RegularityError::AlphaMismatch {
                expected: a2.to_string(),
                got: sq.to_string(),
            });
        }
    }
    let inv = alpha.inverse()?;
    let uprime = basis
        .u
        .iter()
        .enumerate()
        .map(|(k, u)| {
            let u = Vec3::embed(alpha, u);
            // k is 0-based, so even k is an odd 1-based index
            if k % 2 == 0 {
                u.scale(&inv)
            } else {
                u.scale(alpha)
            }
        })
        .collect();
    Ok(SupportSystem {
        alpha: alpha.clone(),
        parity: verdict.parity,
        uprime,
    })
}

/// `±√(α²)` for an odd, regular verdict.
pub fn canonical_alpha(
    verdict: &RegularityVerdict<Rational>,
    negative: bool,
) -> Result<QuadExt, RegularityError> {
    if !verdict.regular {
        return Err(RegularityError::NotRegular(verdict.condition()));
    }
    let a2 = verdict.alpha_squared.clone().ok_or_else(|| {
        RegularityError::NotRegular("alpha is free for even n; pass it explicitly".into())
    })?;
    let root = QuadExt::sqrt_of(a2)?;
    Ok(if negative { -root } else { root })
}

/// The first condition `[u′ᵢ, u′ᵢ₊₁] = vᵢ₊₁` that fails; `index` is `i`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("[u{index}, u{}] differs from v{}", .index % .n + 1, .index % .n + 1)]
pub struct SupportViolation {
    pub index: usize,
    pub n: usize,
}

/// Checks all `n` cyclic conditions exactly. Rational edge vectors are
/// lifted into the field of the support vectors, so in `Q(√d)` the `α` and
/// `1/α` factors must cancel to a rational result.
pub fn verify_support<S: Scalar>(
    s: &SupportSystem<S>,
    v: &EdgeVectors<Rational>,
) -> Result<(), SupportViolation> {
    verify_support_vectors(&s.uprime, v)
}

pub fn verify_support_vectors<S: Scalar>(
    u: &[Vec3<S>],
    v: &EdgeVectors<Rational>,
) -> Result<(), SupportViolation> {
    let n = v.len();
    if u.len() != n {
        return Err(SupportViolation { index: 0, n });
    }
    for i in 0..n {
        let lhs = cross(&u[i], &u[(i + 1) % n]);
        let rhs = Vec3::embed(&u[i].x, v.get(i + 1));
        if lhs != rhs {
            return Err(SupportViolation { index: i + 1, n });
        }
    }
    Ok(())
}

/// Both sides of `[[a, b], [b, c]] = (a, [b, c]) · b`.
pub fn double_cross_identity<S: Scalar>(
    a: &Vec3<S>,
    b: &Vec3<S>,
    c: &Vec3<S>,
) -> (Vec3<S>, Vec3<S>) {
    let lhs = cross(&cross(a, b), &cross(b, c));
    let rhs = b.scale(&mixed(a, b, c));
    (lhs, rhs)
}
