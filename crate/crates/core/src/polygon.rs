//! Closed polygons in 3-space, their edge vectors and the determinants
//! `Δᵢ = (vᵢ, [vᵢ₊₁, vᵢ₊₂])` of consecutive edge triples.
//!
//! Indices reported to callers (violations, failing conditions) are
//! 1-based; storage is 0-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geom3::{cross, mixed, sum, Vec3};
use crate::scalar::{product, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolygonError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("edge vectors do not close up: their sum is {0}")]
    NotClosed(String),
    #[error("polygon is not generic: {0}")]
    NonGeneric(Violation),
    #[error("Δ{0} is zero")]
    ZeroDelta(usize),
}

/// Cyclic list of vertices `A₁ … Aₙ`, `n ≥ 3`. Genericity is not enforced
/// here so degenerate input can still be diagnosed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "S: Serialize + Clone",
    deserialize = "S: Deserialize<'de>"
))]
pub struct Polygon<S = Rational> {
    vertices: Vec<Vec3<S>>,
}

impl<S: Scalar> Polygon<S> {
    pub fn new(vertices: Vec<Vec3<S>>) -> Result<Self, PolygonError> {
        if vertices.len() < 3 {
            return Err(PolygonError::TooFewVertices(vertices.len()));
        }
        Ok(Polygon { vertices })
    }

    /// Builds `A₁ = start`, `Aₖ₊₁ = Aₖ + vₖ`. The edges must sum to zero.
    pub fn from_edges(start: Vec3<S>, edges: &[Vec3<S>]) -> Result<Self, PolygonError> {
        EdgeVectors::new(edges.to_vec())?;
        let mut vertices = Vec::with_capacity(edges.len());
        let mut cur = start;
        for e in &edges[..edges.len() - 1] {
            let next = &cur + e;
            vertices.push(cur);
            cur = next;
        }
        vertices.push(cur);
        Polygon::new(vertices)
    }

    pub fn vertices(&self) -> &[Vec3<S>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `vᵢ = Aᵢ₊₁ − Aᵢ`, cyclically.
    pub fn edge_vectors(&self) -> EdgeVectors<S> {
        let n = self.len();
        let v = (0..n)
            .map(|i| &self.vertices[(i + 1) % n] - &self.vertices[i])
            .collect();
        EdgeVectors(v)
    }

    /// Reflection in the `xy` plane. Every `Δᵢ` changes sign.
    pub fn mirror(&self) -> Self {
        let vertices = self
            .vertices
            .iter()
            .map(|p| Vec3::new(p.x.clone(), p.y.clone(), -p.z.clone()))
            .collect();
        Polygon { vertices }
    }

    /// Relabels so that vertex `k + 1` becomes the first.
    pub fn rotated(&self, k: usize) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(k % self.len());
        Polygon { vertices }
    }
}

/// Edge vectors `v₁ … vₙ` of a closed polygon; they always sum to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "S: Serialize + Clone"))]
pub struct EdgeVectors<S = Rational>(Vec<Vec3<S>>);

impl<S: Scalar> EdgeVectors<S> {
    pub fn new(v: Vec<Vec3<S>>) -> Result<Self, PolygonError> {
        if v.len() < 3 {
            return Err(PolygonError::TooFewVertices(v.len()));
        }
        let total = sum(&v).expect("non-empty");
        if !total.is_zero() {
            return Err(PolygonError::NotClosed(total.to_string()));
        }
        Ok(EdgeVectors(v))
    }

    pub fn as_slice(&self) -> &[Vec3<S>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based cyclic access.
    pub fn get(&self, i: usize) -> &Vec3<S> {
        &self.0[i % self.0.len()]
    }

    pub fn deltas(&self) -> Deltas<S> {
        deltas(self)
    }

    /// `Ok` when no two consecutive edges are collinear and no three
    /// consecutive edges are coplanar. Pairs are scanned before triples,
    /// since a collinear pair also zeroes the neighbouring `Δ`.
    pub fn check_generic(&self) -> Result<(), Violation> {
        let n = self.len();
        for i in 0..n {
            if cross(self.get(i), self.get(i + 1)).is_zero() {
                return Err(Violation {
                    index: i + 1,
                    kind: ViolationKind::CollinearPair,
                });
            }
        }
        for i in 0..n {
            if mixed(self.get(i), self.get(i + 1), self.get(i + 2)).is_zero() {
                return Err(Violation {
                    index: i + 1,
                    kind: ViolationKind::CoplanarTriple,
                });
            }
        }
        Ok(())
    }

    pub fn is_generic(&self) -> bool {
        self.check_generic().is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `vᵢ` and `vᵢ₊₁` are collinear.
    CollinearPair,
    /// `vᵢ`, `vᵢ₊₁`, `vᵢ₊₂` are coplanar.
    CoplanarTriple,
}

/// First genericity failure, with a 1-based edge index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index;
        match self.kind {
            ViolationKind::CollinearPair => write!(f, "edges v{i} and v{} are collinear", i + 1),
            ViolationKind::CoplanarTriple => {
                write!(
                    f,
                    "edges v{i}, v{}, v{} are coplanar (Δ{i} = 0)",
                    i + 1,
                    i + 2
                )
            }
        }
    }
}

/// `Δ₁ … Δₙ` of a polygon, cyclic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct Deltas<S = Rational>(Vec<S>);

impl<S: Scalar> Deltas<S> {
    pub fn from_values(values: Vec<S>) -> Self {
        Deltas(values)
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<S> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based access, `Δᵢ`.
    pub fn delta(&self, i: usize) -> &S {
        &self.0[(i - 1) % self.0.len()]
    }

    /// 1-based index of the first vanishing `Δ`.
    pub fn first_zero(&self) -> Option<usize> {
        self.0.iter().position(Scalar::is_zero).map(|i| i + 1)
    }

    pub fn require_nonzero(&self) -> Result<(), PolygonError> {
        match self.first_zero() {
            Some(i) => Err(PolygonError::ZeroDelta(i)),
            None => Ok(()),
        }
    }

    /// `Δ₁Δ₃Δ₅…` over the odd 1-based indices.
    pub fn odd_product(&self) -> S {
        product(self.0.iter().step_by(2)).expect("non-empty")
    }

    /// `Δ₂Δ₄Δ₆…` over the even 1-based indices.
    pub fn even_product(&self) -> S {
        product(self.0.iter().skip(1).step_by(2)).unwrap_or_else(|| self.0[0].one_like())
    }

    pub fn total_product(&self) -> S {
        product(self.0.iter()).expect("non-empty")
    }

    pub fn rotated(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        let n = v.len();
        v.rotate_left(k % n);
        Deltas(v)
    }
}

/// `Δᵢ = (vᵢ, [vᵢ₊₁, vᵢ₊₂])` for every `i`, indices taken cyclically.
pub fn deltas<S: Scalar>(v: &EdgeVectors<S>) -> Deltas<S> {
    let n = v.len();
    Deltas(
        (0..n)
            .map(|i| mixed(v.get(i), v.get(i + 1), v.get(i + 2)))
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "parity", rename_all = "snake_case")]
pub enum ProductSigns {
    /// Signs of `Δ₁Δ₃…Δₙ₋₁` and `Δ₂Δ₄…Δₙ`.
    Even { odd_product: i8, even_product: i8 },
    /// Sign of `Δ₁Δ₂…Δₙ`.
    Odd { total_product: i8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignPattern {
    pub signs: Vec<i8>,
    pub products: ProductSigns,
}

impl SignPattern {
    /// Whether the signs alone leave room for a support system. For even
    /// `n` equal products need equal signs; for odd `n` the product must be
    /// positive, which is also sufficient.
    pub fn regularity_possible(&self) -> bool {
        match self.products {
            ProductSigns::Even {
                odd_product,
                even_product,
            } => odd_product == even_product,
            ProductSigns::Odd { total_product } => total_product > 0,
        }
    }
}

pub fn delta_sign_pattern<S: Scalar>(d: &Deltas<S>) -> Result<SignPattern, PolygonError> {
    d.require_nonzero()?;
    let signs: Vec<i8> = d.as_slice().iter().map(Scalar::sign_i8).collect();
    let sign_of = |it: &mut dyn Iterator<Item = &i8>| it.product::<i8>();
    let products = if d.len().is_multiple_of(2) {
        ProductSigns::Even {
            odd_product: sign_of(&mut signs.iter().step_by(2)),
            even_product: sign_of(&mut signs.iter().skip(1).step_by(2)),
        }
    } else {
        ProductSigns::Odd {
            total_product: sign_of(&mut signs.iter()),
        }
    };
    Ok(SignPattern { signs, products })
}

/// `Σ_{1≤i<j≤n−1} [vᵢ, vⱼ]` for a closed edge list. A closed polygon can
/// only be a derived polygon when this vanishes. The sum equals the area
/// vector of the polygon, so it does not depend on which edge comes last.
pub fn derivability_defect<S: Scalar>(v: &[Vec3<S>]) -> Result<Vec3<S>, PolygonError> {
    let edges = EdgeVectors::new(v.to_vec())?;
    let v = edges.as_slice();
    let n = v.len();
    let zero = v[0].zero_like();
    // Σ_j [v₁ + … + vⱼ₋₁, vⱼ]
    let mut prefix = zero.clone();
    let mut total = zero;
    for vj in &v[..n - 1] {
        total = total + cross(&prefix, vj);
        prefix = prefix + vj.clone();
    }
    Ok(total)
}
