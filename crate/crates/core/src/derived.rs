//! Derived polygons and their geometry.
//!
//! The derived polygon of a support system `u′₁ … u′ₙ` has the endpoints
//! `Bᵢ` of the `u′ᵢ` (drawn from a common origin) as vertices. For
//! quadrangles and pentagons it is planar with zero oriented area. A
//! derived hexagon is strongly-regular (`Δ′₁ = Δ′₄`, `Δ′₂ = Δ′₅`,
//! `Δ′₃ = Δ′₆`), its type `Δ′₁ : Δ′₂ : Δ′₃` does not depend on the support
//! system chosen, and its odd and even vertices lie in two parallel planes.

use serde::{Deserialize, Serialize};

use crate::geom3::{area_vector, cross, dot, mixed, Vec3};
use crate::polygon::{Deltas, EdgeVectors, Polygon, PolygonError};
use crate::regularity::{
    check_regularity, support_basis, support_system, RegularityError, SupportSystem,
};
use crate::scalar::{Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivedError {
    #[error("expected a hexagon, got {0} vertices")]
    NotHexagon(usize),
    #[error("expected a quadrangle, got {0} vertices")]
    NotQuadrangle(usize),
    #[error("polygon is not planar (vertex {0} is off the plane)")]
    NonPlanar(usize),
    #[error("Δ{0} is zero")]
    ZeroDelta(usize),
    #[error("hexagon is not strongly-regular")]
    NotStronglyRegular,
    #[error("B1, B3, B5 are collinear")]
    CollinearAnchor,
    #[error("all vertices are collinear")]
    Collinear,
    #[error("{stage}: {source}")]
    Regularity {
        stage: &'static str,
        source: RegularityError,
    },
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Vertices `Bᵢ` and edges `Bᵢ₊₁ − Bᵢ` of a derived polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "S: Serialize + Clone",
    deserialize = "S: Deserialize<'de>"
))]
pub struct DerivedPolygon<S = Rational> {
    vertices: Vec<Vec3<S>>,
    edges: Vec<Vec3<S>>,
}

impl<S: Scalar> DerivedPolygon<S> {
    pub fn from_vertices(vertices: Vec<Vec3<S>>) -> Result<Self, PolygonError> {
        let polygon = Polygon::new(vertices)?;
        let edges = polygon.edge_vectors().as_slice().to_vec();
        Ok(DerivedPolygon {
            vertices: polygon.vertices().to_vec(),
            edges,
        })
    }

    pub fn vertices(&self) -> &[Vec3<S>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Vec3<S>] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_vectors(&self) -> EdgeVectors<S> {
        EdgeVectors::new(self.edges.clone()).expect("edges of a closed polygon")
    }

    pub fn to_polygon(&self) -> Polygon<S> {
        Polygon::new(self.vertices.clone()).expect("at least 3 vertices")
    }

    pub fn area_vector(&self) -> Vec3<S> {
        area_vector(&self.vertices).expect("at least 3 vertices")
    }
}

pub fn derive<S: Scalar>(s: &SupportSystem<S>) -> DerivedPolygon<S> {
    DerivedPolygon::from_vertices(s.uprime.clone()).expect("support systems have n >= 3")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Planarity {
    pub planar: bool,
    /// 1-based index of the first vertex off the plane of the reference triple.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
}

/// Picks the first non-collinear triple `B₁, Bⱼ, Bₖ` and tests every other
/// vertex against its plane. Fewer than four points, or collinear points,
/// are planar.
pub fn planarity<S: Scalar>(points: &[Vec3<S>]) -> Planarity {
    let planar = Planarity {
        planar: true,
        witness: None,
    };
    if points.len() < 4 {
        return planar;
    }
    let Some(normal) = spanning_normal(points) else {
        return planar;
    };
    let base = &points[0];
    for (k, p) in points.iter().enumerate().skip(1) {
        if !dot(&(p - base), &normal).is_zero() {
            return Planarity {
                planar: false,
                witness: Some(k + 1),
            };
        }
    }
    planar
}

// Normal of the plane through B₁ and the first two points that are not
// collinear with it.
fn spanning_normal<S: Scalar>(points: &[Vec3<S>]) -> Option<Vec3<S>> {
    let base = &points[0];
    let j = points.iter().position(|p| p != base)?;
    let a = &points[j] - base;
    points[j + 1..]
        .iter()
        .map(|p| cross(&a, &(p - base)))
        .find(|c| !c.is_zero())
}

impl<S: Scalar> DerivedPolygon<S> {
    pub fn planarity(&self) -> Planarity {
        planarity(&self.vertices)
    }

    pub fn is_planar(&self) -> bool {
        self.planarity().planar
    }
}

/// `Δ′` of the derived polygon, with the first vanishing index flagged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct DerivedDeltas<S = Rational> {
    pub deltas: Deltas<S>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_generic_at: Option<usize>,
}

pub fn derived_deltas<S: Scalar>(p: &DerivedPolygon<S>) -> DerivedDeltas<S> {
    let deltas = p.edge_vectors().deltas();
    let non_generic_at = deltas.first_zero();
    DerivedDeltas {
        deltas,
        non_generic_at,
    }
}

fn require_hexagon_deltas<S: Scalar>(d: &Deltas<S>) -> Result<(), DerivedError> {
    if d.len() != 6 {
        return Err(DerivedError::NotHexagon(d.len()));
    }
    if let Some(i) = d.first_zero() {
        return Err(DerivedError::ZeroDelta(i));
    }
    Ok(())
}

/// `Δ₁ = Δ₄`, `Δ₂ = Δ₅` and `Δ₃ = Δ₆`.
pub fn strongly_regular_check<S: Scalar>(d: &Deltas<S>) -> Result<bool, DerivedError> {
    require_hexagon_deltas(d)?;
    Ok((1..=3).all(|i| d.delta(i) == d.delta(i + 3)))
}

/// The cyclic ratio `Δ₁ : Δ₂ : Δ₃` in canonical form: of the three cyclic
/// rotations, each scaled to start with 1, the lexicographically least.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct HexType<S = Rational> {
    pub triple: [S; 3],
}

impl<S: Scalar> HexType<S> {
    pub fn from_ratio(a: &S, b: &S, c: &S) -> Result<Self, DerivedError> {
        let rotations = [[a, b, c], [b, c, a], [c, a, b]];
        let mut best: Option<[S; 3]> = None;
        for [x, y, z] in rotations {
            let inv = x.inverse()?;
            let cand = [x.one_like(), y.clone() * inv.clone(), z.clone() * inv];
            let better = match &best {
                None => true,
                Some(cur) => cand[1]
                    .cmp_exact(&cur[1])
                    .then_with(|| cand[2].cmp_exact(&cur[2]))
                    .is_lt(),
            };
            if better {
                best = Some(cand);
            }
        }
        Ok(HexType {
            triple: best.expect("three rotations"),
        })
    }
}

pub fn hex_type<S: Scalar>(d: &Deltas<S>) -> Result<HexType<S>, DerivedError> {
    if !strongly_regular_check(d)? {
        return Err(DerivedError::NotStronglyRegular);
    }
    HexType::from_ratio(d.delta(1), d.delta(2), d.delta(3))
}

/// Odd vertices `B₁, B₃, B₅` span plane `Π₁`; the even ones sit at equal
/// signed height above it (plane `Π₂`). Heights are `(Bₖ − B₁) · normal`,
/// unnormalized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "S: Serialize + Clone",
    deserialize = "S: Deserialize<'de>"
))]
pub struct PlaneDecomposition<S = Rational> {
    pub normal: Vec3<S>,
    pub odd_offsets: [S; 3],
    pub even_offsets: [S; 3],
    pub parallel_planes: bool,
    /// `B₁, B′₂, B₃, B′₄, B₅, B′₆` with `B′ₖ` the projection onto `Π₁`.
    pub projected: Vec<Vec3<S>>,
    pub projected_area_vector: Vec3<S>,
}

impl<S: Scalar> PlaneDecomposition<S> {
    pub fn holds(&self) -> bool {
        self.parallel_planes
            && self.odd_offsets.iter().all(Scalar::is_zero)
            && self.projected_area_vector.is_zero()
    }
}

pub fn two_plane_decomposition<S: Scalar>(
    p: &DerivedPolygon<S>,
) -> Result<PlaneDecomposition<S>, DerivedError> {
    if p.len() != 6 {
        return Err(DerivedError::NotHexagon(p.len()));
    }
    let b = p.vertices();
    let normal = cross(&(&b[2] - &b[0]), &(&b[4] - &b[0]));
    if normal.is_zero() {
        return Err(DerivedError::CollinearAnchor);
    }
    let height = |k: usize| dot(&(&b[k] - &b[0]), &normal);
    let odd_offsets = [height(0), height(2), height(4)];
    let even_offsets = [height(1), height(3), height(5)];
    let parallel_planes = even_offsets[0] == even_offsets[1] && even_offsets[1] == even_offsets[2];
    let norm_sq_inv = dot(&normal, &normal).inverse()?;
    let projected: Vec<Vec3<S>> = (0..6)
        .map(|k| {
            if k % 2 == 0 {
                b[k].clone()
            } else {
                &b[k] - &normal.scale(&(height(k) * norm_sq_inv.clone()))
            }
        })
        .collect();
    let projected_area_vector = area_vector(&projected).expect("six points");
    Ok(PlaneDecomposition {
        normal,
        odd_offsets,
        even_offsets,
        parallel_planes,
        projected,
        projected_area_vector,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecondDerivative {
    pub first: DerivedPolygon,
    pub second: DerivedPolygon,
    pub first_deltas: Deltas,
    pub second_deltas: Deltas,
    pub first_type: HexType,
    pub second_type: HexType,
}

impl SecondDerivative {
    pub fn types_match(&self) -> bool {
        self.first_type == self.second_type
    }

    /// `Δ″₁/Δ″₂ = Δ′₂/Δ′₃`, `Δ″₂/Δ″₃ = Δ′₃/Δ′₁`, `Δ″₃/Δ″₁ = Δ′₁/Δ′₂`.
    pub fn shift_relations(&self) -> [bool; 3] {
        shift_relations(&self.first_deltas, &self.second_deltas)
    }
}

/// The three shift relations, cross-multiplied (all `Δ` are nonzero).
pub fn shift_relations<S: Scalar>(first: &Deltas<S>, second: &Deltas<S>) -> [bool; 3] {
    let d1 = |i: usize| first.delta(i).clone();
    let d2 = |i: usize| second.delta(i).clone();
    [
        d2(1) * d1(3) == d2(2) * d1(2),
        d2(2) * d1(1) == d2(3) * d1(3),
        d2(3) * d1(2) == d2(1) * d1(1),
    ]
}

/// Derives a regular hexagon with `α₁`, then derives the result with `α₂`.
pub fn second_derivative_type(
    v: &EdgeVectors<Rational>,
    alpha1: &Rational,
    alpha2: &Rational,
) -> Result<SecondDerivative, DerivedError> {
    if v.len() != 6 {
        return Err(DerivedError::NotHexagon(v.len()));
    }
    let (first, first_deltas) = derive_once(v, alpha1, "input hexagon")?;
    let (second, second_deltas) = derive_once(&first.edge_vectors(), alpha2, "first derivative")?;
    let first_type = hex_type(&first_deltas)?;
    let second_type = hex_type(&second_deltas)?;
    Ok(SecondDerivative {
        first,
        second,
        first_deltas,
        second_deltas,
        first_type,
        second_type,
    })
}

fn derive_once(
    v: &EdgeVectors<Rational>,
    alpha: &Rational,
    stage: &'static str,
) -> Result<(DerivedPolygon, Deltas), DerivedError> {
    let wrap = |source| DerivedError::Regularity { stage, source };
    let d = v.deltas();
    let verdict = check_regularity(&d).map_err(wrap)?;
    let basis = support_basis(v, &d).map_err(wrap)?;
    let system = support_system(&basis, &verdict, alpha).map_err(wrap)?;
    let derived = derive(&system);
    let dd = derived_deltas(&derived);
    if let Some(i) = dd.non_generic_at {
        return Err(DerivedError::ZeroDelta(i));
    }
    Ok((derived, dd.deltas))
}

/// Whether a planar quadrangle has two opposite sides crossing at interior
/// points, decided by exact orientation tests inside its plane.
pub fn planar_self_intersection<S: Scalar>(p: &DerivedPolygon<S>) -> Result<bool, DerivedError> {
    if p.len() != 4 {
        return Err(DerivedError::NotQuadrangle(p.len()));
    }
    if let Some(k) = p.planarity().witness {
        return Err(DerivedError::NonPlanar(k));
    }
    let b = p.vertices();
    let normal = spanning_normal(b).ok_or(DerivedError::Collinear)?;
    let orient =
        |a: &Vec3<S>, c: &Vec3<S>, d: &Vec3<S>| mixed(&(c - a), &(d - a), &normal).sign_i8();
    let crosses = |a: &Vec3<S>, c: &Vec3<S>, d: &Vec3<S>, e: &Vec3<S>| {
        orient(a, c, d) * orient(a, c, e) < 0 && orient(d, e, a) * orient(d, e, c) < 0
    };
    Ok(crosses(&b[0], &b[1], &b[2], &b[3]) || crosses(&b[1], &b[2], &b[3], &b[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularity::canonical_alpha;
    use crate::scalar::QuadExt;

    fn v(x: i64, y: i64, z: i64) -> Vec3 {
        Vec3::int(x, y, z)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn rv(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Vec3 {
        Vec3::new(r(a.0, a.1), r(b.0, b.1), r(c.0, c.1))
    }

    fn rats(xs: &[(i64, i64)]) -> Deltas {
        Deltas::from_values(xs.iter().map(|&(n, d)| r(n, d)).collect())
    }

    fn derived_with(v: &EdgeVectors, alpha: &Rational) -> DerivedPolygon {
        let d = v.deltas();
        let verdict = check_regularity(&d).unwrap();
        let basis = support_basis(v, &d).unwrap();
        derive(&support_system(&basis, &verdict, alpha).unwrap())
    }

    fn strong_hexagon() -> EdgeVectors {
        EdgeVectors::new(vec![
            v(1, 0, 0),
            v(0, 1, 0),
            v(0, 0, 1),
            v(2, -1, 3),
            v(-1, 5, 2),
            v(-2, -5, -6),
        ])
        .unwrap()
    }

    fn type_change_hexagon() -> EdgeVectors {
        EdgeVectors::new(vec![
            v(1, 0, 0),
            v(0, 1, 0),
            v(0, 0, 1),
            v(2, -1, 3),
            rv((-3, 2), (-1, 2), (-3, 2)),
            rv((-3, 2), (1, 2), (-5, 2)),
        ])
        .unwrap()
    }

    fn sample_quad() -> EdgeVectors {
        Polygon::new(vec![v(0, 0, 0), v(1, 1, 2), v(2, 3, 1), v(-1, 2, -2)])
            .unwrap()
            .edge_vectors()
    }

    #[test]
    fn derived_hexagon_edges() {
        let p = derived_with(&strong_hexagon(), &Rational::one());
        assert_eq!(
            p.edges(),
            &[
                v(1, 0, -1),
                rv((-1, 2), (1, 1), (0, 1)),
                rv((-77, 18), (-23, 9), (2, 1)),
                rv((-20, 9), (-13, 9), (5, 2)),
                rv((6, 1), (4, 1), (-16, 3)),
                rv((0, 1), (-1, 1), (11, 6)),
            ]
        );
        let p = derived_with(&type_change_hexagon(), &Rational::one());
        assert_eq!(
            p.edges(),
            &[
                v(1, 0, -1),
                rv((-1, 2), (1, 1), (0, 1)),
                rv((-29, 10), (1, 5), (2, 1)),
                rv((-1, 10), (27, 40), (-1, 8)),
                rv((5, 2), (-7, 8), (-67, 40)),
                rv((0, 1), (-1, 1), (4, 5)),
            ]
        );
    }

    #[test]
    fn alpha_one_keeps_basis_vectors() {
        let e = strong_hexagon();
        let basis = support_basis(&e, &e.deltas()).unwrap();
        assert_eq!(
            derived_with(&e, &Rational::one()).vertices(),
            basis.u.as_slice()
        );
    }

    #[test]
    fn planarity_examples() {
        let q = derived_with(&sample_quad(), &Rational::one());
        assert!(q.is_planar());
        assert!(q.area_vector().is_zero());

        let h = derived_with(&strong_hexagon(), &Rational::one());
        let pl = h.planarity();
        assert!(!pl.planar);
        assert!(pl.witness.is_some());

        let tri = DerivedPolygon::from_vertices(vec![v(0, 0, 0), v(1, 0, 0), v(0, 1, 5)]).unwrap();
        assert!(tri.is_planar());
    }

    #[test]
    fn planarity_with_collinear_leading_vertices() {
        // B1, B2, B3 collinear; B4 off the line but in z = 0; B5 above.
        let pts = vec![v(0, 0, 0), v(1, 0, 0), v(2, 0, 0), v(0, 1, 0), v(0, 0, 1)];
        assert_eq!(
            planarity(&pts),
            Planarity {
                planar: false,
                witness: Some(5)
            }
        );
    }

    #[test]
    fn derived_pentagon_is_planar_in_quadratic_field() {
        let e = EdgeVectors::new(vec![
            v(1, 0, 0),
            v(0, 1, 0),
            v(0, 0, 1),
            v(2, -2, 3),
            v(-3, 1, -4),
        ])
        .unwrap();
        let d = e.deltas();
        let verdict = check_regularity(&d).unwrap();
        let basis = support_basis(&e, &d).unwrap();
        let alpha = canonical_alpha(&verdict, false).unwrap();
        let p: DerivedPolygon<QuadExt> = derive(&support_system(&basis, &verdict, &alpha).unwrap());
        assert!(p.is_planar());
        assert!(p.area_vector().is_zero());
    }

    #[test]
    fn derived_deltas_examples() {
        let d = derived_deltas(&derived_with(&strong_hexagon(), &Rational::one()));
        assert_eq!(
            d.deltas,
            rats(&[(-32, 9), (8, 1), (4, 3), (-32, 9), (8, 1), (4, 3)])
        );
        assert_eq!(d.non_generic_at, None);
        let d = derived_deltas(&derived_with(&type_change_hexagon(), &Rational::one()));
        assert_eq!(
            d.deltas,
            rats(&[(-4, 5), (1, 8), (3, 10), (-4, 5), (1, 8), (3, 10)])
        );
        let q = derived_deltas(&derived_with(&sample_quad(), &Rational::one()));
        assert_eq!(q.non_generic_at, Some(1));
        assert!(q.deltas.as_slice().iter().all(Scalar::is_zero));
    }

    #[test]
    fn strong_regularity() {
        let a = rats(&[(-32, 9), (8, 1), (4, 3), (-32, 9), (8, 1), (4, 3)]);
        assert_eq!(strongly_regular_check(&a), Ok(true));
        let b = rats(&[(1, 1), (2, 1), (-5, 2), (1, 1), (2, 1), (-5, 2)]);
        assert_eq!(strongly_regular_check(&b), Ok(true));
        let c = rats(&[(1, 1), (2, 1), (9, 1), (15, 1), (-20, 1), (-6, 1)]);
        assert_eq!(strongly_regular_check(&c), Ok(false));
        assert_eq!(
            strongly_regular_check(&rats(&[(1, 1), (2, 1), (3, 1)])),
            Err(DerivedError::NotHexagon(3))
        );
    }

    #[test]
    fn hex_types() {
        let a = rats(&[(-32, 9), (8, 1), (4, 3), (-32, 9), (8, 1), (4, 3)]);
        // rotations scaled to lead with 1: (1, -9/4, -3/8), (1, 1/6, -4/9), (1, -8/3, 6)
        assert_eq!(hex_type(&a).unwrap().triple, [r(1, 1), r(-8, 3), r(6, 1)]);

        let b = rats(&[(1, 1), (2, 1), (-5, 2), (1, 1), (2, 1), (-5, 2)]);
        // (1, 2, -5/2), (1, -5/4, 1/2), (1, -2/5, 4/5)
        assert_eq!(hex_type(&b).unwrap().triple, [r(1, 1), r(-5, 4), r(1, 2)]);

        let c = rats(&[(7, 3); 6]);
        assert_eq!(hex_type(&c).unwrap().triple, [r(1, 1), r(1, 1), r(1, 1)]);

        assert_ne!(hex_type(&a).unwrap(), hex_type(&b).unwrap());
        assert_eq!(
            hex_type(&rats(&[(1, 1), (2, 1), (9, 1), (15, 1), (-20, 1), (-6, 1)])),
            Err(DerivedError::NotStronglyRegular)
        );
    }

    #[test]
    fn hex_type_is_rotation_and_scale_invariant() {
        let a = rats(&[(-32, 9), (8, 1), (4, 3), (-32, 9), (8, 1), (4, 3)]);
        let t = hex_type(&a).unwrap();
        assert_eq!(hex_type(&a.rotated(1)).unwrap(), t);
        assert_eq!(hex_type(&a.rotated(2)).unwrap(), t);
        let scaled = Deltas::from_values(a.as_slice().iter().map(|x| x * &r(-7, 2)).collect());
        assert_eq!(hex_type(&scaled).unwrap(), t);
    }

    #[test]
    fn two_planes_of_derived_hexagon() {
        let p = derived_with(&strong_hexagon(), &Rational::one());
        let dec = two_plane_decomposition(&p).unwrap();
        assert!(dec.parallel_planes);
        assert!(dec.odd_offsets.iter().all(Scalar::is_zero));
        assert!(!dec.even_offsets[0].is_zero());
        assert!(dec.projected_area_vector.is_zero());
        assert!(dec.holds());
    }

    #[test]
    fn two_planes_detects_violations() {
        let mut pts = vec![
            v(1, 0, 0),
            v(3, 1, 1),
            v(0, 2, 0),
            v(-1, -1, 1),
            v(-2, 5, 0),
            v(0, 0, 1),
        ];
        let dec =
            two_plane_decomposition(&DerivedPolygon::from_vertices(pts.clone()).unwrap()).unwrap();
        assert!(dec.parallel_planes);
        pts[3] = v(-1, -1, 2);
        let dec =
            two_plane_decomposition(&DerivedPolygon::from_vertices(pts.clone()).unwrap()).unwrap();
        assert!(!dec.parallel_planes);

        pts[2] = v(2, 0, 0);
        pts[4] = v(3, 0, 0);
        assert_eq!(
            two_plane_decomposition(&DerivedPolygon::from_vertices(pts).unwrap()),
            Err(DerivedError::CollinearAnchor)
        );
    }

    #[test]
    fn second_derivative_of_worked_hexagon() {
        let sd =
            second_derivative_type(&strong_hexagon(), &Rational::one(), &Rational::one()).unwrap();
        assert!(sd.types_match());
        assert_eq!(sd.shift_relations(), [true; 3]);
        assert_eq!(sd.first_type, sd.first_type.clone());
    }

    #[test]
    fn self_intersection() {
        let q = derived_with(&sample_quad(), &Rational::one());
        assert_eq!(planar_self_intersection(&q), Ok(true));

        let square =
            DerivedPolygon::from_vertices(vec![v(0, 0, 0), v(1, 0, 0), v(1, 1, 0), v(0, 1, 0)])
                .unwrap();
        assert_eq!(planar_self_intersection(&square), Ok(false));

        let bowtie =
            DerivedPolygon::from_vertices(vec![v(0, 0, 0), v(1, 1, 0), v(1, 0, 0), v(0, 1, 0)])
                .unwrap();
        assert_eq!(planar_self_intersection(&bowtie), Ok(true));

        let bent =
            DerivedPolygon::from_vertices(vec![v(0, 0, 0), v(1, 0, 0), v(1, 1, 0), v(0, 1, 1)])
                .unwrap();
        assert_eq!(
            planar_self_intersection(&bent),
            Err(DerivedError::NonPlanar(4))
        );
    }
}
