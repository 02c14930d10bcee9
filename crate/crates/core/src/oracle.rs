//! Independent checks on the main pipeline.
//!
//! The support matrix `M` of six vectors `u₁ … u₆` has rows
//! `[u₆, u₁], [u₁, u₂], …, [u₅, u₆]`, i.e. the edge vectors of the hexagon
//! they support. Identities about minors of `M` are checked by exact
//! evaluation on sampled inputs. [`float_cross_validate`] reruns a whole
//! report in `f64` and compares.

use serde::{Deserialize, Serialize};

use crate::geom3::{cross, mixed, sum, Vec3};
use crate::pipeline::{Analysis, Exact, Report};
use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("minor indices must satisfy 1 <= i < j < k <= 6, got ({0}, {1}, {2})")]
    BadIndices(usize, usize, usize),
    #[error("expected 6 vectors, got {0}")]
    NotSix(usize),
    #[error("Δ{0} of the support matrix is zero")]
    ZeroDelta(usize),
    #[error("rows of M do not sum to zero")]
    RowSumNonzero,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "S: Serialize + Clone",
    deserialize = "S: Deserialize<'de>"
))]
pub struct SupportMatrix<S> {
    pub rows: [Vec3<S>; 6],
}

fn six<S: Clone>(u: &[Vec3<S>]) -> Result<[Vec3<S>; 6], OracleError> {
    u.to_vec()
        .try_into()
        .map_err(|v: Vec<Vec3<S>>| OracleError::NotSix(v.len()))
}

impl<S: Scalar> SupportMatrix<S> {
    /// Row `i` (1-based) is `[uᵢ₋₁, uᵢ]`, so row 1 is `[u₆, u₁]`.
    pub fn build(u: &[Vec3<S>]) -> Result<Self, OracleError> {
        let u = six(u)?;
        Ok(SupportMatrix {
            rows: std::array::from_fn(|i| cross(&u[(i + 5) % 6], &u[i])),
        })
    }

    /// Rows `u₂ − u₁, …, u₁ − u₆`: the edge vectors of the derived hexagon.
    pub fn from_derived_edges(u: &[Vec3<S>]) -> Result<Self, OracleError> {
        let u = six(u)?;
        Ok(SupportMatrix {
            rows: std::array::from_fn(|i| &u[(i + 1) % 6] - &u[i]),
        })
    }

    pub fn row(&self, i: usize) -> &Vec3<S> {
        &self.rows[i - 1]
    }

    /// `Δ_{ijk}`, the determinant of rows `i < j < k` (1-based).
    pub fn submatrix_delta(&self, i: usize, j: usize, k: usize) -> Result<S, OracleError> {
        if !(1 <= i && i < j && j < k && k <= 6) {
            return Err(OracleError::BadIndices(i, j, k));
        }
        Ok(mixed(self.row(i), self.row(j), self.row(k)))
    }

    /// `Δᵢ = (row i, row i+1, row i+2)`, cyclically.
    pub fn deltas(&self) -> [S; 6] {
        std::array::from_fn(|i| {
            mixed(
                &self.rows[i],
                &self.rows[(i + 1) % 6],
                &self.rows[(i + 2) % 6],
            )
        })
    }

    pub fn row_sum(&self) -> Vec3<S> {
        sum(&self.rows).expect("six rows")
    }

    fn nonzero_deltas(&self) -> Result<[S; 6], OracleError> {
        let d = self.deltas();
        match d.iter().position(Scalar::is_zero) {
            Some(i) => Err(OracleError::ZeroDelta(i + 1)),
            None => Ok(d),
        }
    }
}

/// `(Δ₁Δ₃Δ₅, Δ₂Δ₄Δ₆)` of the support matrix of any six vectors. The two
/// agree whether or not the rows close up.
pub fn auto_identity_check<S: Scalar>(u: &[Vec3<S>]) -> Result<(S, S), OracleError> {
    let d = SupportMatrix::build(u)?.nonzero_deltas()?;
    Ok((
        d[0].clone() * d[2].clone() * d[4].clone(),
        d[1].clone() * d[3].clone() * d[5].clone(),
    ))
}

/// `Δᵢ` of the support matrix through the factorization
/// `Δᵢ = (uᵢ₋₁, uᵢ, uᵢ₊₁)(uᵢ, uᵢ₊₁, uᵢ₊₂)`, without forming `M`.
pub fn factored_deltas<S: Scalar>(u: &[Vec3<S>]) -> Result<[S; 6], OracleError> {
    let u = six(u)?;
    let e: [S; 6] = std::array::from_fn(|i| mixed(&u[(i + 5) % 6], &u[i], &u[(i + 1) % 6]));
    Ok(std::array::from_fn(|i| {
        e[i].clone() * e[(i + 1) % 6].clone()
    }))
}

/// Sum of the rows of `M`; zero exactly when `u` supports a closed hexagon.
pub fn closure_defect<S: Scalar>(u: &[Vec3<S>]) -> Result<Vec3<S>, OracleError> {
    Ok(SupportMatrix::build(u)?.row_sum())
}

/// `(Δ′₂ + Δ′₃ + Δ′₂₃₅ + Δ′₂₄₅, 2Δ′₁ + Δ′₁₂₄ + Δ′₃₅₆)` over the derived-edge
/// matrix. Both vanish when the rows of `M` sum to zero.
pub fn minor_identities<S: Scalar>(
    u: &[Vec3<S>],
    m_prime: &SupportMatrix<S>,
) -> Result<(S, S), OracleError> {
    if !closure_defect(u)?.is_zero() {
        return Err(OracleError::RowSumNonzero);
    }
    let d = m_prime.nonzero_deltas()?;
    let m = |i, j, k| m_prime.submatrix_delta(i, j, k);
    let first = d[1].clone() + d[2].clone() + m(2, 3, 5)? + m(2, 4, 5)?;
    let second = d[0].clone() + d[0].clone() + m(1, 2, 4)? + m(3, 5, 6)?;
    Ok((first, second))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloatMismatch {
    pub field: String,
    pub exact: f64,
    pub float: f64,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloatValidation {
    pub pass: bool,
    pub tolerance: f64,
    pub checked: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<FloatMismatch>,
}

type F3 = [f64; 3];

fn fsub(a: &F3, b: &F3) -> F3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn fscale(a: &F3, k: f64) -> F3 {
    [a[0] * k, a[1] * k, a[2] * k]
}

fn fdot(a: &F3, b: &F3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn fcross(a: &F3, b: &F3) -> F3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn fnorm(a: &F3) -> f64 {
    fdot(a, a).sqrt()
}

fn fmixed(a: &F3, b: &F3, c: &F3) -> f64 {
    fdot(a, &fcross(b, c))
}

fn fdeltas(v: &[F3]) -> (Vec<f64>, Vec<f64>) {
    let n = v.len();
    (0..n)
        .map(|i| {
            let (a, b, c) = (&v[i], &v[(i + 1) % n], &v[(i + 2) % n]);
            (fmixed(a, b, c), fnorm(a) * fnorm(b) * fnorm(c))
        })
        .unzip()
}

fn fedges(p: &[F3]) -> Vec<F3> {
    let n = p.len();
    (0..n).map(|i| fsub(&p[(i + 1) % n], &p[i])).collect()
}

fn farea(p: &[F3]) -> (F3, f64) {
    let n = p.len();
    let mut acc = [0.0; 3];
    let mut scale = 0.0;
    for i in 0..n {
        let c = fcross(&p[i], &p[(i + 1) % n]);
        acc = [acc[0] + c[0], acc[1] + c[1], acc[2] + c[2]];
        scale += fnorm(&p[i]) * fnorm(&p[(i + 1) % n]);
    }
    (acc, scale)
}

struct Checker {
    tol: f64,
    checked: usize,
    failures: Vec<FloatMismatch>,
}

impl Checker {
    /// Passes when `|exact − float| ≤ tol · max(scale, |exact|, |float|)`.
    fn value(&mut self, field: impl Into<String>, exact: f64, float: f64, scale: f64) {
        self.checked += 1;
        let scale = scale
            .max(exact.abs())
            .max(float.abs())
            .max(f64::MIN_POSITIVE);
        let ok =
            exact.is_finite() && float.is_finite() && (exact - float).abs() <= self.tol * scale;
        if !ok {
            self.failures.push(FloatMismatch {
                field: field.into(),
                exact,
                float,
                scale,
            });
        }
    }

    fn vec(&mut self, field: &str, exact: F3, float: F3, scale: f64) {
        let scale = scale.max(fnorm(&exact)).max(fnorm(&float));
        for (c, name) in ["x", "y", "z"].iter().enumerate() {
            self.value(format!("{field}.{name}"), exact[c], float[c], scale);
        }
    }

    fn vecs<S: Scalar>(&mut self, field: &str, exact: &[Vec3<S>], float: &[F3]) {
        if exact.len() != float.len() {
            self.value(
                format!("{field}.len"),
                exact.len() as f64,
                float.len() as f64,
                0.0,
            );
            return;
        }
        for (i, (e, f)) in exact.iter().zip(float).enumerate() {
            self.vec(&format!("{field}[{i}]"), e.to_f64(), *f, 0.0);
        }
    }
}

/// Recomputes `report` in double precision from its input and checks every
/// exact value, and every exact zero or equality it asserts, to relative
/// tolerance `tol`. Scales are magnitudes of the intermediate products.
pub fn float_cross_validate(report: &Report, tol: f64) -> FloatValidation {
    let mut ck = Checker {
        tol,
        checked: 0,
        failures: Vec::new(),
    };
    let verts: Vec<F3> = report.input.vertices.iter().map(Vec3::to_f64).collect();
    let edges = fedges(&verts);
    ck.vecs("input.edges", &report.input.edges, &edges);

    let (d, dscale) = fdeltas(&edges);
    if report.deltas.len() == d.len() {
        for (i, e) in report.deltas.as_slice().iter().enumerate() {
            ck.value(format!("deltas[{i}]"), e.to_f64(), d[i], dscale[i]);
        }
    } else {
        ck.value(
            "deltas.len",
            report.deltas.len() as f64,
            d.len() as f64,
            0.0,
        );
    }

    if let Some(v) = &report.verdict {
        let odd: f64 = d.iter().step_by(2).product();
        let even: f64 = d.iter().skip(1).step_by(2).product();
        let odd_scale: f64 = dscale.iter().step_by(2).product();
        let even_scale: f64 = dscale.iter().skip(1).step_by(2).product();
        ck.value(
            "verdict.odd_product",
            v.odd_product.to_f64(),
            odd,
            odd_scale,
        );
        ck.value(
            "verdict.even_product",
            v.even_product.to_f64(),
            even,
            even_scale,
        );
        if v.regular && d.len() % 2 == 0 {
            ck.value(
                "verdict.products_equal",
                odd,
                even,
                odd_scale.max(even_scale),
            );
        }
        if let Some(a2) = &v.alpha_squared {
            ck.value("verdict.alpha_squared", a2.to_f64(), odd / even, 0.0);
        }
    }

    if let Some(s) = &report.support_system {
        let (alpha, exact_u) = match s {
            Exact::Rational(s) => (
                s.alpha.to_f64(),
                s.uprime.iter().map(Vec3::to_f64).collect(),
            ),
            Exact::Quadratic(s) => (
                s.alpha.to_f64(),
                s.uprime.iter().map(Vec3::to_f64).collect(),
            ),
        };
        let exact_u: Vec<F3> = exact_u;
        let u = float_support(&edges, &d, alpha);
        for (i, (e, f)) in exact_u.iter().zip(&u).enumerate() {
            ck.vec(&format!("support_system.u[{i}]"), *e, *f, 0.0);
        }
        if exact_u.len() != u.len() {
            ck.value(
                "support_system.len",
                exact_u.len() as f64,
                u.len() as f64,
                0.0,
            );
        }
        let n = exact_u.len();
        for i in 0..n {
            let (a, b) = (&exact_u[i], &exact_u[(i + 1) % n]);
            ck.vec(
                &format!("support_system.cross[{i}]"),
                edges[(i + 1) % n],
                fcross(a, b),
                fnorm(a) * fnorm(b),
            );
        }
        match &report.derived_analysis {
            Some(Exact::Rational(a)) => check_analysis(&mut ck, "derived_analysis", a, &u),
            Some(Exact::Quadratic(a)) => check_analysis(&mut ck, "derived_analysis", a, &u),
            None => {}
        }
    }

    if let Some(a) = &report.analysis {
        check_analysis(&mut ck, "analysis", a, &verts);
    }

    FloatValidation {
        pass: ck.failures.is_empty(),
        tolerance: tol,
        checked: ck.checked,
        failures: ck.failures,
    }
}

fn float_support(edges: &[F3], d: &[f64], alpha: f64) -> Vec<F3> {
    let n = edges.len();
    let mut c = 1.0;
    (0..n)
        .map(|k| {
            if k > 0 {
                c = 1.0 / (c * d[k - 1]);
            }
            let u = fscale(&fcross(&edges[k], &edges[(k + 1) % n]), c);
            if k % 2 == 0 {
                fscale(&u, 1.0 / alpha)
            } else {
                fscale(&u, alpha)
            }
        })
        .collect()
}

fn check_analysis<S: Scalar>(ck: &mut Checker, prefix: &str, a: &Analysis<S>, pts: &[F3]) {
    ck.vecs(&format!("{prefix}.vertices"), &a.vertices, pts);
    if a.vertices.len() != pts.len() {
        return;
    }
    let (area, area_scale) = farea(pts);
    ck.vec(
        &format!("{prefix}.area_vector"),
        a.area_vector.to_f64(),
        area,
        area_scale,
    );
    // The defect equals the area vector.
    ck.vec(
        &format!("{prefix}.derivability_defect"),
        a.derivability_defect.to_f64(),
        area,
        area_scale,
    );

    if a.planarity.planar {
        if let Some(normal) = widest_normal(pts) {
            for (k, p) in pts.iter().enumerate() {
                let off = fsub(p, &pts[0]);
                ck.value(
                    format!("{prefix}.planarity[{k}]"),
                    0.0,
                    fdot(&off, &normal) / fnorm(&normal),
                    fnorm(&off),
                );
            }
        }
    }

    let edges = fedges(pts);
    let (d, dscale) = fdeltas(&edges);
    for (i, e) in a.deltas.as_slice().iter().enumerate().take(d.len()) {
        ck.value(format!("{prefix}.deltas[{i}]"), e.to_f64(), d[i], dscale[i]);
    }

    let Some(h) = &a.hexagon else { return };
    if d.len() != 6 {
        return;
    }
    if h.strongly_regular {
        for i in 0..3 {
            ck.value(
                format!("{prefix}.hexagon.strongly_regular[{i}]"),
                d[i],
                d[i + 3],
                dscale[i].max(dscale[i + 3]),
            );
        }
    }
    if let Some(t) = &h.hex_type {
        let t = [
            t.triple[0].to_f64(),
            t.triple[1].to_f64(),
            t.triple[2].to_f64(),
        ];
        // Distance to the nearest normalized rotation.
        let best = (0..3)
            .map(|r| {
                let rot = [d[r], d[(r + 1) % 3], d[(r + 2) % 3]];
                let cand = [1.0, rot[1] / rot[0], rot[2] / rot[0]];
                let err = (cand[1] - t[1]).abs().max((cand[2] - t[2]).abs());
                (err, cand)
            })
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .expect("three rotations")
            .1;
        for c in 0..3 {
            ck.value(
                format!("{prefix}.hexagon.hex_type[{c}]"),
                t[c],
                best[c],
                0.0,
            );
        }
    }
    if let Some(pl) = &h.planes {
        let b = pts;
        let normal = fcross(&fsub(&b[2], &b[0]), &fsub(&b[4], &b[0]));
        let nn = fnorm(&normal);
        ck.vec(
            &format!("{prefix}.hexagon.planes.normal"),
            pl.normal.to_f64(),
            normal,
            0.0,
        );
        let heights: Vec<f64> = (0..6).map(|k| fdot(&fsub(&b[k], &b[0]), &normal)).collect();
        let hscale = |k: usize| fnorm(&fsub(&b[k], &b[0])) * nn;
        for (j, k) in [0usize, 2, 4].into_iter().enumerate() {
            ck.value(
                format!("{prefix}.hexagon.planes.odd_offsets[{j}]"),
                pl.odd_offsets[j].to_f64(),
                heights[k],
                hscale(k),
            );
        }
        for (j, k) in [1usize, 3, 5].into_iter().enumerate() {
            ck.value(
                format!("{prefix}.hexagon.planes.even_offsets[{j}]"),
                pl.even_offsets[j].to_f64(),
                heights[k],
                hscale(k),
            );
        }
        if pl.parallel_planes {
            for k in [3usize, 5] {
                ck.value(
                    format!("{prefix}.hexagon.planes.parallel[{k}]"),
                    heights[1],
                    heights[k],
                    hscale(1).max(hscale(k)),
                );
            }
        }
        let projected: Vec<F3> = (0..6)
            .map(|k| {
                if k % 2 == 0 {
                    b[k]
                } else {
                    fsub(&b[k], &fscale(&normal, heights[k] / (nn * nn)))
                }
            })
            .collect();
        let (parea, pscale) = farea(&projected);
        ck.vec(
            &format!("{prefix}.hexagon.planes.projected_area_vector"),
            pl.projected_area_vector.to_f64(),
            parea,
            pscale,
        );
    }
}

// Largest normal of a plane through the first point and two others.
fn widest_normal(pts: &[F3]) -> Option<F3> {
    let mut best = None;
    let mut best_norm = 0.0;
    for j in 1..pts.len() {
        for k in j + 1..pts.len() {
            let n = fcross(&fsub(&pts[j], &pts[0]), &fsub(&pts[k], &pts[0]));
            if fnorm(&n) > best_norm {
                best_norm = fnorm(&n);
                best = Some(n);
            }
        }
    }
    best
}
