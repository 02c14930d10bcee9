//! Seeded fixture generators.
//!
//! Every generator is a pure function of its [`GenConfig`]: the same config
//! always yields the same polygon. Coordinates are small random rationals
//! `p/q` with `|p| ≤ bound` and `1 ≤ q ≤ bound`.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::derived::DerivedPolygon;
use crate::geom3::{area_vector, cross, mixed, Vec3};
use crate::polygon::{EdgeVectors, Polygon};
use crate::regularity::{verify_support, SupportSystem};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error("{kind}: no valid sample after {attempts} attempts; try a larger coordinate bound")]
    Exhausted { kind: &'static str, attempts: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub coordinate_bound: i64,
    pub max_rejections: usize,
}

impl GenConfig {
    pub const DEFAULT_BOUND: i64 = 5;
    pub const DEFAULT_MAX_REJECTIONS: usize = 10_000;

    pub fn new(seed: u64) -> Self {
        GenConfig {
            seed,
            coordinate_bound: Self::DEFAULT_BOUND,
            max_rejections: Self::DEFAULT_MAX_REJECTIONS,
        }
    }

    pub fn with_bound(self, coordinate_bound: i64) -> Self {
        GenConfig {
            coordinate_bound,
            ..self
        }
    }

    /// Same bound and budget, seed replaced by the `index`-th derived seed.
    pub fn for_sample(&self, index: u64) -> Self {
        GenConfig {
            seed: sample_seed(self.seed, index),
            ..*self
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.coordinate_bound < 2 {
            return Err(GenError::InvalidConfig(format!(
                "coordinate bound must be at least 2, got {}",
                self.coordinate_bound
            )));
        }
        if self.max_rejections < 1 {
            return Err(GenError::InvalidConfig(
                "max_rejections must be at least 1".into(),
            ));
        }
        Ok(())
    }

    fn sampler(&self) -> Result<Sampler, GenError> {
        self.validate()?;
        Ok(Sampler {
            rng: ChaCha8Rng::seed_from_u64(self.seed),
            bound: self.coordinate_bound,
        })
    }
}

/// SplitMix64 finalizer over `base + index`, so neighbouring indices give
/// unrelated streams.
pub fn sample_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(-self.bound..=self.bound);
        let q = self.rng.gen_range(1..=self.bound);
        Rational::new(p, q).expect("positive denominator")
    }

    fn vec3(&mut self) -> Vec3 {
        Vec3::new(self.rational(), self.rational(), self.rational())
    }
}

fn retry<T>(
    cfg: &GenConfig,
    kind: &'static str,
    mut attempt: impl FnMut(&mut Sampler) -> Option<T>,
) -> Result<T, GenError> {
    let mut s = cfg.sampler()?;
    for _ in 0..cfg.max_rejections {
        if let Some(t) = attempt(&mut s) {
            return Ok(t);
        }
    }
    Err(GenError::Exhausted {
        kind,
        attempts: cfg.max_rejections,
    })
}

fn generic_polygon(s: &mut Sampler, n: usize) -> Option<Polygon> {
    let p = Polygon::new((0..n).map(|_| s.vec3()).collect()).ok()?;
    p.edge_vectors().is_generic().then_some(p)
}

/// A generic polygon with `n ≥ 4` random vertices.
pub fn random_generic_polygon(n: usize, cfg: &GenConfig) -> Result<Polygon, GenError> {
    if n < 4 {
        return Err(GenError::InvalidConfig(format!(
            "generic polygons need at least 4 vertices, got {n}"
        )));
    }
    retry(cfg, "generic polygon", |s| generic_polygon(s, n))
}

/// A generic pentagon with `Δ₁⋯Δ₅ > 0`: a random one, mirrored when the
/// product comes out negative.
pub fn random_regular_pentagon(cfg: &GenConfig) -> Result<Polygon, GenError> {
    retry(cfg, "regular pentagon", |s| {
        let p = generic_polygon(s, 5)?;
        Some(match p.edge_vectors().deltas().total_product().sign() {
            Ordering::Less => p.mirror(),
            _ => p,
        })
    })
}

fn zero_area_hexagon(s: &mut Sampler) -> Option<Vec<Vec3>> {
    let pts: Vec<(Rational, Rational)> = (0..5).map(|_| (s.rational(), s.rational())).collect();
    let shoelace: Rational = pts
        .windows(2)
        .map(|w| &w[0].0 * &w[1].1 - &w[1].0 * &w[0].1)
        .fold(Rational::zero(), |a, b| a + b);
    // The closing terms are S + x₆(y₁ − y₅) + y₆(x₅ − x₁), affine in (x₆, y₆).
    let (x1, y1) = &pts[0];
    let (x5, y5) = &pts[4];
    let dx = x5 - x1;
    let dy = y1 - y5;
    let sixth = if !dx.is_zero() {
        let x6 = s.rational();
        let y6 = -(&shoelace + &(&x6 * &dy)) / dx;
        (x6, y6)
    } else if !dy.is_zero() {
        let y6 = s.rational();
        let x6 = -(&shoelace + &(&y6 * &dx)) / dy;
        (x6, y6)
    } else {
        return None;
    };
    let out: Vec<Vec3> = pts
        .into_iter()
        .chain(std::iter::once(sixth))
        .map(|(x, y)| Vec3::new(x, y, Rational::zero()))
        .collect();
    debug_assert!(area_vector(&out).map(|a| a.is_zero()).unwrap_or(false));
    Some(out)
}

/// Six points in the plane `z = 0` whose oriented area is zero.
pub fn zero_area_planar_hexagon(cfg: &GenConfig) -> Result<Vec<Vec3>, GenError> {
    retry(cfg, "zero-area hexagon", zero_area_hexagon)
}

/// `count` independent random vectors, with no further conditions.
pub fn random_vectors(count: usize, cfg: &GenConfig) -> Result<Vec<Vec3>, GenError> {
    let mut s = cfg.sampler()?;
    Ok((0..count).map(|_| s.vec3()).collect())
}

/// Six random vectors with every cyclic triple `uᵢ₋₁, uᵢ, uᵢ₊₁` linearly
/// independent, so the matrix of their consecutive cross products has no
/// vanishing `Δ`. No closure is imposed.
pub fn random_sextuple(cfg: &GenConfig) -> Result<Vec<Vec3>, GenError> {
    retry(cfg, "vector sextuple", |s| {
        let u: Vec<Vec3> = (0..6).map(|_| s.vec3()).collect();
        (0..6)
            .all(|i| !mixed(&u[(i + 5) % 6], &u[i], &u[(i + 1) % 6]).is_zero())
            .then_some(u)
    })
}

/// Output of [`regular_hexagon_via_lift`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedHexagon {
    /// Starts at the origin; edges are `v₁ = [u₆, u₁]`, `vᵢ₊₁ = [uᵢ, uᵢ₊₁]`.
    pub polygon: Polygon,
    /// The `uᵢ = Bᵢ − O`, recorded with `alpha = 1`.
    pub support: SupportSystem,
    /// `B₁ … B₆` after lifting the even ones to `z = 1`.
    pub base_points: Vec<Vec3>,
    /// `O = (0, 0, h)`.
    pub apex_height: Rational,
}

/// A regular hexagon built from its own support system: a zero-area planar
/// hexagon with even vertices lifted to `z = 1`, viewed from `(0, 0, h)`.
pub fn regular_hexagon_via_lift(cfg: &GenConfig) -> Result<LiftedHexagon, GenError> {
    retry(cfg, "lifted hexagon", |s| {
        let mut base = zero_area_hexagon(s)?;
        for b in base.iter_mut().skip(1).step_by(2) {
            b.z = Rational::one();
        }
        let h = s.rational();
        lift(base, h)
    })
}

fn lift(base: Vec<Vec3>, h: Rational) -> Option<LiftedHexagon> {
    let apex = Vec3::new(Rational::zero(), Rational::zero(), h.clone());
    let u: Vec<Vec3> = base.iter().map(|b| b - &apex).collect();
    if cross(&(&u[2] - &u[0]), &(&u[4] - &u[0])).is_zero() {
        return None;
    }
    let derived = DerivedPolygon::from_vertices(u.clone()).ok()?;
    if !derived.edge_vectors().is_generic() {
        return None;
    }
    let edges: Vec<Vec3> = (0..6).map(|i| cross(&u[(i + 5) % 6], &u[i])).collect();
    // Closure is checked here instead of assumed.
    let edges = EdgeVectors::new(edges).ok()?;
    if !edges.is_generic() {
        return None;
    }
    let polygon = Polygon::from_edges(Vec3::int(0, 0, 0), edges.as_slice()).ok()?;
    let support = SupportSystem::from_vectors(u, Rational::one());
    verify_support(&support, &polygon.edge_vectors()).ok()?;
    Some(LiftedHexagon {
        polygon,
        support,
        base_points: base,
        apex_height: h,
    })
}

/// A generic hexagon with `Δ` signs `(+, −, +, −, +, −)`. Samples of the
/// opposite phase are relabelled by one step.
pub fn alternating_sign_hexagon(cfg: &GenConfig) -> Result<Polygon, GenError> {
    retry(cfg, "alternating-sign hexagon", |s| {
        let p = generic_polygon(s, 6)?;
        let d = p.edge_vectors().deltas();
        let signs: Vec<Ordering> = d.as_slice().iter().map(Scalar::sign).collect();
        let phase = |first: Ordering| {
            signs
                .iter()
                .enumerate()
                .all(|(i, &x)| x == if i % 2 == 0 { first } else { first.reverse() })
        };
        if phase(Ordering::Greater) {
            Some(p)
        } else if phase(Ordering::Less) {
            Some(p.rotated(1))
        } else {
            None
        }
    })
}
