//! Randomized property suites.
//!
//! Sample `i` of a suite draws its fixture from `GenConfig::new(seed)
//! .for_sample(i)`, so results do not depend on thread scheduling. Samples
//! run in parallel; counts and the first counterexample (lowest index) are
//! merged in index order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::derived::{
    derive, derived_deltas, hex_type, planar_self_intersection, second_derivative_type,
    strongly_regular_check, two_plane_decomposition, HexType,
};
use crate::generators::{
    alternating_sign_hexagon, random_generic_polygon, random_regular_pentagon, random_sextuple,
    random_vectors, regular_hexagon_via_lift, GenConfig,
};
use crate::oracle::{
    auto_identity_check, closure_defect, factored_deltas, minor_identities, SupportMatrix,
};
use crate::polygon::{derivability_defect, EdgeVectors};
use crate::regularity::{
    canonical_alpha, check_regularity, double_cross_identity, support_basis, support_system,
    verify_support, SupportSystem,
};
use crate::scalar::{Rational, Scalar};

/// Scaling parameters tried on every even polygon.
pub fn alpha_set() -> [Rational; 4] {
    [
        Rational::from(1),
        Rational::from(2),
        Rational::from(-3),
        Rational::new(1, 2).expect("nonzero denominator"),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    #[serde(rename = "thm31")]
    Quadrangle,
    #[serde(rename = "thm41")]
    Pentagon,
    #[serde(rename = "thm51")]
    HexagonType,
    #[serde(rename = "thm52")]
    SecondDerivative,
    #[serde(rename = "sec6")]
    TwoPlanes,
    #[serde(rename = "eq2")]
    DoubleCross,
    #[serde(rename = "auto-id")]
    AutoIdentity,
    #[serde(rename = "eq4")]
    MinorIdentities,
    #[serde(rename = "alt-sign")]
    AlternatingSign,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Quadrangle,
        Suite::Pentagon,
        Suite::HexagonType,
        Suite::SecondDerivative,
        Suite::TwoPlanes,
        Suite::DoubleCross,
        Suite::AutoIdentity,
        Suite::MinorIdentities,
        Suite::AlternatingSign,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Quadrangle => "thm31",
            Suite::Pentagon => "thm41",
            Suite::HexagonType => "thm51",
            Suite::SecondDerivative => "thm52",
            Suite::TwoPlanes => "sec6",
            Suite::DoubleCross => "eq2",
            Suite::AutoIdentity => "auto-id",
            Suite::MinorIdentities => "eq4",
            Suite::AlternatingSign => "alt-sign",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Quadrangle => "derived quadrangles are planar, zero-area and self-intersecting",
            Suite::Pentagon => "derived regular pentagons are planar with zero area in Q(√α²)",
            Suite::HexagonType => "derived hexagons are strongly-regular with α-independent type",
            Suite::SecondDerivative => "second derivatives keep the type; shift relations hold",
            Suite::TwoPlanes => {
                "derived hexagons split into two parallel planes, zero projected area"
            }
            Suite::DoubleCross => "[[a, b], [b, c]] = (a, [b, c]) b",
            Suite::AutoIdentity => {
                "Δ1Δ3Δ5 = Δ2Δ4Δ6 for the cross-product matrix of any six vectors"
            }
            Suite::MinorIdentities => {
                "first-degree minor identities of the derived-edge matrix vanish"
            }
            Suite::AlternatingSign => "alternating-sign hexagons are not regular",
        }
    }

    fn check(self, cfg: &GenConfig) -> Result<(), Value> {
        match self {
            Suite::Quadrangle => quadrangles(cfg),
            Suite::Pentagon => pentagons(cfg),
            Suite::HexagonType => hexagon_types(cfg),
            Suite::SecondDerivative => second_derivatives(cfg),
            Suite::TwoPlanes => two_planes(cfg),
            Suite::DoubleCross => double_cross(cfg),
            Suite::AutoIdentity => auto_identity(cfg),
            Suite::MinorIdentities => minor_identity_pair(cfg),
            Suite::AlternatingSign => alternating_signs(cfg),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite `{s}`; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub description: String,
    pub seed: u64,
    pub samples: usize,
    pub passed: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.failed == 0
    }
}

pub fn run_suite(suite: Suite, samples: usize, base: &GenConfig) -> SuiteReport {
    let outcomes: Vec<Result<(), Value>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let cfg = base.for_sample(i);
            suite
                .check(&cfg)
                .map_err(|detail| json!({"sample": i, "sample_seed": cfg.seed, "detail": detail}))
        })
        .collect();
    let failed = outcomes.iter().filter(|o| o.is_err()).count();
    let counterexample = outcomes.into_iter().find_map(Result::err);
    SuiteReport {
        suite,
        description: suite.description().into(),
        seed: base.seed,
        samples,
        passed: samples - failed,
        failed,
        counterexample,
    }
}

fn fail(what: &str, data: impl Serialize) -> Value {
    json!({"failed": what, "data": serde_json::to_value(data).unwrap_or(Value::Null)})
}

fn gen_err(e: impl fmt::Display) -> Value {
    json!({"failed": "generator", "error": e.to_string()})
}

fn ensure(ok: bool, what: &str, data: impl Serialize) -> Result<(), Value> {
    if ok {
        Ok(())
    } else {
        Err(fail(what, data))
    }
}

fn quadrangles(cfg: &GenConfig) -> Result<(), Value> {
    let p = random_generic_polygon(4, cfg).map_err(gen_err)?;
    let e = p.edge_vectors();
    let d = e.deltas();
    let d1 = d.delta(1).clone();
    ensure(
        d.delta(2) == &-d1.clone() && d.delta(3) == &d1 && d.delta(4) == &-d1.clone(),
        "delta pattern (Δ, −Δ, Δ, −Δ)",
        (&p, &d),
    )?;
    let verdict = check_regularity(&d).map_err(|e| fail(&e.to_string(), &p))?;
    let basis = support_basis(&e, &d).map_err(|e| fail(&e.to_string(), &p))?;
    for alpha in alpha_set() {
        let s = support_system(&basis, &verdict, &alpha).map_err(|e| fail(&e.to_string(), &p))?;
        let q = derive(&s);
        ensure(q.is_planar(), "derived quadrangle planar", (&p, &q))?;
        ensure(
            q.area_vector().is_zero(),
            "derived quadrangle zero area",
            (&p, &q),
        )?;
        ensure(
            planar_self_intersection(&q) == Ok(true),
            "derived quadrangle self-intersecting",
            (&p, &q),
        )?;
    }
    Ok(())
}

fn pentagons(cfg: &GenConfig) -> Result<(), Value> {
    let p = random_regular_pentagon(cfg).map_err(gen_err)?;
    let e = p.edge_vectors();
    let d = e.deltas();
    let verdict = check_regularity(&d).map_err(|e| fail(&e.to_string(), &p))?;
    ensure(verdict.regular, "pentagon regular", (&p, &d))?;
    let basis = support_basis(&e, &d).map_err(|e| fail(&e.to_string(), &p))?;
    for negative in [false, true] {
        let alpha = canonical_alpha(&verdict, negative).map_err(|e| fail(&e.to_string(), &p))?;
        let s = support_system(&basis, &verdict, &alpha).map_err(|e| fail(&e.to_string(), &p))?;
        ensure(verify_support(&s, &e).is_ok(), "support system", (&p, &s))?;
        let q = derive(&s);
        ensure(q.is_planar(), "derived pentagon planar", (&p, &q))?;
        ensure(
            q.area_vector().is_zero(),
            "derived pentagon zero area",
            (&p, &q),
        )?;
    }
    Ok(())
}

/// A lifted hexagon and its derived hexagons, one per `α` in [`alpha_set`].
struct HexFixture {
    edges: EdgeVectors,
    systems: Vec<SupportSystem>,
}

fn hex_fixture(cfg: &GenConfig) -> Result<HexFixture, Value> {
    let lh = regular_hexagon_via_lift(cfg).map_err(gen_err)?;
    let e = lh.polygon.edge_vectors();
    let d = e.deltas();
    let verdict = check_regularity(&d).map_err(|x| fail(&x.to_string(), &lh))?;
    ensure(verdict.regular, "lifted hexagon regular", &lh)?;
    let basis = support_basis(&e, &d).map_err(|x| fail(&x.to_string(), &lh))?;
    let systems = alpha_set()
        .iter()
        .map(|a| support_system(&basis, &verdict, a).map_err(|x| fail(&x.to_string(), &lh)))
        .collect::<Result<Vec<_>, _>>()?;
    for s in &systems {
        ensure(verify_support(s, &e).is_ok(), "support system", (&lh, s))?;
    }
    Ok(HexFixture { edges: e, systems })
}

fn hexagon_types(cfg: &GenConfig) -> Result<(), Value> {
    let fx = hex_fixture(cfg)?;
    let mut types: Vec<HexType> = Vec::new();
    for s in &fx.systems {
        let q = derive(s);
        let dd = derived_deltas(&q);
        ensure(
            dd.non_generic_at.is_none(),
            "derived hexagon generic",
            (&fx.edges, &q),
        )?;
        ensure(
            strongly_regular_check(&dd.deltas) == Ok(true),
            "strongly-regular",
            (&fx.edges, &s.alpha, &dd.deltas),
        )?;
        types.push(hex_type(&dd.deltas).map_err(|e| fail(&e.to_string(), &q))?);
    }
    ensure(
        types.windows(2).all(|w| w[0] == w[1]),
        "type independent of α",
        (&fx.edges, &types),
    )
}

fn second_derivatives(cfg: &GenConfig) -> Result<(), Value> {
    let fx = hex_fixture(cfg)?;
    let alphas = alpha_set();
    for (k, a1) in alphas.iter().enumerate() {
        let a2 = &alphas[(k + 1) % alphas.len()];
        let sd = second_derivative_type(&fx.edges, a1, a2)
            .map_err(|e| fail(&e.to_string(), (&fx.edges, a1, a2)))?;
        ensure(
            sd.types_match(),
            "second derivative type",
            (&fx.edges, a1, a2, &sd.first_type, &sd.second_type),
        )?;
        ensure(
            sd.shift_relations() == [true; 3],
            "shift relations",
            (&fx.edges, a1, a2, &sd.first_deltas, &sd.second_deltas),
        )?;
    }
    Ok(())
}

fn two_planes(cfg: &GenConfig) -> Result<(), Value> {
    let fx = hex_fixture(cfg)?;
    for s in &fx.systems {
        let q = derive(s);
        let dec = two_plane_decomposition(&q).map_err(|e| fail(&e.to_string(), &q))?;
        ensure(dec.parallel_planes, "equal even offsets", (&q, &dec))?;
        ensure(
            dec.odd_offsets.iter().all(Scalar::is_zero),
            "odd vertices on the anchor plane",
            (&q, &dec),
        )?;
        ensure(
            dec.projected_area_vector.is_zero(),
            "zero projected area",
            (&q, &dec),
        )?;
        let defect = derivability_defect(q.edges()).map_err(|e| fail(&e.to_string(), &q))?;
        ensure(
            defect.is_zero(),
            "derived hexagon derivability defect",
            (&q, &defect),
        )?;
    }
    Ok(())
}

fn double_cross(cfg: &GenConfig) -> Result<(), Value> {
    let v = random_vectors(3, cfg).map_err(gen_err)?;
    let (lhs, rhs) = double_cross_identity(&v[0], &v[1], &v[2]);
    ensure(
        lhs == rhs,
        "[[a, b], [b, c]] = (a, [b, c]) b",
        (&v, &lhs, &rhs),
    )
}

fn auto_identity(cfg: &GenConfig) -> Result<(), Value> {
    let u = random_sextuple(cfg).map_err(gen_err)?;
    let (odd, even) = auto_identity_check(&u).map_err(|e| fail(&e.to_string(), &u))?;
    ensure(odd == even, "Δ1Δ3Δ5 = Δ2Δ4Δ6", (&u, &odd, &even))?;
    let m = SupportMatrix::build(&u).map_err(|e| fail(&e.to_string(), &u))?;
    let factored = factored_deltas(&u).map_err(|e| fail(&e.to_string(), &u))?;
    ensure(m.deltas() == factored, "factored Δ", (&u, &factored))
}

fn minor_identity_pair(cfg: &GenConfig) -> Result<(), Value> {
    let fx = hex_fixture(cfg)?;
    for s in &fx.systems {
        let u = &s.uprime;
        let defect = closure_defect(u).map_err(|e| fail(&e.to_string(), u))?;
        ensure(defect.is_zero(), "rows of M sum to zero", (u, &defect))?;
        let mp = SupportMatrix::from_derived_edges(u).map_err(|e| fail(&e.to_string(), u))?;
        let (a, b) = minor_identities(u, &mp).map_err(|e| fail(&e.to_string(), u))?;
        ensure(a.is_zero() && b.is_zero(), "minor identities", (u, &a, &b))?;
    }
    Ok(())
}

fn alternating_signs(cfg: &GenConfig) -> Result<(), Value> {
    let p = alternating_sign_hexagon(cfg).map_err(gen_err)?;
    let d = p.edge_vectors().deltas();
    let signs: Vec<i8> = d.as_slice().iter().map(Scalar::sign_i8).collect();
    ensure(signs == [1, -1, 1, -1, 1, -1], "sign pattern", (&p, &signs))?;
    let verdict = check_regularity(&d).map_err(|e| fail(&e.to_string(), &p))?;
    ensure(!verdict.regular, "not regular", (&p, &verdict))
}
