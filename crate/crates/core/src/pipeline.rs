//! End-to-end runs behind the command line: parse a polygon file, check
//! regularity, derive, analyze, and collect everything into a [`Report`].

use serde::{Deserialize, Serialize};

use crate::derived::{
    derive, derived_deltas, hex_type, planar_self_intersection, strongly_regular_check,
    two_plane_decomposition, DerivedPolygon, HexType, Planarity, PlaneDecomposition,
};
use crate::geom3::Vec3;
use crate::polygon::{
    delta_sign_pattern, derivability_defect, Deltas, Polygon, PolygonError, SignPattern, Violation,
};
use crate::regularity::{
    canonical_alpha, check_regularity, support_basis, support_system, verify_support,
    RegularityError, RegularityVerdict, SupportSystem,
};
use crate::scalar::{QuadExt, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("cannot parse polygon: {0}")]
    Parse(String),
    #[error("invalid polygon: {0}")]
    Polygon(#[from] PolygonError),
    #[error("polygon is not generic: {0}")]
    NonGeneric(Violation),
    #[error("polygon is not regular: {0}")]
    NotRegular(String),
    #[error("n = {0} is even; pass --alpha")]
    AlphaRequired(usize),
    #[error(transparent)]
    Regularity(#[from] RegularityError),
    #[error("support system check failed: {0}")]
    Support(String),
}

/// On-disk polygon: `vertices`, or closed `edges` starting at the origin.
/// Coordinates may be integers, `"p/q"` strings or decimal strings.
/// Unknown fields are ignored, so generator output reads back unchanged.
#[derive(Debug, Clone, Deserialize)]
struct PolygonFile {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    vertices: Option<Vec<Vec3>>,
    #[serde(default)]
    edges: Option<Vec<Vec3>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonInput {
    pub name: Option<String>,
    pub polygon: Polygon,
}

impl PolygonInput {
    pub fn new(polygon: Polygon) -> Self {
        PolygonInput {
            name: None,
            polygon,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, PipelineError> {
        let file: PolygonFile =
            serde_json::from_str(text).map_err(|e| PipelineError::Parse(e.to_string()))?;
        let polygon = match (file.vertices, file.edges) {
            (Some(vs), edges) => {
                let p = Polygon::new(vs)?;
                if let Some(e) = edges {
                    if p.edge_vectors().as_slice() != e.as_slice() {
                        return Err(PipelineError::Parse(
                            "`edges` disagree with `vertices`".into(),
                        ));
                    }
                }
                p
            }
            (None, Some(e)) => Polygon::from_edges(Vec3::int(0, 0, 0), &e)?,
            (None, None) => {
                return Err(PipelineError::Parse(
                    "expected a `vertices` or `edges` array".into(),
                ))
            }
        };
        Ok(PolygonInput {
            name: file.name,
            polygon,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub vertices: Vec<Vec3>,
    pub edges: Vec<Vec3>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genericity {
    pub generic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

/// A value computed over `Q` or over `Q(√d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exact<R, Q> {
    Rational(R),
    Quadratic(Q),
}

pub type ExactSupport = Exact<SupportSystem<Rational>, SupportSystem<QuadExt>>;
pub type ExactAnalysis = Exact<Analysis<Rational>, Analysis<QuadExt>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "S: Serialize + Clone",
    deserialize = "S: Deserialize<'de>"
))]
pub struct HexagonAnalysis<S = Rational> {
    pub strongly_regular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hex_type: Option<HexType<S>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planes: Option<PlaneDecomposition<S>>,
}

/// Structural facts about a polygon viewed as a candidate derived polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "S: Serialize + Clone",
    deserialize = "S: Deserialize<'de>"
))]
pub struct Analysis<S = Rational> {
    pub n: usize,
    pub vertices: Vec<Vec3<S>>,
    pub planarity: Planarity,
    pub area_vector: Vec3<S>,
    pub derivability_defect: Vec3<S>,
    pub deltas: Deltas<S>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_generic_at: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_intersecting: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hexagon: Option<HexagonAnalysis<S>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn analyze<S: Scalar>(p: &DerivedPolygon<S>) -> Analysis<S> {
    let planarity = p.planarity();
    let dd = derived_deltas(p);
    let mut notes = Vec::new();
    if p.len() < 4 {
        notes.push(format!("{} vertices are always coplanar", p.len()));
    }
    let self_intersecting = (p.len() == 4 && planarity.planar)
        .then(|| planar_self_intersection(p).ok())
        .flatten();
    let hexagon = (p.len() == 6 && dd.non_generic_at.is_none()).then(|| {
        let strongly_regular = strongly_regular_check(&dd.deltas).unwrap_or(false);
        let hex_type = strongly_regular
            .then(|| hex_type(&dd.deltas).ok())
            .flatten();
        let planes = match two_plane_decomposition(p) {
            Ok(d) => Some(d),
            Err(e) => {
                notes.push(format!("no two-plane decomposition: {e}"));
                None
            }
        };
        HexagonAnalysis {
            strongly_regular,
            hex_type,
            planes,
        }
    });
    if let Some(i) = dd.non_generic_at {
        notes.push(format!("Δ{i} = 0, the polygon is not generic"));
    }
    Analysis {
        n: p.len(),
        vertices: p.vertices().to_vec(),
        planarity,
        area_vector: p.area_vector(),
        derivability_defect: derivability_defect(p.edges()).expect("closed edges"),
        deltas: dd.deltas,
        non_generic_at: dd.non_generic_at,
        self_intersecting,
        hexagon,
        notes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeComparison {
    pub input: HexType,
    pub derived: HexType,
    pub same: bool,
}

/// Full output of a command. Every number is an exact scalar except inside
/// `oracle_results`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputSummary,
    pub genericity: Genericity,
    pub deltas: Deltas,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_pattern: Option<SignPattern>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<RegularityVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support_system: Option<ExactSupport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived_analysis: Option<ExactAnalysis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_comparison: Option<TypeComparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analysis: Option<Analysis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_results: Option<crate::oracle::FloatValidation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn is_regular(&self) -> bool {
        self.verdict.as_ref().is_some_and(|v| v.regular)
    }
}

/// Genericity, `Δ`, sign pattern and regularity verdict.
pub fn run_check(input: &PolygonInput) -> Report {
    let p = &input.polygon;
    let edges = p.edge_vectors();
    let violation = edges.check_generic().err();
    let deltas = edges.deltas();
    let mut notes = Vec::new();
    let (sign_pattern, verdict) = if violation.is_none() {
        (
            delta_sign_pattern(&deltas).ok(),
            check_regularity(&deltas).ok(),
        )
    } else {
        (None, None)
    };
    if let Some(v) = &violation {
        notes.push(format!("not generic: {v}"));
    }
    if let Some(v) = &verdict {
        notes.push(v.condition());
    }
    Report {
        input: InputSummary {
            name: input.name.clone(),
            n: p.len(),
            vertices: p.vertices().to_vec(),
            edges: edges.as_slice().to_vec(),
        },
        genericity: Genericity {
            generic: violation.is_none(),
            violation,
        },
        deltas,
        sign_pattern,
        verdict,
        support_system: None,
        derived_analysis: None,
        type_comparison: None,
        analysis: None,
        oracle_results: None,
        notes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaChoice {
    /// Any nonzero rational for even `n`; for odd `n` it must square to `α²`.
    Rational(Rational),
    /// `±√α²` for odd `n`; rational when `α²` is a rational square.
    CanonicalRoot { negative: bool },
}

/// Check, then build the support system for the chosen `α`, the derived
/// polygon and its analysis.
pub fn run_derive(input: &PolygonInput, alpha: &AlphaChoice) -> Result<Report, PipelineError> {
    let mut report = run_check(input);
    if let Some(v) = report.genericity.violation {
        return Err(PipelineError::NonGeneric(v));
    }
    let verdict = report.verdict.clone().expect("generic input has a verdict");
    if !verdict.regular {
        return Err(PipelineError::NotRegular(verdict.condition()));
    }
    let edges = input.polygon.edge_vectors();
    let basis = support_basis(&edges, &report.deltas)?;
    let rational_alpha = match alpha {
        AlphaChoice::Rational(a) => Some(a.clone()),
        AlphaChoice::CanonicalRoot { negative } => match &verdict.alpha_squared {
            None => return Err(PipelineError::AlphaRequired(verdict.n)),
            Some(a2) => a2.sqrt_exact().map(|r| if *negative { -r } else { r }),
        },
    };
    let (support, analysis) = match rational_alpha {
        Some(a) => {
            let s = support_system(&basis, &verdict, &a)?;
            verify_support(&s, &edges).map_err(|e| PipelineError::Support(e.to_string()))?;
            let a = analyze(&derive(&s));
            (Exact::Rational(s), Exact::Rational(a))
        }
        None => {
            let negative = matches!(alpha, AlphaChoice::CanonicalRoot { negative: true });
            let root = canonical_alpha(&verdict, negative)?;
            let s = support_system(&basis, &verdict, &root)?;
            verify_support(&s, &edges).map_err(|e| PipelineError::Support(e.to_string()))?;
            let a = analyze(&derive(&s));
            (Exact::Quadratic(s), Exact::Quadratic(a))
        }
    };
    if let Exact::Rational(a) = &analysis {
        report.type_comparison = type_comparison(&report.deltas, a);
        if let Some(t) = &report.type_comparison {
            report.notes.push(if t.same {
                "input and derived hexagons have the same type".into()
            } else {
                "input and derived hexagons have different types".into()
            });
        }
    }
    report.support_system = Some(support);
    report.derived_analysis = Some(analysis);
    Ok(report)
}

fn type_comparison(input: &Deltas, derived: &Analysis) -> Option<TypeComparison> {
    let input = hex_type(input).ok()?;
    let derived = derived.hexagon.as_ref()?.hex_type.clone()?;
    Some(TypeComparison {
        same: input == derived,
        input,
        derived,
    })
}

/// Check plus a structural analysis of the input polygon itself.
pub fn run_analyze(input: &PolygonInput) -> Report {
    let mut report = run_check(input);
    let p = DerivedPolygon::from_vertices(input.polygon.vertices().to_vec())
        .expect("input polygon has at least 3 vertices");
    report.analysis = Some(analyze(&p));
    report
}
