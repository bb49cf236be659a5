//! Scenario documents: JSON in, validated scenario out. Unknown fields,
//! unknown check identifiers and malformed values are rejected at parse time
//! with a diagnostic naming the offender.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use curvlab_core::submanifold::fixtures;
use curvlab_core::{Ambient, ImmersionPoint64, ModelName, ModelParams64};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read scenario file: {0}")]
    Io(String),
    #[error("scenario does not parse: {0}")]
    Parse(String),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("unknown check `{0}` (see `checks` in the scenario format)")]
    UnknownCheck(String),
    #[error("check `{check}` does not apply to `{kind}` scenarios")]
    WrongKind { check: String, kind: String },
}

fn field_err(field: &str, message: impl Into<String>) -> InputError {
    InputError::Field {
        field: field.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Model,
    Immersion,
    Arithmetic,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Model => "model",
            Kind::Immersion => "immersion",
            Kind::Arithmetic => "arithmetic",
        })
    }
}

/// Check identifiers accepted in scenario documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckId {
    // model
    GaussBonnet,
    K1perpValue,
    K1perpOracle,
    WeylBounds,
    EinsteinIdentity,
    MinimalVolume,
    LebrunChain,
    EinsteinObstruction,
    MonopoleBound,
    ChernNumberBound,
    // immersion
    SphereTheorem,
    K1perpLowerBound,
    RicciPairBounds,
    ScalarConsistency,
    AspertiCosta,
    LawsonSimons,
    // arithmetic
    HitchinThorpe,
    Kotschick,
    ConnectedSumEinstein,
    MonopoleBoundUser,
}

impl CheckId {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::GaussBonnet => "gauss_bonnet",
            CheckId::K1perpValue => "k1perp_value",
            CheckId::K1perpOracle => "k1perp_oracle",
            CheckId::WeylBounds => "weyl_bounds",
            CheckId::EinsteinIdentity => "einstein_identity",
            CheckId::MinimalVolume => "minimal_volume",
            CheckId::LebrunChain => "lebrun_chain",
            CheckId::EinsteinObstruction => "einstein_obstruction",
            CheckId::MonopoleBound => "monopole_bound",
            CheckId::ChernNumberBound => "chern_number_bound",
            CheckId::SphereTheorem => "sphere_theorem",
            CheckId::K1perpLowerBound => "k1perp_lower_bound",
            CheckId::RicciPairBounds => "ricci_pair_bounds",
            CheckId::ScalarConsistency => "scalar_consistency",
            CheckId::AspertiCosta => "asperti_costa",
            CheckId::LawsonSimons => "lawson_simons",
            CheckId::HitchinThorpe => "hitchin_thorpe",
            CheckId::Kotschick => "kotschick",
            CheckId::ConnectedSumEinstein => "connected_sum_einstein",
            CheckId::MonopoleBoundUser => "monopole_bound_user",
        }
    }

    pub fn kind(&self) -> Kind {
        use CheckId::*;
        match self {
            GaussBonnet | K1perpValue | K1perpOracle | WeylBounds | EinsteinIdentity
            | MinimalVolume | LebrunChain | EinsteinObstruction | MonopoleBound
            | ChernNumberBound => Kind::Model,
            SphereTheorem | K1perpLowerBound | RicciPairBounds | ScalarConsistency
            | AspertiCosta | LawsonSimons => Kind::Immersion,
            HitchinThorpe | Kotschick | ConnectedSumEinstein | MonopoleBoundUser => {
                Kind::Arithmetic
            }
        }
    }
}

impl FromStr for CheckId {
    type Err = InputError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use CheckId::*;
        Ok(match s {
            "gauss_bonnet" => GaussBonnet,
            "k1perp_value" => K1perpValue,
            "k1perp_oracle" => K1perpOracle,
            "weyl_bounds" => WeylBounds,
            "einstein_identity" => EinsteinIdentity,
            "minimal_volume" => MinimalVolume,
            "lebrun_chain" => LebrunChain,
            "einstein_obstruction" => EinsteinObstruction,
            "monopole_bound" => MonopoleBound,
            "chern_number_bound" => ChernNumberBound,
            "sphere_theorem" => SphereTheorem,
            "k1perp_lower_bound" => K1perpLowerBound,
            "ricci_pair_bounds" => RicciPairBounds,
            "scalar_consistency" => ScalarConsistency,
            "asperti_costa" => AspertiCosta,
            "lawson_simons" => LawsonSimons,
            "hitchin_thorpe" => HitchinThorpe,
            "kotschick" => Kotschick,
            "connected_sum_einstein" => ConnectedSumEinstein,
            "monopole_bound_user" => MonopoleBoundUser,
            other => return Err(InputError::UnknownCheck(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDto {
    weingarten: Vec<[[f64; 4]; 4]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDto {
    name: Option<String>,
    kind: Kind,
    // model scenarios
    model: Option<String>,
    params: Option<BTreeMap<String, serde_json::Value>>,
    half_conformally_flat: Option<bool>,
    beta_sq: Option<f64>,
    // immersion scenarios
    /// `"sphere"`, `"euclidean"`, or a number `c >= 0`.
    ambient: Option<serde_json::Value>,
    fixture: Option<String>,
    fixture_param: Option<f64>,
    points: Option<Vec<PointDto>>,
    pi1_finite: Option<bool>,
    // arithmetic scenarios
    chi: Option<i64>,
    tau: Option<i64>,
    simplicial_volume: Option<f64>,
    e: Option<i64>,
    j: Option<i64>,
    integral_lhs: Option<f64>,
    // common
    checks: Vec<String>,
    tol: Option<f64>,
    samples: Option<usize>,
    seed: Option<u64>,
}

/// Ambient geometry of an immersion scenario: the named spaces drive the
/// sphere-theorem verdict, arbitrary `c >= 0` drives the pointwise checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AmbientSpec {
    Named(Ambient),
    Curvature(f64),
}

impl AmbientSpec {
    pub fn curvature(&self) -> f64 {
        match self {
            AmbientSpec::Named(a) => a.curvature(),
            AmbientSpec::Curvature(c) => *c,
        }
    }

    pub fn named(&self) -> Option<Ambient> {
        match self {
            AmbientSpec::Named(a) => Some(*a),
            AmbientSpec::Curvature(c) if *c == 1.0 => Some(Ambient::Sphere),
            AmbientSpec::Curvature(c) if *c == 0.0 => Some(Ambient::Euclidean),
            AmbientSpec::Curvature(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Payload {
    Model {
        name: ModelName,
        params: ModelParams64,
        half_conformally_flat: Option<bool>,
        beta_sq: Option<f64>,
    },
    Immersion {
        ambient: AmbientSpec,
        points: Vec<ImmersionPoint64>,
        pi1_finite: bool,
    },
    Arithmetic {
        chi: Option<i64>,
        tau: Option<i64>,
        simplicial_volume: f64,
        beta_sq: Option<f64>,
        e: Option<i64>,
        j: Option<i64>,
        integral_lhs: Option<f64>,
    },
}

/// A validated scenario, ready to run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub kind: Kind,
    pub payload: Payload,
    pub checks: Vec<CheckId>,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
}

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 200_000;

fn param_f64(value: &serde_json::Value, key: &str) -> Result<f64, InputError> {
    value
        .as_f64()
        .ok_or_else(|| field_err(&format!("params.{key}"), "expected a number"))
}

fn model_params(
    raw: Option<&BTreeMap<String, serde_json::Value>>,
) -> Result<ModelParams64, InputError> {
    let mut params = ModelParams64::default();
    let Some(map) = raw else {
        return Ok(params);
    };
    for (key, value) in map {
        match key.as_str() {
            "r" | "radius" => params.radius = Some(param_f64(value, key)?),
            "kappa" | "kappa1" | "c1" | "curvature" => {
                params.curvature = Some(param_f64(value, key)?)
            }
            "kappa2" | "c2" | "curvature2" => params.curvature2 = Some(param_f64(value, key)?),
            "hol" | "holomorphic" => params.holomorphic = Some(param_f64(value, key)?),
            "chi" => {
                params.chi = Some(value.as_i64().ok_or_else(|| {
                    field_err("params.chi", "expected an integer")
                })?)
            }
            other => {
                return Err(field_err(
                    &format!("params.{other}"),
                    "unknown model parameter (radius/r, curvature/kappa/c1, curvature2/kappa2/c2, holomorphic/hol, chi)",
                ))
            }
        }
    }
    Ok(params)
}

fn immersion_points(dto: &ScenarioDto, c: f64) -> Result<Vec<ImmersionPoint64>, InputError> {
    if let Some(fixture) = &dto.fixture {
        if dto.points.is_some() {
            return Err(field_err(
                "points",
                "give either `fixture` or `points`, not both",
            ));
        }
        let point = match fixture.as_str() {
            "clifford" => fixtures::clifford_product::<f64>(),
            "umbilic_s4" => fixtures::umbilic_hypersphere(dto.fixture_param.unwrap_or(1.0)),
            "umbilic_in_s5" => fixtures::umbilic_in_unit_sphere(dto.fixture_param.unwrap_or(0.5)),
            other => {
                return Err(field_err(
                    "fixture",
                    format!("unknown fixture `{other}` (clifford, umbilic_s4, umbilic_in_s5)"),
                ))
            }
        };
        if (point.ambient_curvature() - c).abs() > 1e-12 {
            return Err(field_err(
                "ambient",
                format!(
                    "fixture `{fixture}` lives in ambient curvature {}, scenario says {c}",
                    point.ambient_curvature()
                ),
            ));
        }
        return Ok(vec![point]);
    }
    let Some(points) = &dto.points else {
        return Err(field_err("points", "immersion scenarios need `points` or `fixture`"));
    };
    if points.is_empty() {
        return Err(field_err("points", "at least one point is required"));
    }
    points
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            ImmersionPoint64::new(c, p.weingarten.clone()).map_err(|e| {
                field_err(&format!("points[{idx}]"), e.to_string())
            })
        })
        .collect()
}

impl Scenario {
    pub fn from_json(text: &str, fallback_name: &str) -> Result<Self, InputError> {
        let dto: ScenarioDto = serde_json::from_str(text)
            .map_err(|e| InputError::Parse(e.to_string()))?;
        Self::from_dto(dto, fallback_name)
    }

    fn from_dto(dto: ScenarioDto, fallback_name: &str) -> Result<Self, InputError> {
        if dto.checks.is_empty() {
            return Err(field_err("checks", "at least one check is required"));
        }
        let mut checks = Vec::with_capacity(dto.checks.len());
        for raw in &dto.checks {
            let id: CheckId = raw.parse()?;
            if id.kind() != dto.kind {
                return Err(InputError::WrongKind {
                    check: raw.clone(),
                    kind: dto.kind.to_string(),
                });
            }
            if !checks.contains(&id) {
                checks.push(id);
            }
        }
        let tol = dto.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0) {
            return Err(field_err("tol", format!("must be positive, got {tol}")));
        }
        let samples = dto.samples.unwrap_or(DEFAULT_SAMPLES);
        if samples == 0 {
            return Err(field_err("samples", "must be at least 1"));
        }
        let seed = dto.seed.unwrap_or(0);

        let payload = match dto.kind {
            Kind::Model => {
                let name: ModelName = dto
                    .model
                    .as_deref()
                    .ok_or_else(|| field_err("model", "model scenarios need a model name"))?
                    .parse()
                    .map_err(|e: curvlab_core::ModelError| field_err("model", e.to_string()))?;
                Payload::Model {
                    name,
                    params: model_params(dto.params.as_ref())?,
                    half_conformally_flat: dto.half_conformally_flat,
                    beta_sq: dto.beta_sq,
                }
            }
            Kind::Immersion => {
                let ambient = match &dto.ambient {
                    Some(serde_json::Value::String(s)) => match s.as_str() {
                        "sphere" => AmbientSpec::Named(Ambient::Sphere),
                        "euclidean" => AmbientSpec::Named(Ambient::Euclidean),
                        other => {
                            return Err(field_err(
                                "ambient",
                                format!("unknown ambient `{other}` (sphere, euclidean, or a number c >= 0)"),
                            ))
                        }
                    },
                    Some(value) => {
                        let c = value.as_f64().ok_or_else(|| {
                            field_err("ambient", "expected \"sphere\", \"euclidean\" or a number")
                        })?;
                        if c < 0.0 {
                            return Err(field_err(
                                "ambient",
                                format!("ambient curvature must be nonnegative, got {c}"),
                            ));
                        }
                        AmbientSpec::Curvature(c)
                    }
                    None => {
                        return Err(field_err("ambient", "immersion scenarios need `ambient`"))
                    }
                };
                let points = immersion_points(&dto, ambient.curvature())?;
                Payload::Immersion {
                    ambient,
                    points,
                    pi1_finite: dto.pi1_finite.unwrap_or(false),
                }
            }
            Kind::Arithmetic => Payload::Arithmetic {
                chi: dto.chi,
                tau: dto.tau,
                simplicial_volume: dto.simplicial_volume.unwrap_or(0.0),
                beta_sq: dto.beta_sq,
                e: dto.e,
                j: dto.j,
                integral_lhs: dto.integral_lhs,
            },
        };

        Ok(Scenario {
            name: dto.name.unwrap_or_else(|| fallback_name.to_string()),
            kind: dto.kind,
            payload,
            checks,
            tol,
            samples,
            seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_model_scenario() {
        let text = r#"{
            "kind": "model",
            "model": "ch2",
            "params": {"chi": 2},
            "checks": ["lebrun_chain", "monopole_bound"],
            "seed": 7
        }"#;
        let sc = Scenario::from_json(text, "file").unwrap();
        assert_eq!(sc.name, "file");
        assert_eq!(sc.checks, vec![CheckId::LebrunChain, CheckId::MonopoleBound]);
        assert_eq!(sc.tol, DEFAULT_TOL);
        assert_eq!(sc.samples, DEFAULT_SAMPLES);
        assert_eq!(sc.seed, 7);
        match sc.payload {
            Payload::Model { name, params, .. } => {
                assert_eq!(name, ModelName::Ch2);
                assert_eq!(params.chi, Some(2));
            }
            other => panic!("wrong payload {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_checks_and_fields() {
        let text = r#"{"kind": "model", "model": "s4", "checks": ["bogus"]}"#;
        assert!(matches!(
            Scenario::from_json(text, "f"),
            Err(InputError::UnknownCheck(name)) if name == "bogus"
        ));
        let text = r#"{"kind": "model", "model": "s4", "checks": ["gauss_bonnet"], "surprise": 1}"#;
        match Scenario::from_json(text, "f") {
            Err(InputError::Parse(msg)) => assert!(msg.contains("surprise"), "{msg}"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_kind_mismatch_and_bad_values() {
        let text = r#"{"kind": "model", "model": "s4", "checks": ["hitchin_thorpe"]}"#;
        assert!(matches!(
            Scenario::from_json(text, "f"),
            Err(InputError::WrongKind { .. })
        ));
        let text = r#"{"kind": "model", "model": "s4", "checks": ["gauss_bonnet"], "tol": 0.0}"#;
        assert!(matches!(
            Scenario::from_json(text, "f"),
            Err(InputError::Field { field, .. }) if field == "tol"
        ));
        let text = r#"{"kind": "model", "model": "nowhere", "checks": ["gauss_bonnet"]}"#;
        assert!(matches!(
            Scenario::from_json(text, "f"),
            Err(InputError::Field { field, .. }) if field == "model"
        ));
    }

    #[test]
    fn parses_an_immersion_fixture_scenario() {
        let text = r#"{
            "kind": "immersion",
            "ambient": "sphere",
            "fixture": "clifford",
            "checks": ["sphere_theorem"],
            "samples": 20000
        }"#;
        let sc = Scenario::from_json(text, "clifford").unwrap();
        match &sc.payload {
            Payload::Immersion { ambient, points, pi1_finite } => {
                assert_eq!(ambient.named(), Some(Ambient::Sphere));
                assert_eq!(points.len(), 1);
                assert!(!pi1_finite);
            }
            other => panic!("wrong payload {other:?}"),
        }
    }

    #[test]
    fn rejects_fixture_ambient_mismatch() {
        let text = r#"{
            "kind": "immersion",
            "ambient": "euclidean",
            "fixture": "clifford",
            "checks": ["sphere_theorem"]
        }"#;
        assert!(matches!(
            Scenario::from_json(text, "f"),
            Err(InputError::Field { field, .. }) if field == "ambient"
        ));
    }

    #[test]
    fn parses_explicit_immersion_points() {
        let text = r#"{
            "kind": "immersion",
            "ambient": 1.0,
            "points": [{"weingarten": [[[0.5,0,0,0],[0,0.5,0,0],[0,0,0.5,0],[0,0,0,0.5]]]}],
            "pi1_finite": true,
            "checks": ["k1perp_lower_bound"]
        }"#;
        let sc = Scenario::from_json(text, "f").unwrap();
        match &sc.payload {
            Payload::Immersion { points, .. } => assert_eq!(points[0].codimension(), 1),
            other => panic!("wrong payload {other:?}"),
        }
    }

    #[test]
    fn parses_arithmetic_scenarios() {
        let text = r#"{
            "kind": "arithmetic",
            "chi": 24, "tau": 16,
            "e": 9, "j": 5,
            "checks": ["hitchin_thorpe", "connected_sum_einstein"]
        }"#;
        let sc = Scenario::from_json(text, "f").unwrap();
        assert_eq!(sc.checks.len(), 2);
    }
}
