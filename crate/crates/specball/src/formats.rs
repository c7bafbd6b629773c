//! JSON file formats. Complex numbers are `[re, im]` pairs throughout.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use specball_core::discgeo::{BlaschkeProduct, BlaschkeZero};
use specball_core::funcalc::PredictedMinpoly;
use specball_core::isospec::PathReport;
use specball_core::nptest::{Candidate, Containment, DiscTest, KReport, Status, Verdict, Witness};
use specball_core::{
    ComplexPoly, Config, HoloFunction, InterpolationData, Matrix, SpectralData, SymPoint, TablePoint, C64,
};

/// A decoding or validation failure, located by a JSON pointer into the input.
#[derive(Debug, Clone, PartialEq)]
pub struct FormatError {
    pub pointer: String,
    pub message: String,
}

impl FormatError {
    fn at(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Self { pointer: pointer.into(), message: message.into() }
    }

    fn nested(self, prefix: &str) -> Self {
        Self { pointer: format!("{prefix}{}", self.pointer), message: self.message }
    }
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pointer.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{} (at {})", self.message, self.pointer)
        }
    }
}

/// Parses `text` as `T`, reporting the failing field as a JSON pointer.
pub fn decode<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_of(e.path());
        FormatError::at(pointer, e.into_inner().to_string())
    })
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    out
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub n: usize,
    pub data: Vec<Vec<C64>>,
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<Matrix, FormatError> {
        if self.n == 0 {
            return Err(FormatError::at("/n", "matrix dimension must be positive"));
        }
        if self.data.len() != self.n {
            return Err(FormatError::at("/data", format!("expected {} rows, found {}", self.n, self.data.len())));
        }
        for (i, row) in self.data.iter().enumerate() {
            if row.len() != self.n {
                return Err(FormatError::at(
                    format!("/data/{i}"),
                    format!("expected {} entries, found {}", self.n, row.len()),
                ));
            }
            if let Some(j) = row.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(FormatError::at(format!("/data/{i}/{j}"), "entry is not finite"));
            }
        }
        Matrix::from_rows(&self.data).map_err(|e| FormatError::at("/data", e.to_string()))
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Self { n: m.n(), data: m.rows() }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub coeffs: Vec<C64>,
}

impl PolyJson {
    pub fn from_poly(p: &ComplexPoly) -> Self {
        Self { coeffs: p.coeffs().to_vec() }
    }

    pub fn to_poly(&self) -> ComplexPoly {
        ComplexPoly::new(self.coeffs.clone())
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SymPointJson {
    pub coords: Vec<C64>,
}

impl SymPointJson {
    pub fn to_point(&self) -> Result<SymPoint, FormatError> {
        SymPoint::new(self.coords.clone()).map_err(|e| FormatError::at("/coords", e.to_string()))
    }

    pub fn from_point(x: &SymPoint) -> Self {
        Self { coords: x.coords.clone() }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ZeroJson {
    pub a: C64,
    pub mult: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BlaschkeJson {
    pub zeros: Vec<ZeroJson>,
    pub front: C64,
}

impl BlaschkeJson {
    pub fn to_blaschke(&self) -> Result<BlaschkeProduct, FormatError> {
        for (i, z) in self.zeros.iter().enumerate() {
            if !(z.a.norm() < 1.0) {
                return Err(FormatError::at(format!("/zeros/{i}/a"), "zero is not in the open unit disc"));
            }
            if z.mult == 0 {
                return Err(FormatError::at(format!("/zeros/{i}/mult"), "multiplicity must be positive"));
            }
        }
        let zeros = self.zeros.iter().map(|z| BlaschkeZero { a: z.a, mult: z.mult }).collect();
        BlaschkeProduct::new(zeros, self.front).map_err(|e| FormatError::at("/front", e.to_string()))
    }

    pub fn from_blaschke(b: &BlaschkeProduct) -> Self {
        Self {
            zeros: b.zeros().iter().map(|z| ZeroJson { a: z.a, mult: z.mult }).collect(),
            front: b.front(),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TablePointJson {
    pub at: C64,
    /// `f(at), f′(at), f″(at), …`
    pub derivs: Vec<C64>,
}

/// Tagged union on `"kind"`. Deserialization goes through [`FunctionJson::decode_value`]
/// so errors inside a variant keep their JSON pointer.
#[derive(Serialize, Debug, Clone, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FunctionJson {
    Polynomial { coeffs: Vec<C64> },
    Rational { num: PolyJson, den: PolyJson },
    Blaschke { zeros: Vec<ZeroJson>, front: C64 },
    Table { points: Vec<TablePointJson> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialFields {
    coeffs: Vec<C64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalFields {
    num: PolyJson,
    den: PolyJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFields {
    points: Vec<TablePointJson>,
}

fn from_value<T: DeserializeOwned>(v: Value) -> Result<T, FormatError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let pointer = pointer_of(e.path());
        FormatError::at(pointer, e.into_inner().to_string())
    })
}

impl<'de> Deserialize<'de> for FunctionJson {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        FunctionJson::decode_value(v).map_err(serde::de::Error::custom)
    }
}

impl FunctionJson {
    pub fn decode(text: &str) -> Result<Self, FormatError> {
        let v: Value = decode(text)?;
        Self::decode_value(v)
    }

    pub fn decode_value(v: Value) -> Result<Self, FormatError> {
        let Value::Object(mut map) = v else {
            return Err(FormatError::at("", "expected a function object"));
        };
        let kind = match map.remove("kind") {
            Some(Value::String(k)) => k,
            Some(_) => return Err(FormatError::at("/kind", "`kind` must be a string")),
            None => return Err(FormatError::at("/kind", "missing field `kind`")),
        };
        let rest = Value::Object(map);
        match kind.as_str() {
            "polynomial" => from_value::<PolynomialFields>(rest).map(|f| FunctionJson::Polynomial { coeffs: f.coeffs }),
            "rational" => from_value::<RationalFields>(rest).map(|f| FunctionJson::Rational { num: f.num, den: f.den }),
            "blaschke" => {
                from_value::<BlaschkeJson>(rest).map(|f| FunctionJson::Blaschke { zeros: f.zeros, front: f.front })
            }
            "table" => from_value::<TableFields>(rest).map(|f| FunctionJson::Table { points: f.points }),
            other => Err(FormatError::at(
                "/kind",
                format!("unknown kind `{other}`, expected polynomial, rational, blaschke or table"),
            )),
        }
    }

    pub fn to_function(&self) -> Result<HoloFunction, FormatError> {
        match self {
            FunctionJson::Polynomial { coeffs } => Ok(HoloFunction::Polynomial(ComplexPoly::new(coeffs.clone()))),
            FunctionJson::Rational { num, den } => {
                HoloFunction::rational(num.to_poly(), den.to_poly()).map_err(|e| FormatError::at("/den", e.to_string()))
            }
            FunctionJson::Blaschke { zeros, front } => {
                let b = BlaschkeJson { zeros: zeros.clone(), front: *front };
                Ok(HoloFunction::Blaschke(b.to_blaschke()?))
            }
            FunctionJson::Table { points } => HoloFunction::table(
                points.iter().map(|p| TablePoint { at: p.at, derivs: p.derivs.clone() }).collect(),
            )
            .map_err(|e| FormatError::at("/points", e.to_string())),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DatasetJson {
    pub nodes: Vec<C64>,
    pub targets: Vec<MatrixJson>,
}

impl DatasetJson {
    pub fn to_data(&self) -> Result<InterpolationData, FormatError> {
        let targets = self
            .targets
            .iter()
            .enumerate()
            .map(|(i, t)| t.to_matrix().map_err(|e| e.nested(&format!("/targets/{i}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(InterpolationData::new(self.nodes.clone(), targets))
    }

    pub fn from_data(data: &InterpolationData) -> Self {
        Self { nodes: data.nodes.clone(), targets: data.targets.iter().map(MatrixJson::from_matrix).collect() }
    }
}

/// Partial configuration; absent fields keep their previous value.
#[derive(Serialize, Deserialize, Debug, Clone, Default, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    pub cluster_tol: Option<f64>,
    pub rank_tol: Option<f64>,
    pub verdict_margin: Option<f64>,
    pub pole_tol: Option<f64>,
    pub eps_boundary: Option<f64>,
    pub node_tol: Option<f64>,
    pub path_tol: Option<f64>,
    pub schwarz_tol: Option<f64>,
    pub root_tol: Option<f64>,
    pub dep_tol: Option<f64>,
    pub ord_tol: Option<f64>,
    pub zero_tol: Option<f64>,
    pub unimodular_tol: Option<f64>,
    pub oracle_max_n: Option<usize>,
    pub grid_points: Option<usize>,
    pub max_n: Option<usize>,
    pub seed: Option<u64>,
}

impl ConfigJson {
    pub fn apply(&self, cfg: &mut Config) {
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { cfg.$f = v; })* };
        }
        set!(
            cluster_tol, rank_tol, verdict_margin, pole_tol, eps_boundary, node_tol, path_tol, schwarz_tol,
            root_tol, dep_tol, ord_tol, zero_tol, unimodular_tol, oracle_max_n, grid_points, max_n, seed
        );
    }
}

/// Every field of an effective configuration, for echoing back.
pub fn config_json(cfg: &Config) -> Value {
    json!({
        "cluster_tol": cfg.cluster_tol,
        "rank_tol": cfg.rank_tol,
        "verdict_margin": cfg.verdict_margin,
        "pole_tol": cfg.pole_tol,
        "eps_boundary": cfg.eps_boundary,
        "node_tol": cfg.node_tol,
        "path_tol": cfg.path_tol,
        "schwarz_tol": cfg.schwarz_tol,
        "root_tol": cfg.root_tol,
        "dep_tol": cfg.dep_tol,
        "ord_tol": cfg.ord_tol,
        "zero_tol": cfg.zero_tol,
        "unimodular_tol": cfg.unimodular_tol,
        "oracle_max_n": cfg.oracle_max_n,
        "grid_points": cfg.grid_points,
        "max_n": cfg.max_n,
        "seed": cfg.seed,
    })
}

fn c(z: C64) -> Value {
    json!([z.re, z.im])
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Infeasible => "infeasible",
        Status::Inconclusive => "inconclusive",
    }
}

fn containment_str(c: Containment) -> &'static str {
    match c {
        Containment::Inside => "inside",
        Containment::Borderline => "borderline",
        Containment::Outside => "outside",
    }
}

fn disc_json(d: &DiscTest) -> Value {
    json!({"max_modulus": d.max_modulus, "radius": d.radius, "containment": containment_str(d.containment)})
}

fn candidate_json(cand: &Candidate) -> Value {
    json!({"u": c(cand.u), "miss_g": cand.miss_g, "miss_l": cand.miss_l, "accepted": cand.accepted})
}

fn k_json(r: &KReport) -> Value {
    json!({
        "k": r.k,
        "g": r.g,
        "l": r.l,
        "disc_g": disc_json(&r.disc_g),
        "disc_l": disc_json(&r.disc_l),
        "lhs": r.lhs,
        "rhs": r.rhs,
        "branch1_holds": r.branch1_holds,
        "branch1_refuted": r.branch1_refuted,
        "candidate_moduli": r.candidate_moduli,
        "candidates": r.candidates.iter().map(candidate_json).collect::<Vec<_>>(),
        "branch2_holds": r.branch2_holds,
        "refutes": r.refutes,
    })
}

/// `{"status": "infeasible" | "inconclusive", "witness": {...}}`. Node indices in the
/// witness are 0-based.
pub fn verdict_json(v: &Verdict) -> Value {
    let witness = match &v.witness {
        Witness::TwoPoint(w) => json!({
            "kind": "two_point",
            "b1_on_w2": w.b1_on_w2,
            "b2_on_w1": w.b2_on_w1,
            "lhs": w.lhs,
            "rhs": w.rhs,
            "margin": w.margin,
        }),
        Witness::ThreePoint(w) => json!({
            "kind": "three_point",
            "refuting_k": w.refuting_k,
            "margin": w.margin,
            "per_k": w.per_k.iter().map(k_json).collect::<Vec<_>>(),
        }),
    };
    json!({"status": status_str(v.status), "witness": witness})
}

pub fn spectral_json(sd: &SpectralData, full: bool) -> Value {
    let eigs: Vec<Value> = sd
        .eigs
        .iter()
        .map(|e| json!({"value": c(e.value), "alg_mult": e.alg_mult, "index": e.index}))
        .collect();
    let mut out = json!({"n": sd.n(), "eigenvalues": eigs});
    if full {
        out["projections"] = json!(sd.projections.iter().map(MatrixJson::from_matrix).collect::<Vec<_>>());
    }
    out
}

pub fn predicted_json(p: &PredictedMinpoly) -> Value {
    json!({
        "coeffs": p.poly.coeffs().iter().map(|z| c(*z)).collect::<Vec<_>>(),
        "degree": p.poly.degree(),
        "factors": p.factors.iter().map(|(v, k)| json!({"value": c(*v), "exponent": k})).collect::<Vec<_>>(),
        "locally_constant": p.locally_constant,
    })
}

pub fn poly_json(p: &ComplexPoly) -> Value {
    json!({"coeffs": p.coeffs().iter().map(|z| c(*z)).collect::<Vec<_>>(), "degree": p.degree()})
}

pub fn path_json(r: &PathReport, passed: bool) -> Value {
    json!({
        "samples": r.samples.iter().map(|s| json!({"zeta": c(s.zeta), "deviation": s.deviation})).collect::<Vec<_>>(),
        "max_deviation": r.max_deviation,
        "bound": r.bound,
        "endpoint_error": r.endpoint_error,
        "passed": passed,
    })
}

/// JSON Schema documents for every input and output format.
pub fn schemas() -> Value {
    let complex = json!({"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2});
    let poly = json!({
        "type": "object",
        "required": ["coeffs"],
        "properties": {"coeffs": {"type": "array", "items": complex, "description": "ascending degree"}},
    });
    let matrix = json!({
        "type": "object",
        "required": ["n", "data"],
        "properties": {
            "n": {"type": "integer", "minimum": 1},
            "data": {"type": "array", "items": {"type": "array", "items": complex}, "description": "row-major"},
        },
    });
    let zero = json!({
        "type": "object",
        "required": ["a", "mult"],
        "properties": {"a": complex, "mult": {"type": "integer", "minimum": 1}},
    });
    let blaschke = json!({
        "type": "object",
        "required": ["zeros", "front"],
        "properties": {"zeros": {"type": "array", "items": zero}, "front": complex},
    });
    let function = json!({
        "oneOf": [
            {"type": "object", "required": ["kind", "coeffs"],
             "properties": {"kind": {"const": "polynomial"}, "coeffs": {"type": "array", "items": complex}}},
            {"type": "object", "required": ["kind", "num", "den"],
             "properties": {"kind": {"const": "rational"}, "num": poly, "den": poly}},
            {"type": "object", "required": ["kind", "zeros", "front"],
             "properties": {"kind": {"const": "blaschke"}, "zeros": {"type": "array", "items": zero}, "front": complex}},
            {"type": "object", "required": ["kind", "points"],
             "properties": {"kind": {"const": "table"}, "points": {"type": "array", "items": {
                 "type": "object", "required": ["at", "derivs"],
                 "properties": {"at": complex, "derivs": {"type": "array", "items": complex,
                     "description": "f(at), f'(at), f''(at), ..."}}}}}},
        ],
    });
    let sym_point = json!({
        "type": "object",
        "required": ["coords"],
        "properties": {"coords": {"type": "array", "items": complex, "minItems": 1}},
    });
    let dataset = json!({
        "type": "object",
        "required": ["nodes", "targets"],
        "properties": {"nodes": {"type": "array", "items": complex}, "targets": {"type": "array", "items": matrix}},
    });
    let verdict = json!({
        "type": "object",
        "required": ["status", "witness"],
        "properties": {
            "status": {"enum": ["infeasible", "inconclusive"]},
            "witness": {"type": "object", "required": ["kind"], "properties": {"kind": {"enum": ["two_point", "three_point"]}}},
        },
    });
    let mut cfg_props = serde_json::Map::new();
    for (k, v) in config_json(&Config::default()).as_object().unwrap() {
        let ty = if v.is_u64() { "integer" } else { "number" };
        cfg_props.insert(k.clone(), json!({"type": ty, "default": v}));
    }
    let config = json!({"type": "object", "additionalProperties": false, "properties": cfg_props});
    json!({
        "complex": complex,
        "polynomial": poly,
        "matrix": matrix,
        "blaschke": blaschke,
        "function": function,
        "sym_point": sym_point,
        "dataset": dataset,
        "verdict": verdict,
        "config": config,
    })
}
