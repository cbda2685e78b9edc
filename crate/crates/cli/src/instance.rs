//! Instance files: one JSON document carrying the curves, the optional
//! twist word, the optional cellular map and the optional raw matrix.

use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use twistfloer_core::curvesys::{Curve, CurveSystem, CurveSystemError};
use twistfloer_core::exactalg::IntMatrix;
use twistfloer_core::surface::{
    standard_surface, AlgebraicSurface, CombinatorialMap, DartCycle, HomologyClass, MapError,
    MapSpec,
};
use twistfloer_core::twist::{TwistError, TwistWord};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at '{path}' (line {line}, column {column}): {message}")]
    Schema {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("{0}")]
    Resolution(String),
}

impl InstanceError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Field {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    name: String,
    class: Vec<i64>,
    #[serde(default)]
    darts: Option<Vec<u32>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    genus: usize,
    #[serde(default)]
    curves: Vec<RawCurve>,
    #[serde(default)]
    intersections: Vec<Vec<Value>>,
    #[serde(default)]
    negative_curves: Vec<RawCurve>,
    #[serde(default)]
    word: Option<Vec<String>>,
    #[serde(default)]
    map: Option<MapSpec>,
    #[serde(default)]
    matrix: Option<Vec<Vec<i64>>>,
}

/// A declared intersection, by curve name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeclaredPair {
    pub first: String,
    pub second: String,
    pub sign: Option<i64>,
}

/// A parsed and cross-checked instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub genus: usize,
    pub surface: AlgebraicSurface,
    /// Curves twisted positively, with the intersections among them.
    pub positive: CurveSystem,
    /// Curves twisted negatively, with the intersections among them.
    pub negative: CurveSystem,
    /// Every curve, positive then negative; the namespace of `word`.
    pub all: CurveSystem,
    /// Declared intersections between a positive and a negative curve.
    pub cross_pairs: Vec<DeclaredPair>,
    pub word: Option<TwistWord>,
    pub map: Option<CombinatorialMap>,
    pub matrix: Option<IntMatrix>,
}

fn parse_pair(i: usize, entry: &[Value]) -> Result<DeclaredPair, InstanceError> {
    let field = format!("intersections[{i}]");
    let bad = || {
        InstanceError::field(
            &field,
            "expected [name, name] or [name, name, sign] with sign ±1",
        )
    };
    let name = |v: &Value| v.as_str().map(str::to_string).ok_or_else(bad);
    match entry {
        [a, b] => Ok(DeclaredPair {
            first: name(a)?,
            second: name(b)?,
            sign: None,
        }),
        [a, b, s] => Ok(DeclaredPair {
            first: name(a)?,
            second: name(b)?,
            sign: Some(s.as_i64().ok_or_else(bad)?),
        }),
        _ => Err(bad()),
    }
}

fn build_curves(
    surface: &AlgebraicSurface,
    raw: Vec<RawCurve>,
    field: &str,
) -> Result<Vec<Curve>, InstanceError> {
    raw.into_iter()
        .enumerate()
        .map(|(i, c)| {
            if c.class.len() != surface.dim() {
                return Err(InstanceError::field(
                    format!("{field}[{i}].class"),
                    format!(
                        "curve '{}': class length must be {} (got {})",
                        c.name,
                        surface.dim(),
                        c.class.len()
                    ),
                ));
            }
            let curve = Curve::new(c.name, HomologyClass(c.class));
            Ok(match c.darts {
                Some(d) => curve.with_darts(DartCycle(d)),
                None => curve,
            })
        })
        .collect()
}

fn system_error(e: CurveSystemError) -> InstanceError {
    InstanceError::Resolution(e.to_string())
}

/// Parses an instance document, reporting the line and field of the first
/// problem.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: RawInstance = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_syntax() || inner.is_eof() {
            InstanceError::Syntax {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        } else {
            InstanceError::Schema {
                path,
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        }
    })?;
    de.end().map_err(|e| InstanceError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let surface =
        standard_surface(raw.genus).map_err(|e| InstanceError::field("genus", e.to_string()))?;
    let pos_curves = build_curves(&surface, raw.curves, "curves")?;
    let neg_curves = build_curves(&surface, raw.negative_curves, "negative_curves")?;

    let pairs: Vec<DeclaredPair> = raw
        .intersections
        .iter()
        .enumerate()
        .map(|(i, e)| parse_pair(i, e))
        .collect::<Result<_, _>>()?;
    let as_tuple = |p: &DeclaredPair| (p.first.clone(), p.second.clone(), p.sign);

    let mut all_curves = pos_curves.clone();
    all_curves.extend(neg_curves.iter().cloned());
    let all_pairs: Vec<_> = pairs.iter().map(as_tuple).collect();
    // Duplicate names and unknown references surface here.
    let all = CurveSystem::new(surface.clone(), all_curves, &all_pairs).map_err(system_error)?;

    let is_pos = |n: &str| pos_curves.iter().any(|c| c.name == n);
    let mut pos_pairs = Vec::new();
    let mut neg_pairs = Vec::new();
    let mut cross_pairs = Vec::new();
    for p in &pairs {
        match (is_pos(&p.first), is_pos(&p.second)) {
            (true, true) => pos_pairs.push(as_tuple(p)),
            (false, false) => neg_pairs.push(as_tuple(p)),
            (true, false) => cross_pairs.push(p.clone()),
            (false, true) => cross_pairs.push(DeclaredPair {
                first: p.second.clone(),
                second: p.first.clone(),
                sign: p.sign,
            }),
        }
    }
    let positive =
        CurveSystem::new(surface.clone(), pos_curves, &pos_pairs).map_err(system_error)?;
    let negative =
        CurveSystem::new(surface.clone(), neg_curves, &neg_pairs).map_err(system_error)?;

    let word = raw
        .word
        .map(|letters| {
            let w = TwistWord::parse(&letters)
                .map_err(|e| InstanceError::field("word", e.to_string()))?;
            if let Some(t) = w.letters().iter().find(|t| all.curve(&t.curve).is_none()) {
                return Err(InstanceError::Resolution(
                    TwistError::UnknownCurve(t.curve.clone()).to_string() + " in word",
                ));
            }
            Ok(w)
        })
        .transpose()?;

    let map = raw
        .map
        .map(|spec| {
            CombinatorialMap::from_spec(&spec)
                .map_err(|e: MapError| InstanceError::field("map", e.to_string()))
        })
        .transpose()?;

    let matrix = raw
        .matrix
        .map(|rows| {
            IntMatrix::from_rows(&rows).map_err(|e| InstanceError::field("matrix", e.to_string()))
        })
        .transpose()?;

    Ok(Instance {
        genus: raw.genus,
        surface,
        positive,
        negative,
        all,
        cross_pairs,
        word,
        map,
        matrix,
    })
}

impl Instance {
    /// The word to act with: the given one, or every positive curve
    /// twisted positively followed by every negative curve twisted
    /// negatively, in file order.
    pub fn effective_word(&self) -> TwistWord {
        if let Some(w) = &self.word {
            return w.clone();
        }
        let pos = TwistWord::positive(
            &self
                .positive
                .curves()
                .iter()
                .map(|c| c.name.as_str())
                .collect::<Vec<_>>(),
        );
        let neg = TwistWord::positive(
            &self
                .negative
                .curves()
                .iter()
                .map(|c| c.name.as_str())
                .collect::<Vec<_>>(),
        )
        .inverse();
        pos.then(&neg)
    }

    /// Dart cycles of a curve system, if every curve carries one.
    pub fn cycles(sys: &CurveSystem) -> Option<Vec<DartCycle>> {
        sys.curves().iter().map(|c| c.darts.clone()).collect()
    }
}
