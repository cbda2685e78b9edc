//! Curve systems on the algebraic surface and the acceptability checks.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::F2Matrix;
use crate::surface::{AlgebraicSurface, DartCycle, HomologyClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveSystemError {
    #[error("duplicate curve name '{0}'")]
    DuplicateName(String),
    #[error("curve '{name}': class length must be {expected}, got {got}")]
    ClassLength {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("unknown curve '{0}'")]
    UnknownCurve(String),
    #[error("curve '{0}' listed as intersecting itself")]
    SelfPair(String),
    #[error("pair ('{0}', '{1}') listed twice")]
    DuplicatePair(String, String),
    #[error("intersection sign must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("systems live on surfaces of genus {0} and {1}")]
    GenusMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Curve {
    pub name: String,
    pub class: HomologyClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub darts: Option<DartCycle>,
}

impl Curve {
    pub fn new(name: impl Into<String>, class: HomologyClass) -> Self {
        Self {
            name: name.into(),
            class,
            darts: None,
        }
    }

    pub fn with_darts(mut self, darts: DartCycle) -> Self {
        self.darts = Some(darts);
        self
    }
}

/// A declared transverse intersection between curves `first` and `second`
/// (indices into the curve list). The optional sign is `⟨first, second⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Intersection {
    pub first: usize,
    pub second: usize,
    pub sign: Option<i8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSystem {
    surface: AlgebraicSurface,
    curves: Vec<Curve>,
    intersections: Vec<Intersection>,
}

impl CurveSystem {
    /// Builds a system; intersections are given by curve name.
    pub fn new(
        surface: AlgebraicSurface,
        curves: Vec<Curve>,
        intersections: &[(String, String, Option<i64>)],
    ) -> Result<Self, CurveSystemError> {
        let mut names = BTreeSet::new();
        for c in &curves {
            if !names.insert(c.name.as_str()) {
                return Err(CurveSystemError::DuplicateName(c.name.clone()));
            }
            if c.class.len() != surface.dim() {
                return Err(CurveSystemError::ClassLength {
                    name: c.name.clone(),
                    expected: surface.dim(),
                    got: c.class.len(),
                });
            }
        }
        let mut sys = Self {
            surface,
            curves,
            intersections: Vec::new(),
        };
        let mut pairs = BTreeSet::new();
        for (a, b, sign) in intersections {
            let first = sys.require(a)?;
            let second = sys.require(b)?;
            if first == second {
                return Err(CurveSystemError::SelfPair(a.clone()));
            }
            if !pairs.insert((first.min(second), first.max(second))) {
                return Err(CurveSystemError::DuplicatePair(a.clone(), b.clone()));
            }
            let sign = match sign {
                None => None,
                Some(s @ (1 | -1)) => Some(*s as i8),
                Some(s) => return Err(CurveSystemError::BadSign(*s)),
            };
            sys.intersections.push(Intersection {
                first,
                second,
                sign,
            });
        }
        Ok(sys)
    }

    /// A system with no declared intersections.
    pub fn disjoint(surface: AlgebraicSurface, curves: Vec<Curve>) -> Result<Self, CurveSystemError> {
        Self::new(surface, curves, &[])
    }

    fn require(&self, name: &str) -> Result<usize, CurveSystemError> {
        self.index_of(name)
            .ok_or_else(|| CurveSystemError::UnknownCurve(name.to_string()))
    }

    pub fn surface(&self) -> &AlgebraicSurface {
        &self.surface
    }

    pub fn genus(&self) -> usize {
        self.surface.genus()
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn intersections(&self) -> &[Intersection] {
        &self.intersections
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.name == name)
    }

    pub fn curve(&self, name: &str) -> Option<&Curve> {
        self.index_of(name).map(|i| &self.curves[i])
    }

    pub fn is_listed(&self, i: usize, j: usize) -> bool {
        self.intersections
            .iter()
            .any(|x| (x.first, x.second) == (i, j) || (x.first, x.second) == (j, i))
    }

    /// Edges of the intersection graph as index pairs.
    pub fn graph_edges(&self) -> Vec<(usize, usize)> {
        self.intersections.iter().map(|x| (x.first, x.second)).collect()
    }

    pub(crate) fn pairing(&self, i: usize, j: usize) -> i128 {
        crate::surface::pair_slices(&self.curves[i].class.0, &self.curves[j].class.0)
    }

    /// The same system with the curves listed in a different order.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let mut inverse = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        Self {
            surface: self.surface.clone(),
            curves: order.iter().map(|&i| self.curves[i].clone()).collect(),
            intersections: self
                .intersections
                .iter()
                .map(|x| Intersection {
                    first: inverse[x.first],
                    second: inverse[x.second],
                    sign: x.sign,
                })
                .collect(),
        }
    }
}

/// Minimal union–find over `0..n`.
pub(crate) struct Components {
    parent: Vec<usize>,
}

impl Components {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub(crate) fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    GraphCycle,
    TrivialClass {
        curve: String,
    },
    ListedPairing {
        first: String,
        second: String,
        pairing: i128,
    },
    UnlistedPairing {
        first: String,
        second: String,
        pairing: i128,
    },
    SignMismatch {
        first: String,
        second: String,
        declared: i8,
        pairing: i128,
    },
    CrossIntersection {
        positive: String,
        negative: String,
        pairing: i128,
    },
    DeclaredCrossIntersection {
        positive: String,
        negative: String,
    },
    HomologyEqualPair {
        positive: String,
        negative: String,
    },
    Positive {
        inner: Box<Violation>,
    },
    Negative {
        inner: Box<Violation>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GraphCycle => write!(f, "graph contains a cycle"),
            Self::TrivialClass { curve } => write!(f, "homologically trivial curve '{curve}'"),
            Self::ListedPairing {
                first,
                second,
                pairing,
            } => write!(
                f,
                "listed intersection ('{first}', '{second}') has algebraic intersection {pairing}, expected ±1"
            ),
            Self::UnlistedPairing {
                first,
                second,
                pairing,
            } => write!(
                f,
                "curves '{first}' and '{second}' are not listed as intersecting but pair to {pairing}"
            ),
            Self::SignMismatch {
                first,
                second,
                declared,
                pairing,
            } => write!(
                f,
                "intersection ('{first}', '{second}') declared with sign {declared:+} but pairs to {pairing:+}"
            ),
            Self::CrossIntersection {
                positive,
                negative,
                pairing,
            } => write!(
                f,
                "cross intersection nonzero: ⟨'{positive}', '{negative}'⟩ = {pairing}"
            ),
            Self::DeclaredCrossIntersection { positive, negative } => write!(
                f,
                "cross intersection nonzero: '{positive}' and '{negative}' are declared to intersect"
            ),
            Self::HomologyEqualPair { positive, negative } => write!(
                f,
                "homology-equal pair: '{positive}' and '{negative}' have classes equal up to sign"
            ),
            Self::Positive { inner } => write!(f, "positive system: {inner}"),
            Self::Negative { inner } => write!(f, "negative system: {inner}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcceptabilityReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

impl AcceptabilityReport {
    fn from_violations(violations: Vec<Violation>, caveat: Option<String>) -> Self {
        Self {
            passed: violations.is_empty(),
            violations,
            caveat,
        }
    }

    /// Records a violation found outside the algebraic checks.
    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
        self.passed = false;
    }

    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }
}

/// Checks an acceptable setting: the intersection graph is a forest, the
/// declared pairs pair to ±1 (matching a declared sign), undeclared pairs
/// pair to 0, and no class is zero. All violations are collected.
pub fn validate_acceptable(sys: &CurveSystem) -> AcceptabilityReport {
    AcceptabilityReport::from_violations(acceptable_violations(sys), None)
}

fn acceptable_violations(sys: &CurveSystem) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut comps = Components::new(sys.len());
    if sys
        .graph_edges()
        .iter()
        .any(|&(a, b)| !comps.union(a, b))
    {
        out.push(Violation::GraphCycle);
    }
    let name = |i: usize| sys.curves[i].name.clone();
    for x in sys.intersections() {
        let p = sys.pairing(x.first, x.second);
        if p.abs() != 1 {
            out.push(Violation::ListedPairing {
                first: name(x.first),
                second: name(x.second),
                pairing: p,
            });
        } else if let Some(s) = x.sign {
            if s as i128 != p {
                out.push(Violation::SignMismatch {
                    first: name(x.first),
                    second: name(x.second),
                    declared: s,
                    pairing: p,
                });
            }
        }
    }
    for i in 0..sys.len() {
        for j in i + 1..sys.len() {
            let p = sys.pairing(i, j);
            if p != 0 && !sys.is_listed(i, j) {
                out.push(Violation::UnlistedPairing {
                    first: name(i),
                    second: name(j),
                    pairing: p,
                });
            }
        }
    }
    for c in sys.curves() {
        if c.class.is_zero() {
            out.push(Violation::TrivialClass {
                curve: c.name.clone(),
            });
        }
    }
    out
}

/// Homotopy-distinctness cannot be seen from homology; the report says so.
pub const HOMOTOPY_CAVEAT: &str =
    "homotopy-distinctness of positive and negative curves is approximated by homology-distinctness (necessary, not sufficient)";

/// Checks a strongly acceptable setting `(pos, neg)`.
pub fn validate_strongly_acceptable(
    pos: &CurveSystem,
    neg: &CurveSystem,
) -> Result<AcceptabilityReport, CurveSystemError> {
    if pos.genus() != neg.genus() {
        return Err(CurveSystemError::GenusMismatch(pos.genus(), neg.genus()));
    }
    let mut out: Vec<Violation> = acceptable_violations(pos)
        .into_iter()
        .map(|v| Violation::Positive { inner: Box::new(v) })
        .collect();
    out.extend(
        acceptable_violations(neg)
            .into_iter()
            .map(|v| Violation::Negative { inner: Box::new(v) }),
    );
    for p in pos.curves() {
        for n in neg.curves() {
            let pairing = crate::surface::pair_slices(&p.class.0, &n.class.0);
            if pairing != 0 {
                out.push(Violation::CrossIntersection {
                    positive: p.name.clone(),
                    negative: n.name.clone(),
                    pairing,
                });
            }
            if p.class == n.class || p.class == n.class.neg() {
                out.push(Violation::HomologyEqualPair {
                    positive: p.name.clone(),
                    negative: n.name.clone(),
                });
            }
        }
    }
    Ok(AcceptabilityReport::from_violations(
        out,
        Some(HOMOTOPY_CAVEAT.to_string()),
    ))
}

/// Connected components of the intersection graph; isolated curves count.
pub fn forest_components(sys: &CurveSystem) -> usize {
    let mut comps = Components::new(sys.len());
    for (a, b) in sys.graph_edges() {
        comps.union(a, b);
    }
    comps.count()
}

/// Rank over F₂ of the classes reduced mod 2.
pub fn f2_span_rank(sys: &CurveSystem) -> usize {
    let mut m = F2Matrix::zeros(sys.len(), sys.surface().dim());
    for (i, c) in sys.curves().iter().enumerate() {
        for (j, &x) in c.class.0.iter().enumerate() {
            m.set(i, j, x.rem_euclid(2) == 1);
        }
    }
    m.rank()
}
