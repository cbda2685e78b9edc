//! Floer cohomology ranks of twist compositions, over F₂.
//!
//! For an acceptable system `C` the Floer cohomology of the product of
//! positive twists is `H*(Σ, C)`; for a strongly acceptable pair it is
//! `H*(Σ ∖ ∪A, ∪B)`. Ranks come either from closed forms in the system's
//! combinatorics or from an explicit relative cochain complex on a map.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::curvesys::{f2_span_rank, forest_components, validate_acceptable, CurveSystem};
use crate::exactalg::{F2Matrix, IntMatrix};
use crate::surface::{
    check_curves, cut_along, CombinatorialMap, CutError, Dart, DartCycle, Subcomplex,
};
use crate::twist::lefschetz_number;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloerError {
    #[error("curve system is not acceptable: {}", .0.join("; "))]
    NotAcceptable(Vec<String>),
    #[error("genus {0} is below 2; the Floer isomorphism is only used on hyperbolic surfaces")]
    GenusTooSmall(usize),
    #[error("subcomplex is not a closed subcomplex of the map: {0}")]
    NotClosed(String),
    #[error("curve family {family}: {source}")]
    Curves {
        family: &'static str,
        #[source]
        source: CutError,
    },
    #[error("positive and negative curves share {kind} {id}")]
    SharedCell { kind: &'static str, id: Dart },
}

/// Ranks of `H⁰, H¹, H²` over F₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FloerRanks {
    pub r0: usize,
    pub r1: usize,
    pub r2: usize,
    pub euler: i64,
}

impl FloerRanks {
    pub fn new(r0: usize, r1: usize, r2: usize) -> Self {
        Self {
            r0,
            r1,
            r2,
            euler: r0 as i64 - r1 as i64 + r2 as i64,
        }
    }

    /// Rank in even ℤ/2-degree.
    pub fn even(&self) -> usize {
        self.r0 + self.r2
    }

    pub fn odd(&self) -> usize {
        self.r1
    }

    pub fn as_tuple(&self) -> (usize, usize, usize) {
        (self.r0, self.r1, self.r2)
    }
}

/// `H*(Σ, C; F₂)` from the exact sequence of the pair: with `n` curves,
/// `c` components of the intersection forest and F₂-span rank `r`,
/// the ranks are `(0, (c − 1) + (2g − r), n − r + 1)`.
pub fn hf_ranks_acceptable(sys: &CurveSystem) -> Result<FloerRanks, FloerError> {
    let report = validate_acceptable(sys);
    if !report.passed {
        return Err(FloerError::NotAcceptable(report.messages()));
    }
    let g = sys.genus();
    if g < 2 {
        return Err(FloerError::GenusTooSmall(g));
    }
    let n = sys.len();
    if n == 0 {
        return Ok(FloerRanks::new(1, 2 * g, 1));
    }
    let c = forest_components(sys);
    let r = f2_span_rank(sys);
    Ok(FloerRanks::new(0, (c - 1) + (2 * g - r), n - r + 1))
}

fn check_closed(map: &CombinatorialMap, sub: &Subcomplex) -> Result<(), FloerError> {
    for &v in &sub.vertices {
        if !map.contains(v) || map.vertex_of(v) != v {
            return Err(FloerError::NotClosed(format!("{v} is not a vertex id")));
        }
    }
    for &e in &sub.edges {
        if !map.contains(e) || map.edge_of(e) != e {
            return Err(FloerError::NotClosed(format!("{e} is not an edge id")));
        }
        for end in [map.vertex_of(e), map.head(e)] {
            if !sub.vertices.contains(&end) {
                return Err(FloerError::NotClosed(format!(
                    "edge {e} has endpoint {end} outside the subcomplex"
                )));
            }
        }
    }
    Ok(())
}

/// Ranks of the relative cellular cochain complex `C*(map, sub; F₂)`.
///
/// Cells are the vertices, edges and faces of the map; boundary circles of
/// a map with holes are not cells.
pub fn relative_cohomology_ranks(
    map: &CombinatorialMap,
    sub: &Subcomplex,
) -> Result<FloerRanks, FloerError> {
    check_closed(map, sub)?;
    let index = |ids: Vec<Dart>| -> BTreeMap<Dart, usize> {
        ids.into_iter().enumerate().map(|(i, d)| (d, i)).collect()
    };
    let vertices = index(
        map.vertices()
            .iter()
            .map(|r| map.vertex_of(r[0]))
            .filter(|v| !sub.vertices.contains(v))
            .collect(),
    );
    let edges = index(
        map.edges()
            .iter()
            .map(|&(d, _)| d)
            .filter(|e| !sub.edges.contains(e))
            .collect(),
    );
    let faces = map.faces();

    let mut d0 = F2Matrix::zeros(edges.len(), vertices.len());
    for (&e, &row) in &edges {
        for end in [map.vertex_of(e), map.head(e)] {
            if let Some(&col) = vertices.get(&end) {
                d0.flip(row, col);
            }
        }
    }
    let mut d1 = F2Matrix::zeros(faces.len(), edges.len());
    for (row, face) in faces.iter().enumerate() {
        for &d in face {
            if let Some(&col) = edges.get(&map.edge_of(d)) {
                d1.flip(row, col);
            }
        }
    }
    let (k0, k1) = (d0.rank(), d1.rank());
    Ok(FloerRanks::new(
        vertices.len() - k0,
        edges.len() - k0 - k1,
        faces.len() - k1,
    ))
}

/// `H*(Σ ∖ ∪A, ∪B; F₂)` for disjoint curve families `A` and `B` on a map.
pub fn hf_ranks_strongly_acceptable(
    map: &CombinatorialMap,
    a: &[DartCycle],
    b: &[DartCycle],
) -> Result<FloerRanks, FloerError> {
    let la = check_curves(map, a).map_err(|source| FloerError::Curves {
        family: "A",
        source,
    })?;
    let lb = check_curves(map, b).map_err(|source| FloerError::Curves {
        family: "B",
        source,
    })?;
    if let Some(&v) = la.vertices.intersection(&lb.vertices).next() {
        return Err(FloerError::SharedCell { kind: "vertex", id: v });
    }
    if let Some(&e) = la.edges.intersection(&lb.edges).next() {
        return Err(FloerError::SharedCell { kind: "edge", id: e });
    }
    let cut = cut_along(map, a).map_err(|source| FloerError::Curves {
        family: "A",
        source,
    })?;
    // B avoids every cell of A, so its darts and vertices survive the cut
    let sub = Subcomplex::from_cycles(&cut.map, b);
    relative_cohomology_ranks(&cut.map, &sub)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerLefschetzReport {
    /// `r0 − r1 + r2`.
    pub graded_euler: i64,
    /// `(2 − 2g) + (n − c)`.
    pub closed_form: i64,
    /// `2 − tr(m)`.
    #[serde(serialize_with = "serialize_bigint")]
    pub lefschetz: BigInt,
    pub consistent: bool,
}

fn serialize_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&crate::exactalg::JsonInt(x), s)
}

/// Compares the graded Euler characteristic of the ranks with the closed
/// form and with the Lefschetz number of the action matrix.
pub fn euler_lefschetz_check(
    sys: &CurveSystem,
    ranks: &FloerRanks,
    m: &IntMatrix,
) -> EulerLefschetzReport {
    let g = sys.genus() as i64;
    let closed_form = (2 - 2 * g) + (sys.len() as i64 - forest_components(sys) as i64);
    let lefschetz = lefschetz_number(m).unwrap_or_else(|_| BigInt::from(i64::MIN));
    let consistent = ranks.euler == closed_form && lefschetz == BigInt::from(closed_form);
    EulerLefschetzReport {
        graded_euler: ranks.euler,
        closed_form,
        lefschetz,
        consistent,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassStatus {
    /// Pairs oddly with some curve, so it acts trivially.
    CertifiedTrivial,
    /// Passes the necessary condition; nontriviality is not established.
    PossiblyNontrivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassScreen {
    /// Basis class the cohomology element is dual to.
    pub dual_to: String,
    pub status: ClassStatus,
    /// Curves the class pairs oddly with.
    pub obstructions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CupScreenReport {
    /// `H²` acts trivially as soon as `C` is nonempty.
    pub h2_trivial: bool,
    pub h1: Vec<ClassScreen>,
}

/// Screens the `H*(Σ; F₂)`-module action on `H*(Σ, C)`.
///
/// A degree-one class can only act nontrivially if it is dual to a curve
/// missing `C`, which forces even pairing with every curve of `C`.
pub fn cup_action_screen(sys: &CurveSystem) -> CupScreenReport {
    let surface = sys.surface();
    let h1 = surface
        .basis_labels()
        .into_iter()
        .enumerate()
        .map(|(k, label)| {
            let mut e = vec![0i64; surface.dim()];
            e[k] = 1;
            let obstructions: Vec<String> = sys
                .curves()
                .iter()
                .filter(|c| crate::surface::pair_slices(&e, &c.class.0).rem_euclid(2) == 1)
                .map(|c| c.name.clone())
                .collect();
            ClassScreen {
                dual_to: label,
                status: if obstructions.is_empty() {
                    ClassStatus::PossiblyNontrivial
                } else {
                    ClassStatus::CertifiedTrivial
                },
                obstructions,
            }
        })
        .collect();
    CupScreenReport {
        h2_trivial: !sys.is_empty(),
        h1,
    }
}
