use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use super::cmap::{CombinatorialMap, CycleError, Dart, DartCycle, MapError, MapSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("curves can only be cut out of a closed map")]
    NotClosed,
    #[error("curve {index} is not a simple cycle in the 1-skeleton: {source}")]
    Curve {
        index: usize,
        #[source]
        source: CycleError,
    },
    #[error("curves {0} and {1} share an edge")]
    SharedEdge(usize, usize),
    #[error("curves {0} and {1} meet more than once")]
    MultipleIntersections(usize, usize),
    #[error("non-transverse meeting at vertex {vertex}: {reason}")]
    NonTransverse { vertex: Dart, reason: String },
    #[error("cut produced an invalid map: {0}")]
    Internal(#[from] MapError),
}

/// Where a validated family of curves sits inside the map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CurveLayout {
    pub vertices: BTreeSet<Dart>,
    /// Edge ids (smaller dart of each pair).
    pub edges: BTreeSet<Dart>,
    /// Both darts of every curve edge.
    pub darts: BTreeSet<Dart>,
    /// `(curve i, curve j, vertex)` for each transverse crossing, `i < j`.
    pub crossings: Vec<(usize, usize, Dart)>,
}

impl CurveLayout {
    /// `χ(K) = V(K) − E(K)` of the union of the curves.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }
}

/// Checks that the cycles form a curve system on the map: each is a simple
/// edge cycle, no two share an edge, and two curves meet in at most one
/// vertex where their darts alternate around the rotation.
pub fn check_curves(map: &CombinatorialMap, curves: &[DartCycle]) -> Result<CurveLayout, CutError> {
    if !map.is_closed() {
        return Err(CutError::NotClosed);
    }
    let mut layout = CurveLayout::default();
    let mut edge_owner: BTreeMap<Dart, usize> = BTreeMap::new();
    // vertex -> [(curve, [outgoing, incoming])]
    let mut visits: BTreeMap<Dart, Vec<(usize, [Dart; 2])>> = BTreeMap::new();

    for (idx, c) in curves.iter().enumerate() {
        c.validate(map)
            .map_err(|source| CutError::Curve { index: idx, source })?;
        let ds = c.darts();
        for (i, &d) in ds.iter().enumerate() {
            let e = map.edge_of(d);
            if let Some(&other) = edge_owner.get(&e) {
                return Err(CutError::SharedEdge(other, idx));
            }
            edge_owner.insert(e, idx);
            layout.darts.insert(d);
            layout.darts.insert(map.alpha(d));
            let prev = ds[(i + ds.len() - 1) % ds.len()];
            visits
                .entry(map.vertex_of(d))
                .or_default()
                .push((idx, [d, map.alpha(prev)]));
        }
    }
    layout.edges = edge_owner.keys().copied().collect();
    layout.vertices = visits.keys().copied().collect();

    let mut met: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (&v, at) in &visits {
        match at.as_slice() {
            [_] => {}
            [(i, di), (j, dj)] => {
                let rotation = rotation_from(map, v);
                let mut marks: Vec<(usize, usize)> = di
                    .iter()
                    .map(|d| (rotation[d], *i))
                    .chain(dj.iter().map(|d| (rotation[d], *j)))
                    .collect();
                marks.sort_unstable();
                let alternates = marks.windows(2).all(|w| w[0].1 != w[1].1);
                if !alternates {
                    return Err(CutError::NonTransverse {
                        vertex: v,
                        reason: format!("curves {i} and {j} touch without crossing"),
                    });
                }
                let pair = (*i.min(j), *i.max(j));
                if !met.insert(pair) {
                    return Err(CutError::MultipleIntersections(pair.0, pair.1));
                }
                layout.crossings.push((pair.0, pair.1, v));
            }
            more => {
                return Err(CutError::NonTransverse {
                    vertex: v,
                    reason: format!("{} curves pass through one vertex", more.len()),
                })
            }
        }
    }
    Ok(layout)
}

/// Position of every dart in the rotation at vertex `v`.
fn rotation_from(map: &CombinatorialMap, v: Dart) -> BTreeMap<Dart, usize> {
    let mut pos = BTreeMap::new();
    let mut d = v;
    let mut i = 0;
    loop {
        pos.insert(d, i);
        i += 1;
        d = map.sigma(d);
        if d == v {
            return pos;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutResult {
    #[serde(skip)]
    pub map: CombinatorialMap,
    pub boundary_components: usize,
    pub complement_components: usize,
    pub chi_original: i64,
    pub chi_curves: i64,
    pub chi_cut: i64,
}

/// Cuts a closed map along a curve system.
///
/// Every curve edge is doubled and every vertex on a curve splits into one
/// vertex per corner between consecutive curve darts. A curve dart `d`
/// keeps its id on the clockwise side of its corner and gets a fresh copy
/// `d⁺` on the counterclockwise side; the fresh copies are exactly the
/// boundary darts and their face orbits are the boundary circles.
pub fn cut_along(map: &CombinatorialMap, curves: &[DartCycle]) -> Result<CutResult, CutError> {
    let layout = check_curves(map, curves)?;
    let chi_original = map.euler_characteristic();

    let mut next = map.darts().iter().copied().max().unwrap_or(0) + 1;
    let mut plus: BTreeMap<Dart, Dart> = BTreeMap::new();
    for &d in &layout.darts {
        plus.insert(d, next);
        next += 1;
    }

    let mut sigma = Vec::new();
    for rotation in map.vertices() {
        let Some(first) = rotation.iter().position(|d| plus.contains_key(d)) else {
            sigma.push(rotation);
            continue;
        };
        let n = rotation.len();
        let order: Vec<Dart> = (0..n).map(|k| rotation[(first + k) % n]).collect();
        let cuts: Vec<usize> = (0..n).filter(|&k| plus.contains_key(&order[k])).collect();
        for (b, &start) in cuts.iter().enumerate() {
            let end = cuts.get(b + 1).copied().unwrap_or(n);
            let mut block = vec![plus[&order[start]]];
            block.extend_from_slice(&order[start + 1..end]);
            block.push(order[end % n]);
            sigma.push(block);
        }
    }

    let mut alpha = Vec::new();
    for (d, e) in map.edges() {
        if plus.contains_key(&d) {
            alpha.push((d, plus[&e]));
            alpha.push((e, plus[&d]));
        } else {
            alpha.push((d, e));
        }
    }

    let mut darts = map.darts().to_vec();
    darts.extend(plus.values());
    let spec = MapSpec {
        darts,
        alpha,
        sigma,
    };
    let boundary: BTreeSet<Dart> = plus.values().copied().collect();
    let cut = CombinatorialMap::assemble(&spec, boundary)?;

    Ok(CutResult {
        boundary_components: cut.holes().len(),
        complement_components: cut.component_count(),
        chi_original,
        chi_curves: layout.euler_characteristic(),
        chi_cut: cut.euler_characteristic(),
        map: cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> CombinatorialMap {
        CombinatorialMap::from_spec(&MapSpec {
            darts: vec![1, 2, 3, 4],
            alpha: vec![(1, 3), (2, 4)],
            sigma: vec![vec![1, 2, 3, 4]],
        })
        .unwrap()
    }

    #[test]
    fn torus_meridian_gives_annulus() {
        let r = cut_along(&torus(), &[DartCycle(vec![1])]).unwrap();
        assert_eq!(r.chi_cut, 0);
        assert_eq!(r.chi_curves, 0);
        assert_eq!(r.boundary_components, 2);
        assert_eq!(r.complement_components, 1);
        assert_eq!(r.map.vertex_count(), 2);
        assert_eq!(r.map.edge_count(), 3);
        assert_eq!(r.map.face_count(), 1);
    }

    #[test]
    fn empty_cut_is_identity() {
        let m = torus();
        let r = cut_along(&m, &[]).unwrap();
        assert_eq!(r.map, m);
        assert_eq!(r.boundary_components, 0);
        assert_eq!(r.complement_components, 1);
        assert_eq!(r.chi_cut, r.chi_original);
    }

    #[test]
    fn both_generators_cut_torus_to_disk() {
        // Loops 1 and 2 share the only vertex with rotation (1, 2, 3, 4):
        // darts of the two curves alternate, so they cross once.
        let r = cut_along(&torus(), &[DartCycle(vec![1]), DartCycle(vec![2])]).unwrap();
        assert_eq!(r.chi_curves, -1);
        assert_eq!(r.chi_cut, 1);
        assert_eq!(r.boundary_components, 1);
        assert_eq!(r.complement_components, 1);
    }

    #[test]
    fn touching_curves_are_rejected() {
        // Rotation (1, 3, 2, 4): loop {1,3} and loop {2,4} do not alternate.
        let m = CombinatorialMap::from_spec(&MapSpec {
            darts: vec![1, 2, 3, 4],
            alpha: vec![(1, 3), (2, 4)],
            sigma: vec![vec![1, 3, 2, 4]],
        })
        .unwrap();
        let err = cut_along(&m, &[DartCycle(vec![1]), DartCycle(vec![2])]).unwrap_err();
        assert!(matches!(err, CutError::NonTransverse { .. }), "{err}");
    }

    #[test]
    fn non_cycle_is_an_input_error() {
        let m = CombinatorialMap::from_spec(&MapSpec {
            darts: vec![1, 2, 3, 4],
            alpha: vec![(1, 2), (3, 4)],
            sigma: vec![vec![1, 3], vec![2, 4]],
        })
        .unwrap();
        // dart 1 runs from the vertex of 1 to the vertex of 2; 3 starts back
        // at the vertex of 1, so [1, 3] is broken
        let err = cut_along(&m, &[DartCycle(vec![1, 3])]).unwrap_err();
        assert!(matches!(err, CutError::Curve { index: 0, .. }));
        // the two parallel edges do form a cycle (the sphere's equator)
        let r = cut_along(&m, &[DartCycle(vec![1, 4])]).unwrap();
        assert_eq!(r.complement_components, 2);
        assert_eq!(r.chi_cut, 2);
        let err = cut_along(&m, &[DartCycle(vec![1, 2])]).unwrap_err();
        assert!(matches!(
            err,
            CutError::Curve {
                source: CycleError::RepeatedEdge(_),
                ..
            }
        ));
    }

    #[test]
    fn shared_edge_is_rejected() {
        let err = cut_along(&torus(), &[DartCycle(vec![1]), DartCycle(vec![3])]).unwrap_err();
        assert_eq!(err, CutError::SharedEdge(0, 1));
    }
}
