use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Dart = u32;

/// Raw map data as it appears in an instance file. Nothing is checked
/// until it is turned into a [`CombinatorialMap`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MapSpec {
    pub darts: Vec<Dart>,
    pub alpha: Vec<(Dart, Dart)>,
    pub sigma: Vec<Vec<Dart>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("dart ids must be positive")]
    NonPositiveDart,
    #[error("dart {0} listed twice")]
    DuplicateDart(Dart),
    #[error("alpha not fixed-point-free (dart {0})")]
    AlphaFixedPoint(Dart),
    #[error("alpha not an involution on darts (dart {0})")]
    AlphaNotInvolution(Dart),
    #[error("sigma not a permutation of darts (dart {0})")]
    SigmaNotPermutation(Dart),
    #[error("map is not connected")]
    Disconnected,
    #[error("map has boundary; a closed map is required")]
    NotClosed,
    #[error("malformed map: Euler characteristic {0} is not that of a closed oriented surface")]
    Malformed(i64),
}

/// Pass/fail outcome of [`validate_map`] with the first violation found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapReport {
    pub passed: bool,
    pub violation: Option<String>,
}

pub fn validate_map(spec: &MapSpec) -> MapReport {
    match CombinatorialMap::from_spec(spec) {
        Ok(_) => MapReport {
            passed: true,
            violation: None,
        },
        Err(e) => MapReport {
            passed: false,
            violation: Some(e.to_string()),
        },
    }
}

/// A rotation system: darts, the edge involution `alpha` and the
/// counterclockwise vertex rotation `sigma`.
///
/// Vertices are orbits of `sigma`, edges orbits of `alpha`, faces orbits of
/// `phi = sigma ∘ alpha`. Maps produced by cutting carry boundary darts;
/// a face whose darts are all boundary darts is a hole, not a 2-cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialMap {
    darts: Vec<Dart>,
    alpha: BTreeMap<Dart, Dart>,
    sigma: BTreeMap<Dart, Dart>,
    vertex_of: BTreeMap<Dart, Dart>,
    boundary: BTreeSet<Dart>,
}

impl CombinatorialMap {
    /// Checks the map axioms and connectivity.
    pub fn from_spec(spec: &MapSpec) -> Result<Self, MapError> {
        let map = Self::assemble(spec, BTreeSet::new())?;
        if map.component_count() > 1 {
            return Err(MapError::Disconnected);
        }
        Ok(map)
    }

    /// Like [`from_spec`](Self::from_spec) but with boundary darts and no
    /// connectivity requirement.
    pub(crate) fn assemble(spec: &MapSpec, boundary: BTreeSet<Dart>) -> Result<Self, MapError> {
        let mut darts = spec.darts.clone();
        darts.sort_unstable();
        if darts.first() == Some(&0) {
            return Err(MapError::NonPositiveDart);
        }
        if let Some(w) = darts.windows(2).find(|w| w[0] == w[1]) {
            return Err(MapError::DuplicateDart(w[0]));
        }
        let known: BTreeSet<Dart> = darts.iter().copied().collect();

        let mut alpha = BTreeMap::new();
        for &(x, y) in &spec.alpha {
            if x == y {
                return Err(MapError::AlphaFixedPoint(x));
            }
            for d in [x, y] {
                if !known.contains(&d) || alpha.contains_key(&d) {
                    return Err(MapError::AlphaNotInvolution(d));
                }
            }
            alpha.insert(x, y);
            alpha.insert(y, x);
        }
        if let Some(&d) = darts.iter().find(|d| !alpha.contains_key(d)) {
            return Err(MapError::AlphaNotInvolution(d));
        }

        let mut sigma = BTreeMap::new();
        for cycle in &spec.sigma {
            for (i, &d) in cycle.iter().enumerate() {
                if !known.contains(&d) || sigma.contains_key(&d) {
                    return Err(MapError::SigmaNotPermutation(d));
                }
                sigma.insert(d, cycle[(i + 1) % cycle.len()]);
            }
        }
        if let Some(&d) = darts.iter().find(|d| !sigma.contains_key(d)) {
            return Err(MapError::SigmaNotPermutation(d));
        }

        let mut vertex_of = BTreeMap::new();
        for cycle in &spec.sigma {
            let Some(&rep) = cycle.iter().min() else {
                continue;
            };
            for &d in cycle {
                vertex_of.insert(d, rep);
            }
        }

        Ok(Self {
            darts,
            alpha,
            sigma,
            vertex_of,
            boundary,
        })
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn contains(&self, d: Dart) -> bool {
        self.alpha.contains_key(&d)
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[&d]
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[&d]
    }

    /// Face successor `sigma(alpha(d))`.
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma(self.alpha(d))
    }

    /// Vertex id: the smallest dart of the sigma orbit.
    pub fn vertex_of(&self, d: Dart) -> Dart {
        self.vertex_of[&d]
    }

    /// Edge id: the smaller dart of the alpha pair.
    pub fn edge_of(&self, d: Dart) -> Dart {
        d.min(self.alpha(d))
    }

    /// Head vertex of the edge traversed along `d`.
    pub fn head(&self, d: Dart) -> Dart {
        self.vertex_of(self.alpha(d))
    }

    pub fn boundary_darts(&self) -> &BTreeSet<Dart> {
        &self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    fn orbits(&self, step: impl Fn(Dart) -> Dart) -> Vec<Vec<Dart>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &d in &self.darts {
            if seen.contains(&d) {
                continue;
            }
            let mut orbit = vec![d];
            seen.insert(d);
            let mut x = step(d);
            while x != d {
                seen.insert(x);
                orbit.push(x);
                x = step(x);
            }
            out.push(orbit);
        }
        out
    }

    /// Rotation cycles, each starting at its vertex id, ordered by id.
    pub fn vertices(&self) -> Vec<Vec<Dart>> {
        self.orbits(|d| self.sigma(d))
    }

    /// Edge pairs `(id, partner)`, ordered by id.
    pub fn edges(&self) -> Vec<(Dart, Dart)> {
        self.darts
            .iter()
            .filter(|&&d| d < self.alpha(d))
            .map(|&d| (d, self.alpha(d)))
            .collect()
    }

    /// All `phi` orbits, holes included.
    pub fn face_orbits(&self) -> Vec<Vec<Dart>> {
        self.orbits(|d| self.phi(d))
    }

    fn is_hole(&self, orbit: &[Dart]) -> bool {
        !self.boundary.is_empty() && orbit.iter().all(|d| self.boundary.contains(d))
    }

    /// The 2-cells.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        self.face_orbits()
            .into_iter()
            .filter(|f| !self.is_hole(f))
            .collect()
    }

    /// Boundary circles, one dart orbit each.
    pub fn holes(&self) -> Vec<Vec<Dart>> {
        self.face_orbits()
            .into_iter()
            .filter(|f| self.is_hole(f))
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// `V − E + F` over actual cells.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Connected components under `alpha` and `sigma`, each given by its
    /// sorted dart list.
    pub fn components(&self) -> Vec<Vec<Dart>> {
        let mut comp: BTreeMap<Dart, usize> = BTreeMap::new();
        let mut out = Vec::new();
        for &start in &self.darts {
            if comp.contains_key(&start) {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp.insert(start, id);
            while let Some(d) = stack.pop() {
                members.push(d);
                for n in [self.alpha(d), self.sigma(d)] {
                    if let std::collections::btree_map::Entry::Vacant(e) = comp.entry(n) {
                        e.insert(id);
                        stack.push(n);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Back to the raw form (boundary marks are dropped).
    pub fn to_spec(&self) -> MapSpec {
        MapSpec {
            darts: self.darts.clone(),
            alpha: self.edges(),
            sigma: self.vertices(),
        }
    }
}

/// Euler characteristic and genus of a closed connected map.
pub fn euler_genus(map: &CombinatorialMap) -> Result<(i64, usize), MapError> {
    if !map.is_closed() {
        return Err(MapError::NotClosed);
    }
    if map.component_count() != 1 {
        return Err(MapError::Disconnected);
    }
    let chi = map.euler_characteristic();
    if chi % 2 != 0 || chi > 2 {
        return Err(MapError::Malformed(chi));
    }
    Ok((chi, ((2 - chi) / 2) as usize))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("curve has no darts")]
    Empty,
    #[error("dart {0} is not in the map")]
    UnknownDart(Dart),
    #[error("darts {0} and {1} are not consecutive along a vertex")]
    Broken(Dart, Dart),
    #[error("edge of dart {0} is traversed twice")]
    RepeatedEdge(Dart),
    #[error("vertex {0} is visited twice")]
    RepeatedVertex(Dart),
}

/// A closed edge path given by the darts it traverses, in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DartCycle(pub Vec<Dart>);

impl DartCycle {
    pub fn darts(&self) -> &[Dart] {
        &self.0
    }

    /// A simple closed curve: consecutive darts chain head-to-tail, no
    /// edge repeats and no vertex is passed twice.
    pub fn validate(&self, map: &CombinatorialMap) -> Result<(), CycleError> {
        if self.0.is_empty() {
            return Err(CycleError::Empty);
        }
        if let Some(&d) = self.0.iter().find(|&&d| !map.contains(d)) {
            return Err(CycleError::UnknownDart(d));
        }
        let mut edges = BTreeSet::new();
        let mut verts = BTreeSet::new();
        for (i, &d) in self.0.iter().enumerate() {
            let next = self.0[(i + 1) % self.0.len()];
            if map.head(d) != map.vertex_of(next) {
                return Err(CycleError::Broken(d, next));
            }
            if !edges.insert(map.edge_of(d)) {
                return Err(CycleError::RepeatedEdge(d));
            }
            if !verts.insert(map.vertex_of(d)) {
                return Err(CycleError::RepeatedVertex(map.vertex_of(d)));
            }
        }
        Ok(())
    }

    pub fn vertices(&self, map: &CombinatorialMap) -> BTreeSet<Dart> {
        self.0.iter().map(|&d| map.vertex_of(d)).collect()
    }

    pub fn edges(&self, map: &CombinatorialMap) -> BTreeSet<Dart> {
        self.0.iter().map(|&d| map.edge_of(d)).collect()
    }
}

/// A set of vertices and edges of a map, by id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Subcomplex {
    pub vertices: BTreeSet<Dart>,
    pub edges: BTreeSet<Dart>,
}

impl Subcomplex {
    /// Union of the vertices and edges of the given cycles.
    pub fn from_cycles(map: &CombinatorialMap, cycles: &[DartCycle]) -> Self {
        let mut sub = Self::default();
        for c in cycles {
            sub.vertices.extend(c.vertices(map));
            sub.edges.extend(c.edges(map));
        }
        sub
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn torus_spec() -> MapSpec {
        MapSpec {
            darts: vec![1, 2, 3, 4],
            alpha: vec![(1, 3), (2, 4)],
            sigma: vec![vec![1, 2, 3, 4]],
        }
    }

    #[test]
    fn one_vertex_torus() {
        let map = CombinatorialMap::from_spec(&torus_spec()).unwrap();
        assert_eq!(map.vertex_count(), 1);
        assert_eq!(map.edge_count(), 2);
        assert_eq!(map.face_count(), 1);
        assert_eq!(euler_genus(&map).unwrap(), (0, 1));
        assert!(validate_map(&torus_spec()).passed);
    }

    #[test]
    fn octagon_genus_two() {
        // Single face a b a⁻¹ b⁻¹ c d c⁻¹ d⁻¹; edge e has darts 2e+1 (forward)
        // and 2e+2 (backward), and sigma(alpha(d_i)) = d_{i+1} along the face.
        let face: [Dart; 8] = [1, 3, 2, 4, 5, 7, 6, 8];
        let alpha: Vec<(Dart, Dart)> = vec![(1, 2), (3, 4), (5, 6), (7, 8)];
        let al = |d: Dart| if d % 2 == 1 { d + 1 } else { d - 1 };
        let mut sigma = BTreeMap::new();
        for i in 0..8 {
            sigma.insert(al(face[i]), face[(i + 1) % 8]);
        }
        let mut cycle = vec![1];
        let mut x = sigma[&1];
        while x != 1 {
            cycle.push(x);
            x = sigma[&x];
        }
        assert_eq!(cycle.len(), 8, "single vertex");
        let spec = MapSpec {
            darts: (1..=8).collect(),
            alpha,
            sigma: vec![cycle],
        };
        let map = CombinatorialMap::from_spec(&spec).unwrap();
        assert_eq!(euler_genus(&map).unwrap(), (-2, 2));
    }

    #[test]
    fn disjoint_union_is_rejected() {
        let spec = MapSpec {
            darts: vec![1, 2, 3, 4, 5, 6, 7, 8],
            alpha: vec![(1, 3), (2, 4), (5, 7), (6, 8)],
            sigma: vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8]],
        };
        assert_eq!(CombinatorialMap::from_spec(&spec), Err(MapError::Disconnected));
        let r = validate_map(&spec);
        assert!(!r.passed);
        assert_eq!(r.violation.as_deref(), Some("map is not connected"));
    }

    #[test]
    fn alpha_fixed_point_fails() {
        let mut spec = torus_spec();
        spec.alpha = vec![(1, 1), (2, 4), (3, 3)];
        let r = validate_map(&spec);
        assert!(!r.passed);
        assert!(r.violation.unwrap().starts_with("alpha not fixed-point-free"));
    }

    #[test]
    fn sigma_missing_dart_fails() {
        let mut spec = torus_spec();
        spec.sigma = vec![vec![1, 2, 3]];
        let r = validate_map(&spec);
        assert!(r.violation.unwrap().starts_with("sigma not a permutation of darts"));
        spec.sigma = vec![vec![1, 2, 3, 4, 2]];
        assert!(!validate_map(&spec).passed);
    }

    #[test]
    fn duplicate_and_zero_darts() {
        let mut spec = torus_spec();
        spec.darts = vec![1, 2, 3, 3];
        assert_eq!(
            CombinatorialMap::from_spec(&spec),
            Err(MapError::DuplicateDart(3))
        );
        spec.darts = vec![0, 1, 2, 3];
        assert_eq!(
            CombinatorialMap::from_spec(&spec),
            Err(MapError::NonPositiveDart)
        );
    }

    #[test]
    fn cycle_validation() {
        let map = CombinatorialMap::from_spec(&torus_spec()).unwrap();
        assert!(DartCycle(vec![1]).validate(&map).is_ok());
        assert_eq!(DartCycle(vec![]).validate(&map), Err(CycleError::Empty));
        assert_eq!(
            DartCycle(vec![9]).validate(&map),
            Err(CycleError::UnknownDart(9))
        );
        // both darts of one edge
        assert_eq!(
            DartCycle(vec![1, 3]).validate(&map),
            Err(CycleError::RepeatedEdge(3))
        );
        // two loops through the same vertex
        assert_eq!(
            DartCycle(vec![1, 2]).validate(&map),
            Err(CycleError::RepeatedVertex(1))
        );
    }

    #[test]
    fn spec_round_trip() {
        let map = CombinatorialMap::from_spec(&torus_spec()).unwrap();
        let again = CombinatorialMap::from_spec(&map.to_spec()).unwrap();
        assert_eq!(map, again);
    }
}
