//! Builders for explicit cellular surfaces.
//!
//! [`from_faces`] turns a polygon gluing into a rotation system. [`GridSurface`]
//! uses it to build a closed genus-g surface as a chain of square-grid tori
//! joined by tubes, with named row and column curves that carry the
//! homology classes `a_t` and `b_t`.

use std::collections::BTreeMap;

use super::cmap::{CombinatorialMap, Dart, DartCycle, MapError, MapSpec};
use super::HomologyClass;

/// A side of a polygon: edge index and direction of traversal.
pub type Side = (usize, bool);

/// Dart of edge `e` traversed forwards (`true`) or backwards.
pub fn dart(e: usize, forward: bool) -> Dart {
    (2 * e + if forward { 1 } else { 2 }) as Dart
}

/// Glues oriented polygons along edges `0..num_edges`.
///
/// Each face lists its sides counterclockwise. Every edge must be used
/// once in each direction; the rotation follows from
/// `sigma(alpha(d_i)) = d_{i+1}` along each face.
pub fn from_faces(num_edges: usize, faces: &[Vec<Side>]) -> Result<CombinatorialMap, MapError> {
    let mut sigma: BTreeMap<Dart, Dart> = BTreeMap::new();
    for face in faces {
        for (i, &(e, fwd)) in face.iter().enumerate() {
            let (ne, nfwd) = face[(i + 1) % face.len()];
            let back = dart(e, !fwd);
            if sigma.insert(back, dart(ne, nfwd)).is_some() {
                return Err(MapError::SigmaNotPermutation(back));
            }
        }
    }
    let mut cycles = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &start in sigma.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        seen.insert(start);
        let mut x = sigma[&start];
        while x != start {
            if !seen.insert(x) {
                return Err(MapError::SigmaNotPermutation(x));
            }
            cycle.push(x);
            x = *sigma.get(&x).ok_or(MapError::SigmaNotPermutation(x))?;
        }
        cycles.push(cycle);
    }
    let spec = MapSpec {
        darts: (0..num_edges).flat_map(|e| [dart(e, true), dart(e, false)]).collect(),
        alpha: (0..num_edges).map(|e| (dart(e, true), dart(e, false))).collect(),
        sigma: cycles,
    };
    CombinatorialMap::from_spec(&spec)
}

/// Closed genus-`genus` surface made of `genus` square-grid tori, each
/// `width × height`, joined in a chain by four-square tubes.
///
/// Torus `t` loses the square at `(0, 0)` when `t > 0` and the square at
/// `(2, 2)` when `t < genus − 1`; the tube between `t − 1` and `t` is glued
/// into those holes. Row curves of torus `t` carry `a_{t+1}`, column curves
/// carry `b_{t+1}`, and the row/column through a common grid vertex cross
/// transversally.
#[derive(Debug, Clone)]
pub struct GridSurface {
    pub genus: usize,
    pub width: usize,
    pub height: usize,
    pub map: CombinatorialMap,
}

impl GridSurface {
    pub fn new(genus: usize, width: usize, height: usize) -> Self {
        assert!(genus >= 1, "genus must be positive");
        assert!(width >= 4 && height >= 4, "grid must be at least 4x4");
        let per = 2 * width * height;
        let tube_base = genus * per;
        let num_edges = tube_base + 4 * (genus - 1);
        let g = Self {
            genus,
            width,
            height,
            map: CombinatorialMap::from_spec(&MapSpec::default()).expect("empty map"),
        };
        let mut faces = Vec::new();
        for t in 0..genus {
            for j in 0..height {
                for i in 0..width {
                    if (t > 0 && (i, j) == (0, 0)) || (t + 1 < genus && (i, j) == (2, 2)) {
                        continue;
                    }
                    faces.push(g.square(t, i, j));
                }
            }
        }
        for t in 1..genus {
            let p = g.square(t - 1, 2, 2);
            let q = g.square(t, 0, 0);
            let tube = |k: usize| tube_base + 4 * (t - 1) + k;
            for k in 0..4 {
                let m_next = (4 - (k + 1) % 4) % 4;
                faces.push(vec![p[k], (tube((k + 1) % 4), true), q[m_next], (tube(k), false)]);
            }
        }
        let map = from_faces(num_edges, &faces).expect("grid gluing is consistent");
        Self { map, ..g }
    }

    fn h(&self, t: usize, i: usize, j: usize) -> usize {
        let (w, hh) = (self.width, self.height);
        t * 2 * w * hh + (j % hh) * w + (i % w)
    }

    fn v(&self, t: usize, i: usize, j: usize) -> usize {
        let (w, hh) = (self.width, self.height);
        t * 2 * w * hh + w * hh + (j % hh) * w + (i % w)
    }

    /// Counterclockwise sides of square `(i, j)` in torus `t`, starting at
    /// its lower-left corner.
    fn square(&self, t: usize, i: usize, j: usize) -> Vec<Side> {
        vec![
            (self.h(t, i, j), true),
            (self.v(t, i + 1, j), true),
            (self.h(t, i, j + 1), false),
            (self.v(t, i, j), false),
        ]
    }

    /// Horizontal curve at height `j` of torus `t`.
    pub fn row(&self, t: usize, j: usize) -> DartCycle {
        DartCycle((0..self.width).map(|i| dart(self.h(t, i, j), true)).collect())
    }

    /// Vertical curve at position `i` of torus `t`.
    pub fn column(&self, t: usize, i: usize) -> DartCycle {
        DartCycle((0..self.height).map(|j| dart(self.v(t, i, j), true)).collect())
    }

    /// Homology class of [`row`](Self::row) curves of torus `t`.
    pub fn row_class(&self, t: usize) -> HomologyClass {
        HomologyClass::a(self.genus, t + 1)
    }

    pub fn column_class(&self, t: usize) -> HomologyClass {
        HomologyClass::b(self.genus, t + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::cmap::euler_genus;

    #[test]
    fn tori_and_chains_have_the_right_genus() {
        for genus in 1..=4 {
            let s = GridSurface::new(genus, 4, 4);
            assert_eq!(euler_genus(&s.map).unwrap().1, genus);
        }
        let s = GridSurface::new(2, 5, 4);
        assert_eq!(euler_genus(&s.map).unwrap(), (-2, 2));
    }

    #[test]
    fn rows_and_columns_are_simple_cycles() {
        let s = GridSurface::new(2, 4, 4);
        for t in 0..2 {
            for k in 0..4 {
                s.row(t, k).validate(&s.map).unwrap();
                s.column(t, k).validate(&s.map).unwrap();
            }
        }
    }

    #[test]
    fn subdivided_octagon() {
        // aba⁻¹b⁻¹cdc⁻¹d⁻¹ with each side split in two: 8 edges, 16 darts.
        let word: [(usize, bool); 8] = [
            (0, true),
            (1, true),
            (0, false),
            (1, false),
            (2, true),
            (3, true),
            (2, false),
            (3, false),
        ];
        let mut face = Vec::new();
        for (e, fwd) in word {
            let halves = [(2 * e, true), (2 * e + 1, true)];
            if fwd {
                face.extend(halves);
            } else {
                face.extend(halves.iter().rev().map(|&(h, _)| (h, false)));
            }
        }
        let m = from_faces(8, &[face]).unwrap();
        assert_eq!(m.darts().len(), 16);
        assert_eq!(m.vertex_count(), 5);
        assert_eq!(euler_genus(&m).unwrap(), (-2, 2));
    }

    #[test]
    fn inconsistent_gluing_fails() {
        // edge 0 traversed forwards twice
        let err = from_faces(1, &[vec![(0, true)], vec![(0, true)]]).unwrap_err();
        assert!(matches!(err, MapError::SigmaNotPermutation(_)));
    }
}
