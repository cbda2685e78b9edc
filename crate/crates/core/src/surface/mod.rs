//! Surface models.
//!
//! The algebraic tier is a genus together with the intersection form on
//! H₁ in the basis `[a₁, b₁, …, a_g, b_g]`, `⟨aᵢ, bᵢ⟩ = +1`. The cellular
//! tier is a combinatorial map (rotation system) that supports cutting
//! along curves and cellular cochain computations.

mod cmap;
mod cut;
pub mod grid;

pub use cmap::{
    euler_genus, validate_map, CombinatorialMap, CycleError, Dart, DartCycle, MapError, MapReport,
    MapSpec, Subcomplex,
};
pub use cut::{check_curves, cut_along, CurveLayout, CutError, CutResult};

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("genus 0 is unsupported: the surface must have χ ≤ 0")]
    GenusZero,
    #[error("class has length {got}, expected {expected}")]
    ClassLength { got: usize, expected: usize },
}

/// A first-homology class in the symplectic basis `[a₁, b₁, …, a_g, b_g]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HomologyClass(pub Vec<i64>);

impl HomologyClass {
    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    /// `a_i` for a 1-based handle index.
    pub fn a(genus: usize, i: usize) -> Self {
        let mut v = vec![0; 2 * genus];
        v[2 * (i - 1)] = 1;
        Self(v)
    }

    pub fn b(genus: usize, i: usize) -> Self {
        let mut v = vec![0; 2 * genus];
        v[2 * (i - 1) + 1] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.0.iter().map(|&c| BigInt::from(c)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraicSurface {
    genus: usize,
    warning: Option<String>,
}

/// The closed genus-`genus` surface with its standard intersection form.
/// Genus 1 is accepted but carries a warning.
pub fn standard_surface(genus: usize) -> Result<AlgebraicSurface, SurfaceError> {
    match genus {
        0 => Err(SurfaceError::GenusZero),
        1 => Ok(AlgebraicSurface {
            genus,
            warning: Some("genus 1: χ(Σ) = 0, results outside the hyperbolic range".into()),
        }),
        _ => Ok(AlgebraicSurface {
            genus,
            warning: None,
        }),
    }
}

impl AlgebraicSurface {
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Rank of H₁, i.e. `2g`.
    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn warning(&self) -> Option<&str> {
        self.warning.as_deref()
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64
    }

    /// The intersection form `J`, with `⟨x, y⟩ = xᵀ J y`.
    pub fn form(&self) -> IntMatrix {
        let n = self.dim();
        let mut j = IntMatrix::zeros(n, n);
        for h in 0..self.genus {
            j.set(2 * h, 2 * h + 1, BigInt::from(1));
            j.set(2 * h + 1, 2 * h, BigInt::from(-1));
        }
        j
    }

    pub fn check_class(&self, c: &HomologyClass) -> Result<(), SurfaceError> {
        if c.len() == self.dim() {
            Ok(())
        } else {
            Err(SurfaceError::ClassLength {
                got: c.len(),
                expected: self.dim(),
            })
        }
    }

    /// Algebraic intersection number `⟨x, y⟩`.
    pub fn pairing(&self, x: &HomologyClass, y: &HomologyClass) -> Result<i128, SurfaceError> {
        self.check_class(x)?;
        self.check_class(y)?;
        Ok(pair_slices(&x.0, &y.0))
    }

    /// Human-readable basis labels `a1, b1, a2, …`.
    pub fn basis_labels(&self) -> Vec<String> {
        (1..=self.genus)
            .flat_map(|h| [format!("a{h}"), format!("b{h}")])
            .collect()
    }
}

pub(crate) fn pair_slices(x: &[i64], y: &[i64]) -> i128 {
    x.chunks(2)
        .zip(y.chunks(2))
        .map(|(p, q)| p[0] as i128 * q[1] as i128 - p[1] as i128 * q[0] as i128)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_form_is_block_diagonal() {
        let s = standard_surface(2).unwrap();
        let expected = IntMatrix::from_rows(&[
            vec![0, 1, 0, 0],
            vec![-1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, -1, 0],
        ])
        .unwrap();
        assert_eq!(s.form(), expected);
        assert!(s.warning().is_none());
    }

    #[test]
    fn form_is_skew_and_squares_to_minus_identity() {
        for g in 1..=4 {
            let j = standard_surface(g).unwrap().form();
            let neg_t = IntMatrix::new(
                j.rows(),
                j.cols(),
                j.transpose().to_rows().concat().into_iter().map(|x| -x).collect(),
            )
            .unwrap();
            assert_eq!(j, neg_t);
            let sq = &j * &j;
            for i in 0..j.rows() {
                for k in 0..j.cols() {
                    let want = if i == k { -1 } else { 0 };
                    assert_eq!(sq.get(i, k), &BigInt::from(want));
                }
            }
        }
    }

    #[test]
    fn genus_one_warns_and_zero_fails() {
        let s = standard_surface(1).unwrap();
        assert_eq!(s.form().rows(), 2);
        assert!(s.warning().is_some());
        assert_eq!(standard_surface(0), Err(SurfaceError::GenusZero));
    }

    #[test]
    fn pairing_matches_form() {
        let s = standard_surface(2).unwrap();
        let a1 = HomologyClass::a(2, 1);
        let b1 = HomologyClass::b(2, 1);
        assert_eq!(s.pairing(&a1, &b1).unwrap(), 1);
        assert_eq!(s.pairing(&b1, &a1).unwrap(), -1);
        assert_eq!(s.pairing(&a1, &HomologyClass::a(2, 2)).unwrap(), 0);
        let j = s.form();
        let x = HomologyClass(vec![1, 2, -3, 4]);
        let y = HomologyClass(vec![0, -1, 5, 2]);
        let jy = j.apply(&y.to_bigints()).unwrap();
        let via_matrix: BigInt = x.to_bigints().iter().zip(&jy).map(|(a, b)| a * b).sum();
        assert_eq!(BigInt::from(s.pairing(&x, &y).unwrap()), via_matrix);
    }

    #[test]
    fn pairing_rejects_wrong_length() {
        let s = standard_surface(2).unwrap();
        let err = s.pairing(&HomologyClass(vec![1, 0]), &HomologyClass::a(2, 1));
        assert_eq!(err, Err(SurfaceError::ClassLength { got: 2, expected: 4 }));
    }
}
