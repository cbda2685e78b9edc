//! Casson–Bleiler certification from the action on H₁.
//!
//! A mapping class whose symplectic action has a characteristic polynomial
//! that is irreducible over ℤ, has no root of unity as a zero, and is not a
//! polynomial in `ζⁿ` for any `n > 1` is pseudo-Anosov. The test is only
//! sufficient: failing it says nothing about the class.

mod kronecker;
mod modp;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{AlgebraError, IntMatrix, IntPolynomial};

/// Largest `|a|` tried by the Eisenstein fast path on `f(ζ + a)`; shifts
/// are tried in the order 0, 1, −1, 2, −2, ….
pub const EISENSTEIN_MAX_SHIFT: i64 = 8;
/// Primes tried by the Eisenstein and mod-p fast paths.
pub const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97,
];
/// Largest degree the complete Kronecker decision runs on.
pub const KRONECKER_MAX_DEGREE: usize = 8;

pub const SUFFICIENCY_CAVEAT: &str = "Casson-Bleiler is a sufficient criterion only: a matrix \
that is not certified may still be the action of a pseudo-Anosov class.";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("the zero polynomial has no factorization")]
    Zero,
    #[error("constant polynomial {0} has no irreducibility verdict")]
    Constant(BigInt),
    #[error("degree {degree} exceeds the complete-search bound of {KRONECKER_MAX_DEGREE}")]
    DegreeBound {
        degree: usize,
        /// What the fast paths established, if anything.
        partial: Option<Irreducibility>,
    },
    #[error("matrix must be 2g x 2g with g >= 1, got {rows}x{cols}")]
    Shape { rows: usize, cols: usize },
    #[error("matrix preserves no nondegenerate alternating form, so it is not a mapping-class action on H1")]
    NotSymplectic,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// How an irreducibility verdict was reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "stage", rename_all = "snake_case")]
pub enum Witness {
    /// Primitive polynomials of degree one are irreducible.
    Linear,
    /// `f(ζ + shift)` is Eisenstein at `prime`.
    Eisenstein { shift: i64, prime: u64 },
    /// `f` stays irreducible modulo `prime`.
    ModP { prime: u64 },
    /// A nontrivial factor.
    Factor { factor: IntPolynomial },
    /// Kronecker's search found no factor.
    SearchExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub witness: Witness,
}

fn is_eisenstein(g: &IntPolynomial, p: &BigInt) -> bool {
    let c = g.coeffs();
    let n = c.len() - 1;
    !c[n].is_multiple_of(p)
        && c[..n].iter().all(|x| x.is_multiple_of(p))
        && !c[0].is_multiple_of(&(p * p))
}

/// The Eisenstein and mod-p stages; sufficient for irreducibility only.
fn fast_path(f: &IntPolynomial) -> Option<Irreducibility> {
    let shifts = (0..=EISENSTEIN_MAX_SHIFT).flat_map(|a| if a == 0 { vec![0] } else { vec![a, -a] });
    for a in shifts {
        let g = f.shift(&BigInt::from(a));
        for &p in &SMALL_PRIMES {
            if is_eisenstein(&g, &BigInt::from(p)) {
                return Some(Irreducibility {
                    irreducible: true,
                    witness: Witness::Eisenstein { shift: a, prime: p },
                });
            }
        }
    }
    let lead = f.leading().expect("nonzero");
    for &p in &SMALL_PRIMES {
        if !lead.is_multiple_of(&BigInt::from(p)) && modp::irreducible_mod_p(f, p) {
            return Some(Irreducibility {
                irreducible: true,
                witness: Witness::ModP { prime: p },
            });
        }
    }
    None
}

/// Decides irreducibility over ℤ of the primitive part of `f`.
///
/// Runs the Eisenstein fast path on shifts up to [`EISENSTEIN_MAX_SHIFT`], then
/// irreducibility modulo [`SMALL_PRIMES`], then Kronecker's complete search.
pub fn is_irreducible_over_z(f: &IntPolynomial) -> Result<Irreducibility, CertifyError> {
    let Some(deg) = f.degree() else {
        return Err(CertifyError::Zero);
    };
    if deg == 0 {
        return Err(CertifyError::Constant(f.coeff(0)));
    }
    let f = f.primitive_part();
    if deg == 1 {
        return Ok(Irreducibility {
            irreducible: true,
            witness: Witness::Linear,
        });
    }
    let fast = fast_path(&f);
    if deg > KRONECKER_MAX_DEGREE {
        return Err(CertifyError::DegreeBound {
            degree: deg,
            partial: fast,
        });
    }
    if let Some(v) = fast {
        return Ok(v);
    }
    Ok(match kronecker::find_factor(&f) {
        Some(factor) => Irreducibility {
            irreducible: false,
            witness: Witness::Factor { factor },
        },
        None => Irreducibility {
            irreducible: true,
            witness: Witness::SearchExhausted,
        },
    })
}

fn totient(m: u64) -> u64 {
    let (mut n, mut out, mut p) = (m, m, 2);
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Cache of cyclotomic polynomials built by `Φ_m = (ζ^m − 1) / ∏_{d | m, d < m} Φ_d`.
#[derive(Debug, Default)]
pub struct Cyclotomics {
    cache: BTreeMap<u64, IntPolynomial>,
}

impl Cyclotomics {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, m: u64) -> IntPolynomial {
        assert!(m >= 1, "cyclotomic index must be positive");
        if let Some(p) = self.cache.get(&m) {
            return p.clone();
        }
        let mut num = IntPolynomial::monomial(BigInt::one(), m as usize);
        num = &num - &IntPolynomial::one();
        for d in (1..m).filter(|d| m % d == 0) {
            let phi = self.get(d);
            num = num
                .exact_div(&phi)
                .expect("nonzero divisor")
                .expect("Φ_d divides ζ^m − 1");
        }
        self.cache.insert(m, num.clone());
        num
    }
}

/// `Φ_m`.
pub fn cyclotomic_polynomial(m: u64) -> IntPolynomial {
    Cyclotomics::new().get(m)
}

/// Every `m` with `Φ_m | f`, in increasing order. Only `m ≤ 2·deg²` with
/// `φ(m) ≤ deg` can qualify.
pub fn cyclotomic_factor_check(f: &IntPolynomial) -> Vec<u64> {
    let Some(deg) = f.degree() else {
        return Vec::new();
    };
    let mut cyc = Cyclotomics::new();
    let bound = (2 * deg * deg).max(2) as u64;
    (1..=bound)
        .filter(|&m| totient(m) <= deg as u64)
        .filter(|&m| cyc.get(m).divides(f).unwrap_or(false))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerPattern {
    /// Largest `n` with `f ∈ ℤ[ζⁿ]`.
    pub n: u64,
    /// Set for constant polynomials, where every `n` works and 1 is reported.
    pub degenerate: bool,
}

/// Gcd of the exponents carrying nonzero coefficients.
pub fn power_pattern_check(f: &IntPolynomial) -> PowerPattern {
    let n = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(0u64, |g, (e, _)| g.gcd(&(e as u64)));
    if n == 0 {
        PowerPattern {
            n: 1,
            degenerate: true,
        }
    } else {
        PowerPattern {
            n,
            degenerate: false,
        }
    }
}

/// A nondegenerate alternating form preserved by a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantForm {
    /// True when the standard form `J` itself is preserved.
    pub standard: bool,
    pub form: IntMatrix,
}

fn standard_form(n: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(n, n);
    for h in 0..n / 2 {
        j.set(2 * h, 2 * h + 1, BigInt::one());
        j.set(2 * h + 1, 2 * h, -BigInt::one());
    }
    j
}

/// Finds a nondegenerate alternating `B` with `mᵀ B m = B`.
///
/// The standard form is tried first. Otherwise the space of invariant
/// alternating forms is solved exactly and random integer combinations of
/// its basis (fixed seed) are tested for nonzero determinant; a nonzero
/// determinant polynomial survives such a test with overwhelming
/// probability.
pub fn invariant_form(m: &IntMatrix) -> Result<Option<InvariantForm>, CertifyError> {
    let n = m.rows();
    if !m.is_square() || n == 0 || n % 2 == 1 {
        return Err(CertifyError::Shape {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let j = standard_form(n);
    if m.preserves_form(&j)? {
        return Ok(Some(InvariantForm {
            standard: true,
            form: j,
        }));
    }
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    // (mᵀ B m − B)_{kl} for k < l, linear in the b_ij
    let mut rows = Vec::new();
    for &(k, l) in &unknowns {
        rows.push(
            unknowns
                .iter()
                .map(|&(i, j)| {
                    let mut c = m.get(i, k) * m.get(j, l) - m.get(j, k) * m.get(i, l);
                    if (i, j) == (k, l) {
                        c -= 1;
                    }
                    c
                })
                .collect::<Vec<BigInt>>(),
        );
    }
    let basis = IntMatrix::from_rows(&rows)?.kernel_basis();
    if basis.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7f4a_7c15);
    for attempt in 0..16 {
        let coeffs: Vec<BigInt> = if attempt == 0 && basis.len() == 1 {
            vec![BigInt::one()]
        } else {
            (0..basis.len())
                .map(|_| BigInt::from(rng.gen_range(-64i64..=64)))
                .collect()
        };
        let mut b = IntMatrix::zeros(n, n);
        for (u, &(i, j)) in unknowns.iter().enumerate() {
            let v: BigInt = basis.iter().zip(&coeffs).map(|(x, c)| &x[u] * c).sum();
            b.set(j, i, -v.clone());
            b.set(i, j, v);
        }
        if !b.determinant()?.is_zero() {
            return Ok(Some(InvariantForm {
                standard: false,
                form: b,
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IrreducibleVerdict {
    Yes,
    No,
    /// Degree beyond the complete search and no fast path fired.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    CertifiedPseudoAnosov,
    NotCertifiedReducible,
    NotCertifiedRootOfUnity,
    NotCertifiedPowerPattern,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::CertifiedPseudoAnosov => "certified_pseudo_anosov",
            Self::NotCertifiedReducible => "not_certified_reducible",
            Self::NotCertifiedRootOfUnity => "not_certified_root_of_unity",
            Self::NotCertifiedPowerPattern => "not_certified_power_pattern",
            Self::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub charpoly: IntPolynomial,
    pub irreducible: IrreducibleVerdict,
    pub witness: Option<Witness>,
    pub cyclotomic_hits: Vec<u64>,
    pub power_pattern_n: u64,
    pub power_pattern_degenerate: bool,
    /// Whether the matrix preserves the standard form `J` (as opposed to
    /// some other nondegenerate alternating form).
    pub standard_form: bool,
    pub verdict: Verdict,
    pub caveat: &'static str,
}

impl CertificateReport {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::CertifiedPseudoAnosov
    }
}

/// Runs the three Casson–Bleiler checks on `charpoly(m)`.
///
/// When several checks fail the verdict reports the first of: root of
/// unity, reducible, power pattern, inconclusive.
pub fn certify_casson_bleiler(m: &IntMatrix) -> Result<CertificateReport, CertifyError> {
    let form = invariant_form(m)?.ok_or(CertifyError::NotSymplectic)?;
    let charpoly = m.charpoly()?;
    let (irreducible, witness) = match is_irreducible_over_z(&charpoly) {
        Ok(v) => (
            if v.irreducible {
                IrreducibleVerdict::Yes
            } else {
                IrreducibleVerdict::No
            },
            Some(v.witness),
        ),
        Err(CertifyError::DegreeBound { partial, .. }) => match partial {
            Some(v) => (IrreducibleVerdict::Yes, Some(v.witness)),
            None => (IrreducibleVerdict::Unknown, None),
        },
        Err(e) => return Err(e),
    };
    let cyclotomic_hits = cyclotomic_factor_check(&charpoly);
    let pattern = power_pattern_check(&charpoly);
    let verdict = if !cyclotomic_hits.is_empty() {
        Verdict::NotCertifiedRootOfUnity
    } else if irreducible == IrreducibleVerdict::No {
        Verdict::NotCertifiedReducible
    } else if pattern.n > 1 {
        Verdict::NotCertifiedPowerPattern
    } else if irreducible == IrreducibleVerdict::Unknown {
        Verdict::Inconclusive
    } else {
        Verdict::CertifiedPseudoAnosov
    };
    Ok(CertificateReport {
        charpoly,
        irreducible,
        witness,
        cyclotomic_hits,
        power_pattern_n: pattern.n,
        power_pattern_degenerate: pattern.degenerate,
        standard_form: form.standard,
        verdict,
        caveat: SUFFICIENCY_CAVEAT,
    })
}

/// The 4×4 action matrix of the two-parameter family of twist compositions
/// on the genus-2 surface, in the basis `a₁, b₁, a₂, b₂`.
pub fn family_matrix(k: i64, l: i64) -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![0, 0, -1, 1],
        vec![-k, -k, k * l, -1],
        vec![1, 0, -l, 0],
        vec![1, 1, -l, 0],
    ])
    .expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn difference_of_squares_is_reducible() {
        let v = is_irreducible_over_z(&p(&[1, 0, -1])).unwrap();
        assert!(!v.irreducible);
        match v.witness {
            Witness::Factor { factor } => {
                assert!(factor == p(&[1, -1]) || factor == p(&[1, 1]))
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn family_quartic_is_irreducible() {
        let v = is_irreducible_over_z(&p(&[1, 14, 46, 14, 1])).unwrap();
        assert!(v.irreducible);
        // f(ζ+1) = ζ⁴+18ζ³+94ζ²+152ζ+76 and 4 | 76, so (1, 2) is not a witness
        assert_ne!(v.witness, Witness::Eisenstein { shift: 1, prime: 2 });
    }

    #[test]
    fn square_found_by_kronecker() {
        let v = is_irreducible_over_z(&p(&[1, 2, 3, 2, 1])).unwrap();
        assert_eq!(
            v,
            Irreducibility {
                irreducible: false,
                witness: Witness::Factor {
                    factor: p(&[1, 1, 1])
                }
            }
        );
    }

    #[test]
    fn constants_and_bounds() {
        assert_eq!(is_irreducible_over_z(&IntPolynomial::zero()), Err(CertifyError::Zero));
        assert!(matches!(
            is_irreducible_over_z(&p(&[5])),
            Err(CertifyError::Constant(_))
        ));
        // ζ⁹ − 2 is Eisenstein at 2, so the partial result is a proof
        let mut c = vec![1];
        c.extend([0; 8]);
        c.push(-2);
        match is_irreducible_over_z(&p(&c)) {
            Err(CertifyError::DegreeBound { degree: 9, partial }) => {
                assert_eq!(
                    partial.unwrap().witness,
                    Witness::Eisenstein { shift: 0, prime: 2 }
                );
            }
            other => panic!("{other:?}"),
        }
        assert!(is_irreducible_over_z(&p(&[2, 4])).unwrap().irreducible);
        // content is dropped first: 2ζ² − 2 = 2(ζ−1)(ζ+1)
        assert!(!is_irreducible_over_z(&p(&[2, 0, -2])).unwrap().irreducible);
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), p(&[1, -1]));
        assert_eq!(cyclotomic_polynomial(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(15).degree(), Some(8));
        assert_eq!(totient(36), 12);
    }

    #[test]
    fn cyclotomic_hits() {
        assert_eq!(cyclotomic_factor_check(&p(&[1, 1, 1])), vec![3]);
        assert!(cyclotomic_factor_check(&p(&[1, 14, 46, 14, 1])).is_empty());
        assert_eq!(cyclotomic_factor_check(&p(&[1, 0, 0, 0, -1])), vec![1, 2, 4]);
    }

    #[test]
    fn power_patterns() {
        assert_eq!(power_pattern_check(&p(&[1, 0, 3, 0, 1])).n, 2);
        assert_eq!(power_pattern_check(&p(&[1, 14, 46, 14, 1])).n, 1);
        let c = power_pattern_check(&p(&[5]));
        assert_eq!((c.n, c.degenerate), (1, true));
        assert_eq!(power_pattern_check(&p(&[1, 0, 0, 0])).n, 3);
    }

    #[test]
    fn identity_is_not_certified() {
        for g in 1..=3 {
            let r = certify_casson_bleiler(&IntMatrix::identity(2 * g)).unwrap();
            assert_eq!(r.verdict, Verdict::NotCertifiedRootOfUnity);
            assert_eq!(r.cyclotomic_hits, vec![1]);
            assert!(r.standard_form);
        }
    }

    #[test]
    fn family_matrices() {
        for (k, l) in [(5, 9), (7, 11), (9, 13)] {
            let r = certify_casson_bleiler(&family_matrix(k, l)).unwrap();
            assert_eq!(r.verdict, Verdict::CertifiedPseudoAnosov, "({k},{l})");
            assert!(!r.standard_form);
            assert!(r.charpoly.is_palindromic());
        }
        // ζ⁴+4ζ³+5ζ²+4ζ+1 = (ζ²+ζ+1)(ζ²+3ζ+1)
        let r = certify_casson_bleiler(&family_matrix(2, 2)).unwrap();
        assert_eq!(r.charpoly, p(&[1, 4, 5, 4, 1]));
        assert_eq!(r.cyclotomic_hits, vec![3]);
        assert_eq!(r.irreducible, IrreducibleVerdict::No);
        assert_eq!(r.verdict, Verdict::NotCertifiedRootOfUnity);
        // (ζ²+4ζ+1)(ζ²+6ζ+1): reducible without cyclotomic factors
        let r = certify_casson_bleiler(&family_matrix(5, 5)).unwrap();
        assert_eq!(r.verdict, Verdict::NotCertifiedReducible);
    }

    #[test]
    fn non_symplectic_is_rejected() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(certify_casson_bleiler(&m), Err(CertifyError::NotSymplectic));
        let odd = IntMatrix::identity(3);
        assert!(matches!(
            certify_casson_bleiler(&odd),
            Err(CertifyError::Shape { .. })
        ));
    }

    #[test]
    fn power_pattern_verdict() {
        // companion matrix of the irreducible ζ⁴ − 5ζ² + 1
        let m = IntMatrix::from_rows(&[
            vec![0, 0, 0, -1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 5],
            vec![0, 0, 1, 0],
        ])
        .unwrap();
        let r = certify_casson_bleiler(&m).unwrap();
        assert_eq!(r.irreducible, IrreducibleVerdict::Yes);
        assert_eq!(r.power_pattern_n, 2);
        assert_eq!(r.verdict, Verdict::NotCertifiedPowerPattern);
        let cat = IntMatrix::from_rows(&[vec![2, 3], vec![3, 5]]).unwrap();
        assert!(certify_casson_bleiler(&cat).unwrap().is_certified());
    }
}
