use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{AlgebraError, JsonInt};

/// Integer polynomial, coefficients stored constant term first.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial
/// has an empty coefficient vector and every other polynomial has a
/// nonzero leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Coefficients given highest degree first, the way polynomials are
    /// usually written down.
    pub fn from_i64(high_first: &[i64]) -> Self {
        Self::new(high_first.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        Self::new(coeffs)
    }

    /// `ζ − a`
    pub fn linear_root(a: BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `f(ζ + a)` expanded coefficient by coefficient with binomials.
    pub fn shift(&self, a: &BigInt) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![BigInt::zero(); n];
        let mut powers = Vec::with_capacity(n);
        let mut p = BigInt::one();
        for _ in 0..n {
            powers.push(p.clone());
            p *= a;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // binom(i, j) built incrementally
            let mut binom = BigInt::one();
            for j in 0..=i {
                out[j] += c * &binom * &powers[i - j];
                binom = binom * (i - j) / (j + 1);
            }
        }
        Self::new(out)
    }

    /// `ζ^deg · f(1/ζ)`
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Gcd of the coefficients, signed like the leading coefficient.
    pub fn content(&self) -> BigInt {
        let g = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        match self.leading() {
            Some(l) if l.is_negative() => -g,
            _ => g,
        }
    }

    /// The polynomial divided by its content; leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Quotient `self / d` when it exists in ℤ[ζ].
    pub fn exact_div(&self, d: &Self) -> Result<Option<Self>, AlgebraError> {
        let Some(dd) = d.degree() else {
            return Err(AlgebraError::ZeroDivisor);
        };
        let Some(nd) = self.degree() else {
            return Ok(Some(Self::zero()));
        };
        if nd < dd {
            return Ok(None);
        }
        let lead = d.leading().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Ok(None);
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Ok(Some(Self::new(quot)))
        } else {
            Ok(None)
        }
    }

    /// Pseudo-remainder: `lc(d)^(deg f − deg d + 1) · f mod d`, computed
    /// without leaving ℤ.
    pub fn pseudo_rem(&self, d: &Self) -> Result<Self, AlgebraError> {
        let Some(dd) = d.degree() else {
            return Err(AlgebraError::ZeroDivisor);
        };
        let lead = d.leading().expect("nonzero");
        let mut rem = self.coeffs.clone();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.pop().expect("nonempty");
            let shift = rem.len() - dd;
            for c in rem.iter_mut() {
                *c *= lead;
            }
            for (i, dc) in d.coeffs.iter().take(dd).enumerate() {
                rem[shift + i] -= &top * dc;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok(Self::new(rem))
    }

    /// Exact divisibility in ℤ[ζ]: the contents must divide and the
    /// primitive parts must leave a zero pseudo-remainder.
    pub fn divides(&self, f: &Self) -> Result<bool, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroDivisor);
        }
        if f.is_zero() {
            return Ok(true);
        }
        if !f.content().is_multiple_of(&self.content()) {
            return Ok(false);
        }
        let pd = self.primitive_part();
        let pf = f.primitive_part();
        Ok(pf.pseudo_rem(&pd)?.is_zero())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one() && e > 0;
            if !unit {
                write!(f, "{abs}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{e}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as the coefficient list, constant term first.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c: Vec<JsonInt> = self.coeffs.iter().map(JsonInt).collect();
        c.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    /// Independent shift oracle: Horner evaluation with (ζ + a) as the
    /// indeterminate.
    fn horner_shift(f: &IntPolynomial, a: i64) -> IntPolynomial {
        let lin = p(&[1, a]);
        f.coeffs()
            .iter()
            .rev()
            .fold(IntPolynomial::zero(), |acc, c| {
                &(&acc * &lin) + &IntPolynomial::constant(c.clone())
            })
    }

    #[test]
    fn trimming_and_degree() {
        let z = IntPolynomial::new(vec![BigInt::zero(), BigInt::zero()]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(p(&[0, 0, 3, 1]).degree(), Some(1));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[1, 0, 0]).shift(&0.into()), p(&[1, 0, 0]));
        assert_eq!(p(&[1, 0, 0]).shift(&1.into()), p(&[1, 2, 1]));
        let chi = p(&[1, 14, 46, 14, 1]);
        let shifted = chi.shift(&1.into());
        assert_eq!(shifted, horner_shift(&chi, 1));
        assert_eq!(shifted, p(&[1, 18, 94, 152, 76]));
        // non-leading coefficients are even, but 76 is divisible by 4
        assert!(shifted.coeffs()[..4].iter().all(|c| c.is_even()));
        assert!(shifted.coeff(0).is_multiple_of(&BigInt::from(4)));
    }

    #[test]
    fn divisibility_examples() {
        assert!(p(&[1, -1]).divides(&p(&[1, 0, -1])).unwrap());
        assert!(p(&[1, 1, 1]).divides(&p(&[1, 0, 0, -1])).unwrap());
        assert!(!p(&[1, 0, 1]).divides(&p(&[1, 14, 46, 14, 1])).unwrap());
        assert_eq!(
            IntPolynomial::zero().divides(&p(&[1])),
            Err(AlgebraError::ZeroDivisor)
        );
    }

    #[test]
    fn divisibility_respects_content() {
        // 2 does not divide ζ + 1 in ℤ[ζ], although it does over ℚ
        assert!(!p(&[2]).divides(&p(&[1, 1])).unwrap());
        assert!(p(&[2, 2]).divides(&p(&[4, 0, -4])).unwrap());
        assert!(!p(&[2, 2]).divides(&p(&[1, 0, -1])).unwrap());
        assert!(p(&[1, 1]).divides(&IntPolynomial::zero()).unwrap());
    }

    #[test]
    fn exact_division() {
        let q = p(&[1, 0, 0, -1]).exact_div(&p(&[1, -1])).unwrap();
        assert_eq!(q, Some(p(&[1, 1, 1])));
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[2, 1])).unwrap(), None);
    }

    #[test]
    fn content_and_primitive_part() {
        let f = p(&[-4, 6, -2]);
        assert_eq!(f.content(), BigInt::from(-2));
        assert_eq!(f.primitive_part(), p(&[2, -3, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 14, 46, 14, 1]).to_string(), "z^4 + 14z^3 + 46z^2 + 14z + 1");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "-z^2 + 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }
}
