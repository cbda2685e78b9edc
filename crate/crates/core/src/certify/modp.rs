//! Polynomials over F_p with small p, coefficients constant-first.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::exactalg::IntPolynomial;

type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(super) fn reduce(f: &IntPolynomial, p: u64) -> Poly {
    let pb = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = ((c % &pb) + &pb) % &pb;
                r.to_u64().expect("residue fits")
            })
            .collect(),
    )
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let li = inv(m[dm], p);
    while r.len() > dm {
        let top = r.pop().expect("nonempty") * li % p;
        let s = r.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            r[s + i] = (r[s + i] + p - top * c % p) % p;
        }
        r = trim(r);
    }
    trim(r)
}

fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn gcd(mut a: Poly, mut b: Poly, p: u64) -> Poly {
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `f mod p` is irreducible iff no `x^{p^i} − x` with
/// `i ≤ deg/2` shares a factor with it. Requires `p ∤ lc(f)`.
pub(super) fn irreducible_mod_p(f: &IntPolynomial, p: u64) -> bool {
    let fp = reduce(f, p);
    let n = fp.len().saturating_sub(1);
    if n <= 1 {
        return n == 1;
    }
    let mut h: Poly = vec![0, 1];
    for _ in 0..n / 2 {
        // h ← h^p mod f
        let mut acc: Poly = vec![1];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, &fp, p);
            }
            base = mul_mod(&base, &base, &fp, p);
            e >>= 1;
        }
        h = acc;
        let mut hx = h.clone();
        hx.resize(hx.len().max(2), 0);
        hx[1] = (hx[1] + p - 1) % p;
        if gcd(fp.clone(), trim(hx), p).len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        // x² + 1 is irreducible mod 3 and splits mod 5
        let f = IntPolynomial::from_i64(&[1, 0, 1]);
        assert!(irreducible_mod_p(&f, 3));
        assert!(!irreducible_mod_p(&f, 5));
        // (x² + x + 1)² mod 2
        let g = IntPolynomial::from_i64(&[1, 2, 3, 2, 1]);
        assert!(!irreducible_mod_p(&g, 2));
        // x⁴ + x + 1 is irreducible mod 2
        assert!(irreducible_mod_p(&IntPolynomial::from_i64(&[1, 0, 0, 1, 1]), 2));
    }
}
