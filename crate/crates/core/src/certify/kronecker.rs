//! Kronecker's complete factor search over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactalg::IntPolynomial;

/// Sample points tried, in order of preference before sorting by cost.
const SAMPLE_RADIUS: i64 = 12;

/// All positive divisors of `v ≠ 0`, by trial division.
fn divisors(v: &BigInt) -> Vec<BigInt> {
    let mut n = v.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while n.is_multiple_of(&d) {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for q in &out {
            let mut x = q.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Newton interpolation through `(xs[i], ys[i])`; `None` when a divided
/// difference is not an integer, which rules out an integer polynomial.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> Option<IntPolynomial> {
    let d = xs.len() - 1;
    let mut c = ys.to_vec();
    for j in 1..=d {
        for i in (j..=d).rev() {
            let num = &c[i] - &c[i - 1];
            let den = BigInt::from(xs[i] - xs[i - j]);
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                return None;
            }
            c[i] = q;
        }
    }
    let mut p = IntPolynomial::constant(c[d].clone());
    for i in (0..d).rev() {
        p = &(&p * &IntPolynomial::linear_root(BigInt::from(xs[i])))
            + &IntPolynomial::constant(c[i].clone());
    }
    Some(p)
}

/// A nontrivial factor of the primitive polynomial `f` (degree ≥ 2), or
/// `None` if `f` is irreducible over ℤ.
pub(super) fn find_factor(f: &IntPolynomial) -> Option<IntPolynomial> {
    let n = f.degree().expect("nonzero");
    let k = n.div_ceil(2) + 1;
    let mut samples: Vec<(usize, i64, BigInt, Vec<BigInt>)> = Vec::new();
    for x in (0..=SAMPLE_RADIUS).flat_map(|x| if x == 0 { vec![0] } else { vec![x, -x] }) {
        let v = f.eval(&BigInt::from(x));
        if v.is_zero() {
            return Some(IntPolynomial::linear_root(BigInt::from(x)));
        }
        samples.push((0, x, v, Vec::new()));
    }
    // cheapest points first: fewest divisors, then smallest |value|
    samples.sort_by(|a, b| a.2.abs().cmp(&b.2.abs()).then(a.1.abs().cmp(&b.1.abs())));
    samples.truncate(k + 2);
    for s in &mut samples {
        s.3 = divisors(&s.2);
        s.0 = s.3.len();
    }
    samples.sort_by_key(|s| (s.0, s.1.abs()));
    samples.truncate(k);

    let xs: Vec<i64> = samples.iter().map(|s| s.1).collect();
    for d in 1..=n / 2 {
        let pts = &samples[..=d];
        // choice[i] indexes a signed divisor of the i-th value; the first
        // value keeps a positive divisor to fix the factor's sign
        let sizes: Vec<usize> = pts
            .iter()
            .enumerate()
            .map(|(i, s)| if i == 0 { s.3.len() } else { 2 * s.3.len() })
            .collect();
        let mut choice = vec![0usize; d + 1];
        loop {
            let ys: Vec<BigInt> = pts
                .iter()
                .zip(&choice)
                .map(|(s, &c)| {
                    let m = s.3.len();
                    if c < m {
                        s.3[c].clone()
                    } else {
                        -s.3[c - m].clone()
                    }
                })
                .collect();
            if let Some(g) = interpolate(&xs[..=d], &ys) {
                if g.degree().is_some_and(|dg| dg >= 1 && dg < n) {
                    let g = g.primitive_part();
                    if f.exact_div(&g).ok().flatten().is_some() {
                        return Some(g);
                    }
                }
            }
            // odometer increment
            let mut i = 0;
            loop {
                if i > d {
                    break;
                }
                choice[i] += 1;
                if choice[i] < sizes[i] {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i > d {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn divisor_lists() {
        let ds: Vec<i64> = divisors(&BigInt::from(-12))
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(ds, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(&BigInt::from(1)).len(), 1);
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let f = p(&[2, -3, 5]);
        let xs = [0, 1, -1];
        let ys: Vec<BigInt> = xs.iter().map(|&x| f.eval(&BigInt::from(x))).collect();
        assert_eq!(interpolate(&xs, &ys), Some(f));
        // values 0, 1 at 0, 2 have slope 1/2
        assert_eq!(interpolate(&[0, 2], &[BigInt::zero(), BigInt::one()]), None);
    }

    #[test]
    fn finds_quadratic_factors() {
        let f = p(&[1, 2, 3, 2, 1]); // (ζ² + ζ + 1)²
        let g = find_factor(&f).unwrap();
        assert_eq!(g, p(&[1, 1, 1]));
        let h = p(&[1, 10, 26, 10, 1]); // (ζ²+4ζ+1)(ζ²+6ζ+1)
        let g = find_factor(&h).unwrap();
        assert!(g == p(&[1, 4, 1]) || g == p(&[1, 6, 1]));
        assert_eq!(find_factor(&p(&[1, 14, 46, 14, 1])), None);
        assert_eq!(find_factor(&p(&[1, 0, 1])), None);
    }
}
