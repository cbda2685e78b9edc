//! Random acceptable curve systems shared by the integration suites.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use twistfloer_core::curvesys::{validate_acceptable, Curve, CurveSystem};
use twistfloer_core::surface::{standard_surface, HomologyClass};

fn pair(x: &[i64], y: &[i64]) -> i64 {
    x.chunks(2)
        .zip(y.chunks(2))
        .map(|(p, q)| p[0] * q[1] - p[1] * q[0])
        .sum()
}

/// Random forest on `n` labels: each label joins an earlier one with
/// probability `p`.
pub fn random_forest<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    (1..n)
        .filter_map(|i| rng.gen_bool(p).then(|| (rng.gen_range(0..i), i)))
        .collect()
}

/// An acceptable system of `n` curves on the genus-`genus` surface whose
/// intersection graph is a random forest. Classes have entries in
/// `[-1, 1]` and are found by rejection sampling, one curve at a time.
pub fn random_acceptable<R: Rng>(rng: &mut R, genus: usize, n: usize) -> CurveSystem {
    let dim = 2 * genus;
    'restart: loop {
        let edges = random_forest(rng, n, 0.6);
        let adjacent = |i: usize, j: usize| edges.contains(&(i.min(j), i.max(j)));
        let mut classes: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut found = None;
            for _ in 0..20_000 {
                let c: Vec<i64> = (0..dim).map(|_| rng.gen_range(-1..=1)).collect();
                if c.iter().all(|&x| x == 0) {
                    continue;
                }
                let ok = classes.iter().enumerate().all(|(j, d)| {
                    let p = pair(&c, d);
                    if adjacent(i, j) {
                        p.abs() == 1
                    } else {
                        p == 0
                    }
                });
                if ok {
                    found = Some(c);
                    break;
                }
            }
            match found {
                Some(c) => classes.push(c),
                None => continue 'restart,
            }
        }
        let curves = classes
            .into_iter()
            .enumerate()
            .map(|(i, c)| Curve::new(format!("c{i}"), HomologyClass(c)))
            .collect();
        let pairs: Vec<(String, String, Option<i64>)> = edges
            .iter()
            .map(|&(a, b)| (format!("c{a}"), format!("c{b}"), None))
            .collect();
        let sys = CurveSystem::new(standard_surface(genus).unwrap(), curves, &pairs).unwrap();
        assert!(validate_acceptable(&sys).passed);
        return sys;
    }
}

pub fn shuffled<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

pub fn names(sys: &CurveSystem) -> Vec<String> {
    sys.curves().iter().map(|c| c.name.clone()).collect()
}
