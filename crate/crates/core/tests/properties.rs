mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twistfloer_core::certify::{
    certify_casson_bleiler, cyclotomic_factor_check, cyclotomic_polynomial, family_matrix,
};
use twistfloer_core::curvesys::{f2_span_rank, forest_components, Curve, CurveSystem};
use twistfloer_core::exactalg::{IntMatrix, IntPolynomial};
use twistfloer_core::floer::{hf_ranks_acceptable, relative_cohomology_ranks};
use twistfloer_core::surface::grid::GridSurface;
use twistfloer_core::surface::{standard_surface, HomologyClass, Subcomplex};
use twistfloer_core::twist::{
    arrangement_word, conjugator_word, lefschetz_number, reorder_moves, transvection_matrix,
    word_matrix, Forest, Sign, Twist, TwistWord,
};

use common::{names, random_acceptable, shuffled};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn free_system(r: &mut ChaCha8Rng, genus: usize, n: usize) -> CurveSystem {
    let curves = (0..n)
        .map(|i| {
            let c = (0..2 * genus).map(|_| r.gen_range(-2..=2)).collect();
            Curve::new(format!("x{i}"), HomologyClass(c))
        })
        .collect();
    CurveSystem::disjoint(standard_surface(genus).unwrap(), curves).unwrap()
}

fn random_word(r: &mut ChaCha8Rng, sys: &CurveSystem, len: usize) -> TwistWord {
    TwistWord::new(
        (0..len)
            .map(|_| {
                let name = sys.curves()[r.gen_range(0..sys.len())].name.clone();
                if r.gen_bool(0.5) {
                    Twist::positive(name)
                } else {
                    Twist::negative(name)
                }
            })
            .collect(),
    )
}

fn inverse_by_cayley_hamilton(m: &IntMatrix) -> IntMatrix {
    // M⁻¹ = −(M³ + c₃M² + c₂M + c₁I) / c₀ with c₀ = det M = 1
    let c = m.charpoly().unwrap();
    assert_eq!(c.coeff(0), BigInt::from(1));
    let n = m.rows();
    let mut acc = IntMatrix::identity(n);
    for k in (1..n).rev() {
        acc = &acc * m;
        for i in 0..n {
            let v = acc.get(i, i) + c.coeff(k);
            acc.set(i, i, v);
        }
    }
    let mut neg = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            neg.set(i, j, -acc.get(i, j).clone());
        }
    }
    neg
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_matrices_are_symplectic(seed in any::<u64>(), genus in 1usize..=4, len in 0usize..=12) {
        let mut r = rng(seed);
        let sys = free_system(&mut r, genus, 3);
        let w = random_word(&mut r, &sys, len);
        let m = word_matrix(&w, &sys).unwrap();
        prop_assert!(m.preserves_form(&sys.surface().form()).unwrap());
        prop_assert_eq!(m.determinant().unwrap(), BigInt::from(1));
        let inv = word_matrix(&w.inverse(), &sys).unwrap();
        prop_assert_eq!(&m * &inv, IntMatrix::identity(2 * genus));
    }

    #[test]
    fn disjoint_twists_commute(seed in any::<u64>(), genus in 2usize..=4) {
        let mut r = rng(seed);
        let sys = random_acceptable(&mut r, genus, 4);
        for i in 0..sys.len() {
            for j in 0..sys.len() {
                if i == j || sys.is_listed(i, j) {
                    continue;
                }
                let (x, y) = (&sys.curves()[i], &sys.curves()[j]);
                let tx = transvection_matrix(&x.class, Sign::Positive, sys.surface()).unwrap();
                let ty = transvection_matrix(&y.class, Sign::Negative, sys.surface()).unwrap();
                prop_assert_eq!(&tx * &ty, &ty * &tx);
            }
        }
    }

    #[test]
    fn classes_orthogonal_to_the_curves_are_fixed(seed in any::<u64>(), genus in 2usize..=4) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let sys = random_acceptable(&mut r, genus, n);
        let w = random_word(&mut r, &sys, 8);
        let m = word_matrix(&w, &sys).unwrap();
        for _ in 0..20 {
            let x: Vec<i64> = (0..2 * genus).map(|_| r.gen_range(-3..=3)).collect();
            let orth = sys.curves().iter().all(|c| {
                sys.surface().pairing(&HomologyClass(x.clone()), &c.class).unwrap() == 0
            });
            if orth {
                let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
                prop_assert_eq!(m.apply(&xb).unwrap(), xb);
            }
        }
    }

    #[test]
    fn euler_and_lefschetz_for_every_order(seed in any::<u64>(), genus in 2usize..=4, n in 0usize..=6) {
        let mut r = rng(seed);
        let sys = random_acceptable(&mut r, genus, n);
        let ranks = hf_ranks_acceptable(&sys).unwrap();
        let c = forest_components(&sys) as i64;
        let expected = (2 - 2 * genus as i64) + (n as i64 - c);
        prop_assert_eq!(ranks.euler, expected);
        for _ in 0..3 {
            let order = shuffled(&mut r, n);
            let w = arrangement_word(&order, &names(&sys));
            let l = lefschetz_number(&word_matrix(&w, &sys).unwrap()).unwrap();
            prop_assert_eq!(l, BigInt::from(expected));
        }
    }

    #[test]
    fn adding_an_independent_curve(seed in any::<u64>(), genus in 2usize..=4, n in 2usize..=6) {
        let mut r = rng(seed);
        let sys = random_acceptable(&mut r, genus, n);
        let smaller = CurveSystem::new(
            sys.surface().clone(),
            sys.curves()[..n - 1].to_vec(),
            &sys.intersections()
                .iter()
                .filter(|x| x.first < n - 1 && x.second < n - 1)
                .map(|x| (sys.curves()[x.first].name.clone(), sys.curves()[x.second].name.clone(), None))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let independent = f2_span_rank(&sys) == f2_span_rank(&smaller) + 1;
        let joins = forest_components(&sys) == forest_components(&smaller);
        if independent && joins {
            let (big, small) = (hf_ranks_acceptable(&sys).unwrap(), hf_ranks_acceptable(&smaller).unwrap());
            prop_assert_eq!(big.r2, small.r2);
            prop_assert_eq!(big.r1 + 1, small.r1);
        }
    }

    #[test]
    fn conjugators_satisfy_the_matrix_identity(seed in any::<u64>(), genus in 2usize..=4, n in 1usize..=6) {
        let mut r = rng(seed);
        let sys = random_acceptable(&mut r, genus, n);
        let forest = Forest::of_system(&sys).unwrap();
        let target = shuffled(&mut r, n);
        let start: Vec<usize> = (0..n).collect();
        let plan = reorder_moves(&forest, &start, &target).unwrap();
        let f = conjugator_word(&forest, &plan, &names(&sys)).unwrap();
        let fm = word_matrix(&f, &sys).unwrap();
        let fi = word_matrix(&f.inverse(), &sys).unwrap();
        let t_id = word_matrix(&arrangement_word(&start, &names(&sys)), &sys).unwrap();
        let t_pi = word_matrix(&arrangement_word(&target, &names(&sys)), &sys).unwrap();
        prop_assert_eq!(t_pi, &(&fm * &t_id) * &fi);
    }

    #[test]
    fn planted_cyclotomic_factors_are_found(seed in any::<u64>(), m in 1u64..=12) {
        let mut r = rng(seed);
        let deg = r.gen_range(1..=4);
        let mut c: Vec<i64> = (0..=deg).map(|_| r.gen_range(-4..=4)).collect();
        c[0] = r.gen_range(1..=3);
        let f = IntPolynomial::from_i64(&c);
        let before = cyclotomic_factor_check(&f);
        let after = cyclotomic_factor_check(&(&f * &cyclotomic_polynomial(m)));
        prop_assert!(after.contains(&m));
        for h in before {
            prop_assert!(after.contains(&h));
        }
    }

    #[test]
    fn relative_euler_characteristic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = GridSurface::new(2, 4, 4);
        let mut cycles = Vec::new();
        if r.gen_bool(0.7) {
            cycles.push(s.row(0, r.gen_range(0..4)));
        }
        if r.gen_bool(0.5) {
            cycles.push(s.column(1, r.gen_range(0..4)));
        }
        let sub = Subcomplex::from_cycles(&s.map, &cycles);
        let ranks = relative_cohomology_ranks(&s.map, &sub).unwrap();
        prop_assert_eq!(ranks.euler, s.map.euler_characteristic() - sub.euler_characteristic());
    }
}

#[test]
fn star_graph_reaches_every_arrangement() {
    // centre 0, leaves 1..3; every circular arrangement of four labels
    let forest = Forest::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let perms = [
        [0, 1, 2, 3],
        [0, 1, 3, 2],
        [0, 2, 1, 3],
        [0, 2, 3, 1],
        [0, 3, 1, 2],
        [0, 3, 2, 1],
    ];
    for start in &perms {
        for target in &perms {
            reorder_moves(&forest, start, target).unwrap();
        }
    }
}

#[test]
fn certificates_are_invariant_under_inversion() {
    for (k, l) in [(5, 9), (7, 11), (9, 13), (5, 5), (2, 2)] {
        let m = family_matrix(k, l);
        let inv = inverse_by_cayley_hamilton(&m);
        assert_eq!(&m * &inv, IntMatrix::identity(4));
        let (a, b) = (
            certify_casson_bleiler(&m).unwrap(),
            certify_casson_bleiler(&inv).unwrap(),
        );
        assert_eq!(a.verdict, b.verdict, "({k},{l})");
        assert_eq!(a.charpoly, b.charpoly);
    }
}
