//! Randomized invariants of the engine, one proptest per property.

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tachikawa::complex::{hom_complex, random_complex, random_injective_complex, tensor_complex};
use tachikawa::derived::{bass_truncation, poincare_truncation, tor_dim, FreeResolution};
use tachikawa::detect::{colon_length_identity, golod, gorenstein, serre_bound};
use tachikawa::harness::random_base_change;
use tachikawa::linalg::{Fp, Matrix};
use tachikawa::modules::{
    biduality_map, fiber_dual_comparison, frobenius_test, hom_module, is_free_rank_one, random_element,
    random_maxideal_element, random_module, symmetric_square_map, tensor_module, AModule,
};
use tachikawa::poly::{buchberger, parse_ideal, quotient_algebra_from_text, MultiPoly};
use tachikawa::series::{
    series_coefficients, square_factor_exclusion, table_verdicts, IntegerPolynomial, RationalSeries,
};
use tachikawa::LocalAlgebra;

const IDEALS: &[(u32, &str)] = &[
    (2, "x^2"),
    (3, "x^3"),
    (2, "x^2, y^2"),
    (3, "x^2, x*y, y^2"),
    (5, "x^2, y^3"),
    (2, "x^2, x*y, y^3"),
    (3, "x^3, x*y, y^2"),
    (2, "x^2, y^2, z^2"),
    (3, "x^2 - y^2, x*y"),
    (2, "x^2, x*y, x*z, y^2, y*z, z^2"),
];

fn algebra(i: usize) -> Arc<LocalAlgebra> {
    let (p, ideal) = IDEALS[i % IDEALS.len()];
    quotient_algebra_from_text(Fp::new(p).unwrap(), ideal, None).unwrap()
}

fn random_matrix(f: Fp, rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let p = f.characteristic();
    // Sparse entries make rank deficiency common.
    let data = (0..rows * cols).map(|_| if rng.gen_bool(0.4) { rng.gen_range(0..p) } else { 0 }).collect();
    Matrix::from_vec(f, rows, cols, data).unwrap()
}

fn random_poly(f: Fp, nvars: usize, rng: &mut ChaCha8Rng) -> MultiPoly {
    let mut g = MultiPoly::zero(f, nvars);
    for _ in 0..rng.gen_range(1..5) {
        let mut t = MultiPoly::constant(f, nvars, rng.gen_range(1..f.characteristic()));
        for v in 0..nvars {
            t = t.mul(&MultiPoly::var(f, nvars, v).pow(rng.gen_range(0..4)));
        }
        g = g.add(&t);
    }
    g
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn rank_nullity(seed: u64, p in prop::sample::select(vec![2u32, 3, 5, 7]), rows in 1usize..9, cols in 1usize..9) {
        let f = Fp::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(f, &mut rng, rows, cols);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), cols);
        for v in k.vectors() {
            prop_assert!(m.apply(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn kernel_is_canonical(seed: u64, rows in 1usize..7, cols in 1usize..8) {
        let f = Fp::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(f, &mut rng, rows, cols);
        // An invertible row operation does not change the kernel.
        let mut g = random_matrix(f, &mut rng, rows, rows);
        for i in 0..rows {
            g.set(i, i, 1);
            for j in 0..i {
                g.set(i, j, 0);
            }
        }
        prop_assert_eq!(g.mul(&m).kernel(), m.kernel());
    }

    #[test]
    fn solve_finds_solutions(seed: u64, rows in 1usize..8, cols in 1usize..8) {
        let f = Fp::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(f, &mut rng, rows, cols);
        let x: Vec<u32> = (0..cols).map(|_| rng.gen_range(0..3)).collect();
        let b = m.apply(&x);
        let y = m.solve(&b).unwrap();
        prop_assert!(y.is_some());
        prop_assert_eq!(m.apply(&y.unwrap()), b);
    }

    #[test]
    fn normal_form_is_a_retraction(seed: u64, i in 0usize..10) {
        let (p, ideal) = IDEALS[i];
        let f = Fp::new(p).unwrap();
        let parsed = parse_ideal(f, ideal).unwrap();
        let n = parsed.variables.len();
        let gb = buchberger(&parsed.generators).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, h) = (random_poly(f, n, &mut rng), random_poly(f, n, &mut rng));
        let c = rng.gen_range(0..p);
        let (ng, nh) = (gb.normal_form(&g), gb.normal_form(&h));
        prop_assert_eq!(gb.normal_form(&ng), ng.clone());
        prop_assert_eq!(gb.normal_form(&g.scale(c).add(&h)), ng.scale(c).add(&nh));
        prop_assert_eq!(gb.normal_form(&g.mul(&h)), gb.normal_form(&ng.mul(&nh)));
        let a = quotient_algebra_from_text(f, ideal, None).unwrap();
        prop_assert_eq!(a.dim(), gb.standard_monomials().unwrap().len());
    }

    #[test]
    fn algebra_invariants(seed: u64, i in 0usize..10) {
        let a = algebra(i);
        let h = a.hilbert_series();
        prop_assert_eq!(h[0], 1);
        prop_assert_eq!(h.iter().sum::<usize>(), a.dim());
        let top = a.maxideal_power(a.loewy_length() - 1);
        prop_assert!(a.socle().contains_subspace(&top));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_maxideal_element(&a, &mut rng);
        let (lhs, rhs) = colon_length_identity(&AModule::regular(&a), &x);
        prop_assert_eq!(lhs, rhs);
        let g = gorenstein(&a).unwrap().holds();
        prop_assert_eq!(g, a.socle().dim() == 1);
        prop_assert_eq!(g, is_free_rank_one(&AModule::dualizing(&a)).is_some());
    }

    #[test]
    fn module_identities(seed: u64, i in 0usize..10) {
        let a = algebra(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&a, &mut rng, 6);
        let k = AModule::residue_field(&a);
        prop_assert_eq!(hom_module(&AModule::regular(&a), &m).unwrap().module.dim(), m.dim());
        prop_assert_eq!(tensor_module(&k, &m).unwrap().module.dim(), m.dim() - m.maxideal_times().dim());
        prop_assert_eq!(hom_module(&m, &AModule::dualizing(&a)).unwrap().module.dim(), m.dim());
        let b = biduality_map(&m).unwrap();
        prop_assert!(b.is_bijective());
    }

    #[test]
    fn symmetric_square_criterion(seed: u64, i in 0usize..10) {
        let a = algebra(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let candidates = [AModule::regular(&a), AModule::dualizing(&a), random_module(&a, &mut rng, a.dim())];
        for n in candidates {
            let s = symmetric_square_map(&n).unwrap();
            if s.is_bijective() && n.num_generators() == 1 && n.dim() == a.dim() {
                prop_assert!(is_free_rank_one(&n).is_some());
            }
        }
    }

    #[test]
    fn frobenius_matches_fiber(seed: u64, i in 0usize..3) {
        let base = [("e^2", 2), ("e^2", 3), ("e^3", 2)][i];
        let p = quotient_algebra_from_text(Fp::new(base.1).unwrap(), base.0, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_base_change(&p, &mut rng).unwrap();
        let fiber = b.fiber().unwrap();
        prop_assert_eq!(frobenius_test(&b).unwrap(), gorenstein(&fiber).unwrap().holds());
        prop_assert!(fiber_dual_comparison(&b).unwrap());
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn complexes_and_truncations(seed: u64, i in 0usize..10) {
        let a = algebra(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&a, &mut rng, -1, 3, 3);
        let s = rng.gen_range(-2..3);
        let shifted = c.shift(s);
        for d in -4..5 {
            prop_assert_eq!(shifted.homology_dim(d), c.homology_dim(d - s));
        }
        let n = rng.gen_range(-1..2);
        let (tau, _) = c.smart_truncation(n).unwrap();
        for d in -2..4 {
            let expected = if d <= n { c.homology_dim(d) } else { 0 };
            prop_assert_eq!(tau.homology_dim(d), expected);
        }
        let other = random_complex(&a, &mut rng, 0, 2, 3);
        // Construction validates ∂∂ = 0 on both total complexes.
        prop_assert!(hom_complex(&c, &other).is_ok());
        prop_assert!(tensor_complex(&c, &other).is_ok());
    }

    #[test]
    fn functors_preserve_quasi_isomorphisms(seed: u64, i in 0usize..10) {
        let a = algebra(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_complex(&a, &mut rng, 0, 3, 3);
        let Some((_, top)) = m.homology_support() else { return Ok(()) };
        let (tau, map) = m.smart_truncation(top).unwrap();
        prop_assert!(map.is_quasi_iso());
        let f = FreeResolution::of_module(&random_module(&a, &mut rng, 4), 2).unwrap().to_complex(2);
        let (h1, h2) = (hom_complex(&f, &m).unwrap().complex, hom_complex(&f, &tau).unwrap().complex);
        let (t1, t2) = (tensor_complex(&m, &f).unwrap().complex, tensor_complex(&tau, &f).unwrap().complex);
        for d in -4..8 {
            prop_assert_eq!(h1.homology_dim(d), h2.homology_dim(d), "Hom, degree {}", d);
            prop_assert_eq!(t1.homology_dim(d), t2.homology_dim(d), "tensor, degree {}", d);
        }
    }

    #[test]
    fn resolutions_are_minimal_and_exact(seed: u64, i in 0usize..10) {
        let a = algebra(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&a, &mut rng, 5);
        let res = FreeResolution::of_module(&m, 4).unwrap();
        prop_assert!(res.verify().is_ok());
        prop_assert!(res.is_minimal());
        let c = random_complex(&a, &mut rng, 0, 2, 3);
        let rc = FreeResolution::new(&c, 4).unwrap();
        prop_assert!(rc.verify().is_ok());
        prop_assert!(rc.is_minimal());
    }

    #[test]
    fn tor_is_balanced(seed: u64, i in 0usize..10) {
        let a = algebra(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (l, m) = (random_module(&a, &mut rng, 4), random_module(&a, &mut rng, 4));
        let (rl, rm) = (FreeResolution::of_module(&l, 4).unwrap(), FreeResolution::of_module(&m, 4).unwrap());
        for d in 0..=3 {
            prop_assert_eq!(tor_dim(&rl, &m, d).unwrap(), tor_dim(&rm, &l, d).unwrap());
        }
    }

    #[test]
    fn bass_and_betti_numbers(seed: u64, i in 0usize..10) {
        let a = algebra(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = 5;
        prop_assert_eq!(bass_truncation(&AModule::regular(&a), b).unwrap(), poincare_truncation(&AModule::dualizing(&a), b).unwrap());
        let m = random_module(&a, &mut rng, 5);
        let dagger = hom_module(&m, &AModule::dualizing(&a)).unwrap().module;
        prop_assert_eq!(bass_truncation(&dagger, b).unwrap(), poincare_truncation(&m, b).unwrap());
        prop_assert_eq!(poincare_truncation(&dagger, b).unwrap(), bass_truncation(&m, b).unwrap());
        let hom_dual = hom_module(&AModule::dualizing(&a), &AModule::regular(&a)).unwrap().module;
        prop_assert!(hom_dual.dim() >= 1);
    }

    #[test]
    fn ext_rhom_into_regular(seed: u64, i in 0usize..7) {
        // I^{RHom(M,A)} = P_M · I^A, with the left side computed from H Hom(F, A).
        let a = algebra([0usize, 1, 2, 3, 4, 5, 8][i]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&a, &mut rng, 4);
        let b = 2usize;
        let res = FreeResolution::of_module(&m, b + 2).unwrap();
        let areg = AModule::regular(&a);
        let g = hom_complex(&res.to_complex(b as i32 + 2), &tachikawa::ChainComplex::from_module(&areg, 0)).unwrap().complex;
        let k = FreeResolution::of_module(&AModule::residue_field(&a), b + 3).unwrap().to_complex(b as i32 + 3);
        let ext_k = hom_complex(&k, &g).unwrap().complex;
        let betti = poincare_truncation(&m, b).unwrap();
        let bass_a = bass_truncation(&areg, b).unwrap();
        for n in 0..=b {
            let lhs = ext_k.homology_dim(-(n as i32));
            let rhs: usize = (0..=n).map(|j| betti[j] * bass_a[n - j]).sum();
            prop_assert_eq!(lhs, rhs, "degree {}", n);
        }
    }

    #[test]
    fn bounded_dual_homology_kills_high_tensor_homology(seed: u64, i in 0usize..6) {
        // Over a Gorenstein algebra H_{-i} Hom(E, A) vanishes for 0 < i < T when E
        // is a resolution truncated at T, so H(E ⊗ J) lives near sup J and T + inf J.
        let gorenstein_ideals = [0usize, 1, 2, 4, 7, 8];
        let a = algebra(gorenstein_ideals[i]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = 4;
        let e = FreeResolution::of_module(&random_module(&a, &mut rng, 4), t as usize).unwrap().to_complex(t);
        let (j, _) = random_injective_complex(&a, &mut rng, 2, 2);
        let (jinf, jsup) = j.support().unwrap();
        let tensor = tensor_complex(&e, &j).unwrap().complex;
        for d in jsup + 1..t + jinf {
            prop_assert_eq!(tensor.homology_dim(d), 0, "degree {}", d);
        }
    }

    #[test]
    fn serre_inequality_and_golod_equality(i in 0usize..10) {
        let a = algebra(i);
        let b = 5;
        let betti = poincare_truncation(&AModule::residue_field(&a), b).unwrap();
        let serre = serre_bound(&a, b).unwrap();
        prop_assert!(betti.iter().zip(&serre).all(|(&x, &y)| x as i128 <= y));
        let equal = betti.iter().zip(&serre).all(|(&x, &y)| x as i128 == y);
        prop_assert_eq!(golod(&a, b).unwrap().holds(), equal);
    }
}

fn poly_strategy(max_len: usize) -> impl Strategy<Value = IntegerPolynomial> {
    prop::collection::vec(-4i128..=4, 1..max_len).prop_map(|mut c| {
        c[0] = 1;
        IntegerPolynomial::new(c)
    })
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn division_recombines(num in prop::collection::vec(-9i128..=9, 1..6), den in poly_strategy(6)) {
        let n = IntegerPolynomial::new(num);
        let s = RationalSeries::new(n.clone(), den.clone()).unwrap();
        let bound = 10;
        let c = IntegerPolynomial::new(series_coefficients(&s, bound).unwrap());
        let prod = &c * &den;
        for i in 0..=bound {
            prop_assert_eq!(prod.coeff(i), n.coeff(i));
        }
    }

    #[test]
    fn square_factors_are_found(a in -4i128..0, tail in poly_strategy(3)) {
        // A square of a factor with a negative coefficient, times a unit-constant cofactor.
        let f = IntegerPolynomial::new(vec![1, a]);
        let d = &(&f * &f) * &tail;
        prop_assume!(d.degree().unwrap_or(0) <= 5);
        prop_assert!(!square_factor_exclusion(&d).unwrap().pass);
    }

    #[test]
    fn squarefree_polynomials_pass(a in -4i128..=4, b in -4i128..=4) {
        // 1 + at + bt^2 with nonzero discriminant has no repeated factor.
        prop_assume!(a * a - 4 * b != 0 && b != 0);
        let d = IntegerPolynomial::new(vec![1, a, b]);
        prop_assert!(square_factor_exclusion(&d).unwrap().pass);
    }
}

#[test]
fn table_rows_are_admissible() {
    for v in table_verdicts(10).unwrap() {
        assert!(v.square_factor.pass && v.simple_roots.pass, "{:?}", v.row);
    }
}

#[test]
fn random_elements_live_in_the_algebra() {
    let a = algebra(3);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        assert_eq!(random_element(&a, &mut rng).len(), a.dim());
        assert!(a.is_in_maxideal(&random_maxideal_element(&a, &mut rng)));
    }
}
