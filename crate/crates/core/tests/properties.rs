use bohrlab::checks::{check_bohr, thm1_admissible_radius, BohrStatus, DEFAULT_TOL};
use bohrlab::linalg::{
    abs_operator, ginibre, hermitian_eigen, loewner_leq, psd_sqrt, random_unitary, seeded_rng, ComplexMatrix,
    LoewnerRelation,
};
use bohrlab::models::{generate_thm1_instance, scalar_mobius, MobiusOverrides};
use proptest::prelude::*;

fn hermitian(dim: usize, seed: u64) -> ComplexMatrix {
    let g = ginibre(dim, &mut seeded_rng(seed));
    (&g + &g.adjoint()).scale(0.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalues_ascend_and_trace_matches(dim in 1usize..9, seed in any::<u64>()) {
        let h = hermitian(dim, seed);
        let e = hermitian_eigen(&h).unwrap();
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let sum: f64 = e.eigenvalues.iter().sum();
        prop_assert!((sum - h.trace().re).abs() <= 1e-10 * (1.0 + h.frobenius_norm()));
    }

    #[test]
    fn sqrt_squares_back(dim in 1usize..9, seed in any::<u64>()) {
        let g = ginibre(dim, &mut seeded_rng(seed));
        let p = &g.adjoint() * &g;
        let s = psd_sqrt(&p).unwrap();
        prop_assert!((&(&s * &s) - &p).frobenius_norm() <= 1e-9 * (1.0 + p.frobenius_norm()));
    }

    #[test]
    fn abs_is_unitarily_invariant(dim in 1usize..7, seed in any::<u64>()) {
        let a = ginibre(dim, &mut seeded_rng(seed));
        let u = random_unitary(dim, seed ^ 0x5a5a);
        let lhs = abs_operator(&(&u * &a));
        prop_assert!((&lhs - &abs_operator(&a)).frobenius_norm() <= 1e-9 * (1.0 + a.frobenius_norm()));
    }

    #[test]
    fn loewner_order_of_shifted_matrix(dim in 1usize..8, seed in any::<u64>(), shift in 1e-3f64..1.0) {
        let h = hermitian(dim, seed);
        let above = &h + &ComplexMatrix::identity(dim).scale(shift);
        let v = loewner_leq(&h, &above, 1e-12).unwrap();
        prop_assert_eq!(v.relation, LoewnerRelation::LessOrEqual);
        let w = loewner_leq(&above, &h, 1e-12).unwrap();
        prop_assert_eq!(w.relation, LoewnerRelation::NotLessOrEqual);
    }

    #[test]
    fn generated_instances_hold_inside_their_radius(dim in 1usize..6, seed in 0u64..10_000) {
        let f = generate_thm1_instance(dim, 1..=3, seed, &MobiusOverrides::default()).unwrap();
        let r = thm1_admissible_radius(&f.initial_coefficient()).unwrap().radius;
        let v = check_bohr(&f, 0.95 * r, DEFAULT_TOL);
        prop_assert_eq!(v.status, BohrStatus::Holds);
    }

    #[test]
    fn scalar_witness_fails_past_its_radius(lambda in 0.5f64..0.99) {
        let f = scalar_mobius(lambda);
        let r0 = 1.0 / (1.0 + 2.0 * lambda);
        prop_assert_eq!(check_bohr(&f, 0.9 * r0, DEFAULT_TOL).status, BohrStatus::Holds);
        prop_assert_eq!(check_bohr(&f, (r0 + 0.02).min(0.99), DEFAULT_TOL).status, BohrStatus::Violated);
    }
}
