use entrotter_core::dense::{exact_evolve, max_entropy, state_distance, CutMode, DenseState, ProductPattern};
use entrotter_core::hamiltonian::{build_heisenberg, build_tfim};
use entrotter_core::mps::MpsState;
use entrotter_core::pauli::{Pauli, PauliTerm};
use entrotter_core::trotter::{build_plan, execute, measure_error, Ordering};
use proptest::prelude::*;

fn pauli() -> impl Strategy<Value = Pauli> {
    prop_oneof![Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)]
}

fn term(n: usize) -> impl Strategy<Value = PauliTerm> {
    (-2.0f64..2.0, prop::collection::btree_map(0..n, pauli(), 1..=3))
        .prop_map(|(c, letters)| PauliTerm::real(c, letters))
}

fn bits(n: usize) -> impl Strategy<Value = ProductPattern> {
    prop::collection::vec(0u8..2, n).prop_map(ProductPattern::Bits)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn products_of_pauli_strings_are_associative(a in term(4), b in term(4), c in term(4)) {
        let l = a.product(&b).product(&c);
        let r = a.product(&b.product(&c));
        prop_assert!(l.same_string(&r));
        prop_assert!((l.coeff - r.coeff).norm() < 1e-12);
    }

    #[test]
    fn commuting_strings_commute_as_matrices(a in term(3), b in term(3)) {
        let ab = a.product(&b);
        let ba = b.product(&a);
        let commute = (ab.coeff - ba.coeff).norm() < 1e-12;
        prop_assert_eq!(commute, a.commutes_with(&b));
    }

    #[test]
    fn term_exponentials_are_unitary(t in term(4), theta in -3.0f64..3.0, p in bits(4)) {
        let s = DenseState::from_product(4, &p).unwrap();
        let u = s.apply_term_exponential(&t, theta).unwrap();
        prop_assert!((u.norm() - 1.0).abs() < 1e-12);
        let back = u.apply_term_exponential(&t, -theta).unwrap();
        prop_assert!(state_distance(&s, &back).unwrap() < 1e-12);
    }

    #[test]
    fn exact_evolution_is_reversible(field in 0.1f64..3.0, t in 0.0f64..2.0, p in bits(5)) {
        let h = build_tfim(5, 1.0, field).unwrap();
        let s = DenseState::from_product(5, &p).unwrap();
        let e = exact_evolve(&s, &h, t).unwrap();
        let back = exact_evolve(&e, &h, -t).unwrap();
        prop_assert!(state_distance(&s, &back).unwrap() < 1e-10);
    }

    #[test]
    fn error_shrinks_with_more_steps(t in 0.2f64..1.5, p in prop_oneof![Just(1u32), Just(2u32)]) {
        let h = build_heisenberg(5, 1.0).unwrap();
        let s = DenseState::from_product(5, &ProductPattern::from_bitstring("01011").unwrap()).unwrap();
        let coarse = measure_error(&h, &s, p, t, 4, Ordering::Forward).unwrap().error;
        let fine = measure_error(&h, &s, p, t, 16, Ordering::Forward).unwrap().error;
        prop_assert!(fine <= coarse + 1e-12);
    }

    #[test]
    fn untruncated_mps_matches_dense(
        heis in any::<bool>(),
        p in prop_oneof![Just(1u32), Just(2u32), Just(4u32)],
        r in 1u64..6,
        pattern in bits(6),
    ) {
        let n = 6;
        let h = if heis { build_heisenberg(n, 1.0).unwrap() } else { build_tfim(n, 1.0, 2.5).unwrap() };
        let plan = build_plan(&h, p, 0.8, r, Ordering::EvenOdd).unwrap();
        let d = execute(&plan, &h, &DenseState::from_product(n, &pattern).unwrap()).unwrap();
        let m = MpsState::from_product(n, &pattern, 1 << (n / 2)).unwrap().with_cutoff(0.0);
        let m = execute(&plan, &h, &m).unwrap();
        prop_assert!(state_distance(&m.to_dense().unwrap(), &d).unwrap() < 1e-10);
        let dense_s = max_entropy(&d, CutMode::Contiguous).unwrap();
        prop_assert!((m.max_bond_entropy() - dense_s).abs() < 1e-8);
    }
}
