use proptest::prelude::*;
use wywitness::criteria::{Evaluator, Verdict};
use wywitness::matcore::{eig_hermitian, random, tensor, ComplexMatrix, DensityMatrix, Subsystem};
use wywitness::observable::{parse_observable, Observable};
use wywitness::states;
use wywitness::wyquant::skew_information;

fn pauli_pair() -> impl Strategy<Value = (String, String)> {
    let one = prop::sample::select(vec!['I', 'X', 'Y', 'Z']);
    let string = (one.clone(), one).prop_map(|(a, b)| format!("{a}{b}"));
    (string.clone(), string).prop_filter("identity", |(a, b)| a != "II" && b != "II")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tensor_spectrum_is_pairwise_products(da in 1usize..4, db in 1usize..4, seed in any::<u64>()) {
        let a = random::random_hermitian(da, seed);
        let b = random::random_hermitian(db, seed ^ 0x5eed);
        let ea = eig_hermitian(&a).unwrap().eigenvalues;
        let eb = eig_hermitian(&b).unwrap().eigenvalues;
        let mut want: Vec<f64> = ea.iter().flat_map(|x| eb.iter().map(move |y| x * y)).collect();
        want.sort_by(|x, y| y.total_cmp(x));
        let got = eig_hermitian(&tensor(&a, &b)).unwrap().eigenvalues;
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - w).abs() < 1e-10);
        }
    }

    #[test]
    fn partial_transpose_keeps_trace_and_hermiticity(da in 1usize..4, db in 1usize..4, seed in any::<u64>()) {
        let rho = random::random_density(da, db, seed).unwrap();
        for side in [Subsystem::A, Subsystem::B] {
            let pt = rho.matrix().partial_transpose(da, db, side).unwrap();
            prop_assert!((pt.trace() - rho.matrix().trace()).norm() < 1e-12);
            prop_assert!(pt.hermiticity_deviation() < 1e-12);
            let back = pt.partial_transpose(da, db, side).unwrap();
            prop_assert_eq!(back.max_abs_diff(rho.matrix()), 0.0);
        }
    }

    #[test]
    fn separable_states_never_flagged((a, b) in pauli_pair(), terms in 1usize..5, seed in any::<u64>()) {
        let rho = random::random_separable(2, 2, terms, seed).unwrap();
        let (a, b) = (parse_observable(&a).unwrap(), parse_observable(&b).unwrap());
        let r = Evaluator::default().proposed_pt_criterion(&rho, &a, &b).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Satisfied);
    }

    #[test]
    fn furuichi_matches_sr_on_pure_states((a, b) in pauli_pair(), seed in any::<u64>()) {
        let rho = random::random_pure(2, 2, seed).unwrap();
        let (a, b) = (parse_observable(&a).unwrap(), parse_observable(&b).unwrap());
        let ev = Evaluator::default();
        let f = ev.furuichi(&rho, &a, &b).unwrap();
        let sr = ev.schrodinger_robertson(&rho, &a, &b).unwrap();
        prop_assert!((f.lhs - sr.lhs).norm() < 1e-9);
        prop_assert!((f.rhs - sr.rhs).abs() < 1e-9);
    }

    #[test]
    fn luo_u_lhs_dominates_luo_i((a, b) in pauli_pair(), seed in any::<u64>()) {
        let rho = random::random_density(2, 2, seed).unwrap();
        let (a, b) = (parse_observable(&a).unwrap(), parse_observable(&b).unwrap());
        let ev = Evaluator::default();
        let u = ev.luo_u(&rho, &a, &b).unwrap();
        let i = ev.luo_i(&rho, &a, &b).unwrap();
        prop_assert!(u.lhs.re >= i.lhs.re - 1e-12);
        prop_assert!((u.rhs - i.rhs).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip_is_exact(da in 1usize..4, db in 1usize..4, seed in any::<u64>()) {
        let rho = random::random_density(da, db, seed).unwrap();
        let back = DensityMatrix::from_json(&rho.to_json()).unwrap();
        prop_assert_eq!(back.dims(), rho.dims());
        prop_assert_eq!(back.matrix().max_abs_diff(rho.matrix()), 0.0);
    }

    #[test]
    fn skew_info_is_zero_for_commuting_observable(seed in any::<u64>()) {
        // A function of ρ commutes with it, so the skew information vanishes.
        let rho = random::random_density(2, 2, seed).unwrap();
        let a = Observable::new(rho.matrix() * rho.matrix()).unwrap();
        prop_assert!(skew_information(&rho, &a).unwrap().norm() < 1e-12);
    }
}

#[test]
fn werner_proposed_agrees_with_ppt_off_the_boundary() {
    let ev = Evaluator::default();
    for pair in [("XY", "YX"), ("ZI", "IZ")] {
        let a = parse_observable(pair.0).unwrap();
        let b = parse_observable(pair.1).unwrap();
        for k in 0..=1000 {
            let p = k as f64 / 1000.0;
            if (p - 1.0 / 3.0).abs() <= 1e-6 {
                continue;
            }
            let rho = states::werner(p).unwrap();
            let proposed = ev.proposed_pt_criterion(&rho, &a, &b).unwrap();
            let ppt = ev.ppt_check(&rho).unwrap();
            assert_eq!(proposed.verdict, ppt.verdict, "{pair:?} at p = {p}");
        }
    }
}

#[test]
fn maximally_mixed_state_has_no_skew_information() {
    let rho = states::max_mixed(4).unwrap();
    let a = Observable::new(random::random_hermitian(4, 3)).unwrap();
    assert!(skew_information(&rho, &a).unwrap().norm() < 1e-14);
    assert!(
        ComplexMatrix::identity(4)
            .scale_real(0.25)
            .max_abs_diff(rho.matrix())
            < 1e-15
    );
}
