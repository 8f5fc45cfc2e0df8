use proptest::prelude::*;

use qcorr_core::interference::{joint_term, sorkin_term};
use qcorr_core::linalg::{pauli, spectral_sign, Subsystem};
use qcorr_core::logic::{complement, probability};
use qcorr_core::nonlocality::{
    behavior_chsh, classify_behavior, optimal_qubit_scenario, random_scenario, seesaw_from,
    seesaw_optimize, BehaviorClass, SeesawConfig,
};
use qcorr_core::random::{
    random_event, random_orthogonal_events, random_sign_observable, random_state, sample_rng,
};
use qcorr_core::{
    BehaviorTable, ExactScalar, HermitianMatrix, SlitConfiguration, State, TSIRELSON_BOUND,
};

#[test]
fn optimal_scenario_statistics_sit_on_the_quantum_boundary() {
    let s = optimal_qubit_scenario();
    assert!((s.chsh_value().unwrap() - TSIRELSON_BOUND).abs() < 1e-12);
    let table = BehaviorTable::from_scenario(&s).unwrap();
    assert!((behavior_chsh(&table).unwrap() - TSIRELSON_BOUND).abs() < 1e-12);
    assert_eq!(classify_behavior(&table).unwrap(), BehaviorClass::Nonlocal);
    for k in 0..2 {
        for l in 0..2 {
            assert!((table.correlator(k, l) - s.correlation(k, l).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn singlet_reduced_states_are_maximally_mixed() {
    let s = optimal_qubit_scenario();
    let rho = s.state().matrix();
    for keep in [Subsystem::A, Subsystem::B] {
        let r = rho.partial_trace((2, 2), keep).unwrap();
        let half = HermitianMatrix::identity(2).scale(0.5);
        assert!((&r - half.matrix()).max_abs() < 1e-12);
    }
}

#[test]
fn seesaw_refines_the_optimal_scenario_without_loss() {
    let s = optimal_qubit_scenario();
    let r = seesaw_from(s.alice().clone(), s.bob().clone(), 1e-12, 50).unwrap();
    assert!((r.value - TSIRELSON_BOUND).abs() < 1e-10);
    assert!(r.converged);
}

#[test]
fn seesaw_scenario_reproduces_reported_value() {
    let r = seesaw_optimize(&SeesawConfig::new(2, 3, 11)).unwrap();
    assert!((r.scenario.chsh_value().unwrap() - r.value).abs() < 1e-9);
    assert!(r.value <= TSIRELSON_BOUND + 1e-9);
}

#[test]
fn exact_and_float_bounds_agree() {
    let tsirelson = ExactScalar::from_ints(0, 2);
    assert_eq!(tsirelson.to_f64(), TSIRELSON_BOUND);
    let squared = &tsirelson * &tsirelson;
    assert_eq!(squared, ExactScalar::from_int(8));
    assert_eq!(ExactScalar::from_ints(8, 4).to_string(), "8 + 4√2");
}

#[test]
fn spectral_sign_of_pauli_sum() {
    let sum = pauli::x().add(&pauli::z()).unwrap();
    let sign = spectral_sign(&sum).unwrap();
    let expected = sum.scale(std::f64::consts::FRAC_1_SQRT_2);
    assert!((sign.matrix() - expected.matrix()).max_abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scenarios_from_sign_observables_give_valid_tables(seed in any::<u64>(), da in 2usize..4, db in 2usize..4) {
        let mut rng = sample_rng(seed, 0);
        let alice = [random_sign_observable(&mut rng, da), random_sign_observable(&mut rng, da)];
        let bob = [random_sign_observable(&mut rng, db), random_sign_observable(&mut rng, db)];
        let state = random_state(&mut rng, da * db);
        let s = qcorr_core::CorrelationScenario::new((da, db), state, alice, bob).unwrap();
        let table = BehaviorTable::from_scenario(&s).unwrap();
        table.validate().unwrap();
        let v = s.chsh_value().unwrap();
        prop_assert!((behavior_chsh(&table).unwrap() - v).abs() < 1e-9);
        prop_assert!(v.abs() <= TSIRELSON_BOUND + 1e-9);
    }

    #[test]
    fn random_scenarios_stay_below_tsirelson(seed in any::<u64>(), da in 1usize..5, db in 1usize..5) {
        let mut rng = sample_rng(seed, 1);
        let v = random_scenario(&mut rng, (da, db)).unwrap().chsh_value().unwrap();
        prop_assert!(v.abs() <= TSIRELSON_BOUND + 1e-9);
    }

    #[test]
    fn mixtures_interpolate_chsh(lambda in 0.0f64..=1.0) {
        let mixed = BehaviorTable::pr_box().mix(lambda, &BehaviorTable::uniform()).unwrap();
        prop_assert!((behavior_chsh(&mixed).unwrap() - 4.0 * lambda).abs() < 1e-12);
    }

    #[test]
    fn joint_terms_split_over_the_detector(seed in any::<u64>(), n in 3usize..7) {
        let mut rng = sample_rng(seed, 2);
        let slits = random_orthogonal_events(&mut rng, n, 3);
        let detector = random_event(&mut rng, n);
        let state = random_state(&mut rng, n);
        let not_detected = complement(&detector);
        let a = SlitConfiguration::new(slits.clone(), detector, state.clone()).unwrap();
        let b = SlitConfiguration::new(slits.clone(), not_detected, state.clone()).unwrap();
        for subset in [&[0usize][..], &[0, 1], &[0, 1, 2]] {
            let total = joint_term(&a, subset).unwrap() + joint_term(&b, subset).unwrap();
            let e = qcorr_core::logic::event_sum_all(&subset.iter().map(|&i| &slits[i]).collect::<Vec<_>>(), n).unwrap();
            prop_assert!((total - probability(&state, &e).unwrap()).abs() < 1e-10);
        }
        prop_assert!(sorkin_term(&a, 3).unwrap().abs() < 1e-10);
    }

    #[test]
    fn maximally_mixed_state_has_no_interference(seed in any::<u64>(), n in 2usize..7) {
        let mut rng = sample_rng(seed, 3);
        let slits = random_orthogonal_events(&mut rng, n, 2);
        let detector = random_event(&mut rng, n);
        let cfg = SlitConfiguration::new(slits, detector, State::maximally_mixed(n)).unwrap();
        prop_assert!(sorkin_term(&cfg, 2).unwrap().abs() < 1e-12);
    }
}
