mod common;

use proptest::prelude::*;

use shor_coherence::entanglement::{
    build_hamming_table, closed_form_eg_psi2, closed_form_eg_psi3, gamma_factor, GammaKind,
};
use shor_coherence::measures::{
    geometric_coherence_pure, l1p_coherence_pure, relative_entropy_coherence,
    tsallis_coherence_pure,
};
use shor_coherence::numtheory::{recover_order, ShorInstance};
use shor_coherence::statevec::{ideal_psi3, measurement_distribution_a, OutcomeSampler};
use shor_coherence::theorems::{verify_stage_with_state, ParamGrid, Stage};
use shor_coherence::tolerances::Tolerances;
use shor_coherence::{AlphaParam, DensityMatrix, PipelineStates};

#[test]
fn uniform_stages_match_closed_forms_across_instances() {
    let grid = ParamGrid::default();
    let tol = Tolerances::default();
    for inst in common::instance_matrix()
        .into_iter()
        .filter(|i| i.n_qubits() <= 14)
    {
        let states = PipelineStates::run(&inst).unwrap();
        for stage in Stage::ALL {
            let report =
                verify_stage_with_state(stage, &inst, stage.state(&states), &grid, &tol).unwrap();
            assert!(
                report.passed(),
                "N={} x={} t={} {:?}",
                inst.modulus,
                inst.base,
                inst.t,
                stage
            );
        }
    }
}

#[test]
fn simulated_transform_matches_ideal_state() {
    for inst in common::instance_matrix()
        .into_iter()
        .filter(|i| i.n_qubits() <= 14)
    {
        let sim = PipelineStates::run(&inst).unwrap().psi3;
        let ideal = ideal_psi3(&inst).unwrap();
        let gap = sim
            .amplitudes()
            .iter()
            .zip(ideal.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(
            gap <= 1e-9,
            "N={} x={} t={}: {gap}",
            inst.modulus,
            inst.base,
            inst.t
        );
    }
}

#[test]
fn gamma_identity_links_coherence_and_entanglement() {
    for inst in common::instance_matrix() {
        let table = build_hamming_table(&inst).unwrap();
        let r = inst.order().unwrap();
        let g2 = gamma_factor(&table, GammaKind::Psi2).unwrap();
        let cg2 = 1.0 - 1.0 / inst.q() as f64;
        let eg2 = closed_form_eg_psi2(&table).value;
        assert!(g2.identity_residual(cg2, eg2).abs() <= 1e-9);
        assert!(g2.within_bounds());
        let g3 = gamma_factor(&table, GammaKind::Psi3).unwrap();
        let cg3 = 1.0 - 1.0 / (r * r) as f64;
        let eg3 = closed_form_eg_psi3(&table).unwrap().canonical().value;
        assert!(g3.identity_residual(cg3, eg3).abs() <= 1e-9);
    }
}

#[test]
fn sampled_outcomes_recover_divisors_of_order() {
    let inst = common::example();
    let dist = measurement_distribution_a(&PipelineStates::run(&inst).unwrap().psi3);
    let mut sampler = OutcomeSampler::new(&dist, 77);
    for _ in 0..200 {
        let k = sampler.next_outcome() as u64;
        assert_eq!(k % 512, 0);
        if let Some(r) = recover_order(k, &inst) {
            assert_eq!(r, 4);
        }
    }
}

fn state_strategy(max_qubits: u32) -> impl Strategy<Value = Vec<num_complex::Complex64>> {
    (1..=max_qubits, any::<u64>())
        .prop_map(|(n, seed)| common::random_state(1 << n, &mut common::rng(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn l1p_decreases_in_p(psi in state_strategy(6), p in 1.0f64..1.9) {
        let a = l1p_coherence_pure(&psi, p).unwrap();
        let b = l1p_coherence_pure(&psi, p + 0.1).unwrap();
        prop_assert!(b <= a + 1e-12);
    }

    #[test]
    fn measures_stay_in_range(psi in state_strategy(6), a in 0.05f64..2.0) {
        let cg = geometric_coherence_pure(&psi);
        prop_assert!((0.0..1.0).contains(&cg));
        prop_assert!(tsallis_coherence_pure(&psi, AlphaParam::new(a).unwrap()) >= -1e-12);
        prop_assert!(l1p_coherence_pure(&psi, 1.0).unwrap() >= -1e-12);
    }

    #[test]
    fn tsallis_limit_is_relative_entropy(psi in state_strategy(5)) {
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        let limit = tsallis_coherence_pure(&psi, AlphaParam::new(1.0).unwrap());
        prop_assert!((limit - std::f64::consts::LN_2 * relative_entropy_coherence(&rho)).abs() <= 1e-9);
    }

    #[test]
    fn pipeline_preserves_norm(x in 2u64..15, t in 1u32..8) {
        prop_assume!(shor_coherence::numtheory::gcd(x, 15) == 1);
        let inst = ShorInstance::new(15, x, t).unwrap();
        let states = PipelineStates::run(&inst).unwrap();
        for s in [&states.psi1, &states.psi2, &states.psi3] {
            prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-10);
        }
    }
}
