mod common;

use common::c;
use proptest::prelude::*;
use specball_core::discgeo::{self, DiscAutomorphism};
use specball_core::nptest::{self, InterpolationData, Status, Witness};
use specball_core::testgen::Rng;
use specball_core::{Config, Matrix, C64};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

fn precompose(data: &InterpolationData, phi: &DiscAutomorphism) -> InterpolationData {
    InterpolationData::new(data.nodes.iter().map(|&z| phi.apply(z)).collect(), data.targets.clone())
}

/// Two scalar targets per node embedded as `λ·I`, the second node a random distance away.
fn scalar_pair(rng: &mut Rng, n: usize) -> InterpolationData {
    let z: Vec<C64> = (0..2).map(|_| rng.in_disc(0.9)).collect();
    let l: Vec<C64> = (0..2).map(|_| rng.in_disc(0.9)).collect();
    nptest::scalar_data(&z, &l, n)
}

fn two_point_gap(data: &InterpolationData, cfg: &Config) -> f64 {
    match nptest::check_two_point(data, cfg).unwrap().witness {
        Witness::TwoPoint(w) => w.lhs - w.rhs - w.margin,
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn verdicts_ignore_node_automorphisms(seed in any::<u64>(), n in 1usize..=4) {
        let cfg = Config::default();
        let mut rng = Rng::seed(seed);
        let phi = DiscAutomorphism::new(rng.in_disc(0.6)).unwrap();
        let data = scalar_pair(&mut rng, n);
        prop_assume!(two_point_gap(&data, &cfg).abs() > 1e-6);
        let before = nptest::check_two_point(&data, &cfg).unwrap().status;
        let after = nptest::check_two_point(&precompose(&data, &phi), &cfg).unwrap().status;
        prop_assert_eq!(before, after);

        let feasible_n = 2 + (seed % 3) as usize;
        let (data, _) = nptest::random_feasible_dataset(seed, feasible_n, 3, 0.2, &cfg).unwrap();
        let moved = precompose(&data, &phi);
        prop_assert_eq!(nptest::check_three_point(&moved, &cfg).unwrap().status, Status::Inconclusive);
    }

    #[test]
    fn pulling_nodes_together_only_adds_refutations(seed in any::<u64>(), s in 0.05f64..1.0) {
        let cfg = Config::default();
        let mut rng = Rng::seed(seed);
        let n = rng.range_inclusive(1, 3);
        let data = scalar_pair(&mut rng, n);
        let psi = DiscAutomorphism::new(data.nodes[0]).unwrap();
        let closer = psi.inverse(psi.apply(data.nodes[1]) * s);
        let pulled = InterpolationData::new(vec![data.nodes[0], closer], data.targets.clone());
        if nptest::check_two_point(&data, &cfg).unwrap().is_infeasible() {
            prop_assert!(nptest::check_two_point(&pulled, &cfg).unwrap().is_infeasible());
        }
    }

    // Targets m(ζ_j)·I for a disc automorphism m make every branch-2 candidate unimodular.
    #[test]
    fn accepted_candidates_have_exact_preimages(seed in any::<u64>(), n in 1usize..=3) {
        let cfg = Config::default();
        let mut rng = Rng::seed(seed);
        let m = DiscAutomorphism::new(rng.in_disc(0.5)).unwrap();
        let nodes: Vec<C64> = (0..3).map(|_| rng.in_disc(0.7)).collect();
        prop_assume!((0..3).all(|i| (0..i).all(|j| (nodes[i] - nodes[j]).norm() > 0.05)));
        let values: Vec<C64> = nodes.iter().map(|&z| m.apply(z)).collect();
        let data = nptest::scalar_data(&nodes, &values, n);
        let v = nptest::check_three_point(&data, &cfg).unwrap();
        prop_assert_eq!(v.status, Status::Inconclusive);
        let Witness::ThreePoint(w) = v.witness else { unreachable!() };
        let mut accepted = 0;
        for r in &w.per_k {
            let b = discgeo::minimal_blaschke(&data.targets[r.k], &cfg).unwrap();
            let psi = DiscAutomorphism::new(data.nodes[r.k]).unwrap();
            for cand in r.candidates.iter().filter(|cand| cand.accepted) {
                accepted += 1;
                for j in [r.g, r.l] {
                    let target = cand.u * psi.apply(data.nodes[j]);
                    for t in discgeo::blaschke_preimage(&b, target, &cfg).unwrap() {
                        prop_assert!((discgeo::blaschke_eval(&b, t, &cfg).unwrap() - target).norm() <= 1e-8);
                    }
                }
            }
        }
        prop_assert!(accepted > 0);
    }

    #[test]
    fn feasible_datasets_are_never_refuted(seed in any::<u64>(), n in 2usize..=5, margin in 0.1f64..0.3) {
        let cfg = Config::default();
        let (data, _) = nptest::random_feasible_dataset(seed, n, 3, margin, &cfg).unwrap();
        prop_assert!(data.targets.iter().all(|w| specball_core::spectra::spectral_radius(w, &cfg).unwrap() < 1.0 - margin + 1e-9));
        prop_assert_eq!(nptest::check_three_point(&data, &cfg).unwrap().status, Status::Inconclusive);
    }
}

#[test]
fn refutations_carry_their_witness() {
    let cfg = Config::default();
    let mut rng = Rng::seed(9);
    let mut refuted = 0;
    for _ in 0..200 {
        let data = scalar_pair(&mut rng, 2);
        let v = nptest::check_two_point(&data, &cfg).unwrap();
        if let (Status::Infeasible, Witness::TwoPoint(w)) = (v.status, &v.witness) {
            refuted += 1;
            assert!(w.lhs > w.rhs + w.margin);
        }
    }
    assert!(refuted > 0);
    let zero = Matrix::zeros(2);
    assert!(InterpolationData::new(vec![c(0.1, 0.0), c(0.1, 0.0)], vec![zero.clone(), zero]).validate(&cfg).is_err());
}
