mod common;

use proptest::prelude::*;
use specball_core::discgeo::{self, BlaschkeProduct, BlaschkeZero, DiscAutomorphism};
use specball_core::testgen::Rng;
use specball_core::{spectra, Config, C64};

fn random_blaschke(rng: &mut Rng) -> BlaschkeProduct {
    let zeros = (0..rng.range_inclusive(1, 4))
        .map(|_| BlaschkeZero { a: rng.in_disc(0.95), mult: rng.range_inclusive(1, 2) })
        .collect();
    BlaschkeProduct::new(zeros, rng.unimodular()).unwrap()
}

proptest! {
    #[test]
    fn unimodular_on_the_circle(seed in any::<u64>(), theta in 0.0f64..std::f64::consts::TAU) {
        let cfg = Config::default();
        let b = random_blaschke(&mut Rng::seed(seed));
        let v = discgeo::blaschke_eval(&b, C64::from_polar(1.0, theta), &cfg).unwrap();
        prop_assert!((v.norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn preimages_map_back(seed in any::<u64>()) {
        let cfg = Config::default();
        let mut rng = Rng::seed(seed);
        let b = random_blaschke(&mut rng);
        let w = rng.in_disc(0.95);
        let pre = discgeo::blaschke_preimage(&b, w, &cfg).unwrap();
        prop_assert_eq!(pre.len(), b.degree());
        for t in pre {
            prop_assert!(t.norm() < 1.0);
            prop_assert!((discgeo::blaschke_eval(&b, t, &cfg).unwrap() - w).norm() <= 1e-8);
        }
    }

    #[test]
    fn minimal_blaschke_degree_is_minpoly_degree(seed in any::<u64>()) {
        let cfg = Config::default();
        let (ts, _) = common::trials(seed % (1 << 40), 1);
        let a = &ts[0].a;
        let b = discgeo::minimal_blaschke(a, &cfg).unwrap();
        prop_assert_eq!(Some(b.degree()), spectra::minimal_polynomial(a, &cfg).unwrap().degree());
    }

    #[test]
    fn extremal_value_is_mobius_distance(seed in any::<u64>()) {
        let cfg = Config::default();
        let mut rng = Rng::seed(seed);
        let (l, z) = (rng.in_disc(0.99), rng.in_disc(0.99));
        prop_assume!((l - z).norm() > 1e-6);
        let (map, value) = discgeo::caratheodory_extremal_disc(l, z, &cfg).unwrap();
        prop_assert!(value >= 0.0);
        prop_assert!((value - discgeo::mobius_distance(l, z).unwrap()).abs() <= 1e-12);
        let image = map.eval(z) - map.eval(l);
        prop_assert!((image.norm() - value).abs() <= 1e-12);
    }

    #[test]
    fn automorphisms_preserve_distance(seed in any::<u64>()) {
        let mut rng = Rng::seed(seed);
        let phi = DiscAutomorphism::new(rng.in_disc(0.95)).unwrap();
        let (z1, z2) = (rng.in_disc(0.95), rng.in_disc(0.95));
        let before = discgeo::mobius_distance(z1, z2).unwrap();
        let after = discgeo::mobius_distance(phi.apply(z1), phi.apply(z2)).unwrap();
        prop_assert!((before - after).abs() <= 1e-9);
        prop_assert!((phi.inverse(phi.apply(z1)) - z1).norm() <= 1e-12);
    }
}
