//! Built-in invariant suite behind `specball selftest`.

use specball_core::nptest::{self, Status};
use specball_core::polynomials::{from_sym_point, multiset_distance, pi_n};
use specball_core::testgen::{self, match_groups, Rng};
use specball_core::{discgeo, funcalc, isospec, spectra, symprod, ComplexPoly, Config, HoloFunction, Matrix, C64};

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn rel_diff(x: &Matrix, y: &Matrix) -> f64 {
    x.distance(y) / x.frobenius_norm().max(y.frobenius_norm()).max(1.0)
}

/// Runs every check with `trials` random cases each, seeded from `cfg.seed`.
pub fn run(trials: usize, cfg: &Config) -> Vec<Check> {
    let (cases, _) = testgen::trials(cfg.seed, trials);
    vec![
        minpoly(&cases, cfg),
        algebra(&cases, cfg),
        projections(&cases, cfg),
        soundness(trials, cfg),
        refutations(cfg),
        round_trips(trials, cfg),
        path(trials.min(50), cfg),
        schwarz(trials.min(50), cfg),
    ]
}

fn check(name: &'static str, failures: usize, total: usize, worst: f64) -> Check {
    Check { name, passed: failures == 0, detail: format!("{failures} of {total} failing, worst {worst:.3e}") }
}

fn minpoly(cases: &[testgen::Trial], cfg: &Config) -> Check {
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for t in cases {
        let dev = (|| {
            let pred = funcalc::predicted_minpoly(&t.f, &t.a, cfg).ok()?;
            let oracle = spectra::minimal_polynomial_oracle_centered(&funcalc::apply(&t.f, &t.a, cfg).ok()?, cfg).ok()?;
            if pred.poly.degree() != oracle.degree() {
                return None;
            }
            match_groups(&oracle.roots().ok()?, &pred.factors)
        })();
        match dev {
            Some(d) if d <= 1e-6 => worst = worst.max(d),
            _ => failures += 1,
        }
    }
    check("predicted minimal polynomial matches brute force", failures, cases.len(), worst)
}

fn algebra(cases: &[testgen::Trial], cfg: &Config) -> Check {
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    let mut rng = Rng::seed(cfg.seed ^ 0xa1);
    for t in cases {
        let h = ComplexPoly::new((0..3).map(|_| rng.in_square(1.0)).collect());
        let dev = (|| {
            let sd = spectra::spectral_data(&t.a, cfg).ok()?;
            let g = HoloFunction::Polynomial(t.g.clone());
            let fa = funcalc::apply_with(&t.f, &t.a, &sd, cfg).ok()?;
            let ga = funcalc::apply_with(&g, &t.a, &sd, cfg).ok()?;
            let ha = funcalc::apply_with(&HoloFunction::Polynomial(h.clone()), &t.a, &sd, cfg).ok()?;
            let gh = funcalc::apply_with(&HoloFunction::Polynomial(&t.g * &h), &t.a, &sd, cfg).ok()?;
            Some(rel_diff(&gh, &(&ga * &ha)).max(rel_diff(&(&fa * &ga), &(&ga * &fa))))
        })();
        match dev {
            Some(d) if d <= 1e-7 => worst = worst.max(d),
            _ => failures += 1,
        }
    }
    check("calculus is multiplicative and commutative", failures, cases.len(), worst)
}

fn projections(cases: &[testgen::Trial], cfg: &Config) -> Check {
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for t in cases {
        let Ok(sd) = spectra::spectral_data(&t.a, cfg) else {
            failures += 1;
            continue;
        };
        let n = t.a.n();
        let mut dev: f64 = 0.0;
        let mut sum = Matrix::zeros(n);
        for (i, e) in sd.projections.iter().enumerate() {
            dev = dev.max(rel_diff(&(e * e), e));
            for f in &sd.projections[..i] {
                dev = dev.max(rel_diff(&(e * f), &Matrix::zeros(n)));
            }
            sum = &sum + e;
        }
        dev = dev.max(rel_diff(&sum, &Matrix::identity(n)));
        worst = worst.max(dev);
        failures += (dev > 1e-7) as usize;
    }
    check("spectral projections are complementary idempotents", failures, cases.len(), worst)
}

fn soundness(count: usize, cfg: &Config) -> Check {
    let mut failures = 0;
    for i in 0..count as u64 {
        let seed = cfg.seed.wrapping_add(i);
        let n = 2 + (i % 4) as usize;
        let margin = 0.1 + 0.2 * (i % 11) as f64 / 10.0;
        let refuted = nptest::random_feasible_dataset(seed, n, 3, margin, cfg)
            .and_then(|(data, _)| nptest::check_three_point(&data, cfg))
            .map(|v| v.is_infeasible());
        failures += !matches!(refuted, Ok(false)) as usize;
    }
    check("no refutation of feasible three-point data", failures, count, 0.0)
}

fn refutations(cfg: &Config) -> Check {
    let c = |re: f64| C64::new(re, 0.0);
    let two = nptest::check_two_point(&nptest::scalar_data(&[c(0.0), c(0.5)], &[c(0.0), c(0.9)], 1), cfg);
    let three = nptest::check_three_point(
        &nptest::InterpolationData::new(
            vec![c(0.0), c(0.1), c(0.2)],
            vec![Matrix::zeros(2), Matrix::diag(&[c(0.01), c(0.02)]), Matrix::diag(&[c(0.99), c(0.99)])],
        ),
        cfg,
    );
    let ok = matches!(&two, Ok(v) if v.status == Status::Infeasible)
        && matches!(&three, Ok(v) if v.status == Status::Infeasible);
    Check { name: "known infeasible data are refuted", passed: ok, detail: "two-point and three-point examples".into() }
}

fn round_trips(count: usize, cfg: &Config) -> Check {
    let mut rng = Rng::seed(cfg.seed ^ 0x5e);
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for i in 0..count {
        let z: Vec<C64> = (0..1 + i % 8).map(|_| rng.in_disc(0.95)).collect();
        let x = pi_n(&z);
        let devs = symprod::chi_tau_identity_check(&x, cfg)
            .and_then(|r| Ok((r.deviation, multiset_distance(&from_sym_point(&x).roots()?, &z))));
        match devs {
            Ok((chi, roots)) if chi <= 1e-10 && roots <= 1e-8 => worst = worst.max(chi).max(roots),
            _ => failures += 1,
        }
    }
    check("chi inverts the companion section; roots invert pi_n", failures, count, worst)
}

fn path(count: usize, cfg: &Config) -> Check {
    let mut rng = Rng::seed(cfg.seed ^ 0x1507);
    let samples = isospec::path_samples(16);
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for i in 0..count {
        let a = testgen::random_matrix(&mut rng, 1 + i % 6, 1.0);
        let report = isospec::isospectral_path(&a, cfg).and_then(|p| isospec::verify_path(&p, &samples, cfg));
        match report {
            Ok(r) if r.passed(cfg) => worst = worst.max(r.max_deviation / r.bound),
            _ => failures += 1,
        }
    }
    check("isospectral path keeps chi fixed", failures, count, worst)
}

fn schwarz(count: usize, cfg: &Config) -> Check {
    let samples: Vec<C64> =
        (1..=8).flat_map(|r| (0..8).map(move |k| C64::from_polar(0.12 * r as f64, 0.785 * k as f64))).collect();
    let mut failures = 0;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..count as u64 {
        let report = nptest::random_feasible_dataset(cfg.seed.wrapping_add(i), 2 + (i % 3) as usize, 1, 0.2, cfg)
            .and_then(|(_, map)| {
                let b = HoloFunction::Blaschke(discgeo::minimal_blaschke(&map.eval(C64::new(0.0, 0.0)), cfg)?);
                nptest::schwarz_check(&|z| funcalc::apply(&b, &map.eval(z), cfg), &samples, cfg)
            });
        match report {
            Ok(r) if r.passed() => worst = worst.max(r.worst_excess),
            _ => failures += 1,
        }
    }
    check("Schwarz bound on discs through the origin", failures, count, worst)
}
