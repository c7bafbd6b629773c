//! Shared helpers for the integration tests.

#![allow(dead_code)]

use specball_core::polynomials::ComplexPoly;
#[allow(unused_imports)]
pub use specball_core::testgen::{match_groups, trial, trials, Rejection, Trial};
use specball_core::testgen::JordanSpec;
use specball_core::{HoloFunction, Matrix, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `(f(λ), total algebraic multiplicity)` with coinciding images merged, from the exact
/// Jordan data.
pub fn expected_image_multiset(spec: &JordanSpec, f: &HoloFunction) -> Vec<(C64, usize)> {
    let cfg = specball_core::Config::default();
    let mut out: Vec<(C64, usize)> = Vec::new();
    for (lam, alg, _) in spec.structure() {
        let v = f.eval(lam, &cfg).unwrap();
        match out.iter_mut().find(|(w, _)| (w - v).norm() <= 1e-9) {
            Some(e) => e.1 += alg,
            None => out.push((v, alg)),
        }
    }
    out
}

/// `‖X − Y‖_F / max(1, ‖X‖_F, ‖Y‖_F)`.
pub fn rel_diff(x: &Matrix, y: &Matrix) -> f64 {
    x.distance(y) / x.frobenius_norm().max(y.frobenius_norm()).max(1.0)
}

/// `f` as numerator and denominator polynomials.
pub fn fraction(f: &HoloFunction) -> (ComplexPoly, ComplexPoly) {
    match f {
        HoloFunction::Polynomial(p) => (p.clone(), ComplexPoly::constant(c(1.0, 0.0))),
        HoloFunction::Rational { num, den } => (num.clone(), den.clone()),
        HoloFunction::Blaschke(b) => (b.numerator(), b.denominator()),
        HoloFunction::Table(_) => panic!("tables have no fraction form"),
    }
}

pub fn product(f: &HoloFunction, g: &ComplexPoly) -> HoloFunction {
    let (n, d) = fraction(f);
    HoloFunction::rational(&n * g, d).unwrap()
}

pub fn combination(a: C64, f: &HoloFunction, b: C64, g: &ComplexPoly) -> HoloFunction {
    let (n, d) = fraction(f);
    HoloFunction::rational(&n.scale(a) + &(&d * g).scale(b), d).unwrap()
}
