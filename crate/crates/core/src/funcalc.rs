//! Holomorphic functional calculus `f(A)` and the minimal polynomial of `f(A)` predicted
//! from the Jordan data of `A` and the vanishing orders of `f′`.

use alloc::vec;
use alloc::vec::Vec;

use crate::config::Config;
use crate::discgeo::BlaschkeProduct;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::polynomials::ComplexPoly;
use crate::spectra::{self, SpectralData};
use crate::{series, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Derivatives `f(at), f′(at), …` supplied by the caller.
#[derive(Clone, Debug, PartialEq)]
pub struct TablePoint {
    pub at: C64,
    pub derivs: Vec<C64>,
}

/// A function holomorphic near the spectra it is applied to.
#[derive(Clone, Debug, PartialEq)]
pub enum HoloFunction {
    Polynomial(ComplexPoly),
    Rational { num: ComplexPoly, den: ComplexPoly },
    Blaschke(BlaschkeProduct),
    Table(Vec<TablePoint>),
}

/// Order of vanishing; `Infinite` when the function is identically zero near the point
/// (or, for tabulated functions, when every supplied derivative up to the cap vanishes).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vanishing {
    Finite(usize),
    Infinite,
}

fn factorial(j: usize) -> f64 {
    (1..=j).map(|k| k as f64).product()
}

impl HoloFunction {
    pub fn rational(num: ComplexPoly, den: ComplexPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::Rational { num, den })
    }

    pub fn table(points: Vec<TablePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("function table without points"));
        }
        if points.iter().any(|p| p.derivs.is_empty()) {
            return Err(Error::EmptyInput("table point without values"));
        }
        Ok(Self::Table(points))
    }

    /// `f(t)`.
    pub fn eval(&self, t: C64, cfg: &Config) -> Result<C64> {
        match self {
            Self::Polynomial(p) => Ok(p.eval(t)),
            Self::Rational { num, den } => {
                let d = den.eval(t);
                if self.pole_near(t, cfg)? {
                    return Err(Error::PoleHit { at: t });
                }
                Ok(num.eval(t) / d)
            }
            Self::Blaschke(b) => b.eval(t, cfg),
            Self::Table(_) => Ok(self.taylor(t, 1, cfg.cluster_tol, cfg)?[0]),
        }
    }

    fn pole_near(&self, t: C64, cfg: &Config) -> Result<bool> {
        match self {
            Self::Rational { den, .. } => {
                Ok(den.roots()?.iter().any(|r| (r - t).norm() <= cfg.pole_tol))
            }
            _ => Ok(false),
        }
    }

    /// Taylor coefficients `f^(j)(λ)/j!` for `j < len`. Tabulated points are matched within
    /// `lookup_tol`.
    pub fn taylor(&self, lambda: C64, len: usize, lookup_tol: f64, cfg: &Config) -> Result<Vec<C64>> {
        let pad = |mut v: Vec<C64>| {
            v.resize(len.max(v.len()), ZERO);
            v.truncate(len);
            v
        };
        match self {
            Self::Polynomial(p) => Ok(pad(p.taylor_at(lambda))),
            Self::Rational { num, den } => {
                if self.pole_near(lambda, cfg)? {
                    return Err(Error::PoleOnSpectrum { at: lambda });
                }
                let n = num.taylor_at(lambda);
                let d = den.taylor_at(lambda);
                Ok(series::div(&n, &d, len))
            }
            Self::Blaschke(b) => b.taylor(lambda, len, cfg),
            Self::Table(points) => {
                let p = lookup(points, lambda, lookup_tol)?;
                if p.derivs.len() < len {
                    return Err(Error::InsufficientDerivatives {
                        at: lambda,
                        needed: len,
                        available: p.derivs.len(),
                    });
                }
                Ok(p.derivs[..len].iter().enumerate().map(|(j, d)| d / factorial(j)).collect())
            }
        }
    }

    /// `(f(λ), f′(λ), …, f^(jmax)(λ))`.
    pub fn derivs(&self, lambda: C64, jmax: usize, cfg: &Config) -> Result<Vec<C64>> {
        let t = self.taylor(lambda, jmax + 1, cfg.cluster_tol, cfg)?;
        Ok(t.into_iter().enumerate().map(|(j, c)| c * factorial(j)).collect())
    }

    /// Numerator and denominator with `f = num / den`, for the structural kinds.
    fn fraction(&self) -> Option<(ComplexPoly, ComplexPoly)> {
        match self {
            Self::Polynomial(p) => Some((p.clone(), ComplexPoly::constant(ONE))),
            Self::Rational { num, den } => Some((num.clone(), den.clone())),
            Self::Blaschke(b) => Some((b.numerator(), b.denominator())),
            Self::Table(_) => None,
        }
    }

    /// `f′`, computed exactly: polynomials coefficient-wise, quotients by the quotient
    /// rule, tables by shifting the supplied derivatives.
    pub fn derivative(&self) -> Self {
        match self {
            Self::Polynomial(p) => Self::Polynomial(p.derivative(1)),
            Self::Table(points) => Self::Table(
                points
                    .iter()
                    .map(|p| TablePoint { at: p.at, derivs: p.derivs.iter().skip(1).copied().collect() })
                    .collect(),
            ),
            _ => {
                let (n, d) = self.fraction().expect("structural kind");
                let num = &(&n.derivative(1) * &d) - &(&n * &d.derivative(1));
                Self::Rational { num, den: &d * &d }
            }
        }
    }
}

fn lookup(points: &[TablePoint], lambda: C64, tol: f64) -> Result<&TablePoint> {
    points
        .iter()
        .filter(|p| (p.at - lambda).norm() <= tol)
        .min_by(|a, b| {
            (a.at - lambda)
                .norm()
                .partial_cmp(&(b.at - lambda).norm())
                .unwrap_or(core::cmp::Ordering::Equal)
        })
        .ok_or(Error::NotTabulated { at: lambda })
}

/// `ord_λ f`.
///
/// Structural kinds: multiplicity of `λ` as a root of the numerator, read off its exact
/// Taylor expansion at `λ` (coefficients below `ord_tol` times the largest one count as
/// zero). Tables: first supplied derivative above `ord_tol` times the largest supplied
/// magnitude, with `Infinite` once `cap` derivatives (or all supplied ones) vanish.
pub fn ord_of_vanishing(f: &HoloFunction, lambda: C64, cap: usize, cfg: &Config) -> Vanishing {
    match f {
        HoloFunction::Table(points) => {
            let Ok(p) = lookup(points, lambda, cfg.cluster_tol) else {
                return Vanishing::Finite(0);
            };
            let scale = p.derivs.iter().map(|d| d.norm()).fold(0.0, f64::max);
            p.derivs
                .iter()
                .take(cap)
                .position(|d| d.norm() > cfg.ord_tol * scale)
                .map_or(Vanishing::Infinite, Vanishing::Finite)
        }
        _ => {
            let (num, _) = f.fraction().expect("structural kind");
            let t = num.taylor_at(lambda);
            let scale = t.iter().map(|c| c.norm()).fold(0.0, f64::max);
            if scale == 0.0 {
                return Vanishing::Infinite;
            }
            t.iter()
                .position(|c| c.norm() > cfg.ord_tol * scale)
                .map_or(Vanishing::Infinite, Vanishing::Finite)
        }
    }
}

/// `f(A) = Σ_λ Σ_{j<m(λ)} (A − λI)^j f^(j)(λ)/j! · E(λ)`.
pub fn apply(f: &HoloFunction, a: &Matrix, cfg: &Config) -> Result<Matrix> {
    let sd = spectra::spectral_data(a, cfg)?;
    apply_with(f, a, &sd, cfg)
}

/// As [`apply`], reusing the spectral data of `a`.
pub fn apply_with(f: &HoloFunction, a: &Matrix, sd: &SpectralData, cfg: &Config) -> Result<Matrix> {
    let n = a.n();
    let mut out = Matrix::zeros(n);
    for (e, proj) in sd.eigs.iter().zip(&sd.projections) {
        let tol = cfg.cluster_radius(e.alg_mult, sd.scale());
        let coeffs = f.taylor(e.value, e.index, tol, cfg)?;
        let nil = a.shifted(e.value);
        let mut local = Matrix::zeros(n);
        for c in coeffs.iter().rev() {
            local = &local * &nil;
            for d in 0..n {
                local[(d, d)] += c;
            }
        }
        out = &out + &(&local * proj);
    }
    Ok(out)
}

/// Predicted minimal polynomial of `f(A)` with its factorization.
#[derive(Clone, Debug, PartialEq)]
pub struct PredictedMinpoly {
    pub poly: ComplexPoly,
    /// `(ν, k(ν))` for every distinct `ν ∈ f(σ(A))`.
    pub factors: Vec<(C64, usize)>,
    /// Set when `f′` vanishes identically near some eigenvalue, so `k(ν)` came from the
    /// infinite-order branch.
    pub locally_constant: bool,
}

/// `∏_{ν ∈ f(σ(A))} (t − ν)^{k(ν)}` with
/// `k(ν) = max { ⌊(m(λ) − 1)/(ord_λ f′ + 1)⌋ + 1 : λ ∈ σ(A), f(λ) = ν }`.
pub fn predicted_minpoly(f: &HoloFunction, a: &Matrix, cfg: &Config) -> Result<PredictedMinpoly> {
    let sd = spectra::spectral_data(a, cfg)?;
    predicted_minpoly_with(f, &sd, cfg)
}

pub fn predicted_minpoly_with(
    f: &HoloFunction,
    sd: &SpectralData,
    cfg: &Config,
) -> Result<PredictedMinpoly> {
    let df = f.derivative();
    let mut locally_constant = false;
    let mut images = Vec::with_capacity(sd.eigs.len());
    for e in &sd.eigs {
        let tol = cfg.cluster_radius(e.alg_mult, sd.scale());
        let value = f.taylor(e.value, 1, tol, cfg)?[0];
        let k = if e.index == 1 {
            1
        } else {
            match ord_of_vanishing(&df, e.value, e.index - 1, cfg) {
                Vanishing::Finite(ord) => (e.index - 1) / (ord + 1) + 1,
                Vanishing::Infinite => {
                    locally_constant |= !matches!(f, HoloFunction::Table(_));
                    1
                }
            }
        };
        images.push((value, k));
    }
    let factors = group_images(&images, cfg);
    let poly = factors
        .iter()
        .fold(ComplexPoly::constant(ONE), |p, &(nu, k)| &p * &ComplexPoly::linear_power(nu, k));
    Ok(PredictedMinpoly { poly, factors, locally_constant })
}

/// Groups `(f(λ), k)` pairs whose values coincide within `cluster_tol`; each group keeps its
/// mean value and the largest `k`.
pub(crate) fn group_images(images: &[(C64, usize)], cfg: &Config) -> Vec<(C64, usize)> {
    let scale = images.iter().map(|(v, _)| v.norm()).fold(1.0, f64::max);
    let mut groups: Vec<(Vec<C64>, usize)> = Vec::new();
    let mut order: Vec<usize> = (0..images.len()).collect();
    order.sort_by(|&i, &j| {
        (images[i].0.re, images[i].0.im)
            .partial_cmp(&(images[j].0.re, images[j].0.im))
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    // Single linkage within cluster_tol · scale.
    let r = cfg.cluster_tol * scale;
    for i in order {
        let (v, k) = images[i];
        let hits: Vec<usize> = groups
            .iter()
            .enumerate()
            .filter(|(_, g)| g.0.iter().any(|w| (w - v).norm() <= r))
            .map(|(gi, _)| gi)
            .collect();
        match hits.split_first() {
            None => groups.push((vec![v], k)),
            Some((&first, rest)) => {
                for &gi in rest.iter().rev() {
                    let (vals, kk) = groups.remove(gi);
                    groups[first].0.extend(vals);
                    groups[first].1 = groups[first].1.max(kk);
                }
                groups[first].0.push(v);
                groups[first].1 = groups[first].1.max(k);
            }
        }
    }
    groups
        .into_iter()
        .map(|(vals, k)| (vals.iter().sum::<C64>() / vals.len() as f64, k))
        .collect()
}

/// Minimal polynomial of `Σ α_j N^j` for the nilpotent shift `N` of size `n = alphas.len()`:
/// `(t − α_0)^{⌊(n−1)/l⌋+1}` with `l` the first index `j ≥ 1` where `α_j ≠ 0` (`l = n` if
/// none).
pub fn lincomb_nilpotent_minpoly(alphas: &[C64], cfg: &Config) -> Result<ComplexPoly> {
    let n = alphas.len();
    if n < 2 {
        return Err(Error::Precondition("nilpotent combination needs n >= 2".into()));
    }
    let l = (1..n).find(|&j| alphas[j].norm() > cfg.zero_tol).unwrap_or(n);
    Ok(ComplexPoly::linear_power(alphas[0], (n - 1) / l + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::discgeo::BlaschkeZero;

    fn cfg() -> Config {
        Config::default()
    }

    fn square() -> HoloFunction {
        HoloFunction::Polynomial(ComplexPoly::from_real(&[0.0, 0.0, 1.0]))
    }

    #[test]
    fn identity_and_square() {
        let a = Matrix::from_real(&[&[1.0, 2.0, 0.0], &[0.0, 3.0, 1.0], &[1.0, 0.0, -1.0]]);
        let id = HoloFunction::Polynomial(ComplexPoly::identity());
        assert!(apply(&id, &a, &cfg()).unwrap().distance(&a) < 1e-10);
        let z = apply(&square(), &Matrix::jordan_block(c(0.0, 0.0), 2), &cfg()).unwrap();
        assert!(z.frobenius_norm() < 1e-14);
        assert!(apply(&square(), &a, &cfg()).unwrap().distance(&(&a * &a)) < 1e-9);
    }

    #[test]
    fn jordan_two_block_uses_derivative() {
        let lam = c(0.3, -0.2);
        let b = BlaschkeProduct::new(vec![BlaschkeZero { a: c(-0.4, 0.1), mult: 2 }], c(0.0, 1.0)).unwrap();
        let f = HoloFunction::Blaschke(b);
        let d = f.derivs(lam, 1, &cfg()).unwrap();
        let fa = apply(&f, &Matrix::jordan_block(lam, 2), &cfg()).unwrap();
        let want = Matrix::from_rows(&[vec![d[0], d[1]], vec![ZERO, d[0]]]).unwrap();
        assert!(fa.distance(&want) < 1e-12);
    }

    #[test]
    fn rational_pole_is_rejected() {
        let f = HoloFunction::rational(ComplexPoly::constant(ONE), ComplexPoly::from_real(&[-0.5, 1.0])).unwrap();
        let a = Matrix::diag(&[c(0.5, 0.0), c(0.1, 0.0)]);
        assert!(matches!(apply(&f, &a, &cfg()), Err(Error::PoleOnSpectrum { .. })));
        let a = Matrix::diag(&[c(0.25, 0.0), c(0.0, 0.0)]);
        let fa = apply(&f, &a, &cfg()).unwrap();
        assert!((fa[(0, 0)] - c(-4.0, 0.0)).norm() < 1e-12);
        assert!((fa[(1, 1)] - c(-2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn table_kind() {
        let f = HoloFunction::table(vec![TablePoint { at: c(0.5, 0.0), derivs: vec![c(2.0, 0.0), c(3.0, 0.0)] }]).unwrap();
        let fa = apply(&f, &Matrix::jordan_block(c(0.5, 0.0), 2), &cfg()).unwrap();
        assert_eq!(fa[(0, 1)], c(3.0, 0.0));
        let err = apply(&f, &Matrix::jordan_block(c(0.5, 0.0), 3), &cfg()).unwrap_err();
        assert!(matches!(err, Error::InsufficientDerivatives { needed: 3, available: 2, .. }));
        assert!(matches!(apply(&f, &Matrix::diag(&[c(0.1, 0.0)]), &cfg()), Err(Error::NotTabulated { .. })));
    }

    #[test]
    fn vanishing_orders() {
        assert_eq!(ord_of_vanishing(&square(), c(0.0, 0.0), 8, &cfg()), Vanishing::Finite(2));
        assert_eq!(ord_of_vanishing(&square(), c(1.0, 0.0), 8, &cfg()), Vanishing::Finite(0));
        let a = c(0.2, 0.3);
        let b = HoloFunction::Blaschke(
            BlaschkeProduct::new(vec![BlaschkeZero { a, mult: 2 }], ONE).unwrap(),
        );
        assert_eq!(ord_of_vanishing(&b.derivative(), a, 8, &cfg()), Vanishing::Finite(1));
        let konst = HoloFunction::Polynomial(ComplexPoly::constant(c(0.4, 0.0)));
        assert_eq!(ord_of_vanishing(&konst.derivative(), a, 8, &cfg()), Vanishing::Infinite);
        let t = HoloFunction::table(vec![TablePoint { at: a, derivs: vec![c(1.0, 0.0), ZERO, ZERO] }]).unwrap();
        assert_eq!(ord_of_vanishing(&t.derivative(), a, 2, &cfg()), Vanishing::Infinite);
    }

    #[test]
    fn predicted_examples() {
        let p = predicted_minpoly(&square(), &Matrix::jordan_block(c(0.0, 0.0), 3), &cfg()).unwrap();
        assert_eq!(p.factors.len(), 1);
        assert_eq!(p.factors[0].1, 2);
        let a = Matrix::block_diag(&[Matrix::jordan_block(c(0.0, 0.0), 2), Matrix::diag(&[ONE])]);
        let p = predicted_minpoly(&square(), &a, &cfg()).unwrap();
        let mut ks: Vec<usize> = p.factors.iter().map(|f| f.1).collect();
        ks.sort();
        assert_eq!(ks, vec![1, 1]);
        assert_eq!(p.poly.degree(), Some(2));
        let d = Matrix::diag(&[c(0.5, 0.0), c(-0.5, 0.0), c(0.1, 0.0)]);
        let p = predicted_minpoly(&square(), &d, &cfg()).unwrap();
        assert_eq!(p.poly.degree(), Some(2));
        let konst = HoloFunction::Polynomial(ComplexPoly::constant(c(0.4, 0.0)));
        let p = predicted_minpoly(&konst, &Matrix::jordan_block(c(0.1, 0.0), 3), &cfg()).unwrap();
        assert!(p.locally_constant);
        assert_eq!(p.poly.degree(), Some(1));
    }

    #[test]
    fn nilpotent_combinations() {
        let p = lincomb_nilpotent_minpoly(&[c(2.0, 0.0), ZERO, ZERO, ZERO], &cfg()).unwrap();
        assert_eq!(p.degree(), Some(1));
        let p = lincomb_nilpotent_minpoly(&[c(5.0, 0.0), ZERO, ONE], &cfg()).unwrap();
        assert_eq!(p, ComplexPoly::linear_power(c(5.0, 0.0), 2));
        let p = lincomb_nilpotent_minpoly(&[ZERO, ONE, ZERO], &cfg()).unwrap();
        assert_eq!(p, ComplexPoly::linear_power(ZERO, 3));
        assert!(lincomb_nilpotent_minpoly(&[ONE], &cfg()).is_err());
    }
}
