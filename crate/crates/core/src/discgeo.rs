//! Unit-disc geometry: Möbius distance, disc automorphisms, finite Blaschke products,
//! and Carathéodory extremals of the disc.

use alloc::vec::Vec;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::polynomials::ComplexPoly;
use crate::spectra::{self, SpectralData};
use crate::{series, C64};

const ONE: C64 = C64::new(1.0, 0.0);

/// Pseudo-hyperbolic distance `|z1 - z2| / |1 - z̄2 z1|`.
pub fn mobius_distance(z1: C64, z2: C64) -> Result<f64> {
    for z in [z1, z2] {
        if !(z.norm() < 1.0) {
            return Err(Error::OutOfDisc { value: z });
        }
    }
    Ok(mobius_unchecked(z1, z2))
}

/// Same formula without the disc check; callers guarantee `|z2| < 1` or accept the value.
pub(crate) fn mobius_unchecked(z1: C64, z2: C64) -> f64 {
    let den = (ONE - z2.conj() * z1).norm();
    if den == 0.0 {
        return 1.0;
    }
    (z1 - z2).norm() / den
}

/// The automorphism `ψ(ζ) = (ζ - c) / (1 - c̄ ζ)` sending `c` to 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscAutomorphism {
    center: C64,
}

impl DiscAutomorphism {
    pub fn new(center: C64) -> Result<Self> {
        if !(center.norm() < 1.0) {
            return Err(Error::OutOfDisc { value: center });
        }
        Ok(Self { center })
    }

    pub fn center(&self) -> C64 {
        self.center
    }

    pub fn apply(&self, z: C64) -> C64 {
        (z - self.center) / (ONE - self.center.conj() * z)
    }

    pub fn inverse(&self, w: C64) -> C64 {
        (w + self.center) / (ONE + self.center.conj() * w)
    }
}

/// Shorthand for [`DiscAutomorphism::new`].
pub fn disc_automorphism(center: C64) -> Result<DiscAutomorphism> {
    DiscAutomorphism::new(center)
}

/// Zero of a Blaschke product with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlaschkeZero {
    pub a: C64,
    pub mult: usize,
}

/// `front · ∏ ((t - a) / (1 - ā t))^mult` with `|a| < 1` and `|front| = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlaschkeProduct {
    zeros: Vec<BlaschkeZero>,
    front: C64,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<BlaschkeZero>, front: C64) -> Result<Self> {
        if (front.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Precondition("Blaschke front factor must be unimodular".into()));
        }
        for z in &zeros {
            if !(z.a.norm() < 1.0) {
                return Err(Error::OutOfDisc { value: z.a });
            }
            if z.mult == 0 {
                return Err(Error::Precondition("Blaschke zero with multiplicity 0".into()));
            }
        }
        Ok(Self { zeros, front })
    }

    /// `ζ ↦ ζ^k`.
    pub fn power_of_identity(k: usize) -> Self {
        Self { zeros: alloc::vec![BlaschkeZero { a: C64::new(0.0, 0.0), mult: k }], front: ONE }
    }

    pub fn zeros(&self) -> &[BlaschkeZero] {
        &self.zeros
    }

    pub fn front(&self) -> C64 {
        self.front
    }

    pub fn with_front(&self, front: C64) -> Result<Self> {
        Self::new(self.zeros.clone(), front)
    }

    /// Total number of zeros counted with multiplicity.
    pub fn degree(&self) -> usize {
        self.zeros.iter().map(|z| z.mult).sum()
    }

    pub fn eval(&self, t: C64, cfg: &Config) -> Result<C64> {
        let mut acc = self.front;
        for z in &self.zeros {
            let den = ONE - z.a.conj() * t;
            if den.norm() <= cfg.pole_tol {
                return Err(Error::PoleHit { at: t });
            }
            acc *= ((t - z.a) / den).powu(z.mult as u32);
        }
        Ok(acc)
    }

    /// Numerator `front · ∏ (t - a)^mult`.
    pub fn numerator(&self) -> ComplexPoly {
        self.zeros.iter().fold(ComplexPoly::constant(self.front), |p, z| {
            &p * &ComplexPoly::linear_power(z.a, z.mult)
        })
    }

    /// Denominator `∏ (1 - ā t)^mult`.
    pub fn denominator(&self) -> ComplexPoly {
        self.zeros.iter().fold(ComplexPoly::constant(ONE), |p, z| {
            let f = ComplexPoly::new(alloc::vec![ONE, -z.a.conj()]);
            (0..z.mult).fold(p, |acc, _| &acc * &f)
        })
    }

    /// First `len` Taylor coefficients at `lambda`, from the factor-wise series
    /// `(λ - a + h) / (1 - āλ - ā h)`.
    pub fn taylor(&self, lambda: C64, len: usize, cfg: &Config) -> Result<Vec<C64>> {
        let mut out = alloc::vec![C64::new(0.0, 0.0); len];
        if len == 0 {
            return Ok(out);
        }
        out[0] = self.front;
        for z in &self.zeros {
            let d0 = ONE - z.a.conj() * lambda;
            if d0.norm() <= cfg.pole_tol {
                return Err(Error::PoleOnSpectrum { at: lambda });
            }
            let num = [lambda - z.a, ONE];
            let den = [d0, -z.a.conj()];
            let factor = series::div(&num, &den, len);
            out = series::mul(&out, &series::pow(&factor, z.mult, len), len);
        }
        Ok(out)
    }

    /// Zero of multiplicity at `lambda` if `lambda` is within `tol` of a listed zero.
    pub fn zero_multiplicity_near(&self, lambda: C64, tol: f64) -> Option<usize> {
        self.zeros
            .iter()
            .filter(|z| (z.a - lambda).norm() <= tol)
            .map(|z| z.mult)
            .reduce(|a, b| a + b)
    }
}

/// Minimal Blaschke product of `W`: zeros at the distinct eigenvalues with multiplicity
/// equal to their index, front factor 1.
pub fn minimal_blaschke(w: &Matrix, cfg: &Config) -> Result<BlaschkeProduct> {
    let sd = spectra::spectral_data(w, cfg)?;
    minimal_blaschke_from(&sd, cfg)
}

/// As [`minimal_blaschke`], reusing already computed spectral data.
pub fn minimal_blaschke_from(sd: &SpectralData, cfg: &Config) -> Result<BlaschkeProduct> {
    check_spectrum_in_disc(sd, cfg)?;
    let zeros = sd.eigs.iter().map(|e| BlaschkeZero { a: e.value, mult: e.index }).collect();
    BlaschkeProduct::new(zeros, ONE)
}

pub(crate) fn check_spectrum_in_disc(sd: &SpectralData, cfg: &Config) -> Result<()> {
    match sd.eigs.iter().find(|e| e.value.norm() >= 1.0 - cfg.eps_boundary) {
        Some(e) => Err(Error::SpectrumNotInDisc { eigenvalue: e.value }),
        None => Ok(()),
    }
}

pub fn blaschke_eval(b: &BlaschkeProduct, t: C64, cfg: &Config) -> Result<C64> {
    b.eval(t, cfg)
}

/// Solutions in the open disc of `b(t) = w`, with multiplicity, from the roots of
/// `P(t) - w Q(t)` where `b = P / Q`.
pub fn blaschke_preimage(b: &BlaschkeProduct, w: C64, _cfg: &Config) -> Result<Vec<C64>> {
    if w.norm() > 1.0 {
        return Err(Error::OutOfDisc { value: w });
    }
    let eq = &b.numerator() - &b.denominator().scale(w);
    if b.degree() == 0 {
        return Ok(Vec::new());
    }
    Ok(eq.roots()?.into_iter().filter(|t| t.norm() < 1.0).collect())
}

/// Provider of Carathéodory extremals `G(λ, z; ·)` for a planar domain.
///
/// Only the disc has a closed form; other domains plug in here.
pub trait CaratheodoryExtremal {
    /// `G(λ, z; ζ)`.
    fn eval(&self, lambda: C64, z: C64, zeta: C64) -> Result<C64>;

    /// `C(λ, z) = G(λ, z; z)`.
    fn distance(&self, lambda: C64, z: C64) -> Result<f64> {
        Ok(self.eval(lambda, z, z)?.norm())
    }
}

/// The disc extremal `V(λ, z) · (ζ - λ) / (1 - λ̄ ζ)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DiscExtremal;

impl DiscExtremal {
    /// Unimodular `V(λ, z)` making `G(λ, z; z)` real and nonnegative.
    pub fn rotation(lambda: C64, z: C64) -> C64 {
        let phi = (z - lambda) / (ONE - lambda.conj() * z);
        if phi.norm() == 0.0 {
            ONE
        } else {
            phi.conj() / phi.norm()
        }
    }
}

impl CaratheodoryExtremal for DiscExtremal {
    fn eval(&self, lambda: C64, z: C64, zeta: C64) -> Result<C64> {
        if !(lambda.norm() < 1.0) {
            return Err(Error::OutOfDisc { value: lambda });
        }
        Ok(Self::rotation(lambda, z) * (zeta - lambda) / (ONE - lambda.conj() * zeta))
    }
}

/// A disc Carathéodory extremal bound to a pair `(λ, z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscExtremalMap {
    pub lambda: C64,
    pub rotation: C64,
}

impl DiscExtremalMap {
    pub fn eval(&self, zeta: C64) -> C64 {
        self.rotation * (zeta - self.lambda) / (ONE - self.lambda.conj() * zeta)
    }
}

/// `G_D(λ, z; ·)` and its value `G_D(λ, z; z) = M(λ, z)`.
pub fn caratheodory_extremal_disc(
    lambda: C64,
    z: C64,
    cfg: &Config,
) -> Result<(DiscExtremalMap, f64)> {
    mobius_distance(lambda, z)?;
    if (lambda - z).norm() <= cfg.node_tol {
        return Err(Error::CoincidentPoints);
    }
    let map = DiscExtremalMap { lambda, rotation: DiscExtremal::rotation(lambda, z) };
    let value = map.eval(z);
    Ok((map, value.re))
}

/// `B(W, z; ·) = ∏ G_D(λ, z; ·)^{m(λ)}`: the minimal Blaschke product of `W` times the
/// unimodular constant `∏ V(λ, z)^{m(λ)}`.
pub fn extremal_blaschke(w: &Matrix, z: C64, cfg: &Config) -> Result<BlaschkeProduct> {
    let base = minimal_blaschke(w, cfg)?;
    if base.zeros().iter().any(|e| (e.a - z).norm() <= cfg.node_tol) {
        return Err(Error::CoincidentPoints);
    }
    let front = base
        .zeros()
        .iter()
        .fold(ONE, |acc, e| acc * DiscExtremal::rotation(e.a, z).powu(e.mult as u32));
    base.with_front(front / front.norm())
}
