//! Maps induced on the symmetrized product: `Σ^nφ(π_n(z)) = π_n(φ(z_1), …, φ(z_n))`, and
//! the section identity `χ ∘ τ = id`.

use alloc::vec::Vec;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::funcalc::HoloFunction;
use crate::polynomials::{companion, from_sym_point, pi_n, SymPoint};
use crate::spectra;
use crate::C64;

/// Where `φ` is defined and where its values must land.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// The whole plane minus poles.
    Plane,
    /// The open unit disc.
    Disc,
}

impl Domain {
    pub fn contains(&self, z: C64) -> bool {
        match self {
            Domain::Plane => z.re.is_finite() && z.im.is_finite(),
            Domain::Disc => z.norm() < 1.0,
        }
    }
}

/// `Σ^nφ` for a scalar holomorphic self-map `φ` of a domain.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedMap {
    pub phi: HoloFunction,
    pub n: usize,
    pub domain: Domain,
}

impl InducedMap {
    pub fn new(phi: HoloFunction, n: usize, domain: Domain) -> Self {
        Self { phi, n, domain }
    }

    /// Verifies `φ(z) ∈ domain` at the samples.
    pub fn check_maps_into(&self, samples: &[C64], cfg: &Config) -> Result<()> {
        for &z in samples {
            let w = self.image(z, cfg)?;
            if !self.domain.contains(w) {
                return Err(Error::DomainViolation { value: w });
            }
        }
        Ok(())
    }

    fn image(&self, z: C64, cfg: &Config) -> Result<C64> {
        if !self.domain.contains(z) {
            return Err(Error::DomainViolation { value: z });
        }
        self.phi.eval(z, cfg).map_err(|e| match e {
            Error::PoleHit { at } | Error::PoleOnSpectrum { at } => Error::DomainViolation { value: at },
            other => other,
        })
    }
}

/// Roots of `P_X`, mapped by `φ`, re-symmetrized.
pub fn sigma_n_phi(m: &InducedMap, x: &SymPoint, cfg: &Config) -> Result<SymPoint> {
    if x.n() != m.n {
        return Err(Error::DimensionMismatch { expected: m.n, found: x.n() });
    }
    let roots = from_sym_point(x).roots()?;
    let images = roots.iter().map(|&z| m.image(z, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(pi_n(&images))
}

/// Absolute tolerance of the `χ ∘ τ` identity.
pub const CHI_TAU_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ChiTauReport {
    /// `max_j |χ_j(τ(X)) − X_j|`.
    pub deviation: f64,
    pub tolerance: f64,
}

impl ChiTauReport {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::Assertion { check: "chi of companion", violations: 1, worst: self.deviation })
        }
    }
}

/// Compares `χ(companion(X))` with `X`.
pub fn chi_tau_identity_check(x: &SymPoint, cfg: &Config) -> Result<ChiTauReport> {
    let back = spectra::chi(&companion(x), cfg)?;
    Ok(ChiTauReport { deviation: back.max_deviation(x), tolerance: CHI_TAU_TOL })
}
