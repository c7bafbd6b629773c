//! Matrix holomorphic functional calculus and Pick-type necessary conditions on the
//! spectral unit ball.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is pure computation on
//! dense complex matrices of modest size: eigenstructure (clustered eigenvalues, indices,
//! spectral projections), `f(A)` for holomorphic `f`, minimal-polynomial prediction for
//! `f(A)`, the symmetrization map and its companion section, an isospectral entire curve
//! through a given matrix, and decision procedures for the 2- and 3-point interpolation
//! problems from the disc into the spectral unit ball.
//!
//! Tolerances never live in globals; every numerical entry point takes a [`Config`].

#![no_std]

extern crate alloc;

pub mod config;
pub mod discgeo;
pub mod error;
pub mod funcalc;
pub mod isospec;
pub mod linalg;
pub mod matrix;
pub mod nptest;
pub mod polynomials;
mod series;
pub mod spectra;
pub mod symprod;
pub mod testgen;

pub use config::Config;
pub use discgeo::{BlaschkeProduct, BlaschkeZero};
pub use error::{Error, Result};
pub use funcalc::{HoloFunction, TablePoint, Vanishing};
pub use matrix::Matrix;
pub use nptest::{InterpolationData, Status, Verdict};
pub use polynomials::{ComplexPoly, SymPoint};
pub use spectra::{EigenCluster, SpectralData};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
