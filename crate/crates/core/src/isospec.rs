//! The isospectral entire curve `f(ζ) = exp(−Cζ)(D + ζU)exp(Cζ)` through a matrix `A`,
//! built from its Schur form, and checks that `χ` stays constant along it.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::linalg::{self, Lu};
use crate::matrix::Matrix;
use crate::polynomials::SymPoint;
use crate::spectra;
use crate::testgen::{self, Rng};
use crate::C64;

/// `A = Q T Q*` with `Q` unitary and `T` upper triangular.
pub fn schur_decompose(a: &Matrix, cfg: &Config) -> Result<(Matrix, Matrix)> {
    if a.n() > cfg.max_n {
        return Err(Error::DimensionTooLarge { n: a.n(), max: cfg.max_n });
    }
    let s = linalg::schur(a)?;
    Ok((s.q, s.t))
}

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// `exp(M)` by scaling and squaring around the degree-13 Padé approximant.
pub fn matrix_exp(m: &Matrix) -> Result<Matrix> {
    let n = m.n();
    let norm = m.norm_1();
    if !norm.is_finite() {
        return Err(Error::Precondition("matrix exponential of a non-finite matrix".into()));
    }
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = m.scale_real(0.5f64.powi(s));
    let b = &PADE13;
    let id = Matrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let comb = |c6: f64, c4: f64, c2: f64, c0: f64| {
        let mut out = a6.scale_real(c6);
        out.axpy(C64::new(c4, 0.0), &a4);
        out.axpy(C64::new(c2, 0.0), &a2);
        out.axpy(C64::new(c0, 0.0), &id);
        out
    };
    let u_inner = &(&a6 * &comb(b[13], b[11], b[9], 0.0)) + &comb(b[7], b[5], b[3], b[1]);
    let u = &a * &u_inner;
    let v = &(&a6 * &comb(b[12], b[10], b[8], 0.0)) + &comb(b[6], b[4], b[2], b[0]);
    let mut r = Lu::new(&(&v - &u))?.solve(&(&v + &u));
    for _ in 0..s {
        r = &r * &r;
    }
    Ok(r)
}

/// `‖Q*Q − I‖_F` bound accepted as unitary.
fn unitary_tol(n: usize, cfg: &Config) -> f64 {
    cfg.path_tol * n as f64
}

/// Principal logarithm of a unitary matrix: `Q = V diag(e^{iθ}) V*` with `θ ∈ (−π, π]`
/// (eigenvalues within 1e−10 of −1 take `θ = π`), `log Q = V diag(iθ) V*`.
pub fn matrix_log_unitary(q: &Matrix, cfg: &Config) -> Result<Matrix> {
    let n = q.n();
    let deviation = (&q.adjoint() * q).distance(&Matrix::identity(n));
    if !(deviation <= unitary_tol(n, cfg)) {
        return Err(Error::NotUnitary { deviation });
    }
    let s = linalg::schur(q)?;
    let thetas: Vec<C64> = s
        .t
        .diagonal()
        .iter()
        .map(|z| {
            let theta = if (z + 1.0).norm() <= 1e-10 { core::f64::consts::PI } else { z.arg() };
            C64::new(0.0, theta)
        })
        .collect();
    Ok(&(&s.q * &Matrix::diag(&thetas)) * &s.q.adjoint())
}

/// `f(ζ) = exp(−Cζ)(D + ζU)exp(Cζ)` with `f(0) = D`, `f(1) = source`.
#[derive(Clone, Debug)]
pub struct IsospectralPath {
    pub d: Matrix,
    pub u: Matrix,
    pub c: Matrix,
    pub source: Matrix,
}

impl IsospectralPath {
    pub fn eval(&self, zeta: C64) -> Result<Matrix> {
        let mut inner = self.d.clone();
        inner.axpy(zeta, &self.u);
        if zeta == C64::new(0.0, 0.0) {
            return Ok(inner);
        }
        let right = matrix_exp(&self.c.scale(zeta))?;
        let left = matrix_exp(&self.c.scale(-zeta))?;
        Ok(&(&left * &inner) * &right)
    }
}

/// Schur form `A = Q T Q*`, `D = diag T`, `U = T − D`, `C = −log Q` so `exp(−C) = Q`.
pub fn isospectral_path(a: &Matrix, cfg: &Config) -> Result<IsospectralPath> {
    let (q, t) = schur_decompose(a, cfg)?;
    let d = Matrix::diag(&t.diagonal());
    let u = t.strict_upper();
    let c = matrix_log_unitary(&q, cfg)?.scale_real(-1.0);
    Ok(IsospectralPath { d, u, c, source: a.clone() })
}

/// Sample points: `count` each on `[0, 1]`, the unit circle, and the circle `|ζ| = 2`.
pub fn path_samples(count: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(3 * count);
    let denom = count.saturating_sub(1).max(1) as f64;
    out.extend((0..count).map(|i| C64::new(i as f64 / denom, 0.0)));
    for r in [1.0, 2.0] {
        out.extend(
            (0..count)
                .map(|i| C64::from_polar(r, core::f64::consts::TAU * i as f64 / count as f64)),
        );
    }
    out
}

/// Componentwise `|χ(X) − χ(Y)|`.
pub fn chi_deviation(x: &SymPoint, y: &SymPoint) -> Vec<f64> {
    x.coords.iter().zip(&y.coords).map(|(a, b)| (a - b).norm()).collect()
}

/// Bound `10 · path_tol · (1 + ‖A‖_F)^n` on the componentwise `χ` deviation.
pub fn chi_bound(a: &Matrix, cfg: &Config) -> f64 {
    10.0 * cfg.path_tol * (1.0 + a.frobenius_norm()).powi(a.n() as i32)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathSample {
    pub zeta: C64,
    pub deviation: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathReport {
    pub samples: Vec<PathSample>,
    pub max_deviation: f64,
    pub bound: f64,
    /// `‖f(1) − A‖_F / max(‖A‖_F, tiny)`.
    pub endpoint_error: f64,
}

impl PathReport {
    pub fn passed(&self, cfg: &Config) -> bool {
        self.max_deviation <= self.bound && self.endpoint_error <= cfg.path_tol
    }
}

/// Evaluates the path at each sample and compares `χ` with `χ(A)`.
pub fn verify_path(path: &IsospectralPath, samples: &[C64], cfg: &Config) -> Result<PathReport> {
    let a = &path.source;
    let chi_a = spectra::chi(a, cfg)?;
    let mut out = Vec::with_capacity(samples.len());
    let mut max_deviation: f64 = 0.0;
    for &zeta in samples {
        let deviation = chi_deviation(&spectra::chi(&path.eval(zeta)?, cfg)?, &chi_a);
        max_deviation = deviation.iter().copied().fold(max_deviation, f64::max);
        out.push(PathSample { zeta, deviation });
    }
    let endpoint_error =
        path.eval(C64::new(1.0, 0.0))?.distance(a) / a.frobenius_norm().max(f64::MIN_POSITIVE);
    Ok(PathReport { samples: out, max_deviation, bound: chi_bound(a, cfg), endpoint_error })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PreservationReport {
    pub checked: usize,
    pub worst: f64,
    pub bound: f64,
    pub violations: usize,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::Assertion {
                check: "spectrum preservation",
                violations: self.violations,
                worst: self.worst,
            })
        }
    }
}

/// Number of random similarity conjugates examined besides the path samples.
pub const CONJUGATES: usize = 8;

/// Checks `χ(map(B)) = χ(map(A))` for matrices `B` with `χ(B) = χ(A)`: the isospectral
/// path of `A` sampled on `[0, 1]` and random similarity conjugates of `A` with condition
/// number at most 10 (seeded by `cfg.seed`).
pub fn spectrum_preservation_test(
    map: &dyn Fn(&Matrix) -> Result<Matrix>,
    a: &Matrix,
    cfg: &Config,
) -> Result<PreservationReport> {
    let path = isospectral_path(a, cfg)?;
    let count = cfg.grid_points.max(2);
    let mut others = Vec::with_capacity(count + CONJUGATES);
    for i in 0..count {
        others.push(path.eval(C64::new(i as f64 / (count - 1) as f64, 0.0))?);
    }
    let mut rng = Rng::seed(cfg.seed);
    for _ in 0..CONJUGATES {
        let (s, sinv) = testgen::similarity(&mut rng, a.n(), 10.0);
        others.push(&(&s * a) * &sinv);
    }
    let fa = map(a)?;
    let chi_fa = spectra::chi(&fa, cfg)?;
    let bound = chi_bound(&fa, cfg).max(chi_bound(a, cfg));
    let mut worst: f64 = 0.0;
    let mut violations = 0;
    for b in &others {
        let dev = chi_deviation(&spectra::chi(&map(b)?, cfg)?, &chi_fa).into_iter().fold(0.0, f64::max);
        worst = worst.max(dev);
        if dev > bound {
            violations += 1;
        }
    }
    Ok(PreservationReport { checked: others.len(), worst, bound, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::discgeo::{BlaschkeProduct, BlaschkeZero};
    use crate::funcalc::{self, HoloFunction};
    use alloc::vec;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn exp_examples() {
        assert_eq!(matrix_exp(&Matrix::zeros(3)).unwrap(), Matrix::identity(3));
        let d = matrix_exp(&Matrix::diag(&[c(1.0, 0.0), c(0.0, core::f64::consts::PI)])).unwrap();
        assert!((d[(0, 0)] - c(core::f64::consts::E, 0.0)).norm() < 1e-14);
        assert!((d[(1, 1)] - c(-1.0, 0.0)).norm() < 1e-14);
        // exp of a nilpotent block is its truncated series.
        let n = Matrix::jordan_block(c(0.0, 0.0), 3).scale_real(7.0);
        let e = matrix_exp(&n).unwrap();
        assert!((e[(0, 2)] - c(24.5, 0.0)).norm() < 1e-12);
        let big = Matrix::from_real(&[&[0.0, 20.0], &[-20.0, 0.0]]);
        let r = matrix_exp(&big).unwrap();
        assert!((r[(0, 0)] - c(20f64.cos(), 0.0)).norm() < 1e-12);
        assert!((r[(0, 1)] - c(20f64.sin(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn log_examples() {
        assert!(matrix_log_unitary(&Matrix::identity(3), &cfg()).unwrap().frobenius_norm() < 1e-15);
        let l = matrix_log_unitary(&Matrix::diag(&[c(0.0, 1.0)]), &cfg()).unwrap();
        assert!((l[(0, 0)] - c(0.0, core::f64::consts::FRAC_PI_2)).norm() < 1e-15);
        let l = matrix_log_unitary(&Matrix::diag(&[c(-1.0, 0.0)]), &cfg()).unwrap();
        assert!((l[(0, 0)] - c(0.0, core::f64::consts::PI)).norm() < 1e-15);
        let bad = Matrix::from_real(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert!(matches!(matrix_log_unitary(&bad, &cfg()), Err(Error::NotUnitary { .. })));
        let mut rng = Rng::seed(3);
        for n in 1..=8 {
            let q = testgen::random_unitary(&mut rng, n);
            let back = matrix_exp(&matrix_log_unitary(&q, &cfg()).unwrap()).unwrap();
            assert!(back.distance(&q) < 1e-9);
        }
    }

    #[test]
    fn schur_examples() {
        let t = Matrix::from_real(&[&[1.0, 2.0], &[0.0, 3.0]]);
        let (q, tt) = schur_decompose(&t, &cfg()).unwrap();
        assert!((&(&q * &tt) * &q.adjoint()).distance(&t) < 1e-12);
        assert!(tt.diagonal().iter().zip(t.diagonal()).all(|(a, b)| (a - b).norm() < 1e-12));
        let h = Matrix::from_real(&[&[2.0, 1.0], &[1.0, 2.0]]);
        let (_, th) = schur_decompose(&h, &cfg()).unwrap();
        assert!(th[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn triangular_and_diagonal_paths() {
        let t = Matrix::from_real(&[&[0.5, 2.0, 1.0], &[0.0, -0.5, 3.0], &[0.0, 0.0, 0.25]]);
        let p = isospectral_path(&t, &cfg()).unwrap();
        let z = c(0.3, 1.2);
        let mut want = p.d.clone();
        want.axpy(z, &p.u);
        // Q is diagonal with unimodular entries, so C commutes with D only; compare spectra.
        assert!(p.eval(c(1.0, 0.0)).unwrap().distance(&t) < 1e-12);
        let chi = spectra::chi(&p.eval(z).unwrap(), &cfg()).unwrap();
        assert!(chi.max_deviation(&spectra::chi(&want, &cfg()).unwrap()) < 1e-10);
        let d = Matrix::diag(&[c(0.1, 0.0), c(-0.3, 0.2)]);
        let p = isospectral_path(&d, &cfg()).unwrap();
        assert!(p.u.frobenius_norm() < 1e-14);
        assert!(p.eval(c(0.0, 2.0)).unwrap().distance(&p.d) < 1e-12);
    }

    #[test]
    fn random_path_keeps_chi() {
        let mut rng = Rng::seed(11);
        for n in 2..=5 {
            let a = testgen::random_matrix(&mut rng, n, 1.0);
            let p = isospectral_path(&a, &cfg()).unwrap();
            let r = verify_path(&p, &path_samples(16), &cfg()).unwrap();
            assert!(r.passed(&cfg()), "{r:?}");
            assert_eq!(p.eval(c(0.0, 0.0)).unwrap(), p.d);
        }
    }

    #[test]
    fn preservation_under_maps() {
        let a = Matrix::from_real(&[&[0.2, 0.3, 0.0], &[0.0, -0.1, 0.4], &[0.1, 0.0, 0.3]]);
        let id = spectrum_preservation_test(&|m| Ok(m.clone()), &a, &cfg()).unwrap();
        assert!(id.passed());
        let mut rng = Rng::seed(5);
        let (s, sinv) = testgen::similarity(&mut rng, 3, 5.0);
        let conj = spectrum_preservation_test(&|m| Ok(&(&s * m) * &sinv), &a, &cfg()).unwrap();
        assert!(conj.passed());
        let b = BlaschkeProduct::new(vec![BlaschkeZero { a: c(0.1, 0.2), mult: 2 }], c(1.0, 0.0)).unwrap();
        let f = HoloFunction::Blaschke(b);
        let r = spectrum_preservation_test(&|m| funcalc::apply(&f, m, &cfg()), &a, &cfg()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checked, cfg().grid_points + CONJUGATES);
    }
}
