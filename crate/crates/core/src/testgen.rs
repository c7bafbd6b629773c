//! Seeded generators for test matrices with known Jordan structure.
//!
//! Matrices are built Jordan-first: eigenvalues and block sizes are chosen, then the
//! Jordan matrix is conjugated by a similarity of bounded condition number, so the true
//! index of every eigenvalue is known exactly. [`trial`] pairs such a matrix with a test
//! function whose critical points sit on the spectrum.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::discgeo::{BlaschkeProduct, BlaschkeZero};
use crate::funcalc::HoloFunction;
use crate::matrix::Matrix;
use crate::polynomials::ComplexPoly;
use crate::C64;

/// Deterministic random source used by generators and seeded sweeps.
pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn seed(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.gen_range(lo..hi)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }

    pub fn range_inclusive(&mut self, lo: usize, hi: usize) -> usize {
        self.0.gen_range(lo..=hi)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.0.gen_bool(p)
    }

    /// Uniform point in the open disc of radius `r`.
    pub fn in_disc(&mut self, r: f64) -> C64 {
        let rho = r * self.uniform(0.0, 1.0).sqrt();
        let theta = self.uniform(-core::f64::consts::PI, core::f64::consts::PI);
        C64::from_polar(rho, theta)
    }

    /// Point of the square `[-s, s]²`.
    pub fn in_square(&mut self, s: f64) -> C64 {
        C64::new(self.uniform(-s, s), self.uniform(-s, s))
    }

    pub fn unimodular(&mut self) -> C64 {
        C64::from_polar(1.0, self.uniform(-core::f64::consts::PI, core::f64::consts::PI))
    }
}

/// Matrix with entries uniform in the bidisc of radius `r` (real and imaginary parts).
pub fn random_matrix(rng: &mut Rng, n: usize, r: f64) -> Matrix {
    Matrix::from_fn(n, |_, _| rng.in_square(r))
}

/// Unitary matrix from modified Gram-Schmidt (applied twice) on a random matrix.
pub fn random_unitary(rng: &mut Rng, n: usize) -> Matrix {
    loop {
        let a = random_matrix(rng, n, 1.0);
        let mut cols: Vec<Vec<C64>> = (0..n).map(|j| (0..n).map(|i| a[(i, j)]).collect()).collect();
        let mut ok = true;
        for j in 0..n {
            for _ in 0..2 {
                for k in 0..j {
                    let p: C64 = cols[k].iter().zip(&cols[j]).map(|(x, y)| x.conj() * y).sum();
                    let (done, rest) = cols.split_at_mut(j);
                    for (y, x) in rest[0].iter_mut().zip(&done[k]) {
                        *y -= p * x;
                    }
                }
            }
            let nrm = cols[j].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if nrm < 1e-6 {
                ok = false;
                break;
            }
            for x in cols[j].iter_mut() {
                *x /= nrm;
            }
        }
        if ok {
            return Matrix::from_fn(n, |i, j| cols[j][i]);
        }
    }
}

/// A similarity `S = U Σ V` and its inverse, with singular values in `[1, cond]`.
pub fn similarity(rng: &mut Rng, n: usize, cond: f64) -> (Matrix, Matrix) {
    let u = random_unitary(rng, n);
    let v = random_unitary(rng, n);
    let sig: Vec<f64> = (0..n).map(|_| rng.uniform(0.0, cond.ln().max(0.0) + 1e-300).exp()).collect();
    let d = Matrix::diag(&sig.iter().map(|&s| C64::new(s, 0.0)).collect::<Vec<_>>());
    let dinv = Matrix::diag(&sig.iter().map(|&s| C64::new(1.0 / s, 0.0)).collect::<Vec<_>>());
    let s = &(&u * &d) * &v;
    let sinv = &(&v.adjoint() * &dinv) * &u.adjoint();
    (s, sinv)
}

/// Prescribed Jordan data: for each distinct eigenvalue, the sizes of its blocks.
#[derive(Clone, Debug)]
pub struct JordanSpec {
    pub eigenvalues: Vec<(C64, Vec<usize>)>,
}

impl JordanSpec {
    pub fn dimension(&self) -> usize {
        self.eigenvalues.iter().map(|(_, b)| b.iter().sum::<usize>()).sum()
    }

    /// `(λ, algebraic multiplicity, index)` per distinct eigenvalue.
    pub fn structure(&self) -> Vec<(C64, usize, usize)> {
        self.eigenvalues
            .iter()
            .map(|(l, b)| (*l, b.iter().sum(), b.iter().copied().max().unwrap_or(0)))
            .collect()
    }

    pub fn jordan_matrix(&self) -> Matrix {
        let blocks: Vec<Matrix> = self
            .eigenvalues
            .iter()
            .flat_map(|(l, sizes)| sizes.iter().map(move |&k| Matrix::jordan_block(*l, k)))
            .collect();
        Matrix::block_diag(&blocks)
    }

    /// `S J S⁻¹` for the given similarity pair.
    pub fn realize(&self, s: &Matrix, sinv: &Matrix) -> Matrix {
        &(s * &self.jordan_matrix()) * sinv
    }
}

/// Random Jordan data: up to `max_distinct` eigenvalues in the disc of radius `radius`,
/// pairwise separated by at least `min_sep`, blocks of size at most `max_block`, total
/// dimension in `1..=max_n`.
pub fn random_jordan_spec(
    rng: &mut Rng,
    max_n: usize,
    max_block: usize,
    max_distinct: usize,
    radius: f64,
    min_sep: f64,
) -> JordanSpec {
    let n = rng.range_inclusive(1, max_n);
    let distinct = rng.range_inclusive(1, max_distinct.min(n));
    let mut values: Vec<C64> = Vec::new();
    while values.len() < distinct {
        let z = rng.in_disc(radius);
        if values.iter().all(|w| (w - z).norm() >= min_sep) {
            values.push(z);
        }
    }
    // Distribute n among the eigenvalues (each gets at least one), then cut into blocks.
    let mut mults = alloc::vec![1usize; distinct];
    for _ in distinct..n {
        let i = rng.below(distinct);
        mults[i] += 1;
    }
    let eigenvalues = values
        .into_iter()
        .zip(mults)
        .map(|(v, mut m)| {
            let mut sizes = Vec::new();
            while m > 0 {
                let k = rng.range_inclusive(1, m.min(max_block));
                sizes.push(k);
                m -= k;
            }
            (v, sizes)
        })
        .collect();
    JordanSpec { eigenvalues }
}

/// A Jordan-constructed matrix with its exact structure, a test function `f` and a
/// polynomial companion `g`.
pub struct Trial {
    pub seed: u64,
    pub spec: JordanSpec,
    pub a: Matrix,
    pub f: HoloFunction,
    pub g: ComplexPoly,
}

/// Why a draw was discarded before any library call on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    /// First nonvanishing Taylor coefficient of `f′` at a defective eigenvalue below 0.05.
    WeakDerivative,
    /// Two distinct images `f(λ)` closer than 0.05.
    CloseImages,
}

pub const MIN_COEFF: f64 = 0.05;
pub const MIN_IMAGE_SEP: f64 = 0.05;

fn random_poly(rng: &mut Rng, degree: usize) -> ComplexPoly {
    ComplexPoly::new((0..=degree).map(|_| rng.in_square(1.0)).collect())
}

fn random_function(rng: &mut Rng, spec: &JordanSpec) -> HoloFunction {
    let eigs: Vec<C64> = spec.eigenvalues.iter().map(|(v, _)| *v).collect();
    if rng.chance(0.5) {
        let degree = rng.range_inclusive(1, 4);
        let mut left = degree;
        let mut zeros: Vec<BlaschkeZero> = Vec::new();
        while left > 0 {
            let mult = rng.range_inclusive(1, left.min(2));
            let a = if rng.chance(0.5) { eigs[rng.below(eigs.len())] } else { rng.in_disc(0.9) };
            match zeros.iter_mut().find(|z| z.a == a) {
                Some(z) => z.mult += mult,
                None => zeros.push(BlaschkeZero { a, mult }),
            }
            left -= mult;
        }
        HoloFunction::Blaschke(BlaschkeProduct::new(zeros, rng.unimodular()).unwrap())
    } else if rng.chance(0.6) {
        // c + (t − λ0)^r g(t): a critical point of order r − 1 at an eigenvalue.
        let lam = eigs[rng.below(eigs.len())];
        let r = rng.range_inclusive(2, 3);
        let gd = rng.range_inclusive(0, 5 - r);
        let g = random_poly(rng, gd);
        let p = &(&ComplexPoly::linear_power(lam, r) * &g) + &ComplexPoly::constant(rng.in_square(1.0));
        HoloFunction::Polynomial(p)
    } else {
        let d = rng.range_inclusive(1, 5);
        HoloFunction::Polynomial(random_poly(rng, d))
    }
}

fn well_posed(spec: &JordanSpec, f: &HoloFunction) -> Result<(), Rejection> {
    let cfg = crate::Config::default();
    let structure = spec.structure();
    let mut images = Vec::new();
    for &(lam, _, index) in &structure {
        let t = f.taylor(lam, index.max(1) + 1, 0.0, &cfg).expect("generator keeps f defined on the spectrum");
        images.push(t[0]);
        if index >= 2 {
            // Taylor coefficients of f′ at λ are (j+1) c_{j+1}.
            let first = (1..index).map(|j| t[j] * j as f64).find(|d| d.norm() > 1e-12);
            if first.is_some_and(|d| d.norm() < MIN_COEFF) {
                return Err(Rejection::WeakDerivative);
            }
        }
    }
    for i in 0..images.len() {
        for j in 0..i {
            let d = (images[i] - images[j]).norm();
            if d > 1e-9 && d < MIN_IMAGE_SEP {
                return Err(Rejection::CloseImages);
            }
        }
    }
    Ok(())
}

/// Jordan data with `n ≤ 8`, blocks of size at most 4, eigenvalues in the disc of radius
/// 0.9 separated by 0.25, similarity condition number at most 10; `f` a Blaschke product of
/// degree ≤ 4 or a polynomial of degree ≤ 5, with zeros and critical points placed on the
/// spectrum on purpose.
pub fn trial(seed: u64) -> Result<Trial, Rejection> {
    let mut rng = Rng::seed(seed);
    let spec = random_jordan_spec(&mut rng, 8, 4, 4, 0.9, 0.25);
    let n = spec.dimension();
    let cond = rng.uniform(1.0, 10.0);
    let (s, sinv) = similarity(&mut rng, n, cond);
    let a = spec.realize(&s, &sinv);
    let f = random_function(&mut rng, &spec);
    let gd = rng.range_inclusive(0, 3);
    let g = random_poly(&mut rng, gd);
    well_posed(&spec, &f)?;
    Ok(Trial { seed, spec, a, f, g })
}

/// First `count` accepted trials from seeds `base, base + 1, …`, and the number rejected.
pub fn trials(base: u64, count: usize) -> (Vec<Trial>, usize) {
    let mut out = Vec::with_capacity(count);
    let mut rejected = 0;
    let mut seed = base;
    while out.len() < count {
        match trial(seed) {
            Ok(t) => out.push(t),
            Err(_) => rejected += 1,
        }
        seed += 1;
    }
    (out, rejected)
}

/// Assigns each computed root to the nearest expected value and compares group sizes
/// exactly and group means against the expected value. Returns the worst mean deviation,
/// or `None` when some group size differs.
pub fn match_groups(roots: &[C64], expected: &[(C64, usize)]) -> Option<f64> {
    let mut groups: Vec<Vec<C64>> = vec![Vec::new(); expected.len()];
    for &r in roots {
        let (best, _) = expected
            .iter()
            .enumerate()
            .map(|(i, (v, _))| (i, (v - r).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())?;
        groups[best].push(r);
    }
    let mut worst: f64 = 0.0;
    for (g, &(v, k)) in groups.iter().zip(expected) {
        if g.len() != k {
            return None;
        }
        let mean = g.iter().sum::<C64>() / k as f64;
        worst = worst.max((mean - v).norm());
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn similarity_pair_is_inverse() {
        let mut rng = Rng::seed(1);
        let (s, si) = similarity(&mut rng, 6, 10.0);
        assert!((&s * &si).distance(&Matrix::identity(6)) < 1e-12);
    }

    #[test]
    fn jordan_spec_dimensions() {
        let mut rng = Rng::seed(2);
        for _ in 0..50 {
            let spec = random_jordan_spec(&mut rng, 8, 4, 3, 0.8, 0.3);
            let n = spec.dimension();
            assert!((1..=8).contains(&n));
            assert_eq!(spec.jordan_matrix().n(), n);
            for (_, sizes) in &spec.eigenvalues {
                assert!(sizes.iter().all(|&k| (1..=4).contains(&k)));
            }
        }
    }
}
