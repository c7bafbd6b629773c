//! Complex polynomials, companion-matrix root finding, and the symmetrization map.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::{linalg, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Polynomial with complex coefficients in ascending degree order.
///
/// Exact trailing zeros are trimmed on construction; the zero polynomial has no
/// coefficients. Leading coefficients are never rescaled implicitly, see [`ComplexPoly::monic`].
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<C64>,
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn identity() -> Self {
        Self::new(vec![ZERO, ONE])
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// `∏ (t - r)` over the given roots.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut p = Self::constant(ONE);
        for r in roots {
            p = &p * &Self::new(vec![-r, ONE]);
        }
        p
    }

    /// `(t - a)^k`.
    pub fn linear_power(a: C64, k: usize) -> Self {
        let mut p = Self::constant(ONE);
        let f = Self::new(vec![-a, ONE]);
        for _ in 0..k {
            p = &p * &f;
        }
        p
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lead = self.leading();
        Ok(Self::new(self.coeffs.iter().map(|c| c / lead).collect()))
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, t: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * t + c)
    }

    /// `p(A)` by Horner's rule on matrices.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.n();
        let mut acc = Matrix::zeros(n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * a;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    /// The `order`-th derivative, computed coefficient-wise.
    pub fn derivative(&self, order: usize) -> Self {
        if order == 0 {
            return self.clone();
        }
        if order >= self.coeffs.len() {
            return Self::zero();
        }
        let coeffs = (order..self.coeffs.len())
            .map(|i| {
                let falling: f64 = ((i + 1 - order)..=i).map(|k| k as f64).product();
                self.coeffs[i] * falling
            })
            .collect();
        Self::new(coeffs)
    }

    /// Coefficients of `p(λ + h)` in powers of `h`, i.e. the Taylor coefficients at `λ`.
    pub fn taylor_at(&self, lambda: C64) -> Vec<C64> {
        let mut c = self.coeffs.clone();
        let n = c.len();
        // Repeated synthetic division by (t - λ).
        for k in 0..n {
            for i in (k..n - 1).rev() {
                let next = c[i + 1];
                c[i] += lambda * next;
            }
        }
        c
    }

    /// All complex roots with multiplicity, as eigenvalues of the companion matrix of the
    /// monic normalization. Constants have no roots.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let monic = self.monic()?;
        let d = monic.degree().unwrap_or(0);
        if d == 0 {
            return Ok(Vec::new());
        }
        // X_j = (-1)^j a_{n-j} gives back exactly this monic polynomial.
        let x: Vec<C64> = (1..=d)
            .map(|j| {
                let a = monic.coeffs[d - j];
                if j % 2 == 0 { a } else { -a }
            })
            .collect();
        let comp = companion(&SymPoint { coords: x });
        Ok(linalg::schur(&comp)?.eigenvalues())
    }

    /// Residual bound accepted for a computed root `r`.
    pub fn root_residual_bound(&self, r: C64, cfg: &Config) -> f64 {
        let d = self.degree().unwrap_or(0) as i32;
        cfg.root_tol * (1.0 + r.norm()).powi(d) * self.max_abs_coeff()
    }
}

impl<'a> Add<&'a ComplexPoly> for &'a ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, rhs: &'a ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(ZERO)
                        + rhs.coeffs.get(i).copied().unwrap_or(ZERO)
                })
                .collect(),
        )
    }
}

impl<'a> Sub<&'a ComplexPoly> for &'a ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, rhs: &'a ComplexPoly) -> ComplexPoly {
        self + &rhs.scale(-ONE)
    }
}

impl<'a> Mul<&'a ComplexPoly> for &'a ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, rhs: &'a ComplexPoly) -> ComplexPoly {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }
}

/// A point `(X_1, …, X_n)` of the symmetrized product, or a value of the
/// characteristic-coefficient map.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoint {
    pub coords: Vec<C64>,
}

impl SymPoint {
    pub fn new(coords: Vec<C64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput("symmetric point has no coordinates"));
        }
        Ok(Self { coords })
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// Largest componentwise modulus of the difference.
    pub fn max_deviation(&self, other: &SymPoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Elementary symmetric polynomials `(S_1(z), …, S_n(z))` by incremental expansion of
/// `∏ (t - z_j)`.
pub fn pi_n(z: &[C64]) -> SymPoint {
    // e[j] holds S_j of the prefix processed so far.
    let n = z.len();
    let mut e = vec![ZERO; n + 1];
    e[0] = ONE;
    for (k, zk) in z.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            let prev = e[j - 1];
            e[j] += prev * zk;
        }
    }
    SymPoint { coords: e[1..].to_vec() }
}

/// The monic polynomial `t^n + Σ (-1)^j X_j t^(n-j)`.
pub fn from_sym_point(x: &SymPoint) -> ComplexPoly {
    let n = x.n();
    let mut coeffs = vec![ZERO; n + 1];
    coeffs[n] = ONE;
    for (idx, xj) in x.coords.iter().enumerate() {
        let j = idx + 1;
        coeffs[n - j] = if j % 2 == 0 { *xj } else { -xj };
    }
    ComplexPoly::new(coeffs)
}

/// Companion matrix of `P_X`: ones on the subdiagonal, last column `(-a_n, …, -a_1)`
/// top to bottom, where `a_j = (-1)^j X_j`.
pub fn companion(x: &SymPoint) -> Matrix {
    let n = x.n();
    let mut m = Matrix::zeros(n);
    for i in 1..n {
        m[(i, i - 1)] = ONE;
    }
    for (idx, xj) in x.coords.iter().enumerate() {
        let j = idx + 1;
        let a = if j % 2 == 0 { *xj } else { -xj };
        m[(n - j, n - 1)] = -a;
    }
    m
}

/// Minimal total distance matching of two equally sized multisets (brute force for small
/// sizes, greedy otherwise); returns the largest matched distance.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    if a.len() <= 8 {
        let mut idx: Vec<usize> = (0..b.len()).collect();
        let mut best = f64::INFINITY;
        permute_min(a, b, &mut idx, 0, 0.0, &mut best);
        best
    } else {
        let mut used = vec![false; b.len()];
        let mut worst: f64 = 0.0;
        for x in a {
            let (j, d) = b
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .map(|(j, y)| (j, (x - y).norm()))
                .fold((usize::MAX, f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
            used[j] = true;
            worst = worst.max(d);
        }
        worst
    }
}

fn permute_min(a: &[C64], b: &[C64], idx: &mut Vec<usize>, k: usize, cur: f64, best: &mut f64) {
    if cur >= *best {
        return;
    }
    if k == a.len() {
        *best = cur;
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        let d = (a[k] - b[idx[k]]).norm();
        permute_min(a, b, idx, k + 1, cur.max(d), best);
        idx.swap(k, i);
    }
}
