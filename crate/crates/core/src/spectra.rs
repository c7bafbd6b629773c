//! Eigenstructure of dense complex matrices: clustered spectrum, index `m(λ)`, spectral
//! projections `E(λ)`, minimal polynomial, characteristic coefficients.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::polynomials::{pi_n, ComplexPoly, SymPoint};
use crate::{linalg, series, C64};

pub use crate::polynomials::companion;

/// One distinct eigenvalue (cluster representative) with its algebraic multiplicity and
/// index (multiplicity as a zero of the minimal polynomial).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenCluster {
    pub value: C64,
    pub alg_mult: usize,
    pub index: usize,
}

/// Clustered spectrum of a matrix with its spectral projections.
///
/// `projections[i]` is `E(eigs[i].value)`. Immutable once built.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub eigs: Vec<EigenCluster>,
    pub projections: Vec<Matrix>,
    pub source_norm: f64,
}

impl SpectralData {
    pub fn n(&self) -> usize {
        self.eigs.iter().map(|e| e.alg_mult).sum()
    }

    /// Tolerance scale `max(1, ‖A‖_F)`.
    pub fn scale(&self) -> f64 {
        self.source_norm.max(1.0)
    }

    pub fn values(&self) -> Vec<C64> {
        self.eigs.iter().map(|e| e.value).collect()
    }

    /// Spectrum as a multiset (each representative repeated by algebraic multiplicity).
    pub fn multiset(&self) -> Vec<C64> {
        self.eigs.iter().flat_map(|e| core::iter::repeat_n(e.value, e.alg_mult)).collect()
    }

    /// `∏ (t - λ)^{m(λ)}`.
    pub fn minimal_polynomial(&self) -> ComplexPoly {
        self.eigs.iter().fold(ComplexPoly::constant(C64::new(1.0, 0.0)), |p, e| {
            &p * &ComplexPoly::linear_power(e.value, e.index)
        })
    }
}

/// All `n` eigenvalues with multiplicity (diagonal of the complex Schur form).
pub fn eigenvalues(a: &Matrix, cfg: &Config) -> Result<Vec<C64>> {
    check_size(a, cfg)?;
    Ok(linalg::schur(a)?.eigenvalues())
}

fn check_size(a: &Matrix, cfg: &Config) -> Result<()> {
    if a.n() > cfg.max_n {
        return Err(Error::DimensionTooLarge { n: a.n(), max: cfg.max_n });
    }
    if a.n() == 0 {
        return Err(Error::EmptyInput("matrix of dimension 0"));
    }
    Ok(())
}

/// Clustered value with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cluster {
    pub value: C64,
    pub mult: usize,
}

/// Groups computed eigenvalues that represent one exact eigenvalue.
///
/// Single-linkage merge tree over all points, examined from the root down. A node of `k`
/// points with mean `μ` is accepted when `∏ (t − z_i)` is within `cluster_tol` of
/// `(t − μ)^k`: every elementary symmetric function `e_j` of the shifted points `z_i − μ`
/// satisfies `|e_j| ≤ cluster_tol · max(1, scale)^j`. A `k`-fold eigenvalue split by
/// rounding into a ring of radius `δ^{1/k}` passes with `e_k ≈ δ`, while distinct
/// eigenvalues `s` apart fail through `e_2 ≈ s²/4`. Representatives are
/// multiplicity-weighted means.
pub fn cluster(eigs: &[C64], scale: f64, cfg: &Config) -> Vec<Cluster> {
    let weighted: Vec<(C64, usize)> = eigs.iter().map(|&z| (z, 1)).collect();
    cluster_weighted(&weighted, cfg.cluster_tol, scale)
}

/// As [`cluster`] for points carrying multiplicities.
pub fn cluster_weighted(points: &[(C64, usize)], tol: f64, scale: f64) -> Vec<Cluster> {
    let scale = scale.max(1.0);
    let m = points.len();
    if m == 0 {
        return Vec::new();
    }
    // Merge tree: nodes 0..m are leaves; internal nodes store their two children.
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            pairs.push(((points[i].0 - points[j].0).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(core::cmp::Ordering::Equal));
    let mut parent: Vec<usize> = (0..m).collect();
    let mut node_of_root: Vec<usize> = (0..m).collect();
    let mut children: Vec<Option<(usize, usize)>> = vec![None; m];
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (_, i, j) in pairs {
        let ri = find(&mut parent, i);
        let rj = find(&mut parent, j);
        if ri == rj {
            continue;
        }
        let node = children.len();
        children.push(Some((node_of_root[ri], node_of_root[rj])));
        parent[rj] = ri;
        node_of_root[ri] = node;
    }
    let root = node_of_root[find(&mut parent, 0)];

    let mut out = Vec::new();
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        let mut members = Vec::new();
        collect_leaves(&children, node, &mut members);
        let mult: usize = members.iter().map(|&i| points[i].1).sum();
        let mean = members.iter().map(|&i| points[i].0 * points[i].1 as f64).sum::<C64>()
            / mult as f64;
        let shifted: Vec<C64> = members
            .iter()
            .flat_map(|&i| core::iter::repeat_n(points[i].0 - mean, points[i].1))
            .collect();
        let ok = pi_n(&shifted)
            .coords
            .iter()
            .zip(1..)
            .skip(1)
            .all(|(e, j)| e.norm() <= tol * scale.powi(j));
        match children[node] {
            Some((a, b)) if !ok => {
                stack.push(a);
                stack.push(b);
            }
            _ => out.push(Cluster { value: mean, mult }),
        }
    }
    out.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    out
}

fn collect_leaves(children: &[Option<(usize, usize)>], node: usize, out: &mut Vec<usize>) {
    match children[node] {
        None => out.push(node),
        Some((a, b)) => {
            collect_leaves(children, a, out);
            collect_leaves(children, b, out);
        }
    }
}

/// Ranks of `B, B², …, B^jmax` for `B = M (A - λI)`.
///
/// Singular values count when they exceed `rank_tol · max(1, ‖A‖_F) · ‖B^{j-1}‖_F`
/// (`B^0 = M`), the rounding scale of the product forming `B^j`. Measuring against `‖B^j‖`
/// itself would give a power that is zero up to rounding full rank.
fn rank_sequence(a: &Matrix, lambda: C64, m: &Matrix, jmax: usize, cfg: &Config) -> Vec<usize> {
    let scale = a.frobenius_norm().max(1.0);
    let step = a.shifted(lambda);
    let mut prev = m.clone();
    let mut ranks = Vec::with_capacity(jmax);
    for _ in 1..=jmax {
        let power = &prev * &step;
        ranks.push(linalg::rank_above(&power, cfg.rank_tol * scale * prev.frobenius_norm()));
        prev = power;
    }
    ranks
}

/// Smallest `j` with `rank((A-λI)^j) = rank((A-λI)^{j+1})`.
pub fn index_of(a: &Matrix, lambda: C64, cfg: &Config) -> Result<usize> {
    check_size(a, cfg)?;
    let n = a.n();
    let ranks = rank_sequence(a, lambda, &Matrix::identity(n), n + 1, cfg);
    if ranks[0] == n {
        return Err(Error::NotAnEigenvalue { value: lambda });
    }
    Ok(first_stable(&ranks).unwrap_or(n))
}

fn first_stable(ranks: &[usize]) -> Option<usize> {
    ranks.windows(2).position(|w| w[0] == w[1]).map(|p| p + 1)
}

/// Index of a clustered eigenvalue: nilpotency order of `(A - λI) E(λ)`, clamped to
/// `[1, alg_mult]`. Restricting to the generalized eigenspace keeps the other eigenvalues
/// out of the rank decisions.
fn cluster_index(a: &Matrix, lambda: C64, proj: &Matrix, alg_mult: usize, cfg: &Config) -> usize {
    let ranks = rank_sequence(a, lambda, proj, alg_mult, cfg);
    ranks.iter().position(|&r| r == 0).map_or(alg_mult, |p| p + 1).clamp(1, alg_mult)
}

/// Clusters the spectrum, builds `E(λ) = h_λ(A)` where `h_λ` is the Hermite interpolant
/// equal to 1 to order `a(λ)` at `λ` and to 0 to order `a(μ)` at every other eigenvalue
/// `μ` (`a` the algebraic multiplicity, which bounds the index), then reads each index off
/// the nilpotent part on the range of `E(λ)`.
pub fn spectral_data(a: &Matrix, cfg: &Config) -> Result<SpectralData> {
    let eigs = eigenvalues(a, cfg)?;
    let source_norm = a.frobenius_norm();
    let clusters = cluster(&eigs, source_norm, cfg);
    let orders: Vec<(C64, usize)> = clusters.iter().map(|c| (c.value, c.mult)).collect();
    let projections = projections(a, &orders);
    let eigs: Vec<EigenCluster> = clusters
        .iter()
        .zip(&projections)
        .map(|(c, proj)| EigenCluster {
            value: c.value,
            alg_mult: c.mult,
            index: cluster_index(a, c.value, proj, c.mult, cfg),
        })
        .collect();
    Ok(SpectralData { eigs, projections, source_norm })
}

/// Projections for eigenvalues `λ_i` annihilated by `(A - λ_i I)^{order_i}`.
fn projections(a: &Matrix, orders: &[(C64, usize)]) -> Vec<Matrix> {
    let n = a.n();
    if orders.len() == 1 {
        return vec![Matrix::identity(n)];
    }
    let annihilators: Vec<Matrix> = orders.iter().map(|&(v, m)| a.shifted(v).pow(m)).collect();
    orders
        .iter()
        .enumerate()
        .map(|(i, &(value, len))| {
            // Taylor series at λ of w(t) = ∏_{μ≠λ} (t-μ)^{m(μ)}.
            let mut w = vec![C64::new(0.0, 0.0); len];
            w[0] = C64::new(1.0, 0.0);
            for (k, &(other, m)) in orders.iter().enumerate() {
                if k != i {
                    let factor = [value - other, C64::new(1.0, 0.0)];
                    w = series::mul(&w, &series::pow(&factor, m, len), len);
                }
            }
            let q = series::div(&[C64::new(1.0, 0.0)], &w, len);
            let nil = a.shifted(value);
            let mut qa = Matrix::zeros(n);
            for c in q.iter().rev() {
                qa = &qa * &nil;
                for d in 0..n {
                    qa[(d, d)] += c;
                }
            }
            let mut proj = qa;
            for (k, ann) in annihilators.iter().enumerate() {
                if k != i {
                    proj = &proj * ann;
                }
            }
            proj
        })
        .collect()
}

/// `∏ (t - λ)^{m(λ)}` over the clustered spectrum.
pub fn minimal_polynomial(a: &Matrix, cfg: &Config) -> Result<ComplexPoly> {
    Ok(spectral_data(a, cfg)?.minimal_polynomial())
}

/// A polynomial in `t − center`.
#[derive(Clone, Debug, PartialEq)]
pub struct CenteredPoly {
    pub center: C64,
    pub poly: ComplexPoly,
}

impl CenteredPoly {
    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    /// Roots found in the centred variable. A tight cluster far from the origin keeps its
    /// digits here, while the expanded coefficients can pin it down only to about
    /// `ε / |p′|`.
    pub fn roots(&self) -> Result<Vec<C64>> {
        Ok(self.poly.roots()?.into_iter().map(|r| r + self.center).collect())
    }

    /// The same polynomial in `t`, by Horner in `t − center`.
    pub fn expand(&self) -> ComplexPoly {
        let unshift = ComplexPoly::new(vec![-self.center, C64::new(1.0, 0.0)]);
        let mut p = ComplexPoly::zero();
        for &c in self.poly.coeffs().iter().rev() {
            p = &(&p * &unshift) + &ComplexPoly::constant(c);
        }
        p
    }
}

/// Brute-force minimal polynomial: the first `k` for which `A^k` lies (numerically) in the
/// span of `I, A, …, A^{k-1}`, with the least-squares coefficients.
///
/// Independent of the eigen machinery; used to cross-check [`minimal_polynomial`] and the
/// predicted minimal polynomial of `f(A)`.
pub fn minimal_polynomial_oracle(a: &Matrix, cfg: &Config) -> Result<ComplexPoly> {
    Ok(minimal_polynomial_oracle_centered(a, cfg)?.expand())
}

/// [`minimal_polynomial_oracle`] before expansion, as a polynomial in `t − tr A / n`.
///
/// Works with `B = A − (tr A / n) I`, whose powers span the same space as those of `A`;
/// centring keeps the monomial basis from drowning a nilpotent part under `cI`. Dependence
/// means a residual at most `dep_tol · ‖B‖_F · ‖B^{k-1}‖_F + dep_tol / 20`: the first term
/// is the rounding scale of the product that formed `B^k`, the second lets a matrix that is
/// zero up to rounding count as zero.
pub fn minimal_polynomial_oracle_centered(a: &Matrix, cfg: &Config) -> Result<CenteredPoly> {
    let n = a.n();
    if n > cfg.oracle_max_n {
        return Err(Error::DimensionTooLarge { n, max: cfg.oracle_max_n });
    }
    let center = a.trace() / n as f64;
    let b = a.shifted(center);
    let vec_of = |m: &Matrix| m.as_slice().to_vec();
    let mut columns: Vec<Vec<C64>> = vec![vec_of(&Matrix::identity(n))];
    let b_norm = b.frobenius_norm();
    // Sits between computed zeros of f(A) (≲ 2e-12) and genuine Krylov residuals of
    // nilpotent combinations (≳ 2e-11).
    let floor = cfg.dep_tol / 20.0;
    let mut power = Matrix::identity(n);
    for k in 1..=n {
        let prev_norm = power.frobenius_norm();
        power = &power * &b;
        let target = vec_of(&power);
        let (x, residual) = linalg::least_squares(&columns, &target);
        if residual <= cfg.dep_tol * b_norm * prev_norm + floor || k == n {
            let mut coeffs: Vec<C64> = x.iter().map(|c| -c).collect();
            coeffs.push(C64::new(1.0, 0.0));
            return Ok(CenteredPoly { center, poly: ComplexPoly::new(coeffs) });
        }
        columns.push(target);
    }
    unreachable!("loop returns at k = n")
}

/// Characteristic coefficients `χ(A) = π_n(σ(A))`, so `χ_1 = tr A`, `χ_n = det A`.
pub fn chi(a: &Matrix, cfg: &Config) -> Result<SymPoint> {
    Ok(pi_n(&eigenvalues(a, cfg)?))
}

/// `ρ(A) = max |λ|` over the clustered spectrum, so a defective eigenvalue contributes
/// its cluster mean rather than the outermost of its split copies.
pub fn spectral_radius(a: &Matrix, cfg: &Config) -> Result<f64> {
    let eigs = eigenvalues(a, cfg)?;
    Ok(cluster(&eigs, a.frobenius_norm(), cfg).iter().map(|c| c.value.norm()).fold(0.0, f64::max))
}
