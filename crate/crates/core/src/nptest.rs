//! Necessary conditions for interpolating `ζ_j ↦ W_j` by a holomorphic map from the disc
//! into the spectral unit ball (two and three points), the Schwarz-bound harness, and a
//! generator of datasets that are feasible by construction.
//!
//! The checkers can only refute: `Infeasible` means some necessary inequality failed by
//! more than `verdict_margin`; `Inconclusive` never certifies an interpolant.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::config::Config;
use crate::discgeo::{self, BlaschkeProduct, DiscAutomorphism};
use crate::error::{Error, Result};
use crate::funcalc::{self, HoloFunction};
use crate::matrix::Matrix;
use crate::spectra::{self, SpectralData};
use crate::testgen::{self, Rng};
use crate::C64;

/// Nodes `ζ_j` in the disc and target matrices `W_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationData {
    pub nodes: Vec<C64>,
    pub targets: Vec<Matrix>,
}

impl InterpolationData {
    pub fn new(nodes: Vec<C64>, targets: Vec<Matrix>) -> Self {
        Self { nodes, targets }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Matrix dimension `n`.
    pub fn dim(&self) -> usize {
        self.targets.first().map_or(0, Matrix::n)
    }

    /// Shape checks: equal counts and dimensions, nodes inside the disc and pairwise
    /// separated by more than `node_tol`.
    pub fn validate(&self, cfg: &Config) -> Result<()> {
        if self.nodes.len() != self.targets.len() {
            return Err(Error::PointCount { expected: self.nodes.len(), found: self.targets.len() });
        }
        if self.nodes.is_empty() {
            return Err(Error::EmptyInput("interpolation data without points"));
        }
        let n = self.dim();
        if n == 0 {
            return Err(Error::EmptyInput("matrix of dimension 0"));
        }
        if let Some(w) = self.targets.iter().find(|w| w.n() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: w.n() });
        }
        for (i, &z) in self.nodes.iter().enumerate() {
            if !(z.norm() < 1.0) {
                return Err(Error::OutOfDisc { value: z });
            }
            for (j, &y) in self.nodes[..i].iter().enumerate() {
                if (z - y).norm() <= cfg.node_tol {
                    return Err(Error::NodesNotDistinct { first: j, second: i });
                }
            }
        }
        Ok(())
    }

    fn expect_points(&self, count: usize, cfg: &Config) -> Result<()> {
        self.validate(cfg)?;
        if self.len() != count {
            return Err(Error::PointCount { expected: count, found: self.len() });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Infeasible,
    Inconclusive,
}

/// Outcome of a checker with the numbers behind it.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Witness,
}

impl Verdict {
    pub fn is_infeasible(&self) -> bool {
        self.status == Status::Infeasible
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    TwoPoint(TwoPointWitness),
    ThreePoint(ThreePointWitness),
}

/// `lhs = max(max_{μ∈σ(W_2)} |b_1(μ)|, max_{λ∈σ(W_1)} |b_2(λ)|)` against
/// `rhs = M(ζ_1, ζ_2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoPointWitness {
    pub b1_on_w2: f64,
    pub b2_on_w1: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

/// Per-`k` reports; the data is refuted when any single `k` refutes.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreePointWitness {
    pub per_k: Vec<KReport>,
    pub refuting_k: Option<usize>,
    pub margin: f64,
}

/// Position of `σ(B_k(W_j))` relative to the circle of radius `|ψ_k(ζ_j)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    /// Inside by more than the margin.
    Inside,
    /// Within the margin of the circle; branch 1 is not used but cannot refute either.
    Borderline,
    /// Outside by at least the margin.
    Outside,
}

/// Containment of one image spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscTest {
    pub max_modulus: f64,
    pub radius: f64,
    pub containment: Containment,
}

/// One unimodular candidate `u` of the second branch.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub u: C64,
    /// Largest distance from a preimage of `u ψ_k(ζ_G)` to `σ(W_G)`.
    pub miss_g: f64,
    /// Same for `L`.
    pub miss_l: f64,
    pub accepted: bool,
}

/// Both branches for one `k` (indices are 0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct KReport {
    pub k: usize,
    pub g: usize,
    pub l: usize,
    pub disc_g: DiscTest,
    pub disc_l: DiscTest,
    /// Two-sided max-product, present when both containments are `Inside`.
    pub lhs: Option<f64>,
    pub rhs: f64,
    pub branch1_holds: bool,
    /// Branch 1 fails beyond the margin (containment `Outside` or `lhs > rhs + margin`).
    pub branch1_refuted: bool,
    /// Moduli `|B_k(λ)/ψ_k(ζ)|` of every candidate examined, unimodular or not.
    pub candidate_moduli: Vec<f64>,
    pub candidates: Vec<Candidate>,
    pub branch2_holds: bool,
    pub refutes: bool,
}

/// Two-point test with the minimal Blaschke products `b_1`, `b_2` of the targets.
pub fn check_two_point(data: &InterpolationData, cfg: &Config) -> Result<Verdict> {
    data.expect_points(2, cfg)?;
    let sd1 = spectra::spectral_data(&data.targets[0], cfg)?;
    let sd2 = spectra::spectral_data(&data.targets[1], cfg)?;
    let b1 = discgeo::minimal_blaschke_from(&sd1, cfg)?;
    let b2 = discgeo::minimal_blaschke_from(&sd2, cfg)?;
    let max_on = |b: &BlaschkeProduct, sd: &SpectralData| -> Result<f64> {
        sd.eigs.iter().try_fold(0.0, |m: f64, e| Ok(m.max(b.eval(e.value, cfg)?.norm())))
    };
    let b1_on_w2 = max_on(&b1, &sd2)?;
    let b2_on_w1 = max_on(&b2, &sd1)?;
    let lhs = b1_on_w2.max(b2_on_w1);
    let rhs = discgeo::mobius_distance(data.nodes[0], data.nodes[1])?;
    let status =
        if lhs > rhs + cfg.verdict_margin { Status::Infeasible } else { Status::Inconclusive };
    Ok(Verdict {
        status,
        witness: Witness::TwoPoint(TwoPointWitness {
            b1_on_w2,
            b2_on_w1,
            lhs,
            rhs,
            margin: cfg.verdict_margin,
        }),
    })
}

/// `q(ν, j, k) = max { ⌊(m(j,λ) − 1)/(ord_λ B_k′ + 1)⌋ + 1 : λ ∈ σ(W_j), B_k(λ) = ν }`
/// with `B_k` the minimal Blaschke product of `W_k` (indices 0-based).
pub fn q_exponent(nu: C64, j: usize, k: usize, data: &InterpolationData, cfg: &Config) -> Result<usize> {
    data.validate(cfg)?;
    if j >= data.len() || k >= data.len() || j == k {
        return Err(Error::Precondition("q exponent needs distinct indices j != k in range".into()));
    }
    let sdj = spectra::spectral_data(&data.targets[j], cfg)?;
    let bk = discgeo::minimal_blaschke(&data.targets[k], cfg)?;
    let factors = image_factors(&bk, &sdj, cfg)?;
    let tol = max_cluster_radius(&sdj, cfg);
    factors
        .iter()
        .filter(|(v, _)| (v - nu).norm() <= tol)
        .map(|&(_, q)| q)
        .max()
        .ok_or(Error::EmptyPreimage { value: nu })
}

fn max_cluster_radius(sd: &SpectralData, cfg: &Config) -> f64 {
    sd.eigs.iter().map(|e| cfg.cluster_radius(e.alg_mult, 1.0)).fold(cfg.cluster_tol, f64::max)
}

/// `σ(B(W))` with the exponents `q`, by spectral mapping on the clustered spectrum of `W`.
fn image_factors(b: &BlaschkeProduct, sd: &SpectralData, cfg: &Config) -> Result<Vec<(C64, usize)>> {
    let f = HoloFunction::Blaschke(b.clone());
    Ok(funcalc::predicted_minpoly_with(&f, sd, cfg)?.factors)
}

/// Three-point test. For each `k`, with `G`/`L` the larger/smaller remaining index and
/// `B_k` the minimal Blaschke product of `W_k`, either
/// 1. `σ(B_k(W_G)) ⊂ D(0, |ψ_k(ζ_G)|)`, the same for `L`, and the two-sided max-product
///    of Möbius distances is at most `M(ζ_L, ζ_G)`; or
/// 2. some unimodular `u` has `B_k^{-1}{u ψ_k(ζ_G)} ⊆ σ(W_G)` and
///    `B_k^{-1}{u ψ_k(ζ_L)} ⊆ σ(W_L)`.
///
/// Candidates `u` come from `B_k(λ)/ψ_k(ζ)` over both spectra, the only values that can
/// satisfy branch 2.
pub fn check_three_point(data: &InterpolationData, cfg: &Config) -> Result<Verdict> {
    data.expect_points(3, cfg)?;
    let sds = spectral_all(data, cfg)?;
    let bs = sds
        .iter()
        .map(|sd| discgeo::minimal_blaschke_from(sd, cfg))
        .collect::<Result<Vec<_>>>()?;
    three_point_with(data, &sds, &bs, cfg)
}

/// Experimental: the three-point test run with `B(W_k, z; ·)` for each sample `z`, one
/// verdict per `z` and no aggregation. On the disc the verdicts coincide with
/// [`check_three_point`], since `B(W_k, z; ·)` differs from the minimal Blaschke product
/// only by a unimodular constant.
pub fn check_three_point_sampled(
    data: &InterpolationData,
    samples: &[C64],
    cfg: &Config,
) -> Result<Vec<(C64, Verdict)>> {
    data.expect_points(3, cfg)?;
    let sds = spectral_all(data, cfg)?;
    samples
        .iter()
        .map(|&z| {
            let bs = data
                .targets
                .iter()
                .map(|w| discgeo::extremal_blaschke(w, z, cfg))
                .collect::<Result<Vec<_>>>()?;
            Ok((z, three_point_with(data, &sds, &bs, cfg)?))
        })
        .collect()
}

fn spectral_all(data: &InterpolationData, cfg: &Config) -> Result<Vec<SpectralData>> {
    data.targets
        .iter()
        .map(|w| {
            let sd = spectra::spectral_data(w, cfg)?;
            discgeo::check_spectrum_in_disc(&sd, cfg)?;
            Ok(sd)
        })
        .collect()
}

fn three_point_with(
    data: &InterpolationData,
    sds: &[SpectralData],
    bs: &[BlaschkeProduct],
    cfg: &Config,
) -> Result<Verdict> {
    let mut per_k = Vec::with_capacity(3);
    for k in 0..3 {
        per_k.push(k_report(data, sds, &bs[k], k, cfg)?);
    }
    let refuting_k = per_k.iter().find(|r| r.refutes).map(|r| r.k);
    let status = if refuting_k.is_some() { Status::Infeasible } else { Status::Inconclusive };
    Ok(Verdict {
        status,
        witness: Witness::ThreePoint(ThreePointWitness { per_k, refuting_k, margin: cfg.verdict_margin }),
    })
}

fn k_report(
    data: &InterpolationData,
    sds: &[SpectralData],
    bk: &BlaschkeProduct,
    k: usize,
    cfg: &Config,
) -> Result<KReport> {
    let (l, g) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let psi = DiscAutomorphism::new(data.nodes[k])?;
    let pg = psi.apply(data.nodes[g]);
    let pl = psi.apply(data.nodes[l]);
    let img_g = image_factors(bk, &sds[g], cfg)?;
    let img_l = image_factors(bk, &sds[l], cfg)?;
    let disc_g = disc_test(&img_g, pg.norm(), cfg);
    let disc_l = disc_test(&img_l, pl.norm(), cfg);
    let rhs = discgeo::mobius_distance(data.nodes[l], data.nodes[g])?;

    let lhs = if disc_g.containment == Containment::Inside && disc_l.containment == Containment::Inside {
        let side = |mus: &[(C64, usize)], pm: C64, nus: &[(C64, usize)], pn: C64| {
            mus.iter()
                .map(|&(mu, _)| {
                    nus.iter()
                        .map(|&(nu, q)| discgeo::mobius_unchecked(mu / pm, nu / pn).powi(q as i32))
                        .product::<f64>()
                })
                .fold(0.0, f64::max)
        };
        Some(side(&img_l, pl, &img_g, pg).max(side(&img_g, pg, &img_l, pl)))
    } else {
        None
    };
    let branch1_holds = lhs.is_some_and(|v| v <= rhs + cfg.verdict_margin);
    let branch1_refuted = disc_g.containment == Containment::Outside
        || disc_l.containment == Containment::Outside
        || lhs.is_some_and(|v| v > rhs + cfg.verdict_margin);

    let mut candidate_moduli = Vec::new();
    let mut candidates = Vec::new();
    for (sd, p) in [(&sds[g], pg), (&sds[l], pl)] {
        for e in &sd.eigs {
            let u = bk.eval(e.value, cfg)? / p;
            candidate_moduli.push(u.norm());
            if (u.norm() - 1.0).abs() > cfg.unimodular_tol {
                continue;
            }
            let u = u / u.norm();
            if candidates.iter().any(|c: &Candidate| (c.u - u).norm() <= cfg.unimodular_tol) {
                continue;
            }
            let tol = preimage_tol(bk, cfg);
            let miss_g = preimage_miss(bk, u * pg, &sds[g], cfg)?;
            let miss_l = preimage_miss(bk, u * pl, &sds[l], cfg)?;
            candidates.push(Candidate { u, miss_g, miss_l, accepted: miss_g <= tol && miss_l <= tol });
        }
    }
    let branch2_holds = candidates.iter().any(|c| c.accepted);
    Ok(KReport {
        k,
        g,
        l,
        disc_g,
        disc_l,
        lhs,
        rhs,
        branch1_holds,
        branch1_refuted,
        candidate_moduli,
        candidates,
        branch2_holds,
        refutes: branch1_refuted && !branch2_holds,
    })
}

fn disc_test(img: &[(C64, usize)], radius: f64, cfg: &Config) -> DiscTest {
    let max_modulus = img.iter().map(|(v, _)| v.norm()).fold(0.0, f64::max);
    let containment = if max_modulus >= radius + cfg.verdict_margin {
        Containment::Outside
    } else if max_modulus < radius - cfg.verdict_margin {
        Containment::Inside
    } else {
        Containment::Borderline
    };
    DiscTest { max_modulus, radius, containment }
}

/// Preimage points of a degree-`d` product carry roughly `d`-th root error where they
/// collide, so containment uses the `d`-member cluster radius.
fn preimage_tol(b: &BlaschkeProduct, cfg: &Config) -> f64 {
    cfg.cluster_radius(b.degree().max(1), 1.0)
}

fn preimage_miss(b: &BlaschkeProduct, w: C64, sd: &SpectralData, cfg: &Config) -> Result<f64> {
    let pre = discgeo::blaschke_preimage(b, w, cfg)?;
    Ok(pre
        .iter()
        .map(|t| sd.eigs.iter().map(|e| (e.value - t).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max))
}

/// Outcome of sampling `ρ(F(ζ)) ≤ |ζ|`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchwarzReport {
    pub samples: usize,
    /// `(ζ, ρ(F(ζ)))` for every sample exceeding `|ζ| + schwarz_tol`.
    pub violations: Vec<(C64, f64)>,
    /// Largest `ρ(F(ζ)) − |ζ|` seen.
    pub worst_excess: f64,
}

impl SchwarzReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::Assertion {
                check: "schwarz bound",
                violations: self.violations.len(),
                worst: self.worst_excess,
            })
        }
    }
}

/// Checks `ρ(F(ζ)) ≤ |ζ| + schwarz_tol` on the samples for a map `F` into the closed
/// spectral unit ball with `F(0) = 0`-spectrum.
pub fn schwarz_check(
    f: &dyn Fn(C64) -> Result<Matrix>,
    samples: &[C64],
    cfg: &Config,
) -> Result<SchwarzReport> {
    let rho0 = spectra::spectral_radius(&f(C64::new(0.0, 0.0))?, cfg)?;
    if rho0 > cfg.schwarz_tol {
        return Err(Error::Precondition("F(0) must have spectral radius 0".into()));
    }
    let mut violations = Vec::new();
    let mut worst_excess = f64::NEG_INFINITY;
    for &z in samples {
        if !(z.norm() < 1.0) {
            return Err(Error::OutOfDisc { value: z });
        }
        let rho = spectra::spectral_radius(&f(z)?, cfg)?;
        let excess = rho - z.norm();
        worst_excess = worst_excess.max(excess);
        if excess > cfg.schwarz_tol {
            violations.push((z, rho));
        }
    }
    Ok(SchwarzReport { samples: samples.len(), violations, worst_excess })
}

/// `P(ζ) = Σ ζ^j C_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPolynomial {
    pub coeffs: Vec<Matrix>,
}

impl MatrixPolynomial {
    pub fn eval(&self, z: C64) -> Matrix {
        let n = self.coeffs[0].n();
        self.coeffs.iter().rev().fold(Matrix::zeros(n), |acc, c| &acc.scale(z) + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Grid size on the unit circle used to normalize generated maps.
pub const FEASIBLE_GRID: usize = 512;

/// A dataset `W_j = (cP)(ζ_j)` for a random matrix polynomial `P` of degree 1 to 3,
/// scaled so that `ρ(cP) < 1 − margin` on a 512-point circle grid (hence on the disc);
/// an interpolant exists by construction.
pub fn random_feasible_dataset(
    seed: u64,
    n: usize,
    points: usize,
    margin: f64,
    cfg: &Config,
) -> Result<(InterpolationData, MatrixPolynomial)> {
    let mut rng = Rng::seed(seed);
    let degree = rng.range_inclusive(1, 3);
    feasible_from(&mut rng, n, points, degree, margin, cfg)
}

/// As [`random_feasible_dataset`] with a fixed polynomial degree (0 gives equal targets).
pub fn random_feasible_dataset_with_degree(
    seed: u64,
    n: usize,
    points: usize,
    degree: usize,
    margin: f64,
    cfg: &Config,
) -> Result<(InterpolationData, MatrixPolynomial)> {
    feasible_from(&mut Rng::seed(seed), n, points, degree, margin, cfg)
}

fn feasible_from(
    rng: &mut Rng,
    n: usize,
    points: usize,
    degree: usize,
    margin: f64,
    cfg: &Config,
) -> Result<(InterpolationData, MatrixPolynomial)> {
    if n == 0 || points == 0 {
        return Err(Error::EmptyInput("feasible dataset needs n >= 1 and at least one node"));
    }
    if !(0.0..1.0).contains(&margin) {
        return Err(Error::Precondition("margin must lie in [0, 1)".into()));
    }
    let raw = if rng.chance(0.5) {
        generic_polynomial(rng, n, degree)
    } else {
        structured_polynomial(rng, n, degree)
    };
    let mut peak: f64 = 0.0;
    for i in 0..FEASIBLE_GRID {
        let z = C64::from_polar(1.0, core::f64::consts::TAU * i as f64 / FEASIBLE_GRID as f64);
        peak = peak.max(spectra::spectral_radius(&raw.eval(z), cfg)?);
    }
    let c = if peak > 0.0 { 0.999 * (1.0 - margin) / peak } else { 1.0 };
    let map = MatrixPolynomial { coeffs: raw.coeffs.iter().map(|m| m.scale_real(c)).collect() };
    let nodes = separated_nodes(rng, points, 0.9, 0.05);
    let targets = nodes.iter().map(|&z| map.eval(z)).collect();
    Ok((InterpolationData { nodes, targets }, map))
}

fn generic_polynomial(rng: &mut Rng, n: usize, degree: usize) -> MatrixPolynomial {
    MatrixPolynomial { coeffs: (0..=degree).map(|_| testgen::random_matrix(rng, n, 1.0)).collect() }
}

/// `S T(ζ) S⁻¹` with `T(ζ)` upper triangular and repeated diagonal polynomials, so the
/// values carry nontrivial Jordan structure.
fn structured_polynomial(rng: &mut Rng, n: usize, degree: usize) -> MatrixPolynomial {
    let distinct = rng.range_inclusive(1, n.max(1));
    let diag_polys: Vec<Vec<C64>> =
        (0..distinct).map(|_| (0..=degree).map(|_| rng.in_square(1.0)).collect()).collect();
    let owner: Vec<usize> = (0..n).map(|i| if i < distinct { i } else { rng.below(distinct) }).collect();
    let mut owner_sorted = owner.clone();
    owner_sorted.sort_unstable();
    let (s, sinv) = testgen::similarity(rng, n, 4.0);
    let coeffs = (0..=degree)
        .map(|j| {
            let t = Matrix::from_fn(n, |r, col| {
                if r == col {
                    diag_polys[owner_sorted[r]][j]
                } else if col > r {
                    rng.in_square(1.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            });
            &(&s * &t) * &sinv
        })
        .collect();
    MatrixPolynomial { coeffs }
}

fn separated_nodes(rng: &mut Rng, count: usize, radius: f64, sep: f64) -> Vec<C64> {
    let mut nodes: Vec<C64> = Vec::with_capacity(count);
    while nodes.len() < count {
        let z = rng.in_disc(radius);
        if nodes.iter().all(|y| (z - y).norm() >= sep) {
            nodes.push(z);
        }
    }
    nodes
}

/// Convenience used by tests and the CLI: `λ·I` targets for scalar data.
pub fn scalar_data(nodes: &[C64], values: &[C64], n: usize) -> InterpolationData {
    InterpolationData {
        nodes: nodes.to_vec(),
        targets: values.iter().map(|&v| Matrix::identity(n).scale(v)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use alloc::vec;

    fn cfg() -> Config {
        Config::default()
    }

    fn two(v: &Verdict) -> &TwoPointWitness {
        match &v.witness {
            Witness::TwoPoint(w) => w,
            Witness::ThreePoint(_) => panic!("expected two-point witness"),
        }
    }

    fn three(v: &Verdict) -> &ThreePointWitness {
        match &v.witness {
            Witness::ThreePoint(w) => w,
            Witness::TwoPoint(_) => panic!("expected three-point witness"),
        }
    }

    #[test]
    fn scalar_two_point_refutation() {
        let data = scalar_data(&[c(0.0, 0.0), c(0.5, 0.0)], &[c(0.0, 0.0), c(0.9, 0.0)], 1);
        let v = check_two_point(&data, &cfg()).unwrap();
        assert_eq!(v.status, Status::Infeasible);
        let w = two(&v);
        assert!((w.lhs - 0.9).abs() < 1e-12 && (w.rhs - 0.5).abs() < 1e-15);
    }

    #[test]
    fn equal_or_nilpotent_targets_are_inconclusive() {
        let w = Matrix::from_real(&[&[0.2, 0.1], &[0.0, -0.3]]);
        let data = InterpolationData::new(vec![c(0.0, 0.0), c(0.01, 0.0)], vec![w.clone(), w]);
        let v = check_two_point(&data, &cfg()).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert!(two(&v).lhs < 1e-12);
        let data = InterpolationData::new(
            vec![c(0.0, 0.0), c(0.01, 0.0)],
            vec![Matrix::zeros(2), Matrix::jordan_block(c(0.0, 0.0), 2)],
        );
        assert_eq!(check_two_point(&data, &cfg()).unwrap().status, Status::Inconclusive);
    }

    #[test]
    fn input_errors() {
        let data = InterpolationData::new(vec![c(0.0, 0.0), c(0.5, 0.0)], vec![Matrix::zeros(2), Matrix::zeros(3)]);
        assert!(matches!(check_two_point(&data, &cfg()), Err(Error::DimensionMismatch { .. })));
        let data = scalar_data(&[c(0.1, 0.0), c(0.1, 0.0)], &[c(0.0, 0.0), c(0.1, 0.0)], 2);
        assert!(matches!(check_two_point(&data, &cfg()), Err(Error::NodesNotDistinct { .. })));
        let data = scalar_data(&[c(0.1, 0.0), c(0.2, 0.0), c(0.3, 0.0)], &[c(0.0, 0.0); 3], 2);
        assert!(matches!(check_two_point(&data, &cfg()), Err(Error::PointCount { expected: 2, found: 3 })));
        let data = scalar_data(&[c(0.1, 0.0), c(0.2, 0.0)], &[c(0.0, 0.0), c(1.0, 0.0)], 2);
        assert!(matches!(check_two_point(&data, &cfg()), Err(Error::SpectrumNotInDisc { .. })));
    }

    #[test]
    fn identity_map_values_are_inconclusive() {
        let nodes = [c(0.1, 0.2), c(-0.4, 0.3), c(0.6, -0.1)];
        let data = scalar_data(&nodes, &nodes, 3);
        let v = check_three_point(&data, &cfg()).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert!(three(&v).per_k.iter().all(|r| r.branch2_holds));
    }

    #[test]
    fn hand_computed_three_point_refutation() {
        let w2 = Matrix::diag(&[c(0.01, 0.0), c(0.02, 0.0)]);
        let data = InterpolationData::new(
            vec![c(0.0, 0.0), c(0.1, 0.0), c(0.2, 0.0)],
            vec![Matrix::zeros(2), w2, Matrix::diag(&[c(0.99, 0.0), c(0.99, 0.0)])],
        );
        let v = check_three_point(&data, &cfg()).unwrap();
        assert_eq!(v.status, Status::Infeasible);
        let w = three(&v);
        let r = &w.per_k[0];
        assert!(r.refutes);
        assert_eq!((r.g, r.l), (2, 1));
        assert!((r.disc_g.max_modulus - 0.99).abs() < 1e-12);
        assert!((r.disc_g.radius - 0.2).abs() < 1e-15);
        assert_eq!(r.disc_g.containment, Containment::Outside);
        assert!(r.candidate_moduli.iter().any(|m| (m - 4.95).abs() < 1e-9));
        assert!(r.candidates.is_empty());
    }

    #[test]
    fn q_exponent_examples() {
        let data = InterpolationData::new(
            vec![c(0.0, 0.0), c(0.3, 0.0), c(-0.3, 0.1)],
            vec![
                Matrix::jordan_block(c(0.2, 0.0), 3),
                Matrix::diag(&[c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]),
                Matrix::jordan_block(c(0.0, 0.0), 3),
            ],
        );
        // B_1(t) = t φ_{0.5}(t) has no critical point at 0.2, m = 3 → 3.
        let b1 = discgeo::minimal_blaschke(&data.targets[1], &cfg()).unwrap();
        let nu = b1.eval(c(0.2, 0.0), &cfg()).unwrap();
        assert_eq!(q_exponent(nu, 0, 1, &data, &cfg()).unwrap(), 3);
        // B_2(t) = t^3 at λ = 0.2: ord 0, m = 3 → 3.
        assert_eq!(q_exponent(c(0.008, 0.0), 0, 2, &data, &cfg()).unwrap(), 3);
        // B_0 = φ_{0.2}^3 evaluated on the diagonal target: m = 1 → 1.
        let b0 = discgeo::minimal_blaschke(&data.targets[0], &cfg()).unwrap();
        let nu = b0.eval(c(0.5, 0.0), &cfg()).unwrap();
        assert_eq!(q_exponent(nu, 1, 0, &data, &cfg()).unwrap(), 1);
        assert!(matches!(q_exponent(c(0.9, 0.0), 1, 0, &data, &cfg()), Err(Error::EmptyPreimage { .. })));
    }

    #[test]
    fn q_exponent_with_critical_point() {
        // B_k(t) = t^2 at λ = 0: ord B' = 1, m = 3 → ⌊2/2⌋ + 1 = 2.
        let data = InterpolationData::new(
            vec![c(0.0, 0.0), c(0.3, 0.0)],
            vec![
                Matrix::jordan_block(c(0.0, 0.0), 3),
                Matrix::block_diag(&[Matrix::jordan_block(c(0.0, 0.0), 2), Matrix::zeros(1)]),
            ],
        );
        assert_eq!(q_exponent(c(0.0, 0.0), 0, 1, &data, &cfg()).unwrap(), 2);
    }

    #[test]
    fn schwarz_examples() {
        let g = Matrix::from_real(&[&[0.3, 2.0], &[0.0, -0.8]]);
        let zs: Vec<C64> = (0..32).map(|i| C64::from_polar(0.9 * i as f64 / 32.0, i as f64)).collect();
        let r = schwarz_check(&|z| Ok(g.scale(z)), &zs, &cfg()).unwrap();
        assert!(r.passed());
        let r = schwarz_check(&|z| Ok(Matrix::identity(3).scale(z * z)), &zs, &cfg()).unwrap();
        assert!(r.passed() && r.worst_excess <= 0.0);
        let bad = schwarz_check(&|z| Ok(Matrix::identity(2).scale(z.sqrt())), &zs, &cfg()).unwrap();
        assert!(!bad.passed());
        assert!(matches!(bad.into_result(), Err(Error::Assertion { .. })));
    }

    #[test]
    fn generated_datasets_are_feasible_and_pass() {
        for seed in 0..20 {
            let (data, map) = random_feasible_dataset(seed, 3, 3, 0.2, &cfg()).unwrap();
            for w in &data.targets {
                assert!(spectra::spectral_radius(w, &cfg()).unwrap() < 0.8);
            }
            assert!(map.eval(data.nodes[1]).distance(&data.targets[1]) == 0.0);
            assert_eq!(check_three_point(&data, &cfg()).unwrap().status, Status::Inconclusive);
            let pair = InterpolationData::new(data.nodes[..2].to_vec(), data.targets[..2].to_vec());
            assert_eq!(check_two_point(&pair, &cfg()).unwrap().status, Status::Inconclusive);
        }
        let (data, _) = random_feasible_dataset_with_degree(7, 2, 3, 0, 0.1, &cfg()).unwrap();
        assert_eq!(data.targets[0], data.targets[2]);
    }
}
