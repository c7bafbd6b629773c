//! Dense kernels: LU solves, Jacobi singular values, and the complex Schur form.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Sweeps without deflation before the Schur iteration gives up.
const MAX_SWEEPS_PER_EIGENVALUE: usize = 100;

/// LU factorization with partial pivoting, stored compactly.
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
}

impl Lu {
    /// Fails with `Precondition` when a pivot is exactly zero.
    pub fn new(a: &Matrix) -> Result<Self> {
        let n = a.n();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == 0.0 {
                return Err(Error::Precondition("singular matrix in LU".into()));
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
            }
            let piv = lu[(k, k)];
            for i in k + 1..n {
                let l = lu[(i, k)] / piv;
                lu[(i, k)] = l;
                if l != ZERO {
                    for j in k + 1..n {
                        let u = lu[(k, j)];
                        lu[(i, j)] -= l * u;
                    }
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.lu.n();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                x[i] = x[i] - u * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    /// Solves `A X = B`.
    pub fn solve(&self, b: &Matrix) -> Matrix {
        let n = b.n();
        let mut out = Matrix::zeros(n);
        for j in 0..n {
            let col: Vec<C64> = (0..n).map(|i| b[(i, j)]).collect();
            let x = self.solve_vec(&col);
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        out
    }
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    Ok(Lu::new(a)?.solve(&Matrix::identity(a.n())))
}

/// Singular values in descending order, by one-sided (Hestenes) Jacobi.
///
/// One-sided Jacobi keeps small singular values accurate to roughly machine precision
/// relative to `σ_max`, which is what the rank decisions downstream rely on.
pub fn singular_values(a: &Matrix) -> Vec<f64> {
    let n = a.n();
    // Column-major copy: cols[j] is column j.
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| (0..n).map(|i| a[(i, j)]).collect()).collect();
    let tol = f64::EPSILON * n as f64;
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|x| x.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|x| x.norm_sqr()).sum();
                let gamma: C64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                let (left, right) = cols.split_at_mut(q);
                let cp = &mut left[p];
                let cq = &mut right[0];
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let yq = *y * phase.conj();
                    let nx = *x * cs - yq * sn;
                    let ny = *x * sn + yq * cs;
                    *x = nx;
                    *y = ny;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> =
        cols.iter().map(|c| c.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()).collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap_or(core::cmp::Ordering::Equal));
    sv
}

/// Number of singular values above `rel_tol * σ_max`.
pub fn numerical_rank(a: &Matrix, rel_tol: f64) -> usize {
    let sv = singular_values(a);
    let smax = sv.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * smax).count()
}

/// Number of singular values above the absolute threshold `tol`.
pub fn rank_above(a: &Matrix, tol: f64) -> usize {
    singular_values(a).iter().filter(|&&s| s > tol).count()
}

/// Complex Schur form `A = Q T Q*` with `Q` unitary and `T` upper triangular.
#[derive(Clone, Debug)]
pub struct Schur {
    pub q: Matrix,
    pub t: Matrix,
}

impl Schur {
    pub fn eigenvalues(&self) -> Vec<C64> {
        self.t.diagonal()
    }
}

/// Householder reduction to upper Hessenberg form, returning `(Q, H)` with `A = Q H Q*`.
pub fn hessenberg(a: &Matrix) -> (Matrix, Matrix) {
    let n = a.n();
    let mut h = a.clone();
    let mut q = Matrix::identity(n);
    if n < 3 {
        return (q, h);
    }
    for k in 0..n - 2 {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H <- (I - 2vv*) H on rows k+1..n
        for j in 0..n {
            let s: C64 = v.iter().enumerate().map(|(r, vr)| vr.conj() * h[(k + 1 + r, j)]).sum();
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= *vr * s * 2.0;
            }
        }
        // H <- H (I - 2vv*) on cols k+1..n; same for Q.
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let s: C64 = v.iter().enumerate().map(|(r, vr)| m[(i, k + 1 + r)] * vr).sum();
                for (r, vr) in v.iter().enumerate() {
                    m[(i, k + 1 + r)] -= s * vr.conj() * 2.0;
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    (q, h)
}

/// Givens rotation `[c s; -s̄ c]` mapping `(x, y)` to `(r, 0)`.
fn givens(x: C64, y: C64) -> (f64, C64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, ZERO);
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let norm = ax.hypot(ay);
    (ax / norm, (x / ax) * y.conj() / norm)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let l1 = mid + disc;
    let l2 = mid - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Complex Schur decomposition by Hessenberg reduction and single-shift QR with
/// Wilkinson shifts and occasional exceptional shifts.
pub fn schur(a: &Matrix) -> Result<Schur> {
    let n = a.n();
    if !a.is_finite() {
        return Err(Error::Precondition("matrix has non-finite entries".into()));
    }
    let (mut z, mut h) = hessenberg(a);
    if n == 1 {
        return Ok(Schur { q: z, t: h });
    }
    let anorm = h.frobenius_norm();
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        // Locate the start of the active unreduced block.
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == 0.0 {
                s = anorm;
            }
            if h[(l, l - 1)].norm() <= eps * s {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::NoConvergence { iterations: total });
        }
        let shift = if iter % 11 == 0 {
            // exceptional shift
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        let mut x = h[(l, l)] - shift;
        let mut y = h[(l + 1, l)];
        for k in l..hi {
            if k > l {
                x = h[(k, k - 1)];
                y = h[(k + 1, k - 1)];
            }
            let (cs, sn) = givens(x, y);
            let col0 = if k > l { k - 1 } else { l };
            for j in col0..n {
                let h1 = h[(k, j)];
                let h2 = h[(k + 1, j)];
                h[(k, j)] = h1 * cs + sn * h2;
                h[(k + 1, j)] = -sn.conj() * h1 + h2 * cs;
            }
            let row_end = (k + 2).min(hi);
            for i in 0..=row_end {
                let h1 = h[(i, k)];
                let h2 = h[(i, k + 1)];
                h[(i, k)] = h1 * cs + h2 * sn.conj();
                h[(i, k + 1)] = -h1 * sn + h2 * cs;
            }
            for i in 0..n {
                let z1 = z[(i, k)];
                let z2 = z[(i, k + 1)];
                z[(i, k)] = z1 * cs + z2 * sn.conj();
                z[(i, k + 1)] = -z1 * sn + z2 * cs;
            }
            if k > l {
                h[(k + 1, k - 1)] = ZERO;
            }
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok(Schur { q: z, t: h })
}

/// Solves `min ‖B x - y‖` through a Householder QR of the tall matrix `B`
/// (`rows × cols`, column vectors given). Returns `(x, residual_norm)`.
pub fn least_squares(columns: &[Vec<C64>], y: &[C64]) -> (Vec<C64>, f64) {
    let cols = columns.len();
    let rows = y.len();
    let mut a: Vec<Vec<C64>> = columns.to_vec();
    let mut b = y.to_vec();
    let mut diag = vec![ZERO; cols];
    for k in 0..cols {
        let xnorm = a[k][k..].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            diag[k] = ZERO;
            continue;
        }
        let x0 = a[k][k];
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        let mut v: Vec<C64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        for col in a.iter_mut().skip(k) {
            let s: C64 = v.iter().zip(&col[k..]).map(|(vi, ci)| vi.conj() * ci).sum();
            for (vi, ci) in v.iter().zip(col[k..].iter_mut()) {
                *ci -= *vi * s * 2.0;
            }
        }
        let s: C64 = v.iter().zip(&b[k..]).map(|(vi, bi)| vi.conj() * bi).sum();
        for (vi, bi) in v.iter().zip(b[k..].iter_mut()) {
            *bi -= *vi * s * 2.0;
        }
        diag[k] = a[k][k];
    }
    let mut x = vec![ZERO; cols];
    for i in (0..cols).rev() {
        let mut s = b[i];
        for j in i + 1..cols {
            s -= a[j][i] * x[j];
        }
        x[i] = if diag[i] == ZERO { ZERO } else { s / diag[i] };
    }
    let residual = b[cols.min(rows)..].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    (x, residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::testgen::{random_matrix, random_unitary, Rng};

    #[test]
    fn schur_reconstructs_random_matrices() {
        let mut rng = Rng::seed(11);
        for n in 1..=9 {
            let a = random_matrix(&mut rng, n, 1.0);
            let s = schur(&a).unwrap();
            let rec = &(&s.q * &s.t) * &s.q.adjoint();
            assert!(rec.distance(&a) <= 1e-12 * (1.0 + a.frobenius_norm()), "n = {n}");
            let qq = &s.q.adjoint() * &s.q;
            assert!(qq.distance(&Matrix::identity(n)) < 1e-12);
            for i in 0..n {
                for j in 0..i {
                    assert_eq!(s.t[(i, j)], ZERO);
                }
            }
        }
    }

    #[test]
    fn schur_of_triangular_keeps_diagonal() {
        let a = Matrix::from_real(&[&[1.0, 2.0, 3.0], &[0.0, 4.0, 5.0], &[0.0, 0.0, 6.0]]);
        let mut ev = schur(&a).unwrap().eigenvalues();
        ev.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        for (e, want) in ev.iter().zip([1.0, 4.0, 6.0]) {
            assert!((e - c(want, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn singular_values_of_unitary_times_diag() {
        let mut rng = Rng::seed(3);
        let u = random_unitary(&mut rng, 5);
        let v = random_unitary(&mut rng, 5);
        let d = Matrix::diag(&[c(5.0, 0.0), c(3.0, 0.0), c(1.0, 0.0), c(1e-9, 0.0), c(0.0, 0.0)]);
        let a = &(&u * &d) * &v;
        let sv = singular_values(&a);
        for (s, want) in sv.iter().zip([5.0, 3.0, 1.0, 1e-9, 0.0]) {
            assert!((s - want).abs() < 1e-13, "{s} vs {want}");
        }
        assert_eq!(numerical_rank(&a, 1e-10), 4);
        assert_eq!(numerical_rank(&a, 1e-8), 3);
    }

    #[test]
    fn lu_inverse() {
        let mut rng = Rng::seed(5);
        let a = random_matrix(&mut rng, 6, 1.0).shifted(c(3.0, 0.0));
        let inv = inverse(&a).unwrap();
        assert!((&a * &inv).distance(&Matrix::identity(6)) < 1e-12);
        assert!(inverse(&Matrix::zeros(2)).is_err());
    }

    #[test]
    fn least_squares_exact_and_residual() {
        let cols = vec![vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]];
        let (x, r) = least_squares(&cols, &[c(2.0, 1.0), c(-1.0, 0.0), c(0.0, 3.0)]);
        assert!((x[0] - c(2.0, 1.0)).norm() < 1e-14);
        assert!((x[1] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((r - 3.0).abs() < 1e-14);
    }
}
