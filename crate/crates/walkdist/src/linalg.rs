//! Dense numerical kernels: LU determinant/solve, the Perron eigenpair of a
//! nonnegative symmetric matrix, and g-inverse construction by kernel shift.

use crate::error::{Error, Result};
use crate::matrix::{vec_inf_norm, DenseMatrix};
use crate::tol;

/// Perron root and vector of a connected graph's adjacency matrix.
///
/// `p` is stored normalized to unit 1-norm (its entries sum to one), which is
/// the convention under which the rescaled long walk distance keeps its
/// stated limit properties; `p_norm2` records the 2-norm of that vector.
/// `p_prime` is the rescaling `√n · p / ‖p‖₂`, so `‖p_prime‖₂² = n`.
#[derive(Debug, Clone)]
pub struct PerronData {
    rho: f64,
    p: Vec<f64>,
    p_norm2: f64,
    p_prime: Vec<f64>,
}

impl PerronData {
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn p_norm2(&self) -> f64 {
        self.p_norm2
    }

    pub fn p_prime(&self) -> &[f64] {
        &self.p_prime
    }

    pub fn order(&self) -> usize {
        self.p.len()
    }

    /// `n · ‖p‖₂²` under the stored normalization; equals 1 for balanced
    /// graphs and scales the long walk distance to its rescaled version.
    pub fn rescale_factor(&self) -> f64 {
        self.order() as f64 * self.p_norm2 * self.p_norm2
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Computes the Perron eigenpair of a symmetric nonnegative irreducible
/// matrix by power iteration on `A + σI` with `σ = max row sum`.
///
/// The shift keeps the dominant eigenvalue strictly separated even for
/// bipartite graphs, where `±rho` are both extremal, and preserves the
/// eigenvector. Iteration stops once the iterate change falls below
/// [`tol::PERRON_ITER_CHANGE`] and the eigen-residual is within
/// [`tol::PERRON_RESIDUAL_REL`]; exceeding the `100·n·ln(n+1)` iteration cap
/// raises [`Error::NoConvergence`] rather than returning a low-quality pair.
pub fn perron_eigenpair(a: &DenseMatrix) -> Result<PerronData> {
    let n = a.order();
    if n == 0 {
        return Err(Error::PreconditionNotMet("empty matrix has no Perron pair".into()));
    }
    let mut max_entry = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let v = a.get(i, j);
            if v < 0.0 {
                return Err(Error::PreconditionNotMet(format!(
                    "adjacency entry ({i}, {j}) = {v} is negative"
                )));
            }
            max_entry = max_entry.max(v);
        }
    }
    if !a.is_symmetric(1e-12 * max_entry.max(1.0)) {
        return Err(Error::PreconditionNotMet("matrix is not symmetric".into()));
    }
    let sigma = a.inf_norm();
    if sigma == 0.0 {
        return Err(Error::PreconditionNotMet("zero matrix has no positive Perron vector".into()));
    }

    let cap = (100.0 * n as f64 * ((n + 1) as f64).ln()).ceil() as usize;
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut last_change = f64::INFINITY;
    for _ in 0..cap {
        let ax = a.mul_vec(&x);
        let rho_est = dot(&x, &ax);
        let mut residual = 0.0f64;
        for i in 0..n {
            residual = residual.max((ax[i] - rho_est * x[i]).abs());
        }

        // shifted iterate; entries stay strictly positive for a positive start
        let mut y: Vec<f64> = ax.iter().zip(&x).map(|(a, x)| a + sigma * x).collect();
        let ynorm = norm2(&y);
        for v in y.iter_mut() {
            *v /= ynorm;
        }
        last_change = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
            / vec_inf_norm(&y);

        let converged = last_change <= tol::PERRON_ITER_CHANGE
            && residual <= tol::PERRON_RESIDUAL_REL * rho_est.abs().max(f64::MIN_POSITIVE) * vec_inf_norm(&x);
        if converged {
            for (i, &v) in x.iter().enumerate() {
                if v <= 0.0 {
                    return Err(Error::NonPositiveEigenvector(i));
                }
            }
            // x has unit 2-norm, so p' = √n·x and p = x / Σx
            let sqrt_n = (n as f64).sqrt();
            let p_prime: Vec<f64> = x.iter().map(|v| v * sqrt_n).collect();
            let sum: f64 = x.iter().sum();
            let p: Vec<f64> = x.iter().map(|v| v / sum).collect();
            let p_norm2 = norm2(&p);
            return Ok(PerronData { rho: rho_est, p, p_norm2, p_prime });
        }
        x = y;
    }
    Err(Error::NoConvergence { iterations: cap, last_change })
}

/// LU factorization with partial pivoting.
///
/// Singularity is a flag rather than an error: a pivot below
/// `tol::PIVOT_REL · ‖M‖∞` marks the matrix singular, the determinant
/// becomes 0 and `solve`/`inverse` refuse to run.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    order: usize,
    lu: Vec<f64>,
    pivots: Vec<usize>,
    sign: f64,
    singular: bool,
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
}

pub fn lu_factor(m: &DenseMatrix) -> LuFactorization {
    let n = m.order();
    let mut lu: Vec<f64> = (0..n).flat_map(|i| m.row(i).to_vec()).collect();
    let mut pivots = vec![0usize; n];
    let mut sign = 1.0;
    let mut singular = false;
    let pivot_floor = tol::PIVOT_REL * m.inf_norm();

    for k in 0..n {
        let mut p = k;
        let mut best = lu[k * n + k].abs();
        for i in (k + 1)..n {
            let cand = lu[i * n + k].abs();
            if cand > best {
                best = cand;
                p = i;
            }
        }
        pivots[k] = p;
        if best <= pivot_floor {
            singular = true;
            continue;
        }
        if p != k {
            for j in 0..n {
                lu.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        let pivot = lu[k * n + k];
        for i in (k + 1)..n {
            let factor = lu[i * n + k] / pivot;
            lu[i * n + k] = factor;
            if factor != 0.0 {
                for j in (k + 1)..n {
                    lu[i * n + j] -= factor * lu[k * n + j];
                }
            }
        }
    }

    LuFactorization {
        order: n,
        lu,
        pivots,
        sign,
        singular,
        row_labels: m.row_labels().to_vec(),
        col_labels: m.col_labels().to_vec(),
    }
}

impl LuFactorization {
    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// Product of pivots with the permutation sign; exactly 0 when the
    /// factorization was flagged singular. The determinant of an empty
    /// matrix is 1.
    pub fn determinant(&self) -> f64 {
        if self.singular {
            return 0.0;
        }
        let n = self.order;
        let mut det = self.sign;
        for k in 0..n {
            det *= self.lu[k * n + k];
        }
        det
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        if self.singular {
            return Err(Error::SingularMatrix);
        }
        let n = self.order;
        assert_eq!(b.len(), n, "right-hand side length mismatch");
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.pivots[k]);
        }
        // unit lower triangle
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc;
        }
        // upper triangle
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc / self.lu[i * n + i];
        }
        Ok(x)
    }

    /// Full inverse by solving against the identity columns. Row and column
    /// labels swap: the inverse of a map from `cols` to `rows` goes back
    /// from `rows` to `cols`.
    pub fn inverse(&self) -> Result<DenseMatrix> {
        if self.singular {
            return Err(Error::SingularMatrix);
        }
        let n = self.order;
        let mut inv = DenseMatrix::zeros(n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let col = self.solve(&e)?;
            e[j] = 0.0;
            for i in 0..n {
                inv.set(i, j, col[i]);
            }
        }
        Ok(inv.with_labels(self.col_labels.clone(), self.row_labels.clone()))
    }
}

pub fn determinant(m: &DenseMatrix) -> f64 {
    lu_factor(m).determinant()
}

/// Builds the g-inverse `(M + qqᵀ)⁻¹` of a PSD matrix `M` whose kernel is
/// spanned by the unit vector `q`.
///
/// For such `M` the shifted matrix is nonsingular and its inverse satisfies
/// `M·G·M = M`. A singular shift means the kernel has dimension above one,
/// i.e. the matrix did not come from a connected graph.
pub fn ginverse_kernel_shift(m: &DenseMatrix, q: &[f64]) -> Result<DenseMatrix> {
    let n = m.order();
    if q.len() != n {
        return Err(Error::PreconditionNotMet(format!(
            "kernel vector length {} does not match order {n}",
            q.len()
        )));
    }
    let qn = norm2(q);
    if (qn - 1.0).abs() > 1e-12 {
        return Err(Error::PreconditionNotMet(format!(
            "kernel vector must have unit 2-norm, got {qn}"
        )));
    }
    let kernel_residual = vec_inf_norm(&m.mul_vec(q));
    if kernel_residual > tol::KERNEL_SHIFT_INPUT_REL * m.inf_norm() {
        return Err(Error::PreconditionNotMet(format!(
            "q is not in the kernel: ‖Mq‖∞ = {kernel_residual:.3e}"
        )));
    }
    let shifted = DenseMatrix::from_fn(n, |i, j| m.get(i, j) + q[i] * q[j]);
    let lu = lu_factor(&shifted);
    if lu.is_singular() {
        return Err(Error::SingularShift);
    }
    lu.inverse().map_err(|_| Error::SingularShift)
}

/// Relative g-inverse contract residual `‖M·G·M - M‖∞ / ‖M‖∞`.
pub fn ginverse_residual(m: &DenseMatrix, candidate: &DenseMatrix) -> f64 {
    let product = m.matmul(candidate).matmul(m);
    product.sub(m).inf_norm() / m.inf_norm()
}
