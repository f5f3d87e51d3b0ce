//! The distance formulas: the walk-distance family, the long walk distance
//! through its determinant, g-inverse and deleted-submatrix forms, the
//! Perron-rescaled graph transform with its resistance route, and the
//! rescaled long walk distance.
//!
//! The long walk routes are algebraically equal; computing several of them
//! and comparing is the library's main correctness instrument (see
//! [`crate::verify`]).

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::WeightedMultigraph;
use crate::linalg::{ginverse_kernel_shift, ginverse_residual, lu_factor, PerronData};
use crate::matrix::DenseMatrix;
use crate::tol;

/// Which formula produced a [`DistanceMatrix`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Walk { t: f64 },
    /// Scaled finite-t approximation of the long walk distance.
    LongWalkLimit { t: f64 },
    LongWalkDet,
    LongWalkGinv,
    LongWalkSub { u: usize, v: usize },
    /// Long walk distance computed as a resistance distance on the
    /// Perron-rescaled graph.
    LongWalkGPrime,
    ResistanceDet,
    ResistanceGinv,
    RescaledLongWalk,
    ShortestPath,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Walk { .. } => "walk",
            Method::LongWalkLimit { .. } => "longwalk-limit",
            Method::LongWalkDet => "longwalk-det",
            Method::LongWalkGinv => "longwalk-ginv",
            Method::LongWalkSub { .. } => "longwalk-sub",
            Method::LongWalkGPrime => "longwalk-gprime",
            Method::ResistanceDet => "resistance-det",
            Method::ResistanceGinv => "resistance-ginv",
            Method::RescaledLongWalk => "rescaled-longwalk",
            Method::ShortestPath => "shortest-path",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Walk { t } => write!(f, "walk(t={t})"),
            Method::LongWalkLimit { t } => write!(f, "longwalk-limit(t={t})"),
            Method::LongWalkSub { u, v } => write!(f, "longwalk-sub(u={u},v={v})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Symmetric, zero-diagonal matrix of pairwise distances tagged with the
/// formula that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    order: usize,
    values: Vec<f64>,
    method: Method,
}

impl DistanceMatrix {
    /// Assembles a distance matrix from raw per-ordered-pair values.
    ///
    /// The `(i, j)` and `(j, i)` entries are compared (a built-in numerical
    /// cross-check for routes that compute them independently), averaged,
    /// and the diagonal is hard-set to zero. A pre-symmetrization gap above
    /// [`tol::SYMMETRY_REL`] relative to the largest entry fails with
    /// [`Error::NumericalInconsistency`].
    pub(crate) fn from_raw(
        order: usize,
        mut values: Vec<f64>,
        method: Method,
        context: &str,
    ) -> Result<Self> {
        assert_eq!(values.len(), order * order, "value buffer size mismatch");
        let scale = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let tolerance = tol::SYMMETRY_REL * scale;
        for i in 0..order {
            for j in (i + 1)..order {
                let a = values[i * order + j];
                let b = values[j * order + i];
                let gap = (a - b).abs();
                if gap > tolerance {
                    return Err(Error::NumericalInconsistency {
                        context: context.into(),
                        i,
                        j,
                        gap,
                        tolerance,
                    });
                }
                let avg = 0.5 * (a + b);
                values[i * order + j] = avg;
                values[j * order + i] = avg;
            }
        }
        for i in 0..order {
            values[i * order + i] = 0.0;
        }
        Ok(Self { order, values, method })
    }

    /// Builds a matrix without symmetrization or validation. Intended for
    /// verification negative controls and tests that need to inject faults.
    pub fn from_values_unchecked(order: usize, values: Vec<f64>, method: Method) -> Self {
        assert_eq!(values.len(), order * order, "value buffer size mismatch");
        Self { order, values, method }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn method(&self) -> Method {
        self.method
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.order + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_deviation(&self, other: &DistanceMatrix) -> f64 {
        assert_eq!(self.order, other.order, "order mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise difference relative to the larger of the two scales.
    pub fn max_rel_deviation(&self, other: &DistanceMatrix) -> f64 {
        let scale = self.max_abs().max(other.max_abs());
        if scale == 0.0 {
            return 0.0;
        }
        self.max_abs_deviation(other) / scale
    }

    pub(crate) fn retagged(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub(crate) fn scaled(mut self, factor: f64, method: Method) -> Self {
        for v in self.values.iter_mut() {
            *v *= factor;
        }
        self.method = method;
        self
    }
}

/// The sparse vector `z(i, j)` with `1/p'_i` at `i`, `-1/p'_j` at `j` and
/// zeros elsewhere; it lies in the orthogonal complement of the Perron
/// vector, which is what makes the g-inverse quadratic form well defined.
#[derive(Debug, Clone, Copy)]
pub struct ZVector {
    order: usize,
    i: usize,
    j: usize,
    at_i: f64,
    at_j: f64,
}

impl ZVector {
    pub fn new(perron: &PerronData, i: usize, j: usize) -> Result<Self> {
        let n = perron.order();
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange { index: i.max(j), order: n });
        }
        if i == j {
            return Err(Error::SameVertex((i, i, j)));
        }
        Ok(Self {
            order: n,
            i,
            j,
            at_i: 1.0 / perron.p_prime()[i],
            at_j: -1.0 / perron.p_prime()[j],
        })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn at_i(&self) -> f64 {
        self.at_i
    }

    pub fn at_j(&self) -> f64 {
        self.at_j
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.order];
        v[self.i] = self.at_i;
        v[self.j] = self.at_j;
        v
    }

    /// Quadratic form `zᵀ·G·z` over the two nonzero entries.
    pub fn quadratic_form(&self, g: &DenseMatrix) -> f64 {
        let (i, j) = (self.i, self.j);
        self.at_i * self.at_i * g.get(i, i)
            + self.at_i * self.at_j * (g.get(i, j) + g.get(j, i))
            + self.at_j * self.at_j * g.get(j, j)
    }
}

/// Zero-diagonal g-inverse of the para-Laplacian whose off-diagonal entries
/// encode the long walk distances scaled by Perron components.
#[derive(Debug, Clone, PartialEq)]
pub struct HMatrix {
    inner: DenseMatrix,
}

impl HMatrix {
    pub fn as_matrix(&self) -> &DenseMatrix {
        &self.inner
    }

    pub fn order(&self) -> usize {
        self.inner.order()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.inner.get(i, j)
    }
}

/// Walk distance `d_t(i,j) = -ln(r_ij / √(r_ii·r_jj))` with
/// `R_t = (I - tA)⁻¹`, defined for `0 < t < 1/rho`.
pub fn walk_distance(
    g: &WeightedMultigraph,
    perron: &PerronData,
    t: f64,
) -> Result<DistanceMatrix> {
    let r = walk_weight_matrix(g, perron, t)?;
    let n = g.vertex_count();
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let ratio = r.get(i, j) / (r.get(i, i) * r.get(j, j)).sqrt();
                values[i * n + j] = -ratio.ln();
            }
        }
    }
    DistanceMatrix::from_raw(n, values, Method::Walk { t }, "walk")
}

/// Matrix of walk weights `R_t = (I - tA)⁻¹`, entrywise positive whenever it
/// exists. Exposed for inspection; the distances derive from it.
pub fn walk_weight_matrix(
    g: &WeightedMultigraph,
    perron: &PerronData,
    t: f64,
) -> Result<DenseMatrix> {
    let bound = 1.0 / perron.rho();
    if !(t > 0.0) || t >= bound || !t.is_finite() {
        return Err(Error::ParameterOutOfRange { t, bound });
    }
    let a = g.adjacency_matrix();
    let n = g.vertex_count();
    let m = DenseMatrix::from_fn(n, |i, j| {
        let base = if i == j { 1.0 } else { 0.0 };
        base - t * a.get(i, j)
    });
    let r = lu_factor(&m).inverse()?;

    // R is symmetric in exact arithmetic; a visible gap means the solve broke down
    let gap = r.max_symmetry_gap();
    if gap > tol::SYMMETRY_REL * r.max_abs() {
        return Err(Error::NumericalInconsistency {
            context: "walk weight matrix".into(),
            i: 0,
            j: 0,
            gap,
            tolerance: tol::SYMMETRY_REL * r.max_abs(),
        });
    }
    let r = DenseMatrix::from_fn(n, |i, j| 0.5 * (r.get(i, j) + r.get(j, i)));
    for i in 0..n {
        for j in 0..n {
            let value = r.get(i, j);
            if !(value > 0.0) {
                return Err(Error::NonPositiveWalkMatrix { i, j, value });
            }
        }
    }
    Ok(r)
}

/// Finite-t approximation `2·d_t / (n·rho²·(1/rho - t))` of the long walk
/// distance; converges to it as `t` approaches `1/rho` from below.
pub fn long_walk_limit_estimate(
    g: &WeightedMultigraph,
    perron: &PerronData,
    t: f64,
) -> Result<DistanceMatrix> {
    let d = walk_distance(g, perron, t)?;
    let n = g.vertex_count() as f64;
    let rho = perron.rho();
    let factor = 2.0 / (n * rho * rho * (1.0 / rho - t));
    Ok(d.scaled(factor, Method::LongWalkLimit { t }))
}

struct MinorData {
    det: f64,
    /// `((𝓛_ī)⁻¹)_jj` addressed by original label j; the deleted label holds 0.
    inv_diag: Vec<f64>,
}

/// For each vertex i, factors the principal submatrix with row/column i
/// removed and records its determinant and inverse diagonal. These minors are
/// nonsingular for any matrix coming from a connected graph.
fn principal_minor_data(lap: &DenseMatrix) -> Result<Vec<MinorData>> {
    let n = lap.order();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let minor = lap.delete_rows_cols(&[i], &[i])?;
        let lu = lu_factor(&minor);
        if lu.is_singular() {
            return Err(Error::SingularSubmatrix { u: i, v: i });
        }
        let det = lu.determinant();
        let inv = lu.inverse()?;
        let mut inv_diag = vec![0.0; n];
        for &j in inv.row_labels() {
            inv_diag[j] = inv
                .get_by_labels(j, j)
                .expect("label survives principal deletion");
        }
        out.push(MinorData { det, inv_diag });
    }
    Ok(out)
}

/// Long walk distance through the determinant ratio
/// `det((𝓛_ī)_j̄) / (p'_j² · det 𝓛_ī)`.
///
/// All second minors for a fixed i come from one factorization of `𝓛_ī` via
/// the relation `det((𝓛_ī)_j̄) = det(𝓛_ī) · ((𝓛_ī)⁻¹)_jj`, after which the
/// determinants cancel from the ratio. The `(i, j)` and `(j, i)` entries are
/// still computed from different factorizations and cross-checked during
/// symmetrization.
pub fn longwalk_det(g: &WeightedMultigraph, perron: &PerronData) -> Result<DistanceMatrix> {
    let lap = g.para_laplacian(perron)?;
    let minors = principal_minor_data(&lap)?;
    let pp = perron.p_prime();
    let n = g.vertex_count();
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                values[i * n + j] = minors[i].inv_diag[j] / (pp[j] * pp[j]);
            }
        }
    }
    DistanceMatrix::from_raw(n, values, Method::LongWalkDet, "longwalk-det")
}

/// Long walk distance as the quadratic form `zᵀ(i,j)·𝓛⁻·z(i,j)` for any
/// g-inverse `𝓛⁻` of the para-Laplacian.
///
/// The g-inverse contract `𝓛·G·𝓛 = 𝓛` is checked once on entry; the value
/// does not depend on which valid g-inverse is supplied.
pub fn longwalk_ginverse(
    g: &WeightedMultigraph,
    perron: &PerronData,
    linv: &DenseMatrix,
) -> Result<DistanceMatrix> {
    let lap = g.para_laplacian(perron)?;
    let n = g.vertex_count();
    if linv.order() != n {
        return Err(Error::PreconditionNotMet(format!(
            "g-inverse has order {} but the graph has {n} vertices",
            linv.order()
        )));
    }
    let residual = ginverse_residual(&lap, linv);
    if residual > tol::GINVERSE_REL {
        return Err(Error::NotAGInverse { residual, tolerance: tol::GINVERSE_REL });
    }
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let z = ZVector::new(perron, i, j)?;
            let d = z.quadratic_form(linv);
            values[i * n + j] = d;
            values[j * n + i] = d;
        }
    }
    DistanceMatrix::from_raw(n, values, Method::LongWalkGinv, "longwalk-ginv")
}

/// Long walk distance through the deleted-submatrix form
/// `z_ū ᵀ(i,j) · (𝓛 with row v, column u removed)⁻¹ · z_v̄(i,j)`, valid for
/// every choice of `u, v`.
pub fn longwalk_submatrix(
    g: &WeightedMultigraph,
    perron: &PerronData,
    u: usize,
    v: usize,
) -> Result<DistanceMatrix> {
    let n = g.vertex_count();
    for &x in &[u, v] {
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, order: n });
        }
    }
    let lap = g.para_laplacian(perron)?;
    let sub = lap.delete_rows_cols(&[v], &[u])?;
    let lu = lu_factor(&sub);
    if lu.is_singular() {
        return Err(Error::SingularSubmatrix { u, v });
    }
    // rows of the inverse carry labels V∖{u}, columns V∖{v}
    let ginv = lu.inverse()?;
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let z = ZVector::new(perron, i, j)?;
            let mut acc = 0.0;
            for (k, zk) in [(i, z.at_i()), (j, z.at_j())] {
                if k == u {
                    continue;
                }
                for (m, zm) in [(i, z.at_i()), (j, z.at_j())] {
                    if m == v {
                        continue;
                    }
                    acc += zk
                        * ginv
                            .get_by_labels(k, m)
                            .expect("surviving labels address the inverse")
                        * zm;
                }
            }
            values[i * n + j] = acc;
            values[j * n + i] = acc;
        }
    }
    DistanceMatrix::from_raw(n, values, Method::LongWalkSub { u, v }, "longwalk-sub")
}

/// The zero-diagonal g-inverse `H` with
/// `h_ij = -(p'_i · det((𝓛_ī)_j̄)) / (2·p'_j · det 𝓛_ī)` off the diagonal.
pub fn build_h_matrix(g: &WeightedMultigraph, perron: &PerronData) -> Result<HMatrix> {
    let lap = g.para_laplacian(perron)?;
    let minors = principal_minor_data(&lap)?;
    let pp = perron.p_prime();
    let n = g.vertex_count();
    let inner = DenseMatrix::from_fn(n, |i, j| {
        if i == j {
            0.0
        } else {
            -pp[i] * minors[i].inv_diag[j] / (2.0 * pp[j])
        }
    });
    Ok(HMatrix { inner })
}

/// Adjacency matrix `A' = P'·A·P'` of the Perron-rescaled graph; it shares
/// the zero pattern of `A`, so the rescaled graph is connected too.
pub fn transform_gprime(g: &WeightedMultigraph, perron: &PerronData) -> DenseMatrix {
    let a = g.adjacency_matrix();
    let pp = perron.p_prime();
    DenseMatrix::from_fn(g.vertex_count(), |i, j| pp[i] * a.get(i, j) * pp[j])
}

/// Weighted Laplacian of the Perron-rescaled graph, which also equals
/// `P'·𝓛·P'`.
pub fn gprime_laplacian(g: &WeightedMultigraph, perron: &PerronData) -> DenseMatrix {
    let a_prime = transform_gprime(g, perron);
    let n = a_prime.order();
    let degrees: Vec<f64> = (0..n).map(|i| a_prime.row(i).iter().sum()).collect();
    DenseMatrix::from_fn(n, |i, j| {
        if i == j {
            degrees[i] - a_prime.get(i, i)
        } else {
            -a_prime.get(i, j)
        }
    })
}

/// How [`resistance_distance`] evaluates the classical formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResistanceMode {
    /// Minor ratio `det((L_ī)_j̄) / det(L_v̄)` with a fixed denominator
    /// vertex; the value is independent of that choice.
    Det { denominator: usize },
    /// `g_ii + g_jj - g_ij - g_ji` over the kernel-shift g-inverse of `L`.
    Ginv,
}

impl ResistanceMode {
    pub fn det() -> Self {
        ResistanceMode::Det { denominator: 0 }
    }
}

/// Resistance distance of a weighted Laplacian (edge weights read as
/// conductances). The input must be symmetric with zero row sums and a
/// one-dimensional kernel; both evaluation modes agree within roundoff.
pub fn resistance_distance(lap: &DenseMatrix, mode: ResistanceMode) -> Result<DistanceMatrix> {
    let n = lap.order();
    let scale = lap.inf_norm().max(1.0);
    for i in 0..n {
        let sum: f64 = lap.row(i).iter().sum();
        if sum.abs() > tol::LAPLACIAN_ROWSUM_ABS * scale {
            return Err(Error::NotALaplacian { row: i, sum });
        }
    }
    if !lap.is_symmetric(tol::LAPLACIAN_ROWSUM_ABS * scale) {
        return Err(Error::PreconditionNotMet("resistance needs a symmetric Laplacian".into()));
    }
    match mode {
        ResistanceMode::Det { denominator } => {
            if denominator >= n {
                return Err(Error::IndexOutOfRange { index: denominator, order: n });
            }
            let den_lu = lu_factor(&lap.delete_rows_cols(&[denominator], &[denominator])?);
            let den = den_lu.determinant();
            // the Matrix tree theorem keeps this strictly positive for connected input
            if den_lu.is_singular() || !(den > 0.0) {
                return Err(Error::DisconnectedKernel);
            }
            let minors = principal_minor_data(lap).map_err(|_| Error::DisconnectedKernel)?;
            let mut values = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        values[i * n + j] = minors[i].det * minors[i].inv_diag[j] / den;
                    }
                }
            }
            DistanceMatrix::from_raw(n, values, Method::ResistanceDet, "resistance-det")
        }
        ResistanceMode::Ginv => {
            let q = vec![1.0 / (n as f64).sqrt(); n];
            let ginv = ginverse_kernel_shift(lap, &q).map_err(|e| match e {
                Error::SingularShift => Error::DisconnectedKernel,
                other => other,
            })?;
            let mut values = vec![0.0; n * n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let r = ginv.get(i, i) + ginv.get(j, j) - ginv.get(i, j) - ginv.get(j, i);
                    values[i * n + j] = r;
                    values[j * n + i] = r;
                }
            }
            DistanceMatrix::from_raw(n, values, Method::ResistanceGinv, "resistance-ginv")
        }
    }
}

/// Long walk distance computed as the resistance distance of the
/// Perron-rescaled graph.
pub fn longwalk_via_theorem_gprime(
    g: &WeightedMultigraph,
    perron: &PerronData,
) -> Result<DistanceMatrix> {
    let l_prime = gprime_laplacian(g, perron);
    Ok(resistance_distance(&l_prime, ResistanceMode::det())?.retagged(Method::LongWalkGPrime))
}

/// Rescaled long walk distance `n·‖p‖₂²·d^LW` with the Perron vector
/// normalized to unit sum.
///
/// Under that normalization the factor is 1 for balanced graphs (so the
/// rescaled distance still coincides with the resistance distance there) and
/// the distance across a fixed unit edge tends to 1 as every other weight
/// vanishes.
pub fn rescaled_longwalk(g: &WeightedMultigraph, perron: &PerronData) -> Result<DistanceMatrix> {
    let d = longwalk_det(g, perron)?;
    Ok(d.scaled(perron.rescale_factor(), Method::RescaledLongWalk))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, path_graph};
    use crate::linalg::determinant;
    use approx::assert_abs_diff_eq;

    fn p2() -> WeightedMultigraph {
        WeightedMultigraph::new(2, vec![(0, 1, 1.0)]).unwrap()
    }

    #[test]
    fn walk_p2_hand_value() {
        let g = p2();
        let perron = g.perron().unwrap();
        let d = walk_distance(&g, &perron, 0.5).unwrap();
        assert_abs_diff_eq!(d.get(0, 1), 0.5f64.ln().abs(), epsilon = 1e-13);
        assert_eq!(d.get(0, 0), 0.0);
        assert_eq!(d.get(1, 1), 0.0);
    }

    #[test]
    fn walk_parameter_range() {
        let g = path_graph(3);
        let perron = g.perron().unwrap();
        let bound = 1.0 / perron.rho();
        for t in [0.0, -0.3, bound, bound + 0.5, 2.0] {
            match walk_distance(&g, &perron, t) {
                Err(Error::ParameterOutOfRange { bound: b, .. }) => {
                    assert_abs_diff_eq!(b, bound, epsilon = 1e-15);
                }
                other => panic!("expected ParameterOutOfRange, got {other:?}"),
            }
        }
        assert!(walk_distance(&g, &perron, bound * 0.999).is_ok());
    }

    #[test]
    fn walk_additive_at_cut_vertex() {
        let g = path_graph(3);
        let perron = g.perron().unwrap();
        for frac in [0.1, 0.5, 0.9] {
            let t = frac / perron.rho();
            let d = walk_distance(&g, &perron, t).unwrap();
            assert_abs_diff_eq!(d.get(0, 1) + d.get(1, 2), d.get(0, 2), epsilon = 1e-12);
        }
    }

    #[test]
    fn limit_estimate_p2() {
        let g = p2();
        let perron = g.perron().unwrap();
        let est = long_walk_limit_estimate(&g, &perron, 0.999).unwrap();
        // analytic: -ln(0.999)/0.001
        assert_abs_diff_eq!(est.get(0, 1), -(0.999f64.ln()) / 0.001, epsilon = 1e-11);
        assert_eq!(est.get(0, 0), 0.0);
    }

    #[test]
    fn longwalk_det_fixtures() {
        let g = p2();
        let d = longwalk_det(&g, &g.perron().unwrap()).unwrap();
        assert_abs_diff_eq!(d.get(0, 1), 1.0, epsilon = 1e-12);

        let g = path_graph(3);
        let d = longwalk_det(&g, &g.perron().unwrap()).unwrap();
        let s2 = 2.0f64.sqrt();
        assert_abs_diff_eq!(d.get(0, 1), 2.0 * s2 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.get(1, 2), 2.0 * s2 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.get(0, 2), 4.0 * s2 / 3.0, epsilon = 1e-12);

        let g = complete_graph(3);
        let d = longwalk_det(&g, &g.perron().unwrap()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_abs_diff_eq!(d.get(i, j), 2.0 / 3.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn minor_inverse_relation_matches_direct_minors() {
        let g = WeightedMultigraph::new(
            4,
            vec![(0, 1, 1.5), (1, 2, 0.5), (2, 3, 2.0), (0, 2, 0.25)],
        )
        .unwrap();
        let perron = g.perron().unwrap();
        let lap = g.para_laplacian(&perron).unwrap();
        let minors = principal_minor_data(&lap).unwrap();
        for i in 0..4 {
            let first = lap.delete_rows_cols(&[i], &[i]).unwrap();
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let second = first.delete_rows_cols(&[j], &[j]).unwrap();
                let direct = determinant(&second);
                let via_inverse = minors[i].det * minors[i].inv_diag[j];
                assert_abs_diff_eq!(direct, via_inverse, epsilon = 1e-10 * direct.abs().max(1.0));
            }
        }
    }

    #[test]
    fn ginverse_route_p2_hand_value() {
        let g = p2();
        let perron = g.perron().unwrap();
        let lap = g.para_laplacian(&perron).unwrap();
        let q: Vec<f64> = perron
            .p_prime()
            .iter()
            .map(|v| v / (2.0f64).sqrt())
            .collect();
        let ginv = ginverse_kernel_shift(&lap, &q).unwrap();
        let d = longwalk_ginverse(&g, &perron, &ginv).unwrap();
        assert_abs_diff_eq!(d.get(0, 1), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn ginverse_route_rejects_non_ginverse() {
        let g = path_graph(3);
        let perron = g.perron().unwrap();
        let fake = DenseMatrix::identity(3);
        assert!(matches!(
            longwalk_ginverse(&g, &perron, &fake),
            Err(Error::NotAGInverse { .. })
        ));
    }

    #[test]
    fn ginverse_route_independent_of_choice() {
        let g = WeightedMultigraph::new(
            4,
            vec![(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0), (3, 0, 0.5), (0, 2, 0.75)],
        )
        .unwrap();
        let perron = g.perron().unwrap();
        let lap = g.para_laplacian(&perron).unwrap();
        let norm: f64 = perron.p().iter().map(|v| v * v).sum::<f64>().sqrt();
        let q: Vec<f64> = perron.p().iter().map(|v| v / norm).collect();
        let shift = ginverse_kernel_shift(&lap, &q).unwrap();
        let h = build_h_matrix(&g, &perron).unwrap();
        let d1 = longwalk_ginverse(&g, &perron, &shift).unwrap();
        let d2 = longwalk_ginverse(&g, &perron, h.as_matrix()).unwrap();
        assert!(d1.max_rel_deviation(&d2) <= 1e-10);
    }

    #[test]
    fn h_matrix_p2_hand_value() {
        let g = p2();
        let perron = g.perron().unwrap();
        let h = build_h_matrix(&g, &perron).unwrap();
        assert_eq!(h.get(0, 0), 0.0);
        assert_abs_diff_eq!(h.get(0, 1), -0.5, epsilon = 1e-13);
        assert_abs_diff_eq!(h.get(1, 0), -0.5, epsilon = 1e-13);
    }

    #[test]
    fn h_matrix_is_ginverse_and_encodes_distances() {
        let g = path_graph(3);
        let perron = g.perron().unwrap();
        let lap = g.para_laplacian(&perron).unwrap();
        let h = build_h_matrix(&g, &perron).unwrap();
        assert!(ginverse_residual(&lap, h.as_matrix()) <= 1e-10);

        let d = longwalk_det(&g, &perron).unwrap();
        let pp = perron.p_prime();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let from_h = -2.0 * h.get(i, j) / (pp[i] * pp[j]);
                    assert_abs_diff_eq!(from_h, d.get(i, j), epsilon = 1e-11);
                }
            }
        }
    }

    #[test]
    fn submatrix_route_p2() {
        let g = p2();
        let perron = g.perron().unwrap();
        let d = longwalk_submatrix(&g, &perron, 0, 0).unwrap();
        assert_abs_diff_eq!(d.get(0, 1), 1.0, epsilon = 1e-12);
        let d = longwalk_submatrix(&g, &perron, 0, 1).unwrap();
        assert_abs_diff_eq!(d.get(0, 1), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn submatrix_route_all_uv_choices_agree() {
        let g = path_graph(3);
        let perron = g.perron().unwrap();
        let reference = longwalk_det(&g, &perron).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                let d = longwalk_submatrix(&g, &perron, u, v).unwrap();
                assert!(
                    d.max_rel_deviation(&reference) <= 1e-9,
                    "(u, v) = ({u}, {v}) deviates by {}",
                    d.max_rel_deviation(&reference)
                );
            }
        }
    }

    #[test]
    fn gprime_transform_values() {
        let g = p2();
        let perron = g.perron().unwrap();
        let a_prime = transform_gprime(&g, &perron);
        assert_abs_diff_eq!(a_prime.get(0, 1), 1.0, epsilon = 1e-12);

        let g = path_graph(3);
        let perron = g.perron().unwrap();
        let a_prime = transform_gprime(&g, &perron);
        let expected = 3.0 * 2.0f64.sqrt() / 4.0;
        assert_abs_diff_eq!(a_prime.get(0, 1), expected, epsilon = 1e-12);
        assert_abs_diff_eq!(a_prime.get(1, 2), expected, epsilon = 1e-12);
        assert_eq!(a_prime.get(0, 2), 0.0);
    }

    #[test]
    fn resistance_fixtures() {
        let p2 = p2();
        let r = resistance_distance(&p2.laplacian_matrix(), ResistanceMode::det()).unwrap();
        assert_abs_diff_eq!(r.get(0, 1), 1.0, epsilon = 1e-12);

        let k3 = complete_graph(3);
        let det = resistance_distance(&k3.laplacian_matrix(), ResistanceMode::det()).unwrap();
        let ginv = resistance_distance(&k3.laplacian_matrix(), ResistanceMode::Ginv).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_abs_diff_eq!(det.get(i, j), 2.0 / 3.0, epsilon = 1e-12);
                    assert_abs_diff_eq!(ginv.get(i, j), 2.0 / 3.0, epsilon = 1e-12);
                }
            }
        }

        let p3 = path_graph(3);
        let r = resistance_distance(&p3.laplacian_matrix(), ResistanceMode::det()).unwrap();
        assert_abs_diff_eq!(r.get(0, 2), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.get(0, 1), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn resistance_rejects_non_laplacian() {
        let k3 = complete_graph(3);
        assert!(matches!(
            resistance_distance(&k3.adjacency_matrix(), ResistanceMode::det()),
            Err(Error::NotALaplacian { .. })
        ));
    }

    #[test]
    fn resistance_denominator_invariance() {
        let g = WeightedMultigraph::new(
            4,
            vec![(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0), (3, 0, 0.5)],
        )
        .unwrap();
        let lap = g.laplacian_matrix();
        let base = resistance_distance(&lap, ResistanceMode::Det { denominator: 0 }).unwrap();
        for v in 1..4 {
            let other = resistance_distance(&lap, ResistanceMode::Det { denominator: v }).unwrap();
            assert!(base.max_rel_deviation(&other) <= 1e-12);
        }
    }

    #[test]
    fn theorem_gprime_route_matches_det_route() {
        let g = path_graph(3);
        let perron = g.perron().unwrap();
        let via_gprime = longwalk_via_theorem_gprime(&g, &perron).unwrap();
        let s2 = 2.0f64.sqrt();
        assert_abs_diff_eq!(via_gprime.get(0, 1), 2.0 * s2 / 3.0, epsilon = 1e-11);
        assert_abs_diff_eq!(via_gprime.get(0, 2), 4.0 * s2 / 3.0, epsilon = 1e-11);
        let det = longwalk_det(&g, &perron).unwrap();
        assert!(via_gprime.max_rel_deviation(&det) <= 1e-10);
        assert_eq!(via_gprime.method(), Method::LongWalkGPrime);
    }

    #[test]
    fn gprime_laplacian_equals_conjugated_para_laplacian() {
        let g = WeightedMultigraph::new(
            4,
            vec![(0, 1, 1.0), (1, 2, 0.5), (2, 3, 1.5), (0, 3, 0.75), (1, 1, 0.4)],
        )
        .unwrap();
        let perron = g.perron().unwrap();
        let l_prime = gprime_laplacian(&g, &perron);
        let lap = g.para_laplacian(&perron).unwrap();
        let pp = perron.p_prime();
        let conjugated = DenseMatrix::from_fn(4, |i, j| pp[i] * lap.get(i, j) * pp[j]);
        assert!(l_prime.sub(&conjugated).inf_norm() <= 1e-10 * l_prime.inf_norm().max(1.0));
    }

    #[test]
    fn rescaled_fixtures() {
        let g = p2();
        let perron = g.perron().unwrap();
        let d = rescaled_longwalk(&g, &perron).unwrap();
        assert_abs_diff_eq!(d.get(0, 1), 1.0, epsilon = 1e-12);

        let k3 = complete_graph(3);
        let perron = k3.perron().unwrap();
        let d = rescaled_longwalk(&k3, &perron).unwrap();
        assert_abs_diff_eq!(d.get(0, 1), 2.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn zvector_orthogonal_to_perron_direction() {
        let g = path_graph(4);
        let perron = g.perron().unwrap();
        let z = ZVector::new(&perron, 0, 3).unwrap();
        let dense = z.to_dense();
        let dot: f64 = dense
            .iter()
            .zip(perron.p_prime())
            .map(|(a, b)| a * b)
            .sum();
        assert!(dot.abs() <= 1e-12);
        assert_eq!(dense.iter().filter(|v| **v != 0.0).count(), 2);
    }
}
