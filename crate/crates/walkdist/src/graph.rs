//! Weighted multigraph model and the matrices built from it.

use std::collections::VecDeque;

use crate::distances::{DistanceMatrix, Method};
use crate::error::{Error, Result};
use crate::linalg::{perron_eigenpair, PerronData};
use crate::matrix::{vec_inf_norm, DenseMatrix};
use crate::tol;

/// A single weighted edge. Parallel edges are separate entries; a loop has
/// `u == v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Connected weighted multigraph on vertices `0..n`.
///
/// Loops and parallel edges are allowed; connectivity is validated eagerly at
/// construction, so every downstream operation may assume it. The value is
/// immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMultigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl WeightedMultigraph {
    /// Builds and validates a graph from `(u, v, weight)` triples.
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidVertexCount(n));
        }
        let mut list = Vec::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    w,
                    reason: format!("vertex id out of range 0..{n}"),
                });
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    w,
                    reason: "weight must be a positive finite real".into(),
                });
            }
            list.push(Edge { u, v, w });
        }
        let g = Self { n, edges: list };
        if let Some(unreached) = g.first_unreachable(None) {
            return Err(Error::NotConnected(unreached));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            if e.u != e.v {
                adj[e.u].push(e.v);
                adj[e.v].push(e.u);
            }
        }
        adj
    }

    /// BFS over the simple skeleton (loops ignored), optionally with one
    /// vertex removed. Returns the first vertex left unreached, if any.
    fn first_unreachable(&self, removed: Option<usize>) -> Option<usize> {
        let adj = self.neighbor_lists();
        let start = (0..self.n).find(|&v| Some(v) != removed)?;
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if Some(w) == removed || seen[w] {
                    continue;
                }
                seen[w] = true;
                queue.push_back(w);
            }
        }
        (0..self.n).find(|&v| !seen[v] && Some(v) != removed)
    }

    /// Symmetric weighted adjacency matrix: `a_ij` sums the weights of all
    /// i–j edges, and a loop contributes its weight once to `a_ii`.
    pub fn adjacency_matrix(&self) -> DenseMatrix {
        let mut a = DenseMatrix::zeros(self.n);
        for e in &self.edges {
            if e.u == e.v {
                a.set(e.u, e.u, a.get(e.u, e.u) + e.w);
            } else {
                a.set(e.u, e.v, a.get(e.u, e.v) + e.w);
                a.set(e.v, e.u, a.get(e.v, e.u) + e.w);
            }
        }
        a
    }

    /// Weighted Laplacian `L = diag(A·1) - A`. Loops cancel out of it.
    pub fn laplacian_matrix(&self) -> DenseMatrix {
        let a = self.adjacency_matrix();
        let degrees: Vec<f64> = (0..self.n).map(|i| a.row(i).iter().sum()).collect();
        DenseMatrix::from_fn(self.n, |i, j| {
            if i == j {
                degrees[i] - a.get(i, i)
            } else {
                -a.get(i, j)
            }
        })
    }

    /// Perron eigenpair of this graph's adjacency matrix.
    pub fn perron(&self) -> Result<PerronData> {
        perron_eigenpair(&self.adjacency_matrix())
    }

    /// Para-Laplacian `𝓛 = rho·I - A`, the singular M-matrix whose kernel is
    /// spanned by the Perron vector.
    ///
    /// Fails with [`Error::PerronMismatch`] when `‖𝓛p‖∞` shows the supplied
    /// Perron data belongs to a different (or stale) graph.
    pub fn para_laplacian(&self, perron: &PerronData) -> Result<DenseMatrix> {
        if perron.order() != self.n {
            return Err(Error::PreconditionNotMet(format!(
                "Perron data has order {} but the graph has {} vertices",
                perron.order(),
                self.n
            )));
        }
        let a = self.adjacency_matrix();
        let l = DenseMatrix::from_fn(self.n, |i, j| {
            let base = if i == j { perron.rho() } else { 0.0 };
            base - a.get(i, j)
        });
        let residual = vec_inf_norm(&l.mul_vec(perron.p()));
        let tolerance = tol::PARA_LAPLACIAN_KERNEL_REL * perron.rho();
        if residual > tolerance {
            return Err(Error::PerronMismatch { residual, tolerance });
        }
        Ok(l)
    }

    /// Whether every path between `i` and `k` passes through `j`, decided by
    /// traversal of the graph with `j` deleted.
    pub fn separates(&self, j: usize, i: usize, k: usize) -> Result<bool> {
        for &v in &[i, j, k] {
            if v >= self.n {
                return Err(Error::IndexOutOfRange { index: v, order: self.n });
            }
        }
        if i == j || j == k || i == k {
            return Err(Error::SameVertex((j, i, k)));
        }
        let adj = self.neighbor_lists();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([i]);
        seen[i] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if w == j || seen[w] {
                    continue;
                }
                seen[w] = true;
                queue.push_back(w);
            }
        }
        Ok(!seen[k])
    }

    /// All-pairs hop counts over the simple skeleton (weights and loops
    /// ignored); a qualitative companion to the walk-distance family.
    pub fn shortest_path_distances(&self) -> DistanceMatrix {
        let adj = self.neighbor_lists();
        let mut values = vec![0.0; self.n * self.n];
        for start in 0..self.n {
            let mut hops = vec![usize::MAX; self.n];
            hops[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if hops[w] == usize::MAX {
                        hops[w] = hops[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for (v, &h) in hops.iter().enumerate() {
                values[start * self.n + v] = h as f64;
            }
        }
        DistanceMatrix::from_raw(self.n, values, Method::ShortestPath, "shortest-path")
            .expect("hop counts are exactly symmetric")
    }

    /// Row sums of the adjacency matrix (loops counted once).
    pub fn weighted_degrees(&self) -> Vec<f64> {
        let a = self.adjacency_matrix();
        (0..self.n).map(|i| a.row(i).iter().sum()).collect()
    }

    /// Whether all weighted degrees coincide; for balanced graphs the
    /// para-Laplacian equals the Laplacian and the long walk distance is the
    /// resistance distance.
    pub fn is_balanced(&self) -> bool {
        let degrees = self.weighted_degrees();
        let max = degrees.iter().fold(f64::MIN, |a, &b| a.max(b));
        let min = degrees.iter().fold(f64::MAX, |a, &b| a.min(b));
        min > 0.0 && max / min - 1.0 <= tol::BALANCED_DETECT
    }
}

/// Path graph on `n` vertices with unit weights.
pub fn path_graph(n: usize) -> WeightedMultigraph {
    let edges = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
    WeightedMultigraph::new(n, edges).expect("path graphs are connected")
}

/// Cycle on `n ≥ 3` vertices with unit weights.
pub fn cycle_graph(n: usize) -> WeightedMultigraph {
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
    edges.push((n - 1, 0, 1.0));
    WeightedMultigraph::new(n, edges).expect("cycles are connected")
}

/// Complete graph on `n ≥ 2` vertices with unit weights.
pub fn complete_graph(n: usize) -> WeightedMultigraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j, 1.0));
        }
    }
    WeightedMultigraph::new(n, edges).expect("complete graphs are connected")
}
