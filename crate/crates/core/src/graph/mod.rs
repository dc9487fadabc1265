//! Simple undirected graphs, strongly regular parameter sets, graph6 I/O and
//! the small families used throughout the test corpus.

pub mod families;
pub mod graph6;
pub mod srg;

use std::collections::VecDeque;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Unweighted simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledGraph {
    n: usize,
    adj: Vec<bool>,
}

impl LabeledGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from a 0/1 matrix; rejects loops and asymmetry.
    pub fn from_matrix(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Self::empty(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!("row {i} has length {}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                match (x, rows[j][i]) {
                    (0, 0) => {}
                    (1, 1) if i != j => g.adj[i * n + j] = true,
                    (1, 1) => return Err(Error::InvalidArgument(format!("loop at vertex {i}"))),
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "matrix is not a symmetric 0/1 matrix at ({i}, {j})"
                        )))
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
        }
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = false;
        self.adj[v * self.n + u] = false;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    /// Common valency, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|u| self.degree(u) == k).then_some(k)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                g.adj[u * self.n + v] = u != v && !self.has_edge(u, v);
            }
        }
        g
    }

    /// Induced subgraph on the vertices not in `removed`, order preserved.
    pub fn delete_vertices(&self, removed: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|x| !removed.contains(x)).collect();
        let mut g = Self::empty(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                g.adj[i * keep.len() + j] = self.has_edge(a, b);
            }
        }
        g
    }

    /// Adjacency matrix over the rationals.
    pub fn rational_matrix(&self) -> Vec<Vec<Rational>> {
        (0..self.n)
            .map(|u| {
                (0..self.n)
                    .map(|v| Rational::from_integer(i64::from(self.has_edge(u, v)).into()))
                    .collect()
            })
            .collect()
    }

    pub fn f64_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |u, v| if self.has_edge(u, v) { 1.0 } else { 0.0 })
    }

    /// `(0, v)` for the smallest `v` whose adjacency to vertex 0 matches.
    pub fn find_pair(&self, adjacent: bool) -> Option<(usize, usize)> {
        (1..self.n).find(|&v| self.has_edge(0, v) == adjacent).map(|v| (0, v))
    }

    pub(crate) fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.n {
            Ok(())
        } else {
            Err(Error::InvalidPair(format!(
                "vertex {u} out of range for {} vertices",
                self.n
            )))
        }
    }
}

impl std::fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LabeledGraph(n={}, edges={:?})", self.n, self.edges())
    }
}
