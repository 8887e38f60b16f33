//! Tanner graphs of parity-check matrices.
//!
//! The graph of an r x n matrix H is bipartite: bit vertices x1..xn on one
//! side, check vertices f1..fr on the other, and an edge {xi, fj} exactly
//! when H[j][i] = 1. All structural questions the crate asks (forest tests,
//! girth, components, local check satisfaction) live here.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Vertex of a Tanner graph; bits order before checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Bit(usize),
    Check(usize),
}

#[derive(Clone, Debug)]
pub struct TannerGraph {
    bit_adj: Vec<Vec<usize>>,
    check_adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn from_matrix(h: &BitMatrix) -> Self {
        let (r, n) = (h.rows(), h.cols());
        let mut bit_adj = vec![Vec::new(); n];
        let mut check_adj = vec![Vec::new(); r];
        for j in 0..r {
            for i in h.row(j).support() {
                bit_adj[i].push(j);
                check_adj[j].push(i);
            }
        }
        TannerGraph { bit_adj, check_adj }
    }

    /// Inverse of [`from_matrix`]: the biadjacency matrix.
    pub fn to_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.n_checks(), self.n_bits());
        for (j, bits) in self.check_adj.iter().enumerate() {
            for &i in bits {
                m.set(j, i, true);
            }
        }
        m
    }

    pub fn n_bits(&self) -> usize {
        self.bit_adj.len()
    }

    pub fn n_checks(&self) -> usize {
        self.check_adj.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_bits() + self.n_checks()
    }

    pub fn edge_count(&self) -> usize {
        self.check_adj.iter().map(Vec::len).sum()
    }

    pub fn check_neighbors(&self, j: usize) -> &[usize] {
        &self.check_adj[j]
    }

    pub fn bit_neighbors(&self, i: usize) -> &[usize] {
        &self.bit_adj[i]
    }

    pub fn check_degrees(&self) -> Vec<usize> {
        self.check_adj.iter().map(Vec::len).collect()
    }

    pub fn bit_degrees(&self) -> Vec<usize> {
        self.bit_adj.iter().map(Vec::len).collect()
    }

    // Internal flat ids: bits first, then checks.
    fn flat(&self, v: Vertex) -> usize {
        match v {
            Vertex::Bit(i) => i,
            Vertex::Check(j) => self.n_bits() + j,
        }
    }

    fn unflat(&self, id: usize) -> Vertex {
        if id < self.n_bits() {
            Vertex::Bit(id)
        } else {
            Vertex::Check(id - self.n_bits())
        }
    }

    fn flat_neighbors(&self, id: usize) -> Vec<usize> {
        match self.unflat(id) {
            Vertex::Bit(i) => self.bit_adj[i].iter().map(|&j| self.n_bits() + j).collect(),
            Vertex::Check(j) => self.check_adj[j].clone(),
        }
    }

    /// Connected components, each sorted, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        self.components_excluding(None)
    }

    /// Components after deleting one vertex (with its edges), if given.
    pub fn components_excluding(&self, excluded: Option<Vertex>) -> Vec<Vec<Vertex>> {
        let total = self.n_vertices();
        let skip = excluded.map(|v| self.flat(v));
        let mut seen = vec![false; total];
        if let Some(s) = skip {
            seen[s] = true;
        }
        let mut components = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(self.unflat(u));
                for w in self.flat_neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort();
            components.push(comp);
        }
        components
    }

    /// A graph is a forest exactly when edges = vertices - components.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.connected_components().len() == self.n_vertices()
    }

    /// Length of a shortest cycle; `None` for forests. Always even here,
    /// since the graph is bipartite.
    pub fn girth(&self) -> Option<usize> {
        let total = self.n_vertices();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        for root in 0..total {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    // No shorter cycle through this root can be found deeper.
                    if 2 * dist[u] >= b {
                        break;
                    }
                }
                for w in self.flat_neighbors(u) {
                    if w == parent[u] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else {
                        let cycle = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }

    /// Local check-node test for an assignment of nonnegative values to the
    /// bit nodes: the neighbor values of check `j` must have an even sum, and
    /// no neighbor may exceed the sum of the other neighbors.
    pub fn p_satisfied(&self, j: usize, values: &[u64]) -> Result<bool> {
        if j >= self.n_checks() {
            return Err(Error::IndexOutOfRange {
                kind: "check",
                index: j,
                limit: self.n_checks(),
            });
        }
        if values.len() != self.n_bits() {
            return Err(Error::LengthMismatch {
                context: "bit assignment",
                expected: self.n_bits(),
                actual: values.len(),
            });
        }
        let mut total: u128 = 0;
        let mut max: u128 = 0;
        for &i in &self.check_adj[j] {
            let v = values[i] as u128;
            total += v;
            max = max.max(v);
        }
        Ok(total % 2 == 0 && 2 * max <= total)
    }

    /// Graphviz rendering: bits as circles, checks as red squares.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph tanner {\n");
        for i in 0..self.n_bits() {
            let _ = writeln!(s, "  x{} [shape=circle];", i + 1);
        }
        for j in 0..self.n_checks() {
            let _ = writeln!(
                s,
                "  f{} [shape=square style=filled fillcolor=red];",
                j + 1
            );
        }
        for (j, bits) in self.check_adj.iter().enumerate() {
            for &i in bits {
                let _ = writeln!(s, "  x{} -- f{};", i + 1, j + 1);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Result of repeatedly deleting weight-1 rows together with their column.
#[derive(Clone, Debug)]
pub struct Pruned {
    /// Remaining matrix; `None` when every row or every column was deleted.
    pub matrix: Option<BitMatrix>,
    /// Original indices of surviving rows, ascending.
    pub kept_rows: Vec<usize>,
    /// Original indices of surviving columns, ascending.
    pub kept_cols: Vec<usize>,
    /// Original indices of deleted rows, ascending.
    pub removed_rows: Vec<usize>,
    /// Original indices of deleted (punctured) columns, ascending.
    pub punctured_cols: Vec<usize>,
}

/// Deletes degree-1 check rows and punctures their single neighbor column,
/// repeating until no weight-1 row remains. A punctured coordinate is forced
/// to zero in every codeword, so the restricted matrix describes the same
/// code on the surviving coordinates.
pub fn prune_degree_one_checks(h: &BitMatrix) -> Pruned {
    let mut kept_rows: Vec<usize> = (0..h.rows()).collect();
    let mut kept_cols: Vec<usize> = (0..h.cols()).collect();
    let mut removed_rows = Vec::new();
    let mut punctured_cols = Vec::new();
    loop {
        let mut hit = None;
        'rows: for (rpos, &j) in kept_rows.iter().enumerate() {
            let mut found = None;
            for (cpos, &i) in kept_cols.iter().enumerate() {
                if h.get(j, i) {
                    if found.is_some() {
                        continue 'rows; // weight at least 2
                    }
                    found = Some(cpos);
                }
            }
            if let Some(cpos) = found {
                hit = Some((rpos, cpos));
                break;
            }
        }
        let Some((rpos, cpos)) = hit else { break };
        removed_rows.push(kept_rows.remove(rpos));
        punctured_cols.push(kept_cols.remove(cpos));
        if kept_rows.is_empty() || kept_cols.is_empty() {
            break;
        }
    }
    removed_rows.sort_unstable();
    punctured_cols.sort_unstable();
    let matrix = if kept_rows.is_empty() || kept_cols.is_empty() {
        None
    } else {
        let mut m = BitMatrix::zeros(kept_rows.len(), kept_cols.len());
        for (jj, &j) in kept_rows.iter().enumerate() {
            for (ii, &i) in kept_cols.iter().enumerate() {
                if h.get(j, i) {
                    m.set(jj, ii, true);
                }
            }
        }
        Some(m)
    };
    Pruned {
        matrix,
        kept_rows,
        kept_cols,
        removed_rows,
        punctured_cols,
    }
}
