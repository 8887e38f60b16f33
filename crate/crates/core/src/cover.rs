//! Finite covers of a Tanner graph and the pseudocodewords they produce.
//!
//! A degree-m cover replaces every vertex by m copies and every edge by a
//! perfect matching between the copies of its endpoints, so each copy keeps
//! the degree and neighbor set of its base vertex. Codewords of the lifted
//! matrix, summed along fibers, give integer vectors on the base bits. This
//! module enumerates covers exhaustively and serves as the ground-truth
//! oracle the algebraic test in [`crate::pseudo`] is validated against.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::pseudo::PseudoVector;

/// A degree-`m` cover of the Tanner graph of `base`, given by one
/// permutation per edge.
///
/// Edges are indexed row-major: scanning rows top to bottom and, inside a
/// row, columns left to right. For edge `(j, i)` the permutation sends check
/// copies to bit copies: copy `k` of check `j` attaches to copy `perm[k]` of
/// bit `i`. The indexing is load-bearing for serialized specs, do not
/// reorder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    base: BitMatrix,
    degree: usize,
    perms: Vec<Vec<usize>>,
}

/// Edges of the Tanner graph of `h` in row-major order, as `(row, col)`.
pub fn edge_list(h: &BitMatrix) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for j in 0..h.rows() {
        for i in h.row(j).support() {
            edges.push((j, i));
        }
    }
    edges
}

impl CoverSpec {
    /// The cover made of `m` disjoint copies: every permutation is identity.
    pub fn identity(base: &BitMatrix, m: usize) -> Self {
        assert!(m >= 1, "cover degree must be at least 1");
        let perms = vec![(0..m).collect(); edge_list(base).len()];
        CoverSpec {
            base: base.clone(),
            degree: m,
            perms,
        }
    }

    /// Validates one bijection on `0..m` per edge, in edge order.
    pub fn new(base: &BitMatrix, m: usize, perms: Vec<Vec<usize>>) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidInput("cover degree must be at least 1".into()));
        }
        let edges = edge_list(base);
        if perms.len() != edges.len() {
            return Err(Error::LengthMismatch {
                context: "edge permutations",
                expected: edges.len(),
                actual: perms.len(),
            });
        }
        for (e, perm) in perms.iter().enumerate() {
            if !is_permutation(perm, m) {
                return Err(Error::InvalidInput(format!(
                    "edge {e}: {perm:?} is not a permutation of 0..{m}"
                )));
            }
        }
        Ok(CoverSpec {
            base: base.clone(),
            degree: m,
            perms,
        })
    }

    pub fn base(&self) -> &BitMatrix {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Parity-check matrix of the cover. Row block `j` holds the copies of
    /// check `j` (copy `k` at row `j*m+k`), column block `i` the copies of
    /// bit `i`.
    pub fn lift(&self) -> BitMatrix {
        let m = self.degree;
        let mut out = BitMatrix::zeros(self.base.rows() * m, self.base.cols() * m);
        for (e, &(j, i)) in edge_list(&self.base).iter().enumerate() {
            for k in 0..m {
                out.set(j * m + k, i * m + self.perms[e][k], true);
            }
        }
        out
    }

    /// Text form, one permutation per line with 1-based endpoints and
    /// images:
    ///
    /// ```text
    /// m = 2
    /// edge 1 1 : 2 1
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "m = {}", self.degree);
        for (e, &(j, i)) in edge_list(&self.base).iter().enumerate() {
            let images: Vec<String> =
                self.perms[e].iter().map(|&v| (v + 1).to_string()).collect();
            let _ = writeln!(out, "edge {} {} : {}", j + 1, i + 1, images.join(" "));
        }
        out
    }
}

fn is_permutation(perm: &[usize], m: usize) -> bool {
    if perm.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    for &v in perm {
        if v >= m || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Parses the format written by [`CoverSpec::to_text`]. Every edge of `h`
/// must appear exactly once; order is free. Blank lines and lines starting
/// with `#` are skipped.
pub fn parse_cover_spec(h: &BitMatrix, text: &str) -> Result<CoverSpec> {
    let edges = edge_list(h);
    let mut degree: Option<usize> = None;
    let mut perms: Vec<Option<Vec<usize>>> = vec![None; edges.len()];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let no = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if degree.is_none() {
            let rest = line
                .strip_prefix("m")
                .map(|r| r.trim_start())
                .and_then(|r| r.strip_prefix('='))
                .ok_or(Error::Parse {
                    line: no,
                    msg: "expected header 'm = <degree>'".into(),
                })?;
            let m: usize = rest.trim().parse().map_err(|_| Error::Parse {
                line: no,
                msg: format!("bad cover degree {:?}", rest.trim()),
            })?;
            if m < 1 {
                return Err(Error::Parse {
                    line: no,
                    msg: "cover degree must be at least 1".into(),
                });
            }
            degree = Some(m);
            continue;
        }
        let m = degree.unwrap();
        let body = line.strip_prefix("edge").ok_or(Error::Parse {
            line: no,
            msg: "expected 'edge <row> <col> : <images>'".into(),
        })?;
        let (head, tail) = body.split_once(':').ok_or(Error::Parse {
            line: no,
            msg: "missing ':' before image list".into(),
        })?;
        let ends: Vec<&str> = head.split_whitespace().collect();
        if ends.len() != 2 {
            return Err(Error::Parse {
                line: no,
                msg: "expected exactly two edge endpoints".into(),
            });
        }
        let j: usize = ends[0].parse().map_err(|_| Error::Parse {
            line: no,
            msg: format!("bad row index {:?}", ends[0]),
        })?;
        let i: usize = ends[1].parse().map_err(|_| Error::Parse {
            line: no,
            msg: format!("bad column index {:?}", ends[1]),
        })?;
        if j == 0 || i == 0 {
            return Err(Error::Parse {
                line: no,
                msg: "edge endpoints are 1-based".into(),
            });
        }
        let e = edges
            .iter()
            .position(|&(jj, ii)| (jj, ii) == (j - 1, i - 1))
            .ok_or(Error::Parse {
                line: no,
                msg: format!("({j}, {i}) is not an edge of the base graph"),
            })?;
        if perms[e].is_some() {
            return Err(Error::Parse {
                line: no,
                msg: format!("edge ({j}, {i}) listed twice"),
            });
        }
        let mut perm = Vec::new();
        for tok in tail.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line: no,
                msg: format!("bad image {tok:?}"),
            })?;
            if v == 0 || v > m {
                return Err(Error::Parse {
                    line: no,
                    msg: format!("image {v} outside 1..={m}"),
                });
            }
            perm.push(v - 1);
        }
        if !is_permutation(&perm, m) {
            return Err(Error::Parse {
                line: no,
                msg: "image list is not a permutation".into(),
            });
        }
        perms[e] = Some(perm);
    }
    let m = degree.ok_or(Error::Parse {
        line: 1,
        msg: "missing 'm = <degree>' header".into(),
    })?;
    let mut full = Vec::with_capacity(edges.len());
    for (e, p) in perms.into_iter().enumerate() {
        let (j, i) = edges[e];
        full.push(p.ok_or(Error::Parse {
            line: 1,
            msg: format!("edge ({}, {}) missing", j + 1, i + 1),
        })?);
    }
    CoverSpec::new(h, m, full)
}

/// Fiber sums of all codewords of the lifted matrix. Entries lie in
/// `0..=degree`. The null space of the lift is enumerated, so `dim_guard`
/// caps its dimension.
pub fn cover_pseudocodewords(spec: &CoverSpec, dim_guard: usize) -> Result<BTreeSet<PseudoVector>> {
    let m = spec.degree;
    let n = spec.base.cols();
    let lifted = spec.lift();
    let mut out = BTreeSet::new();
    for c in lifted.null_space_codewords(dim_guard)? {
        let bits = c.bits();
        let p: Vec<u64> = (0..n)
            .map(|i| (0..m).map(|k| bits.get(i * m + k) as u64).sum())
            .collect();
        out.insert(PseudoVector::new(p));
    }
    Ok(out)
}

/// Limits for the exhaustive cover search.
#[derive(Clone, Copy, Debug)]
pub struct OracleGuards {
    /// Maximum number of CoverSpecs examined across all degrees.
    pub spec_budget: u64,
    /// Null-space dimension cap for each lift.
    pub dim_guard: usize,
    /// Pin spanning-forest edges to the identity permutation. Sound for
    /// fiber sums: relabeling copies along a forest is a graph isomorphism
    /// over the same base, so every pseudocodeword is still reached.
    pub fix_tree_edges: bool,
}

impl Default for OracleGuards {
    fn default() -> Self {
        OracleGuards {
            spec_budget: 1_000_000,
            dim_guard: 20,
            fix_tree_edges: true,
        }
    }
}

/// Result of the exhaustive search. `complete` is false when the spec
/// budget truncated the walk; `vectors` is then a partial union, never
/// silently presented as total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSet {
    pub vectors: BTreeSet<PseudoVector>,
    pub complete: bool,
    pub specs_examined: u64,
}

/// Indices of edges picked greedily as a spanning forest of the Tanner
/// graph, in edge order.
fn spanning_forest_edges(h: &BitMatrix, edges: &[(usize, usize)]) -> Vec<bool> {
    let n = h.cols();
    let mut parent: Vec<usize> = (0..n + h.rows()).collect();
    fn find(parent: &mut Vec<usize>, mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut in_forest = vec![false; edges.len()];
    for (e, &(j, i)) in edges.iter().enumerate() {
        let a = find(&mut parent, i);
        let b = find(&mut parent, n + j);
        if a != b {
            parent[a] = b;
            in_forest[e] = true;
        }
    }
    in_forest
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(m, &mut cur, &mut out);
    out.sort();
    out
}

struct DegreePlan {
    m: usize,
    free_edges: Vec<usize>,
    perm_table: Vec<Vec<usize>>,
    /// (m!)^free, saturated at u128::MAX.
    total: u128,
}

fn degree_plan(h: &BitMatrix, edges: &[(usize, usize)], m: usize, fix_tree: bool) -> DegreePlan {
    let in_forest = spanning_forest_edges(h, edges);
    let free_edges: Vec<usize> = (0..edges.len())
        .filter(|&e| !(fix_tree && in_forest[e]))
        .collect();
    let perm_table = all_permutations(m);
    let fact = factorial(m) as u128;
    let mut total: u128 = 1;
    for _ in &free_edges {
        total = total.checked_mul(fact).unwrap_or(u128::MAX);
    }
    DegreePlan {
        m,
        free_edges,
        perm_table,
        total,
    }
}

/// Builds spec number `idx` of a degree plan: free edges read mixed-radix
/// digits of `idx`, forest edges stay identity.
fn spec_at(h: &BitMatrix, edges: &[(usize, usize)], plan: &DegreePlan, mut idx: u128) -> CoverSpec {
    let fact = plan.perm_table.len() as u128;
    let mut perms: Vec<Vec<usize>> = vec![(0..plan.m).collect(); edges.len()];
    for &e in &plan.free_edges {
        let digit = (idx % fact) as usize;
        idx /= fact;
        perms[e] = plan.perm_table[digit].clone();
    }
    CoverSpec {
        base: h.clone(),
        degree: plan.m,
        perms,
    }
}

fn oracle_impl(
    h: &BitMatrix,
    m_max: usize,
    guards: &OracleGuards,
    parallel: bool,
) -> Result<OracleSet> {
    let edges = edge_list(h);
    let mut vectors = BTreeSet::new();
    let mut specs_examined: u64 = 0;
    let mut complete = true;
    for m in 1..=m_max {
        let plan = degree_plan(h, &edges, m, guards.fix_tree_edges);
        let left = (guards.spec_budget - specs_examined) as u128;
        let take = plan.total.min(left);
        if take < plan.total {
            complete = false;
        }
        let merged = run_specs(h, &edges, &plan, take, guards.dim_guard, parallel)?;
        vectors.extend(merged);
        specs_examined += take as u64;
        if !complete {
            break;
        }
    }
    Ok(OracleSet {
        vectors,
        complete,
        specs_examined,
    })
}

#[cfg(feature = "parallel")]
fn run_specs(
    h: &BitMatrix,
    edges: &[(usize, usize)],
    plan: &DegreePlan,
    take: u128,
    dim_guard: usize,
    parallel: bool,
) -> Result<BTreeSet<PseudoVector>> {
    use rayon::prelude::*;

    if !parallel {
        return run_specs_seq(h, edges, plan, take, dim_guard);
    }
    (0..take as u64)
        .into_par_iter()
        .map(|idx| {
            let spec = spec_at(h, edges, plan, idx as u128);
            cover_pseudocodewords(&spec, dim_guard)
        })
        .try_reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            Ok(a)
        })
}

#[cfg(not(feature = "parallel"))]
fn run_specs(
    h: &BitMatrix,
    edges: &[(usize, usize)],
    plan: &DegreePlan,
    take: u128,
    dim_guard: usize,
    _parallel: bool,
) -> Result<BTreeSet<PseudoVector>> {
    run_specs_seq(h, edges, plan, take, dim_guard)
}

fn run_specs_seq(
    h: &BitMatrix,
    edges: &[(usize, usize)],
    plan: &DegreePlan,
    take: u128,
    dim_guard: usize,
) -> Result<BTreeSet<PseudoVector>> {
    let mut out = BTreeSet::new();
    for idx in 0..take {
        let spec = spec_at(h, edges, plan, idx);
        out.extend(cover_pseudocodewords(&spec, dim_guard)?);
    }
    Ok(out)
}

/// Union of [`cover_pseudocodewords`] over every cover of degree at most
/// `m_max`, walked in a fixed order so truncation by budget is
/// reproducible. Covers are canonicalized by pinning spanning-forest edges
/// to identity unless `guards.fix_tree_edges` is off.
pub fn oracle_pc_set(h: &BitMatrix, m_max: usize, guards: &OracleGuards) -> Result<OracleSet> {
    oracle_impl(h, m_max, guards, true)
}

/// Single-threaded [`oracle_pc_set`], bit-identical output.
pub fn oracle_pc_set_seq(h: &BitMatrix, m_max: usize, guards: &OracleGuards) -> Result<OracleSet> {
    oracle_impl(h, m_max, guards, false)
}
