//! Pseudocodewords and the fundamental cone.
//!
//! A nonnegative integer vector is a pseudocodeword of H exactly when it
//! lies in the fundamental cone of H and every row has an even weighted sum.
//! The cone constraint says, row by row, that no single coordinate may carry
//! more than all the other coordinates of that row combined. The same test
//! can be phrased locally on the Tanner graph (see
//! [`crate::tanner::TannerGraph::p_satisfied`]); both routes are implemented
//! and the test suite holds them equal.
//!
//! All arithmetic is exact: integers widen to 128 bits, and the rational
//! cone test uses arbitrary-precision rationals. No floating point.

use std::collections::BTreeSet;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Codeword};
use crate::tanner::TannerGraph;

/// Nonnegative integer vector indexed by bit position.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PseudoVector(Vec<u64>);

impl PseudoVector {
    pub fn new(entries: Vec<u64>) -> Self {
        PseudoVector(entries)
    }

    pub fn from_bits(bits: &BitVec) -> Self {
        PseudoVector((0..bits.len()).map(|i| bits.get(i) as u64).collect())
    }

    pub fn zeros(len: usize) -> Self {
        PseudoVector(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn max_entry(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Entrywise sum of two vectors of equal length.
    pub fn add(&self, other: &PseudoVector) -> PseudoVector {
        assert_eq!(self.len(), other.len(), "sum of unequal lengths");
        PseudoVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: u64) -> PseudoVector {
        PseudoVector(self.0.iter().map(|v| v * k).collect())
    }
}

impl fmt::Display for PseudoVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PseudoVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PseudoVector({self})")
    }
}

impl FromStr for PseudoVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for tok in s.split_whitespace() {
            let v: u64 = tok.parse().map_err(|_| {
                Error::InvalidInput(format!(
                    "entry {tok:?} is not a nonnegative integer"
                ))
            })?;
            entries.push(v);
        }
        if entries.is_empty() {
            return Err(Error::InvalidInput("empty vector".into()));
        }
        Ok(PseudoVector(entries))
    }
}

/// First failed constraint of a candidate vector, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Coordinate `position` of row `row` exceeds the sum of the row's
    /// other coordinates.
    Cone { row: usize, position: usize },
    /// Row `row` has an odd coordinate sum.
    Parity { row: usize },
}

fn check_len(h: &BitMatrix, len: usize, context: &'static str) -> Result<()> {
    if len != h.cols() {
        return Err(Error::LengthMismatch {
            context,
            expected: h.cols(),
            actual: len,
        });
    }
    Ok(())
}

/// Membership of a nonnegative integer vector in the fundamental cone of H:
/// within every row, twice any coordinate is at most the row total.
pub fn in_fundamental_cone(h: &BitMatrix, v: &[u64]) -> Result<bool> {
    check_len(h, v.len(), "cone argument")?;
    for j in 0..h.rows() {
        let support = h.row(j).support();
        let total: u128 = support.iter().map(|&i| v[i] as u128).sum();
        if support.iter().any(|&i| 2 * v[i] as u128 > total) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rational-vector variant of [`in_fundamental_cone`]; comparisons are exact.
/// Vectors with a negative coordinate are simply outside the cone.
pub fn in_fundamental_cone_rational(h: &BitMatrix, v: &[BigRational]) -> Result<bool> {
    check_len(h, v.len(), "cone argument")?;
    let zero = BigRational::from_integer(0.into());
    if v.iter().any(|x| x < &zero) {
        return Ok(false);
    }
    let two = BigRational::from_integer(2.into());
    for j in 0..h.rows() {
        let support = h.row(j).support();
        let total: BigRational = support.iter().map(|&i| v[i].clone()).sum();
        if support.iter().any(|&i| &two * &v[i] > total) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scans rows in order and reports the first violated constraint, cone
/// inequalities before the parity condition within each row. `None` means
/// the vector is a pseudocodeword of H.
pub fn verify_pseudocodeword(h: &BitMatrix, p: &PseudoVector) -> Result<Option<Violation>> {
    check_len(h, p.len(), "candidate vector")?;
    for j in 0..h.rows() {
        let support = h.row(j).support();
        let total: u128 = support.iter().map(|&i| p.get(i) as u128).sum();
        for &i in &support {
            if 2 * p.get(i) as u128 > total {
                return Ok(Some(Violation::Cone { row: j, position: i }));
            }
        }
        if total % 2 == 1 {
            return Ok(Some(Violation::Parity { row: j }));
        }
    }
    Ok(None)
}

/// Cone membership plus even parity on every row.
pub fn is_pseudocodeword(h: &BitMatrix, p: &PseudoVector) -> Result<bool> {
    Ok(verify_pseudocodeword(h, p)?.is_none())
}

/// Same decision through the Tanner graph: every check must be satisfied
/// locally. Kept as an independent route; the tests pin both routes equal.
pub fn is_pseudocodeword_by_checks(h: &BitMatrix, p: &PseudoVector) -> Result<bool> {
    let g = TannerGraph::from_matrix(h);
    for j in 0..g.n_checks() {
        if !g.p_satisfied(j, p.entries())? {
            return Ok(false);
        }
    }
    Ok(true)
}

struct EnumCtx<'a> {
    bound: u64,
    order: Vec<usize>,
    col_rows: Vec<Vec<usize>>,
    row_support: Vec<Vec<usize>>,
    nodes: &'a AtomicU64,
    budget: u64,
}

struct EnumState {
    values: Vec<u64>,
    assigned: Vec<bool>,
    row_total: Vec<u128>,
    row_done: Vec<usize>,
    local_nodes: u64,
}

impl EnumState {
    fn fresh(n: usize, rows: usize) -> Self {
        EnumState {
            values: vec![0; n],
            assigned: vec![false; n],
            row_total: vec![0; rows],
            row_done: vec![0; rows],
            local_nodes: 0,
        }
    }
}

impl EnumCtx<'_> {
    /// Applies `col = v` and reports whether every touched row stays feasible.
    /// The mutation is always applied in full so `unassign` mirrors it.
    fn assign(&self, st: &mut EnumState, col: usize, v: u64) -> bool {
        st.values[col] = v;
        st.assigned[col] = true;
        let mut ok = true;
        for &j in &self.col_rows[col] {
            st.row_total[j] += v as u128;
            st.row_done[j] += 1;
        }
        for &j in &self.col_rows[col] {
            let support = &self.row_support[j];
            let done = st.row_done[j];
            let total = st.row_total[j];
            if done == support.len() {
                if total % 2 == 1 {
                    ok = false;
                    break;
                }
                let max = support
                    .iter()
                    .map(|&i| st.values[i] as u128)
                    .max()
                    .unwrap_or(0);
                if 2 * max > total {
                    ok = false;
                    break;
                }
            } else {
                // Even with every open coordinate at the bound, the largest
                // assigned value must stay coverable.
                let open = (support.len() - done) as u128;
                let max = support
                    .iter()
                    .filter(|&&i| st.assigned[i])
                    .map(|&i| st.values[i] as u128)
                    .max()
                    .unwrap_or(0);
                if 2 * max > total + open * self.bound as u128 {
                    ok = false;
                    break;
                }
            }
        }
        ok
    }

    fn unassign(&self, st: &mut EnumState, col: usize, v: u64) {
        for &j in &self.col_rows[col] {
            st.row_total[j] -= v as u128;
            st.row_done[j] -= 1;
        }
        st.assigned[col] = false;
        st.values[col] = 0;
    }

    fn tick(&self, st: &mut EnumState) -> Result<()> {
        st.local_nodes += 1;
        if st.local_nodes % 1024 == 0 {
            let seen = self.nodes.fetch_add(1024, Ordering::Relaxed) + 1024;
            if seen > self.budget {
                return Err(Error::BudgetExceeded {
                    search: "pseudocodeword enumeration",
                    budget: self.budget,
                });
            }
        }
        Ok(())
    }

    fn flush(&self, st: &mut EnumState) -> Result<()> {
        let rest = st.local_nodes % 1024;
        if rest > 0 {
            let seen = self.nodes.fetch_add(rest, Ordering::Relaxed) + rest;
            if seen > self.budget {
                return Err(Error::BudgetExceeded {
                    search: "pseudocodeword enumeration",
                    budget: self.budget,
                });
            }
        }
        Ok(())
    }

    fn dfs(&self, st: &mut EnumState, depth: usize, out: &mut BTreeSet<PseudoVector>) -> Result<()> {
        if depth == self.order.len() {
            out.insert(PseudoVector::new(st.values.clone()));
            return Ok(());
        }
        let col = self.order[depth];
        for v in 0..=self.bound {
            self.tick(st)?;
            if self.assign(st, col, v) {
                let r = self.dfs(st, depth + 1, out);
                if r.is_err() {
                    self.unassign(st, col, v);
                    return r;
                }
            }
            self.unassign(st, col, v);
        }
        Ok(())
    }
}

/// Columns ordered so rows complete as early as possible: next is the column
/// finishing the most started rows, then the one touching the most rows.
fn column_order(h: &BitMatrix) -> Vec<usize> {
    let n = h.cols();
    let supports: Vec<Vec<usize>> = (0..h.rows()).map(|j| h.row(j).support()).collect();
    let mut chosen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for i in 0..n {
            if chosen[i] {
                continue;
            }
            let mut completes = 0;
            let mut touches_started = 0;
            let mut touches = 0;
            for sup in &supports {
                if !sup.contains(&i) {
                    continue;
                }
                touches += 1;
                let placed = sup.iter().filter(|&&c| chosen[c]).count();
                if placed > 0 {
                    touches_started += 1;
                }
                if placed + 1 == sup.len() {
                    completes += 1;
                }
            }
            let key = (completes, touches_started, touches, n - i);
            if best.map_or(true, |b| key > b) {
                best = Some(key);
            }
        }
        let (.., rank) = best.unwrap();
        let i = n - rank;
        chosen[i] = true;
        order.push(i);
    }
    order
}

fn enum_ctx<'a>(h: &BitMatrix, bound: u64, nodes: &'a AtomicU64, budget: u64) -> EnumCtx<'a> {
    let n = h.cols();
    let row_support: Vec<Vec<usize>> = (0..h.rows()).map(|j| h.row(j).support()).collect();
    let mut col_rows = vec![Vec::new(); n];
    for (j, sup) in row_support.iter().enumerate() {
        for &i in sup {
            col_rows[i].push(j);
        }
    }
    EnumCtx {
        bound,
        order: column_order(h),
        col_rows,
        row_support,
        nodes,
        budget,
    }
}

/// All pseudocodewords of H with entries in `0..=bound`, by depth-first
/// search over coordinates with parity and cone pruning. Exhaustive up to the
/// node budget; exceeding the budget is an error, never a truncated answer.
pub fn enumerate_pseudocodewords_seq(
    h: &BitMatrix,
    bound: u64,
    node_budget: u64,
) -> Result<BTreeSet<PseudoVector>> {
    let nodes = AtomicU64::new(0);
    let ctx = enum_ctx(h, bound, &nodes, node_budget);
    let mut st = EnumState::fresh(h.cols(), h.rows());
    let mut out = BTreeSet::new();
    ctx.dfs(&mut st, 0, &mut out)?;
    ctx.flush(&mut st)?;
    Ok(out)
}

/// Parallel version of [`enumerate_pseudocodewords_seq`]: the first one or
/// two coordinates in search order are split across worker tasks. Falls back
/// to the sequential path without the `parallel` feature.
pub fn enumerate_pseudocodewords(
    h: &BitMatrix,
    bound: u64,
    node_budget: u64,
) -> Result<BTreeSet<PseudoVector>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;

        let n = h.cols();
        if n < 2 || bound == 0 {
            return enumerate_pseudocodewords_seq(h, bound, node_budget);
        }
        let nodes = AtomicU64::new(0);
        let ctx = enum_ctx(h, bound, &nodes, node_budget);
        let width = bound + 1;
        let tasks: Vec<(u64, u64)> = (0..width * width)
            .map(|t| (t / width, t % width))
            .collect();
        let sets = tasks
            .par_iter()
            .map(|&(v0, v1)| {
                let mut st = EnumState::fresh(h.cols(), h.rows());
                let mut out = BTreeSet::new();
                let c0 = ctx.order[0];
                let c1 = ctx.order[1];
                st.local_nodes += 2;
                if ctx.assign(&mut st, c0, v0) && {
                    let inner = ctx.assign(&mut st, c1, v1);
                    if !inner {
                        ctx.unassign(&mut st, c1, v1);
                    }
                    inner
                } {
                    ctx.dfs(&mut st, 2, &mut out)?;
                }
                ctx.flush(&mut st)?;
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut merged = BTreeSet::new();
        for s in sets {
            merged.extend(s);
        }
        Ok(merged)
    }
    #[cfg(not(feature = "parallel"))]
    {
        enumerate_pseudocodewords_seq(h, bound, node_budget)
    }
}

/// Witness that a vector is a nonnegative integer combination of codewords.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionCertificate {
    /// Codewords with their (nonzero) multiplicities; the zero vector is the
    /// empty combination.
    pub terms: Vec<(Codeword, u64)>,
}

impl ReductionCertificate {
    pub fn coefficient_sum(&self) -> u64 {
        self.terms.iter().map(|(_, k)| k).sum()
    }

    /// Recomputes the combination.
    pub fn evaluate(&self, len: usize) -> PseudoVector {
        let mut out = vec![0u64; len];
        for (word, k) in &self.terms {
            for i in word.bits().support() {
                out[i] += k;
            }
        }
        PseudoVector::new(out)
    }

    pub fn verifies(&self, p: &PseudoVector) -> bool {
        self.evaluate(p.len()) == *p
    }
}

/// Searches for nonnegative integer coefficients expressing `p` as a
/// combination of the given codewords. Complete: `None` means no such
/// combination exists. The search pivots on the unsatisfied coordinate with
/// the fewest usable codewords and memoizes failed remainders.
pub fn is_reducible(
    p: &PseudoVector,
    words: &[Codeword],
    node_budget: u64,
) -> Result<Option<ReductionCertificate>> {
    for w in words {
        if w.len() != p.len() {
            return Err(Error::LengthMismatch {
                context: "codeword",
                expected: p.len(),
                actual: w.len(),
            });
        }
    }
    // Distinct nonzero codewords only; duplicates add nothing but branches.
    let mut pool: Vec<&Codeword> = words.iter().filter(|w| !w.is_zero()).collect();
    pool.sort();
    pool.dedup();
    let supports: Vec<Vec<usize>> = pool.iter().map(|w| w.bits().support()).collect();
    let mut covers = vec![Vec::new(); p.len()];
    for (k, sup) in supports.iter().enumerate() {
        for &i in sup {
            covers[i].push(k);
        }
    }

    struct Search<'a> {
        supports: &'a [Vec<usize>],
        covers: &'a [Vec<usize>],
        memo: HashSet<Vec<u64>>,
        nodes: u64,
        budget: u64,
    }

    impl Search<'_> {
        fn run(&mut self, remaining: &mut Vec<u64>, counts: &mut Vec<u64>) -> Result<bool> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    search: "reducibility search",
                    budget: self.budget,
                });
            }
            // Pivot: unsatisfied coordinate with the fewest usable codewords.
            let mut pivot: Option<(usize, usize)> = None;
            for (i, &r) in remaining.iter().enumerate() {
                if r == 0 {
                    continue;
                }
                let usable = self.covers[i]
                    .iter()
                    .filter(|&&k| self.supports[k].iter().all(|&l| remaining[l] >= 1))
                    .count();
                if usable == 0 {
                    return Ok(false);
                }
                if pivot.map_or(true, |(_, best)| usable < best) {
                    pivot = Some((i, usable));
                }
            }
            let Some((pivot, _)) = pivot else {
                return Ok(true); // remainder is zero
            };
            if self.memo.contains(remaining.as_slice()) {
                return Ok(false);
            }
            let candidates: Vec<usize> = self.covers[pivot]
                .iter()
                .copied()
                .filter(|&k| self.supports[k].iter().all(|&l| remaining[l] >= 1))
                .collect();
            for k in candidates {
                for &l in &self.supports[k] {
                    remaining[l] -= 1;
                }
                counts[k] += 1;
                if self.run(remaining, counts)? {
                    return Ok(true);
                }
                counts[k] -= 1;
                for &l in &self.supports[k] {
                    remaining[l] += 1;
                }
            }
            self.memo.insert(remaining.clone());
            Ok(false)
        }
    }

    let mut search = Search {
        supports: &supports,
        covers: &covers,
        memo: HashSet::new(),
        nodes: 0,
        budget: node_budget,
    };
    let mut remaining = p.entries().to_vec();
    let mut counts = vec![0u64; pool.len()];
    if search.run(&mut remaining, &mut counts)? {
        let mut terms: Vec<(Codeword, u64)> = counts
            .into_iter()
            .enumerate()
            .filter(|&(_, k)| k > 0)
            .map(|(idx, k)| ((*pool[idx]).clone(), k))
            .collect();
        terms.sort();
        Ok(Some(ReductionCertificate { terms }))
    } else {
        Ok(None)
    }
}

/// Guards for enumeration-backed searches.
#[derive(Clone, Copy, Debug)]
pub struct EnumGuards {
    /// Cap on the null space dimension before codeword enumeration.
    pub dim_guard: usize,
    /// Cap on search nodes for enumeration and reducibility combined.
    pub node_budget: u64,
}

impl Default for EnumGuards {
    fn default() -> Self {
        EnumGuards {
            dim_guard: 20,
            node_budget: 50_000_000,
        }
    }
}

/// Pseudocodewords with entries in `0..=bound` that are not nonnegative
/// integer combinations of codewords.
pub fn irreducible_pseudocodewords(
    h: &BitMatrix,
    bound: u64,
    guards: &EnumGuards,
) -> Result<BTreeSet<PseudoVector>> {
    let words = h.null_space_codewords(guards.dim_guard)?;
    let all = enumerate_pseudocodewords(h, bound, guards.node_budget)?;
    let mut out = BTreeSet::new();
    for p in all {
        if is_reducible(&p, &words, guards.node_budget)?.is_none() {
            out.insert(p);
        }
    }
    Ok(out)
}

/// First irreducible pseudocodeword with entries in `0..=bound`, in
/// lexicographic order, if any.
pub fn first_irreducible_pseudocodeword(
    h: &BitMatrix,
    bound: u64,
    guards: &EnumGuards,
) -> Result<Option<PseudoVector>> {
    let words = h.null_space_codewords(guards.dim_guard)?;
    let all = enumerate_pseudocodewords(h, bound, guards.node_budget)?;
    for p in all {
        if is_reducible(&p, &words, guards.node_budget)?.is_none() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}
