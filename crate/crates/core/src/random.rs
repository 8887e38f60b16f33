//! Seeded generators for property tests and consistency sweeps.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

/// Decodes a Prüfer sequence over labels `0..v` into the edges of the
/// corresponding labeled tree. Requires `seq.len() == v - 2`.
fn prufer_edges(seq: &[usize], v: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; v];
    for &a in seq {
        degree[a] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..v).filter(|&x| degree[x] == 1).collect();
    let mut edges = Vec::with_capacity(v - 1);
    for &a in seq {
        let l = *leaves.iter().next().expect("leaf pool never empties");
        leaves.remove(&l);
        edges.push((l, a));
        degree[a] -= 1;
        if degree[a] == 1 {
            leaves.insert(a);
        }
    }
    let mut rest = leaves.into_iter();
    let x = rest.next().expect("two leaves remain");
    let y = rest.next().expect("two leaves remain");
    edges.push((x, y));
    edges
}

/// Samples a tree representation: an `r x n` matrix whose Tanner graph is a
/// tree with every check degree at least 2. Uniform labeled trees on
/// `r + n` vertices are drawn and rejected until the bipartition lands
/// checks on `0..r` and bits on `r..r+n` with the degree condition met.
pub fn tree_representation<R: Rng>(rng: &mut R, r: usize, n: usize) -> Result<BitMatrix> {
    if r == 0 || n < r + 1 {
        return Err(Error::InvalidInput(format!(
            "tree representation needs r >= 1 and n >= r + 1, got r = {r}, n = {n}"
        )));
    }
    let v = r + n;
    'attempt: for _ in 0..2_000_000u32 {
        let seq: Vec<usize> = (0..v - 2).map(|_| rng.gen_range(0..v)).collect();
        let edges = prufer_edges(&seq, v);
        let mut check_degree = vec![0usize; r];
        for &(a, b) in &edges {
            let (check, bit) = if a < r { (a, b) } else { (b, a) };
            if check >= r || bit < r {
                continue 'attempt;
            }
            check_degree[check] += 1;
        }
        if check_degree.iter().any(|&d| d < 2) {
            continue;
        }
        let mut m = BitMatrix::zeros(r, n);
        for (a, b) in edges {
            let (check, bit) = if a < r { (a, b) } else { (b, a) };
            m.set(check, bit - r, true);
        }
        return Ok(m);
    }
    Err(Error::InvalidInput(format!(
        "rejection sampling found no admissible tree for r = {r}, n = {n}"
    )))
}

/// An `r x n` matrix with independent Bernoulli(`density`) entries.
pub fn bit_matrix<R: Rng>(rng: &mut R, r: usize, n: usize, density: f64) -> Result<BitMatrix> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidInput(format!(
            "density must lie in [0, 1], got {density}"
        )));
    }
    let mut m = BitMatrix::zeros(r, n);
    for j in 0..r {
        for i in 0..n {
            if rng.gen_bool(density) {
                m.set(j, i, true);
            }
        }
    }
    Ok(m)
}

/// A uniformly-ish random invertible `r x r` matrix, drawn by rejection.
pub fn invertible<R: Rng>(rng: &mut R, r: usize) -> Result<BitMatrix> {
    if r == 0 {
        return Err(Error::InvalidInput("invertible matrix needs r >= 1".into()));
    }
    loop {
        let m = bit_matrix(rng, r, r, 0.5)?;
        if m.rank() == r {
            return Ok(m);
        }
    }
}

fn random_combination_rows<R: Rng>(
    rng: &mut R,
    h: &BitMatrix,
    extra: usize,
) -> Result<Vec<BitVec>> {
    let r = h.rows();
    let mut out = Vec::with_capacity(extra);
    for _ in 0..extra {
        let indices: Vec<usize> = loop {
            let picked: Vec<usize> = (0..r).filter(|_| rng.gen_bool(0.5)).collect();
            if !picked.is_empty() {
                break picked;
            }
        };
        out.push(h.row_sum(&indices)?);
    }
    Ok(out)
}

/// Appends `extra` random nonzero combinations of `h`'s rows; the original
/// rows stay in place, so the row space is unchanged.
pub fn extend_with_redundant_rows<R: Rng>(
    rng: &mut R,
    h: &BitMatrix,
    extra: usize,
) -> Result<BitMatrix> {
    let mut rows: Vec<BitVec> = (0..h.rows()).map(|j| h.row(j).clone()).collect();
    rows.extend(random_combination_rows(rng, h, extra)?);
    BitMatrix::from_rows(rows)
}

/// A random invertible row transform of `h` with `extra` random nonzero row
/// combinations appended. Same row space as `h`, usually very different
/// Tanner graph.
pub fn redundant_extension<R: Rng>(rng: &mut R, h: &BitMatrix, extra: usize) -> Result<BitMatrix> {
    let r = h.rows();
    let t = invertible(rng, r)?;
    let mut rows = Vec::with_capacity(r + extra);
    for j in 0..r {
        rows.push(h.row_sum(&t.row(j).support())?);
    }
    rows.extend(random_combination_rows(rng, h, extra)?);
    BitMatrix::from_rows(rows)
}
