//! Decoders and channel simulation.
//!
//! Log-likelihood ratios follow the convention `llr_i > 0` favors bit value
//! 0. Exhaustive maximum-likelihood decoding minimizes the sum of llr over
//! the support of a codeword; min-sum is the usual flooding message passer,
//! which on a cycle-free graph settles to the ML answer when no input ties
//! occur. Min-sum failures on cyclic graphs tend to align with irreducible
//! pseudocodewords, so the trial harness can report the nearest one.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Codeword};
use crate::pseudo::PseudoVector;

/// Exhaustive ML decision: the codeword minimizing the llr sum over its
/// support. Ties go to the lexicographically smallest codeword, because
/// enumeration is sorted and only strict improvements replace the leader.
pub fn ml_decode(h: &BitMatrix, llr: &[f64], dim_guard: usize) -> Result<Codeword> {
    if llr.len() != h.cols() {
        return Err(Error::LengthMismatch {
            context: "llr vector",
            expected: h.cols(),
            actual: llr.len(),
        });
    }
    let words = h.null_space_codewords(dim_guard)?;
    let mut best: Option<(f64, Codeword)> = None;
    for c in words {
        let score: f64 = c.bits().support().iter().map(|&i| llr[i]).sum();
        match &best {
            Some((s, _)) if score >= *s => {}
            _ => best = Some((score, c)),
        }
    }
    Ok(best.expect("null space contains the zero word").1)
}

/// Flooding min-sum settings.
#[derive(Clone, Copy, Debug)]
pub struct MinSumConfig {
    pub max_iters: usize,
    /// Message magnitudes are clamped to this value.
    pub clip: f64,
    /// Fraction of the previous check message blended into the new one;
    /// 0.0 is plain min-sum.
    pub damping: f64,
}

impl Default for MinSumConfig {
    fn default() -> Self {
        MinSumConfig {
            max_iters: 50,
            clip: 50.0,
            damping: 0.0,
        }
    }
}

/// What the message passer produced.
#[derive(Clone, Debug)]
pub struct DecodeOutcome {
    /// Hard decision per bit; `soft < 0` reads as 1, ties as 0.
    pub hard: BitVec,
    /// True when the hard decision satisfied every check, stopping early.
    pub converged: bool,
    /// Iterations executed.
    pub iterations: usize,
    /// The hard decision as a codeword, when it is one.
    pub codeword: Option<Codeword>,
    /// Final per-bit soft values.
    pub soft: Vec<f64>,
}

/// Flooding min-sum. Degree-one checks push their bit to 0 at full clip
/// strength; degree-zero checks are inert.
pub fn min_sum_decode(h: &BitMatrix, llr: &[f64], config: &MinSumConfig) -> Result<DecodeOutcome> {
    if llr.len() != h.cols() {
        return Err(Error::LengthMismatch {
            context: "llr vector",
            expected: h.cols(),
            actual: llr.len(),
        });
    }
    if config.max_iters == 0 {
        return Err(Error::InvalidInput("max_iters must be positive".into()));
    }
    if !(config.clip > 0.0) {
        return Err(Error::InvalidInput("clip must be positive".into()));
    }
    if !(0.0..1.0).contains(&config.damping) {
        return Err(Error::InvalidInput("damping must lie in [0, 1)".into()));
    }
    let n = h.cols();
    let clip = config.clip;
    let clamp = |x: f64| x.clamp(-clip, clip);

    // Edge-indexed messages, row-major edge order.
    let mut check_edges: Vec<Vec<usize>> = Vec::with_capacity(h.rows());
    let mut edge_bit: Vec<usize> = Vec::new();
    let mut bit_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for j in 0..h.rows() {
        let mut es = Vec::new();
        for i in h.row(j).support() {
            let e = edge_bit.len();
            edge_bit.push(i);
            bit_edges[i].push(e);
            es.push(e);
        }
        check_edges.push(es);
    }
    let n_edges = edge_bit.len();
    let mut eps = vec![0.0f64; n_edges];
    let mut lambda = vec![0.0f64; n_edges];
    let mut soft = llr.to_vec();
    let mut hard = BitVec::zeros(n);
    let mut converged = false;
    let mut iterations = 0;

    for _ in 0..config.max_iters {
        iterations += 1;
        for i in 0..n {
            let total: f64 = llr[i] + bit_edges[i].iter().map(|&e| eps[e]).sum::<f64>();
            for &e in &bit_edges[i] {
                lambda[e] = clamp(total - eps[e]);
            }
        }
        for es in &check_edges {
            if es.is_empty() {
                continue;
            }
            if es.len() == 1 {
                let e = es[0];
                eps[e] = clamp((1.0 - config.damping) * clip + config.damping * eps[e]);
                continue;
            }
            // Two smallest magnitudes and the overall sign product give
            // every extrinsic message of this check.
            let mut min1 = f64::INFINITY;
            let mut min2 = f64::INFINITY;
            let mut arg1 = usize::MAX;
            let mut neg = 0usize;
            for &e in es {
                let mag = lambda[e].abs();
                if lambda[e] < 0.0 {
                    neg += 1;
                }
                if mag < min1 {
                    min2 = min1;
                    min1 = mag;
                    arg1 = e;
                } else if mag < min2 {
                    min2 = mag;
                }
            }
            for &e in es {
                let others_neg = neg - usize::from(lambda[e] < 0.0);
                let sign = if others_neg % 2 == 0 { 1.0 } else { -1.0 };
                let mag = if e == arg1 { min2 } else { min1 };
                let fresh = sign * mag;
                eps[e] = clamp((1.0 - config.damping) * fresh + config.damping * eps[e]);
            }
        }
        for i in 0..n {
            soft[i] = llr[i] + bit_edges[i].iter().map(|&e| eps[e]).sum::<f64>();
            hard.set(i, soft[i] < 0.0);
        }
        if h.syndrome(&hard)?.is_zero() {
            converged = true;
            break;
        }
    }

    let codeword = Codeword::checked(h, hard.clone()).ok();
    Ok(DecodeOutcome {
        hard,
        converged,
        iterations,
        codeword,
        soft,
    })
}

/// Passes `word` through a binary symmetric channel with crossover `p` and
/// returns the received word plus its llr vector, entries
/// `±ln((1-p)/p)`. Reproducible from the seed.
pub fn bsc_channel(word: &BitVec, p: f64, seed: u64) -> Result<(BitVec, Vec<f64>)> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::InvalidCrossover { p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mag = ((1.0 - p) / p).ln();
    let mut received = word.clone();
    let mut llr = Vec::with_capacity(word.len());
    for i in 0..word.len() {
        if rng.gen_bool(p) {
            received.set(i, !received.get(i));
        }
        llr.push(if received.get(i) { -mag } else { mag });
    }
    Ok((received, llr))
}

/// Index and cosine similarity of the list vector best aligned with the
/// ones-leaning part of a soft output, `max(0, -soft)`. `None` when that
/// part is zero or the list has no nonzero vector.
pub fn nearest_pseudocodeword(soft: &[f64], list: &[PseudoVector]) -> Option<(usize, f64)> {
    let err: Vec<f64> = soft.iter().map(|&s| (-s).max(0.0)).collect();
    let err_norm = err.iter().map(|x| x * x).sum::<f64>().sqrt();
    if err_norm == 0.0 {
        return None;
    }
    let mut best: Option<(usize, f64)> = None;
    for (k, p) in list.iter().enumerate() {
        if p.len() != soft.len() {
            continue;
        }
        let p_norm = (p.entries().iter().map(|&v| (v * v) as f64).sum::<f64>()).sqrt();
        if p_norm == 0.0 {
            continue;
        }
        let dot: f64 = p
            .entries()
            .iter()
            .zip(&err)
            .map(|(&v, &e)| v as f64 * e)
            .sum();
        let cos = dot / (err_norm * p_norm);
        if best.map_or(true, |(_, b)| cos > b) {
            best = Some((k, cos));
        }
    }
    best
}

/// One simulated transmission.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub seed: u64,
    pub p: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Hard output equals the transmitted word.
    pub correct: bool,
    /// Filled on non-convergence when a pseudocodeword list is supplied.
    pub nearest_pc: Option<usize>,
}

fn run_one(
    h: &BitMatrix,
    word: &BitVec,
    p: f64,
    seed: u64,
    config: &MinSumConfig,
    pc_list: &[PseudoVector],
) -> Result<TrialRecord> {
    let (_, llr) = bsc_channel(word, p, seed)?;
    let out = min_sum_decode(h, &llr, config)?;
    let correct = out.hard == *word;
    let nearest_pc = if !out.converged {
        nearest_pseudocodeword(&out.soft, pc_list).map(|(k, _)| k)
    } else {
        None
    };
    Ok(TrialRecord {
        seed,
        p,
        converged: out.converged,
        iterations: out.iterations,
        correct,
        nearest_pc,
    })
}

/// Runs `trials` independent transmissions of `word`, with trial `t` seeded
/// by `base_seed + t`. Records come back in trial order regardless of the
/// execution schedule.
pub fn run_bsc_trials(
    h: &BitMatrix,
    word: &BitVec,
    p: f64,
    trials: usize,
    base_seed: u64,
    config: &MinSumConfig,
    pc_list: &[PseudoVector],
) -> Result<Vec<TrialRecord>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials)
            .into_par_iter()
            .map(|t| run_one(h, word, p, base_seed.wrapping_add(t as u64), config, pc_list))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_bsc_trials_seq(h, word, p, trials, base_seed, config, pc_list)
    }
}

/// Single-threaded [`run_bsc_trials`], identical records.
pub fn run_bsc_trials_seq(
    h: &BitMatrix,
    word: &BitVec,
    p: f64,
    trials: usize,
    base_seed: u64,
    config: &MinSumConfig,
    pc_list: &[PseudoVector],
) -> Result<Vec<TrialRecord>> {
    (0..trials)
        .map(|t| run_one(h, word, p, base_seed.wrapping_add(t as u64), config, pc_list))
        .collect()
}
