//! Deciding geometric perfection.
//!
//! A representation H of a code C is geometrically perfect when every
//! pseudocodeword of H is a nonnegative integer combination of codewords.
//! For codes that admit a cycle-free representation this is decidable: H is
//! geometrically perfect exactly when some subset of its rows spans the same
//! row space and has a forest Tanner graph. When no such subset exists, an
//! explicit irreducible witness pseudocodeword can be constructed from any
//! cycle-free reference H' by picking a pivotal check f of T(H') of degree d
//! and assigning 2d to the bits of one component of T(H') minus f and 2 to
//! all other bits.
//!
//! Codes with no cycle-free representation at all fall outside this
//! machinery and are refused with [`Error::OutOfHypothesis`].

use crate::error::{Error, Result};
use crate::gf2::{Basis, BitMatrix, BitVec};
use crate::pseudo::{self, PseudoVector};
use crate::tanner::{prune_degree_one_checks, TannerGraph, Vertex};

/// How a cycle-free reference came to exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefProvenance {
    Supplied,
    Discovered,
}

/// A forest representation H' of the code under study. Constructing one
/// validates the forest property and row-space equality, so holding a value
/// of this type is proof the code satisfies the cycle-free hypothesis.
#[derive(Clone, Debug)]
pub struct CycleFreeReference {
    matrix: BitMatrix,
    provenance: RefProvenance,
}

impl CycleFreeReference {
    /// Wraps a user-supplied H', checking it against a representation of
    /// the intended code.
    pub fn new(matrix: &BitMatrix, code_of: &BitMatrix) -> Result<Self> {
        if matrix.cols() != code_of.cols() {
            return Err(Error::LengthMismatch {
                context: "reference columns",
                expected: code_of.cols(),
                actual: matrix.cols(),
            });
        }
        if !TannerGraph::from_matrix(matrix).is_forest() {
            return Err(Error::InvalidReference(
                "reference Tanner graph has a cycle".into(),
            ));
        }
        if !matrix.row_space_equal(code_of) {
            return Err(Error::InvalidReference(
                "reference does not represent the same code".into(),
            ));
        }
        Ok(CycleFreeReference {
            matrix: matrix.clone(),
            provenance: RefProvenance::Supplied,
        })
    }

    fn discovered(matrix: BitMatrix) -> Self {
        CycleFreeReference {
            matrix,
            provenance: RefProvenance::Discovered,
        }
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn provenance(&self) -> RefProvenance {
        self.provenance
    }
}

/// Search limits. Defaults are sized for desk-scale inputs.
#[derive(Clone, Copy, Debug)]
pub struct PerfectGuards {
    /// Row-subset search refuses matrices with more rows than this.
    pub row_guard: usize,
    /// Representation search refuses dual dimensions above this.
    pub dual_dim_guard: usize,
    /// Node cap for the representation search.
    pub rep_node_budget: u64,
    /// Irreducibility cross-check runs when the code dimension is at most
    /// this; above it the check is skipped, not approximated.
    pub crosscheck_dim: usize,
    /// Node cap for the irreducibility cross-check.
    pub crosscheck_budget: u64,
}

impl Default for PerfectGuards {
    fn default() -> Self {
        PerfectGuards {
            row_guard: 24,
            dual_dim_guard: 16,
            rep_node_budget: 10_000_000,
            crosscheck_dim: 12,
            crosscheck_budget: 1 << 22,
        }
    }
}

/// Outcome of the decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerfectionVerdict {
    /// These rows alone represent the code and form a forest. Empty for the
    /// all-zero matrix, whose code needs no checks at all.
    Perfect { kept_rows: Vec<usize> },
    /// `witness` is a pseudocodeword of H that no cycle-free representation
    /// accepts, hence not an integer combination of codewords.
    Imperfect {
        witness: PseudoVector,
        /// Row of the reference matrix at which the witness fails, 0-based.
        pivotal_check: usize,
        /// Position of the boosted component in the component list of
        /// T(reference) minus the pivotal check.
        component: usize,
        /// Columns assigned the boosted value, 0-based.
        component_bits: Vec<usize>,
    },
}

fn mask_indices(mask: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

fn subset_is_forest_rep(h: &BitMatrix, rows: &[usize], want_rank: usize) -> bool {
    let sub = match h.select_rows(rows) {
        Ok(s) => s,
        Err(_) => return false,
    };
    sub.rank() == want_rank && TannerGraph::from_matrix(&sub).is_forest()
}

/// Smallest row subset spanning the row space of `h` whose Tanner graph is
/// a forest, or `None` when no subset works. Only subsets of size rank(h)
/// are tried: any larger spanning forest subset contains an independent
/// spanning one, and subgraphs of forests stay forests. Masks are walked in
/// increasing numeric order, so the answer is deterministic.
pub fn find_cycle_free_subrepresentation(
    h: &BitMatrix,
    row_guard: usize,
) -> Result<Option<Vec<usize>>> {
    let r = h.rows();
    if r > row_guard.min(63) {
        return Err(Error::SubsetGuardExceeded {
            actual: r,
            guard: row_guard.min(63),
        });
    }
    let rank = h.rank();
    if rank == 0 {
        return Ok(Some(Vec::new()));
    }
    let n = h.cols();
    let edge_budget = rank + n - 1;
    let weights: Vec<usize> = (0..r).map(|j| h.row_weight(j)).collect();

    // Gosper's hack: all masks with `rank` bits, ascending.
    let mut masks = Vec::new();
    let mut mask: u64 = (1u64 << rank) - 1;
    let limit: u64 = 1u64 << r;
    while mask < limit {
        let total: usize = mask_indices(mask).iter().map(|&j| weights[j]).sum();
        // A forest on rank + n vertices has at most rank + n - 1 edges.
        if total <= edge_budget {
            masks.push(mask);
        }
        let c = mask & mask.wrapping_neg();
        let rr = mask + c;
        mask = (((rr ^ mask) >> 2) / c) | rr;
    }

    let hit = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            masks
                .par_iter()
                .find_first(|&&m| subset_is_forest_rep(h, &mask_indices(m), rank))
                .copied()
        }
        #[cfg(not(feature = "parallel"))]
        {
            masks
                .iter()
                .find(|&&m| subset_is_forest_rep(h, &mask_indices(m), rank))
                .copied()
        }
    };
    Ok(hit.map(mask_indices))
}

/// All nonzero vectors of the row space of `h`, sorted by weight then
/// lexicographically.
fn dual_vectors_sorted(h: &BitMatrix, dim_guard: usize) -> Result<Vec<BitVec>> {
    let mut basis = Basis::new();
    let mut basis_rows: Vec<BitVec> = Vec::new();
    for row in h.row_iter() {
        if basis.insert(row.clone()) {
            basis_rows.push(row.clone());
        }
    }
    let k = basis_rows.len();
    if k > dim_guard {
        return Err(Error::DualGuardExceeded {
            dim: k,
            guard: dim_guard,
        });
    }
    let mut out = Vec::with_capacity((1usize << k) - 1);
    for mask in 1u64..(1u64 << k) {
        let mut v = BitVec::zeros(h.cols());
        for (t, row) in basis_rows.iter().enumerate() {
            if mask >> t & 1 == 1 {
                v.xor_assign(row);
            }
        }
        out.push(v);
    }
    out.sort_by_key(|v| (v.weight(), v.clone()));
    Ok(out)
}

/// Finds a forest representation of the code of `h` by depth-first search
/// over the row space, lightest vectors first, or proves there is none.
/// A matrix that is already a forest is returned as it stands.
pub fn find_cycle_free_representation(
    h: &BitMatrix,
    guards: &PerfectGuards,
) -> Result<Option<CycleFreeReference>> {
    if TannerGraph::from_matrix(h).is_forest() {
        return Ok(Some(CycleFreeReference::discovered(h.clone())));
    }
    let k = h.rank();
    let n = h.cols();
    let candidates = dual_vectors_sorted(h, guards.dual_dim_guard)?;
    let weights: Vec<usize> = candidates.iter().map(|v| v.weight()).collect();
    let edge_budget = k + n - 1;

    struct Dfs<'a> {
        candidates: &'a [BitVec],
        weights: &'a [usize],
        k: usize,
        edge_budget: usize,
        nodes: u64,
        budget: u64,
    }

    impl Dfs<'_> {
        fn run(
            &mut self,
            from: usize,
            chosen: &mut Vec<BitVec>,
            basis: &Basis,
            weight_so_far: usize,
        ) -> Result<Option<Vec<BitVec>>> {
            if chosen.len() == self.k {
                return Ok(Some(chosen.clone()));
            }
            let need = self.k - chosen.len();
            for idx in from..self.candidates.len() {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(Error::BudgetExceeded {
                        search: "representation search",
                        budget: self.budget,
                    });
                }
                // Candidates are weight-sorted: if even `need` copies of the
                // lightest remaining weight overshoot, every branch from
                // here does too.
                if weight_so_far + need * self.weights[idx] > self.edge_budget {
                    break;
                }
                let v = &self.candidates[idx];
                if basis.contains(v) {
                    continue;
                }
                chosen.push(v.clone());
                let forest = {
                    let m = BitMatrix::from_rows(chosen.clone()).expect("nonempty rows");
                    TannerGraph::from_matrix(&m).is_forest()
                };
                if forest {
                    let mut next = basis.clone();
                    next.insert(v.clone());
                    if let Some(hit) =
                        self.run(idx + 1, chosen, &next, weight_so_far + self.weights[idx])?
                    {
                        return Ok(Some(hit));
                    }
                }
                chosen.pop();
            }
            Ok(None)
        }
    }

    let mut dfs = Dfs {
        candidates: &candidates,
        weights: &weights,
        k,
        edge_budget,
        nodes: 0,
        budget: guards.rep_node_budget,
    };
    let hit = dfs.run(0, &mut Vec::new(), &Basis::new(), 0)?;
    match hit {
        Some(rows) => {
            let m = BitMatrix::from_rows(rows)?;
            debug_assert!(TannerGraph::from_matrix(&m).is_forest());
            debug_assert!(m.row_space_equal(h));
            Ok(Some(CycleFreeReference::discovered(m)))
        }
        None => Ok(None),
    }
}

/// One candidate from the pivotal-check construction, before verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessOutcome {
    pub witness: PseudoVector,
    /// Row of the reference matrix, 0-based.
    pub pivotal_check: usize,
    /// Position of the chosen component among the components of
    /// T(reference) minus the pivotal check.
    pub component: usize,
    /// Columns of the chosen component, 0-based, ascending.
    pub component_bits: Vec<usize>,
}

/// Candidate vectors for one pass: `matrix` is the (possibly pruned) forest,
/// `kept_rows`/`kept_cols` map its indices back to the reference, `n` is the
/// full column count. Columns outside `kept_cols` are forced to zero.
fn candidate_pass(
    matrix: &BitMatrix,
    kept_rows: &[usize],
    kept_cols: &[usize],
    n: usize,
) -> Vec<WitnessOutcome> {
    let graph = TannerGraph::from_matrix(matrix);
    let mut out = Vec::new();
    for j in 0..graph.n_checks() {
        let d = graph.check_neighbors(j).len();
        if d == 0 {
            continue;
        }
        let comps = graph.components_excluding(Some(Vertex::Check(j)));
        for &i in graph.check_neighbors(j) {
            let (comp_id, comp) = comps
                .iter()
                .enumerate()
                .find(|(_, c)| c.contains(&Vertex::Bit(i)))
                .expect("neighbor bit keeps a component");
            let comp_bits: Vec<usize> = comp
                .iter()
                .filter_map(|v| match v {
                    Vertex::Bit(b) => Some(kept_cols[*b]),
                    Vertex::Check(_) => None,
                })
                .collect();
            let mut values = vec![0u64; n];
            for &c in kept_cols {
                values[c] = 2;
            }
            for &c in &comp_bits {
                values[c] = 2 * d as u64;
            }
            out.push(WitnessOutcome {
                witness: PseudoVector::new(values),
                pivotal_check: kept_rows[j],
                component: comp_id,
                component_bits: comp_bits,
            });
        }
    }
    out
}

/// Candidate witnesses in the order [`construct_witness`] tries them:
/// checks by row, then the component holding each neighbor bit, ascending.
/// Degree-one checks are pruned first (with their forced-zero columns) when
/// the reference has any.
pub fn witness_candidates(reference: &CycleFreeReference) -> Vec<WitnessOutcome> {
    let hp = reference.matrix();
    let n = hp.cols();
    let pruned = prune_degree_one_checks(hp);
    if pruned.removed_rows.is_empty() {
        let ident_rows: Vec<usize> = (0..hp.rows()).collect();
        let ident_cols: Vec<usize> = (0..n).collect();
        return candidate_pass(hp, &ident_rows, &ident_cols, n);
    }
    match &pruned.matrix {
        Some(pm) => candidate_pass(pm, &pruned.kept_rows, &pruned.kept_cols, n),
        None => Vec::new(),
    }
}

/// Builds a witness pseudocodeword for an `h` with no cycle-free row
/// subset, from cycle-free reference `reference`. Tries pruned candidates
/// first, then the raw graph, and returns the first vector that fails the
/// pivotal check on the reference while passing the full test on `h`. If
/// every candidate fails both ways the underlying theorem would be wrong on
/// this input, so that case is a loud error, never a silent fallback.
pub fn construct_witness(h: &BitMatrix, reference: &CycleFreeReference) -> Result<WitnessOutcome> {
    let hp = reference.matrix();
    if h.cols() != hp.cols() {
        return Err(Error::LengthMismatch {
            context: "witness construction",
            expected: hp.cols(),
            actual: h.cols(),
        });
    }
    let graph = TannerGraph::from_matrix(hp);
    let mut seen_raw = false;
    let mut rounds: Vec<Vec<WitnessOutcome>> = Vec::new();
    let first = witness_candidates(reference);
    let pruned_anything = !prune_degree_one_checks(hp).removed_rows.is_empty();
    if !pruned_anything {
        seen_raw = true;
    }
    rounds.push(first);
    if !seen_raw {
        let ident_rows: Vec<usize> = (0..hp.rows()).collect();
        let ident_cols: Vec<usize> = (0..hp.cols()).collect();
        rounds.push(candidate_pass(hp, &ident_rows, &ident_cols, hp.cols()));
    }
    for round in rounds {
        for cand in round {
            let fails_reference =
                !graph.p_satisfied(cand.pivotal_check, cand.witness.entries())?;
            if fails_reference && pseudo::is_pseudocodeword(h, &cand.witness)? {
                return Ok(cand);
            }
        }
    }
    Err(Error::WitnessExhausted)
}

fn imperfect_verdict(
    h: &BitMatrix,
    reference: &CycleFreeReference,
    guards: &PerfectGuards,
) -> Result<PerfectionVerdict> {
    let outcome = construct_witness(h, reference)?;
    // The witness fails on the reference, and integer combinations of
    // codewords pass on every representation, so it must be irreducible.
    // Recheck directly whenever the code is small enough to enumerate.
    let dim = h.cols() - h.rank();
    if dim <= guards.crosscheck_dim {
        let words = h.null_space_codewords(guards.crosscheck_dim)?;
        match pseudo::is_reducible(&outcome.witness, &words, guards.crosscheck_budget) {
            Ok(Some(cert)) => panic!(
                "witness {} reduced to codewords ({} terms); construction is unsound",
                outcome.witness,
                cert.terms.len()
            ),
            Ok(None) | Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(PerfectionVerdict::Imperfect {
        witness: outcome.witness,
        pivotal_check: outcome.pivotal_check,
        component: outcome.component,
        component_bits: outcome.component_bits,
    })
}

fn perfect_verdict(h: &BitMatrix, rows: Vec<usize>) -> PerfectionVerdict {
    if rows.is_empty() {
        assert_eq!(h.rank(), 0, "empty row set only represents the zero-check code");
    } else {
        let sub = h.select_rows(&rows).expect("kept rows are valid");
        assert!(sub.row_space_equal(h), "kept rows must span the row space");
        assert!(
            TannerGraph::from_matrix(&sub).is_forest(),
            "kept rows must form a forest"
        );
    }
    PerfectionVerdict::Perfect { kept_rows: rows }
}

/// Decides geometric perfection of `h` against a supplied reference. The
/// reference is revalidated against `h` first.
pub fn is_geometrically_perfect(
    h: &BitMatrix,
    reference: &CycleFreeReference,
    guards: &PerfectGuards,
) -> Result<PerfectionVerdict> {
    if !reference.matrix().row_space_equal(h) {
        return Err(Error::InvalidReference(
            "reference does not represent the code of this matrix".into(),
        ));
    }
    match find_cycle_free_subrepresentation(h, guards.row_guard)? {
        Some(rows) => Ok(perfect_verdict(h, rows)),
        None => imperfect_verdict(h, reference, guards),
    }
}

/// Full decision without a supplied reference: searches for one when
/// needed. Codes with no cycle-free representation are refused with
/// [`Error::OutOfHypothesis`].
pub fn decide(h: &BitMatrix, guards: &PerfectGuards) -> Result<PerfectionVerdict> {
    decide_with_reference(h, guards).map(|(verdict, _)| verdict)
}

/// [`decide`], but also hands back the cycle-free reference the decision
/// rests on: the kept rows when perfect, the discovered representation when
/// imperfect.
pub fn decide_with_reference(
    h: &BitMatrix,
    guards: &PerfectGuards,
) -> Result<(PerfectionVerdict, CycleFreeReference)> {
    if let Some(rows) = find_cycle_free_subrepresentation(h, guards.row_guard)? {
        // A rank-0 matrix keeps no rows; one zero row spans the same space.
        let kept = if rows.is_empty() {
            BitMatrix::zeros(1, h.cols())
        } else {
            h.select_rows(&rows)?
        };
        let reference = CycleFreeReference::discovered(kept);
        return Ok((perfect_verdict(h, rows), reference));
    }
    match find_cycle_free_representation(h, guards)? {
        Some(reference) => Ok((imperfect_verdict(h, &reference, guards)?, reference)),
        None => Err(Error::OutOfHypothesis),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn pv(entries: &[u64]) -> PseudoVector {
        PseudoVector::new(entries.to_vec())
    }

    fn bm(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_rows(rows.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn subrepresentation_of_forest_is_everything() {
        let hp = samples::forest_5x12();
        let got = find_cycle_free_subrepresentation(&hp, 24).unwrap();
        assert_eq!(got, Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn subrepresentation_of_stacked_is_tree_rows() {
        let h3 = samples::stacked_7x7();
        let got = find_cycle_free_subrepresentation(&h3, 24).unwrap();
        assert_eq!(got, Some(vec![0, 1, 2]));
    }

    #[test]
    fn subrepresentation_absent_for_redundant() {
        let h = samples::redundant_6x12();
        assert_eq!(find_cycle_free_subrepresentation(&h, 24).unwrap(), None);
        assert_eq!(
            find_cycle_free_subrepresentation(&samples::cycle_4x7(), 24).unwrap(),
            None
        );
    }

    #[test]
    fn subrepresentation_guard() {
        let h = samples::redundant_6x12();
        assert!(matches!(
            find_cycle_free_subrepresentation(&h, 5),
            Err(Error::SubsetGuardExceeded { actual: 6, guard: 5 })
        ));
    }

    #[test]
    fn representation_search_finds_star() {
        let h2 = samples::cycle_4x7();
        let found = find_cycle_free_representation(&h2, &PerfectGuards::default())
            .unwrap()
            .unwrap();
        assert_eq!(found.provenance(), RefProvenance::Discovered);
        let rows: Vec<String> = found.matrix().row_iter().map(|r| r.to_string()).collect();
        assert_eq!(rows, vec!["1000011", "1001100", "1110000"]);
        assert!(found.matrix().row_space_equal(&h2));
    }

    #[test]
    fn representation_search_keeps_forests_as_is() {
        let hp = samples::forest_5x12();
        let found = find_cycle_free_representation(&hp, &PerfectGuards::default())
            .unwrap()
            .unwrap();
        assert_eq!(found.matrix(), &hp);
    }

    #[test]
    fn representation_search_full_rank_code() {
        // Zero code: the dual is everything, and single-bit checks win.
        let h = bm(&["110", "011", "101", "111"]);
        let found = find_cycle_free_representation(&h, &PerfectGuards::default())
            .unwrap()
            .unwrap();
        let rows: Vec<String> = found.matrix().row_iter().map(|r| r.to_string()).collect();
        assert_eq!(rows, vec!["001", "010", "100"]);
    }

    #[test]
    fn representation_search_proves_absence() {
        // Every nonzero dual vector of this code has weight 4, so three
        // rows always carry 12 > 3 + 7 - 1 edges.
        let hamming = bm(&["1010101", "0110011", "0001111"]);
        assert!(find_cycle_free_representation(&hamming, &PerfectGuards::default())
            .unwrap()
            .is_none());
        assert!(matches!(
            decide(&hamming, &PerfectGuards::default()),
            Err(Error::OutOfHypothesis)
        ));
    }

    #[test]
    fn representation_search_guard() {
        assert!(matches!(
            find_cycle_free_representation(
                &samples::cycle_4x7(),
                &PerfectGuards {
                    dual_dim_guard: 2,
                    ..PerfectGuards::default()
                }
            ),
            Err(Error::DualGuardExceeded { dim: 3, guard: 2 })
        ));
    }

    #[test]
    fn reference_validation() {
        let h = samples::redundant_6x12();
        let hp = samples::forest_5x12();
        assert!(CycleFreeReference::new(&hp, &h).is_ok());
        assert!(matches!(
            CycleFreeReference::new(&h, &h),
            Err(Error::InvalidReference(_))
        ));
        assert!(matches!(
            CycleFreeReference::new(&samples::tree_3x7(), &samples::forest_5x12()),
            Err(Error::LengthMismatch { .. })
        ));
        let wrong_code = samples::tree_3x7();
        assert!(matches!(
            CycleFreeReference::new(&bm(&["1000000"]), &wrong_code),
            Err(Error::InvalidReference(_))
        ));
    }

    #[test]
    fn witness_for_main_pair() {
        let h = samples::redundant_6x12();
        let reference = CycleFreeReference::new(&samples::forest_5x12(), &h).unwrap();
        let got = construct_witness(&h, &reference).unwrap();
        assert_eq!(got.witness, pv(&[8, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2]));
        assert_eq!(got.pivotal_check, 1);
        assert_eq!(got.component, 0);
        assert_eq!(got.component_bits, vec![0]);
        assert!(pseudo::is_pseudocodeword(&h, &got.witness).unwrap());
        assert!(!pseudo::is_pseudocodeword(reference.matrix(), &got.witness).unwrap());
    }

    #[test]
    fn candidate_list_contains_published_component() {
        let h = samples::redundant_6x12();
        let reference = CycleFreeReference::new(&samples::forest_5x12(), &h).unwrap();
        let cands = witness_candidates(&reference);
        // Pivotal check 1, component holding bits 2..=5.
        let hit = cands
            .iter()
            .find(|c| c.pivotal_check == 1 && c.component_bits == vec![2, 3, 4, 5])
            .expect("candidate with the big component");
        assert_eq!(hit.witness, pv(&[2, 2, 8, 8, 8, 8, 2, 2, 2, 2, 2, 2]));
        assert!(pseudo::is_pseudocodeword(&h, &hit.witness).unwrap());
        assert!(!pseudo::is_pseudocodeword(reference.matrix(), &hit.witness).unwrap());
    }

    #[test]
    fn verdict_for_main_pair() {
        let h = samples::redundant_6x12();
        let reference = CycleFreeReference::new(&samples::forest_5x12(), &h).unwrap();
        match is_geometrically_perfect(&h, &reference, &PerfectGuards::default()).unwrap() {
            PerfectionVerdict::Imperfect { witness, pivotal_check, .. } => {
                assert_eq!(witness, pv(&[8, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2]));
                assert_eq!(pivotal_check, 1);
            }
            v => panic!("expected imperfect, got {v:?}"),
        }
    }

    #[test]
    fn verdict_for_forest_itself() {
        let hp = samples::forest_5x12();
        let reference = CycleFreeReference::new(&hp, &hp).unwrap();
        assert_eq!(
            is_geometrically_perfect(&hp, &reference, &PerfectGuards::default()).unwrap(),
            PerfectionVerdict::Perfect {
                kept_rows: vec![0, 1, 2, 3, 4]
            }
        );
    }

    #[test]
    fn verdict_for_stacked_and_cycle_representations() {
        let tree = samples::tree_3x7();
        let h3 = samples::stacked_7x7();
        let h2 = samples::cycle_4x7();
        let ref3 = CycleFreeReference::new(&tree, &h3).unwrap();
        assert_eq!(
            is_geometrically_perfect(&h3, &ref3, &PerfectGuards::default()).unwrap(),
            PerfectionVerdict::Perfect {
                kept_rows: vec![0, 1, 2]
            }
        );

        let ref2 = CycleFreeReference::new(&tree, &h2).unwrap();
        match is_geometrically_perfect(&h2, &ref2, &PerfectGuards::default()).unwrap() {
            PerfectionVerdict::Imperfect { witness, pivotal_check, component_bits, .. } => {
                assert_eq!(witness, pv(&[6, 2, 2, 6, 6, 6, 6]));
                assert_eq!(pivotal_check, 0);
                assert_eq!(component_bits, vec![0, 3, 4, 5, 6]);
                assert!(pseudo::is_pseudocodeword(&h2, &witness).unwrap());
                assert!(!pseudo::is_pseudocodeword(&tree, &witness).unwrap());
            }
            v => panic!("expected imperfect, got {v:?}"),
        }
    }

    #[test]
    fn mismatched_reference_is_refused() {
        let h = samples::cycle_4x7();
        let hp = samples::forest_5x12();
        let reference = CycleFreeReference::new(&hp, &samples::redundant_6x12()).unwrap();
        assert!(matches!(
            is_geometrically_perfect(&h, &reference, &PerfectGuards::default()),
            Err(Error::LengthMismatch { .. }) | Err(Error::InvalidReference(_))
        ));
    }

    #[test]
    fn decide_discovers_reference_when_needed() {
        match decide(&samples::cycle_4x7(), &PerfectGuards::default()).unwrap() {
            PerfectionVerdict::Imperfect { witness, .. } => {
                // Reference is the discovered star, whose first row is 1000011.
                assert!(pseudo::is_pseudocodeword(&samples::cycle_4x7(), &witness).unwrap());
            }
            v => panic!("expected imperfect, got {v:?}"),
        }
        assert_eq!(
            decide(&samples::stacked_7x7(), &PerfectGuards::default()).unwrap(),
            PerfectionVerdict::Perfect {
                kept_rows: vec![0, 1, 2]
            }
        );
    }

    #[test]
    fn zero_code_gets_uniform_witness() {
        let h = bm(&["110", "011", "101", "111"]);
        assert_eq!(find_cycle_free_subrepresentation(&h, 24).unwrap(), None);
        match decide(&h, &PerfectGuards::default()).unwrap() {
            PerfectionVerdict::Imperfect { witness, pivotal_check, component_bits, .. } => {
                assert_eq!(witness, pv(&[2, 2, 2]));
                assert_eq!(pivotal_check, 0);
                assert_eq!(component_bits, vec![2]);
            }
            v => panic!("expected imperfect, got {v:?}"),
        }
    }

    #[test]
    fn punctured_columns_stay_zero() {
        let mut hp_rows: Vec<String> = samples::forest_5x12()
            .row_iter()
            .map(|r| format!("{r}0"))
            .collect();
        hp_rows.push("0000000000001".to_string());
        let hp_refs: Vec<&str> = hp_rows.iter().map(|s| s.as_str()).collect();
        let hp_ext = bm(&hp_refs);

        let mut h_rows: Vec<String> = samples::redundant_6x12()
            .row_iter()
            .map(|r| format!("{r}0"))
            .collect();
        h_rows.push("0000000000001".to_string());
        let h_refs: Vec<&str> = h_rows.iter().map(|s| s.as_str()).collect();
        let h_ext = bm(&h_refs);

        let reference = CycleFreeReference::new(&hp_ext, &h_ext).unwrap();
        assert_eq!(find_cycle_free_subrepresentation(&h_ext, 24).unwrap(), None);
        let got = construct_witness(&h_ext, &reference).unwrap();
        assert_eq!(got.witness, pv(&[8, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 0]));
        assert_eq!(got.pivotal_check, 1);
        assert!(pseudo::is_pseudocodeword(&h_ext, &got.witness).unwrap());
        assert!(!pseudo::is_pseudocodeword(&hp_ext, &got.witness).unwrap());
    }

    #[test]
    fn expansion_weight_inequality() {
        // Every row of the redundant matrix expands over the forest rows.
        // Expansions that involve the pivotal row (index 1, weight 4) must
        // be strictly heavier than it: the pivotal row itself cannot occur.
        let h = samples::redundant_6x12();
        let hp = samples::forest_5x12();
        let d = hp.row_weight(1);
        for j in 0..h.rows() {
            let target = h.row(j);
            let mut expansion: Option<u64> = None;
            for mask in 0u64..(1 << hp.rows()) {
                let idx = mask_indices(mask);
                let sum = if idx.is_empty() {
                    crate::gf2::BitVec::zeros(hp.cols())
                } else {
                    hp.row_sum(&idx).unwrap()
                };
                if &sum == target {
                    expansion = Some(mask);
                    break;
                }
            }
            let mask = expansion.expect("row space equality");
            if mask >> 1 & 1 == 1 {
                assert!(
                    h.row_weight(j) > d,
                    "row {j} uses the pivotal row but is not heavier than {d}"
                );
            }
        }
    }
}
