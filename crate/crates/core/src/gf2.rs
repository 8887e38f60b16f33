//! Dense GF(2) linear algebra on bit-packed vectors and matrices.
//!
//! Everything here targets desk-scale inputs (tens of columns), so rows are
//! stored flat and elimination is plain Gaussian reduction. Bits are packed
//! most-significant-bit first inside each 64-bit word, which makes the
//! numeric order of the word sequence coincide with lexicographic order on
//! the bit string.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Binary vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range ({})", self.len);
        self.words[i / WORD] >> (WORD - 1 - i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range ({})", self.len);
        let mask = 1u64 << (WORD - 1 - i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    /// In-place XOR with a vector of the same length.
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the first set bit, if any.
    pub fn leading_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * WORD + w.leading_zeros() as usize);
            }
        }
        None
    }

    /// Number of positions set in both vectors.
    pub fn and_weight(&self, other: &BitVec) -> usize {
        assert_eq!(self.len, other.len, "overlap of unequal lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Indices of set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (k, &word) in self.words.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let bit = w.leading_zeros() as usize;
                out.push(k * WORD + bit);
                w &= !(1u64 << (WORD - 1 - bit));
            }
        }
        out
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // MSB-first packing: word order is bit-string order for equal lengths.
        self.words.cmp(&other.words).then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Error;

    /// Parses contiguous or whitespace-separated 0/1 digits.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::InvalidInput(format!(
                        "unexpected character {c:?} in bit string"
                    )))
                }
            }
        }
        if bits.is_empty() {
            return Err(Error::InvalidInput("empty bit string".into()));
        }
        Ok(BitVec::from_bools(&bits))
    }
}

impl Serialize for BitVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Binary matrix; at least one row and one column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix must be at least 1x1");
        BitMatrix {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidInput("matrix needs at least one row".into()));
        };
        let cols = first.len();
        if cols == 0 {
            return Err(Error::InvalidInput(
                "matrix needs at least one column".into(),
            ));
        }
        for (j, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    context: "matrix row",
                    expected: cols,
                    actual: r.len(),
                });
            }
            let _ = j;
        }
        Ok(BitMatrix { cols, rows })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, j: usize) -> &BitVec {
        &self.rows[j]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.iter()
    }

    pub fn get(&self, j: usize, i: usize) -> bool {
        self.rows[j].get(i)
    }

    pub fn set(&mut self, j: usize, i: usize, value: bool) {
        self.rows[j].set(i, value);
    }

    pub fn row_weight(&self, j: usize) -> usize {
        self.rows[j].weight()
    }

    /// Total number of ones, i.e. the Tanner graph edge count.
    pub fn ones(&self) -> usize {
        self.rows.iter().map(|r| r.weight()).sum()
    }

    pub fn stack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                context: "stacked matrix",
                expected: self.cols,
                actual: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix::from_rows(rows)
    }

    /// New matrix made of the selected rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Result<BitMatrix> {
        let mut rows = Vec::with_capacity(indices.len());
        for &j in indices {
            if j >= self.rows.len() {
                return Err(Error::IndexOutOfRange {
                    kind: "row",
                    index: j,
                    limit: self.rows.len(),
                });
            }
            rows.push(self.rows[j].clone());
        }
        BitMatrix::from_rows(rows)
    }

    /// Syndrome H v^T over GF(2); one bit per row.
    pub fn syndrome(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                context: "syndrome argument",
                expected: self.cols,
                actual: v.len(),
            });
        }
        let mut s = BitVec::zeros(self.rows.len());
        for (j, row) in self.rows.iter().enumerate() {
            if row.and_weight(v) % 2 == 1 {
                s.set(j, true);
            }
        }
        Ok(s)
    }

    /// XOR of the selected rows. Indices form a set: duplicates are rejected.
    pub fn row_sum(&self, indices: &[usize]) -> Result<BitVec> {
        let mut seen = vec![false; self.rows.len()];
        let mut acc = BitVec::zeros(self.cols);
        for &j in indices {
            if j >= self.rows.len() {
                return Err(Error::IndexOutOfRange {
                    kind: "row",
                    index: j,
                    limit: self.rows.len(),
                });
            }
            if seen[j] {
                return Err(Error::InvalidInput(format!("duplicate row index {j}")));
            }
            seen[j] = true;
            acc.xor_assign(&self.rows[j]);
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        let mut basis = Basis::new();
        for row in &self.rows {
            basis.insert(row.clone());
        }
        basis.rank()
    }

    /// True when v lies in the row space.
    pub fn in_row_space(&self, v: &BitVec) -> bool {
        if v.len() != self.cols {
            return false;
        }
        let mut basis = Basis::new();
        for row in &self.rows {
            basis.insert(row.clone());
        }
        basis.contains(v)
    }

    /// Row spaces compared as subspaces of GF(2)^cols.
    pub fn row_space_equal(&self, other: &BitMatrix) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let mut basis = Basis::new();
        for row in &self.rows {
            basis.insert(row.clone());
        }
        if other.rows.iter().any(|r| !basis.contains(r)) {
            return false;
        }
        other.rank() == basis.rank()
    }

    /// Basis of the null space {v : H v^T = 0}.
    pub fn null_space_basis(&self) -> Vec<BitVec> {
        // Gauss-Jordan to reduced form, then read one basis vector per free column.
        let mut reduced: Vec<BitVec> = Vec::new();
        for row in &self.rows {
            let mut r = row.clone();
            for p in &reduced {
                let lead = p.leading_one().unwrap();
                if r.get(lead) {
                    r.xor_assign(p);
                }
            }
            if !r.is_zero() {
                let lead = r.leading_one().unwrap();
                for p in reduced.iter_mut() {
                    if p.get(lead) {
                        p.xor_assign(&r);
                    }
                }
                reduced.push(r);
            }
        }
        reduced.sort();
        let pivot_cols: Vec<usize> = reduced.iter().map(|r| r.leading_one().unwrap()).collect();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut b = BitVec::zeros(self.cols);
            b.set(f, true);
            for (r, &p) in reduced.iter().zip(&pivot_cols) {
                if r.get(f) {
                    b.set(p, true);
                }
            }
            basis.push(b);
        }
        basis
    }

    /// Every codeword, sorted lexicographically. The null space has
    /// 2^(cols - rank) elements; enumeration is refused above the guard.
    pub fn null_space_codewords(&self, dim_guard: usize) -> Result<Vec<Codeword>> {
        let basis = self.null_space_basis();
        let k = basis.len();
        if k > dim_guard {
            return Err(Error::DimGuardExceeded {
                dim: k,
                guard: dim_guard,
            });
        }
        let mut words = Vec::with_capacity(1usize << k);
        let mut current = BitVec::zeros(self.cols);
        words.push(Codeword {
            bits: current.clone(),
        });
        // Gray code walk: one basis XOR per step.
        for t in 1u64..(1u64 << k) {
            let flip = t.trailing_zeros() as usize;
            current.xor_assign(&basis[flip]);
            words.push(Codeword {
                bits: current.clone(),
            });
        }
        words.sort();
        Ok(words)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, row) in self.rows.iter().enumerate() {
            if j > 0 {
                writeln!(f)?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix[{}x{}]", self.rows.len(), self.cols)
    }
}

/// Incremental GF(2) row basis in echelon form.
#[derive(Clone)]
pub(crate) struct Basis {
    rows: Vec<BitVec>,
}

impl Basis {
    pub fn new() -> Self {
        Basis { rows: Vec::new() }
    }

    /// Residual of v after elimination against the basis.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut r = v.clone();
        for p in &self.rows {
            let lead = p.leading_one().unwrap();
            if r.get(lead) {
                r.xor_assign(p);
            }
        }
        r
    }

    /// Inserts v; returns true when the rank grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let r = self.reduce(&v);
        if r.is_zero() {
            return false;
        }
        self.rows.push(r);
        // Keep leading columns strictly increasing so reduce stays a single pass.
        self.rows
            .sort_by_key(|p| p.leading_one().unwrap());
        true
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Word of a code, validated against its parent matrix on construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codeword {
    bits: BitVec,
}

impl Codeword {
    /// Validates H bits^T = 0.
    pub fn checked(h: &BitMatrix, bits: BitVec) -> Result<Self> {
        let s = h.syndrome(&bits)?;
        if !s.is_zero() {
            return Err(Error::InvalidInput(format!(
                "vector {bits} has nonzero syndrome {s}"
            )));
        }
        Ok(Codeword { bits })
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn into_bits(self) -> BitVec {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.weight()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.fmt(f)
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({})", self.bits)
    }
}

impl Serialize for Codeword {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.bits.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bm(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_rows(rows.iter().map(|r| r.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn bitvec_get_set_weight() {
        let mut v = BitVec::zeros(70);
        assert!(v.is_zero());
        v.set(0, true);
        v.set(69, true);
        v.set(64, true);
        assert!(v.get(0) && v.get(64) && v.get(69));
        assert!(!v.get(1));
        assert_eq!(v.weight(), 3);
        assert_eq!(v.support(), vec![0, 64, 69]);
        v.set(64, false);
        assert_eq!(v.weight(), 2);
    }

    #[test]
    fn bitvec_parse_display_round_trip() {
        let v: BitVec = "0110 1".parse().unwrap();
        assert_eq!(v.to_string(), "01101");
        assert_eq!(v.len(), 5);
        assert!("01x1".parse::<BitVec>().is_err());
        assert!("".parse::<BitVec>().is_err());
    }

    #[test]
    fn bitvec_lex_order() {
        let a: BitVec = "0111".parse().unwrap();
        let b: BitVec = "1000".parse().unwrap();
        let c: BitVec = "1001".parse().unwrap();
        assert!(a < b && b < c);
        let mut long_a = BitVec::zeros(130);
        let mut long_b = BitVec::zeros(130);
        long_a.set(129, true);
        long_b.set(64, true);
        assert!(long_a < long_b);
    }

    #[test]
    fn leading_one_and_overlap() {
        let a: BitVec = "00110".parse().unwrap();
        let b: BitVec = "01100".parse().unwrap();
        assert_eq!(a.leading_one(), Some(2));
        assert_eq!(BitVec::zeros(5).leading_one(), None);
        assert_eq!(a.and_weight(&b), 1);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(bm(&["1110", "0101"]).rank(), 2);
        assert_eq!(bm(&["1110", "1110", "0000"]).rank(), 1);
    }

    #[test]
    fn rank_of_redundant_six_row_matrix() {
        let h = bm(&[
            "001111000000",
            "111110100000",
            "110001011000",
            "000000111000",
            "000000100110",
            "000000100001",
        ]);
        assert_eq!(h.rank(), 5);
    }

    #[test]
    fn null_space_small_example() {
        let h = bm(&["1110", "0101"]);
        let words = h.null_space_codewords(20).unwrap();
        let strings: Vec<String> = words.iter().map(|c| c.to_string()).collect();
        assert_eq!(strings, vec!["0000", "0111", "1010", "1101"]);
    }

    #[test]
    fn null_space_dimension_guard() {
        let z = BitMatrix::zeros(1, 30);
        assert_eq!(z.null_space_basis().len(), 30);
        assert!(matches!(
            z.null_space_codewords(20),
            Err(Error::DimGuardExceeded { dim: 30, guard: 20 })
        ));
    }

    #[test]
    fn codeword_checked_validates_syndrome() {
        let h = bm(&["1110", "0101"]);
        assert!(Codeword::checked(&h, "0111".parse().unwrap()).is_ok());
        assert!(Codeword::checked(&h, "1111".parse().unwrap()).is_err());
    }

    #[test]
    fn row_sum_matches_known_row() {
        let hp = bm(&[
            "001111000000",
            "110001100000",
            "000000111000",
            "000000100110",
            "000000100001",
        ]);
        let s = hp.row_sum(&[0, 1]).unwrap();
        assert_eq!(s.to_string(), "111110100000");
        assert_eq!(hp.row_sum(&[]).unwrap().weight(), 0);
        assert!(hp.row_sum(&[0, 5]).is_err());
        assert!(hp.row_sum(&[1, 1]).is_err());
    }

    #[test]
    fn row_space_equal_examples() {
        let hp = bm(&[
            "001111000000",
            "110001100000",
            "000000111000",
            "000000100110",
            "000000100001",
        ]);
        let h = bm(&[
            "001111000000",
            "111110100000",
            "110001011000",
            "000000111000",
            "000000100110",
            "000000100001",
        ]);
        assert!(h.row_space_equal(&hp));
        assert!(hp.row_space_equal(&h));
        assert!(!h.row_space_equal(&BitMatrix::identity(12)));
        assert!(!h.row_space_equal(&BitMatrix::identity(4)));
    }

    #[test]
    fn syndrome_and_stack() {
        let h = bm(&["1110", "0101"]);
        let s = h.syndrome(&"1000".parse().unwrap()).unwrap();
        assert_eq!(s.to_string(), "10");
        let stacked = h.stack(&bm(&["1111"])).unwrap();
        assert_eq!(stacked.rows(), 3);
        assert!(h.stack(&bm(&["11"])).is_err());
    }

    #[test]
    fn select_rows_bounds() {
        let h = bm(&["1110", "0101", "1011"]);
        let s = h.select_rows(&[2, 0]).unwrap();
        assert_eq!(s.row(0).to_string(), "1011");
        assert_eq!(s.row(1).to_string(), "1110");
        assert!(h.select_rows(&[3]).is_err());
    }

    #[test]
    fn in_row_space_matches_manual_sums() {
        let h = bm(&["1110", "0101"]);
        assert!(h.in_row_space(&"1011".parse().unwrap())); // sum of both rows
        assert!(!h.in_row_space(&"1000".parse().unwrap()));
    }
}
