//! Small parity-check matrices used by the tests, benches, and docs.
//!
//! The 12-column pair is the workhorse: `forest_5x12` is cycle-free, and
//! `redundant_6x12` describes the same code with one extra row after mixing
//! rows together, in a way that no row removal can make cycle-free again.
//! The 7-column family describes a single (7,4) code three ways: a tree, a
//! cycle code in which every bit node has degree two, and the stack of both.

use crate::gf2::BitMatrix;

fn bm(rows: &[&str]) -> BitMatrix {
    BitMatrix::from_rows(rows.iter().map(|r| r.parse().unwrap()).collect()).unwrap()
}

/// 2x4 matrix whose Tanner graph is a tree: one weight-3 and one weight-2 row.
pub fn toy_2x4() -> BitMatrix {
    bm(&["1110", "0101"])
}

/// Cycle-free 5x12 representation; a chain of checks joined through bits 6 and 7.
pub fn forest_5x12() -> BitMatrix {
    bm(&[
        "001111000000",
        "110001100000",
        "000000111000",
        "000000100110",
        "000000100001",
    ])
}

/// Redundant 6x12 representation of the same code as [`forest_5x12`]:
/// rank 5, girth 4, and no row subset is simultaneously spanning and cycle-free.
pub fn redundant_6x12() -> BitMatrix {
    bm(&[
        "001111000000",
        "111110100000",
        "110001011000",
        "000000111000",
        "000000100110",
        "000000100001",
    ])
}

/// Tree representation of a (7,4) code: a star of three weight-3 checks
/// through bit 1.
pub fn tree_3x7() -> BitMatrix {
    bm(&["1110000", "1001100", "1000011"])
}

/// Cycle-code representation of the same (7,4) code: every bit node has
/// degree exactly 2, and no row removal leaves a cycle-free graph.
pub fn cycle_4x7() -> BitMatrix {
    bm(&["1001100", "1000011", "0111100", "0110011"])
}

/// Rows of [`tree_3x7`] stacked on rows of [`cycle_4x7`]; girth 4,
/// yet reducible to the tree rows.
pub fn stacked_7x7() -> BitMatrix {
    tree_3x7().stack(&cycle_4x7()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_ranks() {
        assert_eq!(toy_2x4().rank(), 2);
        assert_eq!(forest_5x12().rank(), 5);
        assert_eq!(redundant_6x12().rank(), 5);
        assert!(redundant_6x12().row_space_equal(&forest_5x12()));
        assert_eq!(tree_3x7().rank(), 3);
        assert_eq!(cycle_4x7().rank(), 3);
        assert!(cycle_4x7().row_space_equal(&tree_3x7()));
        assert_eq!(stacked_7x7().rows(), 7);
        assert!(stacked_7x7().row_space_equal(&tree_3x7()));
    }

    #[test]
    fn cycle_code_has_all_bit_degrees_two() {
        let h = cycle_4x7();
        for i in 0..h.cols() {
            let deg = (0..h.rows()).filter(|&j| h.get(j, i)).count();
            assert_eq!(deg, 2, "bit {i}");
        }
    }
}
