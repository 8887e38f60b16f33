//! Serializable report shapes for the command surface.
//!
//! Reports are 1-based: row 1 is the first matrix row, bit 1 the first
//! column. The library itself counts from 0 everywhere, so the constructors
//! here do the shifting.

use serde::{Deserialize, Serialize};

use crate::gf2::BitMatrix;
use crate::perfect::PerfectionVerdict;
use crate::pseudo::{PseudoVector, ReductionCertificate, Violation};

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|&i| i + 1).collect()
}

fn matrix_rows(m: &BitMatrix) -> Vec<String> {
    (0..m.rows()).map(|j| m.row(j).to_string()).collect()
}

/// Perfection decision in wire form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum VerdictReport {
    Perfect {
        kept_rows: Vec<usize>,
    },
    Imperfect {
        witness: Vec<u64>,
        pivotal_check: usize,
        component: usize,
        component_bits: Vec<usize>,
        reference_matrix: Vec<String>,
    },
    OutOfHypothesis,
}

impl VerdictReport {
    /// `reference` is the cycle-free representation an imperfect verdict was
    /// proved against; perfect verdicts do not use it.
    pub fn from_verdict(verdict: &PerfectionVerdict, reference: &BitMatrix) -> Self {
        match verdict {
            PerfectionVerdict::Perfect { kept_rows } => VerdictReport::Perfect {
                kept_rows: one_based(kept_rows),
            },
            PerfectionVerdict::Imperfect {
                witness,
                pivotal_check,
                component,
                component_bits,
            } => VerdictReport::Imperfect {
                witness: witness.entries().to_vec(),
                pivotal_check: pivotal_check + 1,
                component: component + 1,
                component_bits: one_based(component_bits),
                reference_matrix: matrix_rows(reference),
            },
        }
    }

    pub fn out_of_hypothesis() -> Self {
        VerdictReport::OutOfHypothesis
    }
}

/// One term of a reduction: a codeword and its multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub terms: Vec<(String, u64)>,
}

impl CertificateReport {
    pub fn from_certificate(cert: &ReductionCertificate) -> Self {
        CertificateReport {
            terms: cert
                .terms
                .iter()
                .map(|(word, k)| (word.bits().to_string(), *k))
                .collect(),
        }
    }
}

/// Outcome of checking one vector against one matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub vector: Vec<u64>,
    pub is_pseudocodeword: bool,
    /// 1-based row of the first violated constraint.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_row: Option<usize>,
    /// 1-based coordinate, present for cone violations only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_position: Option<usize>,
    /// "cone" or "parity".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
}

impl VerifyReport {
    pub fn new(
        vector: &PseudoVector,
        violation: Option<&Violation>,
        certificate: Option<&ReductionCertificate>,
    ) -> Self {
        let (failing_row, failing_position, failing_kind) = match violation {
            None => (None, None, None),
            Some(Violation::Cone { row, position }) => {
                (Some(row + 1), Some(position + 1), Some("cone".to_string()))
            }
            Some(Violation::Parity { row }) => (Some(row + 1), None, Some("parity".to_string())),
        };
        VerifyReport {
            vector: vector.entries().to_vec(),
            is_pseudocodeword: violation.is_none(),
            failing_row,
            failing_position,
            failing_kind,
            certificate: certificate.map(CertificateReport::from_certificate),
        }
    }
}
