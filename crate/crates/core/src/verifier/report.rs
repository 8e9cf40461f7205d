use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::operator::{EntryWitness, Operator};
use crate::rational::Rational;

/// Summary of one residual: largest absolute entry, number of nonzero
/// entries and the first nonzero entry in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub label: String,
    pub max_abs: Rational,
    pub nonzero: usize,
    pub witness: Option<EntryWitness>,
}

impl Residual {
    pub fn of(label: impl Into<String>, residual: &Operator) -> Self {
        Residual {
            label: label.into(),
            max_abs: residual.max_abs(),
            nonzero: residual.nonzero_count(),
            witness: residual.first_nonzero(),
        }
    }

    /// A scalar residual; its witness has empty multi-indices.
    pub fn scalar(label: impl Into<String>, value: Rational) -> Self {
        let zero = value.is_zero();
        Residual {
            label: label.into(),
            max_abs: value.abs(),
            nonzero: usize::from(!zero),
            witness: (!zero).then(|| EntryWitness {
                row: Vec::new(),
                col: Vec::new(),
                value,
            }),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub check: String,
    pub passed: bool,
    pub residuals: Vec<Residual>,
    /// Outcome of non-residual conditions (class found, multiplicities).
    pub detail: Option<String>,
    pub metadata: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn from_residuals(check: impl Into<String>, residuals: Vec<Residual>) -> Self {
        let passed = residuals.iter().all(Residual::is_zero);
        VerificationReport {
            check: check.into(),
            passed,
            residuals,
            detail: None,
            metadata: BTreeMap::new(),
        }
    }

    /// A report decided by a condition rather than a residual.
    pub fn from_condition(check: impl Into<String>, passed: bool, detail: String) -> Self {
        VerificationReport {
            check: check.into(),
            passed,
            residuals: Vec::new(),
            detail: Some(detail),
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_metadata(mut self, metadata: BTreeMap<String, String>) -> Self {
        self.metadata.extend(metadata);
        self
    }

    /// First failing residual with its witness entry.
    pub fn failing(&self) -> Option<&Residual> {
        self.residuals.iter().find(|r| !r.is_zero())
    }

    pub fn residual(&self, label: &str) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.label == label)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}",
            self.check,
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        if let Some(res) = self.failing() {
            write!(f, "\t{}: max|entry| {}", res.label, res.max_abs)?;
            if let Some(w) = &res.witness {
                if w.row.is_empty() {
                    write!(f, " value {}", w.value)?;
                } else {
                    write!(f, " witness {w}")?;
                }
            }
        }
        if let Some(detail) = &self.detail {
            write!(f, "\t{detail}")?;
        }
        Ok(())
    }
}
