//! Pass/fail verdicts with explicit witnesses, and the library error type.

use std::fmt;

/// Outcome of a structure check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// One violated identity: which identity, at which basis indices (1-based
/// for display), and the two sides that disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub witness: Vec<usize>,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.witness.iter().map(|i| i.to_string()).collect();
        write!(
            f,
            "{} violated at ({}): left = {}, right = {}",
            self.identity,
            idx.join(","),
            self.left,
            self.right
        )
    }
}

/// Verdict plus the full list of witnesses. The verdict is pass exactly when
/// the violation list is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self { violations: Vec::new() }
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn verdict(&self) -> Verdict {
        if self.pass() { Verdict::Pass } else { Verdict::Fail }
    }

    /// Record a violation. `witness` indices are 0-based here and stored
    /// 1-based, matching the file format and mathematical convention.
    pub fn record(
        &mut self,
        identity: &str,
        witness: &[usize],
        left: impl fmt::Display,
        right: impl fmt::Display,
    ) {
        self.violations.push(Violation {
            identity: identity.to_string(),
            witness: witness.iter().map(|i| i + 1).collect(),
            left: left.to_string(),
            right: right.to_string(),
        });
    }

    /// Absorb another report, prefixing its identity names.
    pub fn merge(&mut self, prefix: &str, other: CheckReport) {
        for mut v in other.violations {
            if !prefix.is_empty() {
                v.identity = format!("{}.{}", prefix, v.identity);
            }
            self.violations.push(v);
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict() {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => {
                writeln!(f, "fail ({} violation(s))", self.violations.len())?;
                for v in &self.violations {
                    writeln!(f, "  {}", v)?;
                }
                Ok(())
            }
        }
    }
}

/// Errors distinct from a failing check: malformed input, dimension
/// mismatches, rejected preconditions (carrying the failing report).
#[derive(Clone, Debug)]
pub enum LieError {
    Dimension { what: String, expected: usize, found: usize },
    Degree { what: String },
    Structure { what: String },
    Rejected { op: &'static str, report: CheckReport },
    UnknownExample { name: String, available: Vec<String> },
    Domain { what: String },
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieError::Dimension { what, expected, found } => {
                write!(f, "dimension mismatch in {}: expected {}, found {}", what, expected, found)
            }
            LieError::Degree { what } => write!(f, "degree error: {}", what),
            LieError::Structure { what } => write!(f, "structure error: {}", what),
            LieError::Rejected { op, report } => {
                write!(f, "precondition {} failed: {}", op, report)
            }
            LieError::UnknownExample { name, available } => {
                write!(f, "unknown example '{}'; available: {}", name, available.join(", "))
            }
            LieError::Domain { what } => write!(f, "domain error: {}", what),
        }
    }
}

impl std::error::Error for LieError {}

pub type Result<T> = std::result::Result<T, LieError>;
