//! Verification report rows.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::uqg::Element;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub suite: String,
    pub check: String,
    pub identity: String,
    pub status: Status,
    pub ms: u64,
    pub max_terms: usize,
    /// Rendered residual for failures, or the reason a check was skipped.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<Row>,
}

/// Outcome of one identity: the residual `lhs - rhs` and the largest
/// intermediate seen.
pub struct Outcome {
    pub residual: Element,
    pub max_terms: usize,
}

impl From<Element> for Outcome {
    fn from(residual: Element) -> Self {
        let max_terms = residual.len();
        Outcome { residual, max_terms }
    }
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: Report) {
        self.rows.extend(other.rows);
    }

    /// Run one identity and record it. Budget errors become `skipped`;
    /// other errors are failures.
    pub fn record(&mut self, suite: &str, check: &str, identity: impl Into<String>, f: impl FnOnce() -> Result<Outcome>) -> &Row {
        let start = Instant::now();
        let res = f();
        let ms = start.elapsed().as_millis() as u64;
        let (status, max_terms, detail) = match res {
            Ok(o) if o.residual.is_zero() => (Status::Pass, o.max_terms, None),
            Ok(o) => (Status::Fail, o.max_terms, Some(o.residual.to_string())),
            Err(Error::BudgetExceeded(m)) => (Status::Skipped, 0, Some(m)),
            Err(e) => (Status::Fail, 0, Some(e.to_string())),
        };
        self.rows.push(Row {
            suite: suite.to_string(),
            check: check.to_string(),
            identity: identity.into(),
            status,
            ms,
            max_terms,
            detail,
        });
        self.rows.last().unwrap()
    }

    /// Record a yes/no check that has no algebra residual.
    pub fn record_bool(&mut self, suite: &str, check: &str, identity: impl Into<String>, f: impl FnOnce() -> Result<std::result::Result<(), String>>) -> &Row {
        let start = Instant::now();
        let res = f();
        let ms = start.elapsed().as_millis() as u64;
        let (status, detail) = match res {
            Ok(Ok(())) => (Status::Pass, None),
            Ok(Err(m)) => (Status::Fail, Some(m)),
            Err(Error::BudgetExceeded(m)) => (Status::Skipped, Some(m)),
            Err(e) => (Status::Fail, Some(e.to_string())),
        };
        self.rows.push(Row {
            suite: suite.to_string(),
            check: check.to_string(),
            identity: identity.into(),
            status,
            ms,
            max_terms: 0,
            detail,
        });
        self.rows.last().unwrap()
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(Row::passed)
    }

    pub fn count(&self, s: Status) -> usize {
        self.rows.iter().filter(|r| r.status == s).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.rows).expect("rows serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            write!(f, "{:<8} {:<12} {:<40} {:>8}ms", r.status, r.check, r.identity, r.ms)?;
            if let Some(d) = &r.detail {
                if r.status != Status::Pass {
                    let d: String = d.chars().take(300).collect();
                    write!(f, "  {d}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
