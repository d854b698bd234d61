//! Wall-clock, term-count and memory limits for long computations.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
    max_terms: usize,
    max_rss_bytes: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

/// Resident set size of this process, from `/proc/self/statm`.
pub fn current_rss_bytes() -> Option<u64> {
    let s = std::fs::read_to_string("/proc/self/statm").ok()?;
    let pages: u64 = s.split_whitespace().nth(1)?.parse().ok()?;
    Some(pages * 4096)
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            deadline: None,
            max_terms: usize::MAX,
            max_rss_bytes: None,
        }
    }

    pub fn new(timeout: Option<Duration>, max_terms: usize, max_rss_bytes: Option<u64>) -> Self {
        Budget {
            deadline: timeout.map(|t| Instant::now() + t),
            max_terms,
            max_rss_bytes,
        }
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn remaining(&self) -> Option<Duration> {
        self.deadline.map(|d| d.saturating_duration_since(Instant::now()))
    }

    /// Fails once any limit is exceeded; `terms` is the size of the
    /// intermediate currently being built.
    pub fn check(&self, terms: usize) -> Result<()> {
        if terms > self.max_terms {
            return Err(Error::BudgetExceeded(format!("{terms} terms exceed max-terms {}", self.max_terms)));
        }
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return Err(Error::BudgetExceeded("timeout".into()));
            }
        }
        if let Some(limit) = self.max_rss_bytes {
            if let Some(rss) = current_rss_bytes() {
                if rss > limit {
                    return Err(Error::BudgetExceeded(format!("resident memory {rss} bytes over limit {limit}")));
                }
            }
        }
        Ok(())
    }
}
