//! Deterministic work accounting for the enumeration and search routines.
//!
//! A [`Budget`] caps the number of elementary search steps (path extensions,
//! branch nodes, candidate probes). Limits are counted in work units rather
//! than wall-clock time so that the same input always succeeds or always fails.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Environment variable read by [`Budget::from_env`].
pub const BUDGET_ENV: &str = "CUBECYCLE_BUDGET";

/// Default number of work units when nothing else is configured.
pub const DEFAULT_BUDGET: u64 = 4_000_000_000;

/// Local steps accumulated before a worker publishes them to the shared counter.
const FLUSH_EVERY: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget(u64::MAX)
    }

    /// Reads [`BUDGET_ENV`], falling back to [`DEFAULT_BUDGET`].
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Budget)
            .unwrap_or_default()
    }

    pub(crate) fn meter(self) -> Meter {
        Meter {
            limit: self.0,
            used: AtomicU64::new(0),
        }
    }
}

/// Shared work counter. Workers draw from it through [`Tally`] handles.
#[derive(Debug)]
pub(crate) struct Meter {
    limit: u64,
    used: AtomicU64,
}

impl Meter {
    pub fn tally(&self) -> Tally<'_> {
        Tally {
            meter: self,
            pending: 0,
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn exhausted(&self) -> bool {
        self.used() > self.limit
    }

    /// Converts an exhausted meter into the standard resource-limit error.
    pub fn check(&self, what: impl FnOnce() -> String) -> Result<()> {
        if self.exhausted() {
            Err(Error::limit(format!(
                "{} needs more than {} work units (set --budget or {BUDGET_ENV})",
                what(),
                self.limit
            )))
        } else {
            Ok(())
        }
    }
}

/// Per-worker view of a [`Meter`]. Steps are published in batches; `step`
/// returns false once the published total has passed the limit.
pub(crate) struct Tally<'a> {
    meter: &'a Meter,
    pending: u64,
}

impl Tally<'_> {
    #[inline]
    pub fn step(&mut self) -> bool {
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            self.flush()
        } else {
            true
        }
    }

    pub fn flush(&mut self) -> bool {
        let before = self.meter.used.fetch_add(self.pending, Ordering::Relaxed);
        self.pending = 0;
        before <= self.meter.limit && self.meter.used.load(Ordering::Relaxed) <= self.meter.limit
    }
}

impl Drop for Tally<'_> {
    fn drop(&mut self) {
        if self.pending > 0 {
            self.meter.used.fetch_add(self.pending, Ordering::Relaxed);
        }
    }
}
