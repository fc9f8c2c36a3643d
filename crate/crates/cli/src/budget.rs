use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use dfapar::equivalence::ProductOptions;
use dfapar::generators::DeterminizeLimits;
use dfapar::minimize::Limits;

pub const DEFAULT_MEM_BUDGET_MB: u64 = 4096;
pub const MEM_BUDGET_ENV: &str = "DFAPAR_MEM_BUDGET_MB";

/// Memory and time budget for one command.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub mem_bytes: u64,
    pub timeout: Option<Duration>,
}

impl Budget {
    /// `--mem-budget-mb` wins over the environment variable, which wins over the default.
    pub fn resolve(mem_budget_mb: Option<u64>, timeout_s: f64) -> Result<Self> {
        let mb = match mem_budget_mb {
            Some(mb) => mb,
            None => match std::env::var(MEM_BUDGET_ENV) {
                Ok(v) => match v.trim().parse() {
                    Ok(mb) => mb,
                    Err(_) => bail!("{MEM_BUDGET_ENV}={v:?} is not a whole number of megabytes"),
                },
                Err(_) => DEFAULT_MEM_BUDGET_MB,
            },
        };
        if !(timeout_s >= 0.0 && timeout_s.is_finite()) {
            bail!("timeout must be a non-negative number of seconds, got {timeout_s}");
        }
        Ok(Budget {
            mem_bytes: mb.saturating_mul(1 << 20),
            timeout: (timeout_s > 0.0).then(|| Duration::from_secs_f64(timeout_s)),
        })
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.timeout.map(|t| Instant::now() + t)
    }

    /// Minimiser limits with a deadline starting now. The pair-graph matrix
    /// keeps two bit-packed copies; the closed alphabet costs 4 bytes per
    /// state and letter.
    pub fn limits(&self, num_states: usize) -> Limits {
        Limits {
            deadline: self.deadline(),
            max_reach_cells: self.mem_bytes.saturating_mul(4),
            max_alphabet: usize::try_from(self.mem_bytes / (4 * num_states.max(1) as u64))
                .unwrap_or(usize::MAX),
        }
    }

    /// About 48 bytes per visited pair: the record plus hash-table slots.
    pub fn product(&self, by_name: bool) -> ProductOptions {
        ProductOptions {
            match_letters_by_name: by_name,
            max_visited: usize::try_from(self.mem_bytes / 48).unwrap_or(usize::MAX),
            deadline: self.deadline(),
        }
    }

    /// About 64 bytes per subset state before counting subset contents.
    pub fn determinize(&self) -> DeterminizeLimits {
        DeterminizeLimits {
            max_states: usize::try_from(self.mem_bytes / 64).unwrap_or(usize::MAX),
            deadline: self.deadline(),
        }
    }

    /// Generated automata need 4 bytes per state and letter; assume 16 letters.
    pub fn max_generated_states(&self) -> usize {
        usize::try_from(self.mem_bytes / 64).unwrap_or(usize::MAX)
    }
}
