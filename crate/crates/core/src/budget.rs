//! Resource budgets, read once from the environment.
//!
//! | variable               | meaning                                         | default |
//! |------------------------|-------------------------------------------------|---------|
//! | `LOCIKIT_GB_STEPS`     | S-pair reductions per Groebner basis            | 200000  |
//! | `LOCIKIT_RES_CUTOFF`   | resolution length cutoff (0 = nvars + dim R + 2)| 0       |
//! | `LOCIKIT_BASS_WINDOW`  | extra Bass indices past dim R_p                 | 1       |
//! | `LOCIKIT_MAX_RANK`     | largest free-module rank in any resolution      | 64      |

use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub gb_steps: usize,
    pub resolution_cutoff: usize,
    pub bass_window_extra: usize,
    pub max_rank: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { gb_steps: 200_000, resolution_cutoff: 0, bass_window_extra: 1, max_rank: 64 }
    }
}

impl Budget {
    pub fn from_env() -> Self {
        let d = Budget::default();
        let read = |k: &str, dflt: usize| {
            std::env::var(k).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(dflt)
        };
        Budget {
            gb_steps: read("LOCIKIT_GB_STEPS", d.gb_steps),
            resolution_cutoff: read("LOCIKIT_RES_CUTOFF", d.resolution_cutoff),
            bass_window_extra: read("LOCIKIT_BASS_WINDOW", d.bass_window_extra),
            max_rank: read("LOCIKIT_MAX_RANK", d.max_rank),
        }
    }
}

static BUDGET: OnceLock<Budget> = OnceLock::new();

pub fn current() -> Budget {
    *BUDGET.get_or_init(Budget::from_env)
}
