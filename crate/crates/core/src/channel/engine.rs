use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Per-point trial limits: stop after `max_trials`, or as soon as every
/// tracked error counter reaches `max_errors`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialBudget {
    pub max_trials: u64,
    pub max_errors: u64,
}

impl Default for TrialBudget {
    fn default() -> Self {
        TrialBudget {
            max_trials: 100_000,
            max_errors: 200,
        }
    }
}

/// Random stream for one trial. It depends only on `(seed, trial)`, so
/// results do not depend on scheduling, and every Eb/N0 point and decoder
/// sees the same messages and noise shapes.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs trials `0, 1, 2, ...` in parallel batches. Each trial reports a
/// set of error flags; the first `stop_counters` decide early stopping.
///
/// Outcomes are scanned in trial order and cut at the first trial where
/// every stop counter reaches the limit, so the result is the same for any
/// thread count.
pub(crate) fn run_trials<F>(budget: TrialBudget, stop_counters: usize, trial: F) -> Vec<Vec<bool>>
where
    F: Fn(u64) -> Vec<bool> + Sync + Send,
{
    assert!(stop_counters > 0);
    let batch = (rayon::current_num_threads() as u64 * 16).max(64);
    let mut out = Vec::new();
    let mut counts = vec![0u64; stop_counters];
    let mut next = 0;
    while next < budget.max_trials {
        let end = (next + batch).min(budget.max_trials);
        let results: Vec<Vec<bool>> = (next..end).into_par_iter().map(&trial).collect();
        for r in results {
            for (c, &e) in counts.iter_mut().zip(&r) {
                *c += u64::from(e);
            }
            out.push(r);
            if counts.iter().all(|&c| c >= budget.max_errors) {
                return out;
            }
        }
        next = end;
    }
    out
}
