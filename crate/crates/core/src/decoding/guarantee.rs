use serde::Serialize;

/// Sufficient condition for noiseless greedy recovery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GuaranteeReport {
    pub mu: f64,
    pub gamma: f64,
    pub k: usize,
    /// `min{(1 + mu) / (2 mu), (1 + 2 mu - gamma) / (2 mu)}`.
    pub bound: f64,
    /// `K < bound`.
    pub guaranteed: bool,
}

/// Evaluates the recovery bound for dictionary coherence `mu`,
/// constellation coherence `gamma` and sparsity `k`.
///
/// For `gamma <= 0` the bound is `(1 + mu) / (2 mu)`. With `mu = 1/sqrt(N)`
/// that equals `(sqrt(N) + 1) / 2`, which is the value used here even though
/// the looser form `1 + sqrt(N)/2` is sometimes quoted for MUB.
pub fn check_recovery_guarantee(mu: f64, gamma: f64, k: usize) -> GuaranteeReport {
    let bound = ((1.0 + mu) / (2.0 * mu)).min((1.0 + 2.0 * mu - gamma) / (2.0 * mu));
    GuaranteeReport {
        mu,
        gamma,
        k,
        bound,
        guaranteed: (k as f64) < bound,
    }
}
