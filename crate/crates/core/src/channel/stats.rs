use serde::Serialize;
use statrs::distribution::{Beta, Binomial, ContinuousCDF, DiscreteCDF};

/// Two-sided Clopper-Pearson interval for `errors` out of `trials` at
/// confidence `1 - alpha`.
pub fn clopper_pearson(errors: u64, trials: u64, alpha: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let (x, n) = (errors as f64, trials as f64);
    let lo = if errors == 0 {
        0.0
    } else {
        Beta::new(x, n - x + 1.0).unwrap().inverse_cdf(alpha / 2.0)
    };
    let hi = if errors == trials {
        1.0
    } else {
        Beta::new(x + 1.0, n - x).unwrap().inverse_cdf(1.0 - alpha / 2.0)
    };
    (lo, hi)
}

/// Paired comparison of two decoders run on the same trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairedComparison {
    /// Trials the first decoder got right and the second got wrong.
    pub only_second_failed: u64,
    /// Trials the second decoder got right and the first got wrong.
    pub only_first_failed: u64,
    /// One-sided exact sign-test p-value for "the second fails more often".
    pub p_value: f64,
}

impl PairedComparison {
    pub fn new(only_second_failed: u64, only_first_failed: u64) -> Self {
        PairedComparison {
            only_second_failed,
            only_first_failed,
            p_value: sign_test_p_value(only_second_failed, only_first_failed),
        }
    }

    /// Whether the second decoder is worse at significance level `alpha`.
    pub fn significant(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

/// `P(X >= wins)` for `X ~ Binomial(wins + losses, 1/2)`: the exact
/// one-sided sign test (McNemar) on discordant pairs.
pub fn sign_test_p_value(wins: u64, losses: u64) -> f64 {
    let n = wins + losses;
    if n == 0 || wins == 0 {
        return 1.0;
    }
    let b = Binomial::new(0.5, n).unwrap();
    b.sf(wins - 1)
}

/// Whether error counts along an increasing Eb/N0 sweep are consistent with
/// a non-increasing error rate: no later point's interval lies entirely
/// above an earlier point's.
pub fn is_non_increasing(points: &[(u64, u64)], alpha: f64) -> bool {
    let ci: Vec<(f64, f64)> = points.iter().map(|&(e, n)| clopper_pearson(e, n, alpha)).collect();
    ci.iter()
        .enumerate()
        .all(|(i, a)| ci[i + 1..].iter().all(|b| b.0 <= a.1))
}
